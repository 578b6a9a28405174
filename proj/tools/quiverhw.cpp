#include "quiverhw/cli.hpp"

int main(int argc, char** argv)
{
    return quiverhw::cli::run(std::vector<std::string>(argv + 1, argv + argc));
}
