#include "quiverhw/cli.hpp"
#include "quiverhw/report.hpp"
#include "quiverhw/svg.hpp"
#include "support/fixtures.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace quiverhw;
using namespace quiverhw::testing;

namespace {

std::string sample(const std::string& name) { return std::string(QUIVERHW_SAMPLES_DIR) + "/" + name; }

struct Run {
    int code;
    std::string out;
    std::string err;
};

Run run_cli(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text)
{
    const std::string path = ::testing::TempDir() + name;
    std::ofstream(path) << text;
    return path;
}

std::size_t count(const std::string& hay, const std::string& needle)
{
    std::size_t n = 0;
    for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
    return n;
}

Report report_for(const FiniteDimAlgebra& a, bool oracle)
{
    const auto verdicts = search_orderings(a, SearchMode::all);
    const ModuleFactory f(a);
    std::optional<OracleReport> o;
    if (oracle) o = run_oracle(f, verdicts);
    return make_report(a, global_dimension(a), verdicts, o, true);
}

} // namespace

TEST(Report, SchemaAndRoundTrip)
{
    for (const auto& a : {ex1(), ex2(), ex3(), ex4()}) {
        const Report r = report_for(a, a.vertex_count() <= 3);
        const json j = to_json(r);
        EXPECT_EQ(validate_report_json(j), "");
        EXPECT_EQ(report_from_json(j), r);
        EXPECT_EQ(to_json(report_from_json(json::parse(j.dump()))), j);
    }
}

TEST(Report, Ex1Content)
{
    const json j = to_json(report_for(ex1(), true));
    EXPECT_EQ(j["algebra"]["gldim"], 2);
    EXPECT_EQ(j["orderings"][0]["order"], json::array({1, 2}));
    EXPECT_TRUE(j["orderings"][0]["numerical"]["pass"].get<bool>());
    EXPECT_EQ(j["orderings"][0]["certificate"].size(), 3u);
    EXPECT_TRUE(j["oracle"]["checks"].size() > 0);
    for (const auto& c : j["oracle"]["checks"]) EXPECT_TRUE(c["pass"].get<bool>()) << c.dump();
    EXPECT_FALSE(j["meta"].contains("timestamp"));
}

TEST(Report, Ex3AboveCap)
{
    const json j = to_json(report_for(ex3(), false));
    EXPECT_EQ(j["algebra"]["gldim"], "above_cap");
    EXPECT_TRUE(j["oracle"].is_null());
    for (const auto& o : j["orderings"]) EXPECT_FALSE(o["numerical"]["pass"].get<bool>());
}

TEST(Report, ValidatorRejectsDamage)
{
    json j = to_json(report_for(ex1(), false));
    json missing = j;
    missing["algebra"].erase("vertices");
    EXPECT_NE(validate_report_json(missing), "");
    json wrong = j;
    wrong["orderings"] = 3;
    EXPECT_NE(validate_report_json(wrong), "");
    EXPECT_NE(validate_report_json(json::object()), "");
}

TEST(Svg, Ex1Structure)
{
    const auto a = ex1();
    const ModuleFactory f(a);
    const auto om = ordering_modules(f, Ordering::natural(2));
    const std::string svg = emit_svg(build_stability(om), figure_modules(om, f));
    EXPECT_EQ(count(svg, "<circle"), 4u);
    EXPECT_EQ(count(svg, "<polygon"), 1u);
    EXPECT_EQ(count(svg, "<polyline"), 1u);
    EXPECT_NE(svg.find("S1=Δ1"), std::string::npos);
    EXPECT_NE(svg.find("Δ2=P2"), std::string::npos);
    EXPECT_EQ(svg, emit_svg(build_stability(om), figure_modules(om, f)));
}

TEST(Svg, OversizedModulesAreGrey)
{
    const auto a = ex1();
    const ModuleFactory f(a);
    const auto om = ordering_modules(f, Ordering::natural(2));
    SvgOptions opt;
    opt.dimension_cap = 2;
    const std::string svg = emit_svg(build_stability(om), figure_modules(om, f), opt);
    EXPECT_NE(svg.find("#7f7f7f"), std::string::npos);
    EXPECT_NE(svg.find("class=\"notice\""), std::string::npos);
    EXPECT_EQ(count(svg, "<polygon"), 0u);
}

TEST(Svg, HullIsConvex)
{
    const auto h = detail::convex_hull({{0, 0}, {2, 0}, {1, 1}, {1, 0}, {2, 2}, {0, 2}});
    EXPECT_EQ(h.size(), 4u);
}

TEST(Cli, CheckEx1)
{
    const auto r = run_cli({"check", sample("ex1.qvr")});
    EXPECT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("order 1,2: highest weight"), std::string::npos);
    EXPECT_NE(r.out.find("P1: Δ2^1 Δ1^1"), std::string::npos);
}

TEST(Cli, AllOrdersEx2)
{
    const auto r = run_cli({"check", sample("ex2.qvr"), "--all-orders"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("order 1,2: not highest weight"), std::string::npos);
    EXPECT_NE(r.out.find("order 2,1: highest weight"), std::string::npos);
}

TEST(Cli, DeterministicJson)
{
    for (const char* s : {"ex1.qvr", "ex2.qvr", "ex3.qvr", "ex4.qvr"}) {
        const auto a = run_cli({"check", sample(s), "--deterministic", "--json", "-", "--all-orders"});
        const auto b = run_cli({"check", sample(s), "--deterministic", "--json", "-", "--all-orders"});
        ASSERT_EQ(a.code, 0) << a.err;
        EXPECT_EQ(a.out, b.out);
    }
    const auto r = run_cli({"report", sample("ex1.qvr"), "--deterministic"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(validate_report_json(json::parse(r.out)), "");
}

TEST(Cli, TimestampWithoutDeterministic)
{
    const auto r = run_cli({"report", sample("ex1.qvr")});
    ASSERT_EQ(r.code, 0);
    EXPECT_TRUE(json::parse(r.out)["meta"].contains("timestamp"));
}

TEST(Cli, Subcommands)
{
    EXPECT_EQ(run_cli({"gldim", sample("ex4.qvr")}).out, "4\n");
    EXPECT_EQ(run_cli({"gldim", sample("ex3.qvr")}).out, "AboveCap(10)\n");
    const auto g = run_cli({"groebner", sample("ex4.qvr")});
    EXPECT_NE(g.out.find("g*d -> b*a"), std::string::npos) << g.out;
    const auto m = run_cli({"monomialize", sample("ex4.qvr")});
    for (const char* p : {"a*g", "g*d", "d*b", "d*g", "a*b*a", "b*a*b"}) EXPECT_NE(m.out.find(p), std::string::npos);
    EXPECT_EQ(run_cli({"basis", sample("ex1.qvr")}).code, 0);
    const auto mods = run_cli({"modules", sample("ex4.qvr")});
    EXPECT_NE(mods.out.find("(1,2,1)"), std::string::npos);
    EXPECT_EQ(run_cli({"stability", sample("ex4.qvr")}).code, 0);
}

TEST(Cli, SvgFile)
{
    const std::string path = ::testing::TempDir() + "ex1.svg";
    const auto r = run_cli({"stability", sample("ex1.qvr"), "--svg", path});
    ASSERT_EQ(r.code, 0) << r.err;
    std::ifstream in(path);
    std::stringstream buf;
    buf << in.rdbuf();
    EXPECT_EQ(count(buf.str(), "<circle"), 4u);
    std::remove(path.c_str());
}

TEST(Cli, ExitCodes)
{
    EXPECT_EQ(run_cli({"check", temp_file("bad.qvr", "quiver { vertices: 2; arrows: a: 1->3; }")}).code, 2);
    EXPECT_EQ(run_cli({"check", temp_file("loop.qvr", "quiver { vertices: 1; arrows: l: 1->1; }")}).code, 3);
    const std::string big = "quiver { vertices: 2; arrows: a: 1->2, b: 1->2, c: 1->2, d: 1->2, e: 1->2, f: 1->2, "
                            "g: 1->2, h: 1->2, i: 1->2, j: 1->2, k: 1->2, l: 1->2; }";
    EXPECT_EQ(run_cli({"check", temp_file("big.qvr", big), "--oracle"}).code, 4);
    EXPECT_EQ(run_cli({"frobnicate"}).code, 2);
    EXPECT_EQ(run_cli({"check", sample("ex1.qvr"), "--order", "1,1"}).code, 2);
    EXPECT_EQ(run_cli({"check", "/nonexistent.qvr"}).code, 2);
    const auto e = run_cli({"check", temp_file("bad2.qvr", "quiver { vertices: 2; arrows: a: 1->3; }")});
    EXPECT_NE(e.err.find("1:37:"), std::string::npos) << e.err;
}

TEST(Cli, DegreeCapFromEnvironment)
{
    ::setenv("QUIVERHW_DEGREE_CAP", "2", 1);
    const auto r = run_cli({"check", sample("ex4.qvr")});
    ::unsetenv("QUIVERHW_DEGREE_CAP");
    EXPECT_EQ(r.code, 3) << r.err;
    EXPECT_EQ(run_cli({"check", sample("ex4.qvr"), "--degree-cap", "2"}).code, 3);
}
