#pragma once

#include "quiverhw/representation.hpp"
#include "quiverhw/spec_parser.hpp"

#include <string>

namespace quiverhw::testing {

inline const std::string ex1_text = "quiver { vertices: 2; arrows: a: 1->2, b: 2->1; } relations { b*a; }";
inline const std::string ex2_text = "quiver { vertices: 2; arrows: a: 1->2, b: 2->1; } relations { a*b; }";
inline const std::string ex3_text = "quiver { vertices: 2; arrows: a: 1->2, b: 2->1; } relations { a*b; b*a; }";
inline const std::string ex4_text = R"(quiver {
  vertices: 3;
  arrows: a: 1->2, b: 2->1, g: 2->3, d: 3->2;
}
relations { a*g; d*b; d*g; b*a - g*d; }
)";

inline FiniteDimAlgebra algebra_from(const std::string& text, int degree_cap = default_degree_cap)
{
    const SpecFile s = parse_spec(text);
    return buchberger(s.quiver(), s.relation_elements(), std::nullopt, degree_cap);
}

inline FiniteDimAlgebra ex1() { return algebra_from(ex1_text); }
inline FiniteDimAlgebra ex2() { return algebra_from(ex2_text); }
inline FiniteDimAlgebra ex3() { return algebra_from(ex3_text); }
inline FiniteDimAlgebra ex4() { return algebra_from(ex4_text); }

inline Path path(const Quiver& q, Vertex source, std::initializer_list<const char*> names)
{
    Path p{source, {}};
    for (const char* n : names) p.arrows.push_back(*q.find_arrow(n));
    return p;
}

inline Path path(const Quiver& q, std::initializer_list<const char*> names)
{
    return path(q, q.arrow(*q.find_arrow(*names.begin())).source, names);
}

inline KClass cls(std::initializer_list<long long> v) { return KClass(v); }

} // namespace quiverhw::testing
