#include "quiverhw/homological.hpp"
#include "support/fixtures.hpp"
#include "support/random_algebras.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace quiverhw;
using namespace quiverhw::testing;

namespace {

struct Table {
    std::vector<KClass> p, i, d, n;
};

Table table(const FiniteDimAlgebra& a, const Ordering& ord)
{
    const ModuleFactory f(a);
    Table t;
    for (int k = 1; k <= ord.size(); ++k) {
        t.p.push_back(f.projective(ord.vertex_at(k)).dim_vector());
        t.i.push_back(f.injective(ord.vertex_at(k)).dim_vector());
        t.d.push_back(f.standard(k, ord).dim_vector());
        t.n.push_back(f.costandard(k, ord).dim_vector());
    }
    return t;
}

} // namespace

TEST(Modules, Ex1)
{
    const auto t = table(ex1(), Ordering::natural(2));
    EXPECT_EQ(t.p, (std::vector<KClass>{{2, 1}, {1, 1}}));
    EXPECT_EQ(t.i, (std::vector<KClass>{{2, 1}, {1, 1}}));
    EXPECT_EQ(t.d, (std::vector<KClass>{{1, 0}, {1, 1}}));
    EXPECT_EQ(t.n, (std::vector<KClass>{{1, 0}, {1, 1}}));
}

TEST(Modules, Ex4Table)
{
    const auto t = table(ex4(), Ordering::natural(3));
    EXPECT_EQ(t.p, (std::vector<KClass>{{2, 1, 0}, {1, 2, 1}, {0, 1, 1}}));
    EXPECT_EQ(t.i, (std::vector<KClass>{{2, 1, 0}, {1, 2, 1}, {0, 1, 1}}));
    EXPECT_EQ(t.d, (std::vector<KClass>{{1, 0, 0}, {1, 1, 0}, {0, 1, 1}}));
    EXPECT_EQ(t.n, (std::vector<KClass>{{1, 0, 0}, {1, 1, 0}, {0, 1, 1}}));
}

TEST(Modules, SimplesAreUnitVectors)
{
    const auto a = ex4();
    for (Vertex v = 1; v <= 3; ++v) EXPECT_EQ(simple(a, v).dim_vector(), unit_class(3, v));
}

TEST(Modules, EveryModuleSatisfiesTheRelations)
{
    std::mt19937 rng(21);
    std::vector<FiniteDimAlgebra> algebras{ex1(), ex2(), ex3(), ex4()};
    for (int t = 0; t < 20; ++t) algebras.push_back(random_monomial_algebra(rng));
    for (const auto& a : algebras) {
        const ModuleFactory f(a);
        const int n = a.vertex_count();
        const Ordering ord = all_orderings(n)[rng() % all_orderings(n).size()];
        for (int k = 1; k <= n; ++k) {
            for (const auto& m : {f.projective(k), f.injective(k), f.standard(k, ord), f.costandard(k, ord)}) {
                m.check_shapes();
                EXPECT_TRUE(satisfies_relations(m, a.rules()));
            }
        }
    }
}

TEST(Modules, ProjectiveDimsCountPaths)
{
    std::mt19937 rng(22);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_monomial_algebra(rng);
        const auto m = canonical_monomial_generators(a);
        const ModuleFactory f(a);
        const int n = a.vertex_count();
        for (Vertex i = 1; i <= n; ++i) {
            const auto p = f.projective(i).dim_vector();
            for (Vertex j = 1; j <= n; ++j) {
                EXPECT_EQ(p[static_cast<std::size_t>(j - 1)], static_cast<long long>(a.paths_between(i, j).size()));
                EXPECT_EQ(p[static_cast<std::size_t>(j - 1)], path_count(m, i, j, n, Ordering::natural(n)));
            }
            EXPECT_EQ(f.injective(i).dim_vector(), projective(f.opposite(), i).dim_vector());
        }
    }
}

TEST(Modules, EndpointsOfTheOrdering)
{
    std::mt19937 rng(23);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_monomial_algebra(rng);
        const ModuleFactory f(a);
        const int n = a.vertex_count();
        for (const auto& ord : all_orderings(n)) {
            EXPECT_EQ(f.standard(n, ord).dim_vector(), f.projective(ord.vertex_at(n)).dim_vector());
            EXPECT_EQ(f.costandard(1, ord).dim_vector(), unit_class(n, ord.vertex_at(1)));
            EXPECT_EQ(f.standard(1, ord).dim_vector(), unit_class(n, ord.vertex_at(1)));
        }
    }
}

TEST(Hom, Dimensions)
{
    const auto a2 = ex2();
    const ModuleFactory f2(a2);
    const auto d2 = f2.standard(2, Ordering::natural(2));
    EXPECT_EQ(hom_basis(d2, d2).size(), 2u);
    const auto a1 = ex1();
    const ModuleFactory f1(a1);
    EXPECT_EQ(hom_basis(f1.projective(1), f1.costandard(2, Ordering::natural(2))).size(), 1u);
    for (Vertex i = 1; i <= 2; ++i)
        for (Vertex j = 1; j <= 2; ++j) EXPECT_EQ(hom_basis(f1.simple(i), f1.simple(j)).size(), i == j ? 1u : 0u);
}

TEST(Hom, BasisElementsIntertwine)
{
    const auto a = ex4();
    const ModuleFactory f(a);
    for (Vertex i = 1; i <= 3; ++i)
        for (Vertex j = 1; j <= 3; ++j) {
            const auto hs = hom_basis(f.projective(i), f.projective(j));
            EXPECT_EQ(hs.size(), a.paths_between(j, i).size());
            for (const auto& h : hs) EXPECT_TRUE(h.intertwines());
        }
}

TEST(Trace, Examples)
{
    const auto a1 = ex1();
    const ModuleFactory f1(a1);
    const auto p1 = f1.projective(1);
    EXPECT_EQ(trace_submodule(std::vector<RationalRep>{f1.projective(2)}, p1).dim_vector(), cls({1, 1}));
    EXPECT_EQ(trace_submodule(std::vector<RationalRep>{f1.projective(1)}, f1.simple(2)).dim_vector(), cls({0, 0}));
    const auto a4 = ex4();
    const ModuleFactory f4(a4);
    EXPECT_EQ(trace_submodule(std::vector<RationalRep>{f4.projective(3)}, f4.projective(2)).dim_vector(), cls({0, 1, 1}));
    EXPECT_EQ(trace_of_projectives(f4.projective(2), {3}).dim_vector(), cls({0, 1, 1}));
}

TEST(Radical, TopAndRadical)
{
    const auto a2 = ex2();
    const ModuleFactory f2(a2);
    EXPECT_EQ(radical(f2.standard(2, Ordering::natural(2))).dim_vector(), cls({1, 1}));
    const auto a4 = ex4();
    for (Vertex v = 1; v <= 3; ++v) EXPECT_EQ(top(projective(a4, v)).dim_vector(), unit_class(3, v));
}

TEST(Radical, ProjectiveCoverOfSimple)
{
    const auto a3 = ex3();
    const auto cover = projective_cover(a3, simple(a3, 1));
    EXPECT_EQ(cover.cover.generators, std::vector<Vertex>{1});
    EXPECT_TRUE(cover.map.intertwines());
    EXPECT_EQ(kernel_submodule(cover.map).dim_vector(), cls({0, 1}));
}

TEST(Quotients, DimensionsAreAdditive)
{
    std::mt19937 rng(24);
    for (int t = 0; t < 20; ++t) {
        const auto a = random_monomial_algebra(rng);
        for (Vertex v = 1; v <= a.vertex_count(); ++v) {
            const auto p = projective(a, v);
            const auto rad = radical(p);
            EXPECT_EQ(p.dim_vector(), rad.dim_vector() + quotient(p, rad).dim_vector());
            EXPECT_TRUE(inclusion(p, rad).intertwines());
        }
    }
}

TEST(Homological, GlobalDimensions)
{
    EXPECT_EQ(global_dimension(ex1()).value, 2);
    EXPECT_EQ(global_dimension(ex2()).value, 2);
    EXPECT_TRUE(global_dimension(ex3()).above_cap());
    EXPECT_TRUE(global_dimension(ex3(), 25).above_cap());
    EXPECT_EQ(global_dimension(ex3()).str(), "AboveCap(10)");
    EXPECT_EQ(global_dimension(ex4()).value, 4);
    EXPECT_EQ(global_dimension(algebra_from("quiver { vertices: 2; arrows: a: 1->2; }")).value, 1);
    EXPECT_EQ(global_dimension(algebra_from("quiver { vertices: 2; }")).value, 0);
}

TEST(Homological, ExtExamples)
{
    const auto a3 = ex3();
    EXPECT_EQ(ext_dimension(a3, simple(a3, 1), simple(a3, 2), 1), 1);
    EXPECT_THROW(ext_dimension(a3, simple(a3, 1), simple(a3, 2), 11), ResolutionCapExceeded);
    const auto a4 = ex4();
    for (Vertex i = 1; i <= 3; ++i)
        for (Vertex j = 1; j <= 3; ++j)
            for (int r = 1; r <= 3; ++r) EXPECT_EQ(ext_dimension(a4, projective(a4, i), simple(a4, j), r), 0);
}

TEST(Homological, ExtZeroIsHom)
{
    const auto a = ex4();
    const ModuleFactory f(a);
    const auto ord = Ordering::natural(3);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= 3; ++j) {
            const auto m = f.standard(i, ord), n = f.injective(j);
            EXPECT_EQ(static_cast<std::size_t>(ext_dimension(a, m, n, 0)), hom_basis(m, n).size());
        }
}

TEST(Homological, StandardCostandardOrthogonality)
{
    for (const auto& a : {ex1(), ex4()}) {
        const ModuleFactory f(a);
        const int n = a.vertex_count();
        const auto ord = Ordering::natural(n);
        for (int i = 1; i <= n; ++i)
            for (int j = 1; j <= n; ++j)
                for (int r = 0; r <= 5; ++r)
                    EXPECT_EQ(ext_dimension(a, f.standard(i, ord), f.costandard(j, ord), r), i == j && r == 0 ? 1 : 0)
                        << "i=" << i << " j=" << j << " r=" << r;
    }
}

TEST(Homological, EulerFormDualities)
{
    for (const auto& a : {ex1(), ex4()}) {
        const ModuleFactory f(a);
        const int n = a.vertex_count();
        const auto ord = Ordering::natural(n);
        const EulerForm chi = euler_form(a);
        for (int i = 1; i <= n; ++i) {
            EXPECT_EQ(chi(KClass(static_cast<std::size_t>(n), 0), unit_class(n, i)), 0);
            for (int j = 1; j <= n; ++j) {
                const long long delta = i == j ? 1 : 0;
                EXPECT_EQ(chi(f.projective(i).dim_vector(), unit_class(n, j)), delta);
                EXPECT_EQ(chi(unit_class(n, i), f.injective(j).dim_vector()), delta);
                EXPECT_EQ(chi(f.standard(i, ord).dim_vector(), f.costandard(j, ord).dim_vector()), delta);
            }
        }
    }
    EXPECT_THROW(euler_form(ex3()), ResolutionCapExceeded);
}

TEST(Homological, ResolutionIsExactAndMinimal)
{
    const auto a = ex4();
    for (Vertex v = 1; v <= 3; ++v) {
        const auto res = minimal_resolution(a, simple(a, v), 8);
        ASSERT_TRUE(res.complete);
        // Alternating sum of the terms' classes is the class of the module.
        KClass sum(3, 0);
        for (std::size_t r = 0; r < res.terms.size(); ++r)
            sum = sum + (r % 2 ? -1LL : 1LL) * res.terms[r].rep.dim_vector();
        EXPECT_EQ(sum, unit_class(3, v));
    }
}

TEST(Homological, MonomialRouteMatchesResolutions)
{
    std::mt19937 rng(17);
    for (int t = 0; t < 60; ++t) {
        const auto a = random_monomial_algebra(rng);
        const auto fast = simple_projective_dimensions(a, 5);
        for (Vertex v = 1; v <= a.vertex_count(); ++v)
            EXPECT_EQ(fast[static_cast<std::size_t>(v - 1)], projective_dimension(a, simple(a, v), 5)) << v;
    }
}
