#include "quiverhw/criteria.hpp"
#include "support/fixtures.hpp"
#include "support/random_algebras.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace quiverhw;
using namespace quiverhw::testing;

namespace {

OrderingModules modules_for(const FiniteDimAlgebra& a, std::vector<Vertex> perm)
{
    return ordering_modules(ModuleFactory(a), Ordering(std::move(perm)));
}

std::vector<std::pair<int, long long>> layers(const DeltaFiltrationResult& d)
{
    std::vector<std::pair<int, long long>> out;
    for (const auto& l : d.layers) out.emplace_back(l.position, l.multiplicity);
    return out;
}

} // namespace

TEST(Numerical, Ex1Passes)
{
    const auto om = modules_for(ex1(), {1, 2});
    const auto r = numerical_criterion(om);
    EXPECT_TRUE(r.pass);
    EXPECT_EQ(r.per_position[0].predicted_class, cls({2, 1}));
    EXPECT_EQ(om.standard(1).dim_vector() + om.standard(2).dim_vector(), cls({2, 1}));
}

TEST(Numerical, Ex2FailsOnMultiplicity)
{
    const auto r = numerical_criterion(modules_for(ex2(), {1, 2}));
    EXPECT_FALSE(r.pass);
    EXPECT_FALSE(r.multiplicity_part);
    EXPECT_EQ(r.per_position[1].standard_top_multiplicity, 2);
}

TEST(Numerical, Ex3FailsOnClasses)
{
    const auto r = numerical_criterion(modules_for(ex3(), {1, 2}));
    EXPECT_FALSE(r.pass);
    EXPECT_TRUE(r.multiplicity_part);
    EXPECT_FALSE(r.class_part);
    EXPECT_EQ(r.per_position[0].residual, cls({1, 0}));
    EXPECT_TRUE(r.per_position[1].class_ok);
}

TEST(DeltaFiltration, Ex1)
{
    const auto om = modules_for(ex1(), {1, 2});
    const auto d = delta_filtration(om, 1);
    ASSERT_TRUE(d.ok());
    EXPECT_EQ(layers(d), (std::vector<std::pair<int, long long>>{{2, 1}, {1, 1}}));
    EXPECT_EQ(d.layers.back().submodule.dim_vector(), cls({2, 1}));
}

TEST(DeltaFiltration, Ex3FailsAtLayer2)
{
    const auto d = delta_filtration(modules_for(ex3(), {1, 2}), 1);
    ASSERT_FALSE(d.ok());
    EXPECT_EQ(d.failure->position, 2);
    EXPECT_EQ(d.failure->trace_class, cls({0, 1}));
    EXPECT_EQ(d.failure->expected_class, cls({1, 1}));
    EXPECT_EQ(d.failure->length_deficit, 1);
}

TEST(DeltaFiltration, Ex4)
{
    const auto om = modules_for(ex4(), {1, 2, 3});
    const auto d = delta_filtration(om, 2);
    ASSERT_TRUE(d.ok());
    EXPECT_EQ(layers(d), (std::vector<std::pair<int, long long>>{{3, 1}, {2, 1}}));
    EXPECT_EQ(d.layers[0].factor_class, cls({0, 1, 1}));
    EXPECT_EQ(d.layers[1].factor_class, cls({1, 1, 0}));
}

TEST(DeltaFiltration, FactorsAreStandardPowers)
{
    const auto a = ex4();
    const ModuleFactory f(a);
    const auto om = ordering_modules(f, Ordering::natural(3));
    for (int i = 1; i <= 3; ++i) {
        const auto d = delta_filtration(om, i);
        ASSERT_TRUE(d.ok());
        const RationalRep p = om.projective_at(i);
        RationalSub below = zero_submodule(p);
        KClass total(3, 0);
        for (const auto& l : d.layers) {
            // The factor is a quotient of l.multiplicity copies of P_j, hence of
            // Delta_j^m; equal dimensions make the surjection an isomorphism.
            const RationalRep factor = quotient(as_representation(p, l.submodule), [&] {
                RationalSub s;
                s.spaces.resize(l.submodule.spaces.size());
                for (std::size_t v = 1; v < s.spaces.size(); ++v)
                    s.spaces[v] = split(l.submodule.spaces[v].sub_coords() * below.spaces[v].basis,
                                        l.submodule.spaces[v].dim(), Rational(1));
                return s;
            }());
            EXPECT_EQ(factor.dim_vector(), l.multiplicity * om.standard(l.position).dim_vector());
            EXPECT_EQ(hom_basis(factor, om.standard(l.position)).size(),
                      static_cast<std::size_t>(l.multiplicity) * hom_basis(om.standard(l.position), om.standard(l.position)).size());
            total = total + factor.dim_vector();
            below = l.submodule;
        }
        EXPECT_EQ(total, p.dim_vector());
    }
}

TEST(Stability, Ex1)
{
    const auto om = modules_for(ex1(), {1, 2});
    const auto z = build_stability(om);
    EXPECT_EQ(z.masses, (std::vector<Rational>{1, 1}));
    const KClass s1 = unit_class(2, 1), s2 = unit_class(2, 2), d2 = om.standard(2).dim_vector();
    EXPECT_TRUE(phase_equal(z, om.standard(1).dim_vector(), s1));
    EXPECT_TRUE(phase_less(z, s1, d2));
    EXPECT_TRUE(phase_less(z, d2, s2));
    EXPECT_TRUE(phase_less(z, s1, s2));
    EXPECT_FALSE(phase_less(z, d2, d2));
    EXPECT_THROW(phase_less(z, KClass{0, 0}, s1), std::invalid_argument);
}

TEST(Stability, SemisimpleUsesUnitMasses)
{
    const auto om = modules_for(algebra_from("quiver { vertices: 3; }"), {2, 3, 1});
    const auto z = build_stability(om);
    EXPECT_EQ(z.masses, (std::vector<Rational>{1, 1, 1}));
    EXPECT_EQ(z.by_position[0], (Charge{2, 1}));
    EXPECT_EQ(z.by_position[2], (Charge{0, 1}));
}

TEST(Stability, Ex4PhasesInterleave)
{
    const auto om = modules_for(ex4(), {1, 2, 3});
    const auto z = build_stability(om);
    auto s = [](int i) { return unit_class(3, i); };
    const KClass d1 = om.standard(1).dim_vector(), d2 = om.standard(2).dim_vector(), d3 = om.standard(3).dim_vector();
    EXPECT_TRUE(phase_equal(z, d1, s(1)));
    EXPECT_TRUE(phase_less(z, s(1), d2));
    EXPECT_TRUE(phase_less(z, d2, s(2)));
    EXPECT_TRUE(phase_less(z, s(2), d3));
    EXPECT_TRUE(phase_less(z, d3, s(3)));
    EXPECT_TRUE(standards_structurally_stable(om, z));
}

TEST(Stability, PreconditionOnTopMultiplicity)
{
    EXPECT_THROW(build_stability(modules_for(ex2(), {1, 2})), PreconditionFailed);
}

TEST(Stability, WideStandard)
{
    const auto om = modules_for(algebra_from("quiver { vertices: 2; arrows: a: 2->1, b: 2->1, c: 2->1; }"), {1, 2});
    const auto z = build_stability(om);
    EXPECT_EQ(om.standard(2).dim_vector(), cls({3, 1}));
    EXPECT_EQ(z.masses, (std::vector<Rational>{1, 1}));
    EXPECT_TRUE(phase_less(z, om.standard(2).dim_vector(), unit_class(2, 2)));
    EXPECT_TRUE(phase_less(z, unit_class(2, 1), om.standard(2).dim_vector()));
}

TEST(Stability, UserChargesMustLieInHalfPlane)
{
    EXPECT_THROW(StabilityFunction::from_vertex_charges(Ordering::natural(2), {{1, 1}, {1, -1}}), std::invalid_argument);
    EXPECT_NO_THROW(StabilityFunction::from_vertex_charges(Ordering::natural(2), {{1, 1}, {-1, 0}}));
}

TEST(HNCertificate, Examples)
{
    const auto om1 = modules_for(ex1(), {1, 2});
    const auto z1 = build_stability(om1);
    const auto hn1 = hn_certificate(delta_filtration(om1, 1), z1);
    EXPECT_EQ(hn1.factor_classes, (std::vector<KClass>{om1.standard(2).dim_vector(), om1.standard(1).dim_vector()}));
    EXPECT_TRUE(phase_less(z1, hn1.factor_classes[1], hn1.factor_classes[0]));

    const auto om4 = modules_for(ex4(), {1, 2, 3});
    const auto z4 = build_stability(om4);
    EXPECT_EQ(hn_certificate(delta_filtration(om4, 1), z4).factor_classes,
              (std::vector<KClass>{om4.standard(2).dim_vector(), om4.standard(1).dim_vector()}));
    const auto last = hn_certificate(delta_filtration(om4, 3), z4);
    EXPECT_EQ(last.factor_classes, (std::vector<KClass>{om4.projective_at(3).dim_vector()}));
}

TEST(HNCertificate, RejectsNonDecreasingPhases)
{
    const auto om = modules_for(ex1(), {1, 2});
    const auto d = delta_filtration(om, 1);
    // Reversed phases: S_1 above S_2.
    const auto z = StabilityFunction::from_vertex_charges(om.ordering, {{0, 1}, {1, 1}});
    EXPECT_THROW(hn_certificate(d, z), CertificateInvalid);
    EXPECT_THROW(hn_certificate(delta_filtration(modules_for(ex3(), {1, 2}), 1), z), CertificateInvalid);
}

TEST(GreenSchroll, Examples)
{
    const auto nat = Ordering::natural(2);
    EXPECT_EQ(green_schroll(canonical_monomial_generators(ex1()), nat).status, CriterionStatus::pass);
    const auto a3 = ex3();
    const auto r3 = green_schroll(canonical_monomial_generators(a3), nat);
    EXPECT_EQ(r3.status, CriterionStatus::fail);
    ASSERT_EQ(r3.offenders.size(), 1u);
    EXPECT_EQ(path_name(a3.quiver(), r3.offenders[0]), "a*b");
    const auto a4 = ex4();
    const auto r4 = green_schroll(monomialize(a4), Ordering::natural(3));
    EXPECT_EQ(r4.status, CriterionStatus::fail);
    std::vector<std::string> off;
    for (const auto& p : r4.offenders) off.push_back(path_name(a4.quiver(), p));
    EXPECT_NE(std::find(off.begin(), off.end(), "a*b*a"), off.end());
}

TEST(GreenSchroll, RejectsLoops)
{
    const MonomialAlgebraView loop{Quiver(1, {{"l", 1, 1}}), {Path{1, {0, 0}}}};
    EXPECT_THROW(green_schroll(loop, Ordering::natural(1)), NotApplicable);
}

TEST(PathCount, Examples)
{
    const auto nat = Ordering::natural(2);
    EXPECT_TRUE(path_count_criterion(canonical_monomial_generators(ex1()), nat).pass);
    const auto r2 = path_count_criterion(canonical_monomial_generators(ex2()), nat);
    EXPECT_FALSE(r2.pass);
    EXPECT_NE(r2.first_violation.find("pi^2_22 = 2"), std::string::npos) << r2.first_violation;
    EXPECT_FALSE(path_count_criterion(canonical_monomial_generators(ex3()), nat).pass);
}

TEST(Search, Examples)
{
    const auto v2 = search_orderings(ex2(), SearchMode::all);
    ASSERT_EQ(v2.size(), 2u);
    EXPECT_FALSE(v2[0].passes());
    EXPECT_TRUE(v2[1].passes());
    EXPECT_EQ(v2[1].ordering, Ordering({2, 1}));

    for (const auto& v : search_orderings(ex3(), SearchMode::all)) EXPECT_FALSE(v.passes());

    const auto a2 = search_orderings(algebra_from("quiver { vertices: 2; arrows: a: 1->2; }"), SearchMode::all);
    EXPECT_TRUE(a2[0].passes() && a2[1].passes());
}

TEST(Search, FirstPassStopsEarly)
{
    const auto v = search_orderings(ex2(), SearchMode::first_pass);
    ASSERT_EQ(v.size(), 2u);
    EXPECT_TRUE(v.back().passes());
    EXPECT_EQ(search_orderings(ex1(), SearchMode::first_pass).size(), 1u);
}

TEST(Search, CapOnVertexCount)
{
    EXPECT_THROW(search_orderings(algebra_from("quiver { vertices: 9; }"), SearchMode::first_pass), TooManyOrderings);
    EXPECT_EQ(search_orderings(algebra_from("quiver { vertices: 9; }"), SearchMode::first_pass, 9).size(), 1u);
}

TEST(Search, VerdictsAreConsistent)
{
    std::mt19937 rng(31);
    for (int t = 0; t < 40; ++t) {
        const auto a = random_monomial_algebra(rng);
        for (const auto& v : search_orderings(a, SearchMode::all)) {
            EXPECT_EQ(v.passes(), v.stability.has_value());
            EXPECT_EQ(v.passes(), v.hn_per_projective.size() == static_cast<std::size_t>(a.vertex_count()));
        }
    }
}

TEST(Properties, CriteriaAgreeOnMonomialAlgebras)
{
    std::mt19937 rng(32);
    for (int t = 0; t < 60; ++t) {
        const auto a = random_monomial_algebra(rng);
        const auto m = canonical_monomial_generators(a);
        const ModuleFactory f(a);
        for (const auto& o : all_orderings(a.vertex_count())) {
            const bool num = numerical_criterion(ordering_modules(f, o)).pass;
            EXPECT_EQ(num, green_schroll(m, o).status == CriterionStatus::pass);
            EXPECT_EQ(num, path_count_criterion(m, o).pass);
        }
    }
}

TEST(Properties, BuiltPhasesIncrease)
{
    std::mt19937 rng(33);
    for (int t = 0; t < 40; ++t) {
        const auto a = random_monomial_algebra(rng);
        for (const auto& v : search_orderings(a, SearchMode::all)) {
            if (!v.stability) continue;
            const auto om = ordering_modules(ModuleFactory(a), v.ordering);
            for (int i = 2; i <= om.n(); ++i)
                EXPECT_TRUE(phase_less(*v.stability, om.standard(i - 1).dim_vector(), om.standard(i).dim_vector()));
        }
    }
}

TEST(Properties, CertificateMultiplicitiesAreReciprocal)
{
    std::mt19937 rng(34);
    for (int t = 0; t < 40; ++t) {
        const auto a = random_monomial_algebra(rng);
        const ModuleFactory f(a);
        for (const auto& v : search_orderings(a, SearchMode::all)) {
            if (!v.passes()) continue;
            const auto om = ordering_modules(f, v.ordering);
            for (const auto& d : v.filtrations)
                for (const auto& l : d.layers)
                    EXPECT_EQ(l.multiplicity,
                              om.costandard(l.position).dim_at(om.ordering.vertex_at(d.projective_position)));
        }
    }
}

TEST(Properties, LengthInequality)
{
    std::mt19937 rng(35);
    for (int t = 0; t < 40; ++t) {
        const auto a = random_monomial_algebra(rng);
        const ModuleFactory f(a);
        for (const auto& o : all_orderings(a.vertex_count())) {
            const auto om = ordering_modules(f, o);
            const auto num = numerical_criterion(om);
            for (int i = 1; i <= om.n(); ++i) {
                const auto b = length_bound(om, i);
                const auto& d = num.per_position[static_cast<std::size_t>(i - 1)];
                EXPECT_LE(b.length, b.bound);
                EXPECT_EQ(b.length == b.bound, d.class_ok && d.multiplicity_ok);
            }
        }
    }
}

TEST(Properties, LowGlobalDimension)
{
    std::mt19937 rng(36);
    for (int t = 0; t < 10; ++t) {
        const auto a = random_acyclic_path_algebra(rng);
        ASSERT_LE(*global_dimension(a).value, 1);
        for (const auto& v : search_orderings(a, SearchMode::all)) EXPECT_TRUE(v.passes());
    }
    int found = 0;
    while (found < 10) {
        const auto a = random_monomial_algebra(rng);
        if (global_dimension(a).value != 2) continue;
        ++found;
        EXPECT_TRUE(search_orderings(a, SearchMode::first_pass).back().passes());
    }
}
