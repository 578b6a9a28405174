#pragma once

#include "quiverhw/errors.hpp"
#include "quiverhw/homological.hpp"
#include "quiverhw/modules.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

namespace quiverhw {

/// Dimension vectors of the modules attached to one ordering, by position.
struct OrderingModules {
    Ordering ordering;
    std::vector<RationalRep> projectives;  // P at the vertex in position i
    std::vector<RationalRep> standards;
    std::vector<RationalRep> costandards;

    int n() const { return ordering.size(); }
    const RationalRep& projective_at(int position) const { return projectives.at(static_cast<std::size_t>(position - 1)); }
    const RationalRep& standard(int position) const { return standards.at(static_cast<std::size_t>(position - 1)); }
    const RationalRep& costandard(int position) const { return costandards.at(static_cast<std::size_t>(position - 1)); }

    /// [M : S_v] for the vertex v in `position`.
    static long long multiplicity(const RationalRep& m, Vertex v) { return static_cast<long long>(m.dim_at(v)); }
};

inline OrderingModules ordering_modules(const ModuleFactory& f, const Ordering& ord)
{
    OrderingModules om{ord, {}, {}, {}};
    for (int i = 1; i <= ord.size(); ++i) {
        om.projectives.push_back(f.projective(ord.vertex_at(i)));
        om.standards.push_back(f.standard(i, ord));
        om.costandards.push_back(f.costandard(i, ord));
    }
    return om;
}

struct PositionDetail {
    int position = 0;
    Vertex vertex = 0;
    long long standard_top_multiplicity = 0;  // [Delta_i : S_i]
    KClass projective_class;
    KClass predicted_class;  // sum_j [nabla_j : S_i] [Delta_j]
    KClass residual;         // predicted - actual
    bool multiplicity_ok = false;
    bool class_ok = false;
};

struct NumericalResult {
    bool pass = false;
    bool multiplicity_part = false;
    bool class_part = false;
    std::vector<PositionDetail> per_position;
};

/// [Delta_i : S_i] = 1 and [P_i] = sum_{j >= i} [nabla_j : S_i] [Delta_j] for every i.
inline NumericalResult numerical_criterion(const OrderingModules& om)
{
    NumericalResult r;
    r.multiplicity_part = r.class_part = true;
    const int n = om.n();
    for (int i = 1; i <= n; ++i) {
        const Vertex v = om.ordering.vertex_at(i);
        PositionDetail d;
        d.position = i;
        d.vertex = v;
        d.standard_top_multiplicity = OrderingModules::multiplicity(om.standard(i), v);
        d.projective_class = om.projective_at(i).dim_vector();
        d.predicted_class = KClass(static_cast<std::size_t>(n), 0);
        for (int j = i; j <= n; ++j)
            d.predicted_class = d.predicted_class +
                                OrderingModules::multiplicity(om.costandard(j), v) * om.standard(j).dim_vector();
        d.residual = d.predicted_class - d.projective_class;
        d.multiplicity_ok = d.standard_top_multiplicity == 1;
        d.class_ok = is_zero_class(d.residual);
        r.multiplicity_part = r.multiplicity_part && d.multiplicity_ok;
        r.class_part = r.class_part && d.class_ok;
        r.per_position.push_back(std::move(d));
    }
    r.pass = r.multiplicity_part && r.class_part;
    return r;
}

/// length(P_i) and the bound sum_j [nabla_j : S_i] length(Delta_j).
struct LengthBound {
    long long length = 0;
    long long bound = 0;
};

inline LengthBound length_bound(const OrderingModules& om, int position)
{
    const Vertex v = om.ordering.vertex_at(position);
    LengthBound b{class_length(om.projective_at(position).dim_vector()), 0};
    for (int j = 1; j <= om.n(); ++j)
        b.bound += OrderingModules::multiplicity(om.costandard(j), v) * class_length(om.standard(j).dim_vector());
    return b;
}

struct DeltaLayer {
    int position = 0;           // j: the factor is Delta_j^multiplicity
    long long multiplicity = 0; // [nabla_j : S_i]
    RationalSub submodule;      // the chain member whose top factor this is
    KClass factor_class;
};

struct DeltaFailure {
    int position = 0;  // first layer where the sequence is not short exact
    KClass trace_class;
    KClass expected_class;
    long long expected_multiplicity = 0;
    long long top_dimension = 0;
    long long length_deficit = 0;  // length(expected) - length(trace)
};

/// Delta-filtration of the projective in position i, or the first failing layer.
/// Layers run from the top position down to i; zero-multiplicity layers are
/// checked but omitted.
struct DeltaFiltrationResult {
    int projective_position = 0;
    std::vector<DeltaLayer> layers;
    std::optional<DeltaFailure> failure;

    bool ok() const { return !failure; }
};

inline DeltaFiltrationResult delta_filtration(const OrderingModules& om, int i)
{
    const int n = om.n();
    const Vertex vi = om.ordering.vertex_at(i);
    const RationalRep& p = om.projective_at(i);
    DeltaFiltrationResult res;
    res.projective_position = i;
    KClass below(static_cast<std::size_t>(n), 0);
    std::vector<Vertex> used;
    for (int j = n; j >= i; --j) {
        const Vertex w = om.ordering.vertex_at(j);
        used.push_back(w);
        // Preimage of the trace of P_w in the current quotient.
        RationalSub chain = trace_of_projectives(p, used);
        const KClass chain_class = chain.dim_vector();
        const KClass factor = chain_class - below;
        const long long m = OrderingModules::multiplicity(om.costandard(j), vi);
        const long long top = factor[static_cast<std::size_t>(w - 1)];
        const KClass expected = m * om.standard(j).dim_vector();
        if (top != m || factor != expected) {
            res.failure = DeltaFailure{j, factor, expected, m, top, class_length(expected) - class_length(factor)};
            return res;
        }
        if (m > 0) res.layers.push_back(DeltaLayer{j, m, std::move(chain), factor});
        below = chain_class;
    }
    if (below != p.dim_vector()) {
        // Cannot happen: the last layer is generated by the top of P_i.
        res.failure = DeltaFailure{i, below, p.dim_vector(), 1, 0, class_length(p.dim_vector()) - class_length(below)};
    }
    return res;
}

/// Z(S) as an exact point of the plane.
struct Charge {
    Rational x = 0;
    Rational y = 0;

    friend Charge operator+(Charge a, const Charge& b) { return {a.x + b.x, a.y + b.y}; }
    friend Charge operator*(const Rational& s, const Charge& a) { return {s * a.x, s * a.y}; }
    friend bool operator==(const Charge&, const Charge&) = default;
    bool is_zero() const { return x == 0 && y == 0; }
    /// In the closed-left upper half-plane.
    bool in_half_plane() const { return y > 0 || (y == 0 && x < 0); }
};

/// a x b; positive exactly when b has larger phase than a (both in the half-plane).
inline Rational cross(const Charge& a, const Charge& b)
{
    return a.x * b.y - a.y * b.x;
}

/// A stability function determined by one charge per position of an ordering.
struct StabilityFunction {
    Ordering ordering;
    std::vector<Charge> by_position;
    std::vector<Rational> masses;  // empty for user-supplied charges

    Charge charge_of_simple(Vertex v) const { return by_position.at(static_cast<std::size_t>(ordering.position_of(v) - 1)); }

    Charge operator()(const KClass& c) const
    {
        Charge z;
        for (std::size_t k = 0; k < c.size(); ++k)
            if (c[k]) z = z + Rational(c[k]) * charge_of_simple(static_cast<Vertex>(k + 1));
        return z;
    }

    /// Charges indexed by vertex.
    static StabilityFunction from_vertex_charges(const Ordering& ord, const std::vector<Charge>& by_vertex)
    {
        StabilityFunction z{ord, std::vector<Charge>(by_vertex.size()), {}};
        for (std::size_t v = 0; v < by_vertex.size(); ++v)
            z.by_position[static_cast<std::size_t>(ord.position_of(static_cast<Vertex>(v + 1)) - 1)] = by_vertex[v];
        for (const auto& c : z.by_position)
            if (!c.in_half_plane()) throw std::invalid_argument("charge outside the upper half-plane");
        return z;
    }
};

/// phi(a) < phi(b), decided by the sign of Z(a) x Z(b).
inline bool phase_less(const StabilityFunction& z, const KClass& a, const KClass& b)
{
    if (is_zero_class(a) || is_zero_class(b)) throw std::invalid_argument("phase of the zero class is undefined");
    return cross(z(a), z(b)) > 0;
}

inline bool phase_equal(const StabilityFunction& z, const KClass& a, const KClass& b)
{
    if (is_zero_class(a) || is_zero_class(b)) throw std::invalid_argument("phase of the zero class is undefined");
    return cross(z(a), z(b)) == 0;
}

/// Charges Z(S_i) = m_i (n - i, 1) with m_1 = 1 and m_i the least power of 2
/// putting Z(Delta_i) strictly above the ray of S_{i-1}.
inline StabilityFunction build_stability(const OrderingModules& om)
{
    const int n = om.n();
    StabilityFunction z{om.ordering, {}, {}};
    for (int i = 1; i <= n; ++i) {
        const Vertex v = om.ordering.vertex_at(i);
        if (OrderingModules::multiplicity(om.standard(i), v) != 1)
            throw PreconditionFailed("[Delta_" + std::to_string(i) + " : S_" + std::to_string(i) + "] = " +
                                     std::to_string(OrderingModules::multiplicity(om.standard(i), v)) + ", not 1");
    }
    auto direction = [n](int i) { return Charge{Rational(n - i), Rational(1)}; };
    for (int i = 1; i <= n; ++i) {
        Rational mass = 1;
        if (i > 1) {
            const KClass cls = om.standard(i).dim_vector();
            Charge lower;
            for (int j = 1; j < i; ++j) {
                const long long mult = cls[static_cast<std::size_t>(om.ordering.vertex_at(j) - 1)];
                if (mult) lower = lower + Rational(mult) * z.by_position[static_cast<std::size_t>(j - 1)];
            }
            while (cross(direction(i - 1), mass * direction(i) + lower) <= 0) mass *= 2;
        }
        z.masses.push_back(mass);
        z.by_position.push_back(mass * direction(i));
    }
    return z;
}

/// Every Delta_i has strictly larger phase than the simples it can contain as
/// proper subobjects (those in earlier positions), hence is stable.
inline bool standards_structurally_stable(const OrderingModules& om, const StabilityFunction& z)
{
    for (int i = 1; i <= om.n(); ++i) {
        const KClass d = om.standard(i).dim_vector();
        if (d[static_cast<std::size_t>(om.ordering.vertex_at(i) - 1)] != 1) return false;
        for (int j = 1; j < i; ++j) {
            const Vertex w = om.ordering.vertex_at(j);
            if (d[static_cast<std::size_t>(w - 1)] && !phase_less(z, unit_class(om.n(), w), d)) return false;
        }
    }
    return true;
}

/// Harder-Narasimhan filtration data: cumulative chain classes (excluding 0),
/// factor classes and their charges, in order from the bottom of the chain.
struct HNFiltration {
    std::vector<KClass> chain_classes;
    std::vector<KClass> factor_classes;
    std::vector<Charge> factor_charges;
};

/// The Delta-filtration of P_i read as its HN filtration under z.
inline HNFiltration hn_certificate(const DeltaFiltrationResult& cert, const StabilityFunction& z)
{
    if (!cert.ok()) throw CertificateInvalid("no Delta-filtration to certify");
    HNFiltration hn;
    KClass total;
    for (const auto& layer : cert.layers) {
        total = total.empty() ? layer.factor_class : total + layer.factor_class;
        hn.chain_classes.push_back(total);
        hn.factor_classes.push_back(layer.factor_class);
        hn.factor_charges.push_back(z(layer.factor_class));
    }
    for (std::size_t k = 1; k < hn.factor_classes.size(); ++k)
        if (!phase_less(z, hn.factor_classes[k], hn.factor_classes[k - 1]))
            throw CertificateInvalid("HN factor phases do not decrease strictly at layer " + std::to_string(k + 1));
    return hn;
}

enum class CriterionStatus { pass, fail, not_applicable };

inline const char* status_name(CriterionStatus s)
{
    switch (s) {
    case CriterionStatus::pass: return "pass";
    case CriterionStatus::fail: return "fail";
    case CriterionStatus::not_applicable: return "not_applicable";
    }
    return "?";
}

struct GreenSchrollResult {
    CriterionStatus status = CriterionStatus::not_applicable;
    std::vector<Path> offenders;
};

/// Every maximal-vertex occurrence of every generator is external.
inline GreenSchrollResult green_schroll(const MonomialAlgebraView& m, const Ordering& ord)
{
    if (m.quiver.has_loops()) throw NotApplicable("Green-Schroll's criterion needs a quiver without loops");
    GreenSchrollResult r{CriterionStatus::pass, {}};
    for (const auto& g : m.generators) {
        if (g.trivial()) throw NotApplicable("trivial path among monomial generators");
        if (!classify_maximal_vertices(m.quiver, g, ord).all_external()) r.offenders.push_back(g);
    }
    if (!r.offenders.empty()) r.status = CriterionStatus::fail;
    return r;
}

struct PathCountResult {
    bool pass = false;
    std::string first_violation;  // empty on pass
};

/// pi^i_ii = 1 and pi^n_ik = sum_j pi^j_ij pi^j_jk for all i, k.
inline PathCountResult path_count_criterion(const MonomialAlgebraView& m, const Ordering& ord,
                                            int degree_cap = default_degree_cap)
{
    const int n = m.quiver.vertex_count();
    for (int i = 1; i <= n; ++i) {
        const long c = path_count(m, i, i, i, ord, degree_cap);
        if (c != 1)
            return {false, "pi^" + std::to_string(i) + "_" + std::to_string(i) + std::to_string(i) + " = " +
                               std::to_string(c) + " != 1"};
    }
    for (int i = 1; i <= n; ++i)
        for (int k = 1; k <= n; ++k) {
            const long lhs = path_count(m, i, k, n, ord, degree_cap);
            long rhs = 0;
            for (int j = 1; j <= n; ++j)
                rhs += path_count(m, i, j, j, ord, degree_cap) * path_count(m, j, k, j, ord, degree_cap);
            if (lhs != rhs)
                return {false, "pi^" + std::to_string(n) + "_" + std::to_string(i) + std::to_string(k) + " = " +
                                   std::to_string(lhs) + " != " + std::to_string(rhs)};
        }
    return {true, {}};
}

struct OrderingVerdict {
    Ordering ordering;
    NumericalResult numerical;
    GreenSchrollResult green_schroll;
    std::vector<DeltaFiltrationResult> filtrations;  // by projective position
    std::optional<StabilityFunction> stability;
    std::vector<HNFiltration> hn_per_projective;  // by position, when stability is present
    GlobalDimension gldim;

    bool passes() const { return numerical.pass; }
};

/// All criteria for one ordering. The stability certificate is attached
/// exactly when the numerical criterion passes.
inline OrderingVerdict evaluate_ordering(const ModuleFactory& f, const Ordering& ord, const GlobalDimension& gldim,
                                         const std::optional<MonomialAlgebraView>& monomial)
{
    const OrderingModules om = ordering_modules(f, ord);
    OrderingVerdict v;
    v.ordering = ord;
    v.gldim = gldim;
    v.numerical = numerical_criterion(om);
    if (monomial && !monomial->quiver.has_loops()) v.green_schroll = green_schroll(*monomial, ord);
    for (int i = 1; i <= om.n(); ++i) v.filtrations.push_back(delta_filtration(om, i));
    const bool all_filtered = std::all_of(v.filtrations.begin(), v.filtrations.end(),
                                          [](const DeltaFiltrationResult& d) { return d.ok(); });
    if (v.numerical.pass != (all_filtered && v.numerical.multiplicity_part))
        throw std::logic_error("numerical criterion and Delta-filtration disagree");
    if (v.numerical.pass) {
        v.stability = build_stability(om);
        if (!standards_structurally_stable(om, *v.stability))
            throw CertificateInvalid("constructed stability function does not separate the standard modules");
        for (const auto& d : v.filtrations) v.hn_per_projective.push_back(hn_certificate(d, *v.stability));
    }
    return v;
}

enum class SearchMode { all, first_pass };

constexpr int default_max_order_vertices = 8;

/// Evaluates orderings in lexicographic order of the vertex sequence.
inline std::vector<OrderingVerdict> search_orderings(const FiniteDimAlgebra& a, SearchMode mode,
                                                     int max_vertices = default_max_order_vertices,
                                                     int resolution_cap = default_resolution_cap)
{
    const int n = a.vertex_count();
    if (n > max_vertices)
        throw TooManyOrderings(std::to_string(n) + " vertices exceed the ordering-search cap of " +
                               std::to_string(max_vertices) + "; raise it explicitly to search all orderings");
    const ModuleFactory f(a);
    const GlobalDimension gd = global_dimension(a, resolution_cap);
    std::optional<MonomialAlgebraView> mono;
    if (a.monomial() && !a.quiver().has_loops()) mono = canonical_monomial_generators(a);
    std::vector<Vertex> perm = Ordering::natural(n).perm();
    std::vector<OrderingVerdict> out;
    do {
        out.push_back(evaluate_ordering(f, Ordering(perm), gd, mono));
        if (mode == SearchMode::first_pass && out.back().passes()) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return out;
}

} // namespace quiverhw
