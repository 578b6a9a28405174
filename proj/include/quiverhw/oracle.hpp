#pragma once

#include "quiverhw/criteria.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace quiverhw {

using ModPRep = Representation<ModP>;
using ModPSub = SubRepresentation<ModP>;

constexpr std::size_t default_oracle_dimension_cap = 12;
constexpr std::uint32_t default_oracle_prime = 2;
constexpr std::size_t max_lattice_size = 200000;

/// Reduction of a rational representation modulo p.
struct Reduction {
    ModPRep rep;
    std::vector<std::string> warnings;
};

inline Reduction reduce_representation(const RationalRep& m, std::uint32_t p)
{
    if (!is_prime(p)) throw std::invalid_argument(std::to_string(p) + " is not prime");
    Reduction out;
    out.rep = ModPRep::zero(m.shape, FieldContext<ModP>{p});
    out.rep.dims = m.dims;
    for (std::size_t a = 0; a < m.action.size(); ++a) {
        const auto& src = m.action[a];
        Matrix<ModP> dst(src.rows(), src.cols());
        for (std::size_t r = 0; r < src.rows(); ++r)
            for (std::size_t c = 0; c < src.cols(); ++c) {
                ModP x(0, p);
                if (!reduce_mod(src(r, c), p, x)) {
                    out.warnings.push_back("entry " + to_string(src(r, c)) + " of arrow " + std::to_string(a) +
                                           " has a denominator divisible by " + std::to_string(p) + "; using 0");
                    x = ModP(0, p);
                }
                dst(r, c) = x;
            }
        out.rep.action[a] = std::move(dst);
    }
    return out;
}

/// Every subrepresentation of a module over F_p, sorted by total dimension and
/// then by a canonical key. elements.front() is 0 and elements.back() is M.
struct SubmoduleLattice {
    ModPRep base;
    std::vector<ModPSub> elements;

    std::size_t size() const { return elements.size(); }
    /// Dimension vectors with multiplicity.
    std::map<KClass, std::size_t> class_counts() const
    {
        std::map<KClass, std::size_t> counts;
        for (const auto& e : elements) ++counts[e.dim_vector()];
        return counts;
    }
};

namespace detail {

/// Reduced row echelon form of each subspace, flattened.
inline std::vector<std::uint32_t> canonical_key(const ModPSub& s)
{
    std::vector<std::uint32_t> key;
    for (std::size_t v = 1; v < s.spaces.size(); ++v) {
        Matrix<ModP> rows = s.spaces[v].basis.transpose();
        rref(rows);
        key.push_back(static_cast<std::uint32_t>(rows.rows()));
        for (std::size_t r = 0; r < rows.rows(); ++r)
            for (std::size_t c = 0; c < rows.cols(); ++c) key.push_back(rows(r, c).value());
    }
    return key;
}

/// Nonzero vectors of F_p^d whose first nonzero entry is 1.
inline std::vector<std::vector<ModP>> projective_points(std::size_t d, std::uint32_t p)
{
    std::vector<std::vector<ModP>> out;
    std::vector<std::uint32_t> digits(d, 0);
    while (true) {
        std::size_t k = 0;
        while (k < d && digits[k] == p - 1) digits[k++] = 0;
        if (k == d) break;
        ++digits[k];
        const auto lead = std::find_if(digits.begin(), digits.end(), [](std::uint32_t x) { return x != 0; });
        if (*lead != 1) continue;
        std::vector<ModP> v;
        for (auto x : digits) v.emplace_back(x, p);
        out.push_back(std::move(v));
    }
    return out;
}

} // namespace detail

/// Closes 0 under adding cyclic submodules until no new subrepresentation
/// appears. Every submodule is a finite sum of cyclic ones, so this is complete.
inline SubmoduleLattice enumerate_submodules(const ModPRep& m,
                                             std::size_t dimension_cap = default_oracle_dimension_cap)
{
    if (m.total_dim() > dimension_cap)
        throw DimensionCapExceeded("module of total dimension " + std::to_string(m.total_dim()) +
                                   " exceeds the oracle cap of " + std::to_string(dimension_cap));
    const int n = m.shape.vertices;
    const std::uint32_t p = m.field.prime;

    // Cyclic submodules, one per projective point at each vertex.
    std::vector<ModPSub> cyclic;
    for (Vertex v = 1; v <= n; ++v)
        for (const auto& x : detail::projective_points(m.dim_at(v), p)) {
            auto seeds = vertex_seeds(m, {});
            seeds[static_cast<std::size_t>(v)] = Matrix<ModP>::from_columns(m.dim_at(v), {x});
            cyclic.push_back(generated_submodule(m, seeds));
        }

    std::map<std::vector<std::uint32_t>, ModPSub> seen;
    std::deque<ModPSub> queue;
    auto visit = [&](ModPSub s) {
        auto key = detail::canonical_key(s);
        if (seen.count(key)) return;
        if (seen.size() >= max_lattice_size)
            throw DimensionCapExceeded("submodule lattice exceeds " + std::to_string(max_lattice_size) + " elements");
        seen.emplace(std::move(key), s);
        queue.push_back(std::move(s));
    };
    visit(zero_submodule(m));
    while (!queue.empty()) {
        const ModPSub s = std::move(queue.front());
        queue.pop_front();
        for (const auto& c : cyclic)
            if (!contains(s, c)) visit(sum_submodules(m, s, c));
    }

    SubmoduleLattice lat{m, {}};
    std::vector<std::pair<std::vector<std::uint32_t>, ModPSub>> sorted(seen.begin(), seen.end());
    std::stable_sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) {
        return a.second.total_dim() < b.second.total_dim();
    });
    for (auto& kv : sorted) lat.elements.push_back(std::move(kv.second));
    return lat;
}

enum class StabilityClass { stable, semistable_not_stable, unstable };

inline const char* stability_name(StabilityClass s)
{
    switch (s) {
    case StabilityClass::stable: return "stable";
    case StabilityClass::semistable_not_stable: return "semistable";
    case StabilityClass::unstable: return "unstable";
    }
    return "?";
}

struct StabilityVerdict {
    StabilityClass status = StabilityClass::stable;
    std::optional<ModPSub> witness;  // a proper submodule of maximal phase, largest first

    bool stable() const { return status == StabilityClass::stable; }
};

inline StabilityVerdict is_stable(const SubmoduleLattice& lat, const StabilityFunction& z)
{
    const KClass whole = lat.base.dim_vector();
    if (is_zero_class(whole)) throw std::invalid_argument("stability of the zero module is undefined");
    StabilityVerdict out;
    const ModPSub* best = nullptr;
    for (const auto& s : lat.elements) {
        const KClass c = s.dim_vector();
        if (is_zero_class(c) || c == whole) continue;
        if (!best || phase_less(z, best->dim_vector(), c) ||
            (phase_equal(z, best->dim_vector(), c) && s.total_dim() > best->total_dim()))
            best = &s;
    }
    if (!best) return out;
    const KClass bc = best->dim_vector();
    if (phase_less(z, bc, whole)) return out;
    out.status = phase_equal(z, bc, whole) ? StabilityClass::semistable_not_stable : StabilityClass::unstable;
    out.witness = *best;
    return out;
}

inline StabilityVerdict is_stable(const ModPRep& m, const StabilityFunction& z,
                                  std::size_t dimension_cap = default_oracle_dimension_cap)
{
    return is_stable(enumerate_submodules(m, dimension_cap), z);
}

/// HN filtration by exhaustion: the first step is the largest submodule of
/// maximal phase, then the same in the quotient.
inline HNFiltration hn_bruteforce(const ModPRep& m, const StabilityFunction& z,
                                  std::size_t dimension_cap = default_oracle_dimension_cap)
{
    HNFiltration hn;
    ModPRep current = m;
    KClass below(static_cast<std::size_t>(m.shape.vertices), 0);
    while (!current.is_zero()) {
        const SubmoduleLattice lat = enumerate_submodules(current, dimension_cap);
        const ModPSub* best = nullptr;
        for (const auto& s : lat.elements) {
            if (s.total_dim() == 0) continue;
            if (!best || phase_less(z, best->dim_vector(), s.dim_vector()) ||
                (phase_equal(z, best->dim_vector(), s.dim_vector()) && s.total_dim() > best->total_dim()))
                best = &s;
        }
        for (const auto& s : lat.elements)
            if (s.total_dim() && phase_equal(z, s.dim_vector(), best->dim_vector()) && !contains(*best, s))
                throw std::logic_error("maximal destabilizing submodule is not unique");
        const KClass factor = best->dim_vector();
        if (!hn.factor_classes.empty() && !phase_less(z, factor, hn.factor_classes.back()))
            throw std::logic_error("brute-force HN phases do not decrease");
        if (is_stable(as_representation(current, *best), z, dimension_cap).status == StabilityClass::unstable)
            throw std::logic_error("brute-force HN factor is not semistable");
        below = below + factor;
        hn.chain_classes.push_back(below);
        hn.factor_classes.push_back(factor);
        hn.factor_charges.push_back(z(factor));
        current = quotient(current, *best);
    }
    return hn;
}

/// Factor classes agree in order; charges then agree automatically.
inline bool same_hn(const HNFiltration& a, const HNFiltration& b)
{
    return a.factor_classes == b.factor_classes && a.factor_charges == b.factor_charges;
}

} // namespace quiverhw
