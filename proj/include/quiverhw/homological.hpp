#pragma once

#include "quiverhw/errors.hpp"
#include "quiverhw/modules.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace quiverhw {

constexpr int default_resolution_cap = 10;

/// Minimal projective resolution ... -> F_1 -> F_0 -> M -> 0. differentials[r]
/// maps F_r to F_{r-1} (to M when r = 0), one matrix per vertex.
struct MinimalResolution {
    std::vector<FreeModule> terms;
    std::vector<std::vector<Matrix<Rational>>> differentials;
    bool complete = false;  // the last computed kernel was zero

    /// Largest r with F_r nonzero; only meaningful when complete.
    int length() const { return static_cast<int>(terms.size()) - 1; }
};

/// Resolves M up to and including F_{max_degree}, stopping early when a
/// kernel vanishes.
inline MinimalResolution minimal_resolution(const FiniteDimAlgebra& a, const RationalRep& m, int max_degree)
{
    MinimalResolution res;
    RationalRep current = m;
    // Basis of the current kernel inside the previous free module, per vertex.
    std::vector<Matrix<Rational>> embed(static_cast<std::size_t>(m.shape.vertices) + 1);
    for (Vertex v = 1; v <= m.shape.vertices; ++v)
        embed[static_cast<std::size_t>(v)] = Matrix<Rational>::identity(m.dim_at(v), Rational(1));

    for (int r = 0; r <= max_degree; ++r) {
        if (current.is_zero()) {
            res.complete = true;
            return res;
        }
        auto cover = projective_cover(a, current);
        std::vector<Matrix<Rational>> d(embed.size());
        for (Vertex v = 1; v <= m.shape.vertices; ++v)
            d[static_cast<std::size_t>(v)] = embed[static_cast<std::size_t>(v)] * cover.map.mats[static_cast<std::size_t>(v)];
        const RationalSub ker = kernel_submodule(cover.map);
        current = as_representation(cover.cover.rep, ker);
        for (Vertex v = 1; v <= m.shape.vertices; ++v) embed[static_cast<std::size_t>(v)] = ker.spaces[static_cast<std::size_t>(v)].basis;
        res.terms.push_back(std::move(cover.cover));
        res.differentials.push_back(std::move(d));
    }
    res.complete = current.is_zero();
    return res;
}

/// Projective dimension of M, or nullopt when F_{cap + 1} is nonzero.
inline std::optional<int> projective_dimension(const FiniteDimAlgebra& a, const RationalRep& m, int cap)
{
    if (m.is_zero()) return -1;
    const auto res = minimal_resolution(a, m, cap + 1);
    if (!res.complete) return std::nullopt;
    return res.length();
}

/// Matrix of Hom(F_{s-1}, N) -> Hom(F_s, N), precomposition with d_s, in the
/// coordinates Hom(F, N) = sum over generators g of N at the vertex of g.
inline Matrix<Rational> hom_differential(const MinimalResolution& res, int s, const RationalRep& n)
{
    const FreeModule& fs = res.terms[static_cast<std::size_t>(s)];
    const FreeModule& fp = res.terms[static_cast<std::size_t>(s - 1)];
    auto offsets = [&](const FreeModule& f) {
        std::vector<std::size_t> off{0};
        for (Vertex v : f.generators) off.push_back(off.back() + n.dim_at(v));
        return off;
    };
    const auto off_s = offsets(fs), off_p = offsets(fp);
    Matrix<Rational> delta(off_s.back(), off_p.back());
    for (std::size_t h = 0; h < fs.generators.size(); ++h) {
        const Vertex vh = fs.generators[h];
        const auto& lay_s = fs.layout[static_cast<std::size_t>(vh)];
        std::size_t col = 0;
        while (!(lay_s[col].first == h && lay_s[col].second.trivial())) ++col;
        const auto& d = res.differentials[static_cast<std::size_t>(s)][static_cast<std::size_t>(vh)];
        const auto& lay_p = fp.layout[static_cast<std::size_t>(vh)];
        for (std::size_t row = 0; row < lay_p.size(); ++row) {
            const Rational& c = d(row, col);
            if (c == 0) continue;
            const auto& [g, p] = lay_p[row];
            const auto np = n.path_matrix(p);
            for (std::size_t i = 0; i < np.rows(); ++i)
                for (std::size_t j = 0; j < np.cols(); ++j) delta(off_s[h] + i, off_p[g] + j) += c * np(i, j);
        }
    }
    return delta;
}

/// dim Ext^r(M, N), computed from the minimal resolution of M.
inline int ext_dimension(const FiniteDimAlgebra& a, const RationalRep& m, const RationalRep& n, int r,
                         int cap = default_resolution_cap)
{
    if (r < 0) throw std::invalid_argument("negative Ext degree");
    if (r > cap)
        throw ResolutionCapExceeded("Ext^" + std::to_string(r) + " needs a resolution beyond the cap of " +
                                    std::to_string(cap));
    const auto res = minimal_resolution(a, m, r + 1);
    const auto terms = static_cast<int>(res.terms.size());
    if (r >= terms) return 0;
    std::size_t hom_r = 0;
    for (Vertex v : res.terms[static_cast<std::size_t>(r)].generators) hom_r += n.dim_at(v);
    const std::size_t rank_out = r + 1 < terms ? rank(hom_differential(res, r + 1, n)) : 0;
    const std::size_t rank_in = r >= 1 ? rank(hom_differential(res, r, n)) : 0;
    return static_cast<int>(hom_r - rank_out - rank_in);
}

namespace detail {

/// Syzygies over a monomial algebra split into cyclic modules pA for nonzero
/// paths p. The kernel of P_{t(p)} -> pA is the sum of qA over the minimal
/// paths q with pq = 0, which gives a finite graph on paths.
class MonomialSyzygies {
public:
    explicit MonomialSyzygies(const FiniteDimAlgebra& a) : a_(a)
    {
        for (const auto& b : a.basis()) nonzero_.insert(b);
    }

    /// Projective dimension of S_v, or nullopt when infinite.
    std::optional<int> simple(Vertex v)
    {
        std::optional<int> best = 0;
        bool any = false;
        for (const auto& p : a_.paths_from(v)) {
            if (p.length() != 1) continue;
            any = true;
            const auto d = of_path(p);
            if (!d) return std::nullopt;
            best = std::max(*best, *d + 1);
        }
        return any ? best : 0;
    }

private:
    enum class State { open, done };

    bool zero(const Path& p) const { return !nonzero_.count(p); }

    std::vector<Path> children(const Path& p) const
    {
        std::vector<Path> out;
        std::vector<Path> layer{Path::trivial_at(p.target(a_.quiver()))};
        while (!layer.empty()) {
            std::vector<Path> next;
            for (const auto& q : layer)
                for (int x = 0; x < a_.quiver().arrow_count(); ++x) {
                    if (a_.quiver().arrow(x).source != q.target(a_.quiver())) continue;
                    Path e = q;
                    e.arrows.push_back(x);
                    if (zero(e)) continue;
                    Path pe = p;
                    pe.arrows.insert(pe.arrows.end(), e.arrows.begin(), e.arrows.end());
                    if (zero(pe))
                        out.push_back(std::move(e));
                    else
                        next.push_back(std::move(e));
                }
            layer = std::move(next);
        }
        return out;
    }

    std::optional<int> of_path(const Path& p)
    {
        if (auto it = state_.find(p); it != state_.end()) {
            if (it->second == State::open) return std::nullopt;
            return memo_.at(p);
        }
        state_[p] = State::open;
        std::optional<int> d = 0;
        for (const auto& q : children(p)) {
            const auto c = of_path(q);
            if (!c) {
                d = std::nullopt;
                break;
            }
            d = std::max(*d, *c + 1);
        }
        state_[p] = State::done;
        memo_[p] = d;
        return d;
    }

    const FiniteDimAlgebra& a_;
    std::set<Path, PathKeyLess> nonzero_;
    std::map<Path, State, PathKeyLess> state_;
    std::map<Path, std::optional<int>, PathKeyLess> memo_;
};

} // namespace detail

/// Projective dimensions of the simples, nullopt above the cap. Monomial
/// algebras take the combinatorial route; otherwise minimal resolutions.
inline std::vector<std::optional<int>> simple_projective_dimensions(const FiniteDimAlgebra& a,
                                                                    int cap = default_resolution_cap)
{
    std::vector<std::optional<int>> out;
    std::optional<detail::MonomialSyzygies> mono;
    if (a.monomial()) mono.emplace(a);
    for (Vertex v = 1; v <= a.vertex_count(); ++v) {
        std::optional<int> pd = mono ? mono->simple(v) : projective_dimension(a, simple(a, v), cap);
        if (pd && *pd > cap) pd.reset();
        out.push_back(pd);
    }
    return out;
}

struct GlobalDimension {
    std::optional<int> value;  // empty when above the cap
    int cap = default_resolution_cap;

    bool above_cap() const { return !value.has_value(); }
    std::string str() const { return value ? std::to_string(*value) : "AboveCap(" + std::to_string(cap) + ")"; }
};

inline GlobalDimension global_dimension(const FiniteDimAlgebra& a, int cap = default_resolution_cap)
{
    if (cap < 1) throw std::invalid_argument("resolution cap must be at least 1");
    GlobalDimension g{0, cap};
    for (const auto& pd : simple_projective_dimensions(a, cap)) {
        if (!pd) return {std::nullopt, cap};
        g.value = std::max(*g.value, *pd);
    }
    return g;
}

/// Euler form in the basis of simples: entry (i, j) is
/// sum_r (-1)^r dim Ext^r(S_i, S_j).
struct EulerForm {
    std::vector<std::vector<long long>> simples;

    long long operator()(const KClass& x, const KClass& y) const
    {
        long long s = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j) s += x[i] * y[j] * simples[i][j];
        return s;
    }
};

inline EulerForm euler_form(const FiniteDimAlgebra& a, int cap = default_resolution_cap)
{
    const int n = a.vertex_count();
    EulerForm e;
    e.simples.assign(static_cast<std::size_t>(n), std::vector<long long>(static_cast<std::size_t>(n), 0));
    const auto pds = simple_projective_dimensions(a, cap);
    for (Vertex i = 1; i <= n; ++i) {
        const auto si = simple(a, i);
        const auto& pd = pds[static_cast<std::size_t>(i - 1)];
        if (!pd)
            throw ResolutionCapExceeded("the Euler form needs finite global dimension; S_" + std::to_string(i) +
                                        " has projective dimension above " + std::to_string(cap));
        for (Vertex j = 1; j <= n; ++j) {
            const auto sj = simple(a, j);
            long long chi = 0;
            for (int r = 0; r <= *pd; ++r) chi += (r % 2 ? -1 : 1) * ext_dimension(a, si, sj, r, cap);
            e.simples[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j - 1)] = chi;
        }
    }
    return e;
}

} // namespace quiverhw
