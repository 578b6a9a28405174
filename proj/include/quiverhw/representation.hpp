#pragma once

#include "quiverhw/algebra.hpp"
#include "quiverhw/field.hpp"
#include "quiverhw/matrix.hpp"
#include "quiverhw/quiver.hpp"

#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace quiverhw {

/// Class in the Grothendieck group, in the basis of simples: entry v - 1 is
/// the multiplicity of S_v.
using KClass = std::vector<long long>;

inline KClass operator+(KClass a, const KClass& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] += b.at(i);
    return a;
}

inline KClass operator-(KClass a, const KClass& b)
{
    for (std::size_t i = 0; i < a.size(); ++i) a[i] -= b.at(i);
    return a;
}

inline KClass operator*(long long s, KClass a)
{
    for (auto& x : a) x *= s;
    return a;
}

inline long long class_length(const KClass& c)
{
    return std::accumulate(c.begin(), c.end(), 0LL);
}

inline bool is_zero_class(const KClass& c)
{
    return std::all_of(c.begin(), c.end(), [](long long x) { return x == 0; });
}

inline KClass unit_class(int n, Vertex v)
{
    KClass c(static_cast<std::size_t>(n), 0);
    c.at(static_cast<std::size_t>(v - 1)) = 1;
    return c;
}

/// Endpoints of every arrow, which is all a representation needs to know
/// about its quiver.
struct QuiverShape {
    int vertices = 0;
    std::vector<std::pair<Vertex, Vertex>> arrows;

    static QuiverShape of(const Quiver& q)
    {
        QuiverShape s;
        s.vertices = q.vertex_count();
        for (const auto& a : q.arrows()) s.arrows.emplace_back(a.source, a.target);
        return s;
    }

    friend bool operator==(const QuiverShape&, const QuiverShape&) = default;
};

/// A right module as a quiver representation: a space per vertex and, per
/// arrow a: s -> t, a dims[t] x dims[s] matrix acting on column vectors.
template <class K>
struct Representation {
    QuiverShape shape;
    std::vector<std::size_t> dims;  // indexed by vertex, entry 0 unused
    std::vector<Matrix<K>> action;
    FieldContext<K> field;

    static Representation zero(const QuiverShape& s, FieldContext<K> f = {})
    {
        Representation r;
        r.shape = s;
        r.field = f;
        r.dims.assign(static_cast<std::size_t>(s.vertices) + 1, 0);
        for (std::size_t a = 0; a < s.arrows.size(); ++a) r.action.emplace_back(0, 0);
        return r;
    }

    std::size_t dim_at(Vertex v) const { return dims.at(static_cast<std::size_t>(v)); }

    std::size_t total_dim() const { return std::accumulate(dims.begin(), dims.end(), std::size_t{0}); }

    bool is_zero() const { return total_dim() == 0; }

    KClass dim_vector() const
    {
        KClass c(static_cast<std::size_t>(shape.vertices));
        for (Vertex v = 1; v <= shape.vertices; ++v) c[static_cast<std::size_t>(v - 1)] = static_cast<long long>(dim_at(v));
        return c;
    }

    Vertex source(std::size_t a) const { return shape.arrows[a].first; }
    Vertex target(std::size_t a) const { return shape.arrows[a].second; }

    /// Action of a path (right action: the first arrow is applied first).
    Matrix<K> path_matrix(const Path& p) const
    {
        Matrix<K> m = Matrix<K>::identity(dim_at(p.source), field.one());
        for (int a : p.arrows) m = action[static_cast<std::size_t>(a)] * m;
        return m;
    }

    void check_shapes() const
    {
        if (dims.size() != static_cast<std::size_t>(shape.vertices) + 1 || action.size() != shape.arrows.size())
            throw std::logic_error("representation does not match its quiver");
        for (std::size_t a = 0; a < action.size(); ++a)
            if (action[a].rows() != dim_at(target(a)) || action[a].cols() != dim_at(source(a)))
                throw std::logic_error("arrow matrix shape does not match the dimension vector");
    }
};

template <class K>
K scalar_from(const Rational& q, const FieldContext<K>& f);

template <>
inline Rational scalar_from(const Rational& q, const FieldContext<Rational>&)
{
    return q;
}

template <>
inline ModP scalar_from(const Rational& q, const FieldContext<ModP>& f)
{
    ModP out;
    if (!reduce_mod(q, f.prime, out))
        throw std::domain_error("coefficient " + q.str() + " has a denominator divisible by " + std::to_string(f.prime));
    return out;
}

/// Whether every relation of the algebra acts as zero.
template <class K>
bool satisfies_relations(const Representation<K>& m, const std::vector<Rule>& rules)
{
    for (const auto& rule : rules) {
        const AlgebraElement g = rule.element();
        const Path& first = g.terms().begin()->first;
        Matrix<K> sum(m.dim_at(first.arrows.empty() ? first.source : m.target(static_cast<std::size_t>(first.arrows.back()))),
                      m.dim_at(first.source));
        for (const auto& [p, c] : g.terms()) sum = sum + m.path_matrix(p).scaled(scalar_from(c, m.field));
        if (!sum.is_zero()) return false;
    }
    return true;
}

/// A family of linear maps, one per vertex, intertwining the arrow actions.
template <class K>
struct ModuleMap {
    Representation<K> source;
    Representation<K> target;
    std::vector<Matrix<K>> mats;  // indexed by vertex, entry 0 unused

    bool intertwines() const
    {
        for (std::size_t a = 0; a < source.action.size(); ++a) {
            const Vertex s = source.source(a), t = source.target(a);
            if (!(target.action[a] * mats[static_cast<std::size_t>(s)] ==
                  mats[static_cast<std::size_t>(t)] * source.action[a]))
                return false;
        }
        return true;
    }

    std::size_t rank() const
    {
        std::size_t r = 0;
        for (Vertex v = 1; v <= source.shape.vertices; ++v) r += quiverhw::rank(mats[static_cast<std::size_t>(v)]);
        return r;
    }
};

/// A subrepresentation, stored as a splitting of each vertex space.
template <class K>
struct SubRepresentation {
    std::vector<Splitting<K>> spaces;  // indexed by vertex, entry 0 unused

    KClass dim_vector() const
    {
        KClass c(spaces.size() - 1);
        for (std::size_t v = 1; v < spaces.size(); ++v) c[v - 1] = static_cast<long long>(spaces[v].dim());
        return c;
    }
    std::size_t total_dim() const
    {
        std::size_t d = 0;
        for (std::size_t v = 1; v < spaces.size(); ++v) d += spaces[v].dim();
        return d;
    }
};

/// Smallest subrepresentation containing the given vectors; seeds[v] holds
/// column vectors in the space at v.
template <class K>
SubRepresentation<K> generated_submodule(const Representation<K>& m, const std::vector<Matrix<K>>& seeds)
{
    const int n = m.shape.vertices;
    std::vector<Matrix<K>> span(static_cast<std::size_t>(n) + 1);
    for (Vertex v = 1; v <= n; ++v) {
        const auto d = m.dim_at(v);
        const auto& s = seeds.at(static_cast<std::size_t>(v));
        span[static_cast<std::size_t>(v)] = s.cols() ? column_basis(s) : Matrix<K>(d, 0);
    }
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t a = 0; a < m.action.size(); ++a) {
            const auto s = static_cast<std::size_t>(m.source(a)), t = static_cast<std::size_t>(m.target(a));
            if (span[s].cols() == 0) continue;
            const Matrix<K> img = m.action[a] * span[s];
            if (spans_contain(span[t], img)) continue;
            span[t] = column_basis(Matrix<K>::hstack(span[t], img));
            changed = true;
        }
    }
    SubRepresentation<K> sub;
    sub.spaces.resize(static_cast<std::size_t>(n) + 1);
    for (Vertex v = 1; v <= n; ++v)
        sub.spaces[static_cast<std::size_t>(v)] = split(span[static_cast<std::size_t>(v)], m.dim_at(v), m.field.one());
    return sub;
}

/// Seeds taking the whole space at each listed vertex and nothing elsewhere.
template <class K>
std::vector<Matrix<K>> vertex_seeds(const Representation<K>& m, const std::vector<Vertex>& vertices)
{
    std::vector<Matrix<K>> seeds(static_cast<std::size_t>(m.shape.vertices) + 1);
    for (Vertex v = 1; v <= m.shape.vertices; ++v) seeds[static_cast<std::size_t>(v)] = Matrix<K>(m.dim_at(v), 0);
    for (Vertex v : vertices)
        seeds[static_cast<std::size_t>(v)] = Matrix<K>::identity(m.dim_at(v), m.field.one());
    return seeds;
}

template <class K>
SubRepresentation<K> zero_submodule(const Representation<K>& m)
{
    return generated_submodule(m, vertex_seeds(m, {}));
}

template <class K>
SubRepresentation<K> sum_submodules(const Representation<K>& m, const SubRepresentation<K>& a,
                                    const SubRepresentation<K>& b)
{
    std::vector<Matrix<K>> seeds(a.spaces.size());
    for (std::size_t v = 1; v < a.spaces.size(); ++v)
        seeds[v] = Matrix<K>::hstack(a.spaces[v].basis, b.spaces[v].basis);
    return generated_submodule(m, seeds);
}

template <class K>
bool contains(const SubRepresentation<K>& big, const SubRepresentation<K>& small)
{
    for (std::size_t v = 1; v < big.spaces.size(); ++v)
        if (!spans_contain(big.spaces[v].basis, small.spaces[v].basis)) return false;
    return true;
}

/// The subrepresentation as a module in its own right (coordinates along its basis).
template <class K>
Representation<K> as_representation(const Representation<K>& m, const SubRepresentation<K>& sub)
{
    Representation<K> r = Representation<K>::zero(m.shape, m.field);
    for (Vertex v = 1; v <= m.shape.vertices; ++v) r.dims[static_cast<std::size_t>(v)] = sub.spaces[static_cast<std::size_t>(v)].dim();
    for (std::size_t a = 0; a < m.action.size(); ++a) {
        const auto& s = sub.spaces[static_cast<std::size_t>(m.source(a))];
        const auto& t = sub.spaces[static_cast<std::size_t>(m.target(a))];
        r.action[a] = t.sub_coords() * (m.action[a] * s.basis);
    }
    return r;
}

template <class K>
Representation<K> quotient(const Representation<K>& m, const SubRepresentation<K>& sub)
{
    Representation<K> r = Representation<K>::zero(m.shape, m.field);
    for (Vertex v = 1; v <= m.shape.vertices; ++v) r.dims[static_cast<std::size_t>(v)] = sub.spaces[static_cast<std::size_t>(v)].codim();
    for (std::size_t a = 0; a < m.action.size(); ++a) {
        const auto& s = sub.spaces[static_cast<std::size_t>(m.source(a))];
        const auto& t = sub.spaces[static_cast<std::size_t>(m.target(a))];
        r.action[a] = t.quotient_coords() * (m.action[a] * s.complement);
    }
    return r;
}

template <class K>
ModuleMap<K> inclusion(const Representation<K>& m, const SubRepresentation<K>& sub)
{
    ModuleMap<K> f{as_representation(m, sub), m, {}};
    f.mats.resize(sub.spaces.size());
    for (std::size_t v = 1; v < sub.spaces.size(); ++v) f.mats[v] = sub.spaces[v].basis;
    return f;
}

/// Linear dual of a representation of the opposite quiver, read as a
/// representation of the original quiver (arrow indices are shared).
template <class K>
Representation<K> dual_of_opposite(const Representation<K>& m_op)
{
    Representation<K> r = m_op;
    for (auto& [s, t] : r.shape.arrows) std::swap(s, t);
    for (auto& mat : r.action) mat = mat.transpose();
    return r;
}

template <class K>
Representation<K> direct_sum(const std::vector<Representation<K>>& parts, const QuiverShape& shape,
                             FieldContext<K> field = {})
{
    Representation<K> r = Representation<K>::zero(shape, field);
    for (const auto& p : parts)
        for (Vertex v = 1; v <= shape.vertices; ++v) r.dims[static_cast<std::size_t>(v)] += p.dim_at(v);
    for (std::size_t a = 0; a < shape.arrows.size(); ++a) {
        const Vertex s = shape.arrows[a].first, t = shape.arrows[a].second;
        Matrix<K> m(r.dim_at(t), r.dim_at(s));
        std::size_t ro = 0, co = 0;
        for (const auto& p : parts) {
            const auto& pm = p.action[a];
            for (std::size_t i = 0; i < pm.rows(); ++i)
                for (std::size_t j = 0; j < pm.cols(); ++j) m(ro + i, co + j) = pm(i, j);
            ro += p.dim_at(t);
            co += p.dim_at(s);
        }
        r.action[a] = std::move(m);
    }
    return r;
}

/// Basis of Hom(M, N): kernel of the intertwining constraints.
template <class K>
std::vector<ModuleMap<K>> hom_basis(const Representation<K>& m, const Representation<K>& n)
{
    const int nv = m.shape.vertices;
    std::vector<std::size_t> offset(static_cast<std::size_t>(nv) + 2, 0);
    for (Vertex v = 1; v <= nv; ++v)
        offset[static_cast<std::size_t>(v) + 1] = offset[static_cast<std::size_t>(v)] + n.dim_at(v) * m.dim_at(v);
    const std::size_t unknowns = offset[static_cast<std::size_t>(nv) + 1];
    // Unknown (v, i, j) is entry (i, j) of f_v.
    auto var = [&](Vertex v, std::size_t i, std::size_t j) { return offset[static_cast<std::size_t>(v)] + i * m.dim_at(v) + j; };

    std::vector<std::vector<K>> rows;
    for (std::size_t a = 0; a < m.action.size(); ++a) {
        const Vertex s = m.source(a), t = m.target(a);
        // (N_a f_s - f_t M_a)(i, j) = 0 for i < dim N_t, j < dim M_s
        for (std::size_t i = 0; i < n.dim_at(t); ++i)
            for (std::size_t j = 0; j < m.dim_at(s); ++j) {
                std::vector<K> row(unknowns);
                for (std::size_t k = 0; k < n.dim_at(s); ++k) row[var(s, k, j)] += n.action[a](i, k);
                for (std::size_t k = 0; k < m.dim_at(t); ++k) row[var(t, i, k)] -= m.action[a](k, j);
                rows.push_back(std::move(row));
            }
    }
    Matrix<K> system(rows.size(), unknowns);
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t c = 0; c < unknowns; ++c) system(r, c) = rows[r][c];
    const Matrix<K> ker = kernel(system, m.field.one());

    std::vector<ModuleMap<K>> out;
    for (std::size_t b = 0; b < ker.cols(); ++b) {
        ModuleMap<K> f{m, n, std::vector<Matrix<K>>(static_cast<std::size_t>(nv) + 1)};
        for (Vertex v = 1; v <= nv; ++v) {
            Matrix<K> fv(n.dim_at(v), m.dim_at(v));
            for (std::size_t i = 0; i < n.dim_at(v); ++i)
                for (std::size_t j = 0; j < m.dim_at(v); ++j) fv(i, j) = ker(var(v, i, j), b);
            f.mats[static_cast<std::size_t>(v)] = std::move(fv);
        }
        out.push_back(std::move(f));
    }
    return out;
}

/// Sum of the images of all maps from the sources into M.
template <class K>
SubRepresentation<K> trace_submodule(const std::vector<Representation<K>>& sources, const Representation<K>& m)
{
    std::vector<Matrix<K>> seeds = vertex_seeds(m, {});
    for (const auto& src : sources)
        for (const auto& f : hom_basis(src, m))
            for (Vertex v = 1; v <= m.shape.vertices; ++v) {
                auto& s = seeds[static_cast<std::size_t>(v)];
                s = Matrix<K>::hstack(s, f.mats[static_cast<std::size_t>(v)]);
            }
    return generated_submodule(m, seeds);
}

/// Trace of the indecomposable projectives P_w (w in `vertices`): since
/// Hom(P_w, M) is M_w, this is the submodule generated by those spaces.
template <class K>
SubRepresentation<K> trace_of_projectives(const Representation<K>& m, const std::vector<Vertex>& vertices)
{
    return generated_submodule(m, vertex_seeds(m, vertices));
}

/// rad M: the span of the images of all arrows.
template <class K>
SubRepresentation<K> radical(const Representation<K>& m)
{
    std::vector<Matrix<K>> seeds = vertex_seeds(m, {});
    for (std::size_t a = 0; a < m.action.size(); ++a) {
        auto& s = seeds[static_cast<std::size_t>(m.target(a))];
        s = Matrix<K>::hstack(s, m.action[a]);
    }
    return generated_submodule(m, seeds);
}

template <class K>
Representation<K> top(const Representation<K>& m)
{
    return quotient(m, radical(m));
}

/// An injective map between modules with equal dimension vectors.
template <class K>
bool is_isomorphic_via(const ModuleMap<K>& f)
{
    return f.source.dim_vector() == f.target.dim_vector() && f.rank() == f.source.total_dim();
}

} // namespace quiverhw
