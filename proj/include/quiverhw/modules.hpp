#pragma once

#include "quiverhw/algebra.hpp"
#include "quiverhw/representation.hpp"

#include <map>
#include <memory>
#include <vector>

namespace quiverhw {

using RationalRep = Representation<Rational>;
using RationalSub = SubRepresentation<Rational>;

/// S_v: one-dimensional at v, every arrow zero.
inline RationalRep simple(const FiniteDimAlgebra& a, Vertex v)
{
    RationalRep r = RationalRep::zero(QuiverShape::of(a.quiver()));
    r.dims.at(static_cast<std::size_t>(v)) = 1;
    for (std::size_t k = 0; k < r.action.size(); ++k) r.action[k] = Matrix<Rational>(r.dim_at(r.target(k)), r.dim_at(r.source(k)));
    return r;
}

/// P_v = e_v A. Basis vectors are the normal-form paths from v; the space at w
/// holds those ending at w, in basis order. Arrows act by right multiplication.
inline RationalRep projective(const FiniteDimAlgebra& a, Vertex v)
{
    const Quiver& q = a.quiver();
    RationalRep r = RationalRep::zero(QuiverShape::of(q));
    std::map<Path, std::size_t, PathKeyLess> coord;
    for (const auto& p : a.paths_from(v)) {
        auto& d = r.dims[static_cast<std::size_t>(p.target(q))];
        coord[p] = d++;
    }
    for (int arr = 0; arr < q.arrow_count(); ++arr) {
        const auto& ar = q.arrow(arr);
        Matrix<Rational> m(r.dim_at(ar.target), r.dim_at(ar.source));
        for (const auto& p : a.paths_from(v)) {
            if (p.target(q) != ar.source) continue;
            Path pa = p;
            pa.arrows.push_back(arr);
            const AlgebraElement image = a.reduce(AlgebraElement::of(pa));
            for (const auto& [t, c] : image.terms()) m(coord.at(t), coord.at(p)) = c;
        }
        r.action[static_cast<std::size_t>(arr)] = std::move(m);
    }
    return r;
}

/// Module constructors for one algebra. Holds the opposite algebra, which
/// realizes injectives and costandards by duality.
class ModuleFactory {
public:
    explicit ModuleFactory(const FiniteDimAlgebra& a)
        : a_(a), op_(std::make_shared<FiniteDimAlgebra>(opposite_algebra(a))) {}

    const FiniteDimAlgebra& algebra() const { return a_; }
    const FiniteDimAlgebra& opposite() const { return *op_; }
    int n() const { return a_.vertex_count(); }

    RationalRep simple(Vertex v) const { return quiverhw::simple(a_, v); }
    RationalRep projective(Vertex v) const { return quiverhw::projective(a_, v); }
    /// I_v = D(e_v A^op).
    RationalRep injective(Vertex v) const { return dual_of_opposite(quiverhw::projective(*op_, v)); }

    /// P_v modulo the trace of every P_w with w later than v in the ordering.
    RationalRep standard(int position, const Ordering& ord) const { return standard_in(a_, position, ord); }

    /// Maximal submodule of I_v in the Serre subcategory of earlier simples,
    /// realized as the dual of the opposite algebra's standard module.
    RationalRep costandard(int position, const Ordering& ord) const
    {
        return dual_of_opposite(standard_in(*op_, position, ord));
    }

    static std::vector<Vertex> later_vertices(int position, const Ordering& ord)
    {
        std::vector<Vertex> later;
        for (int k = position + 1; k <= ord.size(); ++k) later.push_back(ord.vertex_at(k));
        return later;
    }

private:
    static RationalRep standard_in(const FiniteDimAlgebra& alg, int position, const Ordering& ord)
    {
        const RationalRep p = quiverhw::projective(alg, ord.vertex_at(position));
        return quotient(p, trace_of_projectives(p, later_vertices(position, ord)));
    }

    FiniteDimAlgebra a_;
    std::shared_ptr<const FiniteDimAlgebra> op_;
};

/// Generators of the top of M: vectors at each vertex completing rad M.
struct TopGenerators {
    std::vector<Vertex> vertices;
    std::vector<std::vector<Rational>> vectors;
};

inline TopGenerators top_generators(const RationalRep& m)
{
    const auto rad = radical(m);
    TopGenerators g;
    for (Vertex v = 1; v <= m.shape.vertices; ++v) {
        const auto& sp = rad.spaces[static_cast<std::size_t>(v)];
        for (std::size_t c = 0; c < sp.codim(); ++c) {
            g.vertices.push_back(v);
            g.vectors.push_back(sp.complement.column(c));
        }
    }
    return g;
}

/// Direct sum of indecomposable projectives, one per generator vertex. The
/// coordinates at vertex w list, generator by generator, the normal-form
/// paths from the generator's vertex to w.
struct FreeModule {
    std::vector<Vertex> generators;
    RationalRep rep;
    std::vector<std::vector<std::pair<std::size_t, Path>>> layout;  // per vertex

    bool empty() const { return generators.empty(); }
};

inline FreeModule free_module(const FiniteDimAlgebra& a, const std::vector<Vertex>& gens)
{
    FreeModule f;
    f.generators = gens;
    f.layout.assign(static_cast<std::size_t>(a.vertex_count()) + 1, {});
    std::vector<RationalRep> parts;
    for (std::size_t g = 0; g < gens.size(); ++g) {
        parts.push_back(projective(a, gens[g]));
        for (const auto& p : a.paths_from(gens[g])) f.layout[static_cast<std::size_t>(p.target(a.quiver()))].push_back({g, p});
    }
    f.rep = direct_sum(parts, QuiverShape::of(a.quiver()));
    return f;
}

/// The map F -> M sending generator g to vectors[g]; per vertex, the column
/// for (g, p) is p acting on the generator's image.
inline ModuleMap<Rational> map_from_free(const FreeModule& f, const RationalRep& m,
                                         const std::vector<std::vector<Rational>>& images)
{
    ModuleMap<Rational> out{f.rep, m, std::vector<Matrix<Rational>>(static_cast<std::size_t>(m.shape.vertices) + 1)};
    for (Vertex w = 1; w <= m.shape.vertices; ++w) {
        const auto& lay = f.layout[static_cast<std::size_t>(w)];
        Matrix<Rational> mat(m.dim_at(w), lay.size());
        for (std::size_t c = 0; c < lay.size(); ++c) {
            const auto& [g, p] = lay[c];
            const auto col = m.path_matrix(p).apply(images[g]);
            for (std::size_t r = 0; r < col.size(); ++r) mat(r, c) = col[r];
        }
        out.mats[static_cast<std::size_t>(w)] = std::move(mat);
    }
    return out;
}

/// Projective cover P(M) -> M lifting a basis of the top.
struct ProjectiveCover {
    FreeModule cover;
    ModuleMap<Rational> map;
};

inline ProjectiveCover projective_cover(const FiniteDimAlgebra& a, const RationalRep& m)
{
    const auto gens = top_generators(m);
    FreeModule f = free_module(a, gens.vertices);
    auto map = map_from_free(f, m, gens.vectors);
    return {std::move(f), std::move(map)};
}

/// Kernel of a module map as a subrepresentation of its source.
inline RationalSub kernel_submodule(const ModuleMap<Rational>& f)
{
    RationalSub k;
    k.spaces.resize(f.mats.size());
    for (Vertex v = 1; v <= f.source.shape.vertices; ++v) {
        const auto& m = f.mats[static_cast<std::size_t>(v)];
        Matrix<Rational> ker = m.cols() ? kernel(m, Rational(1)) : Matrix<Rational>(0, 0);
        k.spaces[static_cast<std::size_t>(v)] = split(ker, f.source.dim_at(v), Rational(1));
    }
    return k;
}

} // namespace quiverhw
