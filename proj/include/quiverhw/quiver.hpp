#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace quiverhw {

/// Vertices are 1..n. Index 0 is never used as a vertex.
using Vertex = int;

struct Arrow {
    std::string name;
    Vertex source = 0;
    Vertex target = 0;

    friend bool operator==(const Arrow&, const Arrow&) = default;
};

/// Finite quiver with named arrows in declaration order.
class Quiver {
public:
    Quiver() = default;
    Quiver(int vertex_count, std::vector<Arrow> arrows)
        : n_(vertex_count), arrows_(std::move(arrows))
    {
        if (n_ < 0) throw std::invalid_argument("negative vertex count");
        for (std::size_t k = 0; k < arrows_.size(); ++k) {
            const auto& a = arrows_[k];
            if (a.source < 1 || a.source > n_ || a.target < 1 || a.target > n_)
                throw std::invalid_argument("arrow '" + a.name + "' has an endpoint outside 1.." + std::to_string(n_));
            if (!index_.emplace(a.name, static_cast<int>(k)).second)
                throw std::invalid_argument("duplicate arrow name '" + a.name + "'");
        }
    }

    int vertex_count() const { return n_; }
    const std::vector<Arrow>& arrows() const { return arrows_; }
    const Arrow& arrow(int index) const { return arrows_.at(static_cast<std::size_t>(index)); }
    int arrow_count() const { return static_cast<int>(arrows_.size()); }

    std::optional<int> find_arrow(const std::string& name) const
    {
        auto it = index_.find(name);
        if (it == index_.end()) return std::nullopt;
        return it->second;
    }

    bool has_loops() const
    {
        return std::any_of(arrows_.begin(), arrows_.end(), [](const Arrow& a) { return a.source == a.target; });
    }

    /// Same vertices and arrow names, every arrow reversed.
    Quiver opposite() const
    {
        std::vector<Arrow> rev;
        rev.reserve(arrows_.size());
        for (const auto& a : arrows_) rev.push_back({a.name, a.target, a.source});
        return Quiver(n_, std::move(rev));
    }

    friend bool operator==(const Quiver& a, const Quiver& b) { return a.n_ == b.n_ && a.arrows_ == b.arrows_; }

private:
    int n_ = 0;
    std::vector<Arrow> arrows_;
    std::unordered_map<std::string, int> index_;
};

/// A path stored as arrow indices; the empty path at `source` is e_source.
/// Composition is left to right: arrows[0] is traversed first.
struct Path {
    Vertex source = 0;
    std::vector<int> arrows;

    std::size_t length() const { return arrows.size(); }
    bool trivial() const { return arrows.empty(); }

    Vertex target(const Quiver& q) const { return arrows.empty() ? source : q.arrow(arrows.back()).target; }

    static Path trivial_at(Vertex v) { return Path{v, {}}; }
    static Path of_arrow(const Quiver& q, int a) { return Path{q.arrow(a).source, {a}}; }

    /// Contiguous subpath [begin, begin + len).
    Path subpath(const Quiver& q, std::size_t begin, std::size_t len) const
    {
        Path p;
        p.source = begin == 0 ? source : q.arrow(arrows[begin - 1]).target;
        p.arrows.assign(arrows.begin() + static_cast<std::ptrdiff_t>(begin),
                        arrows.begin() + static_cast<std::ptrdiff_t>(begin + len));
        return p;
    }

    friend bool operator==(const Path&, const Path&) = default;
};

/// Checks that consecutive arrows compose.
inline bool is_valid_path(const Quiver& q, const Path& p)
{
    if (p.source < 1 || p.source > q.vertex_count()) return false;
    Vertex at = p.source;
    for (int a : p.arrows) {
        if (a < 0 || a >= q.arrow_count()) return false;
        if (q.arrow(a).source != at) return false;
        at = q.arrow(a).target;
    }
    return true;
}

/// p then q; nullopt when target(p) != source(q).
inline std::optional<Path> compose_paths(const Quiver& q, const Path& p, const Path& r)
{
    if (p.target(q) != r.source) return std::nullopt;
    Path out = p;
    out.arrows.insert(out.arrows.end(), r.arrows.begin(), r.arrows.end());
    return out;
}

/// Arrow names joined with '*' ("a*b" means a then b); e<i> for trivial paths.
inline std::string path_name(const Quiver& q, const Path& p)
{
    if (p.trivial()) return "e" + std::to_string(p.source);
    std::string s;
    for (std::size_t k = 0; k < p.arrows.size(); ++k) {
        if (k) s += '*';
        s += q.arrow(p.arrows[k]).name;
    }
    return s;
}

/// Same arrows in reverse order, read in the opposite quiver.
inline Path reverse_path(const Quiver& q, const Path& p)
{
    Path r;
    r.source = p.target(q);
    r.arrows.assign(p.arrows.rbegin(), p.arrows.rend());
    return r;
}

/// Whether `needle`'s arrow word occurs contiguously in `hay`. Trivial paths
/// are subpaths exactly of the paths passing through their vertex.
inline bool is_subpath(const Quiver& q, const Path& needle, const Path& hay)
{
    if (needle.trivial()) {
        if (hay.source == needle.source) return true;
        for (int a : hay.arrows)
            if (q.arrow(a).target == needle.source) return true;
        return false;
    }
    if (needle.length() > hay.length()) return false;
    return std::search(hay.arrows.begin(), hay.arrows.end(), needle.arrows.begin(), needle.arrows.end()) !=
           hay.arrows.end();
}

/// A total order on the vertices. perm[k] is the vertex in position k + 1.
class Ordering {
public:
    Ordering() = default;
    explicit Ordering(std::vector<Vertex> perm)
        : perm_(std::move(perm)), pos_(perm_.size() + 1, 0)
    {
        const int n = static_cast<int>(perm_.size());
        for (int k = 0; k < n; ++k) {
            const Vertex v = perm_[static_cast<std::size_t>(k)];
            if (v < 1 || v > n || pos_[static_cast<std::size_t>(v)] != 0)
                throw std::invalid_argument("ordering is not a permutation of 1.." + std::to_string(n));
            pos_[static_cast<std::size_t>(v)] = k + 1;
        }
    }

    static Ordering natural(int n)
    {
        std::vector<Vertex> p(static_cast<std::size_t>(n));
        std::iota(p.begin(), p.end(), 1);
        return Ordering(std::move(p));
    }

    int size() const { return static_cast<int>(perm_.size()); }
    /// Vertex at 1-based position.
    Vertex vertex_at(int position) const { return perm_.at(static_cast<std::size_t>(position - 1)); }
    /// 1-based position of a vertex.
    int position_of(Vertex v) const { return pos_.at(static_cast<std::size_t>(v)); }
    const std::vector<Vertex>& perm() const { return perm_; }

    friend bool operator==(const Ordering& a, const Ordering& b) { return a.perm_ == b.perm_; }

private:
    std::vector<Vertex> perm_;
    std::vector<int> pos_;
};

/// All paths of length <= max_len, optionally restricted to the vertices in
/// positions <= vertex_cap. Ordered by length, then lexicographically by arrow
/// declaration index (trivial paths by vertex number).
inline std::vector<Path> enumerate_paths(const Quiver& q, std::size_t max_len, std::optional<int> vertex_cap = {},
                                         const std::optional<Ordering>& ordering = {})
{
    const Ordering ord = ordering ? *ordering : Ordering::natural(q.vertex_count());
    auto allowed = [&](Vertex v) { return !vertex_cap || ord.position_of(v) <= *vertex_cap; };

    std::vector<Path> out;
    std::vector<Path> layer;
    for (Vertex v = 1; v <= q.vertex_count(); ++v)
        if (allowed(v)) layer.push_back(Path::trivial_at(v));
    out = layer;
    for (std::size_t len = 1; len <= max_len; ++len) {
        std::vector<Path> next;
        for (const auto& p : layer) {
            const Vertex t = p.target(q);
            for (int a = 0; a < q.arrow_count(); ++a) {
                const auto& arr = q.arrow(a);
                if (arr.source != t || !allowed(arr.target)) continue;
                Path np = p;
                if (len == 1) np.source = arr.source;
                np.arrows.push_back(a);
                next.push_back(std::move(np));
            }
        }
        std::sort(next.begin(), next.end(), [](const Path& x, const Path& y) { return x.arrows < y.arrows; });
        if (next.empty()) break;
        out.insert(out.end(), next.begin(), next.end());
        layer = std::move(next);
    }
    return out;
}

enum class VertexRole { internal, external };

struct VertexOccurrence {
    std::size_t index = 0;  // 0 = source of the first arrow, length = target of the last
    VertexRole role = VertexRole::external;

    friend bool operator==(const VertexOccurrence&, const VertexOccurrence&) = default;
};

/// Every visited vertex of a nontrivial path with its role.
inline std::vector<std::pair<Vertex, VertexOccurrence>> vertex_roles(const Quiver& q, const Path& p)
{
    if (p.trivial()) throw std::invalid_argument("vertex roles are undefined for trivial paths");
    std::vector<std::pair<Vertex, VertexOccurrence>> out;
    out.push_back({p.source, {0, VertexRole::external}});
    for (std::size_t k = 0; k < p.length(); ++k) {
        const bool last = k + 1 == p.length();
        out.push_back({q.arrow(p.arrows[k]).target, {k + 1, last ? VertexRole::external : VertexRole::internal}});
    }
    return out;
}

struct MaximalVertexClassification {
    Vertex max_vertex = 0;
    std::vector<VertexOccurrence> positions;

    bool all_external() const
    {
        return std::all_of(positions.begin(), positions.end(),
                           [](const VertexOccurrence& o) { return o.role == VertexRole::external; });
    }
};

/// The largest vertex on the path under `ordering`, with all its occurrences.
inline MaximalVertexClassification classify_maximal_vertices(const Quiver& q, const Path& p, const Ordering& ordering)
{
    const auto roles = vertex_roles(q, p);
    MaximalVertexClassification c;
    int best = 0;
    for (const auto& [v, occ] : roles) best = std::max(best, ordering.position_of(v));
    c.max_vertex = ordering.vertex_at(best);
    for (const auto& [v, occ] : roles)
        if (v == c.max_vertex) c.positions.push_back(occ);
    return c;
}

} // namespace quiverhw
