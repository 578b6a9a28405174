#pragma once

#include "quiverhw/errors.hpp"
#include "quiverhw/field.hpp"
#include "quiverhw/quiver.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

namespace quiverhw {

/// Structural key order on paths: length, arrow word, source. Used only for
/// storage; the monomial order is a separate, configurable object.
struct PathKeyLess {
    bool operator()(const Path& a, const Path& b) const
    {
        return std::forward_as_tuple(a.arrows.size(), a.arrows, a.source) <
               std::forward_as_tuple(b.arrows.size(), b.arrows, b.source);
    }
};

/// Finite linear combination of paths with nonzero rational coefficients.
class AlgebraElement {
public:
    using Terms = std::map<Path, Rational, PathKeyLess>;

    AlgebraElement() = default;
    static AlgebraElement of(const Path& p, const Rational& c = 1)
    {
        AlgebraElement e;
        e.add(p, c);
        return e;
    }

    void add(const Path& p, const Rational& c)
    {
        if (c == 0) return;
        auto [it, inserted] = terms_.try_emplace(p, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    void add(const AlgebraElement& other, const Rational& scale = 1)
    {
        for (const auto& [p, c] : other.terms_) add(p, c * scale);
    }

    AlgebraElement scaled(const Rational& s) const
    {
        AlgebraElement e;
        if (s == 0) return e;
        e.terms_ = terms_;
        for (auto& [p, c] : e.terms_) c *= s;
        return e;
    }

    bool is_zero() const { return terms_.empty(); }
    std::size_t size() const { return terms_.size(); }
    const Terms& terms() const { return terms_; }

    Rational coefficient(const Path& p) const
    {
        auto it = terms_.find(p);
        return it == terms_.end() ? Rational(0) : it->second;
    }

    friend AlgebraElement operator+(AlgebraElement a, const AlgebraElement& b)
    {
        a.add(b);
        return a;
    }
    friend AlgebraElement operator-(AlgebraElement a, const AlgebraElement& b)
    {
        a.add(b, -1);
        return a;
    }
    friend bool operator==(const AlgebraElement& a, const AlgebraElement& b) { return a.terms_ == b.terms_; }

private:
    Terms terms_;
};

/// Concatenation product in kQ (no reduction).
inline AlgebraElement concat(const Quiver& q, const AlgebraElement& x, const AlgebraElement& y)
{
    AlgebraElement out;
    for (const auto& [p, c] : x.terms())
        for (const auto& [r, d] : y.terms())
            if (auto pr = compose_paths(q, p, r)) out.add(*pr, c * d);
    return out;
}

inline AlgebraElement concat(const Quiver& q, const Path& left, const AlgebraElement& x, const Path& right)
{
    return concat(q, concat(q, AlgebraElement::of(left), x), AlgebraElement::of(right));
}

inline std::string element_name(const Quiver& q, const AlgebraElement& x)
{
    if (x.is_zero()) return "0";
    std::string s;
    bool first = true;
    // Highest terms first reads more naturally.
    for (auto it = x.terms().rbegin(); it != x.terms().rend(); ++it) {
        Rational c = it->second;
        if (!first) {
            s += c < 0 ? " - " : " + ";
            if (c < 0) c = -c;
        } else if (c < 0) {
            s += "-";
            c = -c;
        }
        if (c != 1) s += to_string(c) + "*";
        s += path_name(q, it->first);
        first = false;
    }
    return s;
}

/// Degree-lexicographic order on paths: longer is larger; equal lengths are
/// compared arrow by arrow using `precedence` (rank of each arrow index).
class MonomialOrder {
public:
    MonomialOrder() = default;
    explicit MonomialOrder(std::vector<int> precedence)
        : rank_(std::move(precedence)) {}

    static MonomialOrder declaration(const Quiver& q)
    {
        std::vector<int> r(static_cast<std::size_t>(q.arrow_count()));
        for (int a = 0; a < q.arrow_count(); ++a) r[static_cast<std::size_t>(a)] = a;
        return MonomialOrder(std::move(r));
    }

    const std::vector<int>& precedence() const { return rank_; }

    std::strong_ordering compare(const Path& a, const Path& b) const
    {
        if (auto c = a.length() <=> b.length(); c != 0) return c;
        for (std::size_t k = 0; k < a.length(); ++k) {
            const int ra = rank_.at(static_cast<std::size_t>(a.arrows[k]));
            const int rb = rank_.at(static_cast<std::size_t>(b.arrows[k]));
            if (auto c = ra <=> rb; c != 0) return c;
        }
        return a.source <=> b.source;
    }

    bool less(const Path& a, const Path& b) const { return compare(a, b) < 0; }

    friend bool operator==(const MonomialOrder&, const MonomialOrder&) = default;

private:
    std::vector<int> rank_;
};

inline Path leading_path(const AlgebraElement& x, const MonomialOrder& order)
{
    if (x.is_zero()) throw std::invalid_argument("zero element has no leading path");
    const Path* best = nullptr;
    for (const auto& [p, c] : x.terms())
        if (!best || order.less(*best, p)) best = &p;
    return *best;
}

/// A rewriting rule tip -> tail, i.e. the monic ideal element tip - tail with
/// every tail path strictly below tip.
struct Rule {
    Path tip;
    AlgebraElement tail;

    AlgebraElement element() const { return AlgebraElement::of(tip) - tail; }
};

/// Position of the first occurrence of `tip` inside `p`.
inline std::optional<std::size_t> find_tip(const Path& tip, const Path& p)
{
    if (tip.trivial() || tip.length() > p.length()) return std::nullopt;
    auto it = std::search(p.arrows.begin(), p.arrows.end(), tip.arrows.begin(), tip.arrows.end());
    if (it == p.arrows.end()) return std::nullopt;
    return static_cast<std::size_t>(it - p.arrows.begin());
}

inline std::vector<std::size_t> all_tip_occurrences(const Path& tip, const Path& p)
{
    std::vector<std::size_t> out;
    if (tip.trivial() || tip.length() > p.length()) return out;
    for (std::size_t k = 0; k + tip.length() <= p.length(); ++k)
        if (std::equal(tip.arrows.begin(), tip.arrows.end(), p.arrows.begin() + static_cast<std::ptrdiff_t>(k)))
            out.push_back(k);
    return out;
}

/// Normal form of x modulo the rules. With an RNG, the reducible term, the
/// rule and the occurrence are picked at random (used to exercise confluence);
/// otherwise the largest reducible term is rewritten at its first match.
inline AlgebraElement reduce(const Quiver& q, const AlgebraElement& x, const std::vector<Rule>& rules,
                             const MonomialOrder& order, std::mt19937_64* rng = nullptr)
{
    AlgebraElement work = x;
    AlgebraElement done;
    while (!work.is_zero()) {
        struct Site {
            Path path;
            Rational coeff;
            std::size_t rule;
            std::size_t at;
        };
        std::optional<Site> site;
        if (rng) {
            std::vector<Site> sites;
            for (const auto& [p, c] : work.terms())
                for (std::size_t r = 0; r < rules.size(); ++r)
                    for (auto at : all_tip_occurrences(rules[r].tip, p)) sites.push_back({p, c, r, at});
            if (sites.empty()) {
                done.add(work);
                break;
            }
            std::uniform_int_distribution<std::size_t> pick(0, sites.size() - 1);
            site = sites[pick(*rng)];
        } else {
            const Path top = leading_path(work, order);
            const Rational c = work.coefficient(top);
            for (std::size_t r = 0; r < rules.size() && !site; ++r)
                if (auto at = find_tip(rules[r].tip, top)) site = Site{top, c, r, *at};
            if (!site) {
                done.add(top, c);
                work.add(top, -c);
                continue;
            }
        }
        const Rule& rule = rules[site->rule];
        const Path left = site->path.subpath(q, 0, site->at);
        const std::size_t after = site->at + rule.tip.length();
        const Path right = site->path.subpath(q, after, site->path.length() - after);
        work.add(site->path, -site->coeff);
        work.add(concat(q, left, rule.tail, right), site->coeff);
    }
    return done;
}

/// Splits every generator into its e_i * g * e_j components.
inline std::vector<AlgebraElement> uniformize(const Quiver& q, const std::vector<AlgebraElement>& gens)
{
    std::vector<AlgebraElement> out;
    for (const auto& g : gens) {
        std::map<std::pair<Vertex, Vertex>, AlgebraElement> parts;
        for (const auto& [p, c] : g.terms()) parts[{p.source, p.target(q)}].add(p, c);
        for (auto& [key, part] : parts)
            if (!part.is_zero()) out.push_back(std::move(part));
    }
    return out;
}

inline bool is_uniform(const Quiver& q, const AlgebraElement& g)
{
    std::optional<std::pair<Vertex, Vertex>> ends;
    for (const auto& [p, c] : g.terms()) {
        std::pair<Vertex, Vertex> e{p.source, p.target(q)};
        if (ends && *ends != e) return false;
        ends = e;
    }
    return true;
}

constexpr int default_degree_cap = 16;

/// A = kQ/I with a completed (reduced, monic, tip-reduced) rewriting system
/// and the normal-form path basis. Immutable once built.
class FiniteDimAlgebra {
public:
    const Quiver& quiver() const { return quiver_; }
    const MonomialOrder& order() const { return order_; }
    const std::vector<AlgebraElement>& generators() const { return generators_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::vector<Path>& basis() const { return basis_; }
    std::size_t dim() const { return basis_.size(); }
    int degree_cap() const { return degree_cap_; }
    int vertex_count() const { return quiver_.vertex_count(); }

    /// True when every ideal generator is a single path.
    bool monomial() const
    {
        return std::all_of(generators_.begin(), generators_.end(), [](const AlgebraElement& g) { return g.size() == 1; });
    }

    /// Normal-form paths starting at v, in basis order.
    const std::vector<Path>& paths_from(Vertex v) const { return from_.at(static_cast<std::size_t>(v)); }

    /// Normal-form paths from i to j.
    std::vector<Path> paths_between(Vertex i, Vertex j) const
    {
        std::vector<Path> out;
        for (const auto& p : paths_from(i))
            if (p.target(quiver_) == j) out.push_back(p);
        return out;
    }

    AlgebraElement reduce(const AlgebraElement& x) const { return quiverhw::reduce(quiver_, x, rules_, order_); }

    AlgebraElement multiply(const AlgebraElement& x, const AlgebraElement& y) const
    {
        return reduce(concat(quiver_, x, y));
    }

    AlgebraElement identity() const
    {
        AlgebraElement e;
        for (Vertex v = 1; v <= quiver_.vertex_count(); ++v) e.add(Path::trivial_at(v), 1);
        return e;
    }

    std::vector<Path> tips() const
    {
        std::vector<Path> t;
        for (const auto& r : rules_) t.push_back(r.tip);
        return t;
    }

private:
    friend class Completion;

    Quiver quiver_;
    MonomialOrder order_;
    std::vector<AlgebraElement> generators_;
    std::vector<Rule> rules_;
    std::vector<Path> basis_;
    std::vector<std::vector<Path>> from_;
    int degree_cap_ = default_degree_cap;
};

/// Noncommutative Buchberger completion for two-sided ideals of kQ.
class Completion {
public:
    Completion(const Quiver& q, MonomialOrder order, int degree_cap)
        : q_(q), order_(std::move(order)), cap_(degree_cap)
    {
        if (cap_ < 2) throw std::invalid_argument("degree cap must be at least 2");
        if (order_.precedence().empty() && q_.arrow_count() > 0) order_ = MonomialOrder::declaration(q_);
    }

    FiniteDimAlgebra run(const std::vector<AlgebraElement>& raw_generators)
    {
        for (const auto& g : raw_generators)
            for (const auto& [p, c] : g.terms())
                if (!is_valid_path(q_, p)) throw std::invalid_argument("generator contains an invalid path");
        const auto gens = uniformize(q_, raw_generators);
        for (const auto& g : gens) add(g);

        process_overlaps(static_cast<std::size_t>(cap_));
        auto basis = normal_paths();
        // Overlaps longer than the cap can only produce tips shorter than the
        // cap now, so the remaining completion terminates.
        process_overlaps(std::nullopt);
        basis = normal_paths();

        FiniteDimAlgebra a;
        a.quiver_ = q_;
        a.order_ = order_;
        a.generators_ = gens;
        a.rules_ = rules_;
        a.basis_ = std::move(basis);
        a.degree_cap_ = cap_;
        a.from_.assign(static_cast<std::size_t>(q_.vertex_count()) + 1, {});
        for (const auto& p : a.basis_) a.from_[static_cast<std::size_t>(p.source)].push_back(p);
        return a;
    }

private:
    struct Overlap {
        Path word;
        Path left_tip;
        Path right_tip;
        std::size_t shared = 0;

        auto key() const
        {
            return std::make_tuple(word.length(), word.arrows, left_tip.length(), left_tip.arrows, right_tip.length(),
                                   right_tip.arrows, shared);
        }
        bool operator<(const Overlap& o) const { return key() < o.key(); }
    };

    AlgebraElement reduce_now(const AlgebraElement& x) const { return quiverhw::reduce(q_, x, rules_, order_); }

    void add(const AlgebraElement& x)
    {
        std::vector<AlgebraElement> pending{x};
        while (!pending.empty()) {
            AlgebraElement r = reduce_now(pending.back());
            pending.pop_back();
            if (r.is_zero()) continue;
            const Path tip = leading_path(r, order_);
            r = r.scaled(Rational(1) / r.coefficient(tip));
            for (const auto& [p, c] : r.terms())
                if (p.length() < 2)
                    throw NotAdmissible(NotAdmissible::Cause::short_relation,
                                        "the ideal is not admissible: relation " + element_name(q_, r) +
                                            " has a term of length < 2 after reduction");

            std::vector<Rule> kept;
            for (auto& rule : rules_) {
                if (is_subpath(q_, tip, rule.tip))
                    pending.push_back(rule.element());
                else
                    kept.push_back(std::move(rule));
            }
            rules_ = std::move(kept);
            rules_.push_back(Rule{tip, AlgebraElement::of(tip) - r});
            std::sort(rules_.begin(), rules_.end(),
                      [&](const Rule& a, const Rule& b) { return order_.less(a.tip, b.tip); });
            for (auto& rule : rules_) rule.tail = reduce_now(rule.tail);
            for (const auto& rule : rules_) {
                enqueue(tip, rule.tip);
                if (!(rule.tip == tip)) enqueue(rule.tip, tip);
            }
        }
    }

    /// Overlaps u = a b, v = b c with a, b, c nonempty.
    void enqueue(const Path& u, const Path& v)
    {
        const std::size_t lu = u.length(), lv = v.length();
        for (std::size_t k = 1; k < std::min(lu, lv); ++k) {
            if (!std::equal(u.arrows.end() - static_cast<std::ptrdiff_t>(k), u.arrows.end(), v.arrows.begin()))
                continue;
            Path w = u;
            w.arrows.insert(w.arrows.end(), v.arrows.begin() + static_cast<std::ptrdiff_t>(k), v.arrows.end());
            queue_.insert(Overlap{std::move(w), u, v, k});
        }
    }

    const Rule* rule_with_tip(const Path& tip) const
    {
        for (const auto& r : rules_)
            if (r.tip == tip) return &r;
        return nullptr;
    }

    void process_overlaps(std::optional<std::size_t> max_word)
    {
        while (!queue_.empty()) {
            auto it = queue_.begin();
            if (max_word && it->word.length() > *max_word) {
                // Everything left is longer; the set is sorted by word length.
                return;
            }
            const Overlap o = *it;
            queue_.erase(it);
            const Rule* f = rule_with_tip(o.left_tip);
            const Rule* g = rule_with_tip(o.right_tip);
            if (!f || !g) continue;
            const Path a = o.left_tip.subpath(q_, 0, o.left_tip.length() - o.shared);
            const Path c = o.right_tip.subpath(q_, o.shared, o.right_tip.length() - o.shared);
            // f*c - a*g = a*tail(g) - tail(f)*c
            AlgebraElement s = concat(q_, a, g->tail, Path::trivial_at(g->tip.target(q_)));
            s.add(concat(q_, Path::trivial_at(f->tip.source), f->tail, c), -1);
            add(s);
        }
    }

    bool ends_with_tip(const Path& p) const
    {
        for (const auto& r : rules_) {
            const auto& t = r.tip.arrows;
            if (t.size() <= p.arrows.size() &&
                std::equal(t.begin(), t.end(), p.arrows.end() - static_cast<std::ptrdiff_t>(t.size())))
                return true;
        }
        return false;
    }

    std::vector<Path> normal_paths() const
    {
        std::vector<Path> out;
        std::vector<Path> layer;
        for (Vertex v = 1; v <= q_.vertex_count(); ++v) layer.push_back(Path::trivial_at(v));
        out = layer;
        for (std::size_t len = 1; !layer.empty(); ++len) {
            std::vector<Path> next;
            for (const auto& p : layer) {
                const Vertex t = p.target(q_);
                for (int a = 0; a < q_.arrow_count(); ++a) {
                    if (q_.arrow(a).source != t) continue;
                    Path np = p;
                    np.arrows.push_back(a);
                    if (ends_with_tip(np)) continue;
                    if (len >= static_cast<std::size_t>(cap_))
                        throw NotAdmissible(NotAdmissible::Cause::degree_cap,
                                            "normal-form path " + path_name(q_, np) + " of length " +
                                                std::to_string(len) +
                                                " survives: raise the degree cap or the ideal is not admissible");
                    next.push_back(std::move(np));
                }
            }
            std::sort(next.begin(), next.end(), [](const Path& x, const Path& y) { return x.arrows < y.arrows; });
            out.insert(out.end(), next.begin(), next.end());
            layer = std::move(next);
        }
        return out;
    }

    Quiver q_;
    MonomialOrder order_;
    int cap_;
    std::vector<Rule> rules_;
    std::set<Overlap> queue_;
};

/// Completes the ideal generated by `gens` and returns the algebra kQ/I.
inline FiniteDimAlgebra buchberger(const Quiver& q, const std::vector<AlgebraElement>& gens,
                                   std::optional<MonomialOrder> order = {}, int degree_cap = default_degree_cap)
{
    Completion c(q, order ? *order : MonomialOrder::declaration(q), degree_cap);
    return c.run(gens);
}

/// Monomial presentation: a quiver and a set of pairwise incomparable paths.
struct MonomialAlgebraView {
    Quiver quiver;
    std::vector<Path> generators;

    bool in_ideal(const Path& p) const
    {
        for (const auto& g : generators)
            if (find_tip(g, p)) return true;
        return false;
    }
};

inline void sort_paths(std::vector<Path>& paths)
{
    std::sort(paths.begin(), paths.end(), PathKeyLess{});
}

/// Minimal paths of a monomial ideal. Fails when a generator has two or more terms.
inline MonomialAlgebraView canonical_monomial_generators(const FiniteDimAlgebra& a)
{
    std::vector<Path> paths;
    for (const auto& g : a.generators()) {
        if (g.size() != 1)
            throw NotMonomial("generator " + element_name(a.quiver(), g) + " is not a single path");
        paths.push_back(g.terms().begin()->first);
    }
    std::vector<Path> minimal;
    for (std::size_t i = 0; i < paths.size(); ++i) {
        bool keep = true;
        for (std::size_t j = 0; j < paths.size() && keep; ++j) {
            if (i == j) continue;
            const bool sub = paths[j].length() < paths[i].length() ? find_tip(paths[j], paths[i]).has_value()
                                                                   : paths[j] == paths[i] && j < i;
            if (sub) keep = false;
        }
        if (keep) minimal.push_back(paths[i]);
    }
    sort_paths(minimal);
    return {a.quiver(), std::move(minimal)};
}

/// Associated monomial algebra: the ideal of leading paths of the reduced system.
inline MonomialAlgebraView monomialize(const FiniteDimAlgebra& a)
{
    auto tips = a.tips();
    sort_paths(tips);
    return {a.quiver(), std::move(tips)};
}

/// The monomial view as an algebra in its own right.
inline FiniteDimAlgebra to_algebra(const MonomialAlgebraView& m, int degree_cap = default_degree_cap)
{
    std::vector<AlgebraElement> gens;
    for (const auto& g : m.generators) gens.push_back(AlgebraElement::of(g));
    return buchberger(m.quiver, gens, std::nullopt, degree_cap);
}

/// Paths from position i to position j inside the full subquiver on the first
/// k positions that avoid the monomial ideal (trivial path counted when i = j).
inline long path_count(const MonomialAlgebraView& m, int i, int j, int k, const Ordering& ordering,
                       int degree_cap = default_degree_cap)
{
    if (m.quiver.has_loops()) throw NotApplicable("path counts require a quiver without loops");
    const int n = m.quiver.vertex_count();
    if (i < 1 || i > n || j < 1 || j > n || k < 1 || k > n) throw std::out_of_range("position outside 1..n");
    const Vertex from = ordering.vertex_at(i), to = ordering.vertex_at(j);
    if (i > k || j > k) return 0;
    long count = 0;
    std::vector<Path> layer{Path::trivial_at(from)};
    for (std::size_t len = 0; !layer.empty(); ++len) {
        std::vector<Path> next;
        for (const auto& p : layer) {
            if (p.target(m.quiver) == to) ++count;
            for (int a = 0; a < m.quiver.arrow_count(); ++a) {
                const auto& arr = m.quiver.arrow(a);
                if (arr.source != p.target(m.quiver) || ordering.position_of(arr.target) > k) continue;
                Path np = p;
                np.arrows.push_back(a);
                if (m.in_ideal(np)) continue;
                if (np.length() >= static_cast<std::size_t>(degree_cap))
                    throw NotAdmissible(NotAdmissible::Cause::degree_cap,
                                        "path count does not terminate below the degree cap");
                next.push_back(std::move(np));
            }
        }
        layer = std::move(next);
    }
    return count;
}

/// A^op: reversed arrows and reversed generator paths, same arrow precedence.
inline FiniteDimAlgebra opposite_algebra(const FiniteDimAlgebra& a)
{
    std::vector<AlgebraElement> gens;
    for (const auto& g : a.generators()) {
        AlgebraElement r;
        for (const auto& [p, c] : g.terms()) r.add(reverse_path(a.quiver(), p), c);
        gens.push_back(std::move(r));
    }
    return buchberger(a.quiver().opposite(), gens, a.order(), a.degree_cap());
}

} // namespace quiverhw
