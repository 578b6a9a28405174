#pragma once

#include "quiverhw/algebra.hpp"
#include "quiverhw/errors.hpp"

#include <cctype>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace quiverhw {

struct SourceLocation {
    int line = 1;
    int column = 1;

    std::string str() const { return std::to_string(line) + ":" + std::to_string(column); }
    friend bool operator==(const SourceLocation&, const SourceLocation&) = default;
};

struct ParseError : Error {
    ParseError(const SourceLocation& at, const std::string& msg)
        : Error(at.str() + ": " + msg), where(at), message(msg) {}
    SourceLocation where;
    std::string message;
};

struct ArrowDecl {
    std::string name;
    Vertex source = 0;
    Vertex target = 0;
    SourceLocation at;
};

struct TermSpec {
    Rational coefficient = 1;
    std::vector<std::string> arrows;
    SourceLocation at;
};

struct RelationSpec {
    std::vector<TermSpec> terms;
    SourceLocation at;
};

/// A parsed .qvr file. Locations are not part of equality.
struct SpecFile {
    int vertices = 0;
    std::vector<ArrowDecl> arrows;
    std::vector<RelationSpec> relations;
    std::vector<std::string> notes;  // informational diagnostics

    Quiver quiver() const
    {
        std::vector<Arrow> as;
        for (const auto& a : arrows) as.push_back({a.name, a.source, a.target});
        return Quiver(vertices, std::move(as));
    }

    std::vector<AlgebraElement> relation_elements() const
    {
        const Quiver q = quiver();
        std::vector<AlgebraElement> out;
        for (const auto& r : relations) {
            AlgebraElement x;
            for (const auto& t : r.terms) {
                Path p{q.arrow(*q.find_arrow(t.arrows.front())).source, {}};
                for (const auto& name : t.arrows) p.arrows.push_back(*q.find_arrow(name));
                x.add(p, t.coefficient);
            }
            out.push_back(std::move(x));
        }
        return out;
    }

    friend bool operator==(const SpecFile& a, const SpecFile& b)
    {
        if (a.vertices != b.vertices || a.arrows.size() != b.arrows.size() || a.relations.size() != b.relations.size())
            return false;
        for (std::size_t k = 0; k < a.arrows.size(); ++k)
            if (a.arrows[k].name != b.arrows[k].name || a.arrows[k].source != b.arrows[k].source ||
                a.arrows[k].target != b.arrows[k].target)
                return false;
        for (std::size_t k = 0; k < a.relations.size(); ++k) {
            const auto& x = a.relations[k].terms;
            const auto& y = b.relations[k].terms;
            if (x.size() != y.size()) return false;
            for (std::size_t t = 0; t < x.size(); ++t)
                if (x[t].coefficient != y[t].coefficient || x[t].arrows != y[t].arrows) return false;
        }
        return true;
    }
};

namespace detail {

enum class Tok { name, integer, punct, arrow_op, end };

struct Token {
    Tok kind = Tok::end;
    std::string text;
    SourceLocation at;
};

class Lexer {
public:
    explicit Lexer(const std::string& text)
        : s_(text) {}

    std::vector<Token> run()
    {
        std::vector<Token> out;
        while (true) {
            skip();
            Token t;
            t.at = loc_;
            if (i_ >= s_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = s_[i_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.kind = Tok::name;
                while (i_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[i_])) || s_[i_] == '_'))
                    t.text += take();
            } else if (std::isdigit(static_cast<unsigned char>(c))) {
                t.kind = Tok::integer;
                while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) t.text += take();
            } else if (c == '-' && i_ + 1 < s_.size() && s_[i_ + 1] == '>') {
                t.kind = Tok::arrow_op;
                t.text = "->";
                take();
                take();
            } else if (std::string("{}:;,*+-/").find(c) != std::string::npos) {
                t.kind = Tok::punct;
                t.text = std::string(1, take());
            } else {
                throw ParseError(loc_, std::string("unexpected character '") + c + "'");
            }
            out.push_back(std::move(t));
        }
    }

private:
    char take()
    {
        const char c = s_[i_++];
        if (c == '\n') {
            ++loc_.line;
            loc_.column = 1;
        } else {
            ++loc_.column;
        }
        return c;
    }

    void skip()
    {
        while (i_ < s_.size()) {
            if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
                take();
            } else if (s_[i_] == '#') {
                while (i_ < s_.size() && s_[i_] != '\n') take();
            } else {
                break;
            }
        }
    }

    const std::string& s_;
    std::size_t i_ = 0;
    SourceLocation loc_;
};

class Parser {
public:
    explicit Parser(std::vector<Token> toks)
        : t_(std::move(toks)) {}

    SpecFile file()
    {
        SpecFile f;
        quiver_block(f);
        if (peek_is(Tok::name, "relations")) relations_block(f);
        if (cur().kind != Tok::end) fail("expected end of file, found '" + cur().text + "'");
        return f;
    }

private:
    const Token& cur() const { return t_[k_]; }
    bool peek_is(Tok kind, const std::string& text) const { return cur().kind == kind && cur().text == text; }

    [[noreturn]] void fail(const std::string& msg) const { throw ParseError(cur().at, msg); }

    Token expect(Tok kind, const std::string& text = {})
    {
        if (cur().kind != kind || (!text.empty() && cur().text != text)) {
            const std::string want = !text.empty() ? "'" + text + "'" : kind == Tok::name ? "a name" : "an integer";
            fail("expected " + want + ", found " + (cur().kind == Tok::end ? "end of file" : "'" + cur().text + "'"));
        }
        return t_[k_++];
    }

    int integer()
    {
        const Token t = expect(Tok::integer);
        if (t.text.size() > 9) throw ParseError(t.at, "integer " + t.text + " is too large");
        return std::stoi(t.text);
    }

    void quiver_block(SpecFile& f)
    {
        expect(Tok::name, "quiver");
        expect(Tok::punct, "{");
        expect(Tok::name, "vertices");
        expect(Tok::punct, ":");
        const auto at = cur().at;
        f.vertices = integer();
        if (f.vertices < 1) throw ParseError(at, "a quiver needs at least one vertex");
        expect(Tok::punct, ";");
        if (peek_is(Tok::name, "arrows")) {
            ++k_;
            expect(Tok::punct, ":");
            arrow(f);
            while (peek_is(Tok::punct, ",")) {
                ++k_;
                arrow(f);
            }
            expect(Tok::punct, ";");
        }
        expect(Tok::punct, "}");
    }

    void arrow(SpecFile& f)
    {
        const Token name = expect(Tok::name);
        for (const auto& a : f.arrows)
            if (a.name == name.text) throw ParseError(name.at, "arrow '" + name.text + "' declared twice");
        expect(Tok::punct, ":");
        const auto sat = cur().at;
        const int s = integer();
        expect(Tok::arrow_op);
        const auto tat = cur().at;
        const int t = integer();
        for (auto [v, at] : {std::pair{s, sat}, std::pair{t, tat}})
            if (v < 1 || v > f.vertices)
                throw ParseError(at, "vertex " + std::to_string(v) + " is out of range 1.." + std::to_string(f.vertices));
        f.arrows.push_back({name.text, s, t, name.at});
    }

    void relations_block(SpecFile& f)
    {
        expect(Tok::name, "relations");
        expect(Tok::punct, "{");
        while (!peek_is(Tok::punct, "}")) {
            if (peek_is(Tok::punct, ";")) fail("empty relation");
            if (cur().kind == Tok::end) fail("expected '}', found end of file");
            f.relations.push_back(relation(f));
            expect(Tok::punct, ";");
        }
        expect(Tok::punct, "}");
    }

    RelationSpec relation(const SpecFile& f)
    {
        RelationSpec r;
        r.at = cur().at;
        Rational sign = 1;
        if (peek_is(Tok::punct, "-")) {
            ++k_;
            sign = -1;
        }
        r.terms.push_back(term(f, sign));
        while (peek_is(Tok::punct, "+") || peek_is(Tok::punct, "-")) {
            sign = cur().text == "-" ? -1 : 1;
            ++k_;
            r.terms.push_back(term(f, sign));
        }
        check_relation(f, r);
        return r;
    }

    TermSpec term(const SpecFile& f, const Rational& sign)
    {
        TermSpec t;
        t.at = cur().at;
        t.coefficient = sign;
        if (cur().kind == Tok::integer) {
            const auto at = cur().at;
            Rational c = integer();
            if (peek_is(Tok::punct, "/")) {
                ++k_;
                const auto dat = cur().at;
                const int d = integer();
                if (d == 0) throw ParseError(dat, "zero denominator");
                c /= d;
            }
            if (c == 0) throw ParseError(at, "zero coefficient");
            t.coefficient *= c;
            expect(Tok::punct, "*");
        }
        t.arrows.push_back(arrow_ref(f));
        while (peek_is(Tok::punct, "*")) {
            ++k_;
            t.arrows.push_back(arrow_ref(f));
        }
        return t;
    }

    std::string arrow_ref(const SpecFile& f)
    {
        const Token name = expect(Tok::name);
        const ArrowDecl* prev = last_ref_;
        const ArrowDecl* found = nullptr;
        for (const auto& a : f.arrows)
            if (a.name == name.text) found = &a;
        if (!found) throw ParseError(name.at, "unknown arrow '" + name.text + "'");
        if (prev && !at_term_start_ && prev->target != found->source)
            throw ParseError(name.at, "arrow '" + name.text + "' starts at " + std::to_string(found->source) +
                                          " but '" + prev->name + "' ends at " + std::to_string(prev->target));
        last_ref_ = found;
        at_term_start_ = false;
        if (!peek_is(Tok::punct, "*")) at_term_start_ = true;
        return name.text;
    }

    static void check_relation(const SpecFile& f, const RelationSpec& r)
    {
        const Quiver q = f.quiver();
        AlgebraElement x;
        for (const auto& t : r.terms) {
            Path p{q.arrow(*q.find_arrow(t.arrows.front())).source, {}};
            for (const auto& name : t.arrows) p.arrows.push_back(*q.find_arrow(name));
            x.add(p, t.coefficient);
        }
        if (x.terms().empty()) throw ParseError(r.at, "relation is zero after collecting terms");
    }

    std::vector<Token> t_;
    std::size_t k_ = 0;
    const ArrowDecl* last_ref_ = nullptr;
    bool at_term_start_ = true;
};

} // namespace detail

inline SpecFile parse_spec(const std::string& text)
{
    SpecFile f = detail::Parser(detail::Lexer(text).run()).file();
    const Quiver q = f.quiver();
    const auto elems = f.relation_elements();
    for (std::size_t k = 0; k < elems.size(); ++k)
        if (!is_uniform(q, elems[k]))
            f.notes.push_back(f.relations[k].at.str() + ": relation " + std::to_string(k + 1) +
                              " is not uniform; split into " + std::to_string(uniformize(q, {elems[k]}).size()) +
                              " uniform parts");
    return f;
}

inline std::string print_spec(const SpecFile& f)
{
    std::ostringstream os;
    os << "quiver {\n  vertices: " << f.vertices << ";\n";
    if (!f.arrows.empty()) {
        os << "  arrows: ";
        for (std::size_t k = 0; k < f.arrows.size(); ++k)
            os << (k ? ", " : "") << f.arrows[k].name << ": " << f.arrows[k].source << "->" << f.arrows[k].target;
        os << ";\n";
    }
    os << "}\n";
    if (f.relations.empty()) return os.str();
    os << "relations {\n";
    for (const auto& r : f.relations) {
        os << "  ";
        for (std::size_t k = 0; k < r.terms.size(); ++k) {
            const auto& t = r.terms[k];
            Rational c = t.coefficient;
            if (k == 0 && c < 0) {
                os << "-";
                c = -c;
            } else if (k > 0) {
                os << (c < 0 ? " - " : " + ");
                if (c < 0) c = -c;
            }
            if (c != 1) os << to_string(c) << "*";
            for (std::size_t a = 0; a < t.arrows.size(); ++a) os << (a ? "*" : "") << t.arrows[a];
        }
        os << ";\n";
    }
    os << "}\n";
    return os.str();
}

} // namespace quiverhw
