#pragma once

#include "quiverhw/report.hpp"
#include "quiverhw/spec_parser.hpp"
#include "quiverhw/svg.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace quiverhw::cli {

enum ExitCode { ok = 0, failure = 1, parse_error = 2, not_admissible = 3, cap_exceeded = 4 };

struct Flags {
    std::string file;
    std::string order;
    bool all_orders = false;
    int max_orders = default_max_order_vertices;
    int degree_cap = default_degree_cap;
    int resolution_cap = default_resolution_cap;
    std::uint32_t oracle_field = default_oracle_prime;
    bool oracle = false;
    std::string svg;
    std::string json;
    bool deterministic = false;
};

struct UsageError : Error {
    using Error::Error;
};

inline int env_degree_cap()
{
    if (const char* s = std::getenv("QUIVERHW_DEGREE_CAP")) {
        try {
            const int v = std::stoi(s);
            if (v >= 2) return v;
        } catch (const std::exception&) {
        }
        throw UsageError(std::string("QUIVERHW_DEGREE_CAP must be an integer >= 2, got '") + s + "'");
    }
    return default_degree_cap;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw UsageError("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_file(const std::string& path, const std::string& text, std::ostream& out)
{
    if (path == "-") {
        out << text;
        return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw UsageError("cannot write " + path);
    f << text;
}

inline Ordering parse_order(const std::string& text, int n)
{
    std::vector<Vertex> perm;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            perm.push_back(std::stoi(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw UsageError("--order expects comma-separated vertices, got '" + text + "'");
        }
    }
    std::vector<Vertex> sorted = perm;
    std::sort(sorted.begin(), sorted.end());
    if (sorted != Ordering::natural(n).perm())
        throw UsageError("--order must list each of the " + std::to_string(n) + " vertices exactly once");
    return Ordering(perm);
}

/// Loaded input: the parsed file and its completed algebra.
struct Session {
    SpecFile spec;
    FiniteDimAlgebra algebra;
};

inline Session load(const Flags& f, std::ostream& err)
{
    SpecFile spec = parse_spec(read_file(f.file));
    for (const auto& note : spec.notes) err << f.file << ":" << note << "\n";
    FiniteDimAlgebra a = buchberger(spec.quiver(), spec.relation_elements(), std::nullopt, f.degree_cap);
    return {std::move(spec), std::move(a)};
}

inline Ordering chosen_order(const Flags& f, const FiniteDimAlgebra& a)
{
    return f.order.empty() ? Ordering::natural(a.vertex_count()) : parse_order(f.order, a.vertex_count());
}

inline std::vector<OrderingVerdict> verdicts_for(const Flags& f, const FiniteDimAlgebra& a, const ModuleFactory& mf,
                                                 const GlobalDimension& gd)
{
    if (f.all_orders) {
        if (!f.order.empty()) throw UsageError("--order and --all-orders are exclusive");
        return search_orderings(a, SearchMode::all, f.max_orders, f.resolution_cap);
    }
    std::optional<MonomialAlgebraView> mono;
    if (a.monomial() && !a.quiver().has_loops()) mono = canonical_monomial_generators(a);
    return {evaluate_ordering(mf, chosen_order(f, a), gd, mono)};
}

inline void print_verdict(std::ostream& out, const Quiver& q, const OrderingVerdict& v)
{
    out << "order " << order_string(v.ordering) << ": "
        << (v.passes() ? "highest weight" : "not highest weight") << "\n";
    for (const auto& d : v.numerical.per_position) {
        out << "  position " << d.position << " (vertex " << d.vertex << "): [Δ:S] = " << d.standard_top_multiplicity
            << ", [P] = " << class_string(d.projective_class) << ", predicted " << class_string(d.predicted_class)
            << ", residual " << class_string(d.residual) << "\n";
    }
    out << "  green-schroll: " << status_name(v.green_schroll.status);
    for (const auto& p : v.green_schroll.offenders) out << " " << path_name(q, p);
    out << "\n";
    for (const auto& f : v.filtrations) {
        out << "  P" << f.projective_position << ":";
        if (f.failure) {
            out << " filtration breaks at layer " << f.failure->position << ", trace "
                << class_string(f.failure->trace_class) << " vs expected " << class_string(f.failure->expected_class)
                << "\n";
            continue;
        }
        for (const auto& l : f.layers) out << " Δ" << l.position << "^" << l.multiplicity;
        out << "\n";
    }
    if (v.stability) {
        out << "  charges:";
        for (std::size_t i = 0; i < v.stability->by_position.size(); ++i) {
            const auto& c = v.stability->by_position[i];
            out << " Z(S" << i + 1 << ") = (" << to_string(c.x) << "," << to_string(c.y) << ")";
        }
        out << "\n";
        for (std::size_t i = 0; i < v.hn_per_projective.size(); ++i) {
            out << "  HN(P" << i + 1 << "):";
            for (const auto& c : v.hn_per_projective[i].factor_classes) out << " " << class_string(c);
            out << "\n";
        }
    }
}

inline void print_summary(std::ostream& out, const FiniteDimAlgebra& a, const GlobalDimension& gd)
{
    out << "algebra: " << a.vertex_count() << " vertices, " << a.quiver().arrow_count() << " arrows, dim " << a.dim()
        << ", gldim " << gd.str() << (a.monomial() ? ", monomial" : "") << "\n";
}

inline Report build_report(const Flags& f, const FiniteDimAlgebra& a, const ModuleFactory& mf,
                           const GlobalDimension& gd, const std::vector<OrderingVerdict>& verdicts, std::ostream& err)
{
    std::optional<OracleReport> orc;
    if (f.oracle) {
        orc = run_oracle(mf, verdicts, f.oracle_field);
        for (const auto& w : orc->warnings) err << "oracle warning: " << w << "\n";
    }
    return make_report(a, gd, verdicts, std::move(orc), f.deterministic);
}

inline void maybe_svg(const Flags& f, const ModuleFactory& mf, const std::vector<OrderingVerdict>& verdicts,
                      std::ostream& out, std::ostream& err)
{
    if (f.svg.empty()) return;
    auto it = std::find_if(verdicts.begin(), verdicts.end(), [](const OrderingVerdict& v) { return v.stability.has_value(); });
    if (it == verdicts.end()) {
        err << "no stability function to draw: no evaluated ordering passes\n";
        return;
    }
    const OrderingModules om = ordering_modules(mf, it->ordering);
    SvgOptions opt;
    opt.prime = f.oracle_field;
    write_file(f.svg, emit_svg(*it->stability, figure_modules(om, mf), opt), out);
}

inline int cmd_check(const Flags& f, bool json_to_stdout, std::ostream& out, std::ostream& err)
{
    const Session s = load(f, err);
    const ModuleFactory mf(s.algebra);
    const GlobalDimension gd = global_dimension(s.algebra, f.resolution_cap);
    const auto verdicts = verdicts_for(f, s.algebra, mf, gd);
    const Report r = build_report(f, s.algebra, mf, gd, verdicts, err);
    const std::string js = to_json(r).dump(2) + "\n";
    if (json_to_stdout && f.json.empty()) {
        out << js;
    } else {
        print_summary(out, s.algebra, gd);
        for (const auto& v : verdicts) print_verdict(out, s.algebra.quiver(), v);
        if (r.oracle) {
            out << "oracle over F_" << r.oracle->field << ": " << r.oracle->checks.size() << " checks, "
                << (r.oracle->all_pass() ? "all agree" : "DISAGREEMENT") << "\n";
            for (const auto& c : r.oracle->checks)
                if (!c.pass) out << "  " << c.kind << " " << c.subject << ": " << c.detail << "\n";
        }
    }
    if (!f.json.empty()) write_file(f.json, js, out);
    maybe_svg(f, mf, verdicts, out, err);
    return ok;
}

inline int cmd_basis(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Session s = load(f, err);
    const Quiver& q = s.algebra.quiver();
    out << "dim " << s.algebra.dim() << "\n";
    for (Vertex i = 1; i <= q.vertex_count(); ++i)
        for (Vertex j = 1; j <= q.vertex_count(); ++j) {
            const auto ps = s.algebra.paths_between(i, j);
            if (ps.empty()) continue;
            out << i << "->" << j << ":";
            for (const auto& p : ps) out << " " << path_name(q, p);
            out << "\n";
        }
    return ok;
}

inline int cmd_modules(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Session s = load(f, err);
    const ModuleFactory mf(s.algebra);
    const Ordering ord = chosen_order(f, s.algebra);
    out << "order " << order_string(ord) << "\n";
    out << "position vertex P I Δ ∇\n";
    for (int i = 1; i <= ord.size(); ++i) {
        const Vertex v = ord.vertex_at(i);
        out << i << " " << v << " " << class_string(mf.projective(v).dim_vector()) << " "
            << class_string(mf.injective(v).dim_vector()) << " " << class_string(mf.standard(i, ord).dim_vector()) << " "
            << class_string(mf.costandard(i, ord).dim_vector()) << "\n";
    }
    return ok;
}

inline int cmd_groebner(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Session s = load(f, err);
    const Quiver& q = s.algebra.quiver();
    for (const auto& r : s.algebra.rules())
        out << path_name(q, r.tip) << " -> " << (r.tail.is_zero() ? "0" : element_name(q, r.tail)) << "\n";
    return ok;
}

inline int cmd_monomialize(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Session s = load(f, err);
    const MonomialAlgebraView m = monomialize(s.algebra);
    for (const auto& g : m.generators) out << path_name(m.quiver, g) << "\n";
    return ok;
}

inline int cmd_stability(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Session s = load(f, err);
    const ModuleFactory mf(s.algebra);
    const OrderingModules om = ordering_modules(mf, chosen_order(f, s.algebra));
    const StabilityFunction z = build_stability(om);
    out << "order " << order_string(om.ordering) << "\n";
    for (int i = 1; i <= om.n(); ++i) {
        const auto& c = z.by_position[static_cast<std::size_t>(i - 1)];
        const Charge d = z(om.standard(i).dim_vector());
        out << "Z(S" << i << ") = (" << to_string(c.x) << "," << to_string(c.y) << ") mass " << to_string(z.masses[static_cast<std::size_t>(i - 1)])
            << "  Z(Δ" << i << ") = (" << to_string(d.x) << "," << to_string(d.y) << ")\n";
    }
    for (int i = 2; i <= om.n(); ++i)
        out << "φ(Δ" << i - 1 << ") < φ(Δ" << i << "): "
            << (phase_less(z, om.standard(i - 1).dim_vector(), om.standard(i).dim_vector()) ? "yes" : "no") << "\n";
    const NumericalResult num = numerical_criterion(om);
    for (int i = 1; i <= om.n(); ++i) {
        const auto d = delta_filtration(om, i);
        out << "HN(P" << i << "):";
        if (!num.pass || !d.ok()) {
            const HNFiltration hn = hn_bruteforce(reduce_representation(om.projective_at(i), f.oracle_field).rep, z);
            for (const auto& c : hn.factor_classes) out << " " << class_string(c);
            out << " (oracle over F_" << f.oracle_field << ")\n";
            continue;
        }
        for (const auto& c : hn_certificate(d, z).factor_classes) out << " " << class_string(c);
        out << "\n";
    }
    if (!f.svg.empty()) {
        SvgOptions opt;
        opt.prime = f.oracle_field;
        write_file(f.svg, emit_svg(z, figure_modules(om, mf), opt), out);
    }
    return ok;
}

inline int cmd_gldim(const Flags& f, std::ostream& out, std::ostream& err)
{
    const Session s = load(f, err);
    out << global_dimension(s.algebra, f.resolution_cap).str() << "\n";
    return ok;
}

/// Runs the command line `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    Flags f;
    CLI::App app{"Decide whether modules over a quiver algebra form a highest weight category", "quiverhw"};
    app.require_subcommand(1);
    app.set_version_flag("--version", version_string);

    auto common = [&](CLI::App* sub) {
        sub->add_option("file", f.file, "Quiver specification (.qvr)")->required();
        sub->add_option("--degree-cap", f.degree_cap, "Longest path length tried before declaring the ideal non-admissible")
            ->check(CLI::Range(2, 1000));
        sub->add_option("--resolution-cap", f.resolution_cap, "Longest projective resolution computed")
            ->check(CLI::Range(1, 1000));
    };
    auto ordering = [&](CLI::App* sub) {
        sub->add_option("--order", f.order, "Ordering of the vertices, e.g. 2,1,3");
    };
    auto analysis = [&](CLI::App* sub) {
        ordering(sub);
        sub->add_flag("--all-orders", f.all_orders, "Evaluate every ordering");
        sub->add_option("--max-orders", f.max_orders, "Largest vertex count for --all-orders")->check(CLI::Range(1, 12));
        sub->add_option("--oracle-field", f.oracle_field, "Prime for the brute-force oracle")
            ->check([](const std::string& s) {
                try {
                    return is_prime(static_cast<std::uint32_t>(std::stoul(s))) ? std::string() : s + " is not prime";
                } catch (const std::exception&) {
                    return s + " is not a number";
                }
            });
        sub->add_flag("--oracle", f.oracle, "Cross-check certificates by exhaustive search over F_p");
        sub->add_option("--svg", f.svg, "Write a charge diagram");
        sub->add_option("--json", f.json, "Write the JSON report ('-' for stdout)");
        sub->add_flag("--deterministic", f.deterministic, "Omit the timestamp");
    };

    auto* check = app.add_subcommand("check", "Evaluate the criteria and print a summary");
    common(check);
    analysis(check);
    auto* report = app.add_subcommand("report", "Evaluate the criteria and print the JSON report");
    common(report);
    analysis(report);
    auto* basis = app.add_subcommand("basis", "Print the normal-form path basis");
    common(basis);
    auto* modules = app.add_subcommand("modules", "Print dimension vectors of P, I, Δ, ∇");
    common(modules);
    ordering(modules);
    auto* groebner = app.add_subcommand("groebner", "Print the reduced Gröbner basis");
    common(groebner);
    auto* mono = app.add_subcommand("monomialize", "Print generators of the associated monomial ideal");
    common(mono);
    auto* stab = app.add_subcommand("stability", "Print the constructed stability function and HN filtrations");
    common(stab);
    ordering(stab);
    stab->add_option("--svg", f.svg, "Write a charge diagram");
    stab->add_option("--oracle-field", f.oracle_field, "Prime for the brute-force oracle");
    auto* gldim = app.add_subcommand("gldim", "Print the global dimension");
    common(gldim);

    try {
        f.degree_cap = env_degree_cap();
        std::vector<std::string> argv{"quiverhw"};
        argv.insert(argv.end(), args.begin(), args.end());
        std::vector<const char*> cargv;
        for (const auto& a : argv) cargv.push_back(a.c_str());
        try {
            app.parse(static_cast<int>(cargv.size()), cargv.data());
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out, err);
            return code == 0 ? ok : parse_error;
        }
        if (*check) return cmd_check(f, false, out, err);
        if (*report) return cmd_check(f, true, out, err);
        if (*basis) return cmd_basis(f, out, err);
        if (*modules) return cmd_modules(f, out, err);
        if (*groebner) return cmd_groebner(f, out, err);
        if (*mono) return cmd_monomialize(f, out, err);
        if (*stab) return cmd_stability(f, out, err);
        if (*gldim) return cmd_gldim(f, out, err);
    } catch (const ParseError& e) {
        err << f.file << ":" << e.what() << "\n";
        return parse_error;
    } catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return parse_error;
    } catch (const NotAdmissible& e) {
        err << "not admissible: " << e.what() << "\n";
        return not_admissible;
    } catch (const CapExceeded& e) {
        err << "cap exceeded: " << e.what() << "\n";
        return cap_exceeded;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return failure;
    }
    return failure;
}

} // namespace quiverhw::cli
