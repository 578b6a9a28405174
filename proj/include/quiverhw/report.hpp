#pragma once

#include "quiverhw/oracle.hpp"

#include <nlohmann/json.hpp>

#include <chrono>
#include <ctime>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace quiverhw {

constexpr const char* version_string = "0.1.0";

using RationalPair = std::pair<Rational, Rational>;  // (x, y)

struct ArrowSummary {
    std::string name;
    Vertex source = 0;
    Vertex target = 0;
    friend bool operator==(const ArrowSummary&, const ArrowSummary&) = default;
};

struct AlgebraSummary {
    int vertices = 0;
    std::vector<ArrowSummary> arrows;
    std::size_t dim = 0;
    std::size_t basis_size = 0;
    std::optional<int> gldim;  // empty when above the cap
    int resolution_cap = default_resolution_cap;
    bool monomial = false;
    friend bool operator==(const AlgebraSummary&, const AlgebraSummary&) = default;
};

struct PositionReport {
    int position = 0;
    Vertex vertex = 0;
    long long standard_top_multiplicity = 0;
    KClass projective_class;
    KClass predicted_class;
    KClass residual;
    bool multiplicity_ok = false;
    bool class_ok = false;
    friend bool operator==(const PositionReport&, const PositionReport&) = default;
};

struct CertificateLayer {
    int projective = 0;
    int position = 0;
    long long multiplicity = 0;
    friend bool operator==(const CertificateLayer&, const CertificateLayer&) = default;
};

struct HNFactorReport {
    KClass cls;
    RationalPair charge;
    friend bool operator==(const HNFactorReport&, const HNFactorReport&) = default;
};

struct HNReport {
    int projective = 0;
    std::vector<HNFactorReport> factors;
    friend bool operator==(const HNReport&, const HNReport&) = default;
};

struct StabilityReport {
    std::vector<RationalPair> charges;  // by position
    std::vector<HNReport> hn_per_projective;
    friend bool operator==(const StabilityReport&, const StabilityReport&) = default;
};

struct OrderingReport {
    std::vector<Vertex> order;
    bool numerical_pass = false;
    std::vector<PositionReport> per_position;
    std::string green_schroll_status;
    std::vector<std::string> offenders;
    std::optional<std::vector<CertificateLayer>> certificate;
    std::optional<StabilityReport> stability;
    friend bool operator==(const OrderingReport&, const OrderingReport&) = default;
};

struct OracleCheck {
    std::string kind;  // "hn_agreement", "standard_stable" or "endomorphisms"
    std::vector<Vertex> order;
    std::string subject;
    bool pass = false;
    std::string detail;
    friend bool operator==(const OracleCheck&, const OracleCheck&) = default;
};

struct OracleReport {
    std::uint32_t field = default_oracle_prime;
    std::vector<OracleCheck> checks;
    std::vector<std::string> warnings;
    friend bool operator==(const OracleReport&, const OracleReport&) = default;

    bool all_pass() const
    {
        return std::all_of(checks.begin(), checks.end(), [](const OracleCheck& c) { return c.pass; });
    }
};

struct ReportMeta {
    std::string version = version_string;
    std::optional<std::string> timestamp;
    friend bool operator==(const ReportMeta&, const ReportMeta&) = default;
};

struct Report {
    AlgebraSummary algebra;
    std::vector<OrderingReport> orderings;
    std::optional<OracleReport> oracle;
    ReportMeta meta;
    friend bool operator==(const Report&, const Report&) = default;
};

inline AlgebraSummary summarize(const FiniteDimAlgebra& a, const GlobalDimension& gd)
{
    AlgebraSummary s;
    s.vertices = a.vertex_count();
    for (const auto& ar : a.quiver().arrows()) s.arrows.push_back({ar.name, ar.source, ar.target});
    s.dim = a.dim();
    s.basis_size = a.basis().size();
    s.gldim = gd.value;
    s.resolution_cap = gd.cap;
    s.monomial = a.monomial();
    return s;
}

inline RationalPair to_pair(const Charge& c) { return {c.x, c.y}; }

inline OrderingReport ordering_report(const Quiver& q, const OrderingVerdict& v)
{
    OrderingReport r;
    r.order = v.ordering.perm();
    r.numerical_pass = v.numerical.pass;
    for (const auto& d : v.numerical.per_position)
        r.per_position.push_back({d.position, d.vertex, d.standard_top_multiplicity, d.projective_class,
                                  d.predicted_class, d.residual, d.multiplicity_ok, d.class_ok});
    r.green_schroll_status = status_name(v.green_schroll.status);
    for (const auto& p : v.green_schroll.offenders) r.offenders.push_back(path_name(q, p));
    if (v.passes()) {
        r.certificate.emplace();
        for (const auto& f : v.filtrations)
            for (const auto& l : f.layers) r.certificate->push_back({f.projective_position, l.position, l.multiplicity});
    }
    if (v.stability) {
        StabilityReport s;
        for (const auto& c : v.stability->by_position) s.charges.push_back(to_pair(c));
        for (std::size_t i = 0; i < v.hn_per_projective.size(); ++i) {
            HNReport h{static_cast<int>(i + 1), {}};
            const auto& hn = v.hn_per_projective[i];
            for (std::size_t k = 0; k < hn.factor_classes.size(); ++k)
                h.factors.push_back({hn.factor_classes[k], to_pair(hn.factor_charges[k])});
            s.hn_per_projective.push_back(std::move(h));
        }
        r.stability = std::move(s);
    }
    return r;
}

inline std::string class_string(const KClass& c)
{
    std::string s = "(";
    for (std::size_t k = 0; k < c.size(); ++k) s += (k ? "," : "") + std::to_string(c[k]);
    return s + ")";
}

inline std::string order_string(const Ordering& o)
{
    std::string s;
    for (std::size_t k = 0; k < o.perm().size(); ++k) s += (k ? "," : "") + std::to_string(o.perm()[k]);
    return s;
}

/// Brute-force checks over F_p for every passing ordering: HN filtrations of
/// the projectives, stability of the standards, and End = k for the stable ones.
inline OracleReport run_oracle(const ModuleFactory& f, const std::vector<OrderingVerdict>& verdicts,
                               std::uint32_t prime = default_oracle_prime,
                               std::size_t cap = default_oracle_dimension_cap)
{
    OracleReport out;
    out.field = prime;
    auto reduce = [&](const RationalRep& m) {
        Reduction r = reduce_representation(m, prime);
        for (auto& w : r.warnings) out.warnings.push_back(std::move(w));
        return r.rep;
    };
    for (const auto& v : verdicts) {
        if (!v.stability) continue;
        const OrderingModules om = ordering_modules(f, v.ordering);
        const StabilityFunction& z = *v.stability;
        for (int i = 1; i <= om.n(); ++i) {
            const HNFiltration brute = hn_bruteforce(reduce(om.projective_at(i)), z, cap);
            const auto& cert = v.hn_per_projective[static_cast<std::size_t>(i - 1)];
            std::string detail;
            for (const auto& c : brute.factor_classes) detail += class_string(c);
            out.checks.push_back({"hn_agreement", v.ordering.perm(), "P" + std::to_string(i), same_hn(brute, cert),
                                  "oracle factors " + detail});
        }
        for (int i = 1; i <= om.n(); ++i) {
            const StabilityVerdict s = is_stable(reduce(om.standard(i)), z, cap);
            out.checks.push_back({"standard_stable", v.ordering.perm(), "Delta" + std::to_string(i), s.stable(),
                                  std::string(stability_name(s.status)) +
                                      (s.witness ? " witness " + class_string(s.witness->dim_vector()) : "")});
            if (s.stable()) {
                const auto ends = hom_basis(om.standard(i), om.standard(i)).size();
                out.checks.push_back({"endomorphisms", v.ordering.perm(), "Delta" + std::to_string(i), ends == 1,
                                      "dim End = " + std::to_string(ends)});
            }
        }
    }
    return out;
}

inline std::string utc_timestamp()
{
    const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline Report make_report(const FiniteDimAlgebra& a, const GlobalDimension& gd,
                          const std::vector<OrderingVerdict>& verdicts, std::optional<OracleReport> oracle,
                          bool deterministic)
{
    Report r;
    r.algebra = summarize(a, gd);
    for (const auto& v : verdicts) r.orderings.push_back(ordering_report(a.quiver(), v));
    r.oracle = std::move(oracle);
    if (!deterministic) r.meta.timestamp = utc_timestamp();
    return r;
}

// JSON ---------------------------------------------------------------------

using nlohmann::json;

inline json rational_json(const Rational& q)
{
    const BigInt num = boost::multiprecision::numerator(q), den = boost::multiprecision::denominator(q);
    const BigInt lim = std::numeric_limits<std::int64_t>::max();
    if (abs(num) > lim || den > lim) throw std::overflow_error("rational " + to_string(q) + " does not fit the schema");
    return json::array({static_cast<std::int64_t>(num), static_cast<std::int64_t>(den)});
}

inline Rational rational_from(const json& j)
{
    return Rational(BigInt(j.at(0).get<std::int64_t>()), BigInt(j.at(1).get<std::int64_t>()));
}

inline json pair_json(const RationalPair& p) { return json::array({rational_json(p.first), rational_json(p.second)}); }
inline RationalPair pair_from(const json& j) { return {rational_from(j.at(0)), rational_from(j.at(1))}; }

inline json to_json(const Report& r)
{
    json alg = {{"vertices", r.algebra.vertices},
                {"arrows", json::array()},
                {"dim", r.algebra.dim},
                {"basis_size", r.algebra.basis_size},
                {"resolution_cap", r.algebra.resolution_cap},
                {"monomial", r.algebra.monomial}};
    for (const auto& a : r.algebra.arrows) alg["arrows"].push_back({{"name", a.name}, {"source", a.source}, {"target", a.target}});
    alg["gldim"] = r.algebra.gldim ? json(*r.algebra.gldim) : json("above_cap");

    json ords = json::array();
    for (const auto& o : r.orderings) {
        json pp = json::array();
        for (const auto& d : o.per_position)
            pp.push_back({{"position", d.position},
                          {"vertex", d.vertex},
                          {"standard_top_multiplicity", d.standard_top_multiplicity},
                          {"projective_class", d.projective_class},
                          {"predicted_class", d.predicted_class},
                          {"residual", d.residual},
                          {"multiplicity_ok", d.multiplicity_ok},
                          {"class_ok", d.class_ok}});
        json jo = {{"order", o.order},
                   {"numerical", {{"pass", o.numerical_pass}, {"per_position", pp}}},
                   {"green_schroll", {{"status", o.green_schroll_status}, {"offenders", o.offenders}}}};
        if (o.certificate) {
            json c = json::array();
            for (const auto& l : *o.certificate)
                c.push_back({{"projective", l.projective}, {"position", l.position}, {"multiplicity", l.multiplicity}});
            jo["certificate"] = c;
        } else {
            jo["certificate"] = nullptr;
        }
        if (o.stability) {
            json ch = json::array(), hns = json::array();
            for (const auto& c : o.stability->charges) ch.push_back(pair_json(c));
            for (const auto& h : o.stability->hn_per_projective) {
                json fs = json::array();
                for (const auto& f : h.factors) fs.push_back({{"class", f.cls}, {"charge", pair_json(f.charge)}});
                hns.push_back({{"projective", h.projective}, {"factors", fs}});
            }
            jo["stability"] = {{"charges", ch}, {"hn_per_projective", hns}};
        } else {
            jo["stability"] = nullptr;
        }
        ords.push_back(std::move(jo));
    }

    json orc = nullptr;
    if (r.oracle) {
        json checks = json::array();
        for (const auto& c : r.oracle->checks)
            checks.push_back({{"kind", c.kind}, {"order", c.order}, {"subject", c.subject}, {"pass", c.pass}, {"detail", c.detail}});
        orc = {{"field", r.oracle->field}, {"checks", checks}, {"warnings", r.oracle->warnings}};
    }

    json meta = {{"version", r.meta.version}};
    if (r.meta.timestamp) meta["timestamp"] = *r.meta.timestamp;
    return {{"algebra", alg}, {"orderings", ords}, {"oracle", orc}, {"meta", meta}};
}

inline Report report_from_json(const json& j)
{
    Report r;
    const json& alg = j.at("algebra");
    r.algebra.vertices = alg.at("vertices").get<int>();
    for (const auto& a : alg.at("arrows"))
        r.algebra.arrows.push_back({a.at("name").get<std::string>(), a.at("source").get<Vertex>(), a.at("target").get<Vertex>()});
    r.algebra.dim = alg.at("dim").get<std::size_t>();
    r.algebra.basis_size = alg.at("basis_size").get<std::size_t>();
    r.algebra.resolution_cap = alg.at("resolution_cap").get<int>();
    r.algebra.monomial = alg.at("monomial").get<bool>();
    if (alg.at("gldim").is_number()) r.algebra.gldim = alg.at("gldim").get<int>();

    for (const auto& jo : j.at("orderings")) {
        OrderingReport o;
        o.order = jo.at("order").get<std::vector<Vertex>>();
        o.numerical_pass = jo.at("numerical").at("pass").get<bool>();
        for (const auto& d : jo.at("numerical").at("per_position"))
            o.per_position.push_back({d.at("position").get<int>(), d.at("vertex").get<Vertex>(),
                                      d.at("standard_top_multiplicity").get<long long>(),
                                      d.at("projective_class").get<KClass>(), d.at("predicted_class").get<KClass>(),
                                      d.at("residual").get<KClass>(), d.at("multiplicity_ok").get<bool>(),
                                      d.at("class_ok").get<bool>()});
        o.green_schroll_status = jo.at("green_schroll").at("status").get<std::string>();
        o.offenders = jo.at("green_schroll").at("offenders").get<std::vector<std::string>>();
        if (!jo.at("certificate").is_null()) {
            o.certificate.emplace();
            for (const auto& l : jo.at("certificate"))
                o.certificate->push_back({l.at("projective").get<int>(), l.at("position").get<int>(),
                                          l.at("multiplicity").get<long long>()});
        }
        if (!jo.at("stability").is_null()) {
            StabilityReport s;
            for (const auto& c : jo.at("stability").at("charges")) s.charges.push_back(pair_from(c));
            for (const auto& h : jo.at("stability").at("hn_per_projective")) {
                HNReport hr{h.at("projective").get<int>(), {}};
                for (const auto& f : h.at("factors")) hr.factors.push_back({f.at("class").get<KClass>(), pair_from(f.at("charge"))});
                s.hn_per_projective.push_back(std::move(hr));
            }
            o.stability = std::move(s);
        }
        r.orderings.push_back(std::move(o));
    }

    if (!j.at("oracle").is_null()) {
        OracleReport orc;
        orc.field = j.at("oracle").at("field").get<std::uint32_t>();
        for (const auto& c : j.at("oracle").at("checks"))
            orc.checks.push_back({c.at("kind").get<std::string>(), c.at("order").get<std::vector<Vertex>>(),
                                  c.at("subject").get<std::string>(), c.at("pass").get<bool>(),
                                  c.at("detail").get<std::string>()});
        orc.warnings = j.at("oracle").at("warnings").get<std::vector<std::string>>();
        r.oracle = std::move(orc);
    }
    r.meta.version = j.at("meta").at("version").get<std::string>();
    if (j.at("meta").contains("timestamp")) r.meta.timestamp = j.at("meta").at("timestamp").get<std::string>();
    return r;
}

/// Structural schema check; returns the first problem or an empty string.
inline std::string validate_report_json(const json& j)
{
    auto need = [](const json& o, const char* key, auto pred, const std::string& where) -> std::string {
        if (!o.is_object() || !o.contains(key)) return where + ": missing '" + key + "'";
        if (!pred(o.at(key))) return where + ": bad type for '" + key + "'";
        return {};
    };
    auto is_arr = [](const json& x) { return x.is_array(); };
    auto is_obj = [](const json& x) { return x.is_object(); };
    auto is_int = [](const json& x) { return x.is_number_integer(); };
    auto is_bool = [](const json& x) { return x.is_boolean(); };
    auto is_str = [](const json& x) { return x.is_string(); };
    std::string e;
    for (const char* k : {"algebra", "orderings", "oracle", "meta"})
        if (!j.contains(k)) return std::string("missing top-level '") + k + "'";
    const json& a = j.at("algebra");
    if (!(e = need(a, "vertices", is_int, "algebra")).empty()) return e;
    if (!(e = need(a, "arrows", is_arr, "algebra")).empty()) return e;
    if (!(e = need(a, "dim", is_int, "algebra")).empty()) return e;
    if (!(e = need(a, "monomial", is_bool, "algebra")).empty()) return e;
    if (!(e = need(a, "gldim", [](const json& x) { return x.is_number_integer() || x == "above_cap"; }, "algebra")).empty())
        return e;
    if (!j.at("orderings").is_array()) return "orderings is not an array";
    for (const auto& o : j.at("orderings")) {
        if (!(e = need(o, "order", is_arr, "ordering")).empty()) return e;
        if (!(e = need(o, "numerical", is_obj, "ordering")).empty()) return e;
        if (!(e = need(o.at("numerical"), "pass", is_bool, "numerical")).empty()) return e;
        if (!(e = need(o.at("numerical"), "per_position", is_arr, "numerical")).empty()) return e;
        if (!(e = need(o, "green_schroll", is_obj, "ordering")).empty()) return e;
        if (!(e = need(o.at("green_schroll"), "status", is_str, "green_schroll")).empty()) return e;
        if (!(e = need(o.at("green_schroll"), "offenders", is_arr, "green_schroll")).empty()) return e;
        if (!(e = need(o, "certificate", [](const json& x) { return x.is_null() || x.is_array(); }, "ordering")).empty())
            return e;
        if (o.at("certificate").is_array())
            for (const auto& l : o.at("certificate")) {
                if (!(e = need(l, "position", is_int, "certificate")).empty()) return e;
                if (!(e = need(l, "multiplicity", is_int, "certificate")).empty()) return e;
            }
        if (!(e = need(o, "stability", [](const json& x) { return x.is_null() || x.is_object(); }, "ordering")).empty())
            return e;
        if (o.at("stability").is_object()) {
            const json& s = o.at("stability");
            if (!(e = need(s, "charges", is_arr, "stability")).empty()) return e;
            for (const auto& c : s.at("charges"))
                if (!(c.is_array() && c.size() == 2 && c[0].is_array() && c[0].size() == 2 && c[1].is_array() &&
                      c[1].size() == 2))
                    return "stability: charge is not [[num,den],[num,den]]";
            if (!(e = need(s, "hn_per_projective", is_arr, "stability")).empty()) return e;
        }
    }
    const json& orc = j.at("oracle");
    if (!orc.is_null()) {
        if (!(e = need(orc, "field", is_int, "oracle")).empty()) return e;
        if (!(e = need(orc, "checks", is_arr, "oracle")).empty()) return e;
    }
    if (!(e = need(j.at("meta"), "version", is_str, "meta")).empty()) return e;
    return {};
}

} // namespace quiverhw
