#pragma once

#include "quiverhw/oracle.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

namespace quiverhw {

struct LabeledModule {
    std::string label;
    RationalRep module;
};

struct SvgOptions {
    std::uint32_t prime = default_oracle_prime;
    std::size_t dimension_cap = default_oracle_dimension_cap;
    double width = 800;
    double height = 600;
};

namespace detail {

inline std::string fmt6(double x)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", x);
    return buf;
}

inline std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

/// Exact convex hull (Andrew's monotone chain), counterclockwise, no
/// collinear points.
inline std::vector<Charge> convex_hull(std::vector<Charge> pts)
{
    std::sort(pts.begin(), pts.end(), [](const Charge& a, const Charge& b) {
        return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    if (pts.size() < 3) return pts;
    auto turn = [](const Charge& o, const Charge& a, const Charge& b) {
        return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
    };
    std::vector<Charge> h(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && turn(h[k - 2], h[k - 1], p) <= 0) --k;
        h[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
        while (k >= t && turn(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
        h[k++] = pts[i];
    }
    h.resize(k - 1);
    return h;
}

} // namespace detail

/// Charge diagram: one dot per distinct (charge, verdict), blue for stable and
/// red otherwise; for unstable modules the hull of all subobject charges and
/// the HN polyline along its left edge.
inline std::string emit_svg(const StabilityFunction& z, const std::vector<LabeledModule>& modules,
                            const SvgOptions& opt = {})
{
    struct Dot {
        Charge at;
        std::string label;
        StabilityClass status = StabilityClass::stable;
        bool known = true;
        std::vector<Charge> hull;
        std::vector<Charge> hn_path;
    };
    std::vector<Dot> dots;
    std::vector<std::string> notices;
    for (const auto& lm : modules) {
        const KClass cls = lm.module.dim_vector();
        if (is_zero_class(cls)) continue;
        Dot d{z(cls), lm.label, StabilityClass::stable, true, {}, {}};
        try {
            const ModPRep red = reduce_representation(lm.module, opt.prime).rep;
            const SubmoduleLattice lat = enumerate_submodules(red, opt.dimension_cap);
            d.status = is_stable(lat, z).status;
            if (d.status == StabilityClass::unstable) {
                std::vector<Charge> pts;
                for (const auto& s : lat.elements) pts.push_back(z(s.dim_vector()));
                d.hull = detail::convex_hull(pts);
                d.hn_path.push_back(Charge{});
                for (const auto& c : hn_bruteforce(red, z, opt.dimension_cap).chain_classes) d.hn_path.push_back(z(c));
            }
        } catch (const CapExceeded&) {
            d.known = false;
            notices.push_back(lm.label + ": lattice exceeds the oracle cap; charge only");
        }
        auto same = std::find_if(dots.begin(), dots.end(), [&](const Dot& o) {
            return o.at == d.at && o.status == d.status && o.known == d.known;
        });
        if (same != dots.end())
            same->label += "=" + d.label;
        else
            dots.push_back(std::move(d));
    }

    // Fixed affine transform fitting every drawn point and the origin.
    Rational x0 = 0, x1 = 0, y0 = 0, y1 = 0;
    auto grow = [&](const Charge& c) {
        x0 = std::min(x0, c.x);
        x1 = std::max(x1, c.x);
        y0 = std::min(y0, c.y);
        y1 = std::max(y1, c.y);
    };
    for (const auto& d : dots) {
        grow(d.at);
        for (const auto& c : d.hull) grow(c);
    }
    const double margin = 60;
    const double spanx = std::max(1.0, static_cast<double>(x1 - x0));
    const double spany = std::max(1.0, static_cast<double>(y1 - y0));
    const double scale = std::min((opt.width - 2 * margin) / spanx, (opt.height - 2 * margin) / spany);
    const double ox = margin + ((opt.width - 2 * margin) - scale * spanx) / 2 - scale * static_cast<double>(x0);
    const double oy = opt.height - margin + scale * static_cast<double>(y0);
    auto px = [&](const Charge& c) { return detail::fmt6(ox + scale * static_cast<double>(c.x)); };
    auto py = [&](const Charge& c) { return detail::fmt6(oy - scale * static_cast<double>(c.y)); };
    auto points = [&](const std::vector<Charge>& cs) {
        std::string s;
        for (std::size_t k = 0; k < cs.size(); ++k) s += (k ? " " : "") + px(cs[k]) + "," + py(cs[k]);
        return s;
    };

    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opt.width << "\" height=\"" << opt.height
       << "\" viewBox=\"0 0 " << opt.width << " " << opt.height << "\">\n";
    os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    const Charge origin{};
    os << "<line x1=\"" << detail::fmt6(margin / 2) << "\" y1=\"" << py(origin) << "\" x2=\""
       << detail::fmt6(opt.width - margin / 2) << "\" y2=\"" << py(origin) << "\" stroke=\"#888\"/>\n";
    os << "<line x1=\"" << px(origin) << "\" y1=\"" << detail::fmt6(opt.height - margin / 2) << "\" x2=\"" << px(origin)
       << "\" y2=\"" << detail::fmt6(margin / 2) << "\" stroke=\"#888\"/>\n";
    for (const auto& d : dots)
        if (!d.hull.empty())
            os << "<polygon class=\"hull\" points=\"" << points(d.hull)
               << "\" fill=\"#d62728\" fill-opacity=\"0.15\" stroke=\"#d62728\"/>\n";
    for (const auto& d : dots)
        if (d.hn_path.size() > 1)
            os << "<polyline class=\"hn\" points=\"" << points(d.hn_path)
               << "\" fill=\"none\" stroke=\"#d62728\" stroke-width=\"2\"/>\n";
    for (const auto& d : dots) {
        const char* colour = !d.known ? "#7f7f7f" : d.status == StabilityClass::stable ? "#1f77b4" : "#d62728";
        os << "<circle class=\"charge\" cx=\"" << px(d.at) << "\" cy=\"" << py(d.at) << "\" r=\"5\" fill=\"" << colour
           << "\"/>\n";
        os << "<text x=\"" << detail::fmt6(ox + scale * static_cast<double>(d.at.x) + 8) << "\" y=\""
           << detail::fmt6(oy - scale * static_cast<double>(d.at.y) - 8) << "\" font-size=\"14\">"
           << detail::xml_escape(d.label) << "</text>\n";
    }
    for (std::size_t k = 0; k < notices.size(); ++k)
        os << "<text class=\"notice\" x=\"10\" y=\"" << 20 + 16 * k << "\" font-size=\"12\">"
           << detail::xml_escape(notices[k]) << "</text>\n";
    os << "</svg>\n";
    return os.str();
}

/// Simples, projectives and standards for one ordering, labelled by position.
inline std::vector<LabeledModule> figure_modules(const OrderingModules& om, const ModuleFactory& f)
{
    std::vector<LabeledModule> out;
    for (int i = 1; i <= om.n(); ++i) out.push_back({"S" + std::to_string(i), f.simple(om.ordering.vertex_at(i))});
    for (int i = 1; i <= om.n(); ++i) out.push_back({"Δ" + std::to_string(i), om.standard(i)});
    for (int i = 1; i <= om.n(); ++i) out.push_back({"P" + std::to_string(i), om.projective_at(i)});
    return out;
}

} // namespace quiverhw
