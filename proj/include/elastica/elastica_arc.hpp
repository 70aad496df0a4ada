// Sampled elastica arcs, inflection counting, the stability classifier, and
// SVG/CSV emission.
//
// Classification rules for an arc over [0, t]:
//   (1) no inflection points                     -> locally optimal
//   (2) k <= k0 and exactly one inflection point -> locally optimal
//   (3) >= 3 inflection points in the interior   -> not locally optimal
// Everything else falls through to a comparison of t against the first
// conjugate time (both stable and unstable examples exist there).

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastica/conjugate.hpp"
#include "elastica/oracle.hpp"
#include "elastica/strata.hpp"

namespace elastica {

struct ArcSample {
    double s, x, y, theta, curvature;
};

struct ElasticaArc {
    Covector lam;
    double t_end;
    std::vector<ArcSample> samples; // strictly increasing in s, from 0 to t_end
};

/// n+1 equispaced exponential-map samples of the extremal from `lam`.
inline ElasticaArc sample_arc(const Covector& lam, double t, int n, double tol = 1e-10) {
    if (!(t > 0.0)) throw std::domain_error("sample_arc: t must be > 0");
    if (n < 2) throw std::domain_error("sample_arc: n must be >= 2");
    ElasticaArc arc{lam, t, {}};
    arc.samples.reserve(n + 1);
    for (const auto& [s, st] : exp_map_samples(lam, t, n, tol))
        arc.samples.push_back({s, st.x, st.y, st.theta, st.c});
    return arc;
}

struct InflectionCount {
    int interior;
    int boundary;
    int total() const { return interior + boundary; }
};

/// Curvature zeros of the arc, counted from the closed form: on N1 the
/// curvature 2 k sqrt(r) cn(sqrt(r)(phi+s)) vanishes exactly at
/// sqrt(r)(phi+s) = K mod 2K. Non-inflectional strata have none.
inline InflectionCount count_inflections(const ElasticaArc& arc) {
    const Covector& lam = arc.lam;
    if (lam.stratum != Stratum::N1) return {0, 0};
    const double sr = std::sqrt(lam.r);
    const double K = complete_K(lam.modulus());
    const double t = arc.t_end;
    const double btol = 1e-9 * std::max(t, 1.0);
    // zeros at s = (K + 2Km - sqrt(r) phi)/sqrt(r), m integer
    const double u0 = sr * lam.phase;
    const long m_lo = static_cast<long>(std::floor((u0 - K) / (2.0 * K))) - 1;
    const long m_hi = static_cast<long>(std::ceil((u0 + sr * t - K) / (2.0 * K))) + 1;
    InflectionCount count{0, 0};
    for (long m = m_lo; m <= m_hi; ++m) {
        const double s = ((2.0 * m + 1.0) * K - u0) / sr;
        if (s > btol && s < t - btol)
            ++count.interior;
        else if (std::abs(s) <= btol || std::abs(s - t) <= btol)
            ++count.boundary;
    }
    return count;
}

enum class Stability { LocallyOptimal, NotLocallyOptimal, UndeterminedBoundary };
enum class StabilityRule { NoInflection, OneInflectionSmallK, ThreePlusInflections, ConjugateTimeComparison };

inline const char* to_string(Stability s) {
    switch (s) {
        case Stability::LocallyOptimal: return "locally-optimal";
        case Stability::NotLocallyOptimal: return "not-locally-optimal";
        case Stability::UndeterminedBoundary: return "undetermined-boundary";
    }
    return "?";
}

inline const char* to_string(StabilityRule r) {
    switch (r) {
        case StabilityRule::NoInflection: return "no-inflection";
        case StabilityRule::OneInflectionSmallK: return "one-inflection-small-k";
        case StabilityRule::ThreePlusInflections: return "three-plus-inflections";
        case StabilityRule::ConjugateTimeComparison: return "conjugate-time-comparison";
    }
    return "?";
}

struct StabilityVerdict {
    Stability status;
    StabilityRule rule;
    std::optional<double> certificate; // first conjugate time when compared
};

/// Stability of the arc over [0, t] by the inflection-count rules, with the
/// conjugate-time comparison as the fallback.
inline StabilityVerdict classify_stability(const Covector& lam, double t) {
    if (!(t > 0.0)) throw std::domain_error("classify_stability: t must be > 0");
    if (lam.stratum != Stratum::N1)
        return {Stability::LocallyOptimal, StabilityRule::NoInflection, std::nullopt};

    ElasticaArc arc{lam, t, {}}; // inflection counting needs no samples
    const InflectionCount infl = count_inflections(arc);
    const double k0 = find_k0().value();
    if (infl.total() == 0)
        return {Stability::LocallyOptimal, StabilityRule::NoInflection, std::nullopt};
    if (lam.k <= k0 && infl.total() == 1)
        return {Stability::LocallyOptimal, StabilityRule::OneInflectionSmallK, std::nullopt};
    if (infl.interior >= 3)
        return {Stability::NotLocallyOptimal, StabilityRule::ThreePlusInflections, std::nullopt};

    const ConjugateResult conj = t1conj(lam);
    const double tc = *conj.first_time;
    const double tol = 1e-8 * period_N1(lam);
    StabilityVerdict v{Stability::UndeterminedBoundary, StabilityRule::ConjugateTimeComparison, tc};
    if (t < tc - tol)
        v.status = Stability::LocallyOptimal;
    else if (t > tc + tol)
        v.status = Stability::NotLocallyOptimal;
    return v;
}

// ---------------------------------------------------------------------------
// Plot emission
// ---------------------------------------------------------------------------

struct PlotMarker {
    enum class Kind { Inflection, Conjugate };
    Kind kind;
    double s; // arc-length position along the arc
};

namespace detail {

inline std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

/// Linear interpolation of the arc position at arclength s.
inline void arc_point(const ElasticaArc& arc, double s, double& x, double& y) {
    const auto& ss = arc.samples;
    if (s <= ss.front().s) {
        x = ss.front().x;
        y = ss.front().y;
        return;
    }
    for (std::size_t i = 1; i < ss.size(); ++i) {
        if (s <= ss[i].s) {
            const double w = (s - ss[i - 1].s) / (ss[i].s - ss[i - 1].s);
            x = ss[i - 1].x + w * (ss[i].x - ss[i - 1].x);
            y = ss[i - 1].y + w * (ss[i].y - ss[i - 1].y);
            return;
        }
    }
    x = ss.back().x;
    y = ss.back().y;
}

} // namespace detail

/// Write the arc as an SVG polyline (circle markers: inflections, cross
/// markers: conjugate points) plus a sibling .csv of the samples. Output is
/// deterministic: identical inputs produce identical bytes.
inline void emit_plot(const ElasticaArc& arc, const std::vector<PlotMarker>& markers,
                      const std::string& path) {
    if (arc.samples.size() < 2) throw std::invalid_argument("emit_plot: arc has no samples");
    double xmin = arc.samples[0].x, xmax = xmin, ymin = arc.samples[0].y, ymax = ymin;
    for (const ArcSample& s : arc.samples) {
        xmin = std::min(xmin, s.x);
        xmax = std::max(xmax, s.x);
        ymin = std::min(ymin, s.y);
        ymax = std::max(ymax, s.y);
    }
    const double span = std::max({xmax - xmin, ymax - ymin, 1e-9});
    const double pad = 0.05 * span;
    const double scale = 640.0 / (span + 2.0 * pad);
    auto px = [&](double x) { return (x - xmin + pad) * scale; };
    auto py = [&](double y) { return 640.0 - (y - ymin + pad) * scale; }; // y up

    std::ofstream svg(path, std::ios::binary);
    if (!svg) throw std::runtime_error("emit_plot: cannot open " + path);
    svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" "
        << "width=\"640\" height=\"640\" viewBox=\"0 0 640 640\">\n"
        << "  <polyline fill=\"none\" stroke=\"#205080\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < arc.samples.size(); ++i) {
        if (i) svg << ' ';
        svg << detail::fmt(px(arc.samples[i].x)) << ',' << detail::fmt(py(arc.samples[i].y));
    }
    svg << "\"/>\n";
    for (const PlotMarker& m : markers) {
        double x, y;
        detail::arc_point(arc, m.s, x, y);
        if (m.kind == PlotMarker::Kind::Inflection) {
            svg << "  <circle cx=\"" << detail::fmt(px(x)) << "\" cy=\"" << detail::fmt(py(y))
                << "\" r=\"5\" fill=\"none\" stroke=\"#208040\" stroke-width=\"1.5\"/>\n";
        } else {
            const double cx = px(x), cy = py(y);
            svg << "  <path stroke=\"#a02020\" stroke-width=\"1.5\" d=\"M "
                << detail::fmt(cx - 5) << ' ' << detail::fmt(cy - 5) << " L "
                << detail::fmt(cx + 5) << ' ' << detail::fmt(cy + 5) << " M "
                << detail::fmt(cx - 5) << ' ' << detail::fmt(cy + 5) << " L "
                << detail::fmt(cx + 5) << ' ' << detail::fmt(cy - 5) << "\"/>\n";
        }
    }
    svg << "</svg>\n";
    if (!svg) throw std::runtime_error("emit_plot: write failed for " + path);

    const std::string csv_path = path.substr(0, path.find_last_of('.')) + ".csv";
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw std::runtime_error("emit_plot: cannot open " + csv_path);
    csv << "s,x,y,theta,curvature\n";
    csv.precision(17);
    for (const ArcSample& s : arc.samples)
        csv << s.s << ',' << s.x << ',' << s.y << ',' << s.theta << ',' << s.curvature << '\n';
    if (!csv) throw std::runtime_error("emit_plot: write failed for " + csv_path);
}

} // namespace elastica
