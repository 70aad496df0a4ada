// First conjugate time, conjugate-time enumeration in the centered cases,
// Morse index counting, and the cut-time upper bound.
//
// On N1 the first conjugate time lies in the segment with endpoints
// 4K(k)/sqrt(r) and 2 p_1^1(k)/sqrt(r) (ordered by k against k0), so the
// search is a sign-change scan inside that certified bracket followed by
// bisection. N2, N3, N6, circles and straight lines carry no conjugate
// points and return the corresponding rule instead of a time.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "elastica/jacobian.hpp"
#include "elastica/roots.hpp"
#include "elastica/strata.hpp"

namespace elastica {

class conjugate_endpoint_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class StratumRule { N1Computed, NoConjugateN2, NoConjugateN3N6, NoConjugateLineCircle };

inline const char* to_string(StratumRule rule) {
    switch (rule) {
        case StratumRule::N1Computed: return "N1Computed";
        case StratumRule::NoConjugateN2: return "NoConjugateN2";
        case StratumRule::NoConjugateN3N6: return "NoConjugateN3N6";
        case StratumRule::NoConjugateLineCircle: return "NoConjugateLineCircle";
    }
    return "?";
}

struct ConjugateResult {
    StratumRule rule;
    std::optional<double> first_time;              // set iff rule == N1Computed
    std::optional<std::array<double, 2>> bracket;  // localization bracket, ordered
    std::optional<std::pair<double, int>> count_up_to; // (horizon, count), on request
    bool tangential_warning = false;               // zero touched without crossing
};

namespace detail {

/// First sign change of g on [lo, hi] scanned with `samples` points, refined
/// by bisection. Falls back to a tangential zero when no crossing exists:
/// the |g| minimum is refined by ternary search and accepted when it drops
/// below 1e-10 of the sampled scale.
template <class F>
std::optional<double> first_zero_scan(F&& g, double lo, double hi, int samples,
                                      bool* tangential) {
    if (tangential) *tangential = false;
    double prev_x = lo, prev_g = g(lo);
    double best_x = lo, best_abs = std::abs(prev_g), scale = std::abs(prev_g);
    for (int i = 1; i <= samples; ++i) {
        const double x = lo + (hi - lo) * i / samples;
        const double gx = g(x);
        scale = std::max(scale, std::abs(gx));
        if (std::abs(gx) < best_abs) {
            best_abs = std::abs(gx);
            best_x = x;
        }
        if (prev_g == 0.0) return prev_x;
        if ((prev_g > 0.0) != (gx > 0.0))
            return bisect(g, prev_x, x, "first_zero_scan");
        prev_x = x;
        prev_g = gx;
    }
    const double step = (hi - lo) / samples;
    double a = std::max(lo, best_x - step), b = std::min(hi, best_x + step);
    for (int i = 0; i < 200 && (b - a) > 1e-15 * std::max(1.0, std::abs(b)); ++i) {
        const double m1 = a + (b - a) / 3.0, m2 = b - (b - a) / 3.0;
        if (std::abs(g(m1)) < std::abs(g(m2)))
            b = m2;
        else
            a = m1;
    }
    const double xmin = 0.5 * (a + b);
    if (std::abs(g(xmin)) <= 1e-10 * scale) {
        if (tangential) *tangential = true;
        return xmin;
    }
    return std::nullopt;
}

/// All sign changes of g on [lo, hi] (crossings only).
template <class F>
std::vector<double> all_zeros_scan(F&& g, double lo, double hi, int samples) {
    std::vector<double> zeros;
    double prev_x = lo, prev_g = g(lo);
    for (int i = 1; i <= samples; ++i) {
        const double x = lo + (hi - lo) * i / samples;
        const double gx = g(x);
        if ((prev_g > 0.0) != (gx > 0.0) || prev_g == 0.0)
            zeros.push_back(prev_g == 0.0 ? prev_x : bisect(g, prev_x, x, "all_zeros_scan"));
        prev_x = x;
        prev_g = gx;
    }
    return zeros;
}

} // namespace detail

/// First positive root of p -> J1(p, k, z) at fixed z. Lies in the segment
/// bounded by 2K(k) and p_1^1(k).
inline double p1conj_fixed_z(const Modulus& k, double z) {
    if (!(z >= 0.0 && z <= 1.0))
        throw std::domain_error("p1conj_fixed_z: z must lie in [0,1]");
    const double K = complete_K(k);
    const double p11 = root_p1(1, k);
    // The extreme z values reduce to the pure root families: the J1 zero set
    // is {p_n^1} U {p_m^x2} at z = 0 and {2Kn} U {p_m^x1} at z = 1, where
    // the sn factor makes a scan around p = 2Kn ill-conditioned.
    if (z <= 1e-12) return p11;
    if (z >= 1.0 - 1e-12) return std::min(2.0 * K, root_px1(1, k));
    const double lo = std::min(2.0 * K, p11);
    const double hi = std::max(2.0 * K, p11);
    if (hi - lo <= 1e-12 * K) return 0.5 * (lo + hi); // k at (or next to) k0
    const double pad = 1e-9 * K;
    auto g = [&](double p) { return J1(p, k, z); };
    bool tangential = false;
    const auto root = detail::first_zero_scan(g, lo - pad, hi + pad, 512, &tangential);
    if (!root)
        throw std::logic_error("p1conj_fixed_z: no root in the certified bracket");
    return *root;
}

/// First conjugate time along the extremal from `lam`.
inline ConjugateResult t1conj(const Covector& lam) {
    ConjugateResult res;
    switch (lam.stratum) {
        case Stratum::N2plus:
        case Stratum::N2minus:
            res.rule = StratumRule::NoConjugateN2;
            return res;
        case Stratum::N3:
        case Stratum::N6:
            res.rule = StratumRule::NoConjugateN3N6;
            return res;
        case Stratum::Line:
            res.rule = StratumRule::NoConjugateLineCircle;
            return res;
        case Stratum::N1:
            break;
    }
    res.rule = StratumRule::N1Computed;
    const Modulus k = lam.modulus();
    const double sr = std::sqrt(lam.r);
    const double tK = 4.0 * complete_K(k) / sr;
    const double tp = 2.0 * root_p1(1, k) / sr;
    const double lo = std::min(tK, tp);
    const double hi = std::max(tK, tp);
    res.bracket = {{lo, hi}};
    if (hi - lo <= 1e-12 * hi) { // k at (or next to) k0: the bracket is a point
        res.first_time = 0.5 * (lo + hi);
        return res;
    }
    auto g = [&](double t) {
        const ReparamPoint rp = reparam_N1(lam, t);
        return J1(rp.p, k, rp.z);
    };
    const double pad = 1e-9 * hi;
    bool tangential = false;
    const auto root = detail::first_zero_scan(g, lo - pad, hi + pad, 512, &tangential);
    if (!root)
        throw std::logic_error("t1conj: no root in the certified bracket");
    res.first_time = std::clamp(*root, lo, hi);
    res.tangential_warning = tangential;
    return res;
}

/// Upper bound on the cut time: t(lam) = min(4K/sqrt(r), 2 p_1^1/sqrt(r)).
inline double cut_bound(const Covector& lam) {
    require_stratum(lam, Stratum::N1, "cut_bound");
    const Modulus k = lam.modulus();
    const double sr = std::sqrt(lam.r);
    return std::min(4.0 * complete_K(k) / sr, 2.0 * root_p1(1, k) / sr);
}

enum class CenteredAt { Vertex, Inflection };

struct ConjugatePointP {
    double p;
    int multiplicity; // 2 when the 2Kn and p_m^x1 families coincide
};

/// All conjugate points (in the p variable) of a vertex-centered (z = 0)
/// or inflection-centered (z = 1) extremal up to p_max:
///   z = 0 : {p_n^1} U {p_m^x2}   (always disjoint families)
///   z = 1 : {2Kn}  U {p_m^x1}    (members may coincide near kbar)
inline std::vector<ConjugatePointP> conj_enumerate_centered(const Modulus& k,
                                                            CenteredAt centered_at,
                                                            double p_max) {
    if (!(p_max > 0.0)) throw std::domain_error("conj_enumerate_centered: p_max must be > 0");
    const double K = complete_K(k);
    std::vector<double> a, b;
    if (centered_at == CenteredAt::Vertex) {
        for (int n = 1; 2.0 * n * K - K <= p_max; ++n) {
            const double r = root_p1(n, k);
            if (r <= p_max) a.push_back(r);
        }
        for (int n = 1; 2.0 * n * K <= p_max; ++n) {
            const double r = root_px2(n, k);
            if (r <= p_max) b.push_back(r);
        }
    } else {
        for (int n = 1; 2.0 * n * K <= p_max; ++n) a.push_back(2.0 * n * K);
        for (int n = 1; root_p1(n, k) <= p_max; ++n) {
            const double r = root_px1(n, k);
            if (r <= p_max) b.push_back(r);
        }
    }
    std::vector<double> all;
    all.reserve(a.size() + b.size());
    all.insert(all.end(), a.begin(), a.end());
    all.insert(all.end(), b.begin(), b.end());
    std::sort(all.begin(), all.end());
    std::vector<ConjugatePointP> out;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (!out.empty() && all[i] - out.back().p <= 1e-9 * std::max(1.0, all[i]))
            ++out.back().multiplicity;
        else
            out.push_back({all[i], 1});
    }
    return out;
}

/// Number of conjugate times in (0, t), each sign change of the closed-form
/// Jacobian counted with multiplicity 1. Throws when t sits within
/// 1e-8 * T of a conjugate time.
inline int morse_index(const Covector& lam, double t) {
    if (!(t > 0.0)) throw std::domain_error("morse_index: t must be > 0");
    if (lam.stratum != Stratum::N1) return 0;
    const Modulus k = lam.modulus();
    const double T = period_N1(lam);
    const double t_first = cut_bound(lam); // no conjugate time below this
    if (t < t_first - 1e-8 * T) return 0;
    // J1 below the bracket is positive but cancellation-dominated for very
    // small p, so start the scan safely inside the conjugate-free zone.
    const double lo = 0.5 * t_first;
    auto g = [&](double tt) {
        const ReparamPoint rp = reparam_N1(lam, tt);
        return J1(rp.p, k, rp.z);
    };
    const double hi = t + 2e-8 * T;
    const int samples = 256 * static_cast<int>(std::ceil(hi / T)) + 256;
    const auto zeros = detail::all_zeros_scan(g, lo, hi, samples);
    int count = 0;
    for (const double z : zeros) {
        if (std::abs(t - z) <= 1e-8 * T)
            throw conjugate_endpoint_error("morse_index: t is within tolerance of a conjugate time");
        if (z < t) ++count;
    }
    return count;
}

} // namespace elastica
