// Independent verification path for the closed-form Jacobians: the
// exponential map computed by ODE integration of the state plus pendulum
// system, its Jacobian determinant by central finite differences in the
// elliptic coordinates (phase, k, r), and a crosscheck report pairing
// closed-form Jacobian zeros with determinant sign changes.

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elastica/conjugate.hpp"
#include "elastica/jacobian.hpp"
#include "elastica/strata.hpp"

namespace elastica {

/// End state of the exponential map: planar position, heading (unwrapped),
/// and the pendulum fiber (beta, c); the curvature of the elastica is c.
struct ExpState {
    double x, y, theta;
    double beta, c;
};

/// Exp_t by integration of x' = cos(theta), y' = sin(theta), theta' = c
/// together with the pendulum subsystem, from q0 = (0, 0, 0).
/// observe(s, state) fires at every accepted step when provided.
template <class Observer>
ExpState exp_map_observed(const Covector& lam, double t, double tol, Observer&& observe) {
    if (!(t >= 0.0)) throw std::domain_error("exp_map: t must be >= 0");
    const PendulumState ps = initial_pendulum_state(lam);
    const double grav = ps.r;
    auto rhs = [grav](double, const std::array<double, 5>& y) {
        return std::array<double, 5>{std::cos(y[2]), std::sin(y[2]), y[4], y[4],
                                     -grav * std::sin(y[3])};
    };
    const std::array<double, 5> y0{0.0, 0.0, 0.0, ps.beta, ps.c};
    auto y = integrate_observed<5>(rhs, y0, 0.0, t, tol, [&](double s, const std::array<double, 5>& v) {
        observe(s, ExpState{v[0], v[1], v[2], v[3], v[4]});
    });
    return {y[0], y[1], y[2], y[3], y[4]};
}

inline ExpState exp_map(const Covector& lam, double t, double tol = 1e-10) {
    return exp_map_observed(lam, t, tol, [](double, const ExpState&) {});
}

/// States at n+1 equispaced times over [0, t], by piecewise continuation of
/// one integration (each sample time is hit exactly).
inline std::vector<std::pair<double, ExpState>> exp_map_samples(const Covector& lam,
                                                                double t, int n,
                                                                double tol = 1e-10) {
    if (n < 1) throw std::domain_error("exp_map_samples: n must be >= 1");
    const PendulumState ps = initial_pendulum_state(lam);
    const double grav = ps.r;
    auto rhs = [grav](double, const std::array<double, 5>& y) {
        return std::array<double, 5>{std::cos(y[2]), std::sin(y[2]), y[4], y[4],
                                     -grav * std::sin(y[3])};
    };
    std::array<double, 5> y{0.0, 0.0, 0.0, ps.beta, ps.c};
    std::vector<std::pair<double, ExpState>> out;
    out.reserve(n + 1);
    out.emplace_back(0.0, ExpState{y[0], y[1], y[2], y[3], y[4]});
    for (int i = 1; i <= n; ++i) {
        const double s0 = t * (i - 1) / n, s1 = t * i / n;
        y = integrate<5>(rhs, y, s0, s1, tol);
        out.emplace_back(s1, ExpState{y[0], y[1], y[2], y[3], y[4]});
    }
    return out;
}

namespace detail {

inline Covector perturbed(const Covector& lam, int coord, double step) {
    Covector out = lam;
    switch (coord) {
        case 0: out.phase += step; break;
        case 1: out.k += step; break;
        case 2: out.r += step; break;
    }
    return out;
}

} // namespace detail

/// Determinant of the central-difference matrix d(x_t, y_t, theta_t) /
/// d(phase, k, r). Steps: h absolute in the phase, h-relative to
/// min(k, 1-k) in k and to r in r, auto-shrunk when k +/- step would leave
/// (0, 1).
inline double exp_jacobian_fd(const Covector& lam, double t, double h = 1e-5,
                              double tol = 1e-12) {
    if (lam.stratum != Stratum::N1 && !is_n2(lam))
        throw std::invalid_argument("exp_jacobian_fd: N1 or N2 covector required");
    if (!(h > 0.0)) throw std::domain_error("exp_jacobian_fd: h must be > 0");
    double steps[3] = {h, h * std::min(lam.k, 1.0 - lam.k), h * lam.r};
    while (lam.k + steps[1] >= 1.0 || lam.k - steps[1] <= 0.0) {
        steps[1] *= 0.5;
        if (steps[1] < 1e-14)
            throw integration_error("exp_jacobian_fd: k step underflow");
    }
    double m[3][3];
    for (int j = 0; j < 3; ++j) {
        const ExpState plus = exp_map(detail::perturbed(lam, j, steps[j]), t, tol);
        const ExpState minus = exp_map(detail::perturbed(lam, j, -steps[j]), t, tol);
        m[0][j] = (plus.x - minus.x) / (2.0 * steps[j]);
        m[1][j] = (plus.y - minus.y) / (2.0 * steps[j]);
        m[2][j] = (plus.theta - minus.theta) / (2.0 * steps[j]);
    }
    return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
           m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
           m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

/// One matched (or unmatched) zero in the crosscheck report.
struct CrosscheckPair {
    std::optional<double> t_closed_form;
    std::optional<double> t_determinant;
    double mismatch() const {
        return (t_closed_form && t_determinant)
                   ? std::abs(*t_closed_form - *t_determinant)
                   : std::numeric_limits<double>::infinity();
    }
};

struct CrosscheckReport {
    Covector lam;
    double t_max;
    std::vector<CrosscheckPair> pairs;
    double max_mismatch = 0.0; // over matched pairs
    int unpaired = 0;

    bool clean(double tol) const { return unpaired == 0 && max_mismatch <= tol; }
};

namespace detail {

/// Zeros of the closed-form Jacobian numerator in (0, t_max]. The scan
/// starts inside the conjugate-free zone; below it the numerator is
/// positive but cancellation-dominated.
inline std::vector<double> closed_form_zeros(const Covector& lam, double t_max) {
    if (lam.stratum == Stratum::N1) {
        const Modulus k = lam.modulus();
        const double lo = 0.5 * cut_bound(lam);
        if (t_max <= lo) return {};
        auto g = [&](double t) {
            const ReparamPoint rp = reparam_N1(lam, t);
            return J1(rp.p, k, rp.z);
        };
        const double T = period_N1(lam);
        const int samples = 256 * static_cast<int>(std::ceil((t_max - lo) / T)) + 256;
        return all_zeros_scan(g, lo, t_max, samples);
    }
    const Modulus k = lam.modulus();
    const double T = curvature_period(lam);
    auto g = [&](double t) {
        const ReparamPoint rp = reparam_N2(lam, t);
        return J2(rp.p, k, rp.z);
    };
    const double lo = 1e-2 * T;
    const int samples = 128 * static_cast<int>(std::ceil((t_max - lo) / T)) + 128;
    return all_zeros_scan(g, lo, t_max, samples);
}

/// Sign changes of the finite-difference determinant in (0, t_max].
/// Grid values whose magnitude sits below a noise floor (relative to the
/// largest sampled magnitude) are skipped as sign-indeterminate.
inline std::vector<double> determinant_sign_changes(const Covector& lam, double t_max,
                                                    int samples, double h, double tol) {
    std::vector<double> ts(samples), ds(samples);
    const double t0 = t_max / samples;
    for (int i = 0; i < samples; ++i) {
        ts[i] = t0 + (t_max - t0) * i / (samples - 1);
        ds[i] = exp_jacobian_fd(lam, ts[i], h, tol);
    }
    double scale = 0.0;
    for (const double d : ds) scale = std::max(scale, std::abs(d));
    const double floor = 1e-9 * scale;
    std::vector<double> zeros;
    int prev = -1;
    for (int i = 0; i < samples; ++i) {
        if (std::abs(ds[i]) < floor) continue;
        if (prev >= 0 && (ds[prev] > 0.0) != (ds[i] > 0.0)) {
            double lo = ts[prev], hi = ts[i];
            double flo = ds[prev];
            for (int it = 0; it < 60 && (hi - lo) > 1e-6 * t_max; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double fm = exp_jacobian_fd(lam, mid, h, tol);
                if ((fm > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            zeros.push_back(0.5 * (lo + hi));
        }
        prev = i;
    }
    return zeros;
}

} // namespace detail

/// Pair every closed-form Jacobian zero in (0, t_max] with a determinant
/// sign change. Greedy nearest matching within half of the curvature
/// period; leftovers are reported unpaired.
inline CrosscheckReport crosscheck(const Covector& lam, double t_max,
                                   int det_samples = 192, double h = 1e-5,
                                   double tol = 1e-12) {
    if (lam.stratum != Stratum::N1 && !is_n2(lam))
        throw std::invalid_argument("crosscheck: N1 or N2 covector required");
    CrosscheckReport rep{lam, t_max, {}, 0.0, 0};
    std::vector<double> cf = detail::closed_form_zeros(lam, t_max);
    std::vector<double> fd = detail::determinant_sign_changes(lam, t_max, det_samples, h, tol);
    const double window = 0.5 * curvature_period(lam);
    std::vector<bool> used(fd.size(), false);
    for (const double z : cf) {
        int best = -1;
        for (std::size_t i = 0; i < fd.size(); ++i) {
            if (used[i]) continue;
            if (best < 0 || std::abs(fd[i] - z) < std::abs(fd[best] - z))
                best = static_cast<int>(i);
        }
        CrosscheckPair pair;
        pair.t_closed_form = z;
        if (best >= 0 && std::abs(fd[best] - z) <= window) {
            used[best] = true;
            pair.t_determinant = fd[best];
            rep.max_mismatch = std::max(rep.max_mismatch, pair.mismatch());
        } else {
            ++rep.unpaired;
        }
        rep.pairs.push_back(pair);
    }
    for (std::size_t i = 0; i < fd.size(); ++i) {
        if (!used[i]) {
            rep.pairs.push_back({std::nullopt, fd[i]});
            ++rep.unpaired;
        }
    }
    return rep;
}

} // namespace elastica
