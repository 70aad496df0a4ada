// Covector strata of the preimage of the exponential mapping, elliptic
// coordinates, the t -> (p, tau, z, Delta) reparametrization, pendulum
// dynamics, and curvature along extremals.
//
// Strata of the initial covector (pendulum energy E = c^2/2 - r cos(beta)):
//   N1    oscillating pendulum, inflectional elastica, modulus k in (0,1),
//         curvature c(s) = 2 k sqrt(r) cn(sqrt(r)(phi + s), k)
//   N2+/- rotating pendulum, non-inflectional elastica,
//         curvature c(s) = +/- (2 sqrt(r)/k) dn(sqrt(r)(psi + s/k), k)
//   N3    separatrix (k -> 1 limit), c(s) = 2 sqrt(r) sech(sqrt(r)(phi + s))
//   N6    degenerate pendulum (no gravity term), circle of curvature sqrt(r)
//   Line  zero control, straight segment

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "elastica/elliptic.hpp"
#include "elastica/ode.hpp"

namespace elastica {

enum class Stratum { N1, N2plus, N2minus, N3, N6, Line };

inline const char* to_string(Stratum s) {
    switch (s) {
        case Stratum::N1: return "N1";
        case Stratum::N2plus: return "N2+";
        case Stratum::N2minus: return "N2-";
        case Stratum::N3: return "N3";
        case Stratum::N6: return "N6";
        case Stratum::Line: return "line";
    }
    return "?";
}

/// Initial covector in elliptic coordinates. `phase` is phi on N1/N3 and
/// psi on N2+/-; it is unused on N6 and Line. `k` is meaningful on N1 and
/// N2+/- only.
struct Covector {
    Stratum stratum;
    double k;     // elliptic modulus, in (0,1) where meaningful
    double phase; // phi or psi, radians-per-sqrt(r) units of the pendulum phase
    double r;     // energy-like scale, > 0

    Modulus modulus() const { return Modulus(k); }

    static Covector inflectional(double k, double phi, double r) {
        check_r(r);
        if (!(k > 0.0 && k < 1.0))
            throw std::domain_error("Covector: N1 requires k in (0,1)");
        return {Stratum::N1, k, phi, r};
    }

    static Covector noninflectional(double k, double psi, double r, bool positive = true) {
        check_r(r);
        if (!(k > 0.0 && k < 1.0))
            throw std::domain_error("Covector: N2 requires k in (0,1)");
        return {positive ? Stratum::N2plus : Stratum::N2minus, k, psi, r};
    }

    static Covector critical(double phi, double r) {
        check_r(r);
        return {Stratum::N3, 1.0, phi, r};
    }

    static Covector circle(double r) {
        check_r(r);
        return {Stratum::N6, 0.0, 0.0, r};
    }

    static Covector line() { return {Stratum::Line, 0.0, 0.0, 1.0}; }

private:
    static void check_r(double r) {
        if (!(r > 0.0 && std::isfinite(r)))
            throw std::domain_error("Covector: r must be positive and finite");
    }
};

inline void require_stratum(const Covector& lam, Stratum want, const char* op) {
    if (lam.stratum != want)
        throw std::invalid_argument(std::string(op) + ": wrong stratum " +
                                    to_string(lam.stratum));
}

inline bool is_n2(const Covector& lam) {
    return lam.stratum == Stratum::N2plus || lam.stratum == Stratum::N2minus;
}

/// Rescaled coordinates of one endpoint map evaluation:
/// p (half-time), tau (midpoint phase), z = sn^2(tau), Delta = 1 - k^2 sn^2 p sn^2 tau.
struct ReparamPoint {
    double p;
    double tau;
    double z;
    double delta;
};

namespace detail {

inline ReparamPoint finish_reparam(double p, double tau, const Modulus& k) {
    const JacobiTriple jp = jacobi(p, k);
    const JacobiTriple jt = jacobi(tau, k);
    ReparamPoint rp;
    rp.p = p;
    rp.tau = tau;
    rp.z = jt.sn * jt.sn;
    rp.delta = 1.0 - k.value() * k.value() * jp.sn * jp.sn * rp.z;
    return rp;
}

} // namespace detail

/// N1: p = sqrt(r) t / 2, tau = sqrt(r) (phi + t/2).
inline ReparamPoint reparam_N1(const Covector& lam, double t) {
    require_stratum(lam, Stratum::N1, "reparam_N1");
    const double sr = std::sqrt(lam.r);
    return detail::finish_reparam(0.5 * sr * t, sr * (lam.phase + 0.5 * t),
                                  lam.modulus());
}

/// N2+/-: p = sqrt(r) t / (2k), tau = sqrt(r) (2 psi + t/k) / 2.
inline ReparamPoint reparam_N2(const Covector& lam, double t) {
    if (!is_n2(lam))
        throw std::invalid_argument("reparam_N2: wrong stratum");
    const double sr = std::sqrt(lam.r);
    const double p = 0.5 * sr * t / lam.k;
    return detail::finish_reparam(p, sr * lam.phase + p, lam.modulus());
}

/// Curvature along an N1 extremal: c(s) = 2 k sqrt(r) cn(sqrt(r)(phi + s), k).
/// Vanishes exactly at the inflection points.
inline double curvature_N1(const Covector& lam, double s) {
    require_stratum(lam, Stratum::N1, "curvature_N1");
    const double sr = std::sqrt(lam.r);
    return 2.0 * lam.k * sr * jacobi(sr * (lam.phase + s), lam.modulus()).cn;
}

/// Pendulum period of the N1 vertical subsystem, T = 4K(k)/sqrt(r).
inline double period_N1(const Covector& lam) {
    require_stratum(lam, Stratum::N1, "period_N1");
    return 4.0 * complete_K(lam.modulus()) / std::sqrt(lam.r);
}

/// Period of the curvature signal, where one exists: 4K/sqrt(r) on N1,
/// 2kK/sqrt(r) on N2 (dn period), full turn 2*pi/sqrt(r) on N6; infinity
/// on N3 and Line.
inline double curvature_period(const Covector& lam) {
    switch (lam.stratum) {
        case Stratum::N1:
            return period_N1(lam);
        case Stratum::N2plus:
        case Stratum::N2minus:
            return 2.0 * lam.k * complete_K(lam.modulus()) / std::sqrt(lam.r);
        case Stratum::N6:
            return 2.0 * std::acos(-1.0) / std::sqrt(lam.r);
        default:
            return std::numeric_limits<double>::infinity();
    }
}

/// State of the vertical (pendulum) subsystem: beta' = c, c' = -r sin(beta).
/// r here is the gravity-like coefficient and is 0 on the N6/Line fibers.
struct PendulumState {
    double beta;
    double c;
    double r;
};

inline double pendulum_energy(const PendulumState& s) {
    return 0.5 * s.c * s.c - s.r * std::cos(s.beta);
}

/// Flow the pendulum for time t with local error tol.
inline PendulumState pendulum_flow(const PendulumState& s0, double t, double tol) {
    auto rhs = [&](double, const std::array<double, 2>& y) {
        return std::array<double, 2>{y[1], -s0.r * std::sin(y[0])};
    };
    const auto y = integrate<2>(rhs, {s0.beta, s0.c}, 0.0, t, tol);
    return {y[0], y[1], s0.r};
}

/// Initial pendulum state pinned by the covector's elliptic coordinates.
inline PendulumState initial_pendulum_state(const Covector& lam) {
    const double sr = std::sqrt(lam.r);
    switch (lam.stratum) {
        case Stratum::N1: {
            // sin(beta/2) = k sn(sqrt(r) phi), c = 2 k sqrt(r) cn(sqrt(r) phi)
            const JacobiTriple j = jacobi(sr * lam.phase, lam.modulus());
            return {2.0 * std::asin(lam.k * j.sn), 2.0 * lam.k * sr * j.cn, lam.r};
        }
        case Stratum::N2plus:
        case Stratum::N2minus: {
            // beta/2 = am(sqrt(r) psi), c = (2 sqrt(r)/k) dn(sqrt(r) psi)
            const double sign = (lam.stratum == Stratum::N2plus) ? 1.0 : -1.0;
            const double u = sr * lam.phase;
            return {sign * 2.0 * jacobi_am(u, lam.modulus()),
                    sign * 2.0 * sr / lam.k * jacobi(u, lam.modulus()).dn, lam.r};
        }
        case Stratum::N3: {
            // separatrix: sin(beta/2) = tanh(sqrt(r) phi)
            const JacobiTriple j = jacobi_critical(sr * lam.phase);
            return {2.0 * std::asin(j.sn), 2.0 * sr * j.cn, lam.r};
        }
        case Stratum::N6:
            // constant curvature sqrt(r); no gravity term in the fiber
            return {0.0, sr, 0.0};
        case Stratum::Line:
            return {0.0, 0.0, 0.0};
    }
    throw std::logic_error("initial_pendulum_state: unreachable");
}

/// Closed-form curvature where the parametrization provides one
/// (N1, N3, N6, Line); N2 is served by pendulum_flow instead.
inline double curvature_closed_form(const Covector& lam, double s) {
    const double sr = std::sqrt(lam.r);
    switch (lam.stratum) {
        case Stratum::N1:
            return curvature_N1(lam, s);
        case Stratum::N3:
            return 2.0 * sr * jacobi_critical(sr * (lam.phase + s)).cn;
        case Stratum::N6:
            return sr;
        case Stratum::Line:
            return 0.0;
        default:
            throw std::invalid_argument("curvature_closed_form: no closed form on N2");
    }
}

} // namespace elastica
