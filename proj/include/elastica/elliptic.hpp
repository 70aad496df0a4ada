// Complete/incomplete elliptic integrals and Jacobi elliptic functions.
//
// K and E are computed by the arithmetic-geometric mean; am/sn/cn/dn by the
// descending Landen transformation; the Jacobi epsilon function from the AGM
// auxiliary sequence. All routines work in binary64 and are pure functions.

#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace elastica {

/// Elliptic modulus k restricted to [0, 1). The critical value k = 1 is
/// reachable only through the *_critical helpers below.
class Modulus {
public:
    explicit Modulus(double k) : k_(k) {
        if (!(k >= 0.0 && k < 1.0))
            throw std::domain_error("Modulus: k must satisfy 0 <= k < 1, got " +
                                    std::to_string(k));
    }

    double value() const { return k_; }

    /// Complementary modulus k' = sqrt(1 - k^2), formed without cancellation.
    double complement() const { return std::sqrt((1.0 - k_) * (1.0 + k_)); }

private:
    double k_;
};

struct JacobiTriple {
    double sn;
    double cn;
    double dn;
};

namespace detail {

inline void require_finite(double u, const char* what) {
    if (!std::isfinite(u))
        throw std::domain_error(std::string(what) + ": argument must be finite");
}

// AGM scales a_n plus the c_n = (a_{n-1} - b_{n-1})/2 sequence, c_0 = k.
struct AgmChain {
    static constexpr int kMaxIter = 32;
    double a[kMaxIter + 1];
    double c[kMaxIter + 1];
    int n = 0;

    explicit AgmChain(const Modulus& k) {
        a[0] = 1.0;
        c[0] = k.value();
        double b = k.complement();
        while (std::abs(c[n]) > std::numeric_limits<double>::epsilon() * a[n] &&
               n < kMaxIter) {
            a[n + 1] = 0.5 * (a[n] + b);
            c[n + 1] = 0.5 * (a[n] - b);
            b = std::sqrt(a[n] * b);
            ++n;
        }
    }

    double agm() const { return a[n]; }

    /// Amplitude am(u, k) and the correction sum used by jacobi_epsilon,
    /// obtained in one downward pass over the Landen angles.
    void amplitude(double u, double& am, double& eps_sum) const {
        double phi = std::ldexp(a[n] * u, n);
        eps_sum = 0.0;
        for (int i = n; i >= 1; --i) {
            const double s = std::sin(phi);
            eps_sum += c[i] * s;
            double arg = c[i] / a[i] * s;
            arg = std::clamp(arg, -1.0, 1.0);
            phi = 0.5 * (phi + std::asin(arg));
        }
        am = phi;
    }
};

} // namespace detail

/// Complete elliptic integral of the first kind, K(k).
inline double complete_K(const Modulus& k) {
    detail::AgmChain chain(k);
    return std::asin(1.0) / chain.agm(); // pi/2 / agm(1, k')
}

/// Complete elliptic integral of the second kind, E(k).
inline double complete_E(const Modulus& k) {
    detail::AgmChain chain(k);
    double sum = 0.5 * chain.c[0] * chain.c[0];
    double pw = 1.0;
    for (int i = 1; i <= chain.n; ++i) {
        sum += pw * chain.c[i] * chain.c[i];
        pw *= 2.0;
    }
    return complete_K(k) * (1.0 - sum);
}

/// Jacobi amplitude am(u, k).
inline double jacobi_am(double u, const Modulus& k) {
    detail::require_finite(u, "jacobi_am");
    detail::AgmChain chain(k);
    double am, unused;
    chain.amplitude(u, am, unused);
    return am;
}

/// Jacobi functions sn, cn, dn at (u, k).
inline JacobiTriple jacobi(double u, const Modulus& k) {
    detail::require_finite(u, "jacobi");
    const double am = jacobi_am(u, k);
    JacobiTriple t;
    t.sn = std::sin(am);
    t.cn = std::cos(am);
    const double kp2 = (1.0 - k.value()) * (1.0 + k.value());
    // dn = sqrt(k'^2 + k^2 cn^2) keeps full precision for k near 1.
    t.dn = std::sqrt(kp2 + k.value() * k.value() * t.cn * t.cn);
    return t;
}

/// Jacobi epsilon function E(u) = integral of dn^2 over [0, u].
/// Odd in u, quasi-periodic: E(u + 2K) = E(u) + 2E(k), derivative dn^2(u).
inline double jacobi_epsilon(double u, const Modulus& k) {
    detail::require_finite(u, "jacobi_epsilon");
    detail::AgmChain chain(k);
    double am, sum;
    chain.amplitude(u, am, sum);
    return complete_E(k) / complete_K(k) * u + sum;
}

/// Critical-limit (k = 1) Jacobi functions: sn -> tanh, cn, dn -> sech.
inline JacobiTriple jacobi_critical(double u) {
    detail::require_finite(u, "jacobi_critical");
    const double sech = 1.0 / std::cosh(u);
    return {std::tanh(u), sech, sech};
}

/// Critical-limit epsilon: integral of sech^2 = tanh.
inline double jacobi_epsilon_critical(double u) {
    detail::require_finite(u, "jacobi_epsilon_critical");
    return std::tanh(u);
}

/// The unique root k0 of 2E(k) - K(k) = 0 in (0, 1); 2E - K changes sign
/// exactly once, so plain bisection is a certificate.
inline Modulus find_k0() {
    auto g = [](double k) {
        Modulus m(k);
        return 2.0 * complete_E(m) - complete_K(m);
    };
    double lo = 0.5, hi = 0.9999; // g(lo) > 0 > g(hi)
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (g(mid) > 0.0 ? lo : hi) = mid;
    }
    return Modulus(0.5 * (lo + hi));
}

} // namespace elastica
