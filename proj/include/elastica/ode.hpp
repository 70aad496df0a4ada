// Adaptive embedded Runge-Kutta 5(4) integrator (Dormand-Prince pair).
//
// Small fixed-dimension integrator for the handful of systems in this
// project: the pendulum subsystem, the exponential-map state, and the
// ODE oracles in the test suite.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>

namespace elastica {

class integration_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

// Dormand-Prince RKDP coefficients.
inline constexpr double dp_c[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
inline constexpr double dp_a[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
// 5th-order solution weights equal the last a-row; e[] is (b5 - b4).
inline constexpr double dp_e[7] = {
    71.0 / 57600, 0.0, -71.0 / 16695, 71.0 / 1920,
    -17253.0 / 339200, 22.0 / 525, -1.0 / 40,
};

} // namespace detail

/// Integrate dy/dt = f(t, y) from t0 to t1 with local error <= tol
/// (mixed absolute/relative). Calls observe(t, y) after every accepted
/// step, including the initial and final states.
template <std::size_t N, class Rhs, class Observer>
std::array<double, N> integrate_observed(Rhs&& f, std::array<double, N> y,
                                         double t0, double t1, double tol,
                                         Observer&& observe) {
    using State = std::array<double, N>;
    if (!(tol > 0.0)) throw integration_error("integrate: tol must be positive");
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    double t = t0;
    double h = dir * std::max(1e-8, 1e-2 * std::abs(t1 - t0));
    observe(t, y);
    if (t1 == t0) return y;

    State k[7];
    k[0] = f(t, y);
    int rejected_in_a_row = 0;
    while (dir * (t1 - t) > 0.0) {
        if (dir * (t + h - t1) > 0.0) h = t1 - t;
        if (std::abs(h) < 1e-14 * (1.0 + std::abs(t)))
            throw integration_error("integrate: step size underflow");

        State ytmp;
        for (int s = 1; s < 7; ++s) {
            for (std::size_t i = 0; i < N; ++i) {
                double acc = 0.0;
                for (int j = 0; j < s; ++j) acc += detail::dp_a[s][j] * k[j][i];
                ytmp[i] = y[i] + h * acc;
            }
            k[s] = f(t + detail::dp_c[s] * h, ytmp);
        }
        // k[6] is f at the 5th-order solution (FSAL); ytmp now holds y5.
        double err = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            double e = 0.0;
            for (int s = 0; s < 7; ++s) e += detail::dp_e[s] * k[s][i];
            const double sc = tol * (1.0 + std::max(std::abs(y[i]), std::abs(ytmp[i])));
            err = std::max(err, std::abs(h * e) / sc);
        }

        if (err <= 1.0) {
            t += h;
            y = ytmp;
            k[0] = k[6]; // FSAL
            observe(t, y);
            rejected_in_a_row = 0;
        } else if (++rejected_in_a_row > 64) {
            throw integration_error("integrate: repeated step rejection");
        }
        const double fac = std::clamp(0.9 * std::pow(err > 0 ? err : 1e-16, -0.2), 0.2, 5.0);
        h *= fac;
    }
    return y;
}

template <std::size_t N, class Rhs>
std::array<double, N> integrate(Rhs&& f, const std::array<double, N>& y0,
                                double t0, double t1, double tol) {
    return integrate_observed<N>(f, y0, t0, t1, tol,
                                 [](double, const std::array<double, N>&) {});
}

} // namespace elastica
