// Deterministic covector-set generation shared by the crosscheck command and
// the test suites: identical (seed, count, ranges) always produce identical
// covectors.

#pragma once

#include <random>
#include <vector>

#include "elastica/elliptic.hpp"
#include "elastica/strata.hpp"

namespace elastica {

/// N1 covectors with k in (k_lo, k_hi), r in (r_lo, r_hi), phase uniform
/// over one pendulum period.
inline std::vector<Covector> sample_inflectional(int count, unsigned seed,
                                                 double k_lo, double k_hi,
                                                 double r_lo = 0.5, double r_hi = 4.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uk(k_lo, k_hi);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> ur(r_lo, r_hi);
    std::vector<Covector> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double k = uk(rng);
        const double r = ur(rng);
        const double period_phi = 4.0 * complete_K(Modulus(k)) / std::sqrt(r);
        out.push_back(Covector::inflectional(k, u01(rng) * period_phi, r));
    }
    return out;
}

/// N2 covectors, phase uniform over one rotation period, both signs.
inline std::vector<Covector> sample_noninflectional(int count, unsigned seed,
                                                    double k_lo, double k_hi,
                                                    double r_lo = 0.5, double r_hi = 4.0) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> uk(k_lo, k_hi);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    std::uniform_real_distribution<double> ur(r_lo, r_hi);
    std::vector<Covector> out;
    out.reserve(count);
    for (int i = 0; i < count; ++i) {
        const double k = uk(rng);
        const double r = ur(rng);
        const double period_psi = 2.0 * k * complete_K(Modulus(k)) / std::sqrt(r);
        out.push_back(Covector::noninflectional(k, u01(rng) * period_psi, r,
                                                u01(rng) < 0.5));
    }
    return out;
}

/// The default crosscheck test set, shared verbatim with the acceptance run.
inline std::vector<Covector> default_crosscheck_set() {
    return sample_inflectional(20, 60608u, 0.1, 0.95);
}

} // namespace elastica
