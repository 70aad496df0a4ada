#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "elastica/jacobian.hpp"
#include "elastica/roots.hpp"
#include "testutil.hpp"

using namespace elastica;

namespace {

// Derivative certificates from the sign lemmas, kept test-side only.
// Each one is a sum of squares, so the corresponding quotient increases.

double cert_x2_n1(double p, const Modulus& km) { // (x2/(sn dn))' = x3/(sn^2 dn^2)
    const JacobiTriple j = jacobi(p, km);
    const double e = jacobi_epsilon(p, km);
    const double k2 = km.value() * km.value();
    const double al = (1.0 - k2) * p * j.sn * j.sn - j.cn * j.sn * j.dn;
    const double be = -p * j.dn * j.dn;
    const double x3 = k2 * std::pow(j.cn * j.cn * e + al, 2) +
                      (1.0 - k2) * std::pow(e + be, 2);
    return x3 / (j.sn * j.sn * j.dn * j.dn);
}

double cert_x1_n1(double p, const Modulus& km) { // (x1/(dn f1))' = x5/(4 f1^2)
    const JacobiTriple j = jacobi(p, km);
    const double e = jacobi_epsilon(p, km);
    const double k2 = km.value() * km.value();
    const double sn2 = j.sn * j.sn;
    const double E2 = 2.0 * e - p;
    const double E4 = j.cn * E2 - 2.0 * j.sn * j.dn;
    const double al = (1.0 + sn2 - 2.0 * k2 * sn2) * E2 * E2 +
                      4.0 * j.cn * j.sn * j.dn * (1.0 - 2.0 * k2) * E2 +
                      4.0 * (2.0 * k2 - 1.0) * sn2 * j.dn * j.dn;
    const double be = (2.0 * k2 * sn2 - 1.0) * E2 * E2 +
                      8.0 * k2 * j.cn * j.sn * j.dn * E2 -
                      8.0 * k2 * sn2 * j.dn * j.dn;
    const double x5 = k2 * std::pow(j.cn * E4 * p + al, 2) +
                      (1.0 - k2) * std::pow(p * E2 + be, 2);
    const double f = f1(p, km);
    return x5 / (4.0 * f * f);
}

double cert_x2_n2(double p, const Modulus& km) { // (x2/(dn E))' certificate
    const JacobiTriple j = jacobi(p, km);
    const double e = jacobi_epsilon(p, km);
    const double k2 = km.value() * km.value();
    const double num = e - p * j.dn * j.dn;
    return (1.0 - k2) * num * num / (j.dn * j.dn * e * e);
}

double cert_f2(double p, const Modulus& km) { // (f2/dn)' = k^4 cn^2 sn^2 / dn^2
    const JacobiTriple j = jacobi(p, km);
    const double k2 = km.value() * km.value();
    return k2 * k2 * j.cn * j.cn * j.sn * j.sn / (j.dn * j.dn);
}

double cert_f1(double p, const Modulus& km) { // (f1/cn)' = sn^2 dn^2 / cn^2
    const JacobiTriple j = jacobi(p, km);
    return j.sn * j.sn * j.dn * j.dn / (j.cn * j.cn);
}

double quot_f1(double p, const Modulus& k) { return f1(p, k); }
double den_cn(double p, const Modulus& k) { return jacobi(p, k).cn; }
double den_sndn(double p, const Modulus& k) {
    const JacobiTriple j = jacobi(p, k);
    return j.sn * j.dn;
}
double den_dnf1(double p, const Modulus& k) { return jacobi(p, k).dn * f1(p, k); }
double den_dneps(double p, const Modulus& k) {
    return jacobi(p, k).dn * jacobi_epsilon(p, k);
}
double den_dn(double p, const Modulus& k) { return jacobi(p, k).dn; }

void check_quotient_derivative(const char* name, double (*num)(double, const Modulus&),
                               double (*den)(double, const Modulus&),
                               double (*cert)(double, const Modulus&), double p, double kv) {
    INFO(name << " at p=" << p << " k=" << kv);
    const Modulus km(kv);
    const double h = 1e-6;
    auto q = [&](double x) { return num(x, km) / den(x, km); };
    const double lhs = testutil::central_diff(q, p, h);
    const double rhs = cert(p, km);
    CHECK(std::abs(lhs - rhs) <= 1e-5 * std::max(1.0, std::abs(rhs)));
}

// High-precision reference values (mpmath, 50 digits, flat transcription).
struct Golden {
    double p, k;
    double f1, x1n1, x2n1, f2, x1n2, x2n2, J1z037, J2z037;
};
const Golden goldens[] = {
    {1.0, 0.5, 0.25632207880351039287, 1.0750779584350662338e-4,
     0.012105021030301969375, 0.0093980052600305496558, 1.2603307813612429846e-6,
     0.0022928839807317739879, 0.0019844498702572373535, -9.7862361871345095886e-6},
    {0.35, 0.2, 0.014063635478787880209, 8.7378382438793734119e-10,
     6.095564743315187106e-6, 2.0719573256803402966e-5, 5.2848721310625287555e-14,
     2.3375728420324013935e-7, 5.4116389087628411589e-8, -9.5434026010440738212e-13},
    {2.5, 0.8, 0.75036020633077172413, 0.18727725580908442359,
     0.88976847483793489982, 0.11419091908483545798, 0.021831401570083474956,
     0.21222290901546689317, 0.4709653574483972315, -0.014189086146481267241},
    {4.2, 0.909, 0.023862382979697469196, 4.0196352503747755618,
     3.9973600834765771328, 0.73052334943804619496, 0.19477019758993469444,
     1.1017763281749137293, 0.49199194924505495587, -0.49617645488547735083},
    {6.0, 0.95, -0.67557268726744225967, -1.12624307216299528,
     5.025937142807006588, 1.059102781545303034, -2.4096773681087880371,
     2.4061453010953044377, -1.9501789676340392611, -1.3843922709385371953},
    {1.3, 0.99, 0.22726371276542383774, 4.083722631090718015e-5,
     0.003135175675534157674, 0.2130339492641540116, 7.301417865746454085e-5,
     0.0030325756692015045281, 4.5720624531126077117e-4, -4.1475207524399394786e-4},
};

void check_close(double val, double ref) {
    CHECK(std::abs(val - ref) <= 1e-10 + 1e-9 * std::abs(ref));
}

} // namespace

TEST_CASE("reference values at six (p, k) points") {
    for (const Golden& g : goldens) {
        INFO("p=" << g.p << " k=" << g.k);
        const Modulus k(g.k);
        check_close(f1(g.p, k), g.f1);
        check_close(x1_N1(g.p, k), g.x1n1);
        check_close(x2_N1(g.p, k), g.x2n1);
        check_close(f2(g.p, k), g.f2);
        check_close(x1_N2(g.p, k), g.x1n2);
        check_close(x2_N2(g.p, k), g.x2n2);
        check_close(J1(g.p, k, 0.37), g.J1z037);
        check_close(J2(g.p, k, 0.37), g.J2z037);
    }
}

TEST_CASE("values at p = 0") {
    for (double kv : {0.2, 0.6, 0.909, 0.99}) {
        const Modulus k(kv);
        CHECK(f1(0.0, k) == 0.0);
        CHECK(x1_N1(0.0, k) == 0.0);
        CHECK(x2_N1(0.0, k) == 0.0);
        CHECK(f2(0.0, k) == 0.0);
        CHECK(x1_N2(0.0, k) == 0.0);
        CHECK(x2_N2(0.0, k) == 0.0);
        const JacobianCoeffs a = coeffs_N1(0.0, k);
        CHECK(a.c0 == 0.0);
        CHECK(a.c1 == 0.0);
        CHECK(a.c2 == 0.0);
    }
}

TEST_CASE("small-p asymptotics") {
    for (double kv : {0.3, 0.7}) {
        const Modulus k(kv);
        const double k2 = kv * kv, om = 1.0 - k2;
        // f1 = p^3/3 + o(p^3)
        CHECK(f1(1e-3, k) / (1e-9 / 3.0) == doctest::Approx(1.0).epsilon(1e-5));
        // x2 (N1) = (4/45) k^2 (1-k^2) p^6 + o(p^6)
        const double p6 = std::pow(0.05, 6);
        CHECK(x2_N1(0.05, k) / (4.0 / 45.0 * k2 * om * p6) ==
              doctest::Approx(1.0).epsilon(0.01));
        // x2 (N2) = (4/45) k^4 (1-k^2) p^6 + o(p^6)
        CHECK(x2_N2(0.05, k) / (4.0 / 45.0 * k2 * k2 * om * p6) ==
              doctest::Approx(1.0).epsilon(0.01));
        // f2 = k^4 p^3 / 3 + o(p^3)
        CHECK(f2(1e-3, k) / (k2 * k2 * 1e-9 / 3.0) == doctest::Approx(1.0).epsilon(1e-4));
        // x1 (N1) = (4/4725) k^2 (1-k^2) p^10 + o(p^10)
        const double p10 = std::pow(0.2, 10);
        CHECK(x1_N1(0.2, k) / (4.0 / 4725.0 * k2 * om * p10) ==
              doctest::Approx(1.0).epsilon(0.05));
    }
}

TEST_CASE("monotone-quotient derivative certificates") {
    for (double kv : {0.4, 0.8, 0.95}) {
        for (double p : {0.8, 1.7, 3.1}) {
            check_quotient_derivative("f1/cn", quot_f1, den_cn, cert_f1, p, kv);
            check_quotient_derivative("x2/(sn dn)", x2_N1, den_sndn, cert_x2_n1, p, kv);
            check_quotient_derivative("x1/(dn f1)", x1_N1, den_dnf1, cert_x1_n1, p, kv);
            check_quotient_derivative("f2/dn", f2, den_dn, cert_f2, p, kv);
            check_quotient_derivative("x2N2/(dn eps)", x2_N2, den_dneps, cert_x2_n2, p, kv);
        }
    }
}

TEST_CASE("x2 (N1) at p = 2Kn matches the cn * x4 evaluation") {
    for (double kv : {0.3, 0.8, 0.95}) {
        const Modulus k(kv);
        const double K = complete_K(k);
        for (int n : {1, 2}) {
            const double p = 2.0 * K * n;
            const double e = jacobi_epsilon(p, k);
            const double x4 = -((1.0 - kv * kv) * (e - p) * (e - p) + kv * kv * e * e);
            const double want = jacobi(p, k).cn * x4;
            CHECK(x2_N1(p, k) == doctest::Approx(want).epsilon(1e-10));
        }
    }
}

TEST_CASE("x1 (N2) at p = K: the cn-free reduction") {
    for (double kv : {0.3, 0.7, 0.95}) {
        const Modulus k(kv);
        const double K = complete_K(k);
        const double E = complete_E(k); // eps(K) = E(k)
        const double kp = k.complement();
        const double k2 = kv * kv;
        const double want = kp * (-3.0 * E * E + (2.0 - k2) * K * E + (1.0 - k2) * K * K);
        CHECK(x1_N2(K, k) == doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("f1 at p = K is sn dn > 0") {
    for (double kv : {0.2, 0.6, 0.95}) {
        const Modulus k(kv);
        CHECK(f1(complete_K(k), k) == doctest::Approx(k.complement()).epsilon(1e-13));
    }
}

TEST_CASE("positivity on the first sign interval") {
    for (double kv : {0.3, 0.6, 0.85}) { // k < k0: x1, x2 > 0 up to past 2K
        const Modulus k(kv);
        const double K = complete_K(k);
        for (int i = 1; i <= 40; ++i) {
            const double p = 2.0 * K * i / 40.0;
            CHECK(x2_N1(p, k) > 0.0);
            CHECK(x1_N1(p, k) > 0.0);
        }
    }
    for (double kv : {0.2, 0.5, 0.9, 0.99}) { // f2, x2 (N2) positive for all p > 0
        const Modulus k(kv);
        const double K = complete_K(k);
        for (int i = 1; i <= 60; ++i) {
            const double p = 6.0 * K * i / 60.0;
            CHECK(f2(p, k) > 0.0);
            CHECK(x2_N2(p, k) > 0.0);
        }
    }
}

TEST_CASE("x1 sign at f1 roots is opposite to cn") {
    // at p = p_n^1 the x1 value is pinned independently of the quotient
    // certificate; its sign there must be -sgn(cn)
    for (double kv : {0.4, 0.92, 0.99}) {
        const Modulus k(kv);
        for (int n : {1, 2, 3}) {
            const double p = root_p1(n, k);
            const double cn = jacobi(p, k).cn;
            INFO("k=" << kv << " n=" << n);
            CHECK(x1_N1(p, k) * cn < 0.0);
        }
    }
}

TEST_CASE("J1: representation equals the quadratic in z") {
    std::mt19937 rng(7u);
    std::uniform_real_distribution<double> up(0.05, 12.0), uk(0.05, 0.99), uz(0.0, 1.0);
    for (int i = 0; i < 1000; ++i) {
        const double p = up(rng), kv = uk(rng), z = uz(rng);
        const Modulus k(kv);
        const JacobianCoeffs a = coeffs_N1(p, k);
        const double poly = a.c0 + a.c1 * z + a.c2 * z * z;
        const double scale = std::max(1.0, std::abs(a.c0) + std::abs(a.c1) + std::abs(a.c2));
        CHECK(std::abs(J1(p, k, z) - poly) <= 1e-9 * scale);
    }
}

TEST_CASE("J1: endpoint values and the sum identity") {
    for (double kv : {0.4, 0.909, 0.97}) {
        const Modulus k(kv);
        for (double p : {0.9, 2.2, 5.1}) {
            const JacobianCoeffs a = coeffs_N1(p, k);
            CHECK(J1(p, k, 0.0) == doctest::Approx(a.c0).epsilon(1e-12));
            CHECK(J1(p, k, 1.0) == doctest::Approx(a.sum()).epsilon(1e-9));
            const double snp = jacobi(p, k).sn;
            const double scale = std::max(1.0, std::abs(a.c0) + std::abs(a.c1) + std::abs(a.c2));
            CHECK(std::abs(a.sum() - (1.0 - kv * kv) * snp * x1_N1(p, k)) <= 1e-12 * scale);
        }
        // p = 2K: the sum vanishes with sn
        const double p2K = 2.0 * complete_K(k);
        const JacobianCoeffs a = coeffs_N1(p2K, k);
        CHECK(std::abs(a.sum()) <= 1e-12 * std::max(1.0, std::abs(a.c0)));
    }
    CHECK_THROWS_AS(J1(1.0, Modulus(0.5), 1.5), std::domain_error);
    CHECK_THROWS_AS(J1(1.0, Modulus(0.5), -0.1), std::domain_error);
}

TEST_CASE("J1 > 0 on (0, 2K) for k < k0, any z") {
    for (double kv : {0.2, 0.5, 0.85}) {
        const Modulus k(kv);
        const double K = complete_K(k);
        for (int i = 1; i <= 30; ++i) {
            const double p = 2.0 * K * (i - 0.5) / 30.0;
            for (double z : {0.0, 0.25, 0.5, 0.75, 1.0})
                CHECK(J1(p, k, z) > 0.0);
        }
    }
}

TEST_CASE("full_jacobian_N1: sign is opposite to J1") {
    for (const Covector& lam : testutil::random_n1(10, 31u, 0.1, 0.95)) {
        for (double f : {0.3, 0.8, 1.2}) {
            const double t = f * period_N1(lam);
            const ReparamPoint rp = reparam_N1(lam, t);
            const double j1 = J1(rp.p, lam.modulus(), rp.z);
            const double J = full_jacobian_N1(lam, t);
            if (std::abs(j1) > 1e-12) CHECK(J * j1 < 0.0);
        }
    }
    CHECK_THROWS_AS(full_jacobian_N1(Covector::circle(1.0), 1.0), std::invalid_argument);
}

TEST_CASE("N2 coefficients: signs and the linear-in-z case at p = Kn") {
    for (double kv : {0.25, 0.6, 0.9}) {
        const Modulus k(kv);
        const double K = complete_K(k);
        for (double p : {0.7, 1.9, 4.4}) {
            const JacobianCoeffs c = coeffs_N2(p, k);
            CHECK(c.c0 < 0.0);
            CHECK(c.sum() < 0.0);
            CHECK(c.sum() == doctest::Approx((1.0 - kv * kv) * c.c0).epsilon(1e-12));
            CHECK(J2(p, k, 0.0) == doctest::Approx(c.c0).epsilon(1e-12));
            CHECK(J2(p, k, 1.0) == doctest::Approx((1.0 - kv * kv) * c.c0).epsilon(1e-9));
        }
        for (int n : {1, 2, 3}) { // c2 carries sn(p) cn(p), zero at p = Kn
            const JacobianCoeffs c = coeffs_N2(K * n, k);
            CHECK(std::abs(c.c2) <= 1e-11 * std::max(1.0, std::abs(c.c0)));
            for (double z : {0.0, 0.5, 1.0}) CHECK(J2(K * n, k, z) < 0.0);
        }
    }
}

TEST_CASE("J2 negativity grid: p in (0, 8K], z in {0,...,1}, all k") {
    for (double kv : {0.1, 0.3, 0.5, 0.7, 0.9, 0.99}) {
        const Modulus k(kv);
        const double K = complete_K(k);
        for (int i = 1; i <= 160; ++i) {
            const double p = 8.0 * K * i / 160.0;
            for (int zi = 0; zi <= 10; ++zi)
                CHECK(J2(p, k, zi / 10.0) < 0.0);
        }
    }
}

TEST_CASE("full_jacobian_N2 never vanishes and has constant sign") {
    for (const Covector& lam : testutil::random_n2(8, 17u)) {
        const double T = curvature_period(lam);
        for (double f : {0.2, 0.9, 2.3, 3.7}) {
            CHECK(full_jacobian_N2(lam, f * T) > 0.0); // -pref * (J2 < 0) > 0
        }
    }
    CHECK_THROWS_AS(full_jacobian_N2(Covector::line(), 1.0), std::invalid_argument);
}

TEST_CASE("eval_jacobian_numerator dispatch") {
    const Covector n1 = Covector::inflectional(0.5, 0.2, 1.0);
    const JacobianEval e1 = eval_jacobian_numerator(n1, 2.0);
    CHECK(e1.stratum == JacobianStratum::N1);
    CHECK(e1.p == doctest::Approx(1.0));
    const Covector n2 = Covector::noninflectional(0.5, 0.2, 1.0);
    CHECK(eval_jacobian_numerator(n2, 2.0).stratum == JacobianStratum::N2);
    CHECK_THROWS_AS(eval_jacobian_numerator(Covector::line(), 1.0), std::invalid_argument);
}
