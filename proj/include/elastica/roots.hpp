// Bracketed root tables for f1, x2, x1 on the N1 stratum and the constants
// k0, kbar.
//
// Each family is bisected on a quotient with a monotonicity certificate:
//   p_n^1   : f1 / cn        increases on ((2n-1)K, (2n+1)K)
//   p_n^x2  : x2 / (sn dn)   increases on (2Kn, 2Kn + 2K)
//   p_n^x1  : x1 / (dn f1)   increases on (p_n^1, p_{n+1}^1)
// so a plain bisection inside the shrunk bracket is a certificate of
// existence and uniqueness. Brackets are shrunk by delta = 1e-9 * K from
// singular endpoints.

#pragma once

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "elastica/elliptic.hpp"
#include "elastica/jacobian.hpp"

namespace elastica {

namespace detail {

/// Bisection to floating-point bracket resolution; f(lo) and f(hi) must
/// have opposite signs. At most 200 iterations (a ~2-wide bracket reaches
/// the 1e-12 width target in under 60).
template <class F>
double bisect(F&& f, double lo, double hi, const char* what) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0))
        throw std::logic_error(std::string(what) + ": bracket does not straddle a sign change");
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

} // namespace detail

/// n-th positive root of f1, located in ((2n-1)K, (2n+1)K).
inline double root_p1(int n, const Modulus& k) {
    if (n < 1) throw std::domain_error("root_p1: n must be >= 1");
    const double K = complete_K(k);
    const double delta = 1e-9 * K;
    const double lo = (2.0 * n - 1.0) * K + delta;
    const double hi = (2.0 * n + 1.0) * K - delta;
    auto quot = [&](double p) { return f1(p, k) / jacobi(p, k).cn; };
    return detail::bisect(quot, lo, hi, "root_p1");
}

/// n-th positive root of x2, located in (2Kn, 2Kn + K).
inline double root_px2(int n, const Modulus& k) {
    if (n < 1) throw std::domain_error("root_px2: n must be >= 1");
    const double K = complete_K(k);
    const double delta = 1e-9 * K;
    const double lo = 2.0 * n * K + delta;
    const double hi = (2.0 * n + 1.0) * K;
    auto quot = [&](double p) {
        const JacobiTriple j = jacobi(p, k);
        return x2_N1(p, k) / (j.sn * j.dn);
    };
    return detail::bisect(quot, lo, hi, "root_px2");
}

/// n-th positive root of x1, located in (p_n^1, p_{n+1}^1).
inline double root_px1(int n, const Modulus& k) {
    if (n < 1) throw std::domain_error("root_px1: n must be >= 1");
    const double delta = 1e-9 * complete_K(k);
    const double lo = root_p1(n, k) + delta;
    const double hi = root_p1(n + 1, k) - delta;
    auto quot = [&](double p) { return x1_N1(p, k) / (jacobi(p, k).dn * f1(p, k)); };
    return detail::bisect(quot, lo, hi, "root_px1");
}

/// The modulus kbar where p_1^x1 = 2K; for k < kbar the x1 root lies past
/// 2K, for k > kbar before it. The difference p_1^x1 - 2K changes sign
/// exactly once on (0.9, 0.9995), which brackets the bisection.
inline Modulus find_kbar() {
    auto g = [](double k) {
        Modulus m(k);
        return root_px1(1, m) - 2.0 * complete_K(m);
    };
    const double root = detail::bisect(g, 0.9, 0.9995, "find_kbar");
    return Modulus(root);
}

enum class RootKind { P1, PX1, PX2 };

inline const char* to_string(RootKind kind) {
    switch (kind) {
        case RootKind::P1: return "p1";
        case RootKind::PX1: return "px1";
        case RootKind::PX2: return "px2";
    }
    return "?";
}

struct RootEntry {
    int n;
    double lo, hi; // certified enclosing bracket
    double root;
};

struct RootTable {
    RootKind kind;
    double k;
    std::vector<RootEntry> entries; // strictly increasing in n
};

/// Table of the first n_max roots of one family, with certified brackets.
inline RootTable root_table(RootKind kind, const Modulus& k, int n_max) {
    if (n_max < 1) throw std::domain_error("root_table: n_max must be >= 1");
    RootTable table{kind, k.value(), {}};
    const double K = complete_K(k);
    for (int n = 1; n <= n_max; ++n) {
        RootEntry e{n, 0.0, 0.0, 0.0};
        switch (kind) {
            case RootKind::P1:
                e.lo = (2.0 * n - 1.0) * K;
                e.hi = (2.0 * n + 1.0) * K;
                e.root = root_p1(n, k);
                break;
            case RootKind::PX2:
                e.lo = 2.0 * n * K;
                e.hi = (2.0 * n + 1.0) * K;
                e.root = root_px2(n, k);
                break;
            case RootKind::PX1:
                e.lo = root_p1(n, k);
                e.hi = root_p1(n + 1, k);
                e.root = root_px1(n, k);
                break;
        }
        table.entries.push_back(e);
    }
    return table;
}

inline void write_root_table_csv(std::ostream& os, const RootTable& table) {
    os << "kind,n,k,lo,hi,root\n";
    os.precision(17);
    for (const RootEntry& e : table.entries)
        os << to_string(table.kind) << ',' << e.n << ',' << table.k << ','
           << e.lo << ',' << e.hi << ',' << e.root << '\n';
}

} // namespace elastica
