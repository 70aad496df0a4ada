// Command-line surface for the elastica library.
//
// Subcommands: elliptic, roots, conjugate, scan, crosscheck, classify, plot.
// Exit codes: 0 success, 1 usage error, 2 numerical failure, 3 oracle
// mismatch. All outputs are deterministic for identical flags and seed.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "elastica/conjugate.hpp"
#include "elastica/elastica_arc.hpp"
#include "elastica/io.hpp"
#include "elastica/jacobian.hpp"
#include "elastica/oracle.hpp"
#include "elastica/roots.hpp"
#include "elastica/sampling.hpp"
#include "elastica/strata.hpp"

namespace {

using namespace elastica;

constexpr int exit_ok = 0;
constexpr int exit_usage = 1;
constexpr int exit_numerical = 2;
constexpr int exit_mismatch = 3;

double env_tolerance(double fallback) {
    if (const char* s = std::getenv("ELASTICA_TOL")) {
        char* end = nullptr;
        const double v = std::strtod(s, &end);
        if (end != s && v > 0.0) return v;
    }
    return fallback;
}

/// Sink that writes either to stdout or to --out.
void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream os(out_path, std::ios::binary);
    if (!os) throw std::runtime_error("cannot open output file " + out_path);
    os << text;
}

struct CovectorFlags {
    std::string stratum = "n1";
    double k = 0.5;
    double phase = 0.0;
    double r = 1.0;

    void attach(CLI::App* cmd) {
        cmd->add_option("--stratum", stratum, "stratum: n1, n2+, n2-, n3, n6, line")
            ->check(CLI::IsMember({"n1", "n2+", "n2-", "n3", "n6", "line"}));
        cmd->add_option("--k", k, "elliptic modulus (N1, N2)");
        cmd->add_option("--phase", phase, "phase phi (N1, N3) or psi (N2)");
        cmd->add_option("--r", r, "energy scale, > 0")->check(CLI::PositiveNumber);
    }

    Covector build() const {
        if (stratum == "n1") return Covector::inflectional(k, phase, r);
        if (stratum == "n2+") return Covector::noninflectional(k, phase, r, true);
        if (stratum == "n2-") return Covector::noninflectional(k, phase, r, false);
        if (stratum == "n3") return Covector::critical(phase, r);
        if (stratum == "n6") return Covector::circle(r);
        return Covector::line();
    }
};

std::string dump(const nlohmann::ordered_json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------

int run_elliptic(double* K_at, double* E_at, double* sn_at, double* cn_at,
                 double* dn_at, double* eps_at, bool k0_flag, double k_value,
                 const std::string& out) {
    nlohmann::ordered_json j;
    const Modulus k(k_value);
    if (K_at) j["K"] = complete_K(Modulus(*K_at));
    if (E_at) j["E"] = complete_E(Modulus(*E_at));
    if (sn_at) j["sn"] = jacobi(*sn_at, k).sn;
    if (cn_at) j["cn"] = jacobi(*cn_at, k).cn;
    if (dn_at) j["dn"] = jacobi(*dn_at, k).dn;
    if (eps_at) j["eps"] = jacobi_epsilon(*eps_at, k);
    if (k0_flag) j["k0"] = find_k0().value();
    if (j.empty()) {
        std::cerr << "elliptic: nothing requested (try --K, --sn, --k0 ...)\n";
        return exit_usage;
    }
    emit(dump(j), out);
    return exit_ok;
}

int run_roots(const std::string& kind, double k_value, int n, int n_max,
              bool kbar_flag, const std::string& out) {
    if (kbar_flag) {
        nlohmann::ordered_json j;
        const Modulus kbar = find_kbar();
        j["kbar"] = kbar.value();
        j["residual"] = root_px1(1, kbar) - 2.0 * complete_K(kbar);
        emit(dump(j), out);
        return exit_ok;
    }
    RootKind rk;
    if (kind == "p1")
        rk = RootKind::P1;
    else if (kind == "px1")
        rk = RootKind::PX1;
    else if (kind == "px2")
        rk = RootKind::PX2;
    else {
        std::cerr << "roots: --kind must be p1, px1 or px2\n";
        return exit_usage;
    }
    const RootTable table = root_table(rk, Modulus(k_value), n > 0 ? n : n_max);
    std::ostringstream os;
    if (n > 0) {
        write_root_table_csv(os, RootTable{table.kind, table.k, {table.entries.back()}});
    } else {
        write_root_table_csv(os, table);
    }
    emit(os.str(), out);
    return exit_ok;
}

int run_conjugate(const CovectorFlags& cov, std::optional<double> t_opt, bool morse,
                  const std::string& out) {
    const Covector lam = cov.build();
    ConjugateResult res = t1conj(lam);
    std::optional<int> morse_idx;
    if (morse) {
        if (!t_opt) {
            std::cerr << "conjugate: --morse requires --t\n";
            return exit_usage;
        }
        morse_idx = morse_index(lam, *t_opt);
        res.count_up_to = {{*t_opt, *morse_idx}};
    }
    emit(dump(conjugate_result_json(lam, res, morse_idx)), out);
    return exit_ok;
}

int run_scan(double k_min, double k_max, int k_steps, int tau_steps,
             const std::string& out) {
    std::ostringstream os;
    os.precision(17);
    os << "k,tau,p1conj\n";
    for (int i = 0; i < k_steps; ++i) {
        const double kv = (k_steps == 1) ? k_min
                                         : k_min + (k_max - k_min) * i / (k_steps - 1);
        const Modulus k(kv);
        const double K = complete_K(k);
        for (int jt = 0; jt <= tau_steps; ++jt) {
            const double tau = K * jt / tau_steps;
            const double sn = jacobi(tau, k).sn;
            const double pconj = p1conj_fixed_z(k, std::min(1.0, sn * sn));
            os << kv << ',' << tau << ',' << pconj << '\n';
        }
    }
    emit(os.str(), out);
    return exit_ok;
}

int run_crosscheck(const std::string& stratum, int count, unsigned seed,
                   double tmax_periods, double k_min, double k_max,
                   const std::string& det_csv, const std::string& out) {
    std::vector<Covector> set;
    if (stratum == "n1") {
        set = sample_inflectional(count, seed, k_min, k_max);
    } else if (stratum == "n2") {
        set = sample_noninflectional(count, seed, k_min, k_max);
    } else {
        std::cerr << "crosscheck: --stratum must be n1 or n2\n";
        return exit_usage;
    }
    const double ode_tol = env_tolerance(1e-12);
    nlohmann::ordered_json reports = nlohmann::ordered_json::array();
    bool all_clean = true;
    double worst = 0.0;
    for (const Covector& lam : set) {
        const double T = curvature_period(lam);
        const double t_max = tmax_periods * T;
        const CrosscheckReport rep = crosscheck(lam, t_max, 192, 1e-5, ode_tol);
        const double tol = 1e-4 * T;
        all_clean = all_clean && rep.clean(tol);
        if (rep.unpaired == 0) worst = std::max(worst, rep.max_mismatch / T);
        reports.push_back(crosscheck_report_json(rep, tol));
    }
    if (!det_csv.empty()) {
        // (t, det) samples of the first covector, for plotting or inspection
        std::ofstream os(det_csv, std::ios::binary);
        if (!os) throw std::runtime_error("cannot open " + det_csv);
        os << "t,det\n";
        os.precision(17);
        const Covector& lam = set.front();
        const double t_max = tmax_periods * curvature_period(lam);
        for (int i = 1; i <= 192; ++i) {
            const double t = t_max * i / 192.0;
            os << t << ',' << exp_jacobian_fd(lam, t, 1e-5, ode_tol) << '\n';
        }
    }
    nlohmann::ordered_json j;
    j["seed"] = seed;
    j["count"] = count;
    j["stratum"] = stratum;
    j["tmax_periods"] = tmax_periods;
    j["worst_relative_mismatch"] = worst;
    j["clean"] = all_clean;
    j["reports"] = reports;
    emit(dump(j), out);
    return all_clean ? exit_ok : exit_mismatch;
}

int run_classify(const CovectorFlags& cov, double t, const std::string& out) {
    const Covector lam = cov.build();
    const StabilityVerdict v = classify_stability(lam, t);
    const InflectionCount infl = count_inflections(ElasticaArc{lam, t, {}});
    emit(dump(verdict_json(lam, t, v, infl)), out);
    return exit_ok;
}

int run_plot(const CovectorFlags& cov, double t, int samples, const std::string& out) {
    if (out.empty()) {
        std::cerr << "plot: --out <file.svg> is required\n";
        return exit_usage;
    }
    const Covector lam = cov.build();
    const double ode_tol = env_tolerance(1e-10);
    const ElasticaArc arc = sample_arc(lam, t, samples, ode_tol);
    std::vector<PlotMarker> markers;
    if (lam.stratum == Stratum::N1) {
        const double sr = std::sqrt(lam.r);
        const double K = complete_K(lam.modulus());
        const double u0 = sr * lam.phase;
        for (long m = static_cast<long>(std::floor((u0 - K) / (2.0 * K))) - 1;; ++m) {
            const double s = ((2.0 * m + 1.0) * K - u0) / sr;
            if (s < 0.0) continue;
            if (s > t) break;
            markers.push_back({PlotMarker::Kind::Inflection, s});
        }
        const ConjugateResult conj = t1conj(lam);
        if (conj.first_time && *conj.first_time <= t)
            markers.push_back({PlotMarker::Kind::Conjugate, *conj.first_time});
    }
    emit_plot(arc, markers, out);
    return exit_ok;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"conjugate points, stability verdicts, and cut-time bounds for Euler elasticae"};
    app.require_subcommand(1);
    std::string out;
    app.add_option("--out", out, "output file (default: stdout)")->capture_default_str();

    // elliptic
    auto* c_ell = app.add_subcommand("elliptic", "evaluate K, E, sn, cn, dn, eps; print k0");
    std::optional<double> K_at, E_at, sn_at, cn_at, dn_at, eps_at;
    bool k0_flag = false;
    double ell_k = 0.5;
    c_ell->add_option("--K", K_at, "K(k) at this modulus");
    c_ell->add_option("--E", E_at, "E(k) at this modulus");
    c_ell->add_option("--sn", sn_at, "sn(u, k) at this u");
    c_ell->add_option("--cn", cn_at, "cn(u, k) at this u");
    c_ell->add_option("--dn", dn_at, "dn(u, k) at this u");
    c_ell->add_option("--eps", eps_at, "Jacobi epsilon at this u");
    c_ell->add_option("--k", ell_k, "modulus for sn/cn/dn/eps");
    c_ell->add_flag("--k0", k0_flag, "print the root of 2E(k) = K(k)");

    // roots
    auto* c_roots = app.add_subcommand("roots", "bracketed root tables for f1, x1, x2");
    std::string kind = "p1";
    double roots_k = 0.5;
    int n = 0, n_max = 4;
    bool kbar_flag = false;
    c_roots->add_option("--kind", kind, "family: p1, px1, px2");
    c_roots->add_option("--k", roots_k, "modulus");
    c_roots->add_option("--n", n, "single root index (n >= 1)");
    c_roots->add_option("--n-max", n_max, "table size when --n is absent");
    c_roots->add_flag("--kbar", kbar_flag, "print the modulus where p_1^x1 = 2K");

    // conjugate
    auto* c_conj = app.add_subcommand("conjugate", "first conjugate time and Morse index");
    CovectorFlags conj_cov;
    conj_cov.attach(c_conj);
    std::optional<double> conj_t;
    bool morse = false;
    c_conj->add_option("--t", conj_t, "horizon for --morse");
    c_conj->add_flag("--morse", morse, "count conjugate times in (0, t)");

    // scan
    auto* c_scan = app.add_subcommand("scan", "CSV grid of p1conj over (k, tau in [0, K])");
    double k_min = 0.5, k_max = 0.5;
    int k_steps = 1, tau_steps = 16;
    c_scan->add_option("--k", k_min, "single modulus (sets --k-min = --k-max)");
    c_scan->add_option("--k-min", k_min, "grid start");
    c_scan->add_option("--k-max", k_max, "grid end");
    c_scan->add_option("--k-steps", k_steps, "grid size in k");
    c_scan->add_option("--tau-steps", tau_steps, "grid size in tau");

    // crosscheck; the defaults are exactly the acceptance-suite test set
    auto* c_cross = app.add_subcommand("crosscheck",
                                       "closed form vs finite-difference determinant");
    std::string cross_stratum = "n1";
    int cross_count = 20;
    unsigned seed = 60608u;
    double tmax_periods = 1.5;
    double cross_k_min = 0.1, cross_k_max = 0.95;
    std::string det_csv;
    c_cross->add_option("--stratum", cross_stratum, "n1 or n2");
    c_cross->add_option("--count", cross_count, "number of random covectors");
    c_cross->add_option("--seed", seed, "RNG seed for the covector set");
    c_cross->add_option("--tmax-periods", tmax_periods, "horizon in curvature periods");
    c_cross->add_option("--k-min", cross_k_min, "modulus range start");
    c_cross->add_option("--k-max", cross_k_max, "modulus range end");
    c_cross->add_option("--det-csv", det_csv, "write (t, det) samples of the first covector");

    // classify
    auto* c_cls = app.add_subcommand("classify", "stability verdict for an arc");
    CovectorFlags cls_cov;
    cls_cov.attach(c_cls);
    double cls_t = 1.0;
    c_cls->add_option("--t", cls_t, "arc length")->required();

    // plot
    auto* c_plot = app.add_subcommand("plot", "SVG of the elastica with markers");
    CovectorFlags plot_cov;
    plot_cov.attach(c_plot);
    double plot_t = 1.0;
    int plot_samples = 256;
    c_plot->add_option("--t", plot_t, "arc length")->required();
    c_plot->add_option("--samples", plot_samples, "polyline samples");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (*c_ell)
            return run_elliptic(K_at ? &*K_at : nullptr, E_at ? &*E_at : nullptr,
                                sn_at ? &*sn_at : nullptr, cn_at ? &*cn_at : nullptr,
                                dn_at ? &*dn_at : nullptr, eps_at ? &*eps_at : nullptr,
                                k0_flag, ell_k, out);
        if (*c_roots) return run_roots(kind, roots_k, n, n_max, kbar_flag, out);
        if (*c_conj) return run_conjugate(conj_cov, conj_t, morse, out);
        if (*c_scan) {
            if (c_scan->count("--k") && !c_scan->count("--k-max")) k_max = k_min;
            return run_scan(k_min, k_max, k_steps, tau_steps, out);
        }
        if (*c_cross)
            return run_crosscheck(cross_stratum, cross_count, seed, tmax_periods,
                                  cross_k_min, cross_k_max, det_csv, out);
        if (*c_cls) return run_classify(cls_cov, cls_t, out);
        if (*c_plot) return run_plot(plot_cov, plot_t, plot_samples, out);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return exit_numerical;
    }
    return exit_usage;
}
