#include "qsd/enhancement.hpp"
#include "qsd/noncontextual_bounds.hpp"
#include "qsd/quantum_optimal.hpp"
#include "qsd/qubit_algebra.hpp"
#include "qsd/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitFailedCheck = 1;
constexpr int kExitDomain = 2;
constexpr int kExitIo = 3;

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

/// Relative output paths land in QSD_OUT_DIR when it is set.
std::filesystem::path resolve_out(const std::string& path) {
    std::filesystem::path p(path);
    const char* dir = std::getenv("QSD_OUT_DIR");
    if (dir != nullptr && *dir != '\0' && p.is_relative()) {
        return std::filesystem::path(dir) / p;
    }
    return p;
}

/// Writes to --out (or stdout when empty); exits with kExitIo on failure.
int emit(const std::string& out_path, const std::string& payload) {
    if (out_path.empty()) {
        std::cout << payload;
        return kExitOk;
    }
    const auto path = resolve_out(out_path);
    std::ofstream f(path);
    if (!f) {
        std::cerr << "error: cannot open output file " << path.string() << "\n";
        return kExitIo;
    }
    f << payload;
    if (!f.good()) {
        std::cerr << "error: write failed for " << path.string() << "\n";
        return kExitIo;
    }
    return kExitOk;
}

qsd::Range parse_range(const std::string& text, const char* flag) {
    qsd::Range r;
    char extra = 0;
    if (std::sscanf(text.c_str(), "%lf:%lf:%d%c", &r.lo, &r.hi, &r.count, &extra) != 3) {
        throw std::domain_error(std::string(flag) + " must have the form lo:hi:count");
    }
    if (r.count < 1) {
        throw std::domain_error(std::string(flag) + " count must be positive");
    }
    return r;
}

const char* quantum_regime_name(qsd::QuantumRegime r) {
    return r == qsd::QuantumRegime::InterpolatedFormula ? "interpolated" : "waste";
}

const char* nc_regime_name(qsd::NcRegime r) {
    return r == qsd::NcRegime::CandidateMax ? "candidate_max" : "one_minus_q";
}

json matrix_json(const qsd::HermitianOp& h) {
    const qsd::Mat2& m = h.matrix();
    return json{
        {"re", {{m.a00.real(), m.a01.real()}, {m.a10.real(), m.a11.real()}}},
        {"im", {{m.a00.imag(), m.a01.imag()}, {m.a10.imag(), m.a11.imag()}}},
    };
}

struct BoundFlags {
    double q1 = 0.5, c = 0.5, Q = 0.0;
    std::optional<double> eps;
    std::string format = "csv";
    std::string out;
};

int cmd_bound(const BoundFlags& f) {
    const qsd::DiscriminationInstance inst(f.q1, f.c);
    double quantum, nc;
    qsd::QuantumRegime qreg;
    qsd::NcRegime nreg;
    if (f.eps) {
        const qsd::NoisyInstance noisy(inst, *f.eps);
        const qsd::QuantumResult qr = qsd::mixed_quantum_success(noisy, f.Q);
        const qsd::NcBoundResult nr = qsd::nc_bound_noisy(noisy, f.Q);
        quantum = qr.success;
        nc = nr.value;
        qreg = qr.regime;
        nreg = nr.regime;
    } else {
        const qsd::QuantumResult qr = qsd::quantum_success_closed(inst, f.Q);
        const qsd::NcBoundResult nr = qsd::nc_bound_pure(inst, f.Q);
        quantum = qr.success;
        nc = nr.value;
        qreg = qr.regime;
        nreg = nr.regime;
    }
    const double gap_v = quantum - nc;
    const bool enhanced = gap_v >= -qsd::kEnhancedTol;

    std::ostringstream os;
    if (f.format == "json") {
        json j{{"q1", f.q1},        {"c", f.c},
               {"eps", f.eps ? json(*f.eps) : json(nullptr)},
               {"Q", f.Q},          {"quantum", quantum},
               {"nc_bound", nc},    {"gap", gap_v},
               {"enhanced", enhanced},
               {"quantum_regime", quantum_regime_name(qreg)},
               {"nc_regime", nc_regime_name(nreg)}};
        os << j.dump() << "\n";
    } else {
        os << "q1,c,eps,Q,quantum,nc_bound,gap,enhanced,quantum_regime,nc_regime\n";
        os << fmt(f.q1) << ',' << fmt(f.c) << ',' << (f.eps ? fmt(*f.eps) : "") << ','
           << fmt(f.Q) << ',' << fmt(quantum) << ',' << fmt(nc) << ',' << fmt(gap_v) << ','
           << (enhanced ? 1 : 0) << ',' << quantum_regime_name(qreg) << ','
           << nc_regime_name(nreg) << "\n";
    }
    return emit(f.out, os.str());
}

struct RegionFlags {
    double q1 = 0.5, c = 0.5;
    std::optional<double> eps;
    double tol = 1e-8;
    double grid_step = 1e-3;
    std::string format = "csv";
    std::string out;
};

int cmd_region(const RegionFlags& f) {
    const qsd::DiscriminationInstance inst(f.q1, f.c);
    qsd::RegionReport report;
    if (f.eps) {
        if (!(f.grid_step > 0.0 && f.grid_step <= 0.1)) {
            throw std::domain_error("grid-step must lie in (0, 0.1]");
        }
        const int count = static_cast<int>(std::lround(1.0 / f.grid_step)) + 1;
        const auto swept =
            qsd::mixed_sweep(f.c, qsd::Range{*f.eps, *f.eps, 1}, qsd::Range{0.0, 1.0, count});
        report = swept.regions.front().second;
    } else {
        report = qsd::non_enhancement_interval(inst, f.tol);
    }

    std::ostringstream os;
    if (f.format == "json") {
        json intervals = json::array();
        for (const auto& [lo, hi] : report.intervals) intervals.push_back({lo, hi});
        os << json{{"intervals", intervals}, {"analytic_upper_hint", report.analytic_upper_hint}}.dump()
           << "\n";
    } else {
        for (const auto& [lo, hi] : report.intervals) {
            os << '[' << fmt(lo) << ", " << fmt(hi) << "]\n";
        }
        if (report.intervals.empty()) os << "none\n";
        os << "analytic_upper_hint " << fmt(report.analytic_upper_hint) << "\n";
    }
    return emit(f.out, os.str());
}

struct SweepFlags {
    std::string q1_range, eps_range, q_range;
    double c = 0.5;
    std::string out;
};

void append_rows(std::ostringstream& os, const std::vector<qsd::SweepRow>& rows) {
    os << "q1,c,eps,Q,quantum,nc_bound,gap,enhanced\n";
    for (const auto& r : rows) {
        os << fmt(r.q1) << ',' << fmt(r.c) << ',' << (r.has_eps ? fmt(r.eps) : "") << ','
           << fmt(r.q_fail) << ',' << fmt(r.quantum) << ',' << fmt(r.nc_bound) << ','
           << fmt(r.gap) << ',' << (r.enhanced ? 1 : 0) << "\n";
    }
}

int cmd_sweep(const SweepFlags& f) {
    if (f.q_range.empty() || (f.q1_range.empty() == f.eps_range.empty())) {
        throw std::domain_error("sweep needs --Q-range and exactly one of --q1-range / --eps-range");
    }
    const qsd::Range q_range = parse_range(f.q_range, "--Q-range");
    std::ostringstream os;
    if (!f.q1_range.empty()) {
        append_rows(os, qsd::sweep(parse_range(f.q1_range, "--q1-range"), q_range, f.c));
    } else {
        const auto swept = qsd::mixed_sweep(f.c, parse_range(f.eps_range, "--eps-range"), q_range);
        append_rows(os, swept.rows);
    }
    return emit(f.out, os.str());
}

struct PovmFlags {
    double q1 = 0.5, c = 0.5, Q = 0.0;
    std::optional<double> eps;
    qsd::SearchConfig search;
    std::string out;
};

int cmd_povm(const PovmFlags& f) {
    const qsd::DiscriminationInstance inst(f.q1, f.c);
    const qsd::PureStatePair pair = qsd::make_state_pair(f.c);
    const auto [rho1, rho2] = qsd::depolarize(pair, f.eps ? *f.eps : 1.0);
    if (f.eps && std::abs(f.q1 - 0.5) > 1e-12) {
        throw std::domain_error("q1 must equal 0.5 for noisy instances");
    }
    const qsd::PovmOracleResult res = qsd::povm_oracle(rho1, rho2, f.q1, f.Q, f.search);
    const qsd::PovmDiagnostics diag = qsd::validate_povm(res.povm);

    json j{{"m0", matrix_json(res.povm.m0)},
           {"m1", matrix_json(res.povm.m1)},
           {"m2", matrix_json(res.povm.m2)},
           {"achieved_q", res.achieved_q},
           {"success", res.success},
           {"iterations", res.iterations},
           {"diagnostics",
            json{{"min_eigenvalues", diag.min_eigenvalues},
                 {"completeness_residual", diag.completeness_residual},
                 {"pass", diag.pass}}}};
    return emit(f.out, j.dump(2) + "\n");
}

int cmd_verify(bool fast) {
    const auto results = qsd::run_acceptance_checks(qsd::VerifyOptions{fast});
    bool all_pass = true;
    for (const auto& r : results) {
        const char* tag = r.skipped ? "[SKIP]" : (r.pass ? "[PASS]" : "[FAIL]");
        std::cout << tag << ' ' << r.index << ". " << r.name;
        if (!r.detail.empty()) std::cout << ": " << r.detail;
        if (!r.skipped) std::cout << " (" << fmt(r.seconds) << "s)";
        std::cout << "\n";
        if (!r.skipped && !r.pass) all_pass = false;
    }
    std::cout << (all_pass ? "all checks passed\n" : "some checks failed\n");
    return all_pass ? kExitOk : kExitFailedCheck;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Two-state discrimination bounds at fixed failure probability"};
    app.require_subcommand(1);

    BoundFlags bound;
    auto* sb = app.add_subcommand("bound", "Evaluate the quantum optimum and the noncontextual bound");
    sb->add_option("--q1", bound.q1, "Prior probability of state 1")->required();
    sb->add_option("--c", bound.c, "Confusability")->required();
    sb->add_option("--Q", bound.Q, "Fixed failure probability")->required();
    sb->add_option("--eps", bound.eps, "Depolarizing noise strength (noisy path)");
    sb->add_option("--format", bound.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sb->add_option("--out", bound.out, "Output file (default stdout)");

    RegionFlags region;
    auto* sr = app.add_subcommand("region", "Locate non-enhancement intervals of Q");
    sr->add_option("--q1", region.q1, "Prior probability of state 1")->required();
    sr->add_option("--c", region.c, "Confusability")->required();
    sr->add_option("--eps", region.eps, "Depolarizing noise strength (grid-based mixed path)");
    sr->add_option("--tol", region.tol, "Bisection tolerance (pure path)");
    sr->add_option("--grid-step", region.grid_step, "Q grid step (mixed path)");
    sr->add_option("--format", region.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sr->add_option("--out", region.out, "Output file (default stdout)");

    SweepFlags sweep_flags;
    auto* ss = app.add_subcommand("sweep", "Tabulate gap profiles over a parameter grid");
    ss->add_option("--q1-range", sweep_flags.q1_range, "lo:hi:count (pure sweep)");
    ss->add_option("--eps-range", sweep_flags.eps_range, "lo:hi:count (mixed sweep, q1=0.5)");
    ss->add_option("--Q-range", sweep_flags.q_range, "lo:hi:count")->required();
    ss->add_option("--c", sweep_flags.c, "Confusability")->required();
    ss->add_option("--out", sweep_flags.out, "Output CSV file (default stdout)");

    PovmFlags povm;
    auto* sp = app.add_subcommand("povm", "Extract the optimizing POVM as JSON");
    sp->add_option("--q1", povm.q1, "Prior probability of state 1")->required();
    sp->add_option("--c", povm.c, "Confusability")->required();
    sp->add_option("--Q", povm.Q, "Fixed failure probability")->required();
    sp->add_option("--eps", povm.eps, "Depolarizing noise strength");
    sp->add_option("--theta-points", povm.search.theta_points, "Angle grid resolution");
    sp->add_option("--weight-points", povm.search.weight_points, "Eigenvalue grid resolution");
    sp->add_option("--refine", povm.search.refine_rounds, "Pattern-search refinement rounds");
    sp->add_option("--out", povm.out, "Output file (default stdout)");

    bool fast = false;
    auto* sv = app.add_subcommand("verify", "Run the acceptance checks");
    sv->add_flag("--fast", fast, "Skip POVM-oracle-heavy checks");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sb->parsed()) return cmd_bound(bound);
        if (sr->parsed()) return cmd_region(region);
        if (ss->parsed()) return cmd_sweep(sweep_flags);
        if (sp->parsed()) return cmd_povm(povm);
        if (sv->parsed()) return cmd_verify(fast);
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
