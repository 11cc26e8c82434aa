#include "qsd/verify.hpp"

#include "qsd/enhancement.hpp"
#include "qsd/noncontextual_bounds.hpp"
#include "qsd/quantum_optimal.hpp"
#include "qsd/qubit_algebra.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace qsd {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", v);
    return buf;
}

struct IntervalTarget {
    double lo, lo_tol;
    double hi_lo, hi_hi;  // accepted band for the upper endpoint
};

/// Checks that the report holds exactly one interval matching the target.
bool check_interval(const RegionReport& report, const IntervalTarget& t, std::ostringstream& msg) {
    if (report.intervals.size() != 1) {
        msg << "expected one interval, got " << report.intervals.size() << "; ";
        return false;
    }
    const auto [lo, hi] = report.intervals.front();
    bool ok = true;
    if (std::abs(lo - t.lo) > t.lo_tol) {
        msg << "lower endpoint " << fmt(lo) << " outside " << fmt(t.lo) << " +- " << fmt(t.lo_tol) << "; ";
        ok = false;
    } else {
        msg << "lower " << fmt(lo) << " ok; ";
    }
    if (hi < t.hi_lo || hi > t.hi_hi) {
        msg << "upper endpoint " << fmt(hi) << " outside [" << fmt(t.hi_lo) << ", " << fmt(t.hi_hi) << "]; ";
        ok = false;
    } else {
        msg << "upper " << fmt(hi) << " ok; ";
    }
    return ok;
}

CheckResult check_1() {
    CheckResult r{1, "non-enhancement interval, equal priors, c=0.6", false, false, "", 0.0};
    std::ostringstream msg;
    const auto report = non_enhancement_interval(DiscriminationInstance(0.5, 0.6), 1e-8);
    r.pass = check_interval(report, {0.245, 0.003, 0.7736, 0.7747}, msg);
    r.detail = msg.str();
    return r;
}

CheckResult check_2() {
    CheckResult r{2, "non-enhancement interval, q1=0.8, c=0.6", false, false, "", 0.0};
    std::ostringstream msg;
    const auto report = non_enhancement_interval(DiscriminationInstance(0.8, 0.6), 1e-8);
    r.pass = check_interval(report, {0.114, 0.004, 0.6197 - 0.003, 0.6197 + 0.003}, msg);
    if (!r.pass) {
        msg << "(the bound's candidate crossover sits at Q=0.1145 but the gap is already "
               "negative from Q~0.036, where the closed-form quantum optimum crosses the "
               "1-q2*c-(1-c)Q candidate)";
    }
    r.detail = msg.str();
    return r;
}

CheckResult check_3() {
    CheckResult r{3, "non-enhancement intervals, c=0.4 and c=0.8", false, false, "", 0.0};
    std::ostringstream msg;
    const auto rep4 = non_enhancement_interval(DiscriminationInstance(0.5, 0.4), 1e-8);
    const auto rep8 = non_enhancement_interval(DiscriminationInstance(0.5, 0.8), 1e-8);
    msg << "c=0.4: ";
    const bool ok4 = check_interval(rep4, {0.145, 0.003, 0.6325 - 0.003, 0.6325 + 0.003}, msg);
    msg << "c=0.8: ";
    const bool ok8 = check_interval(rep8, {0.288, 0.003, 0.8944 - 0.003, 0.8944 + 0.003}, msg);
    r.pass = ok4 && ok8;
    r.detail = msg.str();
    return r;
}

CheckResult check_4() {
    CheckResult r{4, "pure bound closed form vs split-scan oracle (1000 random)", false, false, "", 0.0};
    std::mt19937_64 rng(411001);
    std::uniform_real_distribution<double> uq1(0.05, 0.95), uc(0.02, 0.98), uQ(0.0, 1.0);
    double max_diff = 0.0;
    int violations = 0;
    for (int i = 0; i < 1000; ++i) {
        const DiscriminationInstance inst(uq1(rng), uc(rng));
        const double Q = uQ(rng);
        const double diff =
            std::abs(nc_bound_pure(inst, Q).value - nc_bound_grid_oracle(inst, Q, 1e-5));
        max_diff = std::max(max_diff, diff);
        if (diff > 1e-4) ++violations;
    }
    r.pass = violations == 0;
    r.detail = "max |closed - oracle| = " + fmt(max_diff) + ", violations " +
               std::to_string(violations) + "/1000";
    return r;
}

CheckResult check_5() {
    CheckResult r{5, "quantum closed form vs POVM oracle (200 random)", false, false, "", 0.0};
    std::mt19937_64 rng(411002);
    std::uniform_real_distribution<double> uq1(0.05, 0.95), uc(0.02, 0.98), uQ(0.0, 1.0);
    double max_diff = 0.0;
    int violations = 0;
    double worst_q1 = 0, worst_c = 0, worst_Q = 0;
    for (int i = 0; i < 200; ++i) {
        const double q1 = uq1(rng), c = uc(rng), Q = uQ(rng);
        const DiscriminationInstance inst(q1, c);
        const PureStatePair pair = make_state_pair(c);
        const auto [rho1, rho2] = depolarize(pair, 1.0);
        const double oracle = povm_oracle(rho1, rho2, q1, Q).success;
        const double closed = quantum_success_closed(inst, Q).success;
        const double diff = std::abs(closed - oracle);
        if (diff > max_diff) {
            max_diff = diff;
            worst_q1 = q1;
            worst_c = c;
            worst_Q = Q;
        }
        if (diff > 1e-5) ++violations;
    }
    r.pass = violations == 0;
    r.detail = "max |closed - oracle| = " + fmt(max_diff) + " at (q1=" + fmt(worst_q1) +
               ", c=" + fmt(worst_c) + ", Q=" + fmt(worst_Q) + "), violations " +
               std::to_string(violations) + "/200";
    if (!r.pass) {
        r.detail += "; every violation has oracle < closed form: the interpolation formula "
                    "exceeds the true optimum for strongly asymmetric priors at larger Q "
                    "(it is exact for equal priors)";
    }
    return r;
}

CheckResult check_6() {
    CheckResult r{6, "equal-prior regional formulas and switch point", false, false, "", 0.0};
    std::ostringstream msg;
    bool ok = true;
    for (double c : {0.4, 0.6, 0.8}) {
        const DiscriminationInstance inst(0.5, c);
        double max_diff = 0.0;
        for (int i = 0; i <= 1000; ++i) {
            const double Q = i * 1e-3;
            max_diff = std::max(
                max_diff, std::abs(nc_bound_pure(inst, Q).value - nc_equal_prior_regional(c, Q).value));
        }
        msg << "c=" << fmt(c) << " max regional diff " << fmt(max_diff) << "; ";
        if (max_diff > 1e-12) ok = false;
    }
    // Crossing of the two candidate formulas for c = 0.6, found by bisection.
    const double c = 0.6;
    const auto diff_fn = [&](double Q) {
        const double low = 1.0 - 0.5 * c - (1.0 - c) * Q;
        const double mid = 1.0 - Q - 0.5 * (c - 2.0 * Q) / (1.0 - 2.0 * Q);
        return low - mid;
    };
    double lo = 1e-6, hi = 0.5 * c;
    for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (lo + hi);
        if (diff_fn(m) > 0.0) {
            lo = m;
        } else {
            hi = m;
        }
    }
    const double switch_point = 0.5 * (lo + hi);
    msg << "switch point " << fmt(switch_point);
    if (std::abs(switch_point - 0.166) > 0.002) ok = false;
    r.pass = ok;
    r.detail = msg.str();
    return r;
}

CheckResult check_7() {
    CheckResult r{7, "noisy bound closed form vs split-scan oracle (500 random) + breakpoint continuity",
                  false, false, "", 0.0};
    std::mt19937_64 rng(411003);
    std::uniform_real_distribution<double> uc(0.02, 0.98), ue(0.0, 1.0), uQ(0.0, 1.0);
    double max_diff = 0.0;
    int violations = 0;
    for (int i = 0; i < 500; ++i) {
        const NoisyInstance inst(DiscriminationInstance(0.5, uc(rng)), ue(rng));
        const double Q = uQ(rng);
        const double diff =
            std::abs(nc_bound_noisy(inst, Q).value - nc_mixed_grid_oracle(inst, Q, 1e-5));
        max_diff = std::max(max_diff, diff);
        if (diff > 1e-4) ++violations;
    }
    double max_jump = 0.0;
    for (int ci = 1; ci <= 9; ++ci) {
        for (int ei = 0; ei <= 10; ++ei) {
            const double c = 0.1 * ci, eps = 0.1 * ei;
            const double b1 = 0.5 * (1.0 - eps);
            const double b2 = 0.5 * (1.0 - eps + c * (1.0 + eps));
            const double p1 = 0.5 * (1.0 + (1.0 - c) * eps - c * b1);
            const double p2_at_b1 = 0.25 * (3.0 - c + (1.0 - c) * eps - 2.0 * b1);
            const double p2_at_b2 = 0.25 * (3.0 - c + (1.0 - c) * eps - 2.0 * b2);
            max_jump = std::max(max_jump, std::abs(p1 - p2_at_b1));
            max_jump = std::max(max_jump, std::abs(p2_at_b2 - (1.0 - b2)));
        }
    }
    r.pass = violations == 0 && max_jump <= 1e-12;
    r.detail = "max |closed - oracle| = " + fmt(max_diff) + ", violations " +
               std::to_string(violations) + "/500, max breakpoint jump " + fmt(max_jump);
    return r;
}

CheckResult check_8() {
    CheckResult r{8, "non-enhancement interval length nonincreasing in noise strength (c=0.4)",
                  false, false, "", 0.0};
    std::ostringstream msg;
    const Range q_grid{0.0, 1.0, 501};  // 2e-3 step
    const auto swept = mixed_sweep(0.4, Range{0.2, 0.95, 6}, q_grid);
    bool ok = true;
    msg << "lengths:";
    for (size_t i = 0; i < swept.interval_lengths.size(); ++i) {
        const auto& [eps, len] = swept.interval_lengths[i];
        msg << " (eps=" << fmt(eps) << ", " << fmt(len) << ")";
        if (i > 0 && len > swept.interval_lengths[i - 1].second + 1e-9) ok = false;
    }
    // Noiseless degeneration: the eps=1 mixed-path interval matches the pure
    // c=0.4 interval within 5e-3 at both ends.
    const auto noiseless = mixed_sweep(0.4, Range{1.0, 1.0, 1}, q_grid);
    const auto pure = non_enhancement_interval(DiscriminationInstance(0.5, 0.4), 1e-8);
    if (noiseless.regions.front().second.intervals.size() != 1 || pure.intervals.size() != 1) {
        msg << "; expected single intervals in the eps=1 comparison";
        ok = false;
    } else {
        const auto [mlo, mhi] = noiseless.regions.front().second.intervals.front();
        const auto [plo, phi] = pure.intervals.front();
        msg << "; eps=1 interval [" << fmt(mlo) << ", " << fmt(mhi) << "] vs pure ["
            << fmt(plo) << ", " << fmt(phi) << "]";
        if (std::abs(mlo - plo) > 5e-3 || std::abs(mhi - phi) > 5e-3) ok = false;
    }
    r.pass = ok;
    r.detail = msg.str();
    return r;
}

CheckResult check_9() {
    CheckResult r{9, "balanced inconclusive element emerges from the POVM oracle (20 random)",
                  false, false, "", 0.0};
    std::mt19937_64 rng(411004);
    std::uniform_real_distribution<double> uc(0.1, 0.9), ue(0.05, 0.95), uQ(0.05, 0.75);
    double max_residual = 0.0;
    for (int i = 0; i < 20; ++i) {
        const double c = uc(rng), eps = ue(rng), Q = uQ(rng);
        const PureStatePair pair = make_state_pair(c);
        const auto [rho1, rho2] = depolarize(pair, eps);
        const PovmOracleResult res = povm_oracle(rho1, rho2, 0.5, Q);
        const double residual = std::abs(res.povm.m0.expectation(pair.ket1) -
                                         res.povm.m0.expectation(pair.ket2));
        max_residual = std::max(max_residual, residual);
    }
    r.pass = max_residual <= 1e-5;
    r.detail = "max balance residual " + fmt(max_residual);
    return r;
}

CheckResult check_10() {
    CheckResult r{10, "structural property suite (consistency, monotonicity, continuity)",
                  false, false, "", 0.0};
    std::ostringstream msg;
    bool ok = true;
    std::mt19937_64 rng(411005);
    std::uniform_real_distribution<double> uq1(0.02, 0.98), uc(0.0, 1.0), ue(0.0, 1.0);

    double worst_helstrom = 0.0, worst_minerr = 0.0;
    for (int i = 0; i < 200; ++i) {
        const DiscriminationInstance inst(uq1(rng), uc(rng));
        const double helstrom =
            0.5 * (1.0 + std::sqrt(1.0 - 4.0 * inst.q1() * inst.q2() * inst.c()));
        worst_helstrom = std::max(
            worst_helstrom, std::abs(quantum_success_closed(inst, 0.0).success - helstrom));
        worst_minerr = std::max(
            worst_minerr,
            std::abs(nc_minerr(inst) - (1.0 - std::min(inst.q1(), inst.q2()) * inst.c())));
    }
    msg << "worst Q=0 consistency " << fmt(worst_helstrom) << ", worst min-error identity "
        << fmt(worst_minerr) << "; ";
    if (worst_helstrom > 1e-12 || worst_minerr > 1e-12) ok = false;

    bool monotone = true;
    for (int i = 0; i < 100 && monotone; ++i) {
        const DiscriminationInstance inst(uq1(rng), uc(rng));
        const NoisyInstance noisy(DiscriminationInstance(0.5, std::min(std::max(uc(rng), 1e-3), 1.0 - 1e-3)),
                                  ue(rng));
        double prev_q = 2.0, prev_n = 2.0;
        for (int j = 0; j <= 1000; ++j) {
            const double Q = j * 1e-3;
            const double vq = quantum_success_closed(inst, Q).success;
            const double vn = nc_bound_noisy(noisy, Q).value;
            if (vq > prev_q + 1e-12 || vn > prev_n + 1e-12) {
                monotone = false;
                break;
            }
            prev_q = vq;
            prev_n = vn;
        }
    }
    msg << (monotone ? "both closed forms nonincreasing; " : "monotonicity violated; ");
    if (!monotone) ok = false;

    double worst_jump = 0.0;
    for (int i = 0; i < 100; ++i) {
        const DiscriminationInstance inst(uq1(rng), std::min(std::max(uc(rng), 0.01), 0.99));
        const double t = ud_failure_threshold(inst);
        const double delta = 1e-10;
        if (t > delta && t < 1.0 - delta) {
            const double mid = quantum_success_closed(inst, t).success;
            worst_jump = std::max(worst_jump,
                                  std::abs(quantum_success_closed(inst, t - delta).success - mid));
            worst_jump = std::max(worst_jump,
                                  std::abs(quantum_success_closed(inst, t + delta).success - mid));
        }
        const double bp = std::min(inst.q1(), inst.q2()) * inst.c();
        if (bp > delta && bp < 1.0 - delta) {
            const double mid = nc_bound_pure(inst, bp).value;
            worst_jump =
                std::max(worst_jump, std::abs(nc_bound_pure(inst, bp - delta).value - mid));
            worst_jump =
                std::max(worst_jump, std::abs(nc_bound_pure(inst, bp + delta).value - mid));
        }
    }
    for (int i = 0; i < 100; ++i) {
        const NoisyInstance noisy(DiscriminationInstance(0.5, std::min(std::max(uc(rng), 0.01), 0.99)),
                                  ue(rng));
        const double delta = 1e-10;
        for (double bp : {0.5 * (1.0 - noisy.eps()),
                          0.5 * (1.0 - noisy.eps() + noisy.base().c() * (1.0 + noisy.eps()))}) {
            if (bp > delta && bp < 1.0 - delta) {
                const double mid = nc_bound_noisy(noisy, bp).value;
                worst_jump =
                    std::max(worst_jump, std::abs(nc_bound_noisy(noisy, bp - delta).value - mid));
                worst_jump =
                    std::max(worst_jump, std::abs(nc_bound_noisy(noisy, bp + delta).value - mid));
            }
        }
    }
    msg << "worst breakpoint jump " << fmt(worst_jump);
    if (worst_jump > 1e-9) ok = false;

    r.pass = ok;
    r.detail = msg.str();
    return r;
}

}  // namespace

CheckResult run_acceptance_check(int index, const VerifyOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    CheckResult r;
    const bool heavy = index == 5 || index == 8 || index == 9;
    if (options.fast && heavy) {
        r = CheckResult{index, "", true, true, "skipped (fast mode)", 0.0};
        switch (index) {
            case 5: r.name = "quantum closed form vs POVM oracle (200 random)"; break;
            case 8: r.name = "non-enhancement interval length nonincreasing in noise strength (c=0.4)"; break;
            case 9: r.name = "balanced inconclusive element emerges from the POVM oracle (20 random)"; break;
        }
        return r;
    }
    switch (index) {
        case 1: r = check_1(); break;
        case 2: r = check_2(); break;
        case 3: r = check_3(); break;
        case 4: r = check_4(); break;
        case 5: r = check_5(); break;
        case 6: r = check_6(); break;
        case 7: r = check_7(); break;
        case 8: r = check_8(); break;
        case 9: r = check_9(); break;
        case 10: r = check_10(); break;
        default: throw std::invalid_argument("check index must lie in [1,10]");
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    // Stated runtime budgets are part of the criteria.
    if (r.index == 1 && r.seconds >= 1.0) {
        r.pass = false;
        r.detail += "; runtime " + fmt(r.seconds) + "s exceeds 1s";
    }
    if (r.index == 4 && r.seconds >= 60.0) {
        r.pass = false;
        r.detail += "; runtime " + fmt(r.seconds) + "s exceeds 60s";
    }
    if (r.index == 5 && r.seconds >= 120.0) {
        r.pass = false;
        r.detail += "; runtime " + fmt(r.seconds) + "s exceeds 120s";
    }
    if (r.index == 10 && r.seconds >= 300.0) {
        r.pass = false;
        r.detail += "; runtime " + fmt(r.seconds) + "s exceeds 300s";
    }
    return r;
}

std::vector<CheckResult> run_acceptance_checks(const VerifyOptions& options) {
    std::vector<CheckResult> out;
    out.reserve(kNumAcceptanceChecks);
    for (int i = 1; i <= kNumAcceptanceChecks; ++i) {
        out.push_back(run_acceptance_check(i, options));
    }
    return out;
}

}  // namespace qsd
