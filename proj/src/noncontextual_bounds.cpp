#include "qsd/noncontextual_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsd {

namespace {

constexpr double kDenominatorGuard = 1e-14;

void check_q(double Q) {
    if (!(Q >= 0.0 && Q <= 1.0)) {
        throw std::domain_error("Q must lie in [0,1]");
    }
}

double prior_of(const DiscriminationInstance& inst, int x) {
    return x == 1 ? inst.q1() : inst.q2();
}

/// Raw split objective of the segment program. Q1, Q2 are assumed feasible.
double raw_split_objective(const DiscriminationInstance& inst, double Q, double Q1, double Q2) {
    const double minfac = std::min(inst.q1() * (1.0 - Q1), inst.q2() * (1.0 - Q2));
    double ratio = 0.0;
    if (Q1 < 1.0) ratio = std::max(ratio, (inst.c() - Q1) / (1.0 - Q1));
    if (Q2 < 1.0) ratio = std::max(ratio, (inst.c() - Q2) / (1.0 - Q2));
    return 1.0 - Q - minfac * ratio;
}

}  // namespace

FailureSplit FailureSplit::from_first(const DiscriminationInstance& inst, double Q, double q1_fail) {
    check_q(Q);
    FailureSplit s;
    s.q1_fail = q1_fail;
    s.q2_fail = (Q - inst.q1() * q1_fail) / inst.q2();
    if (s.q1_fail < -1e-12 || s.q1_fail > 1.0 + 1e-12 || s.q2_fail < -1e-12 || s.q2_fail > 1.0 + 1e-12) {
        throw std::domain_error("failure split outside [0,1]");
    }
    s.q1_fail = std::clamp(s.q1_fail, 0.0, 1.0);
    s.q2_fail = std::clamp(s.q2_fail, 0.0, 1.0);
    return s;
}

MixedSplit MixedSplit::from_psi(double eps, double Q, double q_psi) {
    check_q(Q);
    const double w_psi = 0.5 * (1.0 + eps);
    const double w_perp = 0.5 * (1.0 - eps);
    MixedSplit s;
    s.q_psi = q_psi;
    s.q_psi_perp = w_perp > kDenominatorGuard ? (Q - w_psi * q_psi) / w_perp : 0.0;
    if (s.q_psi < -1e-12 || s.q_psi > 1.0 + 1e-12 || s.q_psi_perp < -1e-12 || s.q_psi_perp > 1.0 + 1e-12) {
        throw std::domain_error("mixed split outside [0,1]");
    }
    s.q_psi = std::clamp(s.q_psi, 0.0, 1.0);
    s.q_psi_perp = std::clamp(s.q_psi_perp, 0.0, 1.0);
    return s;
}

double nc_candidate_value(const DiscriminationInstance& inst, double Q, int x, double z) {
    check_q(Q);
    if (x != 1 && x != 2) {
        throw std::domain_error("x must be 1 or 2");
    }
    const double qx = prior_of(inst, x);
    const double qo = prior_of(inst, 3 - x);
    if (z < -1e-15 || z > std::min(Q / qx, inst.c()) + 1e-12) {
        throw std::domain_error("z outside the feasible candidate range");
    }
    const double den = qo - Q + qx * z;
    if (den <= kDenominatorGuard) {
        throw std::domain_error("candidate denominator too small");
    }
    const double num = qo * inst.c() - Q + qx * z;
    return (1.0 - Q) - qx * (1.0 - z) * num / den;
}

NcBoundResult nc_bound_pure(const DiscriminationInstance& inst, double Q) {
    check_q(Q);
    const double q_min = std::min(inst.q1(), inst.q2());
    if (Q > q_min * inst.c()) {
        return {1.0 - Q, NcRegime::TrivialOneMinusQ, std::nullopt};
    }
    NcBoundResult best{-1.0, NcRegime::CandidateMax, std::nullopt};
    for (int x : {1, 2}) {
        const double qx = prior_of(inst, x);
        for (double z : {0.0, Q / qx}) {
            double v;
            try {
                v = nc_candidate_value(inst, Q, x, z);
            } catch (const std::domain_error&) {
                continue;  // guarded denominator near c = 1
            }
            if (v > best.value) {
                best.value = v;
                best.argmax = NcArgmax{x, z};
            }
        }
    }
    if (!best.argmax) {
        throw std::logic_error("nc_bound_pure: all candidates infeasible");
    }
    return best;
}

double nc_bound_grid_oracle(const DiscriminationInstance& inst, double Q, double grid_step) {
    check_q(Q);
    if (!(grid_step >= 1e-7 && grid_step <= 1e-2)) {
        throw std::domain_error("grid_step must lie in [1e-7, 1e-2]");
    }
    const double q1 = inst.q1(), q2 = inst.q2(), c = inst.c();
    const double lo = std::max(0.0, (Q - q2) / q1);
    const double hi = std::min(1.0, Q / q1);

    double best = -1.0;
    const auto consider_point = [&](double Q1) {
        const FailureSplit s = FailureSplit::from_first(inst, Q, std::clamp(Q1, lo, hi));
        best = std::max(best, raw_split_objective(inst, Q, s.q1_fail, s.q2_fail));
    };
    const long n = static_cast<long>(std::ceil((hi - lo) / grid_step));
    for (long i = 0; i <= n; ++i) {
        consider_point(std::min(lo + i * grid_step, hi));
    }
    consider_point(hi);

    // Analytic endpoints of the both-rates-below-c case, evaluated through the
    // candidate function (the per-case maximand whose endpoint maxima make up
    // the closed-form bound). The case region is nonempty only for Q <= c.
    for (int x : {1, 2}) {
        const double qx = prior_of(inst, x);
        const double qo = prior_of(inst, 3 - x);
        const double z_lo = std::max(0.0, (Q - qo * c) / qx);
        const double z_hi = std::min(Q / qx, c);
        if (z_lo > z_hi + 1e-15) continue;
        for (double z : {z_lo, z_hi}) {
            try {
                best = std::max(best, nc_candidate_value(inst, Q, x, z));
            } catch (const std::domain_error&) {
            }
        }
    }
    return best;
}

RegionalValue nc_equal_prior_regional(double c, double Q) {
    if (!(c > 0.0 && c < 1.0)) {
        throw std::domain_error("c must lie in (0,1)");
    }
    check_q(Q);
    if (Q > 0.5 * c) {
        return {1.0 - Q, EqualPriorRegion::HighQ};
    }
    const double low = 1.0 - 0.5 * c - (1.0 - c) * Q;                    // z = Q/q candidate
    const double mid = 1.0 - Q - 0.5 * (c - 2.0 * Q) / (1.0 - 2.0 * Q);  // z = 0 candidate
    if (low >= mid) {
        return {low, EqualPriorRegion::LowQ};
    }
    return {mid, EqualPriorRegion::MidQ};
}

double nc_minerr(const DiscriminationInstance& inst) {
    return nc_bound_pure(inst, 0.0).value;
}

UdLimit nc_ud_limit(const DiscriminationInstance& inst) {
    const double s = std::max(inst.q1(), inst.q2()) * inst.c();
    return {s, 1.0 - s};
}

NcBoundResult nc_bound_noisy(const NoisyInstance& inst, double Q) {
    if (std::abs(inst.base().q1() - 0.5) > 1e-12) {
        throw std::invalid_argument("nc_bound_noisy supports q1 = 0.5 only");
    }
    check_q(Q);
    const double c = inst.base().c();
    const double eps = inst.eps();
    const double b1 = 0.5 * (1.0 - eps);
    const double b2 = 0.5 * (1.0 - eps + c * (1.0 + eps));
    if (Q <= b1) {
        return {0.5 * (1.0 + (1.0 - c) * eps - c * Q), NcRegime::CandidateMax, std::nullopt};
    }
    if (Q <= b2) {
        return {0.25 * (3.0 - c + (1.0 - c) * eps - 2.0 * Q), NcRegime::CandidateMax, std::nullopt};
    }
    return {1.0 - Q, NcRegime::TrivialOneMinusQ, std::nullopt};
}

double nc_mixed_grid_oracle(const NoisyInstance& inst, double Q, double grid_step) {
    if (std::abs(inst.base().q1() - 0.5) > 1e-12) {
        throw std::invalid_argument("nc_mixed_grid_oracle supports q1 = 0.5 only");
    }
    check_q(Q);
    if (!(grid_step >= 1e-7 && grid_step <= 1e-2)) {
        throw std::domain_error("grid_step must lie in [1e-7, 1e-2]");
    }
    const double c = inst.base().c();
    const double eps = inst.eps();
    const double w_psi = 0.5 * (1.0 + eps);
    const double w_perp = 0.5 * (1.0 - eps);

    const auto objective = [&](const MixedSplit& s) {
        const double u = s.q_psi;
        const double ratio = u < 1.0 ? std::max((c - u) / (1.0 - u), 0.0) : 0.0;
        const double bracket = 0.5 * (w_psi * (1.0 - u) - w_perp * (1.0 - s.q_psi_perp));
        return w_psi * (1.0 - u) - bracket * ratio;
    };

    if (w_perp <= kDenominatorGuard) {
        // Noiseless limit: the constraint pins Q^psi = Q and the complement
        // rate drops out of the objective.
        return objective(MixedSplit{Q, 0.0});
    }
    const double lo = std::max(0.0, (Q - w_perp) / w_psi);
    const double hi = std::min(1.0, Q / w_psi);
    double best = -1.0;
    const auto consider = [&](double u) {
        best = std::max(best, objective(MixedSplit::from_psi(eps, Q, std::clamp(u, lo, hi))));
    };
    const long n = static_cast<long>(std::ceil((hi - lo) / grid_step));
    for (long i = 0; i <= n; ++i) {
        consider(std::min(lo + i * grid_step, hi));
    }
    consider(hi);
    // Kink of the ratio term and the u giving Q^perp = c.
    for (double u : {c, (Q - w_perp * c) / w_psi}) {
        if (u >= lo - 1e-15 && u <= hi + 1e-15) consider(u);
    }
    return best;
}

double nc_max_confidence_limit(const NoisyInstance& inst) {
    if (std::abs(inst.base().q1() - 0.5) > 1e-12) {
        throw std::invalid_argument("nc_max_confidence_limit supports q1 = 0.5 only");
    }
    const double eps = inst.eps();
    return 0.5 * (1.0 - 0.5 * (1.0 - eps) - eps * inst.base().c());
}

}  // namespace qsd
