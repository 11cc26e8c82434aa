#include "qsd/quantum_optimal.hpp"

#include <cmath>
#include <stdexcept>

namespace qsd {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Real symmetric 2x2 matrix, the working representation inside the oracle.
// States are real in the computational basis, and a real-symmetric M0 loses
// no generality against real states (conjugating any POVM elementwise leaves
// all probabilities unchanged, so the real average of the two is as good).
struct Sym2 {
    double xx = 0.0, xy = 0.0, yy = 0.0;

    double dot(const Sym2& o) const { return xx * o.xx + yy * o.yy + 2.0 * xy * o.xy; }
    double trace() const { return xx + yy; }
    Sym2 operator+(const Sym2& o) const { return {xx + o.xx, xy + o.xy, yy + o.yy}; }
    Sym2 operator-(const Sym2& o) const { return {xx - o.xx, xy - o.xy, yy - o.yy}; }
    friend Sym2 operator*(double s, const Sym2& m) { return {s * m.xx, s * m.xy, s * m.yy}; }
};

Sym2 to_sym(const HermitianOp& h) {
    const Mat2& m = h.matrix();
    if (std::abs(m.a01.imag()) > 1e-12) {
        throw std::invalid_argument("povm_oracle requires density operators real in the computational basis");
    }
    return {m.a00.real(), m.a01.real(), m.a11.real()};
}

HermitianOp to_hermitian(const Sym2& s) {
    return HermitianOp::from_matrix({cplx(s.xx, 0.0), cplx(s.xy, 0.0), cplx(s.xy, 0.0), cplx(s.yy, 0.0)}, 1e-9);
}

// R(theta) diag(d0, d1) R(theta)^T without building the rotation.
Sym2 rotated_diag(double ct, double st, double d0, double d1) {
    const double c2 = ct * ct, s2 = st * st, cs = ct * st;
    return {d0 * c2 + d1 * s2, (d0 - d1) * cs, d0 * s2 + d1 * c2};
}

// Conjugation s * m * s for symmetric s, m (result symmetric).
Sym2 conjugate(const Sym2& s, const Sym2& m) {
    // t = m * s (general 2x2), then s * t restricted to the symmetric result.
    const double t00 = m.xx * s.xx + m.xy * s.xy;
    const double t01 = m.xx * s.xy + m.xy * s.yy;
    const double t10 = m.xy * s.xx + m.yy * s.xy;
    const double t11 = m.xy * s.xy + m.yy * s.yy;
    return {s.xx * t00 + s.xy * t10, s.xx * t01 + s.xy * t11, s.xy * t01 + s.yy * t11};
}

struct SymEigen {
    double lo, hi;      // ascending
    double ct, st;      // eigenvector of hi is (ct, st); of lo is (-st, ct)
};

SymEigen sym_eigen(const Sym2& m) {
    const double mean = 0.5 * (m.xx + m.yy);
    const double half = 0.5 * (m.xx - m.yy);
    const double disc = std::sqrt(half * half + m.xy * m.xy);
    SymEigen e{mean - disc, mean + disc, 1.0, 0.0};
    if (disc > 0.0) {
        // (m - lo I) v = 0 -> v_hi aligned with (m.xy, hi - m.xx) or (hi - m.yy, m.xy).
        double vx, vy;
        if (std::abs(m.xy) > 1e-300) {
            vx = m.xy;
            vy = e.hi - m.xx;
        } else {
            vx = m.xx >= m.yy ? 1.0 : 0.0;
            vy = m.xx >= m.yy ? 0.0 : 1.0;
        }
        const double n = std::sqrt(vx * vx + vy * vy);
        if (n > 0.0) {
            e.ct = vx / n;
            e.st = vy / n;
        }
    }
    return e;
}

struct OracleProblem {
    Sym2 rho1, rho2, rho_bar, lambda;
    double q1, q2, Q;
};

// Objective for a candidate (theta, a): eliminates b via the failure
// constraint, then the exact inner optimum over the conclusive elements.
// Returns false if the candidate is infeasible (b outside [0,1]).
bool evaluate(const OracleProblem& p, double theta, double a, double* value, double* b_out) {
    const double ct = std::cos(theta), st = std::sin(theta);
    const double alpha = p.rho_bar.xx * ct * ct + 2.0 * p.rho_bar.xy * ct * st + p.rho_bar.yy * st * st;
    const double beta = 1.0 - alpha;  // Tr(rho_bar) = 1
    if (beta < 1e-14) return false;
    double b = (p.Q - a * alpha) / beta;
    if (b < -1e-12 || b > 1.0 + 1e-12) return false;
    b = std::min(std::max(b, 0.0), 1.0);

    const Sym2 n = rotated_diag(ct, st, 1.0 - a, 1.0 - b);
    const Sym2 sqrt_n = rotated_diag(ct, st, std::sqrt(1.0 - a), std::sqrt(1.0 - b));
    const Sym2 s = conjugate(sqrt_n, p.lambda);
    const SymEigen es = sym_eigen(s);
    const double pos_trace = std::max(es.hi, 0.0) + std::max(es.lo, 0.0);
    *value = p.q2 * n.dot(p.rho2) + pos_trace;
    *b_out = b;
    return true;
}

}  // namespace

double ud_failure_threshold(const DiscriminationInstance& inst) {
    return 2.0 * std::sqrt(inst.q1() * inst.q2() * inst.c());
}

QuantumResult quantum_success_closed(const DiscriminationInstance& inst, double Q) {
    if (!(Q >= 0.0 && Q <= 1.0)) {
        throw std::domain_error("Q must lie in [0,1]");
    }
    const double threshold = ud_failure_threshold(inst);
    const double q_bar = 1.0 - Q;
    if (Q <= threshold) {
        const double d = threshold - Q;
        const double inside = std::max(q_bar * q_bar - d * d, 0.0);
        return {0.5 * (q_bar + std::sqrt(inside)), QuantumRegime::InterpolatedFormula, Q};
    }
    return {q_bar, QuantumRegime::WasteRegime, Q};
}

PovmOracleResult povm_oracle(const HermitianOp& rho1, const HermitianOp& rho2, double q1,
                             double Q, const SearchConfig& config) {
    if (!(q1 > 0.0 && q1 < 1.0)) {
        throw std::domain_error("q1 must lie in (0,1)");
    }
    if (!(Q >= 0.0 && Q <= 1.0)) {
        throw std::domain_error("Q must lie in [0,1]");
    }
    if (config.theta_points < 2 || config.weight_points < 2 || config.refine_rounds < 0) {
        throw std::domain_error("search config must have at least 2 grid points per axis");
    }
    for (const HermitianOp* rho : {&rho1, &rho2}) {
        if (std::abs(rho->trace() - 1.0) > 1e-9 || eigen_decompose(*rho).values[0] < -1e-9) {
            throw std::invalid_argument("povm_oracle requires unit-trace PSD density operators");
        }
    }

    OracleProblem p;
    p.rho1 = to_sym(rho1);
    p.rho2 = to_sym(rho2);
    p.q1 = q1;
    p.q2 = 1.0 - q1;
    p.Q = Q;
    p.rho_bar = q1 * p.rho1 + p.q2 * p.rho2;
    p.lambda = q1 * p.rho1 - p.q2 * p.rho2;

    std::int64_t evals = 0;
    double best = -1.0, best_theta = 0.0, best_a = 0.0;
    const double dtheta = kPi / config.theta_points;
    const double da = 1.0 / (config.weight_points - 1);
    for (int i = 0; i < config.theta_points; ++i) {
        const double theta = i * dtheta;
        for (int j = 0; j < config.weight_points; ++j) {
            const double a = j * da;
            double v, b;
            ++evals;
            if (evaluate(p, theta, a, &v, &b) && v > best) {
                best = v;
                best_theta = theta;
                best_a = a;
            }
        }
    }
    if (best < 0.0) {
        // M0 = Q*I is always feasible, so the a-grid (which contains no exact
        // match only through rounding) can miss feasibility only at Q = 1.
        double v, b;
        if (evaluate(p, 0.0, Q, &v, &b)) {
            best = v;
            best_theta = 0.0;
            best_a = Q;
        } else {
            throw std::domain_error("povm_oracle found no feasible candidate");
        }
    }

    // Shrinking-step pattern search over (theta, a); 8-neighbor moves keep it
    // robust on diagonal ridges while staying deterministic.
    double step_t = dtheta, step_a = da;
    static constexpr int kDirs[8][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {1, -1}, {-1, 1}, {-1, -1}};
    for (int round = 0; round < config.refine_rounds; ++round) {
        bool moved = true;
        int guard = 0;
        double round_gain = 0.0;
        while (moved && guard++ < 500) {
            moved = false;
            for (const auto& d : kDirs) {
                double t2 = std::fmod(best_theta + d[0] * step_t + kPi, kPi);
                double a2 = std::min(std::max(best_a + d[1] * step_a, 0.0), 1.0);
                double v, b;
                ++evals;
                if (evaluate(p, t2, a2, &v, &b) && v > best) {
                    round_gain += v - best;
                    best = v;
                    best_theta = t2;
                    best_a = a2;
                    moved = true;
                }
            }
        }
        step_t *= 0.5;
        step_a *= 0.5;
        if (step_t < 1e-13 && round_gain < config.objective_tol) break;
    }

    // Rebuild the winning POVM.
    double v, b;
    if (!evaluate(p, best_theta, best_a, &v, &b)) {
        throw std::logic_error("povm_oracle: winning candidate became infeasible");
    }
    const double ct = std::cos(best_theta), st = std::sin(best_theta);
    const Sym2 m0 = rotated_diag(ct, st, best_a, b);
    const Sym2 n = rotated_diag(ct, st, 1.0 - best_a, 1.0 - b);
    const Sym2 sqrt_n = rotated_diag(ct, st, std::sqrt(1.0 - best_a), std::sqrt(1.0 - b));
    const Sym2 s = conjugate(sqrt_n, p.lambda);
    const SymEigen es = sym_eigen(s);
    Sym2 proj{0.0, 0.0, 0.0};
    if (es.hi > 0.0) {
        proj = proj + rotated_diag(es.ct, es.st, 1.0, 0.0);
    }
    if (es.lo > 0.0) {
        proj = proj + rotated_diag(es.ct, es.st, 0.0, 1.0);
    }
    const Sym2 m1 = conjugate(sqrt_n, proj);
    const Sym2 m2 = n - m1;

    PovmOracleResult result;
    result.success = v;
    result.povm = {to_hermitian(m0), to_hermitian(m1), to_hermitian(m2)};
    result.achieved_q = m0.dot(p.rho_bar);
    result.iterations = evals;
    return result;
}

QuantumResult mixed_quantum_success(const NoisyInstance& inst, double Q, const SearchConfig& config) {
    if (std::abs(inst.base().q1() - 0.5) > 1e-12) {
        throw std::invalid_argument("mixed_quantum_success supports q1 = 0.5 only");
    }
    if (!(Q >= 0.0 && Q <= 1.0)) {
        throw std::domain_error("Q must lie in [0,1]");
    }
    const PureStatePair pair = make_state_pair(inst.base().c());
    const auto [rho1, rho2] = depolarize(pair, inst.eps());
    const PovmOracleResult r = povm_oracle(rho1, rho2, 0.5, Q, config);
    const double error = 1.0 - r.success - r.achieved_q;
    const QuantumRegime regime =
        error < 1e-8 ? QuantumRegime::WasteRegime : QuantumRegime::InterpolatedFormula;
    return {r.success, regime, Q};
}

}  // namespace qsd
