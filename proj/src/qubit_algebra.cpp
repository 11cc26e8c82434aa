#include "qsd/qubit_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qsd {

Mat2 Mat2::outer(const Ket& u, const Ket& v) {
    return {u[0] * std::conj(v[0]), u[0] * std::conj(v[1]),
            u[1] * std::conj(v[0]), u[1] * std::conj(v[1])};
}

Mat2 Mat2::operator*(const Mat2& o) const {
    return {a00 * o.a00 + a01 * o.a10, a00 * o.a01 + a01 * o.a11,
            a10 * o.a00 + a11 * o.a10, a10 * o.a01 + a11 * o.a11};
}

double Mat2::max_abs() const {
    return std::max(std::max(std::abs(a00), std::abs(a01)),
                    std::max(std::abs(a10), std::abs(a11)));
}

double Mat2::hermiticity_defect() const {
    return (*this - adjoint()).max_abs();
}

HermitianOp HermitianOp::from_matrix(const Mat2& m, double tol) {
    if (!(m.hermiticity_defect() <= tol)) {
        throw std::invalid_argument("matrix is not Hermitian within tolerance");
    }
    // Symmetrize so downstream closed-form eigensolves see an exactly
    // Hermitian matrix.
    Mat2 h = 0.5 * (m + m.adjoint());
    h.a00 = cplx(h.a00.real(), 0.0);
    h.a11 = cplx(h.a11.real(), 0.0);
    return HermitianOp(h);
}

HermitianOp HermitianOp::projector(const Ket& k) {
    return from_matrix(Mat2::outer(k, k), 1e-9);
}

double HermitianOp::expectation(const Ket& ket) const {
    const cplx r0 = m_.a00 * ket[0] + m_.a01 * ket[1];
    const cplx r1 = m_.a10 * ket[0] + m_.a11 * ket[1];
    return (std::conj(ket[0]) * r0 + std::conj(ket[1]) * r1).real();
}

double HermitianOp::trace_product(const HermitianOp& other) const {
    return (m_ * other.m_).trace().real();
}

EigenSystem eigen_decompose(const HermitianOp& h) {
    const Mat2& m = h.matrix();
    const double d0 = m.a00.real();
    const double d1 = m.a11.real();
    const cplx z = m.a01;
    const double zn2 = std::norm(z);

    const double mean = 0.5 * (d0 + d1);
    const double disc = std::sqrt(0.25 * (d0 - d1) * (d0 - d1) + zn2);
    EigenSystem es;
    es.values = {mean - disc, mean + disc};

    if (disc <= 0.0 || std::sqrt(zn2) <= 1e-300) {
        // Diagonal (or proportional to identity): basis vectors, ordered by value.
        if (d0 <= d1) {
            es.vectors = {Ket{1.0, 0.0}, Ket{0.0, 1.0}};
        } else {
            es.vectors = {Ket{0.0, 1.0}, Ket{1.0, 0.0}};
        }
        return es;
    }

    for (int i = 0; i < 2; ++i) {
        const double lam = es.values[i];
        // (z, lam - d0) is an unnormalized eigenvector for eigenvalue lam.
        Ket v{z, cplx(lam - d0, 0.0)};
        double n = std::sqrt(std::norm(v[0]) + std::norm(v[1]));
        if (n <= 1e-300) {
            v = {1.0, 0.0};
            n = 1.0;
        }
        v[0] /= n;
        v[1] /= n;
        // Deterministic phase: make the largest-magnitude component real positive.
        const cplx lead = std::norm(v[0]) >= std::norm(v[1]) ? v[0] : v[1];
        const double la = std::abs(lead);
        if (la > 0.0) {
            const cplx phase = std::conj(lead) / la;
            v[0] *= phase;
            v[1] *= phase;
        }
        es.vectors[i] = v;
    }
    return es;
}

PositivePart positive_part(const HermitianOp& h) {
    const EigenSystem es = eigen_decompose(h);
    Mat2 acc = Mat2::zero();
    double tr = 0.0;
    for (int i = 0; i < 2; ++i) {
        if (es.values[i] > 0.0) {
            acc = acc + es.values[i] * Mat2::outer(es.vectors[i], es.vectors[i]);
            tr += es.values[i];
        }
    }
    return {HermitianOp::from_matrix(acc, 1e-9), tr};
}

PureStatePair make_state_pair(double c) {
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::domain_error("c must lie in [0,1]");
    }
    // cos 2t = sqrt(c); overlap <k1|k2> = cos^2 t - sin^2 t = sqrt(c).
    const double s = std::sqrt(c);
    const double ct = std::sqrt(0.5 * (1.0 + s));
    const double st = std::sqrt(0.5 * (1.0 - s));
    PureStatePair p;
    p.ket1 = {cplx(ct, 0.0), cplx(st, 0.0)};
    p.ket2 = {cplx(ct, 0.0), cplx(-st, 0.0)};
    p.c = c;
    return p;
}

std::pair<HermitianOp, HermitianOp> depolarize(const PureStatePair& pair, double eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::domain_error("eps must lie in [0,1]");
    }
    const Mat2 half_id = 0.5 * (1.0 - eps) * Mat2::identity();
    const Mat2 r1 = eps * Mat2::outer(pair.ket1, pair.ket1) + half_id;
    const Mat2 r2 = eps * Mat2::outer(pair.ket2, pair.ket2) + half_id;
    return {HermitianOp::from_matrix(r1, 1e-9), HermitianOp::from_matrix(r2, 1e-9)};
}

PovmDiagnostics validate_povm(const Povm3& p) {
    PovmDiagnostics d;
    const HermitianOp* els[3] = {&p.m0, &p.m1, &p.m2};
    for (int i = 0; i < 3; ++i) {
        d.min_eigenvalues[i] = eigen_decompose(*els[i]).values[0];
    }
    const Mat2 sum = p.m0.matrix() + p.m1.matrix() + p.m2.matrix();
    d.completeness_residual = (sum - Mat2::identity()).max_abs();
    d.pass = d.completeness_residual <= kCompletenessTol &&
             std::all_of(d.min_eigenvalues.begin(), d.min_eigenvalues.end(),
                         [](double e) { return e >= -kPsdTol; });
    return d;
}

DiscriminationInstance::DiscriminationInstance(double q1, double c) : q1_(q1), c_(c) {
    if (!(q1 > 0.0 && q1 < 1.0)) {
        throw std::domain_error("q1 must lie in (0,1)");
    }
    if (!(c >= 0.0 && c <= 1.0)) {
        throw std::domain_error("c must lie in [0,1]");
    }
}

NoisyInstance::NoisyInstance(DiscriminationInstance base, double eps) : base_(base), eps_(eps) {
    if (!(eps >= 0.0 && eps <= 1.0)) {
        throw std::domain_error("eps must lie in [0,1]");
    }
}

}  // namespace qsd
