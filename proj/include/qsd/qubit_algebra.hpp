#pragma once

#include <array>
#include <complex>
#include <utility>

namespace qsd {

using cplx = std::complex<double>;
using Ket = std::array<cplx, 2>;

// Tolerances shared by the validated types below.
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kPsdTol = 1e-10;
inline constexpr double kCompletenessTol = 1e-10;

/// General complex 2x2 matrix with value semantics. Products of Hermitian
/// operators are not Hermitian, so the algebra lives here and HermitianOp
/// wraps a validated instance.
struct Mat2 {
    cplx a00{}, a01{}, a10{}, a11{};

    static Mat2 zero() { return {}; }
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static Mat2 diag(cplx d0, cplx d1) { return {d0, 0.0, 0.0, d1}; }
    static Mat2 outer(const Ket& u, const Ket& v);  // |u><v|

    Mat2 operator+(const Mat2& o) const { return {a00 + o.a00, a01 + o.a01, a10 + o.a10, a11 + o.a11}; }
    Mat2 operator-(const Mat2& o) const { return {a00 - o.a00, a01 - o.a01, a10 - o.a10, a11 - o.a11}; }
    Mat2 operator*(const Mat2& o) const;
    friend Mat2 operator*(cplx s, const Mat2& m) { return {s * m.a00, s * m.a01, s * m.a10, s * m.a11}; }
    friend Mat2 operator*(double s, const Mat2& m) { return cplx(s, 0.0) * m; }

    Mat2 adjoint() const { return {std::conj(a00), std::conj(a10), std::conj(a01), std::conj(a11)}; }
    cplx trace() const { return a00 + a11; }
    double max_abs() const;
    /// Largest elementwise |entry| of (*this - adjoint()); 0 for exactly Hermitian input.
    double hermiticity_defect() const;
};

/// 2x2 Hermitian operator. Construction checks conjugate symmetry to
/// kHermitianTol and stores the symmetrized matrix, so eigenvalues are real
/// by construction.
class HermitianOp {
  public:
    HermitianOp() : m_(Mat2::zero()) {}

    /// Throws std::invalid_argument if m is not Hermitian within tol.
    static HermitianOp from_matrix(const Mat2& m, double tol = kHermitianTol);
    static HermitianOp identity() { return HermitianOp(Mat2::identity()); }
    static HermitianOp zero() { return HermitianOp(); }
    static HermitianOp diag(double d0, double d1) { return HermitianOp(Mat2::diag(d0, d1)); }
    /// |k><k| for a (not necessarily normalized) ket.
    static HermitianOp projector(const Ket& k);

    const Mat2& matrix() const { return m_; }
    double trace() const { return m_.a00.real() + m_.a11.real(); }
    /// <ket| H |ket>, real for Hermitian H.
    double expectation(const Ket& ket) const;
    /// Tr(H * other), real for two Hermitian factors.
    double trace_product(const HermitianOp& other) const;

    HermitianOp operator+(const HermitianOp& o) const { return HermitianOp(m_ + o.m_); }
    HermitianOp operator-(const HermitianOp& o) const { return HermitianOp(m_ - o.m_); }
    friend HermitianOp operator*(double s, const HermitianOp& h) { return HermitianOp(s * h.m_); }

  private:
    explicit HermitianOp(const Mat2& m) : m_(m) {}
    Mat2 m_;
};

/// Closed-form spectral decomposition of a 2x2 Hermitian operator
/// (trace/determinant route, no iterative solver). Eigenvalues ascending;
/// eigenvectors unit norm with a deterministic phase convention.
struct EigenSystem {
    std::array<double, 2> values;  // ascending
    std::array<Ket, 2> vectors;
};
EigenSystem eigen_decompose(const HermitianOp& h);

/// h split as pos - neg with pos, neg PSD and pos*neg = 0; `trace` is Tr(pos).
struct PositivePart {
    HermitianOp part;
    double trace = 0.0;
};
PositivePart positive_part(const HermitianOp& h);

/// Two pure qubit states with squared overlap (confusability) c.
struct PureStatePair {
    Ket ket1{}, ket2{};
    double c = 1.0;
};

/// Real-amplitude kets symmetric about the first basis axis:
/// ket1 = (cos t, sin t), ket2 = (cos t, -sin t) with cos 2t = sqrt(c).
/// Throws std::domain_error unless 0 <= c <= 1.
PureStatePair make_state_pair(double c);

/// rho_x = eps |psi_x><psi_x| + (1-eps) I/2 for both states of the pair.
/// Throws std::domain_error unless 0 <= eps <= 1.
std::pair<HermitianOp, HermitianOp> depolarize(const PureStatePair& pair, double eps);

/// Three-outcome measurement; element 0 is the inconclusive outcome.
struct Povm3 {
    HermitianOp m0, m1, m2;
};

/// Never throws: reports per-element minimum eigenvalues and the completeness
/// residual, with `pass` true iff all elements are PSD within kPsdTol and the
/// elements sum to the identity within kCompletenessTol.
struct PovmDiagnostics {
    std::array<double, 3> min_eigenvalues{};
    double completeness_residual = 0.0;
    bool pass = false;
};
PovmDiagnostics validate_povm(const Povm3& p);

/// Two-pure-state discrimination problem: prior q1 in (0,1) and
/// confusability c in [0,1]; q2 = 1 - q1 is derived.
class DiscriminationInstance {
  public:
    DiscriminationInstance(double q1, double c);  // throws std::domain_error
    double q1() const { return q1_; }
    double q2() const { return 1.0 - q1_; }
    double c() const { return c_; }

  private:
    double q1_, c_;
};

/// A discrimination instance under depolarizing noise of strength eps.
/// eps = 1 is the noiseless limit, eps = 0 fully depolarized.
class NoisyInstance {
  public:
    NoisyInstance(DiscriminationInstance base, double eps);  // throws std::domain_error
    const DiscriminationInstance& base() const { return base_; }
    double eps() const { return eps_; }

  private:
    DiscriminationInstance base_;
    double eps_;
};

}  // namespace qsd
