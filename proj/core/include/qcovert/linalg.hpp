#pragma once

// Dense complex-Hermitian linear algebra for small systems (dim <= 4096).
//
// HermitianOperator and DensityOperator are validated value types: the
// Hermiticity and state contracts are checked once at construction, and the
// stored matrix is exactly Hermitian afterwards. Operations that provably
// preserve those contracts (tensor products, partial traces, convex mixing)
// skip re-validation.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qcovert {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr std::size_t kMaxDim = 4096;
inline constexpr double kHermitianTol = 1e-12;
inline constexpr double kStateTol = 1e-10;
/// Kernel detection threshold, relative to the largest eigenvalue.
inline constexpr double kSupportTol = 1e-12;

class HermitianOperator {
public:
    /// Throws DomainError on non-finite or non-Hermitian input, ShapeError on
    /// a non-square or empty matrix.
    explicit HermitianOperator(Matrix m);

    static HermitianOperator identity(std::size_t dim);
    static HermitianOperator zero(std::size_t dim);
    static HermitianOperator diagonal(std::span<const double> d);
    static HermitianOperator diagonal(std::initializer_list<double> d);
    /// |v><v| (no normalization applied).
    static HermitianOperator projector(const Vector& v);

    std::size_t dim() const { return static_cast<std::size_t>(m_.rows()); }
    const Matrix& matrix() const { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const {
        return m_(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j));
    }
    double trace() const { return m_.trace().real(); }

    /// <v|H|v>, real by Hermiticity.
    double expectation(const Vector& v) const;

    HermitianOperator operator+(const HermitianOperator& o) const;
    HermitianOperator operator-(const HermitianOperator& o) const;
    HermitianOperator operator*(double s) const;
    friend HermitianOperator operator*(double s, const HermitianOperator& h) { return h * s; }

    /// U H U^dagger for a square U of matching dimension.
    HermitianOperator conjugated(const Matrix& u) const;

    bool operator==(const HermitianOperator& o) const { return m_ == o.m_; }

private:
    struct Trusted {};
    HermitianOperator(Matrix m, Trusted) : m_(std::move(m)) {}
    friend class DensityOperator;
    friend HermitianOperator tensor(const HermitianOperator&, const HermitianOperator&);
    friend HermitianOperator partial_trace(const HermitianOperator&, std::span<const std::size_t>,
                                           std::span<const std::size_t>);
    friend HermitianOperator hermitian_from_trusted(Matrix m);

    Matrix m_;
};

/// Wraps an already Hermitian matrix without checks. Internal use by code that
/// constructs Hermitian matrices by exact means (spectral sums, symmetrization).
HermitianOperator hermitian_from_trusted(Matrix m);

class PureState {
public:
    /// Throws DomainError unless the Euclidean norm is 1 within 1e-12.
    explicit PureState(Vector amplitudes);

    static PureState basis(std::size_t dim, std::size_t index);

    std::size_t dim() const { return static_cast<std::size_t>(amps_.size()); }
    const Vector& amplitudes() const { return amps_; }

private:
    Vector amps_;
};

class DensityOperator {
public:
    /// Throws DomainError unless trace = 1 and all eigenvalues >= -1e-10.
    explicit DensityOperator(HermitianOperator op);
    explicit DensityOperator(Matrix m) : DensityOperator(HermitianOperator(std::move(m))) {}

    static DensityOperator pure(const PureState& psi);
    static DensityOperator maximally_mixed(std::size_t dim);
    static DensityOperator basis_state(std::size_t dim, std::size_t index);
    /// Diagonal state; entries must be a probability vector.
    static DensityOperator classical(std::span<const double> probs);
    static DensityOperator classical(std::initializer_list<double> probs);

    /// a + w (b - a), the mixture (1-w) a + w b written so that a == b yields
    /// a bit-for-bit.
    static DensityOperator mix(const DensityOperator& a, const DensityOperator& b, double w);

    const HermitianOperator& op() const { return op_; }
    const Matrix& matrix() const { return op_.matrix(); }
    std::size_t dim() const { return op_.dim(); }
    operator const HermitianOperator&() const { return op_; }  // NOLINT(google-explicit-constructor)

    bool operator==(const DensityOperator& o) const { return op_ == o.op_; }

private:
    struct Trusted {};
    DensityOperator(HermitianOperator op, Trusted) : op_(std::move(op)) {}
    friend DensityOperator tensor(const DensityOperator&, const DensityOperator&);
    friend DensityOperator tensor_power(const DensityOperator&, std::size_t);
    friend DensityOperator partial_trace(const DensityOperator&, std::span<const std::size_t>,
                                         std::span<const std::size_t>);
    friend DensityOperator density_from_trusted(Matrix m);

    HermitianOperator op_;
};

/// Wraps a matrix known to be a state by construction (e.g. V rho V^dagger).
/// The matrix is symmetrized; no spectral validation is performed.
DensityOperator density_from_trusted(Matrix m);

struct SpectralDecomposition {
    std::vector<double> eigenvalues;  // descending
    Matrix eigenvectors;              // column i pairs with eigenvalues[i]

    std::size_t dim() const { return eigenvalues.size(); }
    Vector eigenvector(std::size_t i) const { return eigenvectors.col(static_cast<Eigen::Index>(i)); }
    /// sum_i lambda_i |v_i><v_i|
    Matrix reconstruct() const;
    double max_eigenvalue() const { return eigenvalues.empty() ? 0.0 : eigenvalues.front(); }
    /// kSupportTol * max(lambda_max, 0); eigenvalues at or below it span the kernel.
    double support_threshold() const;
    /// Projector onto the span of eigenvectors with eigenvalue <= support_threshold().
    Matrix kernel_projector() const;
};

struct JacobiOptions {
    int max_sweeps = 100;
    /// Off-diagonal Frobenius norm target, relative to the full Frobenius norm.
    double tolerance = 1e-14;
};

/// Kronecker product with `a` as the major index. Throws DimensionError past kMaxDim.
HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b);
DensityOperator tensor(const DensityOperator& a, const DensityOperator& b);
DensityOperator tensor_power(const DensityOperator& a, std::size_t n);

/// Trace out every subsystem not listed in `keep`. Kept subsystems appear in
/// their original order. Throws ShapeError on inconsistent dims / indices.
HermitianOperator partial_trace(const HermitianOperator& rho, std::span<const std::size_t> dims,
                                std::span<const std::size_t> keep);
DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> dims,
                              std::span<const std::size_t> keep);

/// Cyclic Jacobi eigensolver. Eigenvalues descending; within a cluster of
/// equal eigenvalues the phase-normalized eigenvectors are ordered
/// lexicographically (largest first). Throws NumericalError when the sweep
/// budget is exhausted.
SpectralDecomposition eig_hermitian(const HermitianOperator& h, const JacobiOptions& opts = {});

/// Applies eig_hermitian's ordering and phase convention to any decomposition.
void canonicalize(SpectralDecomposition& sd);

/// V diag(f(lambda)) V^dagger.
template <typename F>
HermitianOperator apply_spectral(const SpectralDecomposition& sd, F&& f) {
    const auto n = static_cast<Eigen::Index>(sd.dim());
    Eigen::VectorXd mapped(n);
    for (Eigen::Index i = 0; i < n; ++i) mapped(i) = f(sd.eigenvalues[static_cast<std::size_t>(i)]);
    Matrix m = sd.eigenvectors * mapped.asDiagonal() * sd.eigenvectors.adjoint();
    m = (m + m.adjoint()).eval() * 0.5;
    return hermitian_from_trusted(std::move(m));
}

enum class KernelPolicy { OnSupport, Reject };

/// Base-2 matrix logarithm. Kernel eigenvalues map to 0 (OnSupport) or raise
/// SupportError (Reject); eigenvalues below -1e-10 raise DomainError.
HermitianOperator matrix_log2(const HermitianOperator& rho, KernelPolicy policy = KernelPolicy::OnSupport);
HermitianOperator matrix_log2(const SpectralDecomposition& sd, KernelPolicy policy = KernelPolicy::OnSupport);

/// 2^H for Hermitian H.
HermitianOperator matrix_exp2(const HermitianOperator& h);

/// (1/2) sum_i |mu_i| over the eigenvalues of rho - sigma.
double trace_distance(const DensityOperator& rho, const DensityOperator& sigma);

/// Largest entrywise modulus of a - b.
double max_abs_diff(const Matrix& a, const Matrix& b);

}  // namespace qcovert
