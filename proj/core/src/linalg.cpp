#include "qcovert/linalg.hpp"

#include "qcovert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qcovert {

namespace {

Matrix symmetrized(const Matrix& m) { return (m + m.adjoint()) * 0.5; }

void check_square(const Matrix& m) {
    if (m.rows() == 0 || m.rows() != m.cols()) {
        throw ShapeError("operator must be a non-empty square matrix, got " + std::to_string(m.rows()) +
                         "x" + std::to_string(m.cols()));
    }
    if (static_cast<std::size_t>(m.rows()) > kMaxDim) {
        throw DimensionError("operator dimension " + std::to_string(m.rows()) + " exceeds cap " +
                             std::to_string(kMaxDim));
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator::HermitianOperator(Matrix m) {
    check_square(m);
    double scale = 1.0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            const Complex z = m(i, j);
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
                throw DomainError("operator has a non-finite entry");
            }
            scale = std::max(scale, std::abs(z));
        }
    }
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol * scale) {
        throw DomainError("operator is not Hermitian (asymmetry " + std::to_string(asym) + ")");
    }
    m_ = symmetrized(m);
}

HermitianOperator hermitian_from_trusted(Matrix m) { return HermitianOperator(std::move(m), HermitianOperator::Trusted{}); }

HermitianOperator HermitianOperator::identity(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return HermitianOperator(Matrix::Identity(n, n));
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return HermitianOperator(Matrix::Zero(n, n));
}

HermitianOperator HermitianOperator::diagonal(std::span<const double> d) {
    const auto n = static_cast<Eigen::Index>(d.size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return HermitianOperator(std::move(m));
}

HermitianOperator HermitianOperator::diagonal(std::initializer_list<double> d) {
    return diagonal(std::span<const double>(d.begin(), d.size()));
}

HermitianOperator HermitianOperator::projector(const Vector& v) {
    return HermitianOperator(Matrix(v * v.adjoint()));
}

double HermitianOperator::expectation(const Vector& v) const {
    if (v.size() != m_.rows()) throw ShapeError("expectation: vector/operator dimension mismatch");
    return v.dot(m_ * v).real();
}

HermitianOperator HermitianOperator::operator+(const HermitianOperator& o) const {
    if (dim() != o.dim()) throw ShapeError("operator sum: dimension mismatch");
    return HermitianOperator(Matrix(m_ + o.m_), Trusted{});
}

HermitianOperator HermitianOperator::operator-(const HermitianOperator& o) const {
    if (dim() != o.dim()) throw ShapeError("operator difference: dimension mismatch");
    return HermitianOperator(Matrix(m_ - o.m_), Trusted{});
}

HermitianOperator HermitianOperator::operator*(double s) const {
    if (!std::isfinite(s)) throw DomainError("operator scaling by a non-finite factor");
    return HermitianOperator(Matrix(m_ * s), Trusted{});
}

HermitianOperator HermitianOperator::conjugated(const Matrix& u) const {
    if (u.rows() != m_.rows() || u.cols() != m_.cols()) throw ShapeError("conjugation: dimension mismatch");
    return HermitianOperator(symmetrized(u * m_ * u.adjoint()), Trusted{});
}

// ---------------------------------------------------------------------------
// PureState

PureState::PureState(Vector amplitudes) : amps_(std::move(amplitudes)) {
    if (amps_.size() == 0) throw ShapeError("pure state must have positive dimension");
    for (Eigen::Index i = 0; i < amps_.size(); ++i) {
        if (!std::isfinite(amps_(i).real()) || !std::isfinite(amps_(i).imag())) {
            throw DomainError("pure state has a non-finite amplitude");
        }
    }
    if (std::abs(amps_.norm() - 1.0) > 1e-12) {
        throw DomainError("pure state is not normalized (norm " + std::to_string(amps_.norm()) + ")");
    }
}

PureState PureState::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) throw ShapeError("basis index out of range");
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(index)) = 1.0;
    return PureState(std::move(v));
}

// ---------------------------------------------------------------------------
// DensityOperator

DensityOperator::DensityOperator(HermitianOperator op) : op_(std::move(op)) {
    const double tr = op_.trace();
    if (std::abs(tr - 1.0) > kStateTol) {
        throw DomainError("density operator must have unit trace (trace " + std::to_string(tr) + ")");
    }
    const auto sd = eig_hermitian(op_);
    const double lmin = sd.eigenvalues.back();
    if (lmin < -kStateTol) {
        throw DomainError("density operator has negative eigenvalue " + std::to_string(lmin));
    }
}

DensityOperator density_from_trusted(Matrix m) {
    check_square(m);
    return DensityOperator(hermitian_from_trusted(symmetrized(m)), DensityOperator::Trusted{});
}

DensityOperator DensityOperator::pure(const PureState& psi) {
    return density_from_trusted(psi.amplitudes() * psi.amplitudes().adjoint());
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
    const auto n = static_cast<Eigen::Index>(dim);
    return density_from_trusted(Matrix::Identity(n, n) / static_cast<double>(dim));
}

DensityOperator DensityOperator::basis_state(std::size_t dim, std::size_t index) {
    return pure(PureState::basis(dim, index));
}

DensityOperator DensityOperator::classical(std::span<const double> probs) {
    double total = 0.0;
    for (double p : probs) {
        if (!(p >= 0.0)) throw DomainError("classical state: negative or NaN probability");
        total += p;
    }
    if (std::abs(total - 1.0) > kStateTol) throw DomainError("classical state: probabilities must sum to 1");
    const auto n = static_cast<Eigen::Index>(probs.size());
    Matrix m = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) m(i, i) = probs[static_cast<std::size_t>(i)];
    return density_from_trusted(std::move(m));
}

DensityOperator DensityOperator::classical(std::initializer_list<double> probs) {
    return classical(std::span<const double>(probs.begin(), probs.size()));
}

DensityOperator DensityOperator::mix(const DensityOperator& a, const DensityOperator& b, double w) {
    if (!(w >= 0.0 && w <= 1.0)) throw DomainError("mixing weight must lie in [0,1]");
    if (a.dim() != b.dim()) throw ShapeError("mix: dimension mismatch");
    Matrix m = a.matrix() + w * (b.matrix() - a.matrix());
    return DensityOperator(hermitian_from_trusted(std::move(m)), Trusted{});
}

// ---------------------------------------------------------------------------
// SpectralDecomposition

Matrix SpectralDecomposition::reconstruct() const {
    Eigen::VectorXd d(static_cast<Eigen::Index>(dim()));
    for (std::size_t i = 0; i < dim(); ++i) d(static_cast<Eigen::Index>(i)) = eigenvalues[i];
    return eigenvectors * d.asDiagonal() * eigenvectors.adjoint();
}

double SpectralDecomposition::support_threshold() const { return kSupportTol * std::max(max_eigenvalue(), 0.0); }

Matrix SpectralDecomposition::kernel_projector() const {
    const auto n = static_cast<Eigen::Index>(dim());
    Matrix p = Matrix::Zero(n, n);
    const double tau = support_threshold();
    for (std::size_t i = 0; i < dim(); ++i) {
        if (eigenvalues[i] <= tau) {
            const Vector v = eigenvector(i);
            p += v * v.adjoint();
        }
    }
    return p;
}

// ---------------------------------------------------------------------------
// Tensor products and partial traces

HermitianOperator tensor(const HermitianOperator& a, const HermitianOperator& b) {
    const std::size_t d = a.dim() * b.dim();
    if (d > kMaxDim) {
        throw DimensionError("tensor product dimension " + std::to_string(d) + " exceeds cap " +
                             std::to_string(kMaxDim));
    }
    const Eigen::Index na = a.matrix().rows();
    const Eigen::Index nb = b.matrix().rows();
    Matrix m(na * nb, na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        for (Eigen::Index j = 0; j < na; ++j) {
            m.block(i * nb, j * nb, nb, nb) = a.matrix()(i, j) * b.matrix();
        }
    }
    return HermitianOperator(std::move(m), HermitianOperator::Trusted{});
}

DensityOperator tensor(const DensityOperator& a, const DensityOperator& b) {
    return DensityOperator(tensor(a.op(), b.op()), DensityOperator::Trusted{});
}

DensityOperator tensor_power(const DensityOperator& a, std::size_t n) {
    if (n == 0) throw ShapeError("tensor power requires n >= 1");
    DensityOperator out = a;
    for (std::size_t k = 1; k < n; ++k) out = tensor(out, a);
    return out;
}

HermitianOperator partial_trace(const HermitianOperator& rho, std::span<const std::size_t> dims,
                                std::span<const std::size_t> keep) {
    if (dims.empty()) throw ShapeError("partial_trace: empty subsystem list");
    std::size_t total = 1;
    for (std::size_t d : dims) {
        if (d == 0) throw ShapeError("partial_trace: subsystem dimension must be positive");
        total *= d;
    }
    if (total != rho.dim()) {
        throw ShapeError("partial_trace: product of dims " + std::to_string(total) + " != operator dim " +
                         std::to_string(rho.dim()));
    }
    if (keep.empty()) throw ShapeError("partial_trace: keep set must be nonempty");
    std::vector<bool> kept(dims.size(), false);
    for (std::size_t k : keep) {
        if (k >= dims.size()) throw ShapeError("partial_trace: subsystem index out of range");
        if (kept[k]) throw ShapeError("partial_trace: duplicate subsystem index");
        kept[k] = true;
    }

    const std::size_t nsys = dims.size();
    // Row-major strides: subsystem 0 is the most significant digit.
    std::vector<std::size_t> stride(nsys);
    std::size_t s = 1;
    for (std::size_t i = nsys; i-- > 0;) {
        stride[i] = s;
        s *= dims[i];
    }

    std::size_t kept_dim = 1;
    std::size_t traced_dim = 1;
    for (std::size_t i = 0; i < nsys; ++i) (kept[i] ? kept_dim : traced_dim) *= dims[i];

    // Full index of (kept multi-index k, traced multi-index t).
    auto full_index = [&](std::size_t k, std::size_t t) {
        std::size_t idx = 0;
        for (std::size_t i = nsys; i-- > 0;) {
            if (kept[i]) {
                idx += (k % dims[i]) * stride[i];
                k /= dims[i];
            } else {
                idx += (t % dims[i]) * stride[i];
                t /= dims[i];
            }
        }
        return idx;
    };

    std::vector<std::size_t> table(kept_dim * traced_dim);
    for (std::size_t k = 0; k < kept_dim; ++k)
        for (std::size_t t = 0; t < traced_dim; ++t) table[k * traced_dim + t] = full_index(k, t);

    const auto kd = static_cast<Eigen::Index>(kept_dim);
    Matrix out = Matrix::Zero(kd, kd);
    const Matrix& m = rho.matrix();
    for (std::size_t i = 0; i < kept_dim; ++i) {
        for (std::size_t j = 0; j < kept_dim; ++j) {
            Complex acc = 0.0;
            for (std::size_t t = 0; t < traced_dim; ++t) {
                acc += m(static_cast<Eigen::Index>(table[i * traced_dim + t]),
                         static_cast<Eigen::Index>(table[j * traced_dim + t]));
            }
            out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = acc;
        }
    }
    return HermitianOperator(symmetrized(out), HermitianOperator::Trusted{});
}

DensityOperator partial_trace(const DensityOperator& rho, std::span<const std::size_t> dims,
                              std::span<const std::size_t> keep) {
    return DensityOperator(partial_trace(rho.op(), dims, keep), DensityOperator::Trusted{});
}

// ---------------------------------------------------------------------------
// Spectral functions

HermitianOperator matrix_log2(const SpectralDecomposition& sd, KernelPolicy policy) {
    const double tau = sd.support_threshold();
    for (double l : sd.eigenvalues) {
        if (l < -kStateTol) throw DomainError("matrix_log2: negative eigenvalue " + std::to_string(l));
        if (l <= tau && policy == KernelPolicy::Reject) {
            throw SupportError("matrix_log2: operator has a nontrivial kernel");
        }
    }
    if (tau <= 0.0) {
        // Zero operator: everything is kernel.
        if (policy == KernelPolicy::Reject) throw SupportError("matrix_log2: zero operator");
        return HermitianOperator::zero(sd.dim());
    }
    return apply_spectral(sd, [tau](double l) { return l > tau ? std::log2(l) : 0.0; });
}

HermitianOperator matrix_log2(const HermitianOperator& rho, KernelPolicy policy) {
    return matrix_log2(eig_hermitian(rho), policy);
}

HermitianOperator matrix_exp2(const HermitianOperator& h) {
    return apply_spectral(eig_hermitian(h), [](double l) { return std::exp2(l); });
}

double trace_distance(const DensityOperator& rho, const DensityOperator& sigma) {
    if (rho.dim() != sigma.dim()) throw ShapeError("trace_distance: dimension mismatch");
    const auto sd = eig_hermitian(rho.op() - sigma.op());
    double sum = 0.0;
    for (double mu : sd.eigenvalues) sum += std::abs(mu);
    return std::clamp(0.5 * sum, 0.0, 1.0);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) throw ShapeError("max_abs_diff: shape mismatch");
    if (a.size() == 0) return 0.0;
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qcovert
