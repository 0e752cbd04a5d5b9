#include "qcovert/divergences.hpp"

#include "qcovert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qcovert {

namespace {

void require_same_dim(const HermitianOperator& a, const HermitianOperator& b, const char* what) {
    if (a.dim() != b.dim()) throw ShapeError(std::string(what) + ": dimension mismatch");
}

bool support_contained(const DensityOperator& rho, const SpectralDecomposition& sigma_sd) {
    const double tau = sigma_sd.support_threshold();
    double leak = 0.0;
    for (std::size_t i = 0; i < sigma_sd.dim(); ++i) {
        if (sigma_sd.eigenvalues[i] <= tau) leak += rho.op().expectation(sigma_sd.eigenvector(i));
    }
    return leak <= kSupportTol;
}

double trace_product(const Matrix& a, const Matrix& b) {
    // Tr[a b] without forming the product.
    return (a.transpose().cwiseProduct(b)).sum().real();
}

}  // namespace

bool DvqTriple::finite() const { return std::isfinite(d) && std::isfinite(v) && std::isfinite(q4); }

bool support_contained(const DensityOperator& rho, const DensityOperator& sigma) {
    require_same_dim(rho, sigma, "support_contained");
    return support_contained(rho, eig_hermitian(sigma.op()));
}

double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma) {
    require_same_dim(rho, sigma, "relative_entropy");
    const auto sigma_sd = eig_hermitian(sigma.op());
    if (!support_contained(rho, sigma_sd)) return kInfinity;
    const auto rho_sd = eig_hermitian(rho.op());

    double neg_entropy = 0.0;
    const double tau = rho_sd.support_threshold();
    for (double l : rho_sd.eigenvalues)
        if (l > tau) neg_entropy += l * std::log2(l);

    const Matrix log_sigma = matrix_log2(sigma_sd).matrix();
    return neg_entropy - trace_product(rho.matrix(), log_sigma);
}

DvqTriple moments(const DensityOperator& rho, const DensityOperator& sigma) {
    require_same_dim(rho, sigma, "moments");
    const auto sigma_sd = eig_hermitian(sigma.op());
    if (!support_contained(rho, sigma_sd)) return DvqTriple::infinite();

    const Matrix log_rho = matrix_log2(rho.op()).matrix();
    const Matrix log_sigma = matrix_log2(sigma_sd).matrix();
    Matrix delta = log_rho - log_sigma;
    const double d = trace_product(rho.matrix(), delta);
    delta.diagonal().array() -= d;

    const Matrix delta2 = delta * delta;
    DvqTriple out;
    out.d = d;
    out.v = std::max(0.0, trace_product(rho.matrix(), delta2));
    out.q4 = std::max(0.0, trace_product(rho.matrix(), Matrix(delta2 * delta2)));
    return out;
}

double eta(const HermitianOperator& rho, const DensityOperator& sigma) {
    require_same_dim(rho, sigma, "eta");
    const auto sd = eig_hermitian(sigma.op());
    const double lmax = sd.max_eigenvalue();
    const double tau = sd.support_threshold();
    const Matrix diff = sd.eigenvectors.adjoint() * (rho.matrix() - sigma.matrix()) * sd.eigenvectors;

    const std::size_t n = sd.dim();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double w = std::norm(diff(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
            if (w == 0.0) continue;
            const double li = sd.eigenvalues[i];
            const double lj = sd.eigenvalues[j];
            if (li <= tau || lj <= tau) {
                if (w > kSupportTol * kSupportTol) return kInfinity;
                continue;
            }
            double c;
            if (std::abs(li - lj) <= kSupportTol * lmax) {
                c = 1.0 / (0.5 * (li + lj) * std::numbers::ln2);
            } else {
                c = (std::log2(li) - std::log2(lj)) / (li - lj);
            }
            total += c * w;
        }
    }
    return total;
}

}  // namespace qcovert
