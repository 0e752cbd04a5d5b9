#include "qcovert/errors.hpp"
#include "qcovert/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qcovert {

namespace {

double off_diagonal_norm2(const Matrix& a) {
    double s = 0.0;
    const Eigen::Index n = a.rows();
    for (Eigen::Index j = 0; j < n; ++j)
        for (Eigen::Index i = 0; i < n; ++i)
            if (i != j) s += std::norm(a(i, j));
    return s;
}

// Rotates columns p and q of `m` by the 2x2 unitary
//   [ c              s           ]
//   [ -s conj(ph)    c conj(ph)  ]
void rotate_columns(Matrix& m, Eigen::Index p, Eigen::Index q, double c, double s, Complex ph_conj) {
    Complex* cp = m.col(p).data();
    Complex* cq = m.col(q).data();
    const Eigen::Index n = m.rows();
    const double pr = ph_conj.real();
    const double pi = ph_conj.imag();
    // Real arithmetic: operands are finite, so the checked complex product is not needed.
    for (Eigen::Index k = 0; k < n; ++k) {
        const double xpr = cp[k].real();
        const double xpi = cp[k].imag();
        const double xqr = pr * cq[k].real() - pi * cq[k].imag();
        const double xqi = pr * cq[k].imag() + pi * cq[k].real();
        cp[k] = {c * xpr - s * xqr, c * xpi - s * xqi};
        cq[k] = {s * xpr + c * xqr, s * xpi + c * xqi};
    }
}

// Lexicographic "greater" over phase-normalized vectors, with a small
// tolerance so rounding noise does not decide ties.
bool lex_greater(const Vector& a, const Vector& b) {
    constexpr double tol = 1e-12;
    for (Eigen::Index k = 0; k < a.size(); ++k) {
        const double dr = a(k).real() - b(k).real();
        if (std::abs(dr) > tol) return dr > 0.0;
        const double di = a(k).imag() - b(k).imag();
        if (std::abs(di) > tol) return di > 0.0;
    }
    return false;
}

void normalize_phase(Eigen::Ref<Vector> v) {
    for (Eigen::Index k = 0; k < v.size(); ++k) {
        const double mag = std::abs(v(k));
        if (mag > 1e-12) {
            v *= std::conj(v(k)) / mag;
            v(k) = mag;
            return;
        }
    }
}

}  // namespace

void canonicalize(SpectralDecomposition& sd) {
    const auto n = static_cast<Eigen::Index>(sd.dim());
    Matrix& v = sd.eigenvectors;
    const std::vector<double>& vals = sd.eigenvalues;
    for (Eigen::Index i = 0; i < n; ++i) normalize_phase(v.col(i));

    std::vector<std::size_t> order(sd.dim());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return vals[x] > vals[y]; });

    // Within clusters of (numerically) equal eigenvalues, order by eigenvector.
    double vmax = 1.0;
    for (double x : vals) vmax = std::max(vmax, std::abs(x));
    const double tie = 1e-12 * vmax;
    for (std::size_t start = 0; start < order.size();) {
        std::size_t end = start + 1;
        while (end < order.size() && vals[order[end - 1]] - vals[order[end]] <= tie) ++end;
        if (end - start > 1) {
            std::stable_sort(order.begin() + static_cast<std::ptrdiff_t>(start),
                             order.begin() + static_cast<std::ptrdiff_t>(end), [&](std::size_t x, std::size_t y) {
                                 return lex_greater(v.col(static_cast<Eigen::Index>(x)),
                                                    v.col(static_cast<Eigen::Index>(y)));
                             });
        }
        start = end;
    }

    std::vector<double> sorted_vals(order.size());
    Matrix sorted_vecs(n, n);
    for (std::size_t i = 0; i < order.size(); ++i) {
        sorted_vals[i] = vals[order[i]];
        sorted_vecs.col(static_cast<Eigen::Index>(i)) = v.col(static_cast<Eigen::Index>(order[i]));
    }
    sd.eigenvalues = std::move(sorted_vals);
    sd.eigenvectors = std::move(sorted_vecs);
}

SpectralDecomposition eig_hermitian(const HermitianOperator& h, const JacobiOptions& opts) {
    Matrix a = h.matrix();
    const Eigen::Index n = a.rows();
    Matrix v = Matrix::Identity(n, n);

    const double frob2 = a.squaredNorm();
    const double target2 = opts.tolerance * opts.tolerance * frob2;
    const double skip = 1e-20 * std::sqrt(frob2);

    int sweep = 0;
    while (off_diagonal_norm2(a) > target2) {
        if (sweep++ >= opts.max_sweeps) {
            throw NumericalError("eig_hermitian: Jacobi did not converge in " + std::to_string(opts.max_sweeps) +
                                 " sweeps (dim " + std::to_string(n) + ")");
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const Complex b = a(p, q);
                const double abs_b = std::abs(b);
                if (abs_b <= skip) {
                    if (abs_b != 0.0) a(p, q) = a(q, p) = 0.0;
                    continue;
                }
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const Complex ph_conj = std::conj(b) / abs_b;

                const double theta = (aqq - app) / (2.0 * abs_b);
                double t;
                if (std::abs(theta) > 1e150) {
                    t = 0.5 / theta;
                } else {
                    t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                }
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;

                // A <- A U on all rows; rows p, q are then restored from
                // Hermiticity and the rotated 2x2 block is written exactly.
                rotate_columns(a, p, q, c, s, ph_conj);
                a.row(p) = a.col(p).adjoint();
                a.row(q) = a.col(q).adjoint();
                a(p, p) = app - t * abs_b;
                a(q, q) = aqq + t * abs_b;
                a(p, q) = 0.0;
                a(q, p) = 0.0;

                rotate_columns(v, p, q, c, s, ph_conj);
            }
        }
    }

    SpectralDecomposition sd;
    sd.eigenvalues.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) sd.eigenvalues[static_cast<std::size_t>(i)] = a(i, i).real();
    sd.eigenvectors = std::move(v);
    canonicalize(sd);
    return sd;
}

}  // namespace qcovert
