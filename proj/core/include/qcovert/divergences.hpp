#pragma once

// Quantum relative entropy, its central moments, and the second-order
// sensitivity functional eta. All logarithms are base 2; results are in bits.

#include "qcovert/linalg.hpp"

#include <limits>

namespace qcovert {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// Relative entropy D and its second/fourth central moments V, Q.
struct DvqTriple {
    double d = 0.0;   // bits
    double v = 0.0;   // bits^2
    double q4 = 0.0;  // bits^4

    bool finite() const;
    static DvqTriple infinite() { return {kInfinity, kInfinity, kInfinity}; }
};

/// True when supp(rho) lies inside supp(sigma), with sigma's kernel detected
/// at kSupportTol relative to its largest eigenvalue.
bool support_contained(const DensityOperator& rho, const DensityOperator& sigma);

/// Tr[rho (log2 rho - log2 sigma)], or +infinity when the support condition fails.
double relative_entropy(const DensityOperator& rho, const DensityOperator& sigma);

/// D, V = Tr[rho Delta^2], Q = Tr[rho Delta^4] with
/// Delta = log2 rho - log2 sigma - D * I (logs taken on the respective supports).
/// Returns DvqTriple::infinite() on a support violation.
DvqTriple moments(const DensityOperator& rho, const DensityOperator& sigma);

/// eta(rho||sigma) = sum_{i,j} c_ij |<i|rho - sigma|j>|^2 over sigma's eigenbasis with
/// c_ij = (log2 l_i - log2 l_j)/(l_i - l_j), and c_ij = 1/(l_i ln 2) when
/// |l_i - l_j| <= kSupportTol * l_max. Returns +infinity if rho - sigma has
/// weight on sigma's kernel.
double eta(const HermitianOperator& rho, const DensityOperator& sigma);

}  // namespace qcovert
