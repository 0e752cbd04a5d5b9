#pragma once

// Exact finite-n simulation of the warden's optimal (Helstrom) test between
// omega_0^{(x) n} and omega_alpha^{(x) n} at equal priors.

#include "qcovert/channels.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qcovert {

/// Largest n-fold warden dimension the simulator will build.
inline constexpr std::size_t kMaxWardenDim = std::size_t{1} << 10;

struct DetectionResult {
    std::int64_t n = 0;
    double alpha = 0.0;
    /// (1/2)||omega_alpha^{(x) n} - omega_0^{(x) n}||_1
    double trace_dist = 0.0;
    /// (1 - trace_dist) / 2, in [0, 1/2].
    double error_prob = 0.5;
    /// (1/2)(1 - sqrt(ln2 * div_total / 2)); may be negative.
    double pinsker_floor = 0.5;
    /// D(omega_alpha^{(x) n} || omega_0^{(x) n}) in bits, computed on the n-fold states.
    double div_total = 0.0;
};

/// Largest n with warden_dim^n <= kMaxWardenDim.
std::int64_t max_blocklength(const ChannelSpec& spec);

/// Throws ValidationError for n < 1 or alpha outside [0, 1] and DimensionError
/// when warden_dim^n exceeds kMaxWardenDim.
DetectionResult warden_error(std::int64_t n, double alpha, const ChannelSpec& spec);

/// E1Only at alpha = n^(nu - 2/3) for each n. Throws NumericalError if any
/// point violates error_prob >= pinsker_floor.
std::vector<DetectionResult> covertness_sweep(double nu, double q, std::span<const std::int64_t> n_list);

}  // namespace qcovert
