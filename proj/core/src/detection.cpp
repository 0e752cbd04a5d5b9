#include "qcovert/detection.hpp"

#include "qcovert/covert.hpp"
#include "qcovert/divergences.hpp"
#include "qcovert/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace qcovert {

std::int64_t max_blocklength(const ChannelSpec& spec) {
    std::int64_t n = 0;
    for (std::size_t dim = spec.warden_dim(); dim <= kMaxWardenDim; dim *= spec.warden_dim()) ++n;
    return n;
}

DetectionResult warden_error(std::int64_t n, double alpha, const ChannelSpec& spec) {
    if (n < 1) throw ValidationError("warden_error: n must be positive");
    validate_alpha(alpha);
    if (n > max_blocklength(spec)) {
        throw DimensionError("warden_error: n = " + std::to_string(n) + " exceeds the cap of " +
                             std::to_string(max_blocklength(spec)) + " for scenario " +
                             std::string(to_string(spec.scenario)));
    }
    const auto count = static_cast<std::size_t>(n);
    const auto null_state = tensor_power(willie_output(0, spec), count);
    const auto alt_state = tensor_power(willie_mixture(alpha, spec), count);

    DetectionResult r;
    r.n = n;
    r.alpha = alpha;
    r.trace_dist = trace_distance(alt_state, null_state);
    r.error_prob = 0.5 * (1.0 - r.trace_dist);
    r.div_total = alt_state == null_state ? 0.0 : relative_entropy(alt_state, null_state);
    r.pinsker_floor = 0.5 * (1.0 - std::sqrt(std::numbers::ln2 * std::max(r.div_total, 0.0) / 2.0));
    return r;
}

std::vector<DetectionResult> covertness_sweep(double nu, double q, std::span<const std::int64_t> n_list) {
    const ChannelSpec spec(q, Scenario::E1Only);
    std::vector<DetectionResult> out;
    out.reserve(n_list.size());
    for (std::int64_t n : n_list) {
        const ScheduleParams s(n, nu);
        auto r = warden_error(n, s.alpha(), spec);
        if (r.error_prob < r.pinsker_floor) {
            throw NumericalError("covertness_sweep: error probability below the Pinsker floor at n = " +
                                 std::to_string(n));
        }
        out.push_back(r);
    }
    return out;
}

}  // namespace qcovert
