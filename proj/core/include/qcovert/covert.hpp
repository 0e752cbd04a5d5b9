#pragma once

// Entanglement-assisted covert communication over the qubit depolarizing
// channel with the warden holding E1.
//
// Alice feeds half of sqrt(1-alpha)|00> + sqrt(alpha)|11> into the channel;
// the reference half A1 stays with Bob as the entanglement resource. The
// code size follows from the relative entropy D and moments V, Q between
// psi_{A1 B} and psi_{A1} (x) psi_B, and covertness from the warden's
// divergence D(omega_alpha || omega_0).

#include "qcovert/divergences.hpp"
#include "qcovert/linalg.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace qcovert {

/// Upper end of the Berry-Esseen constant range [0.40973, 0.4784].
inline constexpr double kBerryEsseen = 0.4784;
/// Reference alpha at which the fourth-moment order constant is estimated.
inline constexpr double kQReferenceAlpha = 1e-3;

/// Throws ValidationError unless 0 <= alpha <= 1.
void validate_alpha(double alpha);

/// (1-a) b + a (1-b).
double binary_convolution(double a, double b);

/// 2 (1-q)^2 / (2-q): leading coefficient of D and V in alpha.
double leading_coefficient(double q);

/// sqrt(1-alpha)|00> + sqrt(alpha)|11> on (A1, A).
PureState entangled_input(double alpha);

/// psi_{A1 B} from its closed form: diagonal ((1-q/2)(1-a), (q/2)(1-a),
/// (q/2)a, (1-q/2)a) with |00><11| coupling (1-q) sqrt(a(1-a)).
DensityOperator joint_output_closed_form(double alpha, double q);
/// psi_{A1 B} by applying id (x) depolarize to the entangled input in the
/// Pauli-twirl form.
DensityOperator joint_output_generic(double alpha, double q);
/// psi_{A1} (x) psi_B.
DensityOperator product_of_marginals(double alpha, double q);

/// a|00><00| + b|01><01| + c|10><10| + d|11><11| + e(|00><11| + |11><00|).
struct ArrowMatrixParams {
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    double e = 0.0;

    Matrix assemble() const;
    /// The parameters of psi_{A1 B}.
    static ArrowMatrixParams joint_output(double alpha, double q);
};

/// Closed-form spectral decomposition of an arrow matrix, ordered as
/// eig_hermitian orders its output.
SpectralDecomposition arrow_spectral(const ArrowMatrixParams& p);

/// Exact D, V, Q of psi_{A1 B} against psi_{A1} (x) psi_B.
DvqTriple dvq_exact(double alpha, double q);

/// Leading small-alpha terms: D = -k a log2 a, V = k a log2^2 a with
/// k = leading_coefficient(q), and Q = c_Q a log2^2 a with c_Q from
/// q_order_constant(q). alpha = 0 gives zeros.
DvqTriple dvq_asymptotic(double alpha, double q);

/// Q_exact / (a log2^2 a) evaluated at kQReferenceAlpha.
double q_order_constant(double q);

/// Blocklength and schedule exponent; alpha_n = n^(nu - 2/3), gamma_n = n^(nu - 1/6).
struct ScheduleParams {
    std::int64_t n = 2;
    double nu = 0.05;

    ScheduleParams() = default;
    /// Throws ValidationError unless n >= 1 and 0 < nu < 1/6.
    ScheduleParams(std::int64_t n, double nu);

    double alpha() const;
    double gamma() const;
};

/// C_n = (beta/sqrt(2 pi)) Q^{3/4}/V + V/sqrt(2 pi) + log2(4 eps n).
double lemma1_correction(std::int64_t n, double eps, const DvqTriple& dvq);

/// n D + sqrt(n V) Phi^{-1}(eps) - C_n. Not clamped; may be negative.
double lemma1_logM(std::int64_t n, double eps, const DvqTriple& dvq);

/// 2 (2/3 - nu) (1-q)^2/(2-q) gamma_n sqrt(n) log2 n.
double lemma2_logM_asymptotic(const ScheduleParams& s, double q);

struct WillieDivergence {
    double alpha = 0.0;
    double single_copy = 0.0;  // D(omega_alpha || omega_0)
    double exact = 0.0;        // n * single_copy, the n-fold divergence
    double quadratic = 0.0;    // n alpha^2 eta / 2
    double eta = 0.0;          // eta(omega_1 || omega_0)
};

/// The warden's n-fold divergence for scenario E1Only. The average state is
/// exactly omega_alpha^{(x) n}, so the n-fold value is n times the single-copy one.
WillieDivergence willie_divergence_total(const ScheduleParams& s, double q);

/// L = logM / (log2(n) sqrt(n * div_total)). Throws NumericalError for
/// div_total <= 0 and ValidationError for n < 2.
double covert_rate(double logM, std::int64_t n, double div_total);

/// eta(omega_1 || omega_0) for scenario E1Only.
double warden_eta(double q);

enum class CapacityBoundary { Interior, InfiniteAtZero, ZeroAtOne };

struct CapacityBound {
    double value = 0.0;
    double eta = 0.0;
    CapacityBoundary boundary = CapacityBoundary::Interior;
};

/// (4 sqrt 2 / 3) (1-q)^2 / ((2-q) sqrt(eta)). q = 0 gives +infinity and
/// q = 1 gives 0, flagged through `boundary`.
CapacityBound capacity_lower_bound(double q);

/// The nu-dependent limit of L_n: 2 (2/3 - nu) (1-q)^2/(2-q) / sqrt(eta/2).
double rate_limit(double nu, double q);

struct RateReport {
    std::int64_t n = 0;
    double nu = 0.0;
    double q = 0.0;
    double eps = 0.0;
    double alpha_n = 0.0;
    DvqTriple dvq;
    double logM_lemma1 = 0.0;
    double logM_lemma2 = 0.0;
    double willie_div_total = 0.0;
    double covert_rate_L = 0.0;
    double rate_limit_L = 0.0;
    double capacity_lb = 0.0;
};

RateReport rate_report(const ScheduleParams& s, double q, double eps);

struct ConvergenceReport {
    double nu = 0.0;
    double q = 0.0;
    double eps = 0.0;
    double limit = 0.0;
    std::vector<RateReport> points;
    /// limit - L_n per point, in grid order.
    std::vector<double> gaps;
};

ConvergenceReport finite_rate_convergence(double nu, double q, double eps, std::span<const std::int64_t> n_grid);

}  // namespace qcovert
