#include "qcovert/covert.hpp"

#include "qcovert/channels.hpp"
#include "qcovert/errors.hpp"
#include "qcovert/normal.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace qcovert {

namespace {

Matrix identity_kron(const Matrix& p) {
    Matrix m = Matrix::Zero(4, 4);
    m.block(0, 0, 2, 2) = p;
    m.block(2, 2, 2, 2) = p;
    return m;
}

void validate_eps(double eps) {
    if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0,1), got " + std::to_string(eps));
}

}  // namespace

void validate_alpha(double alpha) {
    if (!(alpha >= 0.0 && alpha <= 1.0)) throw ValidationError("alpha must lie in [0,1], got " + std::to_string(alpha));
}

double binary_convolution(double a, double b) { return (1.0 - a) * b + a * (1.0 - b); }

double leading_coefficient(double q) { return 2.0 * (1.0 - q) * (1.0 - q) / (2.0 - q); }

PureState entangled_input(double alpha) {
    validate_alpha(alpha);
    Vector v = Vector::Zero(4);
    v(0) = std::sqrt(1.0 - alpha);
    v(3) = std::sqrt(alpha);
    return PureState(std::move(v));
}

// ---------------------------------------------------------------------------

Matrix ArrowMatrixParams::assemble() const {
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = a;
    m(1, 1) = b;
    m(2, 2) = c;
    m(3, 3) = d;
    m(0, 3) = m(3, 0) = e;
    return m;
}

ArrowMatrixParams ArrowMatrixParams::joint_output(double alpha, double q) {
    validate_alpha(alpha);
    validate_noise(q);
    return {
        .a = (1.0 - q / 2.0) * (1.0 - alpha),
        .b = (q / 2.0) * (1.0 - alpha),
        .c = (q / 2.0) * alpha,
        .d = (1.0 - q / 2.0) * alpha,
        .e = (1.0 - q) * std::sqrt(alpha * (1.0 - alpha)),
    };
}

DensityOperator joint_output_closed_form(double alpha, double q) {
    return density_from_trusted(ArrowMatrixParams::joint_output(alpha, q).assemble());
}

DensityOperator joint_output_generic(double alpha, double q) {
    validate_noise(q);
    const Vector psi = entangled_input(alpha).amplitudes();
    const Matrix rho = psi * psi.adjoint();
    Matrix out = (1.0 - 0.75 * q) * rho;
    for (const Matrix& p : {pauli_x(), pauli_y(), pauli_z()}) {
        const Matrix k = identity_kron(p);
        out += (q / 4.0) * k * rho * k.adjoint();
    }
    return density_from_trusted(std::move(out));
}

DensityOperator product_of_marginals(double alpha, double q) {
    validate_alpha(alpha);
    validate_noise(q);
    const double b0 = binary_convolution(1.0 - q / 2.0, alpha);
    const double b1 = binary_convolution(q / 2.0, alpha);
    return DensityOperator::classical({(1.0 - alpha) * b0, (1.0 - alpha) * b1, alpha * b0, alpha * b1});
}

SpectralDecomposition arrow_spectral(const ArrowMatrixParams& p) {
    SpectralDecomposition sd;
    sd.eigenvalues.assign(4, 0.0);
    sd.eigenvectors = Matrix::Zero(4, 4);

    // |01> and |10> are always eigenvectors.
    sd.eigenvalues[1] = p.b;
    sd.eigenvectors(1, 1) = 1.0;
    sd.eigenvalues[2] = p.c;
    sd.eigenvectors(2, 2) = 1.0;

    if (p.e == 0.0) {
        sd.eigenvalues[0] = p.a;
        sd.eigenvectors(0, 0) = 1.0;
        sd.eigenvalues[3] = p.d;
        sd.eigenvectors(3, 3) = 1.0;
    } else {
        // Larger root without cancellation; the smaller one from the product of roots.
        const double disc = std::sqrt((p.a - p.d) * (p.a - p.d) + 4.0 * p.e * p.e);
        const double sum = p.a + p.d;
        const double l1 = 0.5 * (sum + (sum >= 0.0 ? disc : -disc));
        const double l4 = l1 != 0.0 ? (p.a * p.d - p.e * p.e) / l1 : 0.5 * (sum - disc);
        const double lam[2] = {l1, l4};
        for (int k = 0; k < 2; ++k) {
            const double l = lam[k];
            // Eigenvector x|00> + |11>; both expressions for x agree on an
            // eigenvalue, pick the one whose difference does not cancel.
            const double x = std::abs(l - p.d) >= std::abs(l - p.a) ? (l - p.d) / p.e : p.e / (l - p.a);
            const double norm = 1.0 / std::sqrt(x * x + 1.0);
            const Eigen::Index col = k == 0 ? 0 : 3;
            sd.eigenvalues[static_cast<std::size_t>(col)] = l;
            sd.eigenvectors(0, col) = x * norm;
            sd.eigenvectors(3, col) = norm;
        }
    }
    canonicalize(sd);
    return sd;
}

// ---------------------------------------------------------------------------

DvqTriple dvq_exact(double alpha, double q) {
    return moments(joint_output_closed_form(alpha, q), product_of_marginals(alpha, q));
}

double q_order_constant(double q) {
    const double a = kQReferenceAlpha;
    const double l = std::log2(a);
    return dvq_exact(a, q).q4 / (a * l * l);
}

DvqTriple dvq_asymptotic(double alpha, double q) {
    validate_alpha(alpha);
    validate_noise(q);
    if (alpha == 0.0) return {};
    const double k = leading_coefficient(q);
    const double l = std::log2(alpha);
    return {
        .d = -k * alpha * l,
        .v = k * alpha * l * l,
        .q4 = q_order_constant(q) * alpha * l * l,
    };
}

// ---------------------------------------------------------------------------

ScheduleParams::ScheduleParams(std::int64_t n_, double nu_) : n(n_), nu(nu_) {
    if (n < 1) throw ValidationError("blocklength n must be positive");
    if (!(nu > 0.0 && nu < 1.0 / 6.0)) {
        throw ValidationError("schedule exponent nu must lie in (0, 1/6), got " + std::to_string(nu));
    }
}

double ScheduleParams::alpha() const { return std::pow(static_cast<double>(n), nu - 2.0 / 3.0); }

double ScheduleParams::gamma() const { return std::pow(static_cast<double>(n), nu - 1.0 / 6.0); }

double lemma1_correction(std::int64_t n, double eps, const DvqTriple& dvq) {
    if (n < 2) throw ValidationError("lemma1: n must be at least 2");
    validate_eps(eps);
    if (!dvq.finite() || dvq.v < 0.0 || dvq.q4 < 0.0) throw NumericalError("lemma1: moments must be finite and nonnegative");
    const double inv_sqrt_2pi = 1.0 / std::sqrt(2.0 * std::numbers::pi);
    double berry_esseen = 0.0;
    if (dvq.v > 0.0) {
        berry_esseen = kBerryEsseen * inv_sqrt_2pi * std::pow(dvq.q4, 0.75) / dvq.v;
    } else if (dvq.q4 > 0.0) {
        throw NumericalError("lemma1: V = 0 with Q > 0 leaves C_n undefined");
    }
    return berry_esseen + dvq.v * inv_sqrt_2pi + std::log2(4.0 * eps * static_cast<double>(n));
}

double lemma1_logM(std::int64_t n, double eps, const DvqTriple& dvq) {
    const double cn = lemma1_correction(n, eps, dvq);
    const double nn = static_cast<double>(n);
    double spread = 0.0;
    if (eps != 0.5) spread = std::sqrt(nn * dvq.v) * inverse_normal_cdf(eps);
    return nn * dvq.d + spread - cn;
}

double lemma2_logM_asymptotic(const ScheduleParams& s, double q) {
    validate_noise(q);
    const double nn = static_cast<double>(s.n);
    return (2.0 / 3.0 - s.nu) * leading_coefficient(q) * s.gamma() * std::sqrt(nn) * std::log2(nn);
}

double warden_eta(double q) {
    const ChannelSpec spec(q, Scenario::E1Only);
    return eta(willie_output(1, spec).op(), willie_output(0, spec));
}

WillieDivergence willie_divergence_total(const ScheduleParams& s, double q) {
    validate_noise(q);
    const ChannelSpec spec(q, Scenario::E1Only);
    WillieDivergence w;
    w.alpha = s.alpha();
    const auto w0 = willie_output(0, spec);
    const auto wa = willie_mixture(w.alpha, spec);
    w.single_copy = relative_entropy(wa, w0);
    w.exact = static_cast<double>(s.n) * w.single_copy;
    w.eta = eta(willie_output(1, spec).op(), w0);
    w.quadratic = static_cast<double>(s.n) * w.alpha * w.alpha * w.eta / 2.0;
    return w;
}

double covert_rate(double logM, std::int64_t n, double div_total) {
    if (n < 2) throw ValidationError("covert_rate: n must be at least 2");
    if (!(div_total > 0.0)) throw NumericalError("covert_rate: undefined for non-positive warden divergence");
    const double nn = static_cast<double>(n);
    return logM / (std::log2(nn) * std::sqrt(nn * div_total));
}

CapacityBound capacity_lower_bound(double q) {
    validate_noise(q);
    CapacityBound out;
    if (q == 0.0) {
        out.value = kInfinity;
        out.eta = kInfinity;
        out.boundary = CapacityBoundary::InfiniteAtZero;
        return out;
    }
    if (q == 1.0) {
        out.value = 0.0;
        out.boundary = CapacityBoundary::ZeroAtOne;
        return out;
    }
    out.eta = warden_eta(q);
    out.value = (4.0 * std::numbers::sqrt2 / 3.0) * (1.0 - q) * (1.0 - q) / ((2.0 - q) * std::sqrt(out.eta));
    return out;
}

double rate_limit(double nu, double q) {
    if (!(q > 0.0 && q < 1.0)) throw ValidationError("rate_limit: q must lie in (0,1)");
    return (2.0 / 3.0 - nu) * leading_coefficient(q) / std::sqrt(warden_eta(q) / 2.0);
}

RateReport rate_report(const ScheduleParams& s, double q, double eps) {
    if (!(q > 0.0 && q < 1.0)) throw ValidationError("rate_report: q must lie in (0,1)");
    RateReport r;
    r.n = s.n;
    r.nu = s.nu;
    r.q = q;
    r.eps = eps;
    r.alpha_n = s.alpha();
    r.dvq = dvq_exact(r.alpha_n, q);
    r.logM_lemma1 = lemma1_logM(s.n, eps, r.dvq);
    r.logM_lemma2 = lemma2_logM_asymptotic(s, q);
    r.willie_div_total = willie_divergence_total(s, q).exact;
    r.covert_rate_L = covert_rate(r.logM_lemma1, s.n, r.willie_div_total);
    r.rate_limit_L = rate_limit(s.nu, q);
    r.capacity_lb = capacity_lower_bound(q).value;
    return r;
}

ConvergenceReport finite_rate_convergence(double nu, double q, double eps, std::span<const std::int64_t> n_grid) {
    ConvergenceReport rep;
    rep.nu = nu;
    rep.q = q;
    rep.eps = eps;
    rep.limit = rate_limit(nu, q);
    for (std::int64_t n : n_grid) {
        rep.points.push_back(rate_report(ScheduleParams(n, nu), q, eps));
        rep.gaps.push_back(rep.limit - rep.points.back().covert_rate_L);
    }
    return rep;
}

}  // namespace qcovert
