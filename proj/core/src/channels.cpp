#include "qcovert/channels.hpp"

#include "qcovert/errors.hpp"

#include <array>
#include <cmath>
#include <string>

namespace qcovert {

using namespace std::complex_literals;

namespace {

constexpr std::array<std::size_t, 3> kDilationDims{2, 2, 2};

void require_qubit(const DensityOperator& rho) {
    if (rho.dim() != 2) throw ShapeError("expected a qubit state, got dim " + std::to_string(rho.dim()));
}

// E1E2 basis ket index for (e1, e2).
constexpr Eigen::Index env(int e1, int e2) { return 2 * e1 + e2; }

}  // namespace

std::string_view to_string(Scenario s) {
    switch (s) {
        case Scenario::AllEnv: return "AllEnv";
        case Scenario::E2Only: return "E2Only";
        case Scenario::E1Only: return "E1Only";
    }
    return "?";
}

Scenario parse_scenario(std::string_view text) {
    if (text == "1" || text == "AllEnv") return Scenario::AllEnv;
    if (text == "2" || text == "E2Only") return Scenario::E2Only;
    if (text == "3" || text == "E1Only") return Scenario::E1Only;
    throw ValidationError("unknown scenario '" + std::string(text) + "' (expected 1, 2 or 3)");
}

void validate_noise(double q) {
    if (!(q >= 0.0 && q <= 1.0)) throw ValidationError("noise parameter q must lie in [0,1], got " + std::to_string(q));
}

ChannelSpec::ChannelSpec(double q_, Scenario scenario_) : q(q_), scenario(scenario_) { validate_noise(q); }

Matrix pauli_x() {
    Matrix m(2, 2);
    m << 0.0, 1.0, 1.0, 0.0;
    return m;
}

Matrix pauli_y() {
    Matrix m(2, 2);
    m << 0.0, -1i, 1i, 0.0;
    return m;
}

Matrix pauli_z() {
    Matrix m(2, 2);
    m << 1.0, 0.0, 0.0, -1.0;
    return m;
}

// ---------------------------------------------------------------------------

Isometry::Isometry(Matrix v) : v_(std::move(v)) {
    if (v_.rows() != 8 || v_.cols() != 2) throw ShapeError("isometry must be 8x2");
    const Matrix gram = v_.adjoint() * v_;
    if (max_abs_diff(gram, Matrix::Identity(2, 2)) > 1e-12) throw DomainError("V^dagger V != I");
}

DensityOperator Isometry::apply(const DensityOperator& rho) const {
    require_qubit(rho);
    return density_from_trusted(v_ * rho.matrix() * v_.adjoint());
}

DensityOperator depolarize(const DensityOperator& rho, double q) {
    require_qubit(rho);
    validate_noise(q);
    return density_from_trusted((1.0 - q) * rho.matrix() + (q / 2.0) * Matrix::Identity(2, 2));
}

DensityOperator depolarize_pauli(const DensityOperator& rho, double q) {
    require_qubit(rho);
    validate_noise(q);
    const Matrix& r = rho.matrix();
    const Matrix x = pauli_x(), y = pauli_y(), z = pauli_z();
    return density_from_trusted((1.0 - 0.75 * q) * r + (q / 4.0) * (x * r * x + y * r * y + z * r * z));
}

Isometry stinespring_isometry(double q) {
    validate_noise(q);
    // V = sqrt(1-3q/4) 1 (x) |00> + sqrt(q/4) [X (x) |01> + Y (x) |11> + Z (x) |10>]
    const std::array<std::pair<Matrix, Eigen::Index>, 4> terms{{
        {Matrix::Identity(2, 2) * std::sqrt(1.0 - 0.75 * q), env(0, 0)},
        {pauli_x() * std::sqrt(q / 4.0), env(0, 1)},
        {pauli_y() * std::sqrt(q / 4.0), env(1, 1)},
        {pauli_z() * std::sqrt(q / 4.0), env(1, 0)},
    }};
    Matrix v = Matrix::Zero(8, 2);
    for (const auto& [kraus, e] : terms) {
        for (Eigen::Index b = 0; b < 2; ++b)
            for (Eigen::Index a = 0; a < 2; ++a) v(4 * b + e, a) += kraus(b, a);
    }
    return Isometry(std::move(v));
}

DensityOperator dilated_output(const DensityOperator& rho, double q) { return stinespring_isometry(q).apply(rho); }

DensityOperator bob_marginal(const DensityOperator& rho, double q) {
    const std::array<std::size_t, 1> keep{0};
    return partial_trace(dilated_output(rho, q), kDilationDims, keep);
}

DensityOperator willie_marginal(const DensityOperator& rho, const ChannelSpec& spec) {
    const auto joint = dilated_output(rho, spec.q);
    switch (spec.scenario) {
        case Scenario::AllEnv: {
            const std::array<std::size_t, 2> keep{1, 2};
            return partial_trace(joint, kDilationDims, keep);
        }
        case Scenario::E2Only: {
            const std::array<std::size_t, 1> keep{2};
            return partial_trace(joint, kDilationDims, keep);
        }
        case Scenario::E1Only: {
            const std::array<std::size_t, 1> keep{1};
            return partial_trace(joint, kDilationDims, keep);
        }
    }
    throw ValidationError("unknown scenario");
}

DensityOperator willie_output(int x, const ChannelSpec& spec) {
    if (x != 0 && x != 1) throw ValidationError("willie_output: input must be |0> or |1>");
    return willie_marginal(DensityOperator::basis_state(2, static_cast<std::size_t>(x)), spec);
}

DensityOperator willie_mixture(double alpha, const ChannelSpec& spec) {
    return DensityOperator::mix(willie_output(0, spec), willie_output(1, spec), alpha);
}

// ---------------------------------------------------------------------------

namespace closed_form {

namespace {
double cross(double q) { return std::sqrt((1.0 - 0.75 * q) * q / 4.0); }
}  // namespace

Matrix willie_e2(const DensityOperator& rho, double q) {
    require_qubit(rho);
    validate_noise(q);
    const double re_b = rho.matrix()(0, 1).real();
    const Complex off = 2.0 * re_b * (cross(q) + 1i * (q / 4.0));
    Matrix m(2, 2);
    m << 1.0 - q / 2.0, off, std::conj(off), q / 2.0;
    return m;
}

Matrix willie_e1(const DensityOperator& rho, double q) {
    require_qubit(rho);
    validate_noise(q);
    const double a = rho.matrix()(1, 1).real();
    const Complex off = (1.0 - 2.0 * a) * (cross(q) - 1i * (q / 4.0));
    Matrix m(2, 2);
    m << 1.0 - q / 2.0, off, std::conj(off), q / 2.0;
    return m;
}

Matrix willie_all_env_tabulated(int x, double q) {
    validate_noise(q);
    if (x != 0 && x != 1) throw ValidationError("tabulated output: input must be |0> or |1>");
    const double sign = x == 0 ? 1.0 : -1.0;
    const double r = sign * cross(q);
    const Complex im = sign * 1i * (q / 4.0);
    Matrix m = Matrix::Zero(4, 4);
    m(0, 0) = 1.0 - 0.75 * q;
    m(1, 1) = m(2, 2) = m(3, 3) = q / 4.0;
    m(0, 3) = m(3, 0) = r;
    m(1, 2) = -im;
    m(2, 1) = im;
    return m;
}

Matrix tabulated_to_dilation_basis() {
    Matrix p = Matrix::Zero(4, 4);
    p(0, 0) = p(1, 1) = 1.0;
    p(2, 3) = p(3, 2) = 1.0;
    return p;
}

Vector tabulated_null_vector(int x) {
    if (x != 0 && x != 1) throw ValidationError("null vector index must be 0 or 1");
    Vector v(4);
    v << 0.0, (x == 0 ? 1i : -1i), 1.0, 0.0;
    return v / std::sqrt(2.0);
}

Vector null_vector(int x) { return tabulated_to_dilation_basis() * tabulated_null_vector(x); }

double e1_determinant(double q) { return q * (2.0 - q) / 8.0; }

}  // namespace closed_form

// ---------------------------------------------------------------------------

std::string_view to_string(Verdict v) {
    switch (v) {
        case Verdict::Impossible: return "impossible";
        case Verdict::Trivial: return "trivial";
        case Verdict::Nontrivial: return "nontrivial";
        case Verdict::Degenerate: return "degenerate";
    }
    return "?";
}

SupportReport scenario_support_report(const ChannelSpec& spec) {
    validate_noise(spec.q);
    SupportReport r;
    r.spec = spec;

    const auto w0 = willie_output(0, spec);
    const auto w1 = willie_output(1, spec);

    const auto sd0 = eig_hermitian(w0.op());
    const Matrix pk = sd0.kernel_projector();
    const auto leak = eig_hermitian(hermitian_from_trusted(pk * w1.matrix() * pk));
    r.kernel_leakage = std::max(leak.max_eigenvalue(), 0.0);
    const auto sd1 = eig_hermitian(w1.op());
    r.support_contained = r.kernel_leakage <= kSupportTol * std::max(1.0, sd1.max_eigenvalue());

    if (spec.scenario == Scenario::AllEnv) r.null_vector_overlap = w1.op().expectation(closed_form::null_vector(0));

    r.trace_distance = trace_distance(w0, w1);
    r.det_omega0 = w0.matrix().determinant().real();
    r.det_omega1 = w1.matrix().determinant().real();

    if (spec.q == 0.0) {
        r.verdict = Verdict::Degenerate;
        r.annotation = "q=0: Bob receives the input unchanged and the warden learns nothing; covert "
                       "communication is trivial";
    } else if (spec.q == 1.0) {
        r.verdict = Verdict::Degenerate;
        r.annotation = "q=1: Bob receives pure noise while the warden holds the input; covert "
                       "communication is impossible";
    } else if (!r.support_contained) {
        r.verdict = Verdict::Impossible;
        r.annotation = "supp(omega_1) is not contained in supp(omega_0); a projective test detects "
                       "any non-innocent input with certainty";
    } else if (r.trace_distance == 0.0) {
        r.verdict = Verdict::Trivial;
        r.annotation = "omega_0 == omega_1; the warden cannot distinguish inputs";
    } else {
        r.verdict = Verdict::Nontrivial;
        r.annotation = "supp(omega_1) within supp(omega_0) and omega_0 != omega_1";
    }
    return r;
}

}  // namespace qcovert
