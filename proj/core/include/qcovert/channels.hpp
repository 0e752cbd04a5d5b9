#pragma once

// Qubit depolarizing channel, its Stinespring dilation V : A -> B E1 E2, and
// the warden's marginal channels.
//
// Subsystem order of the dilation output is (B, E1, E2) with B the most
// significant index, so an 8-dim basis index is 4*b + 2*e1 + e2.

#include "qcovert/linalg.hpp"

#include <optional>
#include <string>
#include <string_view>

namespace qcovert {

/// Which environment qubits the warden holds.
enum class Scenario {
    AllEnv = 1,  // (E1, E2)
    E2Only = 2,
    E1Only = 3,
};

std::string_view to_string(Scenario s);
/// Accepts "1", "2", "3" or the enumerator names; throws ValidationError.
Scenario parse_scenario(std::string_view text);

struct ChannelSpec {
    double q = 0.0;
    Scenario scenario = Scenario::E1Only;

    ChannelSpec() = default;
    /// Throws ValidationError unless 0 <= q <= 1.
    ChannelSpec(double q, Scenario scenario);

    bool is_boundary() const { return q == 0.0 || q == 1.0; }
    /// 4 for AllEnv, 2 otherwise.
    std::size_t warden_dim() const { return scenario == Scenario::AllEnv ? 4 : 2; }
};

/// Throws ValidationError unless 0 <= q <= 1.
void validate_noise(double q);

Matrix pauli_x();
Matrix pauli_y();
Matrix pauli_z();

/// An 8x2 isometry; V^dagger V = I_2 is checked at construction.
class Isometry {
public:
    explicit Isometry(Matrix v);
    const Matrix& matrix() const { return v_; }
    /// V rho V^dagger.
    DensityOperator apply(const DensityOperator& rho) const;

private:
    Matrix v_;
};

/// (1-q) rho + q I/2.
DensityOperator depolarize(const DensityOperator& rho, double q);
/// (1 - 3q/4) rho + (q/4)(X rho X + Y rho Y + Z rho Z).
DensityOperator depolarize_pauli(const DensityOperator& rho, double q);

Isometry stinespring_isometry(double q);
DensityOperator dilated_output(const DensityOperator& rho, double q);

/// Bob's marginal of the dilated output (equals depolarize).
DensityOperator bob_marginal(const DensityOperator& rho, double q);

/// The warden's state, obtained by tracing the dilated output down to the
/// environment qubits the scenario grants.
DensityOperator willie_marginal(const DensityOperator& rho, const ChannelSpec& spec);

/// omega_x = willie_marginal(|x><x|), x in {0,1}.
DensityOperator willie_output(int x, const ChannelSpec& spec);
/// omega_0 + alpha (omega_1 - omega_0): the warden's state for the diagonal
/// input (1-alpha)|0><0| + alpha|1><1|.
DensityOperator willie_mixture(double alpha, const ChannelSpec& spec);

/// Closed-form warden marginals, transcribed independently of the dilation.
namespace closed_form {

/// E2Only for a general qubit input rho = [[1-a, b], [b*, a]]:
/// diag(1-q/2, q/2) + 2Re{b} [(s + iq/4)|0><1| + h.c.],  s = sqrt((1-3q/4) q/4).
Matrix willie_e2(const DensityOperator& rho, double q);
/// E1Only for a general input: diag(1-q/2, q/2) + (1-2a)[(s - iq/4)|0><1| + h.c.].
Matrix willie_e1(const DensityOperator& rho, double q);
/// AllEnv omega_x as tabulated in the literature, in an environment basis
/// whose |10> and |11> labels are swapped relative to the dilation.
Matrix willie_all_env_tabulated(int x, double q);
/// Permutation taking the tabulated AllEnv basis to the dilation's (E1,E2)
/// basis (swaps |10> and |11>). Involutory.
Matrix tabulated_to_dilation_basis();
/// Null vectors of omega_0 / omega_1 in the tabulated basis: (0, +-i, 1, 0)/sqrt(2).
Vector tabulated_null_vector(int x);
/// The same null vectors expressed in the dilation basis: (0, +-i, 0, 1)/sqrt(2).
Vector null_vector(int x);

/// q (2 - q) / 8, the determinant of the E1Only outputs.
double e1_determinant(double q);

}  // namespace closed_form

enum class Verdict { Impossible, Trivial, Nontrivial, Degenerate };
std::string_view to_string(Verdict v);

struct SupportReport {
    ChannelSpec spec;
    /// supp(omega_1) within supp(omega_0).
    bool support_contained = false;
    /// Largest eigenvalue of P omega_1 P, P the projector onto ker(omega_0).
    double kernel_leakage = 0.0;
    /// <e_0|omega_1|e_0> for the AllEnv null vector; empty for other scenarios.
    std::optional<double> null_vector_overlap;
    /// (1/2)||omega_0 - omega_1||_1.
    double trace_distance = 0.0;
    double det_omega0 = 0.0;
    double det_omega1 = 0.0;
    Verdict verdict = Verdict::Degenerate;
    std::string annotation;
};

/// Feasibility of covert communication for the scenario. Boundary q in {0, 1}
/// yields Verdict::Degenerate with an explanatory annotation.
SupportReport scenario_support_report(const ChannelSpec& spec);

}  // namespace qcovert
