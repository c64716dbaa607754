#pragma once

// Logical-group change, MAP recovery, coherent information, conditional mutual
// informations and syndrome free entropy.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "cohqec/codes.h"
#include "cohqec/noise.h"
#include "cohqec/stabilizer.h"

namespace cohqec {

struct LogicalDiagnostic {
    /// log2 |<G_L, G_L', S> / S| - k.
    std::size_t delta = 0;
    /// rank of the logical commutator matrix T_L; equal to delta.
    std::size_t delta_commutator = 0;
    double p_rec = 1.0;
    /// Toric codes only; "none" otherwise.
    std::string group_class = "none";
    /// G_L' modulo the checks: unsigned representatives in rref.
    std::vector<PauliOperator> sign_free_group;
};

/// Coefficients of operators over the logical basis: x_part(i, j) is the power
/// of logical_x[j] and z_part(i, j) that of logical_z[j].
struct LogicalExpansion {
    BitMatrix x_part;
    BitMatrix z_part;
};

/// Throws std::logic_error when an operator is outside the normalizer span.
LogicalExpansion expand_in_logical_basis(const StabilizerCode& code, std::span<const PauliOperator> ops);

/// Logical stabilizer generators of a pure post-measurement state that contains
/// every check up to sign: its generators reduced modulo the checks, unsigned,
/// in rref. Throws std::invalid_argument for a mixed state.
std::vector<PauliOperator> post_logical_generators(const StabilizerCode& code, const StabilizerState& post);

/// rank([S; G_L; G_L']) - rank([S; G_L]), all sign-free.
std::size_t combined_group_delta(const StabilizerCode& code, std::span<const PauliOperator> initial_logicals,
                                 std::span<const PauliOperator> post_logicals);

/// Both routes to delta, with the initial logical group generated by logical_z.
LogicalDiagnostic delta_logical(const StabilizerCode& code, const StabilizerState& post);

/// The 15 two-qubit sign-free stabilizer groups: "P_ab" for <a_1, b_2> and
/// "B_abc" for the Bell type pairing X_1, Y_1, Z_1 with a_2, b_2, c_2.
const std::vector<std::string>& toric_group_labels();
/// Class of a rank-2 isotropic set given by its logical expansion (k = 2).
std::string classify_expansion(const LogicalExpansion& e);
/// Throws std::logic_error unless the group is two-dimensional and expressible.
std::string classify_toric_group(const StabilizerCode& code, std::span<const PauliOperator> logicals);

/// Measures all checks of U|c> in `trials` independent branches and reports
/// whether every branch has the same sign-free G_L'.
bool syndrome_independence_check(const StabilizerCode& code, const ErrorRealization& e, std::size_t trials,
                                 std::uint64_t seed);

struct ChannelDiagnostic {
    double coherent_info = 0.0;
    /// coherent_info / k, NaN when k = 0.
    double per_logical = 0.0;
};

/// Maximally entangles the code space with k reference qubits (appended after
/// the code qubits), applies the error, averages over all check outcomes and
/// returns S(Q') - S(RQ').
ChannelDiagnostic coherent_information(const StabilizerCode& code, const ErrorRealization& e);

/// rank(Q_A) + rank(Q_B) - rank(Q_AB), Q_D being the columns of Q in D.
/// Throws std::invalid_argument unless A, B, C partition the columns.
std::size_t classical_cmi(const BitMatrix& q, std::span<const std::size_t> a, std::span<const std::size_t> b,
                          std::span<const std::size_t> c);

struct SyndromeStats {
    std::size_t n_s = 0;
    std::size_t r_q = 0;
    std::size_t phi_global = 0;
    /// r_q / n_s; NaN when nothing was measured.
    double varphi = 0.0;
};

SyndromeStats syndrome_stats(const MeasurementOutcome& outcome);
SyndromeStats syndrome_stats(const ConstraintSystem& system);

struct RegionSplit {
    std::vector<std::size_t> a;
    std::vector<std::size_t> b;
    std::vector<std::size_t> c;
};

/// Two width-`width` rings around the torus, parallel to the logical strings,
/// at columns 0 and `separation`; C is the rest. Qubit indices.
RegionSplit toric_qubit_regions(std::size_t L, std::size_t separation, std::size_t width = 1);
/// The same strips as sets of check (syndrome bit) indices.
RegionSplit toric_check_regions(std::size_t L, std::size_t separation, std::size_t width = 1);

}  // namespace cohqec
