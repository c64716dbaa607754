#pragma once

// Pure and mixed stabilizer states as signed generating sets, and measurement
// of commuting Pauli sets with the full constraint system of the outcomes.

#include <span>
#include <string>
#include <vector>

#include "cohqec/bitlinalg.h"
#include "cohqec/pauli.h"
#include "cohqec/rng.h"

namespace cohqec {

class StabilizerGroup {
   public:
    explicit StabilizerGroup(std::size_t n = 0) : n_(n) {}
    /// Throws std::invalid_argument unless the generators are Hermitian,
    /// pairwise commuting and independent.
    StabilizerGroup(std::size_t n, std::vector<PauliOperator> generators);
    /// Skips validation, for generators already known to be valid.
    static StabilizerGroup trusted(std::size_t n, std::vector<PauliOperator> generators);

    std::size_t num_qubits() const { return n_; }
    std::size_t size() const { return generators_.size(); }
    const std::vector<PauliOperator>& generators() const { return generators_; }

    /// Symplectic rows of the generators.
    BitMatrix matrix() const;
    /// Generators in rref over the (x|z) columns, each with its exact sign.
    StabilizerGroup canonical() const;
    /// Whether p (or -p when sign_free) is a group element.
    bool contains(const PauliOperator& p, bool sign_free = false) const;

    /// One signed Pauli string per line, in generator order.
    std::string to_string() const;

   private:
    friend class StabilizerState;

    std::size_t n_;
    std::vector<PauliOperator> generators_;
};

bool groups_equal(const StabilizerGroup& a, const StabilizerGroup& b, bool sign_free);

class StabilizerState {
   public:
    StabilizerState() = default;
    explicit StabilizerState(StabilizerGroup group) : group_(std::move(group)) {}

    std::size_t num_qubits() const { return group_.num_qubits(); }
    const StabilizerGroup& group() const { return group_; }
    const std::vector<PauliOperator>& generators() const { return group_.generators(); }
    bool is_pure() const { return group_.size() == group_.num_qubits(); }
    /// von Neumann entropy in bits.
    std::size_t entropy() const { return group_.num_qubits() - group_.size(); }

    void apply(const LocalGate& gate);
    void apply(const CliffordUnitary& u);

   private:
    StabilizerGroup group_;
};

/// The state stabilized by exactly the given signed generators.
StabilizerState state_from_code(std::size_t n, std::vector<PauliOperator> generators);
StabilizerState apply_clifford(StabilizerState state, const CliffordUnitary& u);

/// Outcome-independent structure of measuring commuting observables O_i on a
/// state with generators g_j.
struct ConstraintSystem {
    std::size_t num_qubits = 0;
    std::size_t num_observables = 0;
    /// T_ij = 1 when O_i anticommutes with g_j.
    BitMatrix commutator;
    std::size_t rank_t = 0;
    /// Rows in rref: each is a set of observables whose product is, up to sign,
    /// a stabilizer element. Pivots are listed in `pivots`.
    BitMatrix constraints;
    std::vector<std::size_t> pivots;
    /// Bit k set when the syndrome parity over row k must be odd.
    BitVector constraint_signs;
    /// Signed generators of the subgroup commuting with every observable.
    std::vector<PauliOperator> inherited;

    std::size_t r_q() const { return constraints.rows(); }
    /// Observables whose outcomes are fair coins: num_observables - r_q.
    std::size_t free_count() const { return num_observables - r_q(); }
    /// Whether a syndrome (bit set = outcome -1) satisfies every constraint.
    bool admits(const BitVector& syndrome) const;
};

/// Throws std::invalid_argument for mismatched sizes or non-commuting
/// observables.
ConstraintSystem analyze_measurement(const StabilizerState& state, std::span<const PauliOperator> observables);

struct MeasurementOutcome {
    /// Bit i set when observable i gave -1.
    BitVector syndrome;
    BitMatrix constraint_matrix;
    BitVector constraint_signs;
    std::size_t rank_t = 0;
    std::size_t num_observables = 0;
    StabilizerState post_state;

    std::size_t r_q() const { return constraint_matrix.rows(); }
};

/// Samples the syndrome: unconstrained outcomes are coin flips drawn in
/// observable order, the rest follow from the constraints.
BitVector sample_syndrome(const ConstraintSystem& system, Rng& rng);
/// The post-measurement state of a given admissible syndrome.
StabilizerState post_measurement_state(const ConstraintSystem& system, std::span<const PauliOperator> observables,
                                       const BitVector& syndrome);

MeasurementOutcome measure_commuting_set(const StabilizerState& state, std::span<const PauliOperator> observables,
                                         Rng& rng);

/// The state sum_s Pi_s rho Pi_s: only the subgroup commuting with all
/// observables survives.
StabilizerState average_over_syndromes(const StabilizerState& state, std::span<const PauliOperator> observables);

/// Entropy in bits of the reduced state on `region`.
std::size_t region_entropy(const StabilizerState& state, std::span<const std::size_t> region);

/// S(AC) + S(BC) - S(C) - S(ABC) for disjoint regions.
std::size_t qcmi(const StabilizerState& state, std::span<const std::size_t> a, std::span<const std::size_t> b,
                 std::span<const std::size_t> c);

}  // namespace cohqec
