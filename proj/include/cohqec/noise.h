#pragma once

// Coherent Clifford error channels: one layer of random q-qubit Cliffords.

#include <string>
#include <vector>

#include <json.hpp>

#include "cohqec/codes.h"
#include "cohqec/pauli.h"
#include "cohqec/rng.h"
#include "cohqec/stabilizer.h"

namespace cohqec {

enum class ErrorModel { toric_plaquette, long_range, local };

std::string to_string(ErrorModel model);
/// Accepts "plaquette"/"toric_plaquette", "long"/"long_range", "local".
ErrorModel error_model_from_string(const std::string& name);

struct ErrorModelConfig {
    ErrorModel kind = ErrorModel::toric_plaquette;
    double p = 0.0;
    std::size_t q = 4;

    /// Throws std::invalid_argument for p outside [0, 1], q = 0, or a plaquette
    /// model with q != 4.
    void validate() const;
};

struct ErrorRealization {
    /// Gates in application order.
    std::vector<PlacedGate> gates;
};

/// With probability p per plaquette (in plaquette order), a uniform 4-qubit
/// Clifford on that plaquette's edges.
ErrorRealization sample_toric_errors(const StabilizerCode& code, double p, Rng& rng);

/// With probability p per qubit i (ascending), a uniform q-qubit Clifford on i
/// and q - 1 distinct uniformly chosen other qubits.
ErrorRealization sample_long_range(const StabilizerCode& code, double p, std::size_t q, Rng& rng);

/// With probability p per qubit i (ascending), a uniform q-qubit Clifford on a
/// nearby set: for RCC the chain segment starting at min(i, n - q); otherwise a
/// random walk of q - 1 steps on the qubit graph from i, redrawn until it visits
/// q distinct qubits (at most 100 walks, after which the last walk's qubits are
/// padded in breadth-first order from i).
ErrorRealization sample_local(const StabilizerCode& code, double p, std::size_t q, Rng& rng);

ErrorRealization sample_errors(const StabilizerCode& code, const ErrorModelConfig& config, Rng& rng);

/// Applies the gates in order. The state may have more qubits than the code
/// (e.g. a purified state whose extra qubits are never touched).
void apply_realization_in_place(StabilizerState& state, const ErrorRealization& e);
StabilizerState apply_realization(StabilizerState state, const ErrorRealization& e);

/// The composed unitary on n qubits, for small-n cross-checks.
CliffordUnitary realization_unitary(const ErrorRealization& e, std::size_t n);

nlohmann::json realization_to_json(const ErrorRealization& e);
ErrorRealization realization_from_json(const nlohmann::json& doc);

}  // namespace cohqec
