#pragma once

// Toric, hypergraph-product and random Clifford codes.
//
// logical_z holds the k commuting logicals whose +1 eigenstate is the initial
// code state; logical_x[i] is the partner anticommuting only with logical_z[i].

#include <string>
#include <vector>

#include <json.hpp>

#include "cohqec/bitlinalg.h"
#include "cohqec/pauli.h"
#include "cohqec/rng.h"
#include "cohqec/stabilizer.h"

namespace cohqec {

enum class CodeFamily { toric, hgp, rcc, custom };

std::string to_string(CodeFamily family);
CodeFamily code_family_from_string(const std::string& name);

struct CodeGeometry {
    /// Toric lattice size; 0 otherwise.
    std::size_t lattice_size = 0;
    /// Toric plaquette edges, in the order top, bottom, left, right.
    std::vector<std::vector<std::size_t>> plaquettes;
    /// Qubit adjacency lists: shared checks for HGP, chain neighbours for RCC.
    std::vector<std::vector<std::size_t>> adjacency;
};

struct StabilizerCode {
    CodeFamily family = CodeFamily::custom;
    std::size_t n = 0;
    std::size_t k = 0;
    std::vector<PauliOperator> checks;
    std::vector<PauliOperator> logical_z;
    std::vector<PauliOperator> logical_x;
    CodeGeometry geometry;
};

/// Throws std::logic_error naming the first violated code invariant.
void validate_code(const StabilizerCode& code);

/// A maximal independent subset of the checks, in check order.
std::vector<PauliOperator> independent_checks(const StabilizerCode& code);

/// The +1 eigenstate of the checks and of every logical_z.
StabilizerState code_state(const StabilizerCode& code);

// ---------------------------------------------------------------- toric

/// Horizontal edge (r, c) is qubit r L + c; vertical edge (r, c) is L^2 + r L + c.
std::size_t toric_h_edge(std::size_t L, std::size_t r, std::size_t c);
std::size_t toric_v_edge(std::size_t L, std::size_t r, std::size_t c);

/// Checks are the L^2 vertex operators (row-major) followed by the L^2
/// plaquette operators. Throws std::invalid_argument for L < 2.
StabilizerCode build_toric(std::size_t L);

/// Qubits of the width-`width` vertical strip starting at lattice column
/// `column`; both logical_z strings live in the strip at column 0.
std::vector<std::size_t> toric_column_ring(std::size_t L, std::size_t column, std::size_t width = 1);
/// Indices of the checks (vertex and plaquette) in the same strip.
std::vector<std::size_t> toric_column_checks(std::size_t L, std::size_t column, std::size_t width = 1);

// ---------------------------------------------------------------- classical LDPC and HGP

struct ClassicalLdpcCode {
    std::size_t n = 0;
    BitMatrix parity;
};

/// (3,6)-regular parity-check matrix from the configuration model, resampling
/// any draw with a repeated edge. Throws std::invalid_argument unless n is even
/// and at least 6; throws std::runtime_error after 10^4 failed draws.
ClassicalLdpcCode build_ldpc(std::size_t n, Rng& rng);

/// Hypergraph product with X checks H_X = (H1 x I | I x H2^T) and Z checks
/// H_Z = (I x H2 | H1^T x I), using the row counts of H1, H2 as r1, r2.
StabilizerCode build_hgp(const ClassicalLdpcCode& h1, const ClassicalLdpcCode& h2);
StabilizerCode build_hgp(const BitMatrix& h1, const BitMatrix& h2);

/// Greedy symplectic Gram-Schmidt: pairs the seeds (in order) and then the
/// remaining normalizer directions, returning k = n - rank(checks) pairs.
/// Seeds independent modulo the checks always end up in logical_z.
void complete_logical_basis(StabilizerCode& code, const std::vector<PauliOperator>& seeds);

// ---------------------------------------------------------------- random Clifford code

struct PlacedGate {
    std::vector<std::size_t> support;
    CliffordUnitary gate;
};

/// Brickwork of uniform two-qubit Cliffords with open boundaries: layer t acts
/// on bonds (i, i+1) with i = t mod 2. Gates are listed in application order.
std::vector<PlacedGate> brickwork_encoder(std::size_t n, std::size_t depth, Rng& rng);

/// Code whose checks are U Z_j U† for j >= k and logicals U Z_i U†, U X_i U†
/// for i < k. Throws std::invalid_argument for depth 0, k > n or n < 2.
StabilizerCode build_rcc(std::size_t n, std::size_t k, std::size_t depth, Rng& rng);
StabilizerCode rcc_from_encoder(std::size_t n, std::size_t k, const std::vector<PlacedGate>& encoder);

// ---------------------------------------------------------------- serialization

nlohmann::json code_to_json(const StabilizerCode& code);
StabilizerCode code_from_json(const nlohmann::json& doc);

}  // namespace cohqec
