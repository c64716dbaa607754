#pragma once

// Dense state-vector and density-matrix reference implementations, used to
// cross-check the symplectic simulator on a handful of qubits.

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "cohqec/pauli.h"
#include "cohqec/stabilizer.h"

namespace cohqec::oracle {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Qubit 0 is the least significant bit of the basis index.
Matrix pauli_matrix(const PauliOperator& p);

/// A unitary U with U P U† equal to conjugate(u, P) for every Pauli P; the
/// global phase is arbitrary.
Matrix clifford_matrix(const CliffordUnitary& u);

/// prod_j (I + g_j) / 2^n.
Matrix density_matrix(const StabilizerGroup& group);

/// Joint projector onto outcome `syndrome` (bit set = -1) of commuting observables.
Matrix syndrome_projector(std::span<const PauliOperator> observables, std::uint64_t syndrome);

/// von Neumann entropy in bits.
double entropy(const Matrix& rho);

/// Reduced density matrix on `keep` (in the given order).
Matrix partial_trace(const Matrix& rho, std::size_t n, std::span<const std::size_t> keep);

/// Born probabilities Tr(Pi_s rho) for all 2^M syndromes.
std::vector<double> syndrome_distribution(const Matrix& rho, std::span<const PauliOperator> observables);

/// Whether the density matrices are equal entrywise within tol.
bool close(const Matrix& a, const Matrix& b, double tol = 1e-10);

}  // namespace cohqec::oracle
