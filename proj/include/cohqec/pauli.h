#pragma once

// Pauli operators in symplectic form and Clifford unitaries as tableaus.
//
// A PauliOperator with bits (x, z) and phase e is i^e times the tensor product
// of single-qubit Hermitian Paulis, where (x, z) = (1, 0), (1, 1), (0, 1) mean
// X, Y, Z. Hermitian operators therefore have e in {0, 2}.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cohqec/bitlinalg.h"
#include "cohqec/rng.h"

namespace cohqec {

class PauliOperator {
   public:
    PauliOperator() = default;
    /// Identity on n qubits.
    explicit PauliOperator(std::size_t n) : x_(n), z_(n) {}
    PauliOperator(BitVector x, BitVector z, unsigned phase = 0);

    /// Parses e.g. "XZIY", "+XZIY", "-XZIY", "iXZ", "-iXZ". '_' is accepted for I.
    static PauliOperator from_string(std::string_view text);
    /// Single-qubit Pauli `kind` in {'I','X','Y','Z'} on qubit q of n.
    static PauliOperator single(std::size_t n, std::size_t q, char kind);
    /// Inverse of symplectic(): bits laid out as x_0..x_{n-1}, z_0..z_{n-1}.
    static PauliOperator from_symplectic(const BitVector& bits, unsigned phase = 0);

    std::size_t num_qubits() const { return x_.size(); }
    const BitVector& x() const { return x_; }
    const BitVector& z() const { return z_; }
    BitVector& x() { return x_; }
    BitVector& z() { return z_; }
    unsigned phase() const { return phase_; }
    void set_phase(unsigned phase) { phase_ = phase & 3u; }

    bool is_hermitian() const { return (phase_ & 1u) == 0; }
    bool is_identity() const { return x_.none() && z_.none(); }
    /// +1 or -1; only meaningful for Hermitian operators.
    int sign() const { return phase_ == 2 ? -1 : 1; }
    void negate() { phase_ = (phase_ + 2) & 3u; }
    std::size_t weight() const;
    /// Single-qubit factor at q as 'I', 'X', 'Y' or 'Z'.
    char at(std::size_t q) const;

    BitVector symplectic() const;

    /// this <- this * rhs, with exact phase.
    PauliOperator& operator*=(const PauliOperator& rhs);

    /// Sign prefix ("+", "-", "+i", "-i") followed by one letter per qubit.
    std::string to_string() const;

    friend bool operator==(const PauliOperator&, const PauliOperator&) = default;

   private:
    BitVector x_;
    BitVector z_;
    unsigned phase_ = 0;
};

PauliOperator operator*(PauliOperator a, const PauliOperator& b);
PauliOperator multiply(const PauliOperator& a, const PauliOperator& b);
bool commutes(const PauliOperator& a, const PauliOperator& b);

/// Stacks the symplectic rows of a list of Paulis, all on n qubits.
BitMatrix symplectic_matrix(std::span<const PauliOperator> paulis, std::size_t n);

class CliffordUnitary {
   public:
    CliffordUnitary() = default;
    static CliffordUnitary identity(std::size_t n);
    /// Builds U from the images U X_q U† and U Z_q U†. Throws if the images are
    /// not Hermitian or do not satisfy the Pauli commutation relations.
    static CliffordUnitary from_images(std::vector<PauliOperator> x_images, std::vector<PauliOperator> z_images);

    /// Single-qubit gates and CNOT, for tests and circuit builders.
    static CliffordUnitary hadamard();
    static CliffordUnitary phase_s();
    static CliffordUnitary cnot();

    std::size_t num_qubits() const { return x_images_.size(); }
    const PauliOperator& x_image(std::size_t q) const { return x_images_[q]; }
    const PauliOperator& z_image(std::size_t q) const { return z_images_[q]; }

    /// 2n x 2n matrix whose column j is the symplectic image of generator j
    /// (X_0..X_{n-1}, then Z_0..Z_{n-1}).
    BitMatrix symplectic_matrix() const;
    /// Signs of the 2n images, bit set when the image carries a minus sign.
    BitVector phase_correction() const;

    friend bool operator==(const CliffordUnitary&, const CliffordUnitary&) = default;

   private:
    std::vector<PauliOperator> x_images_;
    std::vector<PauliOperator> z_images_;
};

/// U P U†.
PauliOperator conjugate(const CliffordUnitary& u, const PauliOperator& p);
/// The unitary u v (v applied first).
CliffordUnitary compose(const CliffordUnitary& u, const CliffordUnitary& v);
/// u acting on `support` (support[j] receives u's qubit j) inside n qubits.
CliffordUnitary embed(const CliffordUnitary& u, std::span<const std::size_t> support, std::size_t n);
/// Uniform over the n-qubit Clifford group modulo global phase.
CliffordUnitary random_clifford(std::size_t n, Rng& rng);
/// True iff S^T Λ S = Λ for the tableau's symplectic matrix.
bool is_symplectic(const BitMatrix& s);

/// A Clifford on a few qubits stored as a lookup table over all 4^q local
/// Paulis, for fast in-place conjugation of large operators.
class LocalGate {
   public:
    LocalGate(const CliffordUnitary& u, std::vector<std::size_t> support);

    const std::vector<std::size_t>& support() const { return support_; }
    const CliffordUnitary& gate() const { return gate_; }
    /// p <- U p U† with U acting on support().
    void conjugate_in_place(PauliOperator& p) const;

   private:
    CliffordUnitary gate_;
    std::vector<std::size_t> support_;
    // Indexed by local bits x_0..x_{q-1}, z_0..z_{q-1} (bit j of the index).
    std::vector<std::uint32_t> image_bits_;
    std::vector<std::uint8_t> image_negated_;
};

}  // namespace cohqec
