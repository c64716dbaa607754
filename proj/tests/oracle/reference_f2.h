#pragma once

// Unpacked byte-per-entry F2 reference routines and brute-force enumerators.

#include <cstdint>
#include <optional>
#include <vector>

#include "cohqec/bitlinalg.h"

namespace cohqec::oracle {

using ByteMatrix = std::vector<std::vector<std::uint8_t>>;

ByteMatrix to_bytes(const BitMatrix& m);
std::size_t byte_rank(ByteMatrix m);

/// All 2^rows combinations of rows, as a sorted set of bit strings.
std::vector<std::vector<std::uint8_t>> row_span(const ByteMatrix& m);

/// Every v in F2^rows with v^T M = 0, by enumeration.
std::vector<std::vector<std::uint8_t>> left_kernel_by_enumeration(const ByteMatrix& m);

/// Every x in F2^cols with M x = b, by enumeration.
std::vector<std::vector<std::uint8_t>> solutions_by_enumeration(const ByteMatrix& m, const std::vector<std::uint8_t>& b);

}  // namespace cohqec::oracle
