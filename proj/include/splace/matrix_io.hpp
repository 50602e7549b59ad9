#pragma once

#include <string>

#include "splace/data_matrix.hpp"

namespace splace {

// Binary snapshot-matrix format, all little-endian:
//   magic "SPMX" | version u16 | rows u32 | cols u32 | flags u16
//   [n_v u32, n_h u32 when flags bit 0 set]
//   rows*cols IEEE-754 doubles, column-major.
// Round-trips are bit-exact.

inline constexpr std::uint16_t kMatrixFormatVersion = 1;

/// Writes CSV when the path ends in ".csv", the binary format otherwise.
void write_matrix(const DataMatrix& x, const std::string& path);

/// Reads either format (binary when the magic matches, CSV otherwise).
/// Malformed headers, truncated payloads, oversized dimensions and
/// non-finite values raise DataError.
DataMatrix read_matrix(const std::string& path);

}  // namespace splace
