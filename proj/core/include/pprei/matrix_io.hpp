#pragma once

#include <filesystem>
#include <iosfwd>

#include "pprei/linalg.hpp"

namespace pprei {

// Binary layout: the 8 bytes "PPREIM1\0", rows and cols as little-endian
// uint64, then rows*cols little-endian IEEE-754 doubles in row-major order.
inline constexpr char kMatrixMagic[8] = {'P', 'P', 'R', 'E', 'I', 'M', '1', '\0'};

void write_matrix(std::ostream& out, const DenseMatrix& m);
DenseMatrix read_matrix(std::istream& in);
void write_matrix(const std::filesystem::path& path, const DenseMatrix& m);
DenseMatrix read_matrix(const std::filesystem::path& path);

/// Comma-separated rows, values printed with 17 significant digits.
void write_matrix_csv(std::ostream& out, const DenseMatrix& m);
DenseMatrix read_matrix_csv(std::istream& in);

}  // namespace pprei
