#include "pprei/matrix_io.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "pprei/error.hpp"

namespace pprei {

namespace {

static_assert(std::numeric_limits<double>::is_iec559);

template <typename T>
void put_le(std::ostream& out, T value) {
  unsigned char bytes[sizeof(T)];
  std::memcpy(bytes, &value, sizeof(T));
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  out.write(reinterpret_cast<const char*>(bytes), sizeof(T));
}

template <typename T>
T get_le(std::istream& in) {
  unsigned char bytes[sizeof(T)];
  if (!in.read(reinterpret_cast<char*>(bytes), sizeof(T))) {
    throw Error("matrix file truncated");
  }
  if constexpr (std::endian::native == std::endian::big) {
    for (std::size_t i = 0; i < sizeof(T) / 2; ++i) std::swap(bytes[i], bytes[sizeof(T) - 1 - i]);
  }
  T value;
  std::memcpy(&value, bytes, sizeof(T));
  return value;
}

void require_finite(double v, std::size_t index) {
  if (!std::isfinite(v)) {
    throw Error("non-finite matrix value at flat index " + std::to_string(index));
  }
}

}  // namespace

void write_matrix(std::ostream& out, const DenseMatrix& m) {
  out.write(kMatrixMagic, sizeof(kMatrixMagic));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.rows()));
  put_le<std::uint64_t>(out, static_cast<std::uint64_t>(m.cols()));
  const double* data = m.data();
  for (Eigen::Index i = 0; i < m.size(); ++i) put_le<double>(out, data[i]);
  if (!out) throw Error("matrix write failed");
}

DenseMatrix read_matrix(std::istream& in) {
  char magic[sizeof(kMatrixMagic)];
  if (!in.read(magic, sizeof(magic)) || std::memcmp(magic, kMatrixMagic, sizeof(magic)) != 0) {
    throw Error("not a PPREIM1 matrix file (bad magic)");
  }
  const auto rows = get_le<std::uint64_t>(in);
  const auto cols = get_le<std::uint64_t>(in);
  constexpr std::uint64_t kMaxEntries = std::uint64_t{1} << 32;
  if (rows != 0 && cols > kMaxEntries / rows) throw Error("matrix dimensions too large");
  DenseMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  double* data = m.data();
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    data[i] = get_le<double>(in);
    require_finite(data[i], static_cast<std::size_t>(i));
  }
  return m;
}

void write_matrix(const std::filesystem::path& path, const DenseMatrix& m) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path.string() + "'");
  write_matrix(out, m);
}

DenseMatrix read_matrix(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path.string() + "'");
  return read_matrix(in);
}

void write_matrix_csv(std::ostream& out, const DenseMatrix& m) {
  out << std::setprecision(17);
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) out << ',';
      out << m(i, j);
    }
    out << '\n';
  }
}

DenseMatrix read_matrix_csv(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) {
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(cell, &used);
      } catch (const std::exception&) {
        throw ParseError("bad number '" + cell + "'", line_no);
      }
      if (cell.find_first_not_of(" \t", used) != std::string::npos) {
        throw ParseError("bad number '" + cell + "'", line_no);
      }
      if (!std::isfinite(v)) throw ParseError("non-finite value", line_no);
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("ragged row: " + std::to_string(row.size()) + " columns, expected " +
                           std::to_string(rows.front().size()),
                       line_no);
    }
    rows.push_back(std::move(row));
  }
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = static_cast<Eigen::Index>(rows.empty() ? 0 : rows.front().size());
  DenseMatrix m(r, c);
  for (Eigen::Index i = 0; i < r; ++i) {
    for (Eigen::Index j = 0; j < c; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

}  // namespace pprei
