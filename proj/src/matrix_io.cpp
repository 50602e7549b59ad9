#include "splace/matrix_io.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>
#include <vector>

#include "splace/errors.hpp"

namespace splace {

namespace {

constexpr char kMagic[4] = {'S', 'P', 'M', 'X'};
constexpr std::uint64_t kMaxElements = std::uint64_t{1} << 31;

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_f64(std::string& out, double d) {
  const auto bits = std::bit_cast<std::uint64_t>(d);
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((bits >> (8 * i)) & 0xff));
}

class Reader {
 public:
  Reader(const std::string& bytes, const std::string& path)
      : bytes_(bytes), path_(path) {}

  std::uint16_t u16() { return static_cast<std::uint16_t>(u(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(u(4)); }
  double f64() { return std::bit_cast<double>(u(8)); }
  std::size_t remaining() const { return bytes_.size() - pos_; }
  void skip(std::size_t n) { pos_ += n; }

 private:
  std::uint64_t u(int n) {
    if (remaining() < static_cast<std::size_t>(n)) {
      throw DataError("read_matrix: truncated payload in " + path_);
    }
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) {
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(bytes_[pos_++]))
           << (8 * i);
    }
    return v;
  }

  const std::string& bytes_;
  const std::string& path_;
  std::size_t pos_ = 0;
};

void check_finite(const DataMatrix& x, const std::string& path) {
  for (Eigen::Index j = 0; j < x.cols(); ++j) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      if (!std::isfinite(x.values(i, j))) {
        std::ostringstream msg;
        msg << "read_matrix: non-finite value at row " << i << ", snapshot " << j
            << " in " << path;
        throw DataError(msg.str());
      }
    }
  }
}

void write_csv(const DataMatrix& x, const std::string& path) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw DataError("write_matrix: cannot open " + path);
  out << x.rows() << "," << x.cols();
  if (x.grid) out << "," << x.grid->n_v << "," << x.grid->n_h;
  out << "\n";
  char buf[40];
  for (Eigen::Index l = 0; l < x.cols(); ++l) {  // one snapshot per line
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", x.values(i, l));
      if (i) out << ",";
      out << buf;
    }
    out << "\n";
  }
  if (!out) throw DataError("write_matrix: write failed for " + path);
}

DataMatrix read_csv(const std::string& bytes, const std::string& path) {
  std::istringstream in(bytes);
  std::string line;
  if (!std::getline(in, line)) {
    throw DataError("read_matrix: empty file " + path);
  }
  std::vector<std::uint64_t> header;
  {
    std::istringstream hs(line);
    std::string tok;
    while (std::getline(hs, tok, ',')) {
      try {
        header.push_back(std::stoull(tok));
      } catch (const std::exception&) {
        throw DataError("read_matrix: bad CSV header in " + path);
      }
    }
  }
  if (header.size() != 2 && header.size() != 4) {
    throw DataError("read_matrix: CSV header must be rows,cols[,nv,nh] in " + path);
  }
  const std::uint64_t rows = header[0];
  const std::uint64_t cols = header[1];
  if (rows == 0 || cols == 0 || rows * cols > kMaxElements) {
    throw DataError("read_matrix: dimension overflow in " + path);
  }
  DataMatrix x;
  if (header.size() == 4) {
    GridShape g{static_cast<std::uint32_t>(header[2]), static_cast<std::uint32_t>(header[3])};
    if (g.points() != rows) {
      throw DataError("read_matrix: grid shape does not match rows in " + path);
    }
    x.grid = g;
  }
  x.values.resize(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (std::uint64_t l = 0; l < cols; ++l) {
    if (!std::getline(in, line)) {
      throw DataError("read_matrix: truncated payload in " + path);
    }
    const char* p = line.c_str();
    for (std::uint64_t i = 0; i < rows; ++i) {
      char* end = nullptr;
      const double v = std::strtod(p, &end);
      if (end == p) {
        throw DataError("read_matrix: bad CSV value in " + path);
      }
      x.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(l)) = v;
      p = end;
      if (*p == ',') ++p;
    }
  }
  check_finite(x, path);
  return x;
}

}  // namespace

void write_matrix(const DataMatrix& x, const std::string& path) {
  if (x.rows() < 1 || x.cols() < 1) {
    throw DataError("write_matrix: matrix must be at least 1x1");
  }
  if (x.grid && x.grid->points() != static_cast<std::uint64_t>(x.rows())) {
    throw DataError("write_matrix: grid shape does not match rows");
  }
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".csv") {
    write_csv(x, path);
    return;
  }

  std::string out;
  out.reserve(22 + static_cast<std::size_t>(x.rows() * x.cols()) * 8);
  out.append(kMagic, 4);
  put_u16(out, kMatrixFormatVersion);
  put_u32(out, static_cast<std::uint32_t>(x.rows()));
  put_u32(out, static_cast<std::uint32_t>(x.cols()));
  put_u16(out, x.grid ? 1 : 0);
  if (x.grid) {
    put_u32(out, x.grid->n_v);
    put_u32(out, x.grid->n_h);
  }
  for (Eigen::Index l = 0; l < x.cols(); ++l) {
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
      put_f64(out, x.values(i, l));
    }
  }

  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw DataError("write_matrix: cannot open " + path);
  f.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!f) throw DataError("write_matrix: write failed for " + path);
}

DataMatrix read_matrix(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw DataError("read_matrix: cannot open " + path);
  std::string bytes((std::istreambuf_iterator<char>(f)),
                    std::istreambuf_iterator<char>());

  if (bytes.size() < 4 || std::memcmp(bytes.data(), kMagic, 4) != 0) {
    if (!bytes.empty() && (std::isdigit(static_cast<unsigned char>(bytes[0])) != 0)) {
      return read_csv(bytes, path);
    }
    throw DataError("read_matrix: bad magic in " + path);
  }

  Reader r(bytes, path);
  r.skip(4);
  const std::uint16_t version = r.u16();
  if (version != kMatrixFormatVersion) {
    std::ostringstream msg;
    msg << "read_matrix: unsupported format version " << version << " in " << path;
    throw DataError(msg.str());
  }
  const std::uint32_t rows = r.u32();
  const std::uint32_t cols = r.u32();
  const std::uint16_t flags = r.u16();
  if (rows == 0 || cols == 0 ||
      static_cast<std::uint64_t>(rows) * cols > kMaxElements) {
    throw DataError("read_matrix: dimension overflow in " + path);
  }
  DataMatrix x;
  if (flags & 1) {
    GridShape g{r.u32(), r.u32()};
    if (g.points() != rows) {
      throw DataError("read_matrix: grid shape does not match rows in " + path);
    }
    x.grid = g;
  }
  x.values.resize(rows, cols);
  for (std::uint32_t l = 0; l < cols; ++l) {
    for (std::uint32_t i = 0; i < rows; ++i) {
      x.values(i, l) = r.f64();
    }
  }
  check_finite(x, path);
  return x;
}

}  // namespace splace
