#include "mkpolar/kernel_algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace mkpolar {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), bits_(rows * cols, 0) {
  if (rows == 0 || cols == 0) throw std::invalid_argument("BitMatrix: dimensions must be positive");
}

BitMatrix::BitMatrix(std::initializer_list<std::initializer_list<int>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
  if (rows_ == 0 || cols_ == 0) throw std::invalid_argument("BitMatrix: dimensions must be positive");
  bits_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw std::invalid_argument("BitMatrix: ragged initializer");
    for (int v : r) {
      if (v != 0 && v != 1) throw std::invalid_argument("BitMatrix: entries must be 0 or 1");
      bits_.push_back(static_cast<Bit>(v));
    }
  }
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

KernelVector::KernelVector(std::initializer_list<unsigned> sizes) : KernelVector(std::vector<unsigned>(sizes)) {}

KernelVector::KernelVector(std::vector<unsigned> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("KernelVector: at least one kernel is required");
  for (unsigned k : sizes_)
    if (k != 2 && k != 3) throw std::invalid_argument("KernelVector: kernel sizes must be 2 or 3");
}

KernelVector KernelVector::binary_then_ternary(unsigned twos, unsigned threes) {
  std::vector<unsigned> v(twos, 2);
  v.insert(v.end(), threes, 3);
  return KernelVector(std::move(v));
}

KernelVector KernelVector::ternary_then_binary(unsigned twos, unsigned threes) {
  std::vector<unsigned> v(threes, 3);
  v.insert(v.end(), twos, 2);
  return KernelVector(std::move(v));
}

std::size_t KernelVector::length() const {
  return std::accumulate(sizes_.begin(), sizes_.end(), std::size_t{1}, std::multiplies<>());
}

unsigned KernelVector::count_twos() const {
  return static_cast<unsigned>(std::count(sizes_.begin(), sizes_.end(), 2u));
}

unsigned KernelVector::count_threes() const {
  return static_cast<unsigned>(std::count(sizes_.begin(), sizes_.end(), 3u));
}

KernelVector KernelVector::suffix(std::size_t first) const {
  KernelVector out;
  out.sizes_.assign(sizes_.begin() + static_cast<std::ptrdiff_t>(std::min(first, sizes_.size())), sizes_.end());
  return out;
}

std::string KernelVector::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < sizes_.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(sizes_[i]);
  }
  return s;
}

KernelVector KernelVector::parse(const std::string& text) {
  std::vector<unsigned> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
    if (item == "2") v.push_back(2);
    else if (item == "3") v.push_back(3);
    else throw std::invalid_argument("KernelVector: bad kernel size '" + item + "'");
  }
  return KernelVector(std::move(v));
}

const BitMatrix& kernel_matrix(unsigned size) {
  static const BitMatrix t2{{1, 0}, {1, 1}};
  static const BitMatrix t3{{1, 1, 1}, {1, 0, 1}, {0, 1, 1}};
  if (size == 2) return t2;
  if (size == 3) return t3;
  throw std::invalid_argument("kernel_matrix: unsupported kernel size");
}

const BitMatrix& kernel_inverse(unsigned size) {
  static const BitMatrix t2_inv{{1, 0}, {1, 1}};
  static const BitMatrix t3_inv{{1, 0, 1}, {1, 1, 0}, {1, 1, 1}};
  if (size == 2) return t2_inv;
  if (size == 3) return t3_inv;
  throw std::invalid_argument("kernel_inverse: unsupported kernel size");
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
  BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      if (!a(i1, j1)) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          out(i1 * b.rows() + i2, j1 * b.cols() + j2) = b(i2, j2);
    }
  return out;
}

BitMatrix generator_matrix(const KernelVector& kv) {
  if (kv.empty()) throw std::invalid_argument("generator_matrix: empty kernel vector");
  BitMatrix g = kernel_matrix(kv[0]);
  for (std::size_t i = 1; i < kv.stages(); ++i) g = kron(g, kernel_matrix(kv[i]));
  return g;
}

BitMatrix inverse_generator(const KernelVector& kv) {
  if (kv.empty()) throw std::invalid_argument("inverse_generator: empty kernel vector");
  BitMatrix g = kernel_inverse(kv[0]);
  for (std::size_t i = 1; i < kv.stages(); ++i) g = kron(g, kernel_inverse(kv[i]));
  return g;
}

BitVector gf2_vecmat(std::span<const Bit> u, const BitMatrix& m) {
  if (u.size() != m.rows())
    throw std::invalid_argument("gf2_vecmat: vector length " + std::to_string(u.size()) + " does not match " +
                                std::to_string(m.rows()) + " matrix rows");
  BitVector x(m.cols(), 0);
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (!u[i]) continue;
    auto r = m.row(i);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] ^= r[j];
  }
  return x;
}

BitMatrix gf2_matmul(const BitMatrix& a, const BitMatrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("gf2_matmul: inner dimensions differ");
  BitMatrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    BitVector r = gf2_vecmat(a.row(i), b);
    for (std::size_t j = 0; j < r.size(); ++j) out(i, j) = r[j];
  }
  return out;
}

bool is_valid_length(std::size_t n) {
  if (n < 2) return false;
  while (n % 2 == 0) n /= 2;
  while (n % 3 == 0) n /= 3;
  return n == 1;
}

std::pair<unsigned, unsigned> factor_length(std::size_t n) {
  if (!is_valid_length(n))
    throw std::invalid_argument("length " + std::to_string(n) + " is not of the form 2^n 3^m");
  unsigned twos = 0, threes = 0;
  while (n % 2 == 0) n /= 2, ++twos;
  while (n % 3 == 0) n /= 3, ++threes;
  return {twos, threes};
}

std::pair<std::size_t, std::size_t> nearest_valid_lengths(std::size_t n) {
  std::size_t below = 0;
  for (std::size_t c = n; c-- > 2;)
    if (is_valid_length(c)) {
      below = c;
      break;
    }
  std::size_t above = n + 1;
  while (!is_valid_length(above)) ++above;
  return {below, above};
}

}  // namespace mkpolar
