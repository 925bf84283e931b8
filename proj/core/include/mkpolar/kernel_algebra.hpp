#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mkpolar {

using Bit = std::uint8_t;
using BitVector = std::vector<Bit>;

/// Dense GF(2) matrix, row-major, one byte per entry.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);
  BitMatrix(std::initializer_list<std::initializer_list<int>> rows);

  static BitMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Bit operator()(std::size_t r, std::size_t c) const { return bits_[r * cols_ + c]; }
  Bit& operator()(std::size_t r, std::size_t c) { return bits_[r * cols_ + c]; }

  std::span<const Bit> row(std::size_t r) const { return {bits_.data() + r * cols_, cols_}; }

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t rows_;
  std::size_t cols_;
  BitVector bits_;
};

/// Ordered kernel sizes of a multi-kernel code, in Kronecker-product order.
/// Every entry is 2 (Arikan) or 3 (ternary).
class KernelVector {
 public:
  KernelVector() = default;
  KernelVector(std::initializer_list<unsigned> sizes);
  explicit KernelVector(std::vector<unsigned> sizes);

  /// `twos` binary stages followed by `threes` ternary stages.
  static KernelVector binary_then_ternary(unsigned twos, unsigned threes);
  static KernelVector ternary_then_binary(unsigned twos, unsigned threes);

  std::size_t stages() const { return sizes_.size(); }
  bool empty() const { return sizes_.empty(); }
  unsigned operator[](std::size_t i) const { return sizes_[i]; }
  const std::vector<unsigned>& sizes() const { return sizes_; }
  auto begin() const { return sizes_.begin(); }
  auto end() const { return sizes_.end(); }

  /// Product of all kernel sizes.
  std::size_t length() const;
  unsigned count_twos() const;
  unsigned count_threes() const;

  /// Kernels from stage `first` to the end; this is the sub-code seen by a
  /// decode-tree node at depth `first`.
  KernelVector suffix(std::size_t first) const;

  /// "2,2,3" style rendering.
  std::string to_string() const;
  static KernelVector parse(const std::string& text);

  friend bool operator==(const KernelVector&, const KernelVector&) = default;

 private:
  std::vector<unsigned> sizes_;
};

/// T2 = [1 0; 1 1] for size 2, T3 = [1 1 1; 1 0 1; 0 1 1] for size 3.
const BitMatrix& kernel_matrix(unsigned size);
const BitMatrix& kernel_inverse(unsigned size);

BitMatrix kron(const BitMatrix& a, const BitMatrix& b);

/// Left-to-right Kronecker product of the kernels in `kv`.
BitMatrix generator_matrix(const KernelVector& kv);

/// Kronecker product of the per-kernel inverses, i.e. the GF(2) inverse of
/// generator_matrix(kv).
BitMatrix inverse_generator(const KernelVector& kv);

/// Row vector times matrix over GF(2). Throws std::invalid_argument when
/// u.size() != m.rows().
BitVector gf2_vecmat(std::span<const Bit> u, const BitMatrix& m);

BitMatrix gf2_matmul(const BitMatrix& a, const BitMatrix& b);

/// True when n = 2^a 3^b for some a, b >= 0 and n >= 2.
bool is_valid_length(std::size_t n);

/// Exponents (twos, threes) of a valid length. Throws std::invalid_argument
/// otherwise.
std::pair<unsigned, unsigned> factor_length(std::size_t n);

/// Closest valid lengths strictly below and above n (below is 0 if none).
std::pair<std::size_t, std::size_t> nearest_valid_lengths(std::size_t n);

}  // namespace mkpolar
