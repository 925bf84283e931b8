#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mkpolar/kernel_algebra.hpp"

namespace mkpolar {

/// Full definition of one multi-kernel polar code.
struct CodeSpec {
  std::size_t n_bits = 0;
  std::size_t k_bits = 0;
  KernelVector kernels;
  BitVector frozen;  // 1 = frozen

  double rate() const { return static_cast<double>(k_bits) / static_cast<double>(n_bits); }
  bool is_frozen(std::size_t i) const { return frozen[i] != 0; }
  std::vector<std::size_t> frozen_indices() const;
  std::vector<std::size_t> info_indices() const;

  /// Throws std::invalid_argument if the fields are inconsistent. K = 0 and
  /// K = N are accepted here so degenerate all-frozen / all-info codes can be
  /// decoded; make_code enforces 0 < K < N for constructed codes.
  void validate() const;

  static CodeSpec from_frozen(KernelVector kv, BitVector frozen);
};

enum class OrderingStrategy { First, Last, HighestReliability };

std::string to_string(OrderingStrategy s);
OrderingStrategy parse_ordering(const std::string& text);

/// Gaussian-approximation capacity function, piecewise around x = 0.8678.
/// Throws std::domain_error for negative x.
double phi(double x);

/// Approximate inverse of phi, piecewise around y = 0.6846.
/// Throws std::domain_error unless 0 < y <= 1.
double phi_inv(double y);

/// Mean of the check-node child of a binary stage: phi_inv(1 - (1 - phi(z))^2).
double ga_check_mean(double z);

/// Child means of one ternary stage, in branch order (left, center, right).
struct TernaryMeans {
  double left, center, right;
};
TernaryMeans ga_ternary_means(double z);

double ebn0_linear(double ebn0_db);

/// Channel LLR mean 4 R Eb/N0 for BPSK over AWGN.
double ga_initial_mean(double rate, double ebn0_db);

/// Per-leaf GA LLR means, leaves in decode-tree order. Throws
/// std::invalid_argument unless 0 < rate < 1.
std::vector<double> ga_reliabilities(const KernelVector& kv, double rate, double ebn0_db);

/// Mask with 1 at the N-K least reliable positions; equal means freeze the
/// lower index first.
BitVector select_frozen(const std::vector<double>& reliabilities, std::size_t k_bits);

/// Sum of the K largest entries.
double top_k_sum(const std::vector<double>& reliabilities, std::size_t k_bits);

/// Kernel order for n_two binary and n_three ternary stages. First places
/// ternary kernels at the head of the Kronecker product, Last at the tail.
/// HighestReliability searches every distinct arrangement and keeps the one
/// with the largest top-K GA mean sum, K = round(rate N).
KernelVector order_kernels(unsigned n_two, unsigned n_three, OrderingStrategy strategy, double rate,
                           double ebn0_db);

/// GA construction at the given design point. Requires 0 < K < N.
CodeSpec make_code(const KernelVector& kv, std::size_t k_bits, double design_ebn0_db = 3.0);

/// Orders kernels for length N (must be 2^n 3^m) then constructs the code.
CodeSpec make_code(std::size_t n_bits, std::size_t k_bits, OrderingStrategy strategy,
                   double design_ebn0_db = 3.0);

}  // namespace mkpolar
