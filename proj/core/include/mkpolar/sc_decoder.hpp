#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "mkpolar/construction.hpp"
#include "mkpolar/kernel_algebra.hpp"

namespace mkpolar {

/// Log-likelihood ratio, positive favours bit 0.
using Llr = double;

// Min-sum box-plus: sign(a) sign(b) min(|a|, |b|).
inline Llr boxplus(Llr a, Llr b) {
  const Llr m = std::min(std::abs(a), std::abs(b));
  return (std::signbit(a) != std::signbit(b)) ? -m : m;
}

inline Llr f_op(Llr l0, Llr l1) { return boxplus(l0, l1); }

inline Llr g_op(Llr l0, Llr l1, Bit u0) { return (u0 ? -l0 : l0) + l1; }

inline Llr lambda0(Llr l0, Llr l1, Llr l2) { return boxplus(boxplus(l0, l1), l2); }

inline Llr lambda1(Llr l0, Llr l1, Llr l2, Bit u0) { return (u0 ? -l0 : l0) + boxplus(l1, l2); }

/// u0 is the left-child partial sum, u1 the center-child partial sum.
inline Llr lambda2(Llr l1, Llr l2, Bit u0, Bit u1) { return (u0 ? -l1 : l1) + ((u0 ^ u1) ? -l2 : l2); }

/// Hard decision ignoring the frozen set: 0 iff l > 0.
inline Bit hard(Llr l) { return l > 0 ? Bit{0} : Bit{1}; }

inline Bit hard_decision(Llr l, bool is_frozen) { return is_frozen ? Bit{0} : hard(l); }

inline std::pair<Bit, Bit> combine2(Bit s0, Bit s1) { return {Bit(s0 ^ s1), s1}; }

inline std::array<Bit, 3> combine3(Bit s0, Bit s1, Bit s2) {
  return {Bit(s0 ^ s1), Bit(s0 ^ s2), Bit(s0 ^ s1 ^ s2)};
}

inline std::array<Bit, 3> combine3_inv(Bit s0, Bit s1, Bit s2) {
  return {Bit(s0 ^ s1 ^ s2), Bit(s1 ^ s2), Bit(s0 ^ s2)};
}

struct DecodeResult {
  BitVector u_hat;
  BitVector x_hat;  // re-encoded codeword estimate (root partial sums)
};

/// Shape of the SC decode tree. The first Kronecker factor splits the root;
/// a node at depth d spans N / (k_1 ... k_d) leaves and has k_{d+1} children.
class DecodeTree {
 public:
  explicit DecodeTree(const KernelVector& kv);

  std::size_t depth() const { return kernels_.stages(); }
  std::size_t span_at(std::size_t depth) const { return spans_[depth]; }
  unsigned branching_at(std::size_t depth) const { return kernels_[depth]; }
  const KernelVector& kernels() const { return kernels_; }

  /// Number of nodes below the root.
  std::size_t node_count() const;

 private:
  KernelVector kernels_;
  std::vector<std::size_t> spans_;
};

// The per-node LLR updates below are shared between the SC and Fast-SSC
// decoders. `parent` holds k * span entries laid out as k consecutive blocks.

/// LLRs for child `branch` of a node, given the partial sums of its left
/// siblings (laid out consecutively, `span` bits each).
void child_llrs(unsigned kernel, unsigned branch, std::span<const Llr> parent, std::span<const Bit> sibling_betas,
                std::span<Llr> child);

/// Parent partial sums from the k consecutive child partial sum blocks.
void combine_betas(unsigned kernel, std::span<const Bit> child_betas, std::span<Bit> parent);

/// Reference successive-cancellation decoder. Owns its scratch buffers, so an
/// instance must not be shared between threads mid-decode.
class ScDecoder {
 public:
  explicit ScDecoder(CodeSpec spec);

  const CodeSpec& spec() const { return spec_; }

  /// Throws std::invalid_argument if llr.size() != N.
  DecodeResult decode(std::span<const Llr> llr);

 private:
  void decode_node(std::size_t depth, std::size_t offset, std::span<const Llr> alpha, std::span<Bit> beta);

  CodeSpec spec_;
  DecodeTree tree_;
  std::vector<std::vector<Llr>> llr_;   // llr_[d]: LLRs of the active node at depth d
  std::vector<BitVector> betas_;        // betas_[d]: child partial sums of the active node at depth d-1
  BitVector u_hat_;
};

/// Convenience wrapper around a temporary ScDecoder.
DecodeResult decode_sc(const CodeSpec& spec, std::span<const Llr> llr);

}  // namespace mkpolar
