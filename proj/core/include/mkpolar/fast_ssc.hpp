#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mkpolar/construction.hpp"
#include "mkpolar/kernel_algebra.hpp"
#include "mkpolar/sc_decoder.hpp"

namespace mkpolar {

enum class NodeClass { Rate0, Rate1, SPC, REP2, REP3A, REP3B, REP3C, Generic };

std::string to_string(NodeClass c);
NodeClass parse_node_class(const std::string& text);
bool is_rep(NodeClass c);

/// Restrictions on which subtrees become fast nodes. A subtree rejected only
/// by a limit is decoded by generic recursion instead, which costs nodes but
/// never correctness.
struct NodeLimits {
  /// Largest all-ternary REP node; one of 3, 9, 27.
  std::size_t rep3a_max_span = 27;
  /// Ternary stages allowed in a mixed REP node. Values above 1 are decoded
  /// with the full repetition pattern rather than the skip rules.
  unsigned rep3bc_max_ternary_stages = 1;
  /// Spans above a cap are not classified as that node type; 0 disables it.
  std::optional<std::size_t> rate1_max_span;
  std::optional<std::size_t> spc_max_span;
  std::optional<std::size_t> rep2_max_span;
  /// Accept any all-but-last-frozen subtree as a REP node regardless of kernel
  /// arrangement, and decode it by the pattern-weighted LLR sum.
  bool general_rep = false;

  void validate() const;

  static NodeLimits without_spc();
};

/// Repetition pattern: Kronecker product of (1,1) per binary and (0,1,1) per
/// ternary kernel, in kernel order. Equals the last row of the generator.
BitVector rep_pattern(const KernelVector& kv_sub);

/// Classifies a subtree from its frozen mask (1 = frozen). Requires a span of
/// at least 2. Rate0 > Rate1 > REP > SPC when several patterns match.
NodeClass classify_node(std::span<const Bit> frozen_span, const KernelVector& kv_sub, const NodeLimits& limits);

struct ScheduleNode {
  NodeClass cls = NodeClass::Generic;
  std::size_t depth = 0;
  std::size_t offset = 0;
  std::size_t span = 0;
  KernelVector sub_kernels;           // empty for single-bit leaves
  std::vector<std::size_t> children;  // indices into PrunedSchedule::nodes(); Generic only
  BitVector pattern;                  // REP nodes only
  bool masked_rep = false;            // REP decoded by pattern-weighted sum
};

/// Decode tree with fast-node subtrees collapsed into leaves. Nodes are kept in
/// depth-first pre-order; nodes()[0] is the root.
class PrunedSchedule {
 public:
  PrunedSchedule(KernelVector kernels, std::vector<ScheduleNode> nodes);

  const KernelVector& kernels() const { return kernels_; }
  const std::vector<ScheduleNode>& nodes() const { return nodes_; }
  const ScheduleNode& root() const { return nodes_.front(); }
  std::size_t length() const { return kernels_.length(); }

 private:
  KernelVector kernels_;
  std::vector<ScheduleNode> nodes_;
};

/// Greedy top-down pruning: a node matching a fast pattern becomes a leaf;
/// otherwise its children are visited. Surviving tree leaves are single-bit
/// Rate0/Rate1 nodes.
PrunedSchedule build_schedule(const CodeSpec& spec, const NodeLimits& limits = {});

/// Throws std::invalid_argument if the schedule does not describe `spec`.
void check_schedule(const CodeSpec& spec, const PrunedSchedule& sched);

/// `depth,offset,span,class` per node in depth-first order, after a header.
void write_schedule_csv(std::ostream& os, const PrunedSchedule& sched);

struct NodeDecision {
  BitVector beta;
  BitVector u_hat;
};

// Span-based node decoders write beta and u_hat (both alpha.size() long).
void decode_rate0(std::span<Bit> beta, std::span<Bit> u_hat);
void decode_rate1(std::span<const Llr> alpha, const KernelVector& kv_sub, std::span<Bit> beta, std::span<Bit> u_hat);
void decode_spc(std::span<const Llr> alpha, const KernelVector& kv_sub, std::span<Bit> beta, std::span<Bit> u_hat);
void decode_rep(std::span<const Llr> alpha, NodeClass cls, std::span<const Bit> pattern, bool masked,
                std::span<Bit> beta, std::span<Bit> u_hat);

NodeDecision decode_rate0(std::size_t span);
NodeDecision decode_rate1(std::span<const Llr> alpha, const KernelVector& kv_sub);
/// Rate-1 decoding with u_hat = beta G_p^-1 by dense matrix product.
NodeDecision decode_rate1_matrix(std::span<const Llr> alpha, const KernelVector& kv_sub);
NodeDecision decode_spc(std::span<const Llr> alpha, const KernelVector& kv_sub);
NodeDecision decode_rep(std::span<const Llr> alpha, NodeClass cls, std::span<const Bit> pattern,
                        bool masked = false);

/// Fast-SSC decoder driven by a pruned schedule. Schedules are immutable and
/// can be shared; a decoder instance owns scratch buffers.
class FastSscDecoder {
 public:
  FastSscDecoder(CodeSpec spec, PrunedSchedule schedule);
  FastSscDecoder(CodeSpec spec, const NodeLimits& limits);

  const CodeSpec& spec() const { return spec_; }
  const PrunedSchedule& schedule() const { return sched_; }

  DecodeResult decode(std::span<const Llr> llr);

 private:
  void decode_node(std::size_t index, std::span<const Llr> alpha, std::span<Bit> beta);

  CodeSpec spec_;
  PrunedSchedule sched_;
  std::vector<std::vector<Llr>> llr_;
  std::vector<BitVector> betas_;
  BitVector u_hat_;
};

DecodeResult decode_fast(const CodeSpec& spec, const PrunedSchedule& sched, std::span<const Llr> llr);

}  // namespace mkpolar
