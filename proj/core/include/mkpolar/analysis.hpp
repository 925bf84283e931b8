#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "mkpolar/construction.hpp"
#include "mkpolar/fast_ssc.hpp"

namespace mkpolar {

/// Latency proxy: every decode-tree node is one operation.
struct NodeCounts {
  std::size_t sc_nodes = 0;
  std::size_t fast_nodes = 0;
  std::size_t rate0 = 0;
  std::size_t rate1 = 0;
  std::size_t spc = 0;
  std::size_t rep2 = 0;
  std::size_t rep3a = 0;
  std::size_t rep3b = 0;
  std::size_t rep3c = 0;
  double reduction_pct = 0.0;

  std::size_t rep3_total() const { return rep3a + rep3b + rep3c; }
};

/// Nodes of the full SC tree below the root: sum over d of k_1 ... k_d.
std::size_t sc_node_count(const KernelVector& kv);

/// Operation count of a pruned schedule: one per node below the root plus one
/// per fast leaf (its node decoder), per-class tallies of the fast leaves, and
/// the reduction versus SC. A schedule that is a single fast root counts 1.
NodeCounts schedule_stats(const PrunedSchedule& sched, const KernelVector& kv);

struct LatencyRow {
  std::size_t n_bits = 0;
  std::size_t k_bits = 0;
  double rate = 0.0;
  OrderingStrategy ordering = OrderingStrategy::Last;
  NodeCounts counts;
};

struct LatencyCase {
  CodeSpec spec;
  OrderingStrategy ordering = OrderingStrategy::Last;
};

std::vector<LatencyRow> latency_table(const std::vector<LatencyCase>& cases, const NodeLimits& limits = {});

/// The 24 (N, R, ordering) codes of the standard latency comparison, built with
/// GA at `design_ebn0_db`: N in {96, 432, 768, 2304}, R in {1/4, 1/2, 3/4},
/// ternary kernels last or first.
std::vector<LatencyCase> table2_cases(double design_ebn0_db = 3.0);

/// Fixed-K sweep: every valid length N with K/N in [1/8, 7/8], both orderings.
std::vector<LatencyCase> sweep_fixed_k(std::size_t k_bits, double design_ebn0_db = 3.0);

/// Fixed-N sweep: K = round(N r / 8) for r = 1..7, both orderings.
std::vector<LatencyCase> sweep_fixed_n(std::size_t n_bits, double design_ebn0_db = 3.0);

}  // namespace mkpolar
