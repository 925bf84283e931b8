#include "mkpolar/analysis.hpp"

#include <cmath>

#include "mkpolar/sc_decoder.hpp"

namespace mkpolar {

std::size_t sc_node_count(const KernelVector& kv) { return DecodeTree(kv).node_count(); }

NodeCounts schedule_stats(const PrunedSchedule& sched, const KernelVector& kv) {
  NodeCounts c;
  c.sc_nodes = sc_node_count(kv);
  const auto& nodes = sched.nodes();
  std::size_t fast_leaves = 0;
  for (const auto& n : nodes) {
    if (n.cls != NodeClass::Generic) ++fast_leaves;
    switch (n.cls) {
      case NodeClass::Rate0: ++c.rate0; break;
      case NodeClass::Rate1: ++c.rate1; break;
      case NodeClass::SPC: ++c.spc; break;
      case NodeClass::REP2: ++c.rep2; break;
      case NodeClass::REP3A: ++c.rep3a; break;
      case NodeClass::REP3B: ++c.rep3b; break;
      case NodeClass::REP3C: ++c.rep3c; break;
      case NodeClass::Generic: break;
    }
  }
  // Every non-root node costs one LLR update; a fast leaf costs one more step
  // for its node decoder.
  c.fast_nodes = nodes.size() - 1 + fast_leaves;
  c.reduction_pct = 100.0 * (1.0 - static_cast<double>(c.fast_nodes) / static_cast<double>(c.sc_nodes));
  return c;
}

std::vector<LatencyRow> latency_table(const std::vector<LatencyCase>& cases, const NodeLimits& limits) {
  std::vector<LatencyRow> rows;
  rows.reserve(cases.size());
  for (const auto& c : cases) {
    LatencyRow row;
    row.n_bits = c.spec.n_bits;
    row.k_bits = c.spec.k_bits;
    row.rate = c.spec.rate();
    row.ordering = c.ordering;
    row.counts = schedule_stats(build_schedule(c.spec, limits), c.spec.kernels);
    rows.push_back(row);
  }
  return rows;
}

std::vector<LatencyCase> table2_cases(double design_ebn0_db) {
  std::vector<LatencyCase> cases;
  for (std::size_t n : {96u, 432u, 768u, 2304u})
    for (double r : {0.25, 0.5, 0.75})
      for (auto order : {OrderingStrategy::Last, OrderingStrategy::First}) {
        const auto k = static_cast<std::size_t>(std::llround(r * static_cast<double>(n)));
        cases.push_back({make_code(n, k, order, design_ebn0_db), order});
      }
  return cases;
}

std::vector<LatencyCase> sweep_fixed_k(std::size_t k_bits, double design_ebn0_db) {
  std::vector<LatencyCase> cases;
  const auto lo = static_cast<std::size_t>(std::ceil(static_cast<double>(k_bits) * 8.0 / 7.0));
  for (std::size_t n = lo; n <= 8 * k_bits; ++n) {
    if (!is_valid_length(n) || k_bits >= n) continue;
    for (auto order : {OrderingStrategy::Last, OrderingStrategy::First})
      cases.push_back({make_code(n, k_bits, order, design_ebn0_db), order});
  }
  return cases;
}

std::vector<LatencyCase> sweep_fixed_n(std::size_t n_bits, double design_ebn0_db) {
  std::vector<LatencyCase> cases;
  for (int r = 1; r <= 7; ++r) {
    const auto k = static_cast<std::size_t>(std::llround(static_cast<double>(n_bits) * r / 8.0));
    for (auto order : {OrderingStrategy::Last, OrderingStrategy::First})
      cases.push_back({make_code(n_bits, k, order, design_ebn0_db), order});
  }
  return cases;
}

}  // namespace mkpolar
