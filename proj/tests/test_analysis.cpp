#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mkpolar/analysis.hpp"

using namespace mkpolar;

TEST_CASE("SC node counts") {
  CHECK(sc_node_count({2}) == 2);
  CHECK(sc_node_count({3}) == 3);
  CHECK(sc_node_count({2, 3}) == 2 + 6);
  CHECK(sc_node_count({3, 2}) == 3 + 6);
  CHECK(sc_node_count(KernelVector::binary_then_ternary(5, 1)) == 158);
  CHECK(sc_node_count(KernelVector::ternary_then_binary(5, 1)) == 189);
  CHECK(sc_node_count(KernelVector::binary_then_ternary(8, 2)) == 2 + 4 + 8 + 16 + 32 + 64 + 128 + 256 + 768 + 2304);
}

TEST_CASE("reduction percentage") {
  const CodeSpec s = make_code(96, 48, OrderingStrategy::Last, 3.0);
  const auto c = schedule_stats(build_schedule(s), s.kernels);
  CHECK(c.sc_nodes == 158);
  CHECK(c.reduction_pct == doctest::Approx(100.0 * (1.0 - double(c.fast_nodes) / 158.0)));
  CHECK(std::round(100.0 * (1.0 - 37.0 / 158.0) * 10.0) / 10.0 == 76.6);
}

TEST_CASE("single-node schedules count one operation") {
  const CodeSpec s = CodeSpec::from_frozen({2, 3}, BitVector(6, 1));
  const auto c = schedule_stats(build_schedule(s), s.kernels);
  CHECK(c.fast_nodes == 1);
  CHECK(c.rate0 == 1);
  CHECK(c.sc_nodes == 8);
}

TEST_CASE("class tallies add up to the fast leaves") {
  for (const auto& lc : table2_cases()) {
    const auto sched = build_schedule(lc.spec);
    const auto c = schedule_stats(sched, lc.spec.kernels);
    const std::size_t leaves = c.rate0 + c.rate1 + c.spc + c.rep2 + c.rep3_total();
    CHECK(c.fast_nodes == sched.nodes().size() - 1 + leaves);
    CHECK(c.fast_nodes < c.sc_nodes);
  }
}

TEST_CASE("latency table over the standard cases") {
  const auto cases = table2_cases();
  REQUIRE(cases.size() == 24);
  CHECK(cases[0].spec.n_bits == 96);
  CHECK(cases[0].spec.k_bits == 24);
  CHECK(cases[0].ordering == OrderingStrategy::Last);
  CHECK(cases[1].ordering == OrderingStrategy::First);
  CHECK(cases[23].spec.n_bits == 2304);
  CHECK(cases[23].spec.k_bits == 1728);

  const auto rows = latency_table(cases);
  REQUIRE(rows.size() == 24);
  for (const auto& r : rows) {
    CHECK(r.counts.reduction_pct >= 70.0);
    CHECK(r.rate == doctest::Approx(double(r.k_bits) / double(r.n_bits)));
  }
  CHECK(latency_table({}).empty());
}

TEST_CASE("sweeps") {
  const auto by_n = sweep_fixed_n(96);
  CHECK(by_n.size() == 14);
  CHECK(by_n.front().spec.k_bits == 12);
  CHECK(by_n.back().spec.k_bits == 84);

  const auto by_k = sweep_fixed_k(24);
  for (const auto& c : by_k) {
    CHECK(c.spec.k_bits == 24);
    CHECK(c.spec.n_bits >= 28);
    CHECK(c.spec.n_bits <= 192);
  }
  CHECK(by_k.size() % 2 == 0);
  CHECK_FALSE(by_k.empty());
}
