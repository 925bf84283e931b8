#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "mkpolar/construction.hpp"
#include "oracles.hpp"

using namespace mkpolar;

// Reference values below were evaluated at 30 significant digits from the
// piecewise definitions with an arbitrary-precision calculator.

TEST_CASE("phi") {
  CHECK(phi(0.0) == 1.0);
  CHECK(phi(0.5) == doctest::Approx(0.795805873812969).epsilon(1e-12));
  CHECK(phi(2.0) == doctest::Approx(0.449388349908443).epsilon(1e-12));
  CHECK_THROWS_AS(phi(-0.1), std::domain_error);
}

TEST_CASE("phi is strictly decreasing on [0, 30]") {
  double prev = phi(0.0);
  for (int i = 1; i <= 3000; ++i) {
    const double v = phi(i * 0.01);
    CHECK(v < prev);
    CHECK(v > 0.0);
    prev = v;
  }
}

TEST_CASE("phi_inv") {
  CHECK(phi_inv(1.0) == 0.0);
  CHECK(phi_inv(0.5) == doctest::Approx(1.70126304763805).epsilon(1e-12));
  CHECK(phi_inv(phi(2.0)) == doctest::Approx(2.0).epsilon(0.05));
  CHECK_THROWS_AS(phi_inv(0.0), std::domain_error);
  CHECK_THROWS_AS(phi_inv(1.5), std::domain_error);
}

TEST_CASE("phi_inv(phi(x)) stays within 5% on [0.2, 20]") {
  for (double x = 0.2; x <= 20.0; x += 0.05) {
    CAPTURE(x);
    CHECK(std::abs(phi_inv(phi(x)) - x) <= 0.05 * x);
  }
}

TEST_CASE("GA stage updates") {
  const double z = ga_initial_mean(0.5, 3.0);
  CHECK(z == doctest::Approx(3.99052462993776).epsilon(1e-12));
  CHECK(ga_check_mean(z) == doctest::Approx(2.27445468281942).epsilon(1e-10));

  const TernaryMeans t = ga_ternary_means(z);
  CHECK(t.left == doctest::Approx(1.46643645757368).epsilon(1e-10));
  CHECK(t.center == doctest::Approx(6.26497931275718).epsilon(1e-10));
  CHECK(t.right == 2.0 * z);
}

TEST_CASE("ga_reliabilities for single kernels") {
  const double z = ga_initial_mean(0.5, 3.0);
  const auto two = ga_reliabilities({2}, 0.5, 3.0);
  REQUIRE(two.size() == 2);
  CHECK(two[0] == doctest::Approx(ga_check_mean(z)));
  CHECK(two[1] == 2.0 * z);

  for (double snr : {-1.0, 0.0, 3.0, 6.0}) {
    const auto three = ga_reliabilities({3}, 0.3, snr);
    CHECK(three[2] == 2.0 * ga_initial_mean(0.3, snr));
  }
  CHECK_THROWS_AS(ga_reliabilities({2}, 1.0, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(ga_reliabilities({2}, 0.0, 3.0), std::invalid_argument);
}

TEST_CASE("last leaf doubles at every stage") {
  for (const auto& kv : test::kernel_vectors_up_to(2304)) {
    const auto z = ga_reliabilities(kv, 0.5, 3.0);
    REQUIRE(z.size() == kv.length());
    CHECK(z.back() == doctest::Approx(ga_initial_mean(0.5, 3.0) * std::ldexp(1.0, int(kv.stages()))));
    for (double v : z) CHECK((v >= 0.0 && std::isfinite(v)));
  }
}

TEST_CASE("log-domain GA matches direct evaluation on short codes") {
  for (const auto& kv : test::kernel_vectors_up_to(36)) {
    std::vector<double> direct;
    test::ga_direct(kv, 0, ga_initial_mean(0.5, 1.0), direct);
    const auto z = ga_reliabilities(kv, 0.5, 1.0);
    for (std::size_t i = 0; i < z.size(); ++i) CHECK(z[i] == doctest::Approx(direct[i]).epsilon(1e-9));
  }
}

TEST_CASE("leaf means grow with Eb/N0") {
  const KernelVector kv{2, 2, 3, 2};
  const auto lo = ga_reliabilities(kv, 0.5, 1.0);
  const auto hi = ga_reliabilities(kv, 0.5, 2.0);
  for (std::size_t i = 0; i < lo.size(); ++i) CHECK(hi[i] > lo[i]);
}

TEST_CASE("select_frozen") {
  CHECK(select_frozen({0.1, 5.0, 3.0}, 2) == BitVector{1, 0, 0});
  CHECK(select_frozen({4.0, 0.5, 3.0, 9.0}, 3) == BitVector{0, 1, 0, 0});
  // ties freeze the lower index
  CHECK(select_frozen({1.0, 1.0, 1.0, 1.0}, 2) == BitVector{1, 1, 0, 0});
  CHECK(select_frozen({2.0, 1.0, 1.0, 3.0}, 3) == BitVector{0, 1, 0, 0});
}

TEST_CASE("construction is deterministic") {
  const auto a = make_code(KernelVector{2, 2, 2, 2, 2, 3}, 48, 3.0);
  const auto b = make_code(KernelVector{2, 2, 2, 2, 2, 3}, 48, 3.0);
  CHECK(a.frozen == b.frozen);
  CHECK(a.frozen_indices().size() == 48);
  CHECK_NOTHROW(a.validate());
  CHECK_THROWS_AS(make_code(KernelVector{2, 3}, 6, 3.0), std::invalid_argument);
  CHECK_THROWS_AS(make_code(KernelVector{2, 3}, 0, 3.0), std::invalid_argument);
}

TEST_CASE("kernel ordering strategies") {
  CHECK(order_kernels(5, 1, OrderingStrategy::Last, 0.5, 3.0) == KernelVector{2, 2, 2, 2, 2, 3});
  CHECK(order_kernels(5, 1, OrderingStrategy::First, 0.5, 3.0) == KernelVector{3, 2, 2, 2, 2, 2});

  // Two candidates: pick by the top-K GA mean sum computed here.
  const double s23 = top_k_sum(ga_reliabilities({2, 3}, 0.5, 3.0), 3);
  const double s32 = top_k_sum(ga_reliabilities({3, 2}, 0.5, 3.0), 3);
  const KernelVector expected = s23 >= s32 ? KernelVector{2, 3} : KernelVector{3, 2};
  CHECK(order_kernels(1, 1, OrderingStrategy::HighestReliability, 0.5, 3.0) == expected);
}

TEST_CASE("highest reliability beats or ties every arrangement") {
  const double rate = 0.5;
  const KernelVector best = order_kernels(3, 2, OrderingStrategy::HighestReliability, rate, 3.0);
  CHECK(best.count_twos() == 3);
  CHECK(best.count_threes() == 2);
  const std::size_t k = 36;
  const double best_score = top_k_sum(ga_reliabilities(best, rate, 3.0), k);
  std::vector<unsigned> perm{2, 2, 2, 3, 3};
  do {
    CHECK(top_k_sum(ga_reliabilities(KernelVector(perm), rate, 3.0), k) <= best_score);
  } while (std::next_permutation(perm.begin(), perm.end()));
}

TEST_CASE("ordering strategy names") {
  CHECK(parse_ordering("first") == OrderingStrategy::First);
  CHECK(parse_ordering("last") == OrderingStrategy::Last);
  CHECK(parse_ordering("highest") == OrderingStrategy::HighestReliability);
  CHECK_THROWS(parse_ordering("middle"));
}
