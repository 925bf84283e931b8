#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "mkpolar/channel.hpp"

using namespace mkpolar;

TEST_CASE("BPSK mapping") {
  CHECK(modulate(BitVector{0, 1, 1, 0}) == std::vector<double>{1.0, -1.0, -1.0, 1.0});
  CHECK(modulate(BitVector{}).empty());
}

TEST_CASE("noise variance from Eb/N0") {
  ChannelConfig cfg{0.0, 1.0, 0, {}};
  CHECK(cfg.sigma2() == doctest::Approx(0.5));
  cfg = {3.0, 0.5, 0, {}};
  CHECK(cfg.sigma2() == doctest::Approx(1.0 / std::pow(10.0, 0.3)));
  cfg.sigma2_override = 1e-6;
  CHECK(cfg.sigma2() == 1e-6);
  cfg = {3.0, 0.0, 0, {}};
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("channel LLR statistics") {
  // All-zero codeword at sigma^2 = 0.5: LLR mean 2/sigma^2 = 4, variance 4/sigma^2 = 8.
  const ChannelConfig cfg{0.0, 1.0, 0, {}};
  std::mt19937_64 rng(1);
  const std::vector<double> s(200000, 1.0);
  const auto llr = awgn_llr(s, cfg, rng);
  const double mean = std::accumulate(llr.begin(), llr.end(), 0.0) / llr.size();
  double var = 0.0;
  for (double v : llr) var += (v - mean) * (v - mean);
  var /= llr.size() - 1;
  CHECK(mean == doctest::Approx(4.0).epsilon(0.01));
  CHECK(var == doctest::Approx(8.0).epsilon(0.02));
}

TEST_CASE("frame seeds are distinct and stable") {
  CHECK(frame_seed(1, 0, 0) == frame_seed(1, 0, 0));
  CHECK(frame_seed(1, 0, 0) != frame_seed(1, 0, 1));
  CHECK(frame_seed(1, 0, 0) != frame_seed(1, 1, 0));
  CHECK(frame_seed(1, 0, 0) != frame_seed(2, 0, 0));
}

TEST_CASE("decoder names") {
  CHECK(parse_decoder("sc") == DecoderKind::SC);
  CHECK(parse_decoder("fastssc") == DecoderKind::FastSSC);
  CHECK(to_string(DecoderKind::FastSSC) == "fastssc");
  CHECK_THROWS_AS(parse_decoder("list"), std::invalid_argument);
}

TEST_CASE("simulation does not depend on the worker count") {
  const CodeSpec s = make_code(96, 48, OrderingStrategy::Last, 3.0);
  SimOptions opts;
  opts.decoder = DecoderKind::FastSSC;
  opts.snrs_db = {1.0, 2.0};
  opts.stop = {4000, 30, 0, 250};
  opts.seed = 77;
  const auto one = run_fer(s, opts);
  opts.workers = 3;
  const auto three = run_fer(s, opts);
  REQUIRE(one.points.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    CHECK(one.points[i].frames == three.points[i].frames);
    CHECK(one.points[i].frame_errors == three.points[i].frame_errors);
    CHECK(one.points[i].bit_errors == three.points[i].bit_errors);
  }
  CHECK(one.points[0].frame_errors >= 30);
  CHECK(one.points[0].frames % 250 == 0);
}

TEST_CASE("near-noiseless channel gives no errors") {
  const CodeSpec s = make_code(432, 216, OrderingStrategy::First, 3.0);
  SimOptions opts;
  opts.decoder = DecoderKind::FastSSC;
  opts.snrs_db = {3.0};
  opts.stop = {2000, 1, 0, 500};
  opts.sigma2_override = 1e-6;
  const auto r = run_fer(s, opts);
  CHECK(r.points[0].frames == 2000);
  CHECK(r.points[0].frame_errors == 0);
  CHECK(r.points[0].fer() == 0.0);
}

TEST_CASE("SC and Fast-SSC without SPC see identical errors") {
  const CodeSpec s = make_code(72, 36, OrderingStrategy::First, 2.0);
  const ChannelConfig ch{2.0, s.rate(), 5, {}};
  const auto sc = simulate_frames(s, DecoderKind::SC, {}, ch, 0, 0, 2000);
  const auto fast = simulate_frames(s, DecoderKind::FastSSC, NodeLimits::without_spc(), ch, 0, 0, 2000);
  CHECK(sc.frames == 2000);
  CHECK(sc.frame_errors > 0);
  CHECK(sc.frame_errors == fast.frame_errors);
  CHECK(sc.bit_errors == fast.bit_errors);
}

TEST_CASE("FER decreases with SNR") {
  const CodeSpec s = make_code(96, 48, OrderingStrategy::Last, 3.0);
  SimOptions opts;
  opts.snrs_db = {0.0, 2.0, 4.0};
  opts.stop = {3000, 3000, 0, 1000};
  const auto r = run_fer(s, opts);
  CHECK(r.points[0].fer() > r.points[1].fer());
  CHECK(r.points[1].fer() > r.points[2].fer());
  CHECK(r.points[0].ber() <= r.points[0].fer());
}
