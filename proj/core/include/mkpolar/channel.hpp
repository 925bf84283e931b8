#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <vector>

#include "mkpolar/construction.hpp"
#include "mkpolar/fast_ssc.hpp"
#include "mkpolar/sc_decoder.hpp"

namespace mkpolar {

/// BPSK over AWGN at a given Eb/N0.
struct ChannelConfig {
  double ebn0_db = 3.0;
  double rate = 0.5;
  std::uint64_t seed = 0;
  /// Replaces the noise variance derived from Eb/N0, e.g. a tiny value for a
  /// noiseless channel.
  std::optional<double> sigma2_override;

  /// 1 / (2 R Eb/N0) unless overridden.
  double sigma2() const;
  void validate() const;
};

/// Bit 0 -> +1, bit 1 -> -1.
std::vector<double> modulate(std::span<const Bit> x);

/// y = s + n, n ~ N(0, sigma^2); returns 2 y / sigma^2.
std::vector<Llr> awgn_llr(std::span<const double> symbols, const ChannelConfig& cfg, std::mt19937_64& rng);

/// Seed of the RNG stream for one frame; independent of worker scheduling.
std::uint64_t frame_seed(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t frame);

enum class DecoderKind { SC, FastSSC };

std::string to_string(DecoderKind k);
DecoderKind parse_decoder(const std::string& text);

/// Simulation of one SNR point ends at the first batch boundary where either
/// max_frames is reached or min_frame_errors have been seen (and at least
/// min_frames were run).
struct StopRule {
  std::uint64_t max_frames = 1'000'000;
  std::uint64_t min_frame_errors = 100;
  std::uint64_t min_frames = 0;
  std::uint64_t batch_frames = 1000;
};

struct SimPoint {
  double ebn0_db = 0.0;
  std::uint64_t frames = 0;
  std::uint64_t frame_errors = 0;
  std::uint64_t bit_errors = 0;
  std::size_t k_bits = 0;

  double fer() const { return frames ? static_cast<double>(frame_errors) / static_cast<double>(frames) : 0.0; }
  double ber() const {
    return frames ? static_cast<double>(bit_errors) / (static_cast<double>(frames) * static_cast<double>(k_bits)) : 0.0;
  }
};

struct SimStats {
  std::vector<SimPoint> points;
};

struct SimOptions {
  DecoderKind decoder = DecoderKind::SC;
  NodeLimits limits;
  std::vector<double> snrs_db;
  StopRule stop;
  unsigned workers = 1;
  std::uint64_t seed = 1;
  /// Re-run GA construction at every simulated Eb/N0; otherwise the frozen
  /// set of the given spec is used throughout.
  bool rebuild_frozen = true;
  std::optional<double> sigma2_override;
};

/// Monte-Carlo FER/BER with random messages. Results depend only on the spec
/// and options, never on thread timing or the worker count.
SimStats run_fer(const CodeSpec& spec, const SimOptions& opts);

/// Runs frames [first, last) of one SNR point on the calling thread.
SimPoint simulate_frames(const CodeSpec& spec, DecoderKind decoder, const NodeLimits& limits,
                         const ChannelConfig& channel, std::uint64_t snr_index, std::uint64_t first,
                         std::uint64_t last);

}  // namespace mkpolar
