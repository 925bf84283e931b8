#include "mkpolar/channel.hpp"

#include <algorithm>
#include <exception>
#include <stdexcept>
#include <thread>
#include <variant>

#include "mkpolar/encoder.hpp"

namespace mkpolar {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

using AnyDecoder = std::variant<ScDecoder, FastSscDecoder>;

AnyDecoder make_decoder(const CodeSpec& spec, DecoderKind kind, const NodeLimits& limits) {
  if (kind == DecoderKind::SC) return ScDecoder(spec);
  return FastSscDecoder(spec, limits);
}

}  // namespace

double ChannelConfig::sigma2() const {
  if (sigma2_override) return *sigma2_override;
  return 1.0 / (2.0 * rate * ebn0_linear(ebn0_db));
}

void ChannelConfig::validate() const {
  if (!(rate > 0.0 && rate <= 1.0)) throw std::invalid_argument("ChannelConfig: rate must lie in (0, 1]");
  if (!(sigma2() > 0.0)) throw std::invalid_argument("ChannelConfig: noise variance must be positive");
}

std::vector<double> modulate(std::span<const Bit> x) {
  std::vector<double> s(x.size());
  std::transform(x.begin(), x.end(), s.begin(), [](Bit b) { return b ? -1.0 : 1.0; });
  return s;
}

std::vector<Llr> awgn_llr(std::span<const double> symbols, const ChannelConfig& cfg, std::mt19937_64& rng) {
  const double sigma2 = cfg.sigma2();
  std::normal_distribution<double> noise(0.0, std::sqrt(sigma2));
  std::vector<Llr> llr(symbols.size());
  for (std::size_t i = 0; i < symbols.size(); ++i) llr[i] = 2.0 * (symbols[i] + noise(rng)) / sigma2;
  return llr;
}

std::uint64_t frame_seed(std::uint64_t seed, std::uint64_t snr_index, std::uint64_t frame) {
  return splitmix64(splitmix64(splitmix64(seed) ^ snr_index) ^ frame);
}

std::string to_string(DecoderKind k) { return k == DecoderKind::SC ? "sc" : "fastssc"; }

DecoderKind parse_decoder(const std::string& text) {
  if (text == "sc") return DecoderKind::SC;
  if (text == "fastssc" || text == "fast-ssc" || text == "fast") return DecoderKind::FastSSC;
  throw std::invalid_argument("unknown decoder '" + text + "' (expected sc or fastssc)");
}

SimPoint simulate_frames(const CodeSpec& spec, DecoderKind decoder, const NodeLimits& limits,
                         const ChannelConfig& channel, std::uint64_t snr_index, std::uint64_t first,
                         std::uint64_t last) {
  channel.validate();
  AnyDecoder dec = make_decoder(spec, decoder, limits);
  SimPoint pt;
  pt.ebn0_db = channel.ebn0_db;
  pt.k_bits = spec.k_bits;
  BitVector message(spec.k_bits);
  for (std::uint64_t frame = first; frame < last; ++frame) {
    std::mt19937_64 rng(frame_seed(channel.seed, snr_index, frame));
    for (auto& b : message) b = static_cast<Bit>(rng() & 1u);
    const BitVector x = encode_recursive(expand_message(message, spec), spec);
    const std::vector<Llr> llr = awgn_llr(modulate(x), channel, rng);
    const DecodeResult res = std::visit([&](auto& d) { return d.decode(llr); }, dec);
    const BitVector decoded = extract_message(res.u_hat, spec);
    std::uint64_t errs = 0;
    for (std::size_t i = 0; i < message.size(); ++i) errs += decoded[i] != message[i];
    pt.bit_errors += errs;
    pt.frame_errors += errs != 0;
    ++pt.frames;
  }
  return pt;
}

SimStats run_fer(const CodeSpec& spec, const SimOptions& opts) {
  spec.validate();
  if (opts.stop.batch_frames == 0) throw std::invalid_argument("run_fer: batch size must be positive");
  const unsigned workers = std::max(1u, opts.workers);
  SimStats stats;
  for (std::size_t si = 0; si < opts.snrs_db.size(); ++si) {
    const double snr = opts.snrs_db[si];
    const CodeSpec code = opts.rebuild_frozen ? make_code(spec.kernels, spec.k_bits, snr) : spec;
    ChannelConfig channel{snr, code.rate(), opts.seed, opts.sigma2_override};

    SimPoint total;
    total.ebn0_db = snr;
    total.k_bits = code.k_bits;
    std::uint64_t next_batch = 0;
    bool done = opts.stop.max_frames == 0;
    while (!done) {
      // One round runs `workers` consecutive batches; only the prefix up to the
      // batch that satisfies the stop rule is kept.
      std::vector<std::pair<std::uint64_t, std::uint64_t>> ranges;
      for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t first = (next_batch + w) * opts.stop.batch_frames;
        if (first >= opts.stop.max_frames) break;
        ranges.emplace_back(first, std::min(first + opts.stop.batch_frames, opts.stop.max_frames));
      }
      std::vector<SimPoint> results(ranges.size());
      std::vector<std::exception_ptr> errors(ranges.size());
      auto run = [&](std::size_t i) {
        try {
          results[i] = simulate_frames(code, opts.decoder, opts.limits, channel, si, ranges[i].first, ranges[i].second);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      };
      if (ranges.size() == 1) {
        run(0);
      } else {
        std::vector<std::jthread> pool;
        for (std::size_t i = 0; i < ranges.size(); ++i) pool.emplace_back(run, i);
      }
      for (const auto& e : errors)
        if (e) std::rethrow_exception(e);
      for (const SimPoint& r : results) {
        total.frames += r.frames;
        total.frame_errors += r.frame_errors;
        total.bit_errors += r.bit_errors;
        ++next_batch;
        if (total.frames >= opts.stop.max_frames ||
            (total.frame_errors >= opts.stop.min_frame_errors && total.frames >= opts.stop.min_frames)) {
          done = true;
          break;
        }
      }
    }
    stats.points.push_back(total);
  }
  return stats;
}

}  // namespace mkpolar
