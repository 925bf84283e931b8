#include "mkpolar/construction.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace mkpolar {

namespace {

constexpr double kPhiPivot = 0.8678;
constexpr double kPhiInvPivot = 0.6846;
constexpr double kAlpha = -0.4527;
constexpr double kBeta = 0.0218;
constexpr double kGamma = 0.86;
constexpr double kA = 1.0 / kAlpha;
constexpr double kB = -kBeta / kAlpha;
constexpr double kC = 1.0 / kGamma;

// The GA recursion is carried out on log(phi). Means grow like 2^stages so
// phi underflows long before the stage count of a 2304-bit code is reached;
// in the log domain the same formulas stay finite.

double log_phi(double x) {
  if (x < kPhiPivot) return 0.0564 * x * x - 0.485 * x;
  return kAlpha * std::pow(x, kGamma) + kBeta;
}

double phi_inv_from_log(double log_y) {
  if (log_y > std::log(kPhiInvPivot)) return 4.3049 * (1.0 - std::sqrt(1.0 + 0.9567 * log_y));
  return std::pow(kA * log_y + kB, kC);
}

// log(1 - (1 - p)^2) = log p + log(2 - p)
double log_one_minus_sq(double log_p) { return log_p + std::log(2.0 - std::exp(log_p)); }

// log(1 - (1 - p)(1 - q)) = log(p + q - pq)
double log_union(double log_p, double log_q) {
  const double hi = std::max(log_p, log_q);
  const double lo = std::min(log_p, log_q);
  return hi + std::log(1.0 + std::exp(lo - hi) - std::exp(lo));
}

void evolve(const KernelVector& kv, std::size_t depth, double z, std::vector<double>& out) {
  if (depth == kv.stages()) {
    out.push_back(z);
    return;
  }
  if (kv[depth] == 2) {
    evolve(kv, depth + 1, ga_check_mean(z), out);
    evolve(kv, depth + 1, 2.0 * z, out);
  } else {
    const TernaryMeans m = ga_ternary_means(z);
    evolve(kv, depth + 1, m.left, out);
    evolve(kv, depth + 1, m.center, out);
    evolve(kv, depth + 1, m.right, out);
  }
}

}  // namespace

std::vector<std::size_t> CodeSpec::frozen_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < frozen.size(); ++i)
    if (frozen[i]) out.push_back(i);
  return out;
}

std::vector<std::size_t> CodeSpec::info_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < frozen.size(); ++i)
    if (!frozen[i]) out.push_back(i);
  return out;
}

void CodeSpec::validate() const {
  if (kernels.empty()) throw std::invalid_argument("CodeSpec: empty kernel vector");
  if (n_bits != kernels.length())
    throw std::invalid_argument("CodeSpec: N=" + std::to_string(n_bits) + " does not match kernel product " +
                                std::to_string(kernels.length()));
  if (frozen.size() != n_bits) throw std::invalid_argument("CodeSpec: frozen mask length differs from N");
  if (k_bits > n_bits) throw std::invalid_argument("CodeSpec: K exceeds N");
  const auto n_frozen = static_cast<std::size_t>(std::count(frozen.begin(), frozen.end(), Bit{1}));
  if (std::any_of(frozen.begin(), frozen.end(), [](Bit b) { return b > 1; }))
    throw std::invalid_argument("CodeSpec: frozen mask entries must be 0 or 1");
  if (n_frozen != n_bits - k_bits) throw std::invalid_argument("CodeSpec: frozen count differs from N-K");
}

CodeSpec CodeSpec::from_frozen(KernelVector kv, BitVector frozen) {
  CodeSpec spec;
  spec.n_bits = kv.length();
  spec.k_bits = spec.n_bits - static_cast<std::size_t>(std::count(frozen.begin(), frozen.end(), Bit{1}));
  spec.kernels = std::move(kv);
  spec.frozen = std::move(frozen);
  spec.validate();
  return spec;
}

std::string to_string(OrderingStrategy s) {
  switch (s) {
    case OrderingStrategy::First: return "first";
    case OrderingStrategy::Last: return "last";
    case OrderingStrategy::HighestReliability: return "highest";
  }
  return "?";
}

OrderingStrategy parse_ordering(const std::string& text) {
  if (text == "first") return OrderingStrategy::First;
  if (text == "last") return OrderingStrategy::Last;
  if (text == "highest" || text == "highest-reliability") return OrderingStrategy::HighestReliability;
  throw std::invalid_argument("unknown ordering '" + text + "' (expected first, last or highest)");
}

double phi(double x) {
  if (!(x >= 0.0)) throw std::domain_error("phi: argument must be nonnegative");
  return std::exp(log_phi(x));
}

double phi_inv(double y) {
  if (!(y > 0.0 && y <= 1.0)) throw std::domain_error("phi_inv: argument must lie in (0, 1]");
  return phi_inv_from_log(std::log(y));
}

double ga_check_mean(double z) { return phi_inv_from_log(log_one_minus_sq(log_phi(z))); }

TernaryMeans ga_ternary_means(double z) {
  const double log_pz = log_phi(z);
  const double check = phi_inv_from_log(log_one_minus_sq(log_pz));
  return {phi_inv_from_log(log_union(log_phi(check), log_pz)), check + z, 2.0 * z};
}

double ebn0_linear(double ebn0_db) { return std::pow(10.0, ebn0_db / 10.0); }

double ga_initial_mean(double rate, double ebn0_db) { return 4.0 * rate * ebn0_linear(ebn0_db); }

std::vector<double> ga_reliabilities(const KernelVector& kv, double rate, double ebn0_db) {
  if (!(rate > 0.0 && rate < 1.0)) throw std::invalid_argument("ga_reliabilities: rate must lie in (0, 1)");
  std::vector<double> out;
  out.reserve(kv.length());
  evolve(kv, 0, ga_initial_mean(rate, ebn0_db), out);
  return out;
}

BitVector select_frozen(const std::vector<double>& reliabilities, std::size_t k_bits) {
  const std::size_t n = reliabilities.size();
  if (k_bits > n) throw std::invalid_argument("select_frozen: K exceeds N");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return reliabilities[a] < reliabilities[b]; });
  BitVector frozen(n, 0);
  for (std::size_t i = 0; i < n - k_bits; ++i) frozen[order[i]] = 1;
  return frozen;
}

double top_k_sum(const std::vector<double>& reliabilities, std::size_t k_bits) {
  std::vector<double> sorted = reliabilities;
  k_bits = std::min(k_bits, sorted.size());
  std::partial_sort(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k_bits), sorted.end(),
                    std::greater<>());
  return std::accumulate(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(k_bits), 0.0);
}

KernelVector order_kernels(unsigned n_two, unsigned n_three, OrderingStrategy strategy, double rate,
                           double ebn0_db) {
  if (n_two + n_three == 0) throw std::invalid_argument("order_kernels: no kernels");
  switch (strategy) {
    case OrderingStrategy::First: return KernelVector::ternary_then_binary(n_two, n_three);
    case OrderingStrategy::Last: return KernelVector::binary_then_ternary(n_two, n_three);
    case OrderingStrategy::HighestReliability: break;
  }
  std::vector<unsigned> perm(n_two, 2);
  perm.insert(perm.end(), n_three, 3);
  KernelVector best;
  double best_score = -1.0;
  const std::size_t n = KernelVector(perm).length();
  const auto k = static_cast<std::size_t>(std::llround(rate * static_cast<double>(n)));
  do {
    KernelVector kv(perm);
    const double score = top_k_sum(ga_reliabilities(kv, rate, ebn0_db), k);
    if (score > best_score) {
      best_score = score;
      best = kv;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

CodeSpec make_code(const KernelVector& kv, std::size_t k_bits, double design_ebn0_db) {
  const std::size_t n = kv.length();
  if (k_bits == 0 || k_bits >= n)
    throw std::invalid_argument("make_code: K must satisfy 0 < K < N (K=" + std::to_string(k_bits) +
                                ", N=" + std::to_string(n) + ")");
  const double rate = static_cast<double>(k_bits) / static_cast<double>(n);
  CodeSpec spec;
  spec.n_bits = n;
  spec.k_bits = k_bits;
  spec.kernels = kv;
  spec.frozen = select_frozen(ga_reliabilities(kv, rate, design_ebn0_db), k_bits);
  return spec;
}

CodeSpec make_code(std::size_t n_bits, std::size_t k_bits, OrderingStrategy strategy, double design_ebn0_db) {
  const auto [twos, threes] = factor_length(n_bits);
  if (k_bits == 0 || k_bits >= n_bits) throw std::invalid_argument("make_code: K must satisfy 0 < K < N");
  const double rate = static_cast<double>(k_bits) / static_cast<double>(n_bits);
  return make_code(order_kernels(twos, threes, strategy, rate, design_ebn0_db), k_bits, design_ebn0_db);
}

}  // namespace mkpolar
