#include "mkpolar/encoder.hpp"

#include <stdexcept>
#include <string>

#include "mkpolar/sc_decoder.hpp"

namespace mkpolar {

namespace {

// Stage d of a Kronecker product acts on groups of k entries spaced by the
// product of the kernels after d. Stages commute, so any visiting order gives
// the same result.
template <bool Inverse>
void apply_stages(std::span<Bit> bits, const KernelVector& kv) {
  if (bits.size() != kv.length()) throw std::invalid_argument("transform: length does not match kernel vector");
  std::size_t stride = bits.size();
  for (unsigned k : kv) {
    const std::size_t block = stride / k;
    for (std::size_t base = 0; base < bits.size(); base += stride) {
      Bit* p = bits.data() + base;
      for (std::size_t t = 0; t < block; ++t) {
        if (k == 2) {
          const auto [a, b] = combine2(p[t], p[block + t]);
          p[t] = a;
          p[block + t] = b;
        } else {
          const auto [a, b, c] = Inverse ? combine3_inv(p[t], p[block + t], p[2 * block + t])
                                         : combine3(p[t], p[block + t], p[2 * block + t]);
          p[t] = a;
          p[block + t] = b;
          p[2 * block + t] = c;
        }
      }
    }
    stride = block;
  }
}

void check_length(std::span<const Bit> u, const CodeSpec& spec) {
  if (u.size() != spec.n_bits)
    throw std::invalid_argument("sourceword length " + std::to_string(u.size()) + " differs from N=" +
                                std::to_string(spec.n_bits));
}

}  // namespace

BitVector expand_message(std::span<const Bit> message, const CodeSpec& spec) {
  if (message.size() != spec.k_bits)
    throw std::invalid_argument("expand_message: message length " + std::to_string(message.size()) +
                                " differs from K=" + std::to_string(spec.k_bits));
  BitVector u(spec.n_bits, 0);
  std::size_t next = 0;
  for (std::size_t i = 0; i < spec.n_bits; ++i)
    if (!spec.frozen[i]) u[i] = message[next++];
  return u;
}

BitVector extract_message(std::span<const Bit> u, const CodeSpec& spec) {
  check_length(u, spec);
  BitVector a;
  a.reserve(spec.k_bits);
  for (std::size_t i = 0; i < spec.n_bits; ++i)
    if (!spec.frozen[i]) a.push_back(u[i]);
  return a;
}

BitVector encode_matrix(std::span<const Bit> u, const CodeSpec& spec) {
  check_length(u, spec);
  return gf2_vecmat(u, generator_matrix(spec.kernels));
}

BitVector encode_recursive(std::span<const Bit> u, const CodeSpec& spec) {
  check_length(u, spec);
  BitVector x(u.begin(), u.end());
  transform_forward(x, spec.kernels);
  return x;
}

void transform_forward(std::span<Bit> bits, const KernelVector& kv) { apply_stages<false>(bits, kv); }

void transform_inverse(std::span<Bit> bits, const KernelVector& kv) { apply_stages<true>(bits, kv); }

}  // namespace mkpolar
