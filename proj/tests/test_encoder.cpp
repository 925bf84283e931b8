#include <doctest.h>

#include <random>
#include <stdexcept>

#include "mkpolar/encoder.hpp"
#include "oracles.hpp"

using namespace mkpolar;

namespace {

CodeSpec spec_with_frozen(KernelVector kv, std::initializer_list<std::size_t> frozen_idx) {
  BitVector mask(kv.length(), 0);
  for (auto i : frozen_idx) mask[i] = 1;
  return CodeSpec::from_frozen(std::move(kv), std::move(mask));
}

}  // namespace

TEST_CASE("expand_message") {
  const CodeSpec n3 = spec_with_frozen({3}, {0});
  CHECK(expand_message(BitVector{1, 0}, n3) == BitVector{0, 1, 0});
  CHECK(expand_message(BitVector{0, 0}, n3) == BitVector{0, 0, 0});

  const CodeSpec n4 = spec_with_frozen({2, 2}, {0});
  CHECK(expand_message(BitVector{1, 1, 0}, n4) == BitVector{0, 1, 1, 0});
  CHECK_THROWS_AS(expand_message(BitVector{1}, n4), std::invalid_argument);
  CHECK(extract_message(BitVector{0, 1, 1, 0}, n4) == BitVector{1, 1, 0});
}

TEST_CASE("SPC codeword shapes") {
  const CodeSpec n3 = spec_with_frozen({3}, {0});
  for (Bit a0 : {0, 1})
    for (Bit a1 : {0, 1}) {
      const BitVector u = expand_message(BitVector{a0, a1}, n3);
      const BitVector expected{a0, a1, Bit(a0 ^ a1)};
      CHECK(encode_matrix(u, n3) == expected);
      CHECK(encode_recursive(u, n3) == expected);
    }

  const CodeSpec n4 = spec_with_frozen({2, 2}, {0});
  for (int m = 0; m < 8; ++m) {
    const Bit a0 = m & 1, a1 = (m >> 1) & 1, a2 = (m >> 2) & 1;
    const BitVector u = expand_message(BitVector{a0, a1, a2}, n4);
    const BitVector expected{Bit(a0 ^ a1 ^ a2), Bit(a0 ^ a2), Bit(a1 ^ a2), a2};
    CHECK(encode_matrix(u, n4) == expected);
    CHECK(encode_recursive(u, n4) == expected);
  }
}

TEST_CASE("ternary repetition codeword") {
  const CodeSpec rep = spec_with_frozen({3}, {0, 1});
  CHECK(encode_matrix(BitVector{0, 0, 1}, rep) == BitVector{0, 1, 1});
  CHECK(encode_recursive(BitVector{0, 0, 0}, rep) == BitVector{0, 0, 0});
}

TEST_CASE("unit vector at the last index encodes to the last generator row") {
  const CodeSpec s = spec_with_frozen({2, 3}, {});
  BitVector u(6, 0);
  u[5] = 1;
  const BitMatrix g = generator_matrix(s.kernels);
  const auto row = g.row(5);
  CHECK(encode_recursive(u, s) == BitVector(row.begin(), row.end()));
}

TEST_CASE("recursive encoder equals matrix encoder") {
  std::mt19937_64 rng(2024);
  for (std::size_t n : {6u, 12u, 18u, 24u, 36u, 48u, 96u}) {
    const auto [twos, threes] = factor_length(n);
    for (const auto& kv : {KernelVector::binary_then_ternary(twos, threes), KernelVector::ternary_then_binary(twos, threes)}) {
      const CodeSpec s = CodeSpec::from_frozen(kv, BitVector(n, 0));
      const BitMatrix g = generator_matrix(kv);
      int mismatches = 0;
      for (int trial = 0; trial < 1000; ++trial) {
        const BitVector u = test::random_bits(n, rng);
        mismatches += encode_recursive(u, s) != gf2_vecmat(u, g);
      }
      CAPTURE(kv.to_string());
      CHECK(mismatches == 0);
    }
  }
}

TEST_CASE("recursive encoder equals matrix encoder on mixed interior orders") {
  std::mt19937_64 rng(7);
  for (const auto& kv : test::kernel_vectors_up_to(96)) {
    const CodeSpec s = CodeSpec::from_frozen(kv, BitVector(kv.length(), 0));
    for (int trial = 0; trial < 20; ++trial) {
      const BitVector u = test::random_bits(kv.length(), rng);
      CHECK(encode_recursive(u, s) == encode_matrix(u, s));
    }
  }
}

TEST_CASE("encoding is linear and invertible") {
  std::mt19937_64 rng(99);
  const CodeSpec s = CodeSpec::from_frozen(KernelVector{3, 2, 2, 3}, BitVector(36, 0));
  for (int trial = 0; trial < 200; ++trial) {
    const BitVector u1 = test::random_bits(36, rng);
    const BitVector u2 = test::random_bits(36, rng);
    BitVector sum(36);
    for (int i = 0; i < 36; ++i) sum[i] = u1[i] ^ u2[i];
    const BitVector x1 = encode_recursive(u1, s), x2 = encode_recursive(u2, s), xs = encode_recursive(sum, s);
    for (int i = 0; i < 36; ++i) CHECK(xs[i] == (x1[i] ^ x2[i]));

    BitVector back = x1;
    transform_inverse(back, s.kernels);
    CHECK(back == u1);
  }
  CHECK(encode_recursive(BitVector(36, 0), s) == BitVector(36, 0));
  CHECK_THROWS_AS(encode_recursive(BitVector(35, 0), s), std::invalid_argument);
}
