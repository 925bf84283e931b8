#pragma once

#include <span>

#include "mkpolar/construction.hpp"
#include "mkpolar/kernel_algebra.hpp"

namespace mkpolar {

/// Places the K message bits into the information positions in index order;
/// frozen positions are zero. Throws std::invalid_argument on length mismatch.
BitVector expand_message(std::span<const Bit> message, const CodeSpec& spec);

/// Inverse of expand_message: reads the information positions of u.
BitVector extract_message(std::span<const Bit> u, const CodeSpec& spec);

/// x = u G by dense matrix product.
BitVector encode_matrix(std::span<const Bit> u, const CodeSpec& spec);

/// x = u G by in-place stage transforms, O(N * stages).
BitVector encode_recursive(std::span<const Bit> u, const CodeSpec& spec);

/// Applies the generator of `kv` to `bits` in place.
void transform_forward(std::span<Bit> bits, const KernelVector& kv);

/// Applies the inverse generator of `kv` to `bits` in place (u = x G^-1).
void transform_inverse(std::span<Bit> bits, const KernelVector& kv);

}  // namespace mkpolar
