#include "mkpolar/sc_decoder.hpp"

#include <stdexcept>
#include <string>

namespace mkpolar {

DecodeTree::DecodeTree(const KernelVector& kv) : kernels_(kv) {
  if (kv.empty()) throw std::invalid_argument("DecodeTree: empty kernel vector");
  spans_.resize(kv.stages() + 1);
  spans_[0] = kv.length();
  for (std::size_t d = 0; d < kv.stages(); ++d) spans_[d + 1] = spans_[d] / kv[d];
}

std::size_t DecodeTree::node_count() const {
  std::size_t total = 0, width = 1;
  for (unsigned k : kernels_) {
    width *= k;
    total += width;
  }
  return total;
}

void child_llrs(unsigned kernel, unsigned branch, std::span<const Llr> parent, std::span<const Bit> sibling_betas,
                std::span<Llr> child) {
  const std::size_t b = child.size();
  const Llr* a0 = parent.data();
  const Llr* a1 = a0 + b;
  if (kernel == 2) {
    if (branch == 0) {
      for (std::size_t t = 0; t < b; ++t) child[t] = f_op(a0[t], a1[t]);
    } else {
      const Bit* u0 = sibling_betas.data();
      for (std::size_t t = 0; t < b; ++t) child[t] = g_op(a0[t], a1[t], u0[t]);
    }
    return;
  }
  const Llr* a2 = a1 + b;
  switch (branch) {
    case 0:
      for (std::size_t t = 0; t < b; ++t) child[t] = lambda0(a0[t], a1[t], a2[t]);
      break;
    case 1: {
      const Bit* u0 = sibling_betas.data();
      for (std::size_t t = 0; t < b; ++t) child[t] = lambda1(a0[t], a1[t], a2[t], u0[t]);
      break;
    }
    default: {
      const Bit* u0 = sibling_betas.data();
      const Bit* u1 = u0 + b;
      for (std::size_t t = 0; t < b; ++t) child[t] = lambda2(a1[t], a2[t], u0[t], u1[t]);
      break;
    }
  }
}

void combine_betas(unsigned kernel, std::span<const Bit> child_betas, std::span<Bit> parent) {
  const std::size_t b = parent.size() / kernel;
  const Bit* s0 = child_betas.data();
  const Bit* s1 = s0 + b;
  if (kernel == 2) {
    for (std::size_t t = 0; t < b; ++t) {
      const auto [x0, x1] = combine2(s0[t], s1[t]);
      parent[t] = x0;
      parent[b + t] = x1;
    }
    return;
  }
  const Bit* s2 = s1 + b;
  for (std::size_t t = 0; t < b; ++t) {
    const auto [x0, x1, x2] = combine3(s0[t], s1[t], s2[t]);
    parent[t] = x0;
    parent[b + t] = x1;
    parent[2 * b + t] = x2;
  }
}

ScDecoder::ScDecoder(CodeSpec spec) : spec_(std::move(spec)), tree_(spec_.kernels) {
  spec_.validate();
  llr_.resize(tree_.depth() + 1);
  betas_.resize(tree_.depth() + 1);
  for (std::size_t d = 0; d <= tree_.depth(); ++d) {
    llr_[d].resize(tree_.span_at(d));
    if (d > 0) betas_[d].resize(tree_.span_at(d - 1));
  }
  u_hat_.resize(spec_.n_bits);
}

DecodeResult ScDecoder::decode(std::span<const Llr> llr) {
  if (llr.size() != spec_.n_bits)
    throw std::invalid_argument("ScDecoder: expected " + std::to_string(spec_.n_bits) + " LLRs, got " +
                                std::to_string(llr.size()));
  DecodeResult out;
  out.x_hat.assign(spec_.n_bits, 0);
  decode_node(0, 0, llr, out.x_hat);
  out.u_hat = u_hat_;
  return out;
}

void ScDecoder::decode_node(std::size_t depth, std::size_t offset, std::span<const Llr> alpha, std::span<Bit> beta) {
  if (depth == tree_.depth()) {
    const Bit u = hard_decision(alpha[0], spec_.is_frozen(offset));
    u_hat_[offset] = u;
    beta[0] = u;
    return;
  }
  const unsigned k = tree_.branching_at(depth);
  const std::size_t b = tree_.span_at(depth + 1);
  std::span<Llr> child(llr_[depth + 1]);
  std::span<Bit> child_betas(betas_[depth + 1]);
  for (unsigned branch = 0; branch < k; ++branch) {
    child_llrs(k, branch, alpha, child_betas.first(branch * b), child);
    decode_node(depth + 1, offset + branch * b, child, child_betas.subspan(branch * b, b));
  }
  combine_betas(k, child_betas, beta);
}

DecodeResult decode_sc(const CodeSpec& spec, std::span<const Llr> llr) {
  ScDecoder decoder(spec);
  return decoder.decode(llr);
}

}  // namespace mkpolar
