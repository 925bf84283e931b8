#include "mkpolar/fast_ssc.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

#include "mkpolar/encoder.hpp"

namespace mkpolar {

namespace {

bool within(const std::optional<std::size_t>& cap, std::size_t span) { return !cap || span <= *cap; }

std::optional<NodeClass> rep_class(const KernelVector& kv, std::size_t span, const NodeLimits& limits) {
  const unsigned threes = kv.count_threes();
  const unsigned twos = kv.count_twos();
  if (threes == 0) return within(limits.rep2_max_span, span) ? std::optional(NodeClass::REP2) : std::nullopt;
  if (limits.general_rep) {
    if (twos == 0) return NodeClass::REP3A;
    return kv[kv.stages() - 1] == 3 ? NodeClass::REP3C : NodeClass::REP3B;
  }
  if (twos == 0) return span <= limits.rep3a_max_span ? std::optional(NodeClass::REP3A) : std::nullopt;
  if (threes > limits.rep3bc_max_ternary_stages) return std::nullopt;
  const auto& s = kv.sizes();
  if (std::all_of(s.begin(), s.begin() + threes, [](unsigned k) { return k == 3; })) return NodeClass::REP3B;
  if (std::all_of(s.end() - threes, s.end(), [](unsigned k) { return k == 3; })) return NodeClass::REP3C;
  return std::nullopt;
}

struct Builder {
  const CodeSpec& spec;
  const NodeLimits& limits;
  std::vector<ScheduleNode> nodes;

  std::size_t visit(std::size_t depth, std::size_t offset, std::size_t span) {
    const std::size_t index = nodes.size();
    nodes.emplace_back();
    ScheduleNode node;
    node.depth = depth;
    node.offset = offset;
    node.span = span;
    std::span<const Bit> mask(spec.frozen.data() + offset, span);
    if (span == 1) {
      node.cls = mask[0] ? NodeClass::Rate0 : NodeClass::Rate1;
      nodes[index] = std::move(node);
      return index;
    }
    node.sub_kernels = spec.kernels.suffix(depth);
    node.cls = classify_node(mask, node.sub_kernels, limits);
    if (is_rep(node.cls)) {
      node.pattern = rep_pattern(node.sub_kernels);
      const unsigned threes = node.sub_kernels.count_threes();
      node.masked_rep = limits.general_rep || (node.sub_kernels.count_twos() > 0 && threes > 1);
    }
    if (node.cls == NodeClass::Generic) {
      const unsigned k = spec.kernels[depth];
      const std::size_t child_span = span / k;
      for (unsigned branch = 0; branch < k; ++branch)
        node.children.push_back(visit(depth + 1, offset + branch * child_span, child_span));
    }
    nodes[index] = std::move(node);
    return index;
  }
};

std::size_t argmin_abs(std::span<const Llr> alpha) {
  std::size_t j = 0;
  for (std::size_t i = 1; i < alpha.size(); ++i)
    if (std::abs(alpha[i]) < std::abs(alpha[j])) j = i;
  return j;
}

}  // namespace

std::string to_string(NodeClass c) {
  switch (c) {
    case NodeClass::Rate0: return "Rate0";
    case NodeClass::Rate1: return "Rate1";
    case NodeClass::SPC: return "SPC";
    case NodeClass::REP2: return "REP2";
    case NodeClass::REP3A: return "REP3A";
    case NodeClass::REP3B: return "REP3B";
    case NodeClass::REP3C: return "REP3C";
    case NodeClass::Generic: return "Generic";
  }
  return "?";
}

NodeClass parse_node_class(const std::string& text) {
  for (auto c : {NodeClass::Rate0, NodeClass::Rate1, NodeClass::SPC, NodeClass::REP2, NodeClass::REP3A,
                 NodeClass::REP3B, NodeClass::REP3C, NodeClass::Generic})
    if (to_string(c) == text) return c;
  throw std::invalid_argument("unknown node class '" + text + "'");
}

bool is_rep(NodeClass c) {
  return c == NodeClass::REP2 || c == NodeClass::REP3A || c == NodeClass::REP3B || c == NodeClass::REP3C;
}

void NodeLimits::validate() const {
  if (rep3a_max_span != 3 && rep3a_max_span != 9 && rep3a_max_span != 27)
    throw std::invalid_argument("NodeLimits: rep3a_max_span must be 3, 9 or 27");
  if (rep3bc_max_ternary_stages == 0)
    throw std::invalid_argument("NodeLimits: rep3bc_max_ternary_stages must be at least 1");
}

NodeLimits NodeLimits::without_spc() {
  NodeLimits limits;
  limits.spc_max_span = 0;
  return limits;
}

BitVector rep_pattern(const KernelVector& kv_sub) {
  BitVector p{1};
  for (unsigned k : kv_sub) {
    const BitVector factor = k == 2 ? BitVector{1, 1} : BitVector{0, 1, 1};
    BitVector next;
    next.reserve(p.size() * factor.size());
    for (Bit a : p)
      for (Bit b : factor) next.push_back(a & b);
    p = std::move(next);
  }
  return p;
}

NodeClass classify_node(std::span<const Bit> frozen_span, const KernelVector& kv_sub, const NodeLimits& limits) {
  const std::size_t span = frozen_span.size();
  if (span < 2) throw std::invalid_argument("classify_node: span must be at least 2");
  if (kv_sub.length() != span) throw std::invalid_argument("classify_node: mask length differs from kernel product");
  const auto n_frozen = static_cast<std::size_t>(std::count(frozen_span.begin(), frozen_span.end(), Bit{1}));
  if (n_frozen == span) return NodeClass::Rate0;
  if (n_frozen == 0) return within(limits.rate1_max_span, span) ? NodeClass::Rate1 : NodeClass::Generic;
  if (n_frozen == span - 1 && !frozen_span[span - 1])
    if (auto rep = rep_class(kv_sub, span, limits)) return *rep;
  if (n_frozen == 1 && frozen_span[0] && within(limits.spc_max_span, span)) return NodeClass::SPC;
  return NodeClass::Generic;
}

PrunedSchedule::PrunedSchedule(KernelVector kernels, std::vector<ScheduleNode> nodes)
    : kernels_(std::move(kernels)), nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw std::invalid_argument("PrunedSchedule: no nodes");
}

PrunedSchedule build_schedule(const CodeSpec& spec, const NodeLimits& limits) {
  spec.validate();
  limits.validate();
  Builder b{spec, limits, {}};
  b.visit(0, 0, spec.n_bits);
  return PrunedSchedule(spec.kernels, std::move(b.nodes));
}

void check_schedule(const CodeSpec& spec, const PrunedSchedule& sched) {
  auto fail = [](const std::string& why) { throw std::invalid_argument("schedule does not match code: " + why); };
  if (!(sched.kernels() == spec.kernels)) fail("kernel vectors differ");
  const auto& nodes = sched.nodes();
  if (nodes.front().span != spec.n_bits || nodes.front().offset != 0) fail("root does not span the code");
  std::size_t next_leaf = 0;
  for (const auto& n : nodes) {
    if (n.cls == NodeClass::Generic) {
      if (n.depth >= spec.kernels.stages()) fail("generic node below the last stage");
      const unsigned k = spec.kernels[n.depth];
      if (n.children.size() != k) fail("generic node with wrong child count");
      for (unsigned i = 0; i < k; ++i) {
        const auto& c = nodes.at(n.children[i]);
        if (c.span * k != n.span || c.offset != n.offset + i * c.span || c.depth != n.depth + 1)
          fail("children do not partition their parent");
      }
      continue;
    }
    if (n.offset != next_leaf) fail("leaves are not contiguous");
    next_leaf += n.span;
    if (n.offset + n.span > spec.n_bits) fail("leaf outside the code");
    std::span<const Bit> mask(spec.frozen.data() + n.offset, n.span);
    const auto n_frozen = static_cast<std::size_t>(std::count(mask.begin(), mask.end(), Bit{1}));
    bool ok = true;
    switch (n.cls) {
      case NodeClass::Rate0: ok = n_frozen == n.span; break;
      case NodeClass::Rate1: ok = n_frozen == 0; break;
      case NodeClass::SPC: ok = n_frozen == 1 && mask[0]; break;
      default: ok = n_frozen + 1 == n.span && !mask[n.span - 1] && n.pattern.size() == n.span; break;
    }
    if (!ok) fail(to_string(n.cls) + " node at offset " + std::to_string(n.offset) + " contradicts frozen set");
  }
  if (next_leaf != spec.n_bits) fail("leaves do not cover the code");
}

void write_schedule_csv(std::ostream& os, const PrunedSchedule& sched) {
  os << "depth,offset,span,class\n";
  for (const auto& n : sched.nodes()) os << n.depth << ',' << n.offset << ',' << n.span << ',' << to_string(n.cls) << '\n';
}

void decode_rate0(std::span<Bit> beta, std::span<Bit> u_hat) {
  std::fill(beta.begin(), beta.end(), Bit{0});
  std::fill(u_hat.begin(), u_hat.end(), Bit{0});
}

void decode_rate1(std::span<const Llr> alpha, const KernelVector& kv_sub, std::span<Bit> beta, std::span<Bit> u_hat) {
  for (std::size_t i = 0; i < alpha.size(); ++i) beta[i] = hard(alpha[i]);
  std::copy(beta.begin(), beta.end(), u_hat.begin());
  transform_inverse(u_hat, kv_sub);
}

void decode_spc(std::span<const Llr> alpha, const KernelVector& kv_sub, std::span<Bit> beta, std::span<Bit> u_hat) {
  Bit parity = 0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    beta[i] = hard(alpha[i]);
    parity ^= beta[i];
  }
  if (parity) beta[argmin_abs(alpha)] ^= 1;
  std::copy(beta.begin(), beta.end(), u_hat.begin());
  transform_inverse(u_hat, kv_sub);
}

void decode_rep(std::span<const Llr> alpha, NodeClass cls, std::span<const Bit> pattern, bool masked,
                std::span<Bit> beta, std::span<Bit> u_hat) {
  const std::size_t span = alpha.size();
  if (pattern.size() != span) throw std::invalid_argument("decode_rep: pattern length differs from node span");
  Llr sum = 0.0;
  if (masked || cls == NodeClass::REP3A) {
    for (std::size_t j = 0; j < span; ++j)
      if (pattern[j]) sum += alpha[j];
  } else {
    switch (cls) {
      case NodeClass::REP2:
        for (std::size_t j = 0; j < span; ++j) sum += alpha[j];
        break;
      case NodeClass::REP3B:
        for (std::size_t j = span / 3; j < span; ++j) sum += alpha[j];
        break;
      case NodeClass::REP3C:
        for (std::size_t j = 0; j < span; ++j)
          if (j % 3 != 0) sum += alpha[j];
        break;
      default: throw std::invalid_argument("decode_rep: not a repetition node class");
    }
  }
  const Bit b = hard(sum);
  for (std::size_t i = 0; i < span; ++i) beta[i] = b & pattern[i];
  std::fill(u_hat.begin(), u_hat.end(), Bit{0});
  u_hat[span - 1] = b;
}

NodeDecision decode_rate0(std::size_t span) { return {BitVector(span, 0), BitVector(span, 0)}; }

NodeDecision decode_rate1(std::span<const Llr> alpha, const KernelVector& kv_sub) {
  NodeDecision d{BitVector(alpha.size()), BitVector(alpha.size())};
  decode_rate1(alpha, kv_sub, d.beta, d.u_hat);
  return d;
}

NodeDecision decode_rate1_matrix(std::span<const Llr> alpha, const KernelVector& kv_sub) {
  NodeDecision d;
  d.beta.resize(alpha.size());
  for (std::size_t i = 0; i < alpha.size(); ++i) d.beta[i] = hard(alpha[i]);
  d.u_hat = gf2_vecmat(d.beta, inverse_generator(kv_sub));
  return d;
}

NodeDecision decode_spc(std::span<const Llr> alpha, const KernelVector& kv_sub) {
  NodeDecision d{BitVector(alpha.size()), BitVector(alpha.size())};
  decode_spc(alpha, kv_sub, d.beta, d.u_hat);
  return d;
}

NodeDecision decode_rep(std::span<const Llr> alpha, NodeClass cls, std::span<const Bit> pattern, bool masked) {
  NodeDecision d{BitVector(alpha.size()), BitVector(alpha.size())};
  decode_rep(alpha, cls, pattern, masked, d.beta, d.u_hat);
  return d;
}

FastSscDecoder::FastSscDecoder(CodeSpec spec, PrunedSchedule schedule)
    : spec_(std::move(spec)), sched_(std::move(schedule)) {
  spec_.validate();
  check_schedule(spec_, sched_);
  const DecodeTree tree(spec_.kernels);
  llr_.resize(tree.depth() + 1);
  betas_.resize(tree.depth() + 1);
  for (std::size_t d = 0; d <= tree.depth(); ++d) {
    llr_[d].resize(tree.span_at(d));
    if (d > 0) betas_[d].resize(tree.span_at(d - 1));
  }
  u_hat_.resize(spec_.n_bits);
}

FastSscDecoder::FastSscDecoder(CodeSpec spec, const NodeLimits& limits)
    : FastSscDecoder(spec, build_schedule(spec, limits)) {}

DecodeResult FastSscDecoder::decode(std::span<const Llr> llr) {
  if (llr.size() != spec_.n_bits)
    throw std::invalid_argument("FastSscDecoder: expected " + std::to_string(spec_.n_bits) + " LLRs, got " +
                                std::to_string(llr.size()));
  DecodeResult out;
  out.x_hat.assign(spec_.n_bits, 0);
  decode_node(0, llr, out.x_hat);
  out.u_hat = u_hat_;
  return out;
}

void FastSscDecoder::decode_node(std::size_t index, std::span<const Llr> alpha, std::span<Bit> beta) {
  const ScheduleNode& node = sched_.nodes()[index];
  std::span<Bit> u(u_hat_.data() + node.offset, node.span);
  switch (node.cls) {
    case NodeClass::Rate0: decode_rate0(beta, u); return;
    case NodeClass::Rate1: decode_rate1(alpha, node.sub_kernels, beta, u); return;
    case NodeClass::SPC: decode_spc(alpha, node.sub_kernels, beta, u); return;
    case NodeClass::REP2:
    case NodeClass::REP3A:
    case NodeClass::REP3B:
    case NodeClass::REP3C: decode_rep(alpha, node.cls, node.pattern, node.masked_rep, beta, u); return;
    case NodeClass::Generic: break;
  }
  const unsigned k = spec_.kernels[node.depth];
  const std::size_t b = node.span / k;
  std::span<Llr> child(llr_[node.depth + 1]);
  std::span<Bit> child_betas(betas_[node.depth + 1]);
  for (unsigned branch = 0; branch < k; ++branch) {
    child_llrs(k, branch, alpha, child_betas.first(branch * b), child);
    decode_node(node.children[branch], child, child_betas.subspan(branch * b, b));
  }
  combine_betas(k, child_betas, beta);
}

DecodeResult decode_fast(const CodeSpec& spec, const PrunedSchedule& sched, std::span<const Llr> llr) {
  FastSscDecoder decoder(spec, sched);
  return decoder.decode(llr);
}

}  // namespace mkpolar
