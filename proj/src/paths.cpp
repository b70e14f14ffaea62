#include "fpt/paths.hpp"

#include <bit>

#include "fpt/error.hpp"

namespace fpt {

GammaNode::GammaNode(int n_coordinates, std::uint32_t dead_mask)
    : n_(n_coordinates), dead_(dead_mask) {
  if (n_coordinates < 1 || n_coordinates > GammaGraph::kMaxCoordinates)
    throw DomainError("GammaNode: coordinate count out of range");
  if (dead_mask >> n_coordinates)
    throw DomainError("GammaNode: dead mask has bits beyond N");
}

int GammaNode::alive_count() const noexcept {
  return n_ - std::popcount(dead_);
}

bool GammaNode::precedes(const GammaNode& other) const noexcept {
  return n_ == other.n_ && dead_ != other.dead_ && (dead_ & ~other.dead_) == 0u;
}

std::string GammaNode::label() const {
  std::string s(static_cast<std::size_t>(n_), 'A');
  for (int i = 0; i < n_; ++i)
    if (!alive(i)) s[static_cast<std::size_t>(i)] = 'D';
  return s;
}

KillPath::KillPath(std::vector<GammaNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty()) throw DomainError("KillPath: empty path");
  if (nodes_.front().dead_mask() != 0u)
    throw DomainError("KillPath: path must start at the all-alive root");
  for (std::size_t s = 1; s < nodes_.size(); ++s) {
    if (!nodes_[s - 1].precedes(nodes_[s]))
      throw DomainError("KillPath: dead sets must strictly grow along the path");
  }
}

std::vector<int> KillPath::killed_at(std::size_t step) const {
  if (step == 0 || step >= nodes_.size())
    throw DomainError("KillPath::killed_at: step out of range");
  const std::uint32_t fresh =
      nodes_[step].dead_mask() & ~nodes_[step - 1].dead_mask();
  std::vector<int> out;
  for (int i = 0; i < nodes_[step].size(); ++i)
    if (fresh >> i & 1u) out.push_back(i);
  return out;
}

std::string KillPath::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (i) s += "→";
    s += nodes_[i].label();
  }
  return s;
}

std::size_t GammaGraph::edge_count() const noexcept {
  std::size_t three = 1;
  for (int i = 0; i < n_; ++i) three *= 3;
  return three - node_count();
}

std::vector<GammaNode> GammaGraph::nodes() const {
  std::vector<GammaNode> out;
  out.reserve(node_count());
  for (std::uint32_t m = 0; m < node_count(); ++m) out.emplace_back(n_, m);
  return out;
}

bool GammaGraph::has_edge(const GammaNode& from, const GammaNode& to) const {
  return from.size() == n_ && from.precedes(to);
}

std::vector<GammaNode> GammaGraph::successors(const GammaNode& node) const {
  const std::uint32_t full = static_cast<std::uint32_t>(node_count() - 1);
  const std::uint32_t free = full & ~node.dead_mask();
  std::vector<GammaNode> out;
  // Non-empty submasks of the alive set, in increasing order.
  std::vector<std::uint32_t> masks;
  for (std::uint32_t sub = free; sub; sub = (sub - 1) & free)
    masks.push_back(node.dead_mask() | sub);
  for (auto it = masks.rbegin(); it != masks.rend(); ++it)
    out.emplace_back(n_, *it);
  return out;
}

std::vector<std::pair<GammaNode, GammaNode>> GammaGraph::edges() const {
  std::vector<std::pair<GammaNode, GammaNode>> out;
  for (const auto& u : nodes())
    for (const auto& v : successors(u)) out.emplace_back(u, v);
  return out;
}

GammaGraph build_gamma(int n_coordinates) {
  if (n_coordinates < 1 || n_coordinates > GammaGraph::kMaxCoordinates)
    throw DomainError("build_gamma: N must lie in [1, 16]");
  return GammaGraph(n_coordinates);
}

namespace {

void extend(const GammaGraph& graph, int n_alive, std::vector<GammaNode>& prefix,
            std::vector<KillPath>& out) {
  for (const auto& next : graph.successors(prefix.back())) {
    if (next.alive_count() < n_alive) continue;
    prefix.push_back(next);
    if (next.alive_count() == n_alive)
      out.emplace_back(prefix);
    else
      extend(graph, n_alive, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

std::vector<KillPath> enumerate_paths(const GammaGraph& graph, int n_alive) {
  if (n_alive < 0 || n_alive >= graph.size())
    throw DomainError("enumerate_paths: require 0 <= n_alive < N");
  std::vector<KillPath> out;
  std::vector<GammaNode> prefix{graph.root()};
  extend(graph, n_alive, prefix, out);
  return out;
}

}  // namespace fpt
