#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace fpt {

/// One alive/dead configuration of an N-coordinate system. Coordinate i
/// (0-based) is dead when bit i of the dead mask is set.
class GammaNode {
 public:
  GammaNode(int n_coordinates, std::uint32_t dead_mask);

  static GammaNode root(int n_coordinates) { return {n_coordinates, 0u}; }

  int size() const noexcept { return n_; }
  std::uint32_t dead_mask() const noexcept { return dead_; }
  bool alive(int coordinate) const noexcept { return !(dead_ >> coordinate & 1u); }
  int alive_count() const noexcept;
  int dead_count() const noexcept { return n_ - alive_count(); }

  /// Strict inclusion of dead sets.
  bool precedes(const GammaNode& other) const noexcept;

  /// "AAD": one letter per coordinate, A alive, D dead.
  std::string label() const;

  friend bool operator==(const GammaNode&, const GammaNode&) = default;
  friend auto operator<=>(const GammaNode& a, const GammaNode& b) {
    return a.dead_ <=> b.dead_;
  }

 private:
  int n_;
  std::uint32_t dead_;
};

/// Time-ordered killing sequence starting at the all-alive root. Each step
/// kills at least one coordinate; several may die at once.
class KillPath {
 public:
  explicit KillPath(std::vector<GammaNode> nodes);

  const std::vector<GammaNode>& nodes() const noexcept { return nodes_; }
  const GammaNode& terminal() const noexcept { return nodes_.back(); }
  std::size_t steps() const noexcept { return nodes_.size() - 1; }

  /// Coordinates killed on step s (1-based step index into nodes()).
  std::vector<int> killed_at(std::size_t step) const;

  /// "AAA→DAA→DDA"
  std::string to_string() const;

  friend bool operator==(const KillPath&, const KillPath&) = default;
  friend auto operator<=>(const KillPath& a, const KillPath& b) {
    return a.nodes_ <=> b.nodes_;
  }

 private:
  std::vector<GammaNode> nodes_;
};

/// Directed graph of configurations with an edge u -> v whenever
/// dead(u) is a strict subset of dead(v). Edges are implicit.
class GammaGraph {
 public:
  static constexpr int kMaxCoordinates = 16;

  int size() const noexcept { return n_; }
  std::size_t node_count() const noexcept { return std::size_t{1} << n_; }
  /// 3^N - 2^N.
  std::size_t edge_count() const noexcept;

  GammaNode root() const { return GammaNode::root(n_); }
  std::vector<GammaNode> nodes() const;
  bool has_edge(const GammaNode& from, const GammaNode& to) const;
  /// Successors in increasing dead-mask order.
  std::vector<GammaNode> successors(const GammaNode& node) const;
  /// Materialised edge list; intended for small N.
  std::vector<std::pair<GammaNode, GammaNode>> edges() const;

  friend GammaGraph build_gamma(int n_coordinates);

 private:
  explicit GammaGraph(int n) : n_(n) {}
  int n_;
};

/// Throws DomainError unless 1 <= n_coordinates <= 16.
GammaGraph build_gamma(int n_coordinates);

/// All chains from the root to any node with exactly n_alive alive
/// coordinates, in lexicographic order of their node sequences.
std::vector<KillPath> enumerate_paths(const GammaGraph& graph, int n_alive);

}  // namespace fpt
