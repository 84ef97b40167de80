#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace fairdrop {

// Canonical undirected edge, oriented u < v after canonicalization.
struct Edge {
  std::uint32_t u = 0;
  std::uint32_t v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge canonical(std::uint32_t a, std::uint32_t b) {
  return a < b ? Edge{a, b} : Edge{b, a};
}

// Immutable undirected unweighted graph: a canonical sorted edge list plus a
// CSR adjacency index derived from it. Construction canonicalizes endpoint
// order, removes self-loops and duplicate edges, and validates node ids.
class Graph {
 public:
  Graph() = default;
  Graph(std::size_t num_nodes, std::vector<Edge> edges);

  std::size_t num_nodes() const { return n_; }
  std::size_t num_edges() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::span<const std::uint32_t> neighbors(std::uint32_t node) const {
    return {adj_.data() + adj_offsets_[node],
            adj_.data() + adj_offsets_[node + 1]};
  }
  std::size_t degree(std::uint32_t node) const {
    return adj_offsets_[node + 1] - adj_offsets_[node];
  }
  bool has_edge(std::uint32_t a, std::uint32_t b) const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;                 // sorted, u < v
  std::vector<std::size_t> adj_offsets_;    // size n_ + 1
  std::vector<std::uint32_t> adj_;          // sorted neighbor lists
};

// Per-node categorical sensitive attribute vector s with |S| = num_classes.
struct SensitiveAttributes {
  std::vector<std::uint32_t> values;
  std::uint32_t num_classes = 0;

  // Number of nodes per class; empty classes are permitted and show up as 0.
  std::vector<std::size_t> class_counts() const;
};

// Throws if any value is out of [0, num_classes) or the length differs from n.
void validate_attributes(const SensitiveAttributes& s, std::size_t num_nodes);

// n x d real feature matrix.
using NodeFeatures = Eigen::MatrixXd;

// 80/20-style edge split with matched negative samples.
struct SplitEdges {
  std::vector<Edge> train_pos;
  std::vector<Edge> test_pos;
  std::vector<Edge> train_neg;
  std::vector<Edge> test_neg;
  std::uint64_t seed = 0;
};

// Splits the edge set into train/test positives and samples an equal number
// of non-edges per split, uniformly without replacement. Deterministic given
// the seed. Negatives are non-edges of the original graph, so they can never
// collide with a positive from either split.
SplitEdges split_edges(const Graph& g, double test_fraction, std::uint64_t seed);

// Samples `count` distinct non-edges of g, uniformly without replacement.
std::vector<Edge> sample_non_edges(const Graph& g, std::size_t count,
                                   std::uint64_t seed);

// Stochastic block model fixture generator. Each within-block pair is
// connected independently with p_intra, each cross-block pair with p_inter.
// The sensitive attribute of a node is its block index.
std::pair<Graph, SensitiveAttributes> sbm_generate(
    std::span<const std::size_t> block_sizes, double p_intra, double p_inter,
    std::uint64_t seed);

// Self-loop-augmented symmetric normalization D~^{-1/2} (A + I) D~^{-1/2}.
// Isolated nodes get degree 1 from the self-loop, so all entries are finite;
// the empty graph yields the identity operator.
Eigen::SparseMatrix<double, Eigen::RowMajor> normalized_adjacency(const Graph& g);

}  // namespace fairdrop
