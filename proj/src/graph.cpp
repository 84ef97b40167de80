#include "fairdrop/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "fairdrop/rng.hpp"

namespace fairdrop {

namespace {

std::uint64_t pair_key(const Edge& e) {
  return (static_cast<std::uint64_t>(e.u) << 32) | e.v;
}

}  // namespace

Graph::Graph(std::size_t num_nodes, std::vector<Edge> edges) : n_(num_nodes) {
  for (auto& e : edges) {
    if (e.u >= n_ || e.v >= n_) {
      throw std::out_of_range("graph: node id out of range: (" +
                              std::to_string(e.u) + ", " + std::to_string(e.v) +
                              ") with n=" + std::to_string(n_));
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::erase_if(edges, [](const Edge& e) { return e.u == e.v; });
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  edges_ = std::move(edges);

  adj_offsets_.assign(n_ + 1, 0);
  for (const Edge& e : edges_) {
    ++adj_offsets_[e.u + 1];
    ++adj_offsets_[e.v + 1];
  }
  std::partial_sum(adj_offsets_.begin(), adj_offsets_.end(),
                   adj_offsets_.begin());
  adj_.resize(2 * edges_.size());
  std::vector<std::size_t> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const Edge& e : edges_) {
    adj_[cursor[e.u]++] = e.v;
    adj_[cursor[e.v]++] = e.u;
  }
  for (std::size_t i = 0; i < n_; ++i) {
    std::sort(adj_.begin() + adj_offsets_[i], adj_.begin() + adj_offsets_[i + 1]);
  }
}

bool Graph::has_edge(std::uint32_t a, std::uint32_t b) const {
  if (a >= n_ || b >= n_ || a == b) return false;
  auto nbrs = neighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

std::vector<std::size_t> SensitiveAttributes::class_counts() const {
  std::vector<std::size_t> counts(num_classes, 0);
  for (std::uint32_t v : values) ++counts[v];
  return counts;
}

void validate_attributes(const SensitiveAttributes& s, std::size_t num_nodes) {
  if (s.values.size() != num_nodes) {
    throw std::invalid_argument(
        "attributes: length " + std::to_string(s.values.size()) +
        " does not match node count " + std::to_string(num_nodes));
  }
  if (s.num_classes < 1) {
    throw std::invalid_argument("attributes: num_classes must be >= 1");
  }
  for (std::uint32_t v : s.values) {
    if (v >= s.num_classes) {
      throw std::invalid_argument("attributes: class id " + std::to_string(v) +
                                  " out of range [0, " +
                                  std::to_string(s.num_classes) + ")");
    }
  }
}

std::vector<Edge> sample_non_edges(const Graph& g, std::size_t count,
                                   std::uint64_t seed) {
  const std::size_t n = g.num_nodes();
  const std::size_t total_pairs = n * (n - 1) / 2;
  const std::size_t available = total_pairs - g.num_edges();
  if (count > available) {
    throw std::runtime_error("sample_non_edges: requested " +
                             std::to_string(count) + " but only " +
                             std::to_string(available) + " non-edges exist");
  }
  Rng rng(seed);
  std::vector<Edge> out;
  out.reserve(count);

  if (count * 2 > available) {
    // Dense case: enumerate all non-edges and take a partial Fisher-Yates
    // sample, since rejection would thrash.
    std::vector<Edge> pool;
    pool.reserve(available);
    for (std::uint32_t i = 0; i + 1 < n; ++i) {
      for (std::uint32_t j = i + 1; j < n; ++j) {
        if (!g.has_edge(i, j)) pool.push_back(Edge{i, j});
      }
    }
    for (std::size_t k = 0; k < count; ++k) {
      const std::size_t pick = k + rng.next_index(pool.size() - k);
      std::swap(pool[k], pool[pick]);
      out.push_back(pool[k]);
    }
  } else {
    std::unordered_set<std::uint64_t> seen;
    seen.reserve(count * 2);
    while (out.size() < count) {
      const auto a = static_cast<std::uint32_t>(rng.next_index(n));
      const auto b = static_cast<std::uint32_t>(rng.next_index(n));
      if (a == b) continue;
      const Edge e = canonical(a, b);
      if (g.has_edge(e.u, e.v)) continue;
      if (!seen.insert(pair_key(e)).second) continue;
      out.push_back(e);
    }
  }
  return out;
}

SplitEdges split_edges(const Graph& g, double test_fraction, std::uint64_t seed) {
  if (g.num_edges() < 10) {
    throw std::invalid_argument("split_edges: graph has fewer than 10 edges");
  }
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("split_edges: test_fraction must be in (0, 1)");
  }
  const std::size_t e = g.num_edges();
  const auto test_count =
      static_cast<std::size_t>(std::llround(static_cast<double>(e) * test_fraction));
  if (test_count == 0 || test_count >= e) {
    throw std::invalid_argument(
        "split_edges: graph too small to produce a nonempty test split at "
        "fraction " + std::to_string(test_fraction));
  }

  std::vector<std::uint32_t> order(e);
  std::iota(order.begin(), order.end(), 0u);
  Rng rng(mix_seed(seed, 0));
  for (std::size_t i = e - 1; i > 0; --i) {
    std::swap(order[i], order[rng.next_index(i + 1)]);
  }

  SplitEdges split;
  split.seed = seed;
  split.test_pos.reserve(test_count);
  split.train_pos.reserve(e - test_count);
  for (std::size_t i = 0; i < e; ++i) {
    (i < test_count ? split.test_pos : split.train_pos)
        .push_back(g.edges()[order[i]]);
  }
  std::sort(split.test_pos.begin(), split.test_pos.end());
  std::sort(split.train_pos.begin(), split.train_pos.end());

  std::vector<Edge> negs = sample_non_edges(g, e, mix_seed(seed, 1));
  split.test_neg.assign(negs.begin(), negs.begin() + test_count);
  split.train_neg.assign(negs.begin() + test_count, negs.end());
  return split;
}

std::pair<Graph, SensitiveAttributes> sbm_generate(
    std::span<const std::size_t> block_sizes, double p_intra, double p_inter,
    std::uint64_t seed) {
  if (block_sizes.empty()) {
    throw std::invalid_argument("sbm_generate: empty block list");
  }
  if (!(p_inter >= 0.0 && p_inter <= p_intra && p_intra <= 1.0)) {
    throw std::invalid_argument(
        "sbm_generate: probabilities must satisfy 0 <= p_inter <= p_intra <= 1");
  }
  std::size_t n = 0;
  for (std::size_t b : block_sizes) n += b;

  SensitiveAttributes attrs;
  attrs.num_classes = static_cast<std::uint32_t>(block_sizes.size());
  attrs.values.reserve(n);
  for (std::size_t b = 0; b < block_sizes.size(); ++b) {
    attrs.values.insert(attrs.values.end(), block_sizes[b],
                        static_cast<std::uint32_t>(b));
  }

  Rng rng(seed);
  std::vector<Edge> edges;
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    for (std::uint32_t j = i + 1; j < n; ++j) {
      const double p = attrs.values[i] == attrs.values[j] ? p_intra : p_inter;
      if (p <= 0.0) continue;
      if (p >= 1.0 || rng.bernoulli(p)) edges.push_back(Edge{i, j});
    }
  }
  return {Graph(n, std::move(edges)), std::move(attrs)};
}

Eigen::SparseMatrix<double, Eigen::RowMajor> normalized_adjacency(const Graph& g) {
  const auto n = static_cast<Eigen::Index>(g.num_nodes());
  std::vector<double> inv_sqrt_deg(g.num_nodes());
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    inv_sqrt_deg[i] = 1.0 / std::sqrt(static_cast<double>(g.degree(
                                          static_cast<std::uint32_t>(i)) + 1));
  }

  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(2 * g.num_edges() + g.num_nodes());
  for (std::size_t i = 0; i < g.num_nodes(); ++i) {
    triplets.emplace_back(static_cast<Eigen::Index>(i),
                          static_cast<Eigen::Index>(i),
                          inv_sqrt_deg[i] * inv_sqrt_deg[i]);
  }
  for (const Edge& e : g.edges()) {
    const double w = inv_sqrt_deg[e.u] * inv_sqrt_deg[e.v];
    triplets.emplace_back(e.u, e.v, w);
    triplets.emplace_back(e.v, e.u, w);
  }
  Eigen::SparseMatrix<double, Eigen::RowMajor> op(n, n);
  op.setFromTriplets(triplets.begin(), triplets.end());
  return op;
}

}  // namespace fairdrop
