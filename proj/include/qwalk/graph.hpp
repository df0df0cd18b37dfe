#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace qwalk {

/// Undirected edge between two 1-based node labels, stored with a < b.
struct Edge {
  int a = 0;
  int b = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

/// Immutable undirected simple graph with 1-based node labels.
///
/// Construction rejects self-loops, duplicate edges, out-of-range labels and
/// disconnected edge sets. Edges are kept sorted, so two graphs with the same
/// edge set compare equal regardless of insertion order.
class Graph {
 public:
  Graph(int n_nodes, std::vector<Edge> edges);

  int n_nodes() const { return n_nodes_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t n_edges() const { return edges_.size(); }

  bool has_edge(int a, int b) const;
  std::vector<int> degrees() const;  // index 0 is node 1

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_nodes_;
  std::vector<Edge> edges_;
};

/// Throws ValidationError unless every node has degree 3, |E| = 3N/2 and N is even.
void validate_fullerene(const Graph& g);

/// Tube-isomer fullerene on n vertices (n a multiple of 10, n >= 30).
///
/// Index arithmetic follows the original MATLAB generator line by line,
/// including its final edge-deletion pass. Nodes 1..5 form the cap pentagon.
Graph build_tube_fullerene(int n);

/// Buckminsterfullerene assembled from its 12x12 layout of 5x5 circulant
/// blocks. The result is centrosymmetric: A[x][y] == A[61-x][61-y].
Graph build_c60_blocked();

/// Symmetric 0/1 adjacency matrix; entry (a-1, b-1) is 1 iff {a,b} is an edge.
template <typename Scalar = double>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> adjacency(const Graph& g) {
  Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> a =
      Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(g.n_nodes(), g.n_nodes());
  for (const Edge& e : g.edges()) {
    a(e.a - 1, e.b - 1) = Scalar(1);
    a(e.b - 1, e.a - 1) = Scalar(1);
  }
  return a;
}

/// Order-independent 64-bit hash of the edge set (and node count), as hex.
std::string graph_checksum(const Graph& g);

// Edge-list text format: first non-comment line "N", then one "a b" pair per
// line. '#' starts a comment that runs to end of line.
Graph parse_graph(const std::string& text);
std::string format_graph(const Graph& g);
Graph load_graph(const std::filesystem::path& path);
void save_graph(const Graph& g, const std::filesystem::path& path);

}  // namespace qwalk
