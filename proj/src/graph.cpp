#include "qwalk/graph.hpp"

#include "qwalk/error.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

namespace qwalk {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

bool connected(int n, const std::vector<Edge>& edges) {
  std::vector<int> parent(n + 1);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = n;
  for (const Edge& e : edges) {
    int ra = find(e.a), rb = find(e.b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

// 1-based symmetric 0/1 matrix used to replay the MATLAB generator. Writes
// outside 1..n throw instead of silently growing the matrix.
class IndexMatrix {
 public:
  explicit IndexMatrix(int n) : n_(n), m_(static_cast<std::size_t>(n + 1) * (n + 1), 0) {}

  void set(int r, int c, int v) {
    if (r < 1 || c < 1 || r > n_ || c > n_) {
      throw ValidationError("tube generator wrote outside the matrix at (" + std::to_string(r) +
                            ", " + std::to_string(c) + ") for N=" + std::to_string(n_));
    }
    m_[idx(r, c)] = v;
  }
  void link(int r, int c) { set(r, c, 1), set(c, r, 1); }
  void unlink(int r, int c) { set(r, c, 0), set(c, r, 0); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (int r = 1; r <= n_; ++r) {
      if (m_[idx(r, r)] != 0) {
        throw ValidationError("tube generator produced a self-loop at node " + std::to_string(r));
      }
      for (int c = r + 1; c <= n_; ++c) {
        if (m_[idx(r, c)] != 0) out.push_back({r, c});
      }
    }
    return out;
  }

 private:
  std::size_t idx(int r, int c) const { return static_cast<std::size_t>(r) * (n_ + 1) + c; }
  int n_;
  std::vector<int> m_;
};

using Block = std::array<std::array<int, 5>, 5>;

Block circulant(const std::array<int, 5>& first_row) {
  Block b{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) b[i][j] = first_row[((j - i) % 5 + 5) % 5];
  return b;
}

Block multiply(const Block& x, const Block& y) {
  Block out{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j)
      for (int k = 0; k < 5; ++k) out[i][j] += x[i][k] * y[k][j];
  return out;
}

Block transpose(const Block& x) {
  Block out{};
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) out[i][j] = x[j][i];
  return out;
}

}  // namespace

Graph::Graph(int n_nodes, std::vector<Edge> edges) : n_nodes_(n_nodes), edges_(std::move(edges)) {
  if (n_nodes_ < 1) throw ValidationError("graph must have at least one node");
  for (Edge& e : edges_) {
    if (e.a < 1 || e.b < 1 || e.a > n_nodes_ || e.b > n_nodes_) {
      throw ValidationError("edge (" + std::to_string(e.a) + ", " + std::to_string(e.b) +
                            ") has a label outside 1.." + std::to_string(n_nodes_));
    }
    if (e.a == e.b) throw ValidationError("self-loop at node " + std::to_string(e.a));
    if (e.a > e.b) std::swap(e.a, e.b);
  }
  std::sort(edges_.begin(), edges_.end());
  auto dup = std::adjacent_find(edges_.begin(), edges_.end());
  if (dup != edges_.end()) {
    throw ValidationError("duplicate edge (" + std::to_string(dup->a) + ", " +
                          std::to_string(dup->b) + ")");
  }
  if (!connected(n_nodes_, edges_)) throw ValidationError("graph is not connected");
}

bool Graph::has_edge(int a, int b) const {
  if (a > b) std::swap(a, b);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{a, b});
}

std::vector<int> Graph::degrees() const {
  std::vector<int> deg(n_nodes_, 0);
  for (const Edge& e : edges_) {
    ++deg[e.a - 1];
    ++deg[e.b - 1];
  }
  return deg;
}

void validate_fullerene(const Graph& g) {
  const int n = g.n_nodes();
  if (n % 2 != 0) throw ValidationError("fullerene must have an even node count, got " + std::to_string(n));
  if (2 * g.n_edges() != static_cast<std::size_t>(3 * n)) {
    throw ValidationError("fullerene on " + std::to_string(n) + " nodes needs " +
                          std::to_string(3 * n / 2) + " edges, got " + std::to_string(g.n_edges()));
  }
  const auto deg = g.degrees();
  for (int v = 0; v < n; ++v) {
    if (deg[v] != 3) {
      throw ValidationError("node " + std::to_string(v + 1) + " has degree " +
                            std::to_string(deg[v]) + ", expected 3");
    }
  }
}

Graph build_tube_fullerene(int n) {
  if (n < 30 || n % 10 != 0) {
    throw ValidationError("tube fullerene size must be a multiple of 10 and at least 30, got " +
                          std::to_string(n));
  }
  IndexMatrix m(n);

  for (int j = 7; j <= n - 16; j += 2) m.link(j, j + 11);

  for (int j = 1; j <= 5; ++j) m.link(j, 4 + 2 * j);

  int k = n - 4;
  for (int j = n - 13; j <= n - 6; j += 2) {
    ++k;
    m.link(j, k);
  }

  for (int j = 15; j <= n; j += 10) m.link(j, j + 1);

  for (int ring = 0; ring <= n / 10 - 1; ++ring) {
    for (int j = ring * 5 + 1; j <= 10 * ring + 5; ++j) {
      if (j < 10 * ring + 5) {
        m.link(j, j + 1);
      } else if (j == 5) {
        m.link(j, 5 * ring + 1);
      } else {
        m.link(j, j - 9);
      }
    }
  }

  for (int j = n - 4; j <= n; ++j) {
    if (j < n) {
      m.link(j, j + 1);
    } else {
      m.link(j, n - 4);
    }
  }

  for (int b = 15; b <= n - 25; b += 10) m.unlink(b, b + 11);

  Graph g(n, m.edges());
  validate_fullerene(g);
  return g;
}

Graph build_c60_blocked() {
  const Block id = circulant({1, 0, 0, 0, 0});
  const Block pentagon = circulant({0, 1, 0, 0, 1});
  const Block k = circulant({0, 1, 0, 0, 0});
  const Block l = circulant({0, 0, 1, 0, 0});
  Block j{};
  for (int i = 0; i < 5; ++i) j[i][4 - i] = 1;

  const Block kt = transpose(k);
  const Block ltj = multiply(transpose(l), j);
  const Block lj = multiply(l, j);
  const Block jl = multiply(j, l);
  const Block jlt = multiply(j, transpose(l));

  struct Placement {
    int row, col;  // 1-based block coordinates
    const Block* block;
  };
  const std::vector<Placement> layout = {
      {1, 1, &pentagon}, {1, 2, &id},                                   //
      {2, 1, &id},       {2, 3, &id},  {2, 4, &id},                     //
      {3, 2, &id},       {3, 4, &kt},  {3, 6, &id},                     //
      {4, 2, &id},       {4, 3, &k},   {4, 5, &id},                     //
      {5, 4, &id},       {5, 6, &id},  {5, 7, &ltj},                    //
      {6, 3, &id},       {6, 5, &id},  {6, 8, &lj},                     //
      {7, 5, &jl},       {7, 8, &id},  {7, 10, &id},                    //
      {8, 6, &jlt},      {8, 7, &id},  {8, 9, &id},                     //
      {9, 8, &id},       {9, 10, &kt}, {9, 11, &id},                    //
      {10, 7, &id},      {10, 9, &k},  {10, 11, &id},                   //
      {11, 9, &id},      {11, 10, &id}, {11, 12, &id},                  //
      {12, 11, &id},     {12, 12, &pentagon},
  };

  std::vector<Edge> edges;
  for (const Placement& p : layout) {
    for (int r = 0; r < 5; ++r) {
      for (int c = 0; c < 5; ++c) {
        if ((*p.block)[r][c] == 0) continue;
        const int a = 5 * (p.row - 1) + r + 1;
        const int b = 5 * (p.col - 1) + c + 1;
        if (a < b) edges.push_back({a, b});
      }
    }
  }
  Graph g(60, std::move(edges));
  validate_fullerene(g);
  return g;
}

std::string graph_checksum(const Graph& g) {
  std::uint64_t h = mix64(static_cast<std::uint64_t>(g.n_nodes()));
  for (const Edge& e : g.edges()) {
    h += mix64((static_cast<std::uint64_t>(e.a) << 32) | static_cast<std::uint64_t>(e.b));
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

Graph parse_graph(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;

    auto to_int = [&](const std::string& s) {
      std::size_t used = 0;
      long v = 0;
      try {
        v = std::stol(s, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != s.size()) {
        throw ValidationError("line " + std::to_string(line_no) + ": '" + s + "' is not an integer");
      }
      return static_cast<int>(v);
    };

    if (n < 0) {
      if (tok.size() != 1) {
        throw ValidationError("line " + std::to_string(line_no) + ": expected node count");
      }
      n = to_int(tok[0]);
      if (n < 1) throw ValidationError("node count must be positive");
      continue;
    }
    if (tok.size() != 2) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected 'a b' edge");
    }
    const int a = to_int(tok[0]), b = to_int(tok[1]);
    if (a < 1 || b < 1 || a > n || b > n) {
      throw ValidationError("line " + std::to_string(line_no) + ": labels must lie in 1.." +
                            std::to_string(n));
    }
    edges.push_back({a, b});
  }
  if (n < 0) throw ValidationError("graph file has no node count line");
  return Graph(n, std::move(edges));
}

std::string format_graph(const Graph& g) {
  std::ostringstream out;
  out << "# edges: " << g.n_edges() << "\n" << g.n_nodes() << "\n";
  for (const Edge& e : g.edges()) out << e.a << ' ' << e.b << '\n';
  return out.str();
}

Graph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open graph file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

void save_graph(const Graph& g, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write graph file " + path.string());
  out << format_graph(g);
}

}  // namespace qwalk
