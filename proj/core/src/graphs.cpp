#include "pmi/graphs.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <functional>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace pmi {

SimpleGraph::SimpleGraph(int n) : n_(n), adj_(n, 0) {
  if (n < 3 || n > 32) throw std::invalid_argument("SimpleGraph: need 3 <= n <= 32");
}

SimpleGraph SimpleGraph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  SimpleGraph g(n);
  for (auto [i, j] : edges) g.add_edge(i, j);
  return g;
}

SimpleGraph SimpleGraph::complete(int n) {
  SimpleGraph g(n);
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) g.add_edge(i, j);
  return g;
}

SimpleGraph SimpleGraph::from_edge_mask(int n, std::uint64_t mask) {
  SimpleGraph g(n);
  int bit = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++bit)
      if (mask >> bit & 1) g.add_edge(i, j);
  return g;
}

bool SimpleGraph::has_edge(int i, int j) const {
  if (i < 1 || i > n_ || j < 1 || j > n_ || i == j)
    throw std::invalid_argument("SimpleGraph: bad edge endpoints");
  return adj_[i - 1] >> (j - 1) & 1;
}

void SimpleGraph::add_edge(int i, int j) {
  if (i < 1 || i > n_ || j < 1 || j > n_ || i == j)
    throw std::invalid_argument("SimpleGraph: bad edge endpoints");
  adj_[i - 1] |= 1u << (j - 1);
  adj_[j - 1] |= 1u << (i - 1);
}

void SimpleGraph::remove_edge(int i, int j) {
  if (i < 1 || i > n_ || j < 1 || j > n_ || i == j)
    throw std::invalid_argument("SimpleGraph: bad edge endpoints");
  adj_[i - 1] &= ~(1u << (j - 1));
  adj_[j - 1] &= ~(1u << (i - 1));
}

int SimpleGraph::degree(int v) const { return std::popcount(adj_[v - 1]); }

int SimpleGraph::edge_count() const {
  int total = 0;
  for (auto m : adj_) total += std::popcount(m);
  return total / 2;
}

bool SimpleGraph::is_complete() const {
  return edge_count() == n_ * (n_ - 1) / 2;
}

std::vector<std::pair<int, int>> SimpleGraph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 1; i <= n_; ++i)
    for (int j = i + 1; j <= n_; ++j)
      if (has_edge(i, j)) out.emplace_back(i, j);
  return out;
}

int SimpleGraph::edge_bit(int n, int i, int j) {
  if (i > j) std::swap(i, j);
  return (i - 1) * (2 * n - i) / 2 + (j - i - 1);
}

std::uint64_t SimpleGraph::edge_mask() const {
  if (n_ > 11) throw std::invalid_argument("edge_mask: needs C(n,2) <= 64");
  std::uint64_t m = 0;
  for (auto [i, j] : edges()) m |= std::uint64_t(1) << edge_bit(n_, i, j);
  return m;
}

namespace {

std::uint32_t all_vertices_mask(int n) { return (n == 32) ? ~0u : (1u << n) - 1; }

std::uint32_t non_dominating_mask(const SimpleGraph& g) {
  std::uint32_t keep = 0;
  for (int v = 1; v <= g.n(); ++v)
    if (!g.is_dominating(v)) keep |= 1u << (v - 1);
  return keep;
}

// Induced path u-v-w (center v) inside the vertex set `keep`; {0,0,0} if none.
std::optional<std::array<int, 3>> find_induced_p3(const SimpleGraph& g, std::uint32_t keep) {
  for (int v = 1; v <= g.n(); ++v) {
    if (!(keep >> (v - 1) & 1)) continue;
    const std::uint32_t nb = g.neighbors_mask(v) & keep;
    for (int u = 1; u <= g.n(); ++u) {
      if (!(nb >> (u - 1) & 1)) continue;
      for (int w = u + 1; w <= g.n(); ++w) {
        if (!(nb >> (w - 1) & 1)) continue;
        if (!g.has_edge(u, w)) return std::array<int, 3>{u, v, w};
      }
    }
  }
  return std::nullopt;
}

}  // namespace

PointGraphCodec::PointGraphCodec(int n) : n_(n) {
  if (n < 3 || n > 11) throw std::invalid_argument("PointGraphCodec: need 3 <= n <= 11");
  SubsetIndexer idx(n, n - 2);
  const std::uint32_t full = all_vertices_mask(n);
  coord_of_edge_.resize(std::size_t(n) * (n - 1) / 2);
  int bit = 0;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j, ++bit) {
      const std::uint32_t pair_mask = (1u << (i - 1)) | (1u << (j - 1));
      coord_of_edge_[bit] = idx.index_of_mask(full & ~pair_mask);
    }
}

std::uint64_t PointGraphCodec::edge_mask_from_support(std::uint64_t support) const {
  std::uint64_t edges = 0;
  for (std::size_t bit = 0; bit < coord_of_edge_.size(); ++bit)
    if (!(support >> coord_of_edge_[bit] & 1)) edges |= std::uint64_t(1) << bit;
  return edges;
}

SimpleGraph graph_of_point(const PluckerVector& g) {
  if (g.r() != g.n() - 2)
    throw std::invalid_argument("graph_of_point: point must lie in Grass(n-2, n)");
  PointGraphCodec codec(g.n());
  return SimpleGraph::from_edge_mask(g.n(), codec.edge_mask_from_support(g.support_mask()));
}

bool is_permissible(const SimpleGraph& g) {
  if (g.is_complete()) return false;
  return !find_induced_p3(g, non_dominating_mask(g)).has_value();
}

bool is_permissible_by_definition(const SimpleGraph& g) {
  if (g.is_complete()) return false;
  const std::uint32_t keep = non_dominating_mask(g);
  std::uint32_t unvisited = keep;
  while (unvisited) {
    // next component by BFS
    const int start = std::countr_zero(unvisited) + 1;
    std::uint32_t comp = 1u << (start - 1), frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      for (int v = 1; v <= g.n(); ++v)
        if (frontier >> (v - 1) & 1) next |= g.neighbors_mask(v) & keep & ~comp;
      comp |= next;
      frontier = next;
    }
    unvisited &= ~comp;
    // component must induce a complete graph
    for (int u = 1; u <= g.n(); ++u) {
      if (!(comp >> (u - 1) & 1)) continue;
      for (int w = u + 1; w <= g.n(); ++w)
        if ((comp >> (w - 1) & 1) && !g.has_edge(u, w)) return false;
    }
  }
  return true;
}

std::optional<NonPermissibleWitness> permissibility_witness(const SimpleGraph& g) {
  if (g.is_complete()) return NonPermissibleWitness{true, 0, 0, 0};
  if (auto p3 = find_induced_p3(g, non_dominating_mask(g)))
    return NonPermissibleWitness{false, (*p3)[0], (*p3)[1], (*p3)[2]};
  return std::nullopt;
}

TrivialPart trivial_part(const SimpleGraph& g) {
  if (!is_permissible(g)) throw std::invalid_argument("trivial_part: graph not permissible");
  std::vector<int> dom, iso;
  for (int v = 1; v <= g.n(); ++v) {
    if (g.is_dominating(v)) dom.push_back(v);
    else if (g.is_isolated(v)) iso.push_back(v);
  }
  if (!dom.empty())
    return TrivialPart{TrivialPart::Kind::dominating, dom, static_cast<int>(dom.size())};
  if (!iso.empty())
    return TrivialPart{TrivialPart::Kind::isolated, iso, static_cast<int>(iso.size())};
  return TrivialPart{TrivialPart::Kind::empty, {}, 0};
}

CliquePartition clique_partition(const SimpleGraph& g) {
  const TrivialPart tp = trivial_part(g);  // also enforces permissibility
  std::uint32_t keep = all_vertices_mask(g.n());
  for (int v : tp.vertices) keep &= ~(1u << (v - 1));

  CliquePartition out;
  std::uint32_t unvisited = keep;
  while (unvisited) {
    const int start = std::countr_zero(unvisited) + 1;
    std::uint32_t comp = 1u << (start - 1), frontier = comp;
    while (frontier) {
      std::uint32_t next = 0;
      for (int v = 1; v <= g.n(); ++v)
        if (frontier >> (v - 1) & 1) next |= g.neighbors_mask(v) & keep & ~comp;
      comp |= next;
      frontier = next;
    }
    unvisited &= ~comp;
    std::vector<int> block;
    for (int v = 1; v <= g.n(); ++v)
      if (comp >> (v - 1) & 1) block.push_back(v);
    for (std::size_t a = 0; a < block.size(); ++a)
      for (std::size_t b = a + 1; b < block.size(); ++b)
        if (!g.has_edge(block[a], block[b]))
          throw std::logic_error("clique_partition: component is not complete");
    out.orders.push_back(static_cast<int>(block.size()));
    out.blocks.push_back(std::move(block));
  }
  out.c = static_cast<int>(out.blocks.size());
  out.l = 0;
  for (int a : out.orders) out.l += a - 1;
  return out;
}

int codim(const SimpleGraph& g) {
  const TrivialPart tp = trivial_part(g);
  const CliquePartition cp = clique_partition(g);
  const int n = g.n(), m = tp.m, c = cp.c, l = cp.l;
  if (tp.kind == TrivialPart::Kind::dominating) {
    if (n - c + m != 2 * m + l)
      throw std::logic_error("codim: closed forms disagree (dominating case)");
    return 2 * m + l;
  }
  if (n - c - m != l) throw std::logic_error("codim: closed forms disagree");
  return l;
}

std::vector<SimpleGraph> enumerate_permissible(int n) {
  if (n < 3 || n > 8) throw std::invalid_argument("enumerate_permissible: need 3 <= n <= 8");
  std::vector<SimpleGraph> out;
  for (std::uint32_t dmask = 0; dmask < (1u << n); ++dmask) {
    if (std::popcount(dmask) > n - 2) continue;
    std::vector<int> rest;
    for (int v = 1; v <= n; ++v)
      if (!(dmask >> (v - 1) & 1)) rest.push_back(v);
    const int k = static_cast<int>(rest.size());

    // Partitions of `rest` into blocks via restricted growth strings; at
    // least two blocks, otherwise every vertex would be dominating.
    std::vector<int> label(k, 0);
    std::function<void(int, int)> rec = [&](int i, int mx) {
      if (i == k) {
        if (mx < 1) return;
        SimpleGraph g(n);
        for (int v = 1; v <= n; ++v) {
          if (!(dmask >> (v - 1) & 1)) continue;
          for (int w = 1; w <= n; ++w)
            if (w != v) g.add_edge(v, w);
        }
        for (int a = 0; a < k; ++a)
          for (int b = a + 1; b < k; ++b)
            if (label[a] == label[b]) g.add_edge(rest[a], rest[b]);
        out.push_back(std::move(g));
        return;
      }
      for (int a = 0; a <= mx + 1; ++a) {
        label[i] = a;
        rec(i + 1, std::max(mx, a));
      }
    };
    rec(0, -1);
  }
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1])
      throw std::logic_error("enumerate_permissible: duplicate construction");
  return out;
}

std::vector<SimpleGraph> minimal_permissible_supergraphs(
    const std::vector<std::pair<int, int>>& edges, int n) {
  const SimpleGraph base = SimpleGraph::from_edges(n, edges);
  if (base.is_complete())
    throw std::invalid_argument("minimal_permissible_supergraphs: edge set is complete");

  // Branching closure: on an induced path u-v-w among non-dominating
  // vertices, either the edge uw joins or the center v becomes dominating.
  std::set<std::uint64_t> leaves, seen;
  std::vector<std::uint64_t> stack{base.edge_mask()};
  seen.insert(stack[0]);
  while (!stack.empty()) {
    const std::uint64_t m = stack.back();
    stack.pop_back();
    SimpleGraph g = SimpleGraph::from_edge_mask(n, m);
    if (g.is_complete()) continue;
    const auto p3 = find_induced_p3(g, non_dominating_mask(g));
    if (!p3) {
      leaves.insert(m);
      continue;
    }
    const auto [u, v, w] = *p3;
    const std::uint64_t with_edge = m | (std::uint64_t(1) << SimpleGraph::edge_bit(n, u, w));
    std::uint64_t with_dom = m;
    for (int x = 1; x <= n; ++x)
      if (x != v) with_dom |= std::uint64_t(1) << SimpleGraph::edge_bit(n, v, x);
    for (std::uint64_t next : {with_edge, with_dom})
      if (seen.insert(next).second) stack.push_back(next);
  }
  std::vector<std::uint64_t> minimal;
  for (std::uint64_t m : leaves) {
    bool is_min = true;
    for (std::uint64_t other : leaves)
      if (other != m && (other & ~m) == 0) { is_min = false; break; }
    if (is_min) minimal.push_back(m);
  }
  std::sort(minimal.begin(), minimal.end());

  // Independent route: filter the full permissible enumeration.
  const std::uint64_t want = base.edge_mask();
  std::vector<std::uint64_t> by_filter;
  for (const SimpleGraph& g : enumerate_permissible(n)) {
    const std::uint64_t m = g.edge_mask();
    if ((want & ~m) == 0) by_filter.push_back(m);
  }
  std::vector<std::uint64_t> minimal2;
  for (std::uint64_t m : by_filter) {
    bool is_min = true;
    for (std::uint64_t other : by_filter)
      if (other != m && (other & ~m) == 0) { is_min = false; break; }
    if (is_min) minimal2.push_back(m);
  }
  std::sort(minimal2.begin(), minimal2.end());
  if (minimal != minimal2)
    throw std::logic_error("minimal_permissible_supergraphs: branching and filter disagree");

  std::vector<SimpleGraph> out;
  out.reserve(minimal.size());
  for (std::uint64_t m : minimal) out.push_back(SimpleGraph::from_edge_mask(n, m));
  return out;
}

SimpleGraph complement(const SimpleGraph& g) {
  SimpleGraph out(g.n());
  for (int i = 1; i <= g.n(); ++i)
    for (int j = i + 1; j <= g.n(); ++j)
      if (!g.has_edge(i, j)) out.add_edge(i, j);
  return out;
}

bool is_clique_plus_isolated(const SimpleGraph& g, int* clique_order) {
  std::vector<int> touched;
  for (int v = 1; v <= g.n(); ++v)
    if (!g.is_isolated(v)) touched.push_back(v);
  if (touched.size() < 2) return false;  // no edges at all
  for (std::size_t a = 0; a < touched.size(); ++a)
    for (std::size_t b = a + 1; b < touched.size(); ++b)
      if (!g.has_edge(touched[a], touched[b])) return false;
  if (clique_order) *clique_order = static_cast<int>(touched.size());
  return true;
}

void validate_pair(const PermissiblePair& p) {
  if (p.s_graph.n() != p.t_graph.n())
    throw std::invalid_argument("PermissiblePair: vertex counts differ");
  const int n = p.s_graph.n();
  if (complement(p.s_graph) != p.t_graph)
    throw std::invalid_argument("PermissiblePair: T is not the complement of S");
  int a = 0;
  if (!is_clique_plus_isolated(p.s_graph, &a))
    throw std::invalid_argument("PermissiblePair: S is not a clique plus isolated vertices");
  if (a != p.clique_order || a < 2 || a > n - 1)
    throw std::invalid_argument("PermissiblePair: clique order out of range");
  if (!is_permissible(p.s_graph) || !is_permissible(p.t_graph))
    throw std::invalid_argument("PermissiblePair: a side is not permissible");
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j)
      if (!p.s_graph.has_edge(i, j) && !p.t_graph.has_edge(i, j))
        throw std::invalid_argument("PermissiblePair: edges do not cover K_n");
}

std::vector<PermissiblePair> minimal_cover_pairs(int n) {
  if (n < 3 || n > 20) throw std::invalid_argument("minimal_cover_pairs: need 3 <= n <= 20");
  std::vector<PermissiblePair> out;
  for (std::uint32_t smask = 0; smask < (1u << n); ++smask) {
    const int a = std::popcount(smask);
    if (a < 2 || a > n - 1) continue;
    SimpleGraph s(n);
    for (int i = 1; i <= n; ++i) {
      if (!(smask >> (i - 1) & 1)) continue;
      for (int j = i + 1; j <= n; ++j)
        if (smask >> (j - 1) & 1) s.add_edge(i, j);
    }
    out.push_back(PermissiblePair{s, complement(s), a});
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<PermissiblePair> minimize_pair(const SimpleGraph& g) {
  if (!is_permissible(g)) throw std::invalid_argument("minimize_pair: graph not permissible");
  const SimpleGraph h = complement(g);
  if (h.is_complete()) return {};  // edgeless g: K_n cannot be enlarged to permissible
  std::vector<PermissiblePair> out;
  for (const SimpleGraph& ht : minimal_permissible_supergraphs(h.edges(), g.n())) {
    const SimpleGraph gt = complement(ht);
    int a = 0;
    SimpleGraph s = gt, t = ht;
    if (!is_clique_plus_isolated(gt, &a)) {
      if (!is_clique_plus_isolated(ht, &a))
        throw std::logic_error("minimize_pair: enlargement has no clique side");
      s = ht;
      t = gt;
    }
    PermissiblePair p{std::move(s), std::move(t), a};
    validate_pair(p);
    out.push_back(std::move(p));
  }
  std::sort(out.begin(), out.end());
  return out;
}

int dim_Y_formula(int n) {
  if (n < 4) throw std::invalid_argument("dim_Y_formula: need n >= 4");
  int best = std::numeric_limits<int>::min();
  for (const PermissiblePair& p : minimal_cover_pairs(n))
    best = std::max(best, 4 * (n - 2) - codim(p.s_graph) - codim(p.t_graph));
  const int dim = best + (n - 2) * (n - 2);
  if (dim != n * n - n - 4)
    throw std::logic_error("dim_Y_formula: combinatorial maximum disagrees with n^2-n-4");
  return dim;
}

std::uint64_t canonical_edge_mask(const SimpleGraph& g) {
  const int n = g.n();
  if (n > 8) throw std::invalid_argument("canonical_edge_mask: need n <= 8");
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i + 1;
  const auto es = g.edges();
  std::uint64_t best = ~std::uint64_t(0);
  do {
    std::uint64_t m = 0;
    for (auto [i, j] : es)
      m |= std::uint64_t(1) << SimpleGraph::edge_bit(n, perm[i - 1], perm[j - 1]);
    best = std::min(best, m);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string to_dot(const SimpleGraph& g) {
  std::ostringstream out;
  out << "graph G {\n";
  for (int v = 1; v <= g.n(); ++v) out << "  " << v << ";\n";
  for (auto [i, j] : g.edges()) out << "  " << i << " -- " << j << ";\n";
  out << "}\n";
  return out.str();
}

SimpleGraph parse_edge_list(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  for (char ch : text) {
    if (ch == ';') {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += ch;
    }
  }
  parts.push_back(cur);

  auto non_blank = [](const std::string& s) {
    return s.find_first_not_of(" \t\r\n") != std::string::npos;
  };
  std::size_t idx = 0;
  while (idx < parts.size() && !non_blank(parts[idx])) ++idx;
  if (idx == parts.size()) throw std::invalid_argument("parse_edge_list: missing vertex count");
  int n;
  {
    std::istringstream in(parts[idx]);
    std::string extra;
    if (!(in >> n) || (in >> extra))
      throw std::invalid_argument("parse_edge_list: bad vertex count");
  }
  SimpleGraph g(n);
  for (++idx; idx < parts.size(); ++idx) {
    if (!non_blank(parts[idx])) continue;
    std::istringstream in(parts[idx]);
    int i, j;
    std::string extra;
    if (!(in >> i >> j) || (in >> extra))
      throw std::invalid_argument("parse_edge_list: bad edge entry '" + parts[idx] + "'");
    g.add_edge(i, j);
  }
  return g;
}

std::string format_edge_list(const SimpleGraph& g) {
  std::ostringstream out;
  out << g.n();
  for (auto [i, j] : g.edges()) out << "; " << i << ' ' << j;
  return out.str();
}

}  // namespace pmi
