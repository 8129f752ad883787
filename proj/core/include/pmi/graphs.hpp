#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmi/grassmann.hpp"

namespace pmi {

/// Labeled simple graph on vertices 1..n (n >= 3), adjacency kept as one
/// bitmask per vertex.
class SimpleGraph {
 public:
  explicit SimpleGraph(int n);
  static SimpleGraph from_edges(int n, const std::vector<std::pair<int, int>>& edges);
  static SimpleGraph complete(int n);
  static SimpleGraph from_edge_mask(int n, std::uint64_t mask);

  int n() const { return n_; }
  bool has_edge(int i, int j) const;
  void add_edge(int i, int j);
  void remove_edge(int i, int j);
  std::uint32_t neighbors_mask(int v) const { return adj_[v - 1]; }
  int degree(int v) const;
  int edge_count() const;
  bool is_complete() const;
  bool is_dominating(int v) const { return degree(v) == n_ - 1; }
  bool is_isolated(int v) const { return adj_[v - 1] == 0; }

  // Edges in lex order: (1,2),(1,3),...,(1,n),(2,3),...
  std::vector<std::pair<int, int>> edges() const;

  // Bit k of the mask corresponds to the k-th edge in lex order; needs
  // C(n,2) <= 64, i.e. n <= 11.
  std::uint64_t edge_mask() const;
  static int edge_bit(int n, int i, int j);

  friend bool operator==(const SimpleGraph&, const SimpleGraph&) = default;
  friend bool operator<(const SimpleGraph& a, const SimpleGraph& b) {
    if (a.n_ != b.n_) return a.n_ < b.n_;
    return a.adj_ < b.adj_;
  }

 private:
  int n_;
  std::vector<std::uint32_t> adj_;
};

/// The set of dominating vertices when nonempty, else the isolated ones.
struct TrivialPart {
  enum class Kind { dominating, isolated, empty };
  Kind kind;
  std::vector<int> vertices;
  int m;  // |vertices|
};

/// Clique blocks of G minus its trivial part, with orders a_1..a_c and
/// l = sum (a_j - 1).
struct CliquePartition {
  std::vector<std::vector<int>> blocks;
  std::vector<int> orders;
  int c;
  int l;
};

/// A minimal covering pair: a clique of order a plus isolated vertices, and
/// its complement.
struct PermissiblePair {
  SimpleGraph s_graph;  // clique + isolated side
  SimpleGraph t_graph;  // complement: n-a dominating vertices
  int clique_order;

  friend bool operator==(const PermissiblePair&, const PermissiblePair&) = default;
  friend bool operator<(const PermissiblePair& a, const PermissiblePair& b) {
    if (a.clique_order != b.clique_order) return a.clique_order < b.clique_order;
    return a.s_graph < b.s_graph;
  }
};

// Precomputed index mapping between the Plücker coordinates of Grass(n-2,n)
// and the edges of a graph on n vertices: edge {i,j} corresponds to the
// coordinate indexed by {1..n} minus {i,j}.
class PointGraphCodec {
 public:
  explicit PointGraphCodec(int n);
  int n() const { return n_; }
  std::size_t coord_index_of_edge_bit(int bit) const { return coord_of_edge_[bit]; }
  // Edge bit set iff the coordinate at the complementary index is zero.
  std::uint64_t edge_mask_from_support(std::uint64_t support) const;

 private:
  int n_;
  std::vector<std::size_t> coord_of_edge_;
};

// Vanishing-pattern graph of a Grass(n-2, n) point.
SimpleGraph graph_of_point(const PluckerVector& g);

// Def: G is permissible iff G is not complete and G minus its dominating
// vertices is a disjoint union of cliques. The working criterion for the
// second half: no induced 3-vertex path in that subgraph.
bool is_permissible(const SimpleGraph& g);

// Same predicate via the literal route: connected components of the
// dominating-free subgraph, each checked complete. Kept as an oracle.
bool is_permissible_by_definition(const SimpleGraph& g);

// Why a graph fails: completeness, or an induced path u-v-w (uv, vw edges,
// uw missing) in the dominating-free subgraph. Empty for permissible graphs.
struct NonPermissibleWitness {
  bool complete;
  int u, v, w;
};
std::optional<NonPermissibleWitness> permissibility_witness(const SimpleGraph& g);

TrivialPart trivial_part(const SimpleGraph& g);          // requires permissible
CliquePartition clique_partition(const SimpleGraph& g);  // requires permissible

// Codimension of the closed stratum of g inside Grass(n-2, n):
// 2m + l when the trivial part is dominating and nonempty, l otherwise.
int codim(const SimpleGraph& g);  // requires permissible

// All permissible labeled graphs on n vertices (3 <= n <= 8), each exactly
// once, built as (dominating set) + (partition of the rest into cliques).
std::vector<SimpleGraph> enumerate_permissible(int n);

// All permissible supergraphs of the given edge set that are minimal under
// edge inclusion, computed by the triangle-or-dominating branching closure
// and cross-checked against the exhaustive filter. Throws if the edge set
// is already complete.
std::vector<SimpleGraph> minimal_permissible_supergraphs(
    const std::vector<std::pair<int, int>>& edges, int n);

SimpleGraph complement(const SimpleGraph& g);

bool is_clique_plus_isolated(const SimpleGraph& g, int* clique_order = nullptr);

// Throws std::invalid_argument when the pair invariants fail.
void validate_pair(const PermissiblePair& p);

// One pair per vertex subset S with 2 <= |S| <= n-1: the clique on S with
// the rest isolated, and its complement.
std::vector<PermissiblePair> minimal_cover_pairs(int n);

// Minimal covering pairs compatible with a fixed permissible graph G:
// enlarge complement(G) minimally to a permissible H~ and shrink G to the
// complement of H~. May be empty (edgeless G leaves nothing to cover with).
std::vector<PermissiblePair> minimize_pair(const SimpleGraph& g);

// dim Y_{n,n-2,n-2} as the combinatorial maximum over minimal cover pairs,
// checked against the closed form n^2 - n - 4.
int dim_Y_formula(int n);

// Minimum edge mask over all vertex relabelings (n <= 8); isomorphism key.
std::uint64_t canonical_edge_mask(const SimpleGraph& g);

// --- text formats ----------------------------------------------------------

std::string to_dot(const SimpleGraph& g);
// "n; i j; i j; ..." (whitespace-insensitive, trailing separators allowed)
SimpleGraph parse_edge_list(const std::string& text);
std::string format_edge_list(const SimpleGraph& g);

}  // namespace pmi
