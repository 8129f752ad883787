#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pmi/graphs.hpp"

namespace pmi {

inline constexpr int kRankAny = -1;

/// Which locus to count: n x n matrices over F_q of rank r (or any rank)
/// whose size-t principal minors all vanish.
struct StratumSpec {
  int n;
  int r;  // kRankAny disables the rank filter
  int t;
  std::uint32_t q;
};

struct CensusRecord {
  StratumSpec spec;
  std::uint64_t count;
  std::string method;  // matrix-bruteforce | grassmann-pairs | graph-stratum
  std::int64_t elapsed_ms;
};

// Canonical JSON with fixed key order; counts as decimal strings so 53-bit
// consumers cannot truncate them.
std::string census_record_to_json(const CensusRecord& rec);
std::string census_records_to_json(const std::vector<CensusRecord>& recs);
std::string census_records_to_csv(const std::vector<CensusRecord>& recs);
std::vector<CensusRecord> census_records_from_json(const std::string& text);

// Enumeration budget in evaluated cells (entries touched), PMIDEAL_BUDGET
// env override, default 2^34.
std::uint64_t default_budget();

// Exact exhaustive count over all q^(n^2) matrices, sharded over the first
// few entries; per-shard counts are reduced in shard order so the result is
// identical for any job count.
CensusRecord count_Y_bruteforce(const StratumSpec& spec, int jobs = 1,
                                std::uint64_t budget = default_budget());

// Exact number of ordered pairs (g, h) in Grass(t,n)(F_q)^2 whose
// coordinatewise product is zero.
CensusRecord count_H_pairs(int n, int t, std::uint32_t q,
                           std::uint64_t budget = default_budget());

struct BundleCheck {
  bool ok;
  std::uint64_t matrix_count;  // |Y_{n,t,t}(F_q)| by brute force
  std::uint64_t pair_count;    // |H(F_q)| by pair scan
  std::uint64_t gl;            // |GL(t, F_q)|
};

// matrix_count == pair_count * gl is the bundle identity.
BundleCheck verify_bundle_count(int n, int t, std::uint32_t q, int jobs = 1,
                                std::uint64_t budget = default_budget());

// One scan of Grass(n-2,n)(F_q) binned by vanishing-pattern graph: slot k
// holds the number of points whose graph has edge mask exactly k. All
// stratum counts are subset sums of this table.
std::vector<std::uint64_t> graph_mask_histogram(int n, std::uint32_t q, int jobs = 1,
                                                std::uint64_t budget = default_budget());

std::uint64_t stratum_count_from_histogram(const std::vector<std::uint64_t>& hist,
                                           std::uint64_t edge_mask);

// Number of points whose graph contains g edgewise.
CensusRecord count_graph_stratum(int n, const SimpleGraph& g, std::uint32_t q,
                                 int jobs = 1, std::uint64_t budget = default_budget());

struct DimensionEstimate {
  int dim;          // round(raw)
  double residual;  // |raw - dim|
  double raw;       // log(count2/count1) / log(q2/q1), two largest primes
};

// Counts must be positive and cover at least two distinct primes.
DimensionEstimate estimate_dimension(const std::vector<CensusRecord>& counts);

// Exhaustive check of the overlapping 2-minor rule on 2 x s matrices:
// vanishing minors on columns {x,y} and {y,z} force either column y to
// vanish or the minor on {x,z} to vanish.
bool verify_overlap_rule(int s, std::uint32_t q);

struct VerifyReport {
  bool ok = true;
  std::uint64_t checked = 0;
  std::string failure;  // first counterexample, empty when ok
};

// For a 3x3 matrix over F_q: V(det, mu) splits as V(P1) u V(P2) where mu is
// a fixed 2-minor and P1, P2 are the two rank-one loci through it; checked
// pointwise over all of F_q^9 at the identity index choice plus sampled
// permuted choices, together with the two-component identity used on the
// way there.
VerifyReport verify_case3(std::uint32_t q, int permutation_samples = 5,
                          std::uint64_t seed = 1);

// Pointwise minimal-prime decomposition of (u61 u72 - u62 u71,
// u62 u73 - u63 u72) over the six involved chart variables.
VerifyReport verify_m2_overlapping2(std::uint32_t q);

// Samples the 21-parameter factored family of rank-3 5x5 matrices with the
// fixed vanishing pattern, verifies exact membership in Y_{5,3,3}, the
// forced-vanishing implications, and the two vanishing-pattern graphs.
VerifyReport verify_n5_example(std::uint32_t q, int samples = 1000,
                               std::uint64_t seed = 1);

// Jacobi complementary-minor identity on random invertible matrices (all
// principal selections per matrix).
VerifyReport verify_jacobi_random(int n, std::uint32_t q, int samples,
                                  std::uint64_t seed = 1);
// Same, exhaustively over every invertible 3x3 matrix over F_q.
VerifyReport verify_jacobi_exhaustive_3x3(std::uint32_t q);

// Every point of Grass(n-2,n)(F_q) has a permissible graph.
VerifyReport verify_points_permissible(int n, std::uint32_t q,
                                       std::uint64_t budget = default_budget());

// For every edge set E with |E| <= max_edges, the points whose graph
// contains E are exactly the union of the minimal-permissible-supergraph
// strata of E.
VerifyReport verify_var_decomposition(int n, std::uint32_t q, int max_edges = 3,
                                      std::uint64_t budget = default_budget());

// --- small polynomial-constraint evaluator ---------------------------------

struct Monomial {
  int coeff;              // usually +-1
  std::vector<int> vars;  // variable indices, repetition allowed
};
using Poly = std::vector<Monomial>;

struct VanishingLocusSpec {
  int vars;
  std::vector<Poly> constraints;
  std::uint32_t q;
};

std::uint32_t eval_poly(const Poly& p, const std::uint32_t* point, std::uint32_t q);
bool all_vanish(const std::vector<Poly>& polys, const std::uint32_t* point, std::uint32_t q);

// Visits every point of F_q^vars in odometer order.
void for_each_affine_point(int vars, std::uint32_t q,
                           const std::function<void(const std::uint32_t*)>& fn);

std::uint64_t vanishing_count(const VanishingLocusSpec& spec);

}  // namespace pmi
