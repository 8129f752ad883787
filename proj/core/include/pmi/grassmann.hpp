#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "pmi/matrix.hpp"
#include "pmi/subsets.hpp"

namespace pmi {

/// Point of Grass(r, n) over F_q in Plücker coordinates, indexed by the
/// r-subsets of {1..n} in lexicographic order. Always stored in canonical
/// projective form: the lex-first nonzero coordinate equals 1, which makes
/// vectors directly comparable and hashable.
class PluckerVector {
 public:
  PluckerVector(int n, int r, PrimeModulus q, std::vector<std::uint32_t> coords);

  int n() const { return n_; }
  int r() const { return r_; }
  std::uint32_t q() const { return q_.value(); }
  PrimeModulus modulus() const { return q_; }
  const std::vector<std::uint32_t>& coords() const { return coords_; }
  std::uint32_t coord(std::size_t idx) const { return coords_.at(idx); }

  // Bit i set iff coordinate i is nonzero; requires C(n,r) <= 64.
  std::uint64_t support_mask() const;

  bool same_shape(const PluckerVector& other) const {
    return n_ == other.n_ && r_ == other.r_ && q_.value() == other.q_.value();
  }

  friend bool operator==(const PluckerVector& a, const PluckerVector& b) {
    return a.n_ == b.n_ && a.r_ == b.r_ && a.q_.value() == b.q_.value() &&
           a.coords_ == b.coords_;
  }

 private:
  int n_, r_;
  PrimeModulus q_;
  std::vector<std::uint32_t> coords_;
};

struct PluckerVectorHash {
  std::size_t operator()(const PluckerVector& v) const;
};

// JSON form {"n":..,"r":..,"q":..,"coords":[..]}, coords in lex subset order.
std::string plucker_to_json(const PluckerVector& v);

// Plücker coordinates of the column space of a full-rank n x r matrix:
// coordinate at S is the maximal minor on rows S. Throws if rank < r.
PluckerVector plucker_of_columns(const ExactMatrix& b);

// Row-space companion: coordinate at S is the maximal minor on columns S.
PluckerVector plucker_of_rows(const ExactMatrix& c);

// Unique column-equivalent form of an n x r matrix whose i_set-row block is
// the identity: B' = B * B(i_set)^{-1}. Throws if that block is singular.
ExactMatrix normalize_columns(const ExactMatrix& b, const IndexSet& i_set);

// Row-space analogue for an r x n matrix: C' = C(j_set)^{-1} * C.
ExactMatrix normalize_rows(const ExactMatrix& c, const IndexSet& j_set);

/// Rank factorization A = left * core * right with left normalized w.r.t.
/// i_set and right normalized w.r.t. j_set; core = A(i_set; j_set).
struct Factorization {
  ExactMatrix left;   // n x r, left(i_set) = identity
  ExactMatrix core;   // r x r, invertible
  ExactMatrix right;  // r x n, right(j_set) = identity
  IndexSet i_set;
  IndexSet j_set;
};

// Factor a square matrix of rank exactly r through its lex-least independent
// row set i_set and the lex-least column set j_set making A(i_set; j_set)
// invertible. Throws if rank(A) != r.
Factorization factor(const ExactMatrix& a, int r);

// The bundle map: a rank-r matrix to its (column space, row space) pair.
std::pair<PluckerVector, PluckerVector> theta(const ExactMatrix& a, int r);

// True iff g_S * h_S == 0 for every subset index S.
bool componentwise_product_vanishes(const PluckerVector& g, const PluckerVector& h);

// Number of r-dimensional subspaces of F_q^n; throws std::overflow_error if
// it does not fit in 64 bits.
std::uint64_t gaussian_binomial(int n, int r, std::uint32_t q);

std::uint64_t gl_order(int r, std::uint32_t q);

struct BudgetExceeded : std::runtime_error {
  std::uint64_t projected;
  explicit BudgetExceeded(const std::string& what, std::uint64_t projected_)
      : std::runtime_error(what), projected(projected_) {}
};

// --- reduced row echelon enumeration -------------------------------------
//
// Every r-dimensional subspace of F_q^n has a unique r x n RREF basis
// matrix; enumerating those matrices visits each subspace exactly once.
// The walk is deterministic: pivot column sets ascend in lex order, free
// entries spin odometer-style. Templated so the per-point callback inlines
// into the census kernels.

namespace detail {

// Free positions (row-major order) for a 0-based ascending pivot list.
std::vector<std::pair<int, int>> rref_free_positions(int n, int r,
                                                     const std::vector<int>& pivots);

}  // namespace detail

template <class CB>
void for_each_rref_with_pivots(int n, int r, std::uint32_t q,
                               const std::vector<int>& pivots, CB&& cb) {
  std::vector<std::uint32_t> mat(std::size_t(r) * n, 0);
  for (int i = 0; i < r; ++i) mat[std::size_t(i) * n + pivots[i]] = 1;
  const auto free_pos = detail::rref_free_positions(n, r, pivots);
  const std::size_t f = free_pos.size();
  std::vector<std::uint32_t> digits(f, 0);
  for (;;) {
    cb(mat.data());
    std::size_t k = f;
    for (;;) {
      if (k == 0) return;  // odometer wrapped: pivot set exhausted
      --k;
      auto [i, j] = free_pos[k];
      if (++digits[k] < q) {
        mat[std::size_t(i) * n + j] = digits[k];
        break;
      }
      digits[k] = 0;
      mat[std::size_t(i) * n + j] = 0;
    }
  }
}

template <class CB>
void for_each_rref(int n, int r, std::uint32_t q, CB&& cb) {
  SubsetIndexer pivot_sets(n, r);
  for (std::size_t p = 0; p < pivot_sets.size(); ++p) {
    std::vector<int> pivots = pivot_sets.subset_at(p);
    for (int& v : pivots) --v;  // to 0-based columns
    for_each_rref_with_pivots(n, r, q, pivots, cb);
  }
}

// Maximal minor of a row-major r x n matrix on the 0-based column list cols.
std::uint32_t maximal_minor(const std::uint32_t* mat, int n, int r,
                            const int* cols, std::uint32_t q);

// Streams one canonical PluckerVector per subspace; throws BudgetExceeded
// (with the projected point count) before doing any work if the Gaussian
// binomial exceeds budget.
void enumerate_grassmannian(int n, int r, PrimeModulus q, std::uint64_t budget,
                            const std::function<void(const PluckerVector&)>& fn);

std::vector<PluckerVector> grassmannian_points(int n, int r, PrimeModulus q,
                                               std::uint64_t budget);

// --- quadratic Plücker relations (test oracle) ----------------------------

struct PluckerRelationTerm {
  int sign;  // +1 or -1
  std::size_t first, second;
};
using PluckerRelation = std::vector<PluckerRelationTerm>;

// Exchange relations for the shapes where the oracle is wired up:
// (n,r) in {(4,2),(5,2),(5,3)}.
std::vector<PluckerRelation> plucker_relations(int n, int r);

bool satisfies_plucker_relations(const PluckerVector& v);

}  // namespace pmi
