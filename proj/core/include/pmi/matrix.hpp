#pragma once

#include <initializer_list>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pmi/fq.hpp"
#include "pmi/subsets.hpp"

namespace pmi {

/// A sorted subset of {1..n}. Members are 1-based; matrix entry access is
/// 0-based everywhere else.
class IndexSet {
 public:
  IndexSet(int n, std::vector<int> members);
  static IndexSet from_mask(int n, std::uint32_t mask);
  static IndexSet full(int n);
  static IndexSet empty(int n) { return IndexSet(n, {}); }

  int n() const { return n_; }
  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<int>& members() const { return members_; }
  std::uint32_t mask() const { return members_to_mask(members_); }
  IndexSet complement() const;
  bool contains(int v) const;

  friend bool operator==(const IndexSet&, const IndexSet&) = default;
  friend bool operator<(const IndexSet& a, const IndexSet& b) {
    return a.members_ < b.members_;
  }

 private:
  int n_;
  std::vector<int> members_;  // ascending, no duplicates, in [1, n]
};

/// Dense matrix over F_q. Entries are stored reduced; all operations are
/// pure functions, so matrices behave as immutable values once built.
class ExactMatrix {
 public:
  ExactMatrix(int rows, int cols, PrimeModulus q);
  static ExactMatrix identity(int n, PrimeModulus q);
  static ExactMatrix from_ints(int rows, int cols, PrimeModulus q,
                               const std::vector<std::int64_t>& entries);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  PrimeModulus modulus() const { return q_; }
  std::uint32_t q() const { return q_.value(); }

  std::uint32_t value_at(int i, int j) const { return ent_[std::size_t(i) * cols_ + j]; }
  FieldElement at(int i, int j) const { return FieldElement(value_at(i, j), q_); }
  void set(int i, int j, std::uint32_t v) { ent_[std::size_t(i) * cols_ + j] = v % q_.value(); }
  void set_int(int i, int j, std::int64_t v) { ent_[std::size_t(i) * cols_ + j] = reduce_mod(v, q_.value()); }

  ExactMatrix submatrix(const IndexSet& row_set, const IndexSet& col_set) const;

  friend bool operator==(const ExactMatrix& a, const ExactMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.q_.value() == b.q_.value() && a.ent_ == b.ent_;
  }

 private:
  int rows_, cols_;
  PrimeModulus q_;
  std::vector<std::uint32_t> ent_;  // row-major
};

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b);

// Rank over F_q by Gaussian elimination.
int rank(const ExactMatrix& m);

// Determinant (square matrices; elimination with column pivoting above 3x3).
FieldElement det(const ExactMatrix& m);

// Determinant of the submatrix selected by row_set x col_set.
// The empty selection has determinant 1.
FieldElement minor_det(const ExactMatrix& m, const IndexSet& row_set, const IndexSet& col_set);

// All size-t principal minors, keyed by their index set; C(n,t) entries.
std::map<IndexSet, FieldElement> principal_minors(const ExactMatrix& m, int t);

// The t-th exterior power: C(rows,t) x C(cols,t) matrix of t-minors, with
// row and column subsets in lexicographic order.
ExactMatrix exterior_power(const ExactMatrix& m, int t);

// Inverse of a nonsingular square matrix (Gauss-Jordan); throws
// std::domain_error when singular.
ExactMatrix inverse(const ExactMatrix& m);

// Jacobi complementary-minor identity on a principal selection S:
//   det(A^{-1}[S,S]) * det(A) == det(A[S^c, S^c]).
// Requires A invertible; returns whether the identity holds.
bool jacobi_complementary_minor_check(const ExactMatrix& a, const IndexSet& s);

// Symmetry actions that fix the vanishing pattern of principal minors.
// sigma is 1-based: result(sigma(i)-1, sigma(j)-1) = m(i-1, j-1).
ExactMatrix permute_symmetric(const ExactMatrix& m, const std::vector<int>& sigma);
ExactMatrix transpose(const ExactMatrix& m);
ExactMatrix scale_row(const ExactMatrix& m, int row, FieldElement lambda);
ExactMatrix scale_col(const ExactMatrix& m, int col, FieldElement lambda);

// Fixture text format: first line "rows cols q", then rows of integers.
ExactMatrix parse_matrix(std::istream& in);
ExactMatrix parse_matrix(const std::string& text);
std::string format_matrix(const ExactMatrix& m);

}  // namespace pmi
