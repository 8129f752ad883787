#include "pmi/matrix.hpp"

#include <algorithm>
#include <sstream>

namespace pmi {

IndexSet::IndexSet(int n, std::vector<int> members) : n_(n), members_(std::move(members)) {
  if (n < 0) throw std::invalid_argument("IndexSet: negative ambient size");
  for (std::size_t i = 0; i < members_.size(); ++i) {
    if (members_[i] < 1 || members_[i] > n)
      throw std::invalid_argument("IndexSet: member out of range");
    if (i > 0 && members_[i] <= members_[i - 1])
      throw std::invalid_argument("IndexSet: members must be strictly increasing");
  }
}

IndexSet IndexSet::from_mask(int n, std::uint32_t mask) {
  return IndexSet(n, mask_to_members(mask));
}

IndexSet IndexSet::full(int n) {
  std::vector<int> all(n);
  for (int i = 0; i < n; ++i) all[i] = i + 1;
  return IndexSet(n, std::move(all));
}

IndexSet IndexSet::complement() const {
  std::vector<int> rest;
  rest.reserve(n_ - members_.size());
  std::size_t k = 0;
  for (int v = 1; v <= n_; ++v) {
    if (k < members_.size() && members_[k] == v) {
      ++k;
    } else {
      rest.push_back(v);
    }
  }
  return IndexSet(n_, std::move(rest));
}

bool IndexSet::contains(int v) const {
  return std::binary_search(members_.begin(), members_.end(), v);
}

ExactMatrix::ExactMatrix(int rows, int cols, PrimeModulus q)
    : rows_(rows), cols_(cols), q_(q), ent_(std::size_t(rows) * cols, 0) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("ExactMatrix: empty shape");
}

ExactMatrix ExactMatrix::identity(int n, PrimeModulus q) {
  ExactMatrix m(n, n, q);
  for (int i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

ExactMatrix ExactMatrix::from_ints(int rows, int cols, PrimeModulus q,
                                   const std::vector<std::int64_t>& entries) {
  if (entries.size() != std::size_t(rows) * cols)
    throw std::invalid_argument("ExactMatrix::from_ints: entry count mismatch");
  ExactMatrix m(rows, cols, q);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set_int(i, j, entries[std::size_t(i) * cols + j]);
  return m;
}

ExactMatrix ExactMatrix::submatrix(const IndexSet& row_set, const IndexSet& col_set) const {
  if (row_set.n() != rows_ || col_set.n() != cols_)
    throw std::invalid_argument("submatrix: index set ambient size mismatch");
  if (row_set.size() == 0 || col_set.size() == 0)
    throw std::invalid_argument("submatrix: empty selection");
  ExactMatrix out(row_set.size(), col_set.size(), q_);
  for (int i = 0; i < row_set.size(); ++i)
    for (int j = 0; j < col_set.size(); ++j)
      out.set(i, j, value_at(row_set.members()[i] - 1, col_set.members()[j] - 1));
  return out;
}

ExactMatrix operator*(const ExactMatrix& a, const ExactMatrix& b) {
  if (a.q() != b.q()) throw std::invalid_argument("matrix product: modulus mismatch");
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product: shape mismatch");
  const std::uint32_t q = a.q();
  ExactMatrix out(a.rows(), b.cols(), a.modulus());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < b.cols(); ++j) {
      std::uint64_t acc = 0;
      for (int k = 0; k < a.cols(); ++k)
        acc += std::uint64_t(a.value_at(i, k)) * b.value_at(k, j);
      out.set(i, j, static_cast<std::uint32_t>(acc % q));
    }
  return out;
}

namespace {

// Elimination on a scratch row-major buffer; returns the rank. If detp is
// non-null the buffer must be square and *detp receives the determinant.
int eliminate(std::vector<std::uint32_t>& a, int rows, int cols, std::uint32_t q,
              std::uint32_t* detp) {
  std::uint32_t detv = 1;
  bool neg = false;
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int piv = -1;
    for (int i = rank; i < rows; ++i)
      if (a[std::size_t(i) * cols + col] != 0) { piv = i; break; }
    if (piv < 0) {
      if (detp) { *detp = 0; return rank; }
      continue;
    }
    if (piv != rank) {
      for (int j = col; j < cols; ++j)
        std::swap(a[std::size_t(piv) * cols + j], a[std::size_t(rank) * cols + j]);
      neg = !neg;
    }
    const std::uint32_t p = a[std::size_t(rank) * cols + col];
    const std::uint32_t pinv = inv_mod(p, q);
    if (detp) detv = mul_mod(detv, p, q);
    for (int i = rank + 1; i < rows; ++i) {
      const std::uint32_t f = a[std::size_t(i) * cols + col];
      if (f == 0) continue;
      const std::uint32_t fp = mul_mod(f, pinv, q);
      for (int j = col; j < cols; ++j) {
        const std::uint32_t sub = mul_mod(fp, a[std::size_t(rank) * cols + j], q);
        a[std::size_t(i) * cols + j] = sub_mod(a[std::size_t(i) * cols + j], sub, q);
      }
    }
    ++rank;
  }
  if (detp) {
    if (rank < rows) *detp = 0;
    else *detp = neg ? neg_mod(detv, q) : detv;
  }
  return rank;
}

std::uint32_t det_values(const std::uint32_t* e, int n, int stride, std::uint32_t q) {
  auto v = [&](int i, int j) { return e[std::size_t(i) * stride + j]; };
  switch (n) {
    case 0:
      return 1 % q;
    case 1:
      return v(0, 0);
    case 2:
      return sub_mod(mul_mod(v(0, 0), v(1, 1), q), mul_mod(v(0, 1), v(1, 0), q), q);
    case 3: {
      std::uint32_t s = mul_mod(v(0, 0), sub_mod(mul_mod(v(1, 1), v(2, 2), q),
                                                 mul_mod(v(1, 2), v(2, 1), q), q), q);
      s = sub_mod(s, mul_mod(v(0, 1), sub_mod(mul_mod(v(1, 0), v(2, 2), q),
                                              mul_mod(v(1, 2), v(2, 0), q), q), q), q);
      s = add_mod(s, mul_mod(v(0, 2), sub_mod(mul_mod(v(1, 0), v(2, 1), q),
                                              mul_mod(v(1, 1), v(2, 0), q), q), q), q);
      return s;
    }
    default: {
      std::vector<std::uint32_t> buf(std::size_t(n) * n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) buf[std::size_t(i) * n + j] = v(i, j);
      std::uint32_t d = 0;
      eliminate(buf, n, n, q, &d);
      return d;
    }
  }
}

}  // namespace

int rank(const ExactMatrix& m) {
  std::vector<std::uint32_t> buf(std::size_t(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) buf[std::size_t(i) * m.cols() + j] = m.value_at(i, j);
  return eliminate(buf, m.rows(), m.cols(), m.q(), nullptr);
}

FieldElement det(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("det: matrix not square");
  std::vector<std::uint32_t> buf(std::size_t(m.rows()) * m.cols());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) buf[std::size_t(i) * m.cols() + j] = m.value_at(i, j);
  return FieldElement(det_values(buf.data(), m.rows(), m.cols(), m.q()), m.modulus());
}

FieldElement minor_det(const ExactMatrix& m, const IndexSet& row_set, const IndexSet& col_set) {
  if (row_set.size() != col_set.size())
    throw std::invalid_argument("minor_det: row and column selections differ in size");
  if (row_set.n() != m.rows() || col_set.n() != m.cols())
    throw std::invalid_argument("minor_det: index set ambient size mismatch");
  const int t = row_set.size();
  if (t == 0) return FieldElement(1, m.modulus());
  std::vector<std::uint32_t> buf(std::size_t(t) * t);
  for (int i = 0; i < t; ++i)
    for (int j = 0; j < t; ++j)
      buf[std::size_t(i) * t + j] =
          m.value_at(row_set.members()[i] - 1, col_set.members()[j] - 1);
  return FieldElement(det_values(buf.data(), t, t, m.q()), m.modulus());
}

std::map<IndexSet, FieldElement> principal_minors(const ExactMatrix& m, int t) {
  if (m.rows() != m.cols()) throw std::invalid_argument("principal_minors: matrix not square");
  if (t < 1 || t > m.rows()) throw std::invalid_argument("principal_minors: t out of range");
  SubsetIndexer idx(m.rows(), t);
  std::map<IndexSet, FieldElement> out;
  for (std::size_t k = 0; k < idx.size(); ++k) {
    IndexSet s(m.rows(), idx.subset_at(k));
    out.emplace(s, minor_det(m, s, s));
  }
  return out;
}

ExactMatrix exterior_power(const ExactMatrix& m, int t) {
  if (t < 1 || t > std::min(m.rows(), m.cols()))
    throw std::invalid_argument("exterior_power: t out of range");
  SubsetIndexer rows_idx(m.rows(), t), cols_idx(m.cols(), t);
  ExactMatrix out(static_cast<int>(rows_idx.size()), static_cast<int>(cols_idx.size()),
                  m.modulus());
  for (std::size_t i = 0; i < rows_idx.size(); ++i) {
    IndexSet ri(m.rows(), rows_idx.subset_at(i));
    for (std::size_t j = 0; j < cols_idx.size(); ++j) {
      IndexSet cj(m.cols(), cols_idx.subset_at(j));
      out.set(static_cast<int>(i), static_cast<int>(j), minor_det(m, ri, cj).value());
    }
  }
  return out;
}

ExactMatrix inverse(const ExactMatrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("inverse: matrix not square");
  const int n = m.rows();
  const std::uint32_t q = m.q();
  // Gauss-Jordan on [M | I].
  std::vector<std::uint32_t> a(std::size_t(n) * 2 * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) a[std::size_t(i) * 2 * n + j] = m.value_at(i, j);
    a[std::size_t(i) * 2 * n + n + i] = 1;
  }
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int i = col; i < n; ++i)
      if (a[std::size_t(i) * 2 * n + col] != 0) { piv = i; break; }
    if (piv < 0) throw std::domain_error("inverse: matrix is singular");
    if (piv != col)
      for (int j = 0; j < 2 * n; ++j)
        std::swap(a[std::size_t(piv) * 2 * n + j], a[std::size_t(col) * 2 * n + j]);
    const std::uint32_t pinv = inv_mod(a[std::size_t(col) * 2 * n + col], q);
    for (int j = 0; j < 2 * n; ++j)
      a[std::size_t(col) * 2 * n + j] = mul_mod(a[std::size_t(col) * 2 * n + j], pinv, q);
    for (int i = 0; i < n; ++i) {
      if (i == col) continue;
      const std::uint32_t f = a[std::size_t(i) * 2 * n + col];
      if (f == 0) continue;
      for (int j = 0; j < 2 * n; ++j) {
        const std::uint32_t sub = mul_mod(f, a[std::size_t(col) * 2 * n + j], q);
        a[std::size_t(i) * 2 * n + j] = sub_mod(a[std::size_t(i) * 2 * n + j], sub, q);
      }
    }
  }
  ExactMatrix out(n, n, m.modulus());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.set(i, j, a[std::size_t(i) * 2 * n + n + j]);
  return out;
}

bool jacobi_complementary_minor_check(const ExactMatrix& a, const IndexSet& s) {
  if (a.rows() != a.cols()) throw std::invalid_argument("jacobi check: matrix not square");
  if (s.n() != a.rows()) throw std::invalid_argument("jacobi check: index set size mismatch");
  const ExactMatrix ainv = inverse(a);  // throws if singular
  const FieldElement lhs = minor_det(ainv, s, s) * det(a);
  const IndexSet sc = s.complement();
  const FieldElement rhs = minor_det(a, sc, sc);
  return lhs == rhs;
}

ExactMatrix permute_symmetric(const ExactMatrix& m, const std::vector<int>& sigma) {
  if (m.rows() != m.cols()) throw std::invalid_argument("permute_symmetric: matrix not square");
  const int n = m.rows();
  if (static_cast<int>(sigma.size()) != n)
    throw std::invalid_argument("permute_symmetric: permutation size mismatch");
  std::vector<bool> seen(n + 1, false);
  for (int v : sigma) {
    if (v < 1 || v > n || seen[v]) throw std::invalid_argument("permute_symmetric: not a permutation");
    seen[v] = true;
  }
  ExactMatrix out(n, n, m.modulus());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out.set(sigma[i] - 1, sigma[j] - 1, m.value_at(i, j));
  return out;
}

ExactMatrix transpose(const ExactMatrix& m) {
  ExactMatrix out(m.cols(), m.rows(), m.modulus());
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) out.set(j, i, m.value_at(i, j));
  return out;
}

ExactMatrix scale_row(const ExactMatrix& m, int row, FieldElement lambda) {
  if (lambda.is_zero()) throw std::invalid_argument("scale_row: scalar must be nonzero");
  if (lambda.modulus().value() != m.q()) throw std::invalid_argument("scale_row: modulus mismatch");
  if (row < 0 || row >= m.rows()) throw std::invalid_argument("scale_row: row out of range");
  ExactMatrix out = m;
  for (int j = 0; j < m.cols(); ++j)
    out.set(row, j, mul_mod(m.value_at(row, j), lambda.value(), m.q()));
  return out;
}

ExactMatrix scale_col(const ExactMatrix& m, int col, FieldElement lambda) {
  if (lambda.is_zero()) throw std::invalid_argument("scale_col: scalar must be nonzero");
  if (lambda.modulus().value() != m.q()) throw std::invalid_argument("scale_col: modulus mismatch");
  if (col < 0 || col >= m.cols()) throw std::invalid_argument("scale_col: col out of range");
  ExactMatrix out = m;
  for (int i = 0; i < m.rows(); ++i)
    out.set(i, col, mul_mod(m.value_at(i, col), lambda.value(), m.q()));
  return out;
}

ExactMatrix parse_matrix(std::istream& in) {
  int rows, cols;
  std::int64_t q;
  if (!(in >> rows >> cols >> q)) throw std::invalid_argument("parse_matrix: bad header");
  if (rows < 1 || cols < 1 || q < 2) throw std::invalid_argument("parse_matrix: bad header values");
  PrimeModulus mod(static_cast<std::uint32_t>(q));
  std::vector<std::int64_t> entries(std::size_t(rows) * cols);
  for (auto& e : entries)
    if (!(in >> e)) throw std::invalid_argument("parse_matrix: not enough entries");
  return ExactMatrix::from_ints(rows, cols, mod, entries);
}

ExactMatrix parse_matrix(const std::string& text) {
  std::istringstream in(text);
  return parse_matrix(in);
}

std::string format_matrix(const ExactMatrix& m) {
  std::ostringstream out;
  out << m.rows() << ' ' << m.cols() << ' ' << m.q() << '\n';
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) {
      if (j) out << ' ';
      out << m.value_at(i, j);
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace pmi
