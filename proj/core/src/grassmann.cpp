#include "pmi/grassmann.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

namespace pmi {

PluckerVector::PluckerVector(int n, int r, PrimeModulus q, std::vector<std::uint32_t> coords)
    : n_(n), r_(r), q_(q), coords_(std::move(coords)) {
  if (r < 1 || r > n) throw std::invalid_argument("PluckerVector: need 1 <= r <= n");
  if (coords_.size() != binomial(n, r))
    throw std::invalid_argument("PluckerVector: coordinate count mismatch");
  std::size_t lead = coords_.size();
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    coords_[i] %= q_.value();
    if (lead == coords_.size() && coords_[i] != 0) lead = i;
  }
  if (lead == coords_.size())
    throw std::invalid_argument("PluckerVector: all coordinates are zero");
  if (coords_[lead] != 1) {
    const std::uint32_t s = inv_mod(coords_[lead], q_.value());
    for (auto& c : coords_) c = mul_mod(c, s, q_.value());
  }
}

std::uint64_t PluckerVector::support_mask() const {
  if (coords_.size() > 64)
    throw std::invalid_argument("support_mask: more than 64 coordinates");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < coords_.size(); ++i)
    if (coords_[i]) m |= std::uint64_t(1) << i;
  return m;
}

std::size_t PluckerVectorHash::operator()(const PluckerVector& v) const {
  std::size_t h = std::hash<int>()(v.n()) ^ (std::hash<int>()(v.r()) << 1) ^
                  (std::hash<std::uint32_t>()(v.q()) << 2);
  for (std::uint32_t c : v.coords()) h = h * 1099511628211ull + c;
  return h;
}

std::string plucker_to_json(const PluckerVector& v) {
  std::ostringstream out;
  out << "{\"n\":" << v.n() << ",\"r\":" << v.r() << ",\"q\":" << v.q() << ",\"coords\":[";
  for (std::size_t i = 0; i < v.coords().size(); ++i) {
    if (i) out << ',';
    out << v.coords()[i];
  }
  out << "]}";
  return out.str();
}

std::uint32_t maximal_minor(const std::uint32_t* mat, int n, int r, const int* cols,
                            std::uint32_t q) {
  if (r > 6) throw std::invalid_argument("maximal_minor: r > 6 unsupported");
  // Gather the selected columns, then eliminate in place.
  std::array<std::uint32_t, 36> buf;
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) buf[std::size_t(i) * r + j] = mat[std::size_t(i) * n + cols[j]];
  switch (r) {
    case 1:
      return buf[0];
    case 2:
      return sub_mod(mul_mod(buf[0], buf[3], q), mul_mod(buf[1], buf[2], q), q);
    case 3: {
      std::uint32_t s = mul_mod(buf[0], sub_mod(mul_mod(buf[4], buf[8], q),
                                                mul_mod(buf[5], buf[7], q), q), q);
      s = sub_mod(s, mul_mod(buf[1], sub_mod(mul_mod(buf[3], buf[8], q),
                                             mul_mod(buf[5], buf[6], q), q), q), q);
      s = add_mod(s, mul_mod(buf[2], sub_mod(mul_mod(buf[3], buf[7], q),
                                             mul_mod(buf[4], buf[6], q), q), q), q);
      return s;
    }
    default: {
      // Dimensions above 3 only occur off the hot paths.
      std::uint32_t detv = 1;
      bool neg = false;
      for (int col = 0; col < r; ++col) {
        int piv = -1;
        for (int i = col; i < r; ++i)
          if (buf[std::size_t(i) * r + col] != 0) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != col) {
          for (int j = col; j < r; ++j)
            std::swap(buf[std::size_t(piv) * r + j], buf[std::size_t(col) * r + j]);
          neg = !neg;
        }
        const std::uint32_t p = buf[std::size_t(col) * r + col];
        detv = mul_mod(detv, p, q);
        const std::uint32_t pinv = inv_mod(p, q);
        for (int i = col + 1; i < r; ++i) {
          const std::uint32_t fct = mul_mod(buf[std::size_t(i) * r + col], pinv, q);
          if (fct == 0) continue;
          for (int j = col; j < r; ++j)
            buf[std::size_t(i) * r + j] = sub_mod(
                buf[std::size_t(i) * r + j], mul_mod(fct, buf[std::size_t(col) * r + j], q), q);
        }
      }
      return neg ? neg_mod(detv, q) : detv;
    }
  }
}

PluckerVector plucker_of_columns(const ExactMatrix& b) {
  const int n = b.rows(), r = b.cols();
  if (r > n) throw std::invalid_argument("plucker_of_columns: need rows >= cols");
  if (rank(b) < r) throw std::domain_error("plucker_of_columns: matrix rank below r");
  // Coordinate at S = det of rows S; transpose once so the shared row-major
  // maximal-minor kernel applies.
  std::vector<std::uint32_t> tr(std::size_t(r) * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < r; ++j) tr[std::size_t(j) * n + i] = b.value_at(i, j);
  SubsetIndexer idx(n, r);
  std::vector<std::uint32_t> coords(idx.size());
  std::vector<int> cols(r);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto mem = idx.subset_at(k);
    for (int j = 0; j < r; ++j) cols[j] = mem[j] - 1;
    coords[k] = maximal_minor(tr.data(), n, r, cols.data(), b.q());
  }
  return PluckerVector(n, r, b.modulus(), std::move(coords));
}

PluckerVector plucker_of_rows(const ExactMatrix& c) {
  const int r = c.rows(), n = c.cols();
  if (r > n) throw std::invalid_argument("plucker_of_rows: need cols >= rows");
  if (rank(c) < r) throw std::domain_error("plucker_of_rows: matrix rank below r");
  std::vector<std::uint32_t> buf(std::size_t(r) * n);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < n; ++j) buf[std::size_t(i) * n + j] = c.value_at(i, j);
  SubsetIndexer idx(n, r);
  std::vector<std::uint32_t> coords(idx.size());
  std::vector<int> cols(r);
  for (std::size_t k = 0; k < idx.size(); ++k) {
    auto mem = idx.subset_at(k);
    for (int j = 0; j < r; ++j) cols[j] = mem[j] - 1;
    coords[k] = maximal_minor(buf.data(), n, r, cols.data(), c.q());
  }
  return PluckerVector(n, r, c.modulus(), std::move(coords));
}

ExactMatrix normalize_columns(const ExactMatrix& b, const IndexSet& i_set) {
  if (i_set.n() != b.rows() || i_set.size() != b.cols())
    throw std::invalid_argument("normalize_columns: i_set must pick cols-many rows");
  const ExactMatrix block = b.submatrix(i_set, IndexSet::full(b.cols()));
  return b * inverse(block);  // inverse throws if the block is singular
}

ExactMatrix normalize_rows(const ExactMatrix& c, const IndexSet& j_set) {
  if (j_set.n() != c.cols() || j_set.size() != c.rows())
    throw std::invalid_argument("normalize_rows: j_set must pick rows-many columns");
  const ExactMatrix block = c.submatrix(IndexSet::full(c.rows()), j_set);
  return inverse(block) * c;
}

namespace {

int rank_of_values(std::vector<std::uint32_t> buf, int rows, int cols, std::uint32_t q) {
  int rnk = 0;
  for (int col = 0; col < cols && rnk < rows; ++col) {
    int piv = -1;
    for (int i = rnk; i < rows; ++i)
      if (buf[std::size_t(i) * cols + col] != 0) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rnk)
      for (int j = col; j < cols; ++j)
        std::swap(buf[std::size_t(piv) * cols + j], buf[std::size_t(rnk) * cols + j]);
    const std::uint32_t pinv = inv_mod(buf[std::size_t(rnk) * cols + col], q);
    for (int i = rnk + 1; i < rows; ++i) {
      const std::uint32_t f = mul_mod(buf[std::size_t(i) * cols + col], pinv, q);
      if (f == 0) continue;
      for (int j = col; j < cols; ++j)
        buf[std::size_t(i) * cols + j] =
            sub_mod(buf[std::size_t(i) * cols + j],
                    mul_mod(f, buf[std::size_t(rnk) * cols + j], q), q);
    }
    ++rnk;
  }
  return rnk;
}

// Lex-least r-subset of independent rows, greedily: a row joins if it grows
// the rank of the set collected so far.
std::vector<int> greedy_independent_rows(const ExactMatrix& a, int r) {
  std::vector<int> picked;
  std::vector<std::uint32_t> buf;
  for (int i = 0; i < a.rows() && static_cast<int>(picked.size()) < r; ++i) {
    std::vector<std::uint32_t> trial = buf;
    for (int j = 0; j < a.cols(); ++j) trial.push_back(a.value_at(i, j));
    const int rows = static_cast<int>(trial.size()) / a.cols();
    if (rank_of_values(trial, rows, a.cols(), a.q()) == static_cast<int>(picked.size()) + 1) {
      picked.push_back(i + 1);
      buf = std::move(trial);
    }
  }
  return picked;
}

}  // namespace

Factorization factor(const ExactMatrix& a, int r) {
  if (a.rows() != a.cols()) throw std::invalid_argument("factor: matrix not square");
  if (rank(a) != r) throw std::domain_error("factor: rank(A) != r");
  const int n = a.rows();

  std::vector<int> rows = greedy_independent_rows(a, r);
  IndexSet i_set(n, rows);

  // Lex-least column set making A(i_set; -) full column rank on it, greedily.
  const ExactMatrix row_block = a.submatrix(i_set, IndexSet::full(n));
  std::vector<int> cols_picked = greedy_independent_rows(transpose(row_block), r);
  IndexSet j_set(n, cols_picked);

  const ExactMatrix core = a.submatrix(i_set, j_set);
  const ExactMatrix core_inv = inverse(core);
  const ExactMatrix col_block = a.submatrix(IndexSet::full(n), j_set);
  const ExactMatrix left = col_block * core_inv;       // normalized w.r.t. i_set
  const ExactMatrix right = core_inv * row_block;      // normalized w.r.t. j_set
  return Factorization{left, core, right, i_set, j_set};
}

std::pair<PluckerVector, PluckerVector> theta(const ExactMatrix& a, int r) {
  Factorization f = factor(a, r);
  const ExactMatrix col_basis = a.submatrix(IndexSet::full(a.rows()), f.j_set);
  const ExactMatrix row_basis = a.submatrix(f.i_set, IndexSet::full(a.cols()));
  return {plucker_of_columns(col_basis), plucker_of_rows(row_basis)};
}

bool componentwise_product_vanishes(const PluckerVector& g, const PluckerVector& h) {
  if (!g.same_shape(h))
    throw std::invalid_argument("componentwise_product_vanishes: indexer mismatch");
  for (std::size_t i = 0; i < g.coords().size(); ++i)
    if (g.coords()[i] != 0 && h.coords()[i] != 0) return false;
  return true;
}

std::uint64_t gaussian_binomial(int n, int r, std::uint32_t q) {
  if (r < 0 || r > n) return 0;
  // Product form prod_{i=0}^{r-1} (q^{n-i} - 1) / (q^{i+1} - 1), folded
  // incrementally to stay integral.
  // Use exact 128-bit intermediate to postpone overflow.
  unsigned __int128 acc = 1;
  for (int i = 0; i < r; ++i) {
    unsigned __int128 num = 1;
    for (int k = 0; k < n - i; ++k) num *= q;
    num -= 1;
    unsigned __int128 den = 1;
    for (int k = 0; k < i + 1; ++k) den *= q;
    den -= 1;
    acc = acc * num / den;  // partial products of Gaussian binomials are integral
    if (acc > std::numeric_limits<std::uint64_t>::max())
      throw std::overflow_error("gaussian_binomial: value exceeds 64 bits");
  }
  return static_cast<std::uint64_t>(acc);
}

std::uint64_t gl_order(int r, std::uint32_t q) {
  if (r < 1) throw std::invalid_argument("gl_order: r must be >= 1");
  std::uint64_t qr = 1;
  for (int i = 0; i < r; ++i) {
    if (qr > std::numeric_limits<std::uint64_t>::max() / q)
      throw std::overflow_error("gl_order: overflow");
    qr *= q;
  }
  std::uint64_t acc = 1, qi = 1;
  for (int i = 0; i < r; ++i) {
    const std::uint64_t term = qr - qi;
    if (acc > std::numeric_limits<std::uint64_t>::max() / term)
      throw std::overflow_error("gl_order: overflow");
    acc *= term;
    qi *= q;
  }
  return acc;
}

namespace detail {

std::vector<std::pair<int, int>> rref_free_positions(int n, int r,
                                                     const std::vector<int>& pivots) {
  std::vector<bool> is_pivot(n, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < r; ++i)
    for (int j = pivots[i] + 1; j < n; ++j)
      if (!is_pivot[j]) out.emplace_back(i, j);
  return out;
}

}  // namespace detail

void enumerate_grassmannian(int n, int r, PrimeModulus q, std::uint64_t budget,
                            const std::function<void(const PluckerVector&)>& fn) {
  if (r < 1 || r > n) throw std::invalid_argument("enumerate_grassmannian: need 1 <= r <= n");
  std::uint64_t points;
  try {
    points = gaussian_binomial(n, r, q.value());
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("enumerate_grassmannian: point count exceeds 64 bits",
                         std::numeric_limits<std::uint64_t>::max());
  }
  if (points > budget)
    throw BudgetExceeded("enumerate_grassmannian: point count exceeds budget", points);

  SubsetIndexer idx(n, r);
  std::vector<int> cols(r);
  std::vector<std::uint32_t> coords(idx.size());
  for_each_rref(n, r, q.value(), [&](const std::uint32_t* mat) {
    for (std::size_t k = 0; k < idx.size(); ++k) {
      auto mem = idx.subset_at(k);
      for (int j = 0; j < r; ++j) cols[j] = mem[j] - 1;
      coords[k] = maximal_minor(mat, n, r, cols.data(), q.value());
    }
    fn(PluckerVector(n, r, q, coords));
  });
}

std::vector<PluckerVector> grassmannian_points(int n, int r, PrimeModulus q,
                                               std::uint64_t budget) {
  std::vector<PluckerVector> out;
  enumerate_grassmannian(n, r, q, budget, [&](const PluckerVector& v) { out.push_back(v); });
  return out;
}

std::vector<PluckerRelation> plucker_relations(int n, int r) {
  const bool supported = (n == 4 && r == 2) || (n == 5 && r == 2) || (n == 5 && r == 3);
  if (!supported)
    throw std::invalid_argument("plucker_relations: oracle wired up only for (4,2),(5,2),(5,3)");
  SubsetIndexer idx(n, r);
  SubsetIndexer alphas(n, r - 1), betas(n, r + 1);
  std::vector<PluckerRelation> rels;
  for (std::size_t ai = 0; ai < alphas.size(); ++ai) {
    const auto alpha = alphas.subset_at(ai);
    const std::uint32_t amask = alphas.mask_at(ai);
    for (std::size_t bi = 0; bi < betas.size(); ++bi) {
      const auto beta = betas.subset_at(bi);
      PluckerRelation rel;
      for (int k = 0; k <= r; ++k) {
        const int b = beta[k];
        if (amask & (1u << (b - 1))) continue;  // repeated index, term vanishes
        // sign from (-1)^k and from sorting alpha + {b}
        int pos = 0;
        while (pos < r - 1 && alpha[pos] < b) ++pos;
        const int sort_sign = ((r - 1 - pos) % 2 == 0) ? 1 : -1;
        const int sign = ((k % 2 == 0) ? 1 : -1) * sort_sign;
        const std::size_t first = idx.index_of_mask(amask | (1u << (b - 1)));
        const std::size_t second = idx.index_of_mask(betas.mask_at(bi) & ~(1u << (b - 1)));
        rel.push_back({sign, first, second});
      }
      if (rel.size() >= 2) rels.push_back(std::move(rel));
    }
  }
  return rels;
}

bool satisfies_plucker_relations(const PluckerVector& v) {
  const auto rels = plucker_relations(v.n(), v.r());
  const std::uint32_t q = v.q();
  for (const auto& rel : rels) {
    std::uint32_t acc = 0;
    for (const auto& t : rel) {
      const std::uint32_t prod = mul_mod(v.coord(t.first), v.coord(t.second), q);
      acc = (t.sign > 0) ? add_mod(acc, prod, q) : sub_mod(acc, prod, q);
    }
    if (acc != 0) return false;
  }
  return true;
}

}  // namespace pmi
