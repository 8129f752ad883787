#include "pmi/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <map>
#include <random>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace pmi {

namespace {

using Clock = std::chrono::steady_clock;

std::int64_t ms_since(Clock::time_point start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start).count();
}

std::uint64_t pow_sat(std::uint64_t q, int e) {
  std::uint64_t acc = 1;
  for (int i = 0; i < e; ++i) {
    if (acc > std::numeric_limits<std::uint64_t>::max() / q)
      return std::numeric_limits<std::uint64_t>::max();
    acc *= q;
  }
  return acc;
}

// Lookup-table arithmetic for the enumeration kernels; q is small there.
struct SmallField {
  std::uint32_t q;
  std::vector<std::uint8_t> mul_, sub_, inv_;

  explicit SmallField(std::uint32_t q_) : q(q_) {
    if (q > 251) throw std::invalid_argument("SmallField: q too large for kernel tables");
    mul_.resize(std::size_t(q) * q);
    sub_.resize(std::size_t(q) * q);
    inv_.resize(q, 0);
    for (std::uint32_t a = 0; a < q; ++a)
      for (std::uint32_t b = 0; b < q; ++b) {
        mul_[std::size_t(a) * q + b] = static_cast<std::uint8_t>(a * b % q);
        sub_[std::size_t(a) * q + b] = static_cast<std::uint8_t>((a + q - b) % q);
      }
    for (std::uint32_t a = 1; a < q; ++a) inv_[a] = static_cast<std::uint8_t>(inv_mod(a, q));
  }

  std::uint8_t mul(std::uint8_t a, std::uint8_t b) const { return mul_[std::size_t(a) * q + b]; }
  std::uint8_t sub(std::uint8_t a, std::uint8_t b) const { return sub_[std::size_t(a) * q + b]; }
  std::uint8_t add(std::uint8_t a, std::uint8_t b) const {
    std::uint32_t s = std::uint32_t(a) + b;
    return static_cast<std::uint8_t>(s >= q ? s - q : s);
  }
  std::uint8_t inv(std::uint8_t a) const { return inv_[a]; }
  std::uint8_t neg(std::uint8_t a) const { return a ? static_cast<std::uint8_t>(q - a) : 0; }
};

std::uint8_t det_small(const std::uint8_t* m, int n, const int* idx, int t,
                       const SmallField& F) {
  auto e = [&](int i, int j) { return m[idx[i] * n + idx[j]]; };
  switch (t) {
    case 1:
      return e(0, 0);
    case 2:
      return F.sub(F.mul(e(0, 0), e(1, 1)), F.mul(e(0, 1), e(1, 0)));
    case 3: {
      std::uint8_t s = F.mul(e(0, 0), F.sub(F.mul(e(1, 1), e(2, 2)), F.mul(e(1, 2), e(2, 1))));
      s = F.sub(s, F.mul(e(0, 1), F.sub(F.mul(e(1, 0), e(2, 2)), F.mul(e(1, 2), e(2, 0)))));
      s = F.add(s, F.mul(e(0, 2), F.sub(F.mul(e(1, 0), e(2, 1)), F.mul(e(1, 1), e(2, 0)))));
      return s;
    }
    default: {
      std::uint8_t buf[64];
      for (int i = 0; i < t; ++i)
        for (int j = 0; j < t; ++j) buf[i * t + j] = e(i, j);
      std::uint8_t detv = 1;
      bool neg = false;
      for (int col = 0; col < t; ++col) {
        int piv = -1;
        for (int i = col; i < t; ++i)
          if (buf[i * t + col]) { piv = i; break; }
        if (piv < 0) return 0;
        if (piv != col) {
          for (int j = col; j < t; ++j) std::swap(buf[piv * t + j], buf[col * t + j]);
          neg = !neg;
        }
        const std::uint8_t p = buf[col * t + col];
        detv = F.mul(detv, p);
        const std::uint8_t pinv = F.inv(p);
        for (int i = col + 1; i < t; ++i) {
          const std::uint8_t f = F.mul(buf[i * t + col], pinv);
          if (!f) continue;
          for (int j = col; j < t; ++j)
            buf[i * t + j] = F.sub(buf[i * t + j], F.mul(f, buf[col * t + j]));
        }
      }
      return neg ? F.neg(detv) : detv;
    }
  }
}

int rank_small(const std::uint8_t* m, int n, const SmallField& F) {
  std::uint8_t buf[64];
  for (int i = 0; i < n * n; ++i) buf[i] = m[i];
  int rnk = 0;
  for (int col = 0; col < n && rnk < n; ++col) {
    int piv = -1;
    for (int i = rnk; i < n; ++i)
      if (buf[i * n + col]) { piv = i; break; }
    if (piv < 0) continue;
    if (piv != rnk)
      for (int j = col; j < n; ++j) std::swap(buf[piv * n + j], buf[rnk * n + j]);
    const std::uint8_t pinv = F.inv(buf[rnk * n + col]);
    for (int i = rnk + 1; i < n; ++i) {
      const std::uint8_t f = F.mul(buf[i * n + col], pinv);
      if (!f) continue;
      for (int j = col; j < n; ++j)
        buf[i * n + j] = F.sub(buf[i * n + j], F.mul(f, buf[rnk * n + j]));
    }
    ++rnk;
  }
  return rnk;
}

// Flattened list of the C(n,t) principal index sets, 0-based.
std::vector<int> principal_subsets_flat(int n, int t) {
  SubsetIndexer idx(n, t);
  std::vector<int> flat;
  flat.reserve(idx.size() * t);
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (int v : idx.subset_at(k)) flat.push_back(v - 1);
  return flat;
}

std::uint64_t count_Y_shard(const StratumSpec& spec, const SmallField& F,
                            const std::vector<int>& subsets_flat, int prefix_len,
                            std::uint64_t shard) {
  const int n = spec.n, N = n * n, t = spec.t;
  const std::uint32_t q = spec.q;
  const int nsubsets = static_cast<int>(subsets_flat.size()) / t;
  std::uint8_t m[64] = {0};
  std::uint64_t s = shard;
  for (int i = prefix_len - 1; i >= 0; --i) {
    m[i] = static_cast<std::uint8_t>(s % q);
    s /= q;
  }
  std::uint64_t count = 0;
  for (;;) {
    bool all_vanish = true;
    for (int k = 0; k < nsubsets; ++k) {
      if (det_small(m, n, subsets_flat.data() + std::size_t(k) * t, t, F) != 0) {
        all_vanish = false;
        break;
      }
    }
    if (all_vanish && (spec.r == kRankAny || rank_small(m, n, F) == spec.r)) ++count;

    int pos = N;
    while (--pos >= prefix_len) {
      if (++m[pos] < q) break;
      m[pos] = 0;
    }
    if (pos < prefix_len) break;
  }
  return count;
}

}  // namespace

std::uint64_t default_budget() {
  if (const char* env = std::getenv("PMIDEAL_BUDGET")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && v > 0) return v;
  }
  return std::uint64_t(1) << 34;
}

CensusRecord count_Y_bruteforce(const StratumSpec& spec, int jobs, std::uint64_t budget) {
  if (spec.n < 1 || spec.n > 8) throw std::invalid_argument("count_Y_bruteforce: need 1 <= n <= 8");
  if (spec.t < 1 || spec.t > spec.n) throw std::invalid_argument("count_Y_bruteforce: t out of range");
  if (spec.r != kRankAny && (spec.r < 0 || spec.r > spec.n))
    throw std::invalid_argument("count_Y_bruteforce: r out of range");
  if (jobs < 1) jobs = 1;
  PrimeModulus mod(spec.q);  // validates primality

  const int N = spec.n * spec.n;
  const std::uint64_t space = pow_sat(spec.q, N);
  if (space > budget / std::uint64_t(N))
    throw BudgetExceeded("count_Y_bruteforce: enumeration exceeds budget",
                         space == std::numeric_limits<std::uint64_t>::max()
                             ? space
                             : space * std::uint64_t(N));

  const auto start = Clock::now();
  const SmallField F(spec.q);
  const auto subsets_flat = principal_subsets_flat(spec.n, spec.t);

  // Shards come from the first prefix_len entries; about 2x the job count.
  int prefix_len = 0;
  std::uint64_t shards = 1;
  while (shards < std::uint64_t(2) * jobs && prefix_len < N) {
    shards *= spec.q;
    ++prefix_len;
  }

  std::vector<std::uint64_t> shard_counts(shards, 0);
  auto worker = [&](int w) {
    for (std::uint64_t sh = w; sh < shards; sh += jobs)
      shard_counts[sh] = count_Y_shard(spec, F, subsets_flat, prefix_len, sh);
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  std::uint64_t total = 0;
  for (std::uint64_t c : shard_counts) total += c;  // fixed shard order
  return CensusRecord{spec, total, "matrix-bruteforce", ms_since(start)};
}

CensusRecord count_H_pairs(int n, int t, std::uint32_t q, std::uint64_t budget) {
  if (t < 1 || t > n) throw std::invalid_argument("count_H_pairs: t out of range");
  PrimeModulus mod(q);
  const std::uint64_t ncoords = binomial(n, t);
  if (ncoords > 64) throw std::invalid_argument("count_H_pairs: more than 64 coordinates");
  std::uint64_t points;
  try {
    points = gaussian_binomial(n, t, q);
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("count_H_pairs: point count exceeds 64 bits",
                         std::numeric_limits<std::uint64_t>::max());
  }
  if (points > budget / (ncoords ? ncoords : 1))
    throw BudgetExceeded("count_H_pairs: enumeration exceeds budget", points * ncoords);

  const auto start = Clock::now();
  SubsetIndexer idx(n, t);
  std::vector<int> cols_flat;
  for (std::size_t k = 0; k < idx.size(); ++k)
    for (int v : idx.subset_at(k)) cols_flat.push_back(v - 1);

  std::map<std::uint64_t, std::uint64_t> support_counts;
  for_each_rref(n, t, q, [&](const std::uint32_t* mat) {
    std::uint64_t supp = 0;
    for (std::size_t k = 0; k < idx.size(); ++k)
      if (maximal_minor(mat, n, t, cols_flat.data() + k * t, q) != 0)
        supp |= std::uint64_t(1) << k;
    ++support_counts[supp];
  });

  std::uint64_t pairs = 0;
  for (const auto& [m1, c1] : support_counts)
    for (const auto& [m2, c2] : support_counts)
      if ((m1 & m2) == 0) pairs += c1 * c2;

  return CensusRecord{StratumSpec{n, t, t, q}, pairs, "grassmann-pairs", ms_since(start)};
}

BundleCheck verify_bundle_count(int n, int t, std::uint32_t q, int jobs, std::uint64_t budget) {
  const CensusRecord y = count_Y_bruteforce(StratumSpec{n, t, t, q}, jobs, budget);
  const CensusRecord h = count_H_pairs(n, t, q, budget);
  const std::uint64_t gl = gl_order(t, q);
  if (h.count != 0 && gl > std::numeric_limits<std::uint64_t>::max() / h.count)
    throw std::overflow_error("verify_bundle_count: product overflows");
  return BundleCheck{y.count == h.count * gl, y.count, h.count, gl};
}

std::vector<std::uint64_t> graph_mask_histogram(int n, std::uint32_t q, int jobs,
                                                std::uint64_t budget) {
  if (n < 3 || n > 6)
    throw std::invalid_argument("graph_mask_histogram: need 3 <= n <= 6");
  PrimeModulus mod(q);
  if (jobs < 1) jobs = 1;
  const int r = n - 2;
  const int nedges = n * (n - 1) / 2;
  std::uint64_t points;
  try {
    points = gaussian_binomial(n, r, q);
  } catch (const std::overflow_error&) {
    throw BudgetExceeded("graph_mask_histogram: point count exceeds 64 bits",
                         std::numeric_limits<std::uint64_t>::max());
  }
  if (points > budget / nedges)
    throw BudgetExceeded("graph_mask_histogram: scan exceeds budget", points * nedges);

  const PointGraphCodec codec(n);
  SubsetIndexer coord_sets(n, r);
  // 0-based column lists per edge bit, in coordinate order of that edge.
  std::vector<int> cols_flat(std::size_t(nedges) * r);
  for (int bit = 0; bit < nedges; ++bit) {
    const auto mem = coord_sets.subset_at(codec.coord_index_of_edge_bit(bit));
    for (int j = 0; j < r; ++j) cols_flat[std::size_t(bit) * r + j] = mem[j] - 1;
  }

  SubsetIndexer pivot_sets(n, r);
  const std::size_t npivots = pivot_sets.size();
  std::vector<std::vector<std::uint64_t>> local(jobs);
  auto worker = [&](int w) {
    auto& hist = local[w];
    hist.assign(std::size_t(1) << nedges, 0);
    for (std::size_t p = w; p < npivots; p += jobs) {
      std::vector<int> pivots = pivot_sets.subset_at(p);
      for (int& v : pivots) --v;
      for_each_rref_with_pivots(n, r, q, pivots, [&](const std::uint32_t* mat) {
        std::uint64_t emask = 0;
        for (int bit = 0; bit < nedges; ++bit)
          if (maximal_minor(mat, n, r, cols_flat.data() + std::size_t(bit) * r, q) == 0)
            emask |= std::uint64_t(1) << bit;
        ++hist[emask];
      });
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(jobs);
    for (int w = 0; w < jobs; ++w) pool.emplace_back(worker, w);
    for (auto& th : pool) th.join();
  }
  std::vector<std::uint64_t> hist(std::size_t(1) << nedges, 0);
  for (const auto& h : local)
    for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += h[i];
  return hist;
}

std::uint64_t stratum_count_from_histogram(const std::vector<std::uint64_t>& hist,
                                           std::uint64_t edge_mask) {
  std::uint64_t total = 0;
  for (std::size_t m = 0; m < hist.size(); ++m)
    if ((edge_mask & ~m) == 0) total += hist[m];
  return total;
}

CensusRecord count_graph_stratum(int n, const SimpleGraph& g, std::uint32_t q, int jobs,
                                 std::uint64_t budget) {
  if (g.n() != n) throw std::invalid_argument("count_graph_stratum: vertex count mismatch");
  const auto start = Clock::now();
  const auto hist = graph_mask_histogram(n, q, jobs, budget);
  const std::uint64_t count = stratum_count_from_histogram(hist, g.edge_mask());
  return CensusRecord{StratumSpec{n, n - 2, n - 2, q}, count, "graph-stratum",
                      ms_since(start)};
}

DimensionEstimate estimate_dimension(const std::vector<CensusRecord>& counts) {
  std::map<std::uint32_t, std::uint64_t> by_prime;
  for (const auto& rec : counts) {
    auto [it, inserted] = by_prime.emplace(rec.spec.q, rec.count);
    if (!inserted && it->second != rec.count)
      throw std::invalid_argument("estimate_dimension: conflicting counts at one prime");
  }
  if (by_prime.size() < 2)
    throw std::invalid_argument("estimate_dimension: need counts at >= 2 distinct primes");
  const auto it2 = std::prev(by_prime.end());
  const auto it1 = std::prev(it2);
  const auto [q1, c1] = *it1;
  const auto [q2, c2] = *it2;
  if (c1 == 0 || c2 == 0)
    throw std::domain_error("estimate_dimension: locus empty at this prime; increase q or report codim = infinity");
  const double raw = std::log(double(c2) / double(c1)) / std::log(double(q2) / double(q1));
  const int dim = static_cast<int>(std::lround(raw));
  return DimensionEstimate{dim, std::abs(raw - dim), raw};
}

bool verify_overlap_rule(int s, std::uint32_t q) {
  if (s < 2 || s > 5 || q > 5) throw std::invalid_argument("verify_overlap_rule: need s <= 5, q <= 5");
  PrimeModulus mod(q);
  const int N = 2 * s;
  std::vector<std::uint32_t> m(N, 0);
  auto minor2 = [&](int a, int b) {
    return sub_mod(mul_mod(m[a], m[s + b], q), mul_mod(m[b], m[s + a], q), q);
  };
  for (;;) {
    for (int x = 0; x < s; ++x)
      for (int y = 0; y < s; ++y)
        for (int z = 0; z < s; ++z) {
          if (x == y || y == z || x == z) continue;
          if (x > z) continue;  // unordered outer pair
          // minors on {x,y} and {y,z} overlap in column y
          if (minor2(std::min(x, y), std::max(x, y)) != 0) continue;
          if (minor2(std::min(y, z), std::max(y, z)) != 0) continue;
          const bool overlap_zero = (m[y] == 0 && m[s + y] == 0);
          const bool third_zero = (minor2(x, z) == 0);
          if (!overlap_zero && !third_zero) return false;
        }
    int pos = N;
    while (--pos >= 0) {
      if (++m[pos] < q) break;
      m[pos] = 0;
    }
    if (pos < 0) break;
  }
  return true;
}

VerifyReport verify_case3(std::uint32_t q, int permutation_samples, std::uint64_t seed) {
  if (q > 7) throw std::invalid_argument("verify_case3: q too large for a 9-variable scan");
  PrimeModulus mod(q);
  VerifyReport rep;

  // Index choices: identity first, then sampled row/column permutations.
  std::vector<std::pair<std::array<int, 3>, std::array<int, 3>>> choices;
  choices.push_back({{0, 1, 2}, {0, 1, 2}});
  std::mt19937_64 rng(seed);
  for (int k = 0; k < permutation_samples; ++k) {
    std::array<int, 3> rows{0, 1, 2}, cols{0, 1, 2};
    for (int i = 2; i > 0; --i) std::swap(rows[i], rows[rng() % (i + 1)]);
    for (int i = 2; i > 0; --i) std::swap(cols[i], cols[rng() % (i + 1)]);
    choices.push_back({rows, cols});
  }

  std::uint32_t x[9];
  auto m2 = [&](int r1, int c1, int r2, int c2) {
    return sub_mod(mul_mod(x[3 * r1 + c1], x[3 * r2 + c2], q),
                   mul_mod(x[3 * r1 + c2], x[3 * r2 + c1], q), q);
  };
  auto det3 = [&] {
    std::uint32_t s = mul_mod(x[0], sub_mod(mul_mod(x[4], x[8], q), mul_mod(x[5], x[7], q), q), q);
    s = sub_mod(s, mul_mod(x[1], sub_mod(mul_mod(x[3], x[8], q), mul_mod(x[5], x[6], q), q), q), q);
    return add_mod(s, mul_mod(x[2], sub_mod(mul_mod(x[3], x[7], q), mul_mod(x[4], x[6], q), q), q), q);
  };

  for (const auto& [ri, ci] : choices) {
    const int i1 = ri[0], i2 = ri[1], i3 = ri[2];
    const int j1 = ci[0], j2 = ci[1], j3 = ci[2];
    std::fill(std::begin(x), std::end(x), 0);
    for (;;) {
      const bool mu0 = (m2(i1, j1, i2, j2) == 0);
      const bool in_locus = mu0 && (det3() == 0);
      const bool in_p1 = mu0 && m2(i1, j1, i2, j3) == 0 && m2(i1, j2, i2, j3) == 0;
      const bool in_p2 = mu0 && m2(i1, j1, i3, j2) == 0 && m2(i2, j1, i3, j2) == 0;
      ++rep.checked;
      if (in_locus != (in_p1 || in_p2)) {
        rep.ok = false;
        std::ostringstream msg;
        msg << "decomposition fails at point";
        for (auto v : x) msg << ' ' << v;
        rep.failure = msg.str();
        return rep;
      }
      // Intermediate identity from the localization step:
      // V(mu, D^{j2j3}) = V(mu, D^{j1j3}, D^{j2j3}) u V(x_{i1j2}, x_{i2j2})
      const bool lhs = mu0 && m2(i1, j2, i2, j3) == 0;
      const bool rhs = (mu0 && m2(i1, j1, i2, j3) == 0 && m2(i1, j2, i2, j3) == 0) ||
                       (x[3 * i1 + j2] == 0 && x[3 * i2 + j2] == 0);
      if (lhs != rhs) {
        rep.ok = false;
        std::ostringstream msg;
        msg << "two-component identity fails at point";
        for (auto v : x) msg << ' ' << v;
        rep.failure = msg.str();
        return rep;
      }
      int pos = 9;
      while (--pos >= 0) {
        if (++x[pos] < q) break;
        x[pos] = 0;
      }
      if (pos < 0) break;
    }
  }
  return rep;
}

VerifyReport verify_m2_overlapping2(std::uint32_t q) {
  if (q > 7) throw std::invalid_argument("verify_m2_overlapping2: q too large for a 6-variable scan");
  PrimeModulus mod(q);
  VerifyReport rep;
  // Variables (u61, u62, u63, u71, u72, u73) = (x0 .. x5).
  std::uint32_t x[6] = {0, 0, 0, 0, 0, 0};
  bool p1_proper = false, p2_proper = false;
  for (;;) {
    const std::uint32_t g1 = sub_mod(mul_mod(x[0], x[4], q), mul_mod(x[1], x[3], q), q);
    const std::uint32_t g2 = sub_mod(mul_mod(x[1], x[5], q), mul_mod(x[2], x[4], q), q);
    const std::uint32_t g3 = sub_mod(mul_mod(x[0], x[5], q), mul_mod(x[2], x[3], q), q);
    const bool in_locus = (g1 == 0 && g2 == 0);
    const bool in_p1 = (g1 == 0 && g2 == 0 && g3 == 0);
    const bool in_p2 = (x[1] == 0 && x[4] == 0);
    ++rep.checked;
    if (in_locus != (in_p1 || in_p2)) {
      rep.ok = false;
      std::ostringstream msg;
      msg << "decomposition fails at point";
      for (auto v : x) msg << ' ' << v;
      rep.failure = msg.str();
      return rep;
    }
    if (in_p1 && !in_p2) p1_proper = true;
    if (in_p2 && !in_p1) p2_proper = true;
    int pos = 6;
    while (--pos >= 0) {
      if (++x[pos] < q) break;
      x[pos] = 0;
    }
    if (pos < 0) break;
  }
  if (!p1_proper || !p2_proper) {
    rep.ok = false;
    rep.failure = "one candidate component contains the other";
  }
  return rep;
}

namespace {

// Fixed data of the worked 5x5 example: coordinate subsets chosen to vanish
// on the column side and on the row side.
const std::vector<std::vector<int>> kN5ColVanish = {
    {1, 2, 4}, {1, 2, 5}, {1, 4, 5}, {2, 3, 5}, {2, 4, 5}, {3, 4, 5}};
const std::vector<std::vector<int>> kN5RowVanish = {
    {1, 2, 3}, {1, 3, 4}, {1, 3, 5}, {2, 3, 4}};

SimpleGraph n5_expected_col_graph(bool b41_branch) {
  // Forced edges: complements of the six chosen subsets plus the branch edge.
  SimpleGraph g = SimpleGraph::from_edges(
      5, {{3, 5}, {3, 4}, {2, 3}, {1, 4}, {1, 3}, {1, 2}});
  if (b41_branch) g.add_edge(1, 5);  // coordinate {2,3,4} = b41 vanishes
  else g.add_edge(2, 4);             // coordinate {1,3,5} = -b52 vanishes
  return g;
}

SimpleGraph n5_expected_row_graph() {
  // The four chosen subsets plus the two forced ones {2,3,5}, {3,4,5}.
  return SimpleGraph::from_edges(5, {{4, 5}, {2, 5}, {2, 4}, {1, 5}, {1, 4}, {1, 2}});
}

}  // namespace

VerifyReport verify_n5_example(std::uint32_t q, int samples, std::uint64_t seed) {
  PrimeModulus mod(q);
  VerifyReport rep;
  auto fail = [&](const std::string& why) {
    rep.ok = false;
    rep.failure = why;
    return rep;
  };

  // The chosen vanishing indices partition the ten 3-subsets of {1..5}.
  {
    SubsetIndexer idx(5, 3);
    std::vector<bool> seen(idx.size(), false);
    for (const auto& s : kN5ColVanish) seen[idx.index_of(s)] = true;
    for (const auto& s : kN5RowVanish) {
      const std::size_t k = idx.index_of(s);
      if (seen[k]) return fail("vanishing index sets overlap");
      seen[k] = true;
    }
    if (std::count(seen.begin(), seen.end(), true) != 10)
      return fail("vanishing index sets do not cover all 3-subsets");
  }

  // Forced-vanishing implications, checked identically over F_q.
  for (std::uint32_t b41 = 0; b41 < q; ++b41)
    for (std::uint32_t b42 = 0; b42 < q; ++b42)
      for (std::uint32_t b52 = 0; b52 < q; ++b52) {
        const std::uint32_t b51 = 0;
        const std::uint32_t e =
            sub_mod(mul_mod(b42, b51, q), mul_mod(b41, b52, q), q);
        if (b51 == 0 && e == 0 && b41 != 0 && b52 != 0)
          return fail("b-side forced vanishing fails");
      }
  for (std::uint32_t c15 = 0; c15 < q; ++c15)
    for (std::uint32_t c25 = 0; c25 < q; ++c25)
      for (std::uint32_t c35 = 0; c35 < q; ++c35) {
        const std::uint32_t c13 = 0, c23 = 0, c33 = 0;
        const std::uint32_t m1 = sub_mod(mul_mod(c15, c33, q), mul_mod(c13, c35, q), q);
        const std::uint32_t m2 = sub_mod(mul_mod(c13, c25, q), mul_mod(c15, c23, q), q);
        if (m1 != 0 || m2 != 0) return fail("c-side forced vanishing fails");
      }

  std::mt19937_64 rng(seed);
  auto rand_fq = [&] { return static_cast<std::uint32_t>(rng() % q); };

  const SimpleGraph row_expected = n5_expected_row_graph();
  auto run_sample = [&](bool b41_branch, bool generic) -> std::string {
    // b43 = b53 = b51 = 0 and c13 = c23 = c33 = 0 throughout; the branch
    // kills b41 or b52.
    std::uint32_t b41 = 0, b42 = 0, b52 = 0;
    std::uint32_t c15 = 0, c25 = 0, c35 = 0;
    if (generic) {
      b42 = 1;
      c15 = c25 = c35 = 1;
      (b41_branch ? b52 : b41) = 1;
    } else {
      b42 = rand_fq();
      c15 = rand_fq();
      c25 = rand_fq();
      c35 = rand_fq();
      (b41_branch ? b52 : b41) = rand_fq();
    }
    ExactMatrix b(5, 3, mod);
    b.set(0, 0, 1);
    b.set(1, 1, 1);
    b.set(2, 2, 1);
    b.set(3, 0, b41);
    b.set(3, 1, b42);
    b.set(4, 1, b52);
    ExactMatrix c(3, 5, mod);
    c.set(0, 0, 1);
    c.set(1, 1, 1);
    c.set(2, 3, 1);
    c.set(0, 4, c15);
    c.set(1, 4, c25);
    c.set(2, 4, c35);
    ExactMatrix core(3, 3, mod);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) core.set(i, j, rand_fq());
    } while (det(core).is_zero());

    const ExactMatrix a = b * core * c;
    if (rank(a) != 3) return "sampled matrix does not have rank 3";
    for (const auto& [s, v] : principal_minors(a, 3))
      if (!v.is_zero()) return "a principal 3-minor does not vanish";

    const SimpleGraph col_graph = graph_of_point(plucker_of_columns(b));
    const SimpleGraph row_graph = graph_of_point(plucker_of_rows(c));
    const SimpleGraph col_expected = n5_expected_col_graph(b41_branch);
    if (generic) {
      if (!(col_graph == col_expected)) return "generic column graph mismatch";
      if (!(row_graph == row_expected)) return "generic row graph mismatch";
    } else {
      // Random parameters may kill further coordinates: containment only.
      if ((col_expected.edge_mask() & ~col_graph.edge_mask()) != 0)
        return "column graph misses a forced edge";
      if ((row_expected.edge_mask() & ~row_graph.edge_mask()) != 0)
        return "row graph misses a forced edge";
    }
    if (!is_permissible(col_graph) || !is_permissible(row_graph))
      return "a sampled vanishing-pattern graph is not permissible";
    return {};
  };

  // Exact generic witnesses for both branches, then random sampling.
  for (bool branch : {true, false}) {
    if (auto why = run_sample(branch, true); !why.empty()) return fail(why);
    ++rep.checked;
  }
  for (int k = 0; k < samples; ++k) {
    if (auto why = run_sample((rng() & 1) != 0, false); !why.empty()) return fail(why);
    ++rep.checked;
  }

  // Degenerate member: all free parameters zero.
  {
    ExactMatrix b(5, 3, mod);
    b.set(0, 0, 1);
    b.set(1, 1, 1);
    b.set(2, 2, 1);
    ExactMatrix c(3, 5, mod);
    c.set(0, 0, 1);
    c.set(1, 1, 1);
    c.set(2, 3, 1);
    ExactMatrix core(3, 3, mod);
    do {
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) core.set(i, j, rand_fq());
    } while (det(core).is_zero());
    const ExactMatrix a = b * core * c;
    if (rank(a) != 3) return fail("degenerate member does not have rank 3");
    for (const auto& [s, v] : principal_minors(a, 3))
      if (!v.is_zero()) return fail("degenerate member has a nonzero principal minor");
    ++rep.checked;
  }
  return rep;
}

VerifyReport verify_jacobi_random(int n, std::uint32_t q, int samples, std::uint64_t seed) {
  if (n < 2 || n > 8) throw std::invalid_argument("verify_jacobi_random: need 2 <= n <= 8");
  PrimeModulus mod(q);
  VerifyReport rep;
  std::mt19937_64 rng(seed);
  for (int k = 0; k < samples; ++k) {
    ExactMatrix a(n, n, mod);
    do {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) a.set(i, j, static_cast<std::uint32_t>(rng() % q));
    } while (det(a).is_zero());
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      if (!jacobi_complementary_minor_check(a, IndexSet::from_mask(n, mask))) {
        rep.ok = false;
        rep.failure = "jacobi identity fails:\n" + format_matrix(a);
        return rep;
      }
      ++rep.checked;
    }
  }
  return rep;
}

VerifyReport verify_jacobi_exhaustive_3x3(std::uint32_t q) {
  if (q > 5) throw std::invalid_argument("verify_jacobi_exhaustive_3x3: q too large");
  PrimeModulus mod(q);
  VerifyReport rep;
  std::vector<std::int64_t> e(9, 0);
  for (;;) {
    ExactMatrix a = ExactMatrix::from_ints(3, 3, mod, e);
    if (!det(a).is_zero()) {
      for (std::uint32_t mask = 0; mask < 8u; ++mask) {
        if (!jacobi_complementary_minor_check(a, IndexSet::from_mask(3, mask))) {
          rep.ok = false;
          rep.failure = "jacobi identity fails:\n" + format_matrix(a);
          return rep;
        }
        ++rep.checked;
      }
    }
    int pos = 9;
    while (--pos >= 0) {
      if (++e[pos] < q) break;
      e[pos] = 0;
    }
    if (pos < 0) break;
  }
  return rep;
}

VerifyReport verify_points_permissible(int n, std::uint32_t q, std::uint64_t budget) {
  PrimeModulus mod(q);
  VerifyReport rep;
  enumerate_grassmannian(n, n - 2, mod, budget, [&](const PluckerVector& v) {
    if (!rep.ok) return;
    if (!is_permissible(graph_of_point(v))) {
      rep.ok = false;
      rep.failure = "point with non-permissible graph: " + plucker_to_json(v);
    }
    ++rep.checked;
  });
  return rep;
}

VerifyReport verify_var_decomposition(int n, std::uint32_t q, int max_edges,
                                      std::uint64_t budget) {
  if (n < 3 || n > 6) throw std::invalid_argument("verify_var_decomposition: need 3 <= n <= 6");
  PrimeModulus mod(q);
  VerifyReport rep;
  const int nedges = n * (n - 1) / 2;

  std::vector<std::uint64_t> point_masks;
  enumerate_grassmannian(n, n - 2, mod, budget, [&](const PluckerVector& v) {
    point_masks.push_back(graph_of_point(v).edge_mask());
  });

  for (std::uint64_t emask = 0; emask < (std::uint64_t(1) << nedges); ++emask) {
    if (std::popcount(emask) > max_edges) continue;
    const SimpleGraph base = SimpleGraph::from_edge_mask(n, emask);
    const auto components = minimal_permissible_supergraphs(base.edges(), n);
    std::vector<std::uint64_t> comp_masks;
    comp_masks.reserve(components.size());
    for (const auto& g : components) comp_masks.push_back(g.edge_mask());
    for (std::uint64_t pm : point_masks) {
      const bool lhs = (emask & ~pm) == 0;
      bool rhs = false;
      for (std::uint64_t cm : comp_masks)
        if ((cm & ~pm) == 0) { rhs = true; break; }
      if (lhs != rhs) {
        rep.ok = false;
        std::ostringstream msg;
        msg << "stratum union mismatch for edge mask " << emask;
        rep.failure = msg.str();
        return rep;
      }
    }
    ++rep.checked;
  }
  return rep;
}

std::uint32_t eval_poly(const Poly& p, const std::uint32_t* point, std::uint32_t q) {
  std::uint32_t acc = 0;
  for (const Monomial& m : p) {
    std::uint32_t term = reduce_mod(m.coeff, q);
    for (int v : m.vars) term = mul_mod(term, point[v], q);
    acc = add_mod(acc, term, q);
  }
  return acc;
}

bool all_vanish(const std::vector<Poly>& polys, const std::uint32_t* point, std::uint32_t q) {
  for (const Poly& p : polys)
    if (eval_poly(p, point, q) != 0) return false;
  return true;
}

void for_each_affine_point(int vars, std::uint32_t q,
                           const std::function<void(const std::uint32_t*)>& fn) {
  std::vector<std::uint32_t> x(vars, 0);
  for (;;) {
    fn(x.data());
    int pos = vars;
    while (--pos >= 0) {
      if (++x[pos] < q) break;
      x[pos] = 0;
    }
    if (pos < 0) break;
  }
}

std::uint64_t vanishing_count(const VanishingLocusSpec& spec) {
  std::uint64_t count = 0;
  for_each_affine_point(spec.vars, spec.q, [&](const std::uint32_t* pt) {
    if (all_vanish(spec.constraints, pt, spec.q)) ++count;
  });
  return count;
}

// --- serialization ----------------------------------------------------------

namespace {

std::string rank_field(int r) {
  return r == kRankAny ? std::string("\"any\"") : std::to_string(r);
}

}  // namespace

std::string census_record_to_json(const CensusRecord& rec) {
  std::ostringstream out;
  out << "{\"n\":" << rec.spec.n << ",\"r\":" << rank_field(rec.spec.r)
      << ",\"t\":" << rec.spec.t << ",\"q\":" << rec.spec.q << ",\"count\":\"" << rec.count
      << "\",\"method\":\"" << rec.method << "\",\"elapsed_ms\":" << rec.elapsed_ms << "}";
  return out.str();
}

std::string census_records_to_json(const std::vector<CensusRecord>& recs) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (i) out << ",";
    out << "\n  " << census_record_to_json(recs[i]);
  }
  out << "\n]\n";
  return out.str();
}

std::string census_records_to_csv(const std::vector<CensusRecord>& recs) {
  std::ostringstream out;
  out << "n,r,t,q,count,method,elapsed_ms\n";
  for (const auto& rec : recs) {
    out << rec.spec.n << ',' << (rec.spec.r == kRankAny ? "any" : std::to_string(rec.spec.r))
        << ',' << rec.spec.t << ',' << rec.spec.q << ',' << rec.count << ',' << rec.method
        << ',' << rec.elapsed_ms << '\n';
  }
  return out.str();
}

std::vector<CensusRecord> census_records_from_json(const std::string& text) {
  const nlohmann::json doc = nlohmann::json::parse(text);
  if (!doc.is_array()) throw std::invalid_argument("census records: expected a JSON array");
  std::vector<CensusRecord> out;
  for (const auto& item : doc) {
    CensusRecord rec;
    rec.spec.n = item.at("n").get<int>();
    if (item.at("r").is_string()) {
      if (item.at("r").get<std::string>() != "any")
        throw std::invalid_argument("census records: bad rank field");
      rec.spec.r = kRankAny;
    } else {
      rec.spec.r = item.at("r").get<int>();
    }
    rec.spec.t = item.at("t").get<int>();
    rec.spec.q = item.at("q").get<std::uint32_t>();
    rec.count = std::stoull(item.at("count").get<std::string>());
    rec.method = item.at("method").get<std::string>();
    rec.elapsed_ms = item.at("elapsed_ms").get<std::int64_t>();
    out.push_back(std::move(rec));
  }
  return out;
}

}  // namespace pmi
