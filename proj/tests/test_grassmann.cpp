#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>
#include <unordered_map>

#include "pmi/grassmann.hpp"

using namespace pmi;

namespace {

ExactMatrix random_matrix(int rows, int cols, PrimeModulus q, std::mt19937_64& rng) {
  ExactMatrix m(rows, cols, q);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m.set(i, j, static_cast<std::uint32_t>(rng() % q.value()));
  return m;
}

ExactMatrix random_invertible(int n, PrimeModulus q, std::mt19937_64& rng) {
  for (;;) {
    ExactMatrix m = random_matrix(n, n, q, rng);
    if (!det(m).is_zero()) return m;
  }
}

}  // namespace

TEST_CASE("subset indexer is a lex-ordered bijection") {
  SubsetIndexer idx(5, 3);
  CHECK(idx.size() == 10);
  CHECK(idx.subset_at(0) == std::vector<int>{1, 2, 3});
  CHECK(idx.subset_at(1) == std::vector<int>{1, 2, 4});
  CHECK(idx.subset_at(9) == std::vector<int>{3, 4, 5});
  for (std::size_t k = 0; k < idx.size(); ++k)
    CHECK(idx.index_of_mask(idx.mask_at(k)) == k);
  CHECK_THROWS_AS(idx.index_of_mask(0b11u), std::invalid_argument);
}

TEST_CASE("plucker of columns: coordinate points and a frozen example") {
  PrimeModulus q2(2);
  SUBCASE("coordinate point") {
    // e_1, e_2 columns of I_4: only the {1,2} coordinate survives.
    ExactMatrix b = ExactMatrix::from_ints(4, 2, q2, {1, 0, 0, 1, 0, 0, 0, 0});
    PluckerVector v = plucker_of_columns(b);
    CHECK(v.coords() == std::vector<std::uint32_t>{1, 0, 0, 0, 0, 0});
  }
  SUBCASE("hand-evaluated 4x2 example") {
    // rows (1,0),(0,1),(1,1),(0,0): the six 2x2 minors, in lex order of the
    // row pairs {12},{13},{14},{23},{24},{34}, are 1,1,0,1,0,0.
    ExactMatrix b = ExactMatrix::from_ints(4, 2, q2, {1, 0, 0, 1, 1, 1, 0, 0});
    PluckerVector v = plucker_of_columns(b);
    CHECK(v.coords() == std::vector<std::uint32_t>{1, 1, 0, 1, 0, 0});
  }
  SUBCASE("rank deficiency is an error") {
    ExactMatrix b = ExactMatrix::from_ints(4, 2, q2, {1, 1, 1, 1, 0, 0, 0, 0});
    CHECK_THROWS_AS(plucker_of_columns(b), std::domain_error);
  }
}

TEST_CASE("plucker vectors are projective: right multiplication is invisible") {
  std::mt19937_64 rng(31);
  PrimeModulus q7(7);
  for (int rep = 0; rep < 30; ++rep) {
    ExactMatrix b = random_matrix(5, 3, q7, rng);
    if (rank(b) < 3) continue;
    ExactMatrix g = random_invertible(3, q7, rng);
    CHECK(plucker_of_columns(b) == plucker_of_columns(b * g));
  }
}

TEST_CASE("plucker of rows matches transpose duality") {
  std::mt19937_64 rng(37);
  PrimeModulus q5(5);
  ExactMatrix id = ExactMatrix::identity(4, q5);
  ExactMatrix c = ExactMatrix::from_ints(2, 4, q5, {1, 0, 0, 0, 0, 1, 0, 0});
  PluckerVector v = plucker_of_rows(c);
  CHECK(v.coords()[0] == 1);
  for (std::size_t k = 1; k < v.coords().size(); ++k) CHECK(v.coords()[k] == 0);

  for (int rep = 0; rep < 30; ++rep) {
    ExactMatrix b = random_matrix(5, 2, q5, rng);
    if (rank(b) < 2) continue;
    CHECK(plucker_of_rows(transpose(b)) == plucker_of_columns(b));
    ExactMatrix g = random_invertible(2, q5, rng);
    CHECK(plucker_of_rows(g * transpose(b)) == plucker_of_rows(transpose(b)));
  }
}

TEST_CASE("normalization") {
  PrimeModulus q5(5);
  SUBCASE("frozen 3x2 example") {
    ExactMatrix b = ExactMatrix::from_ints(3, 2, q5, {2, 0, 0, 2, 1, 1});
    ExactMatrix bn = normalize_columns(b, IndexSet(3, {1, 2}));
    CHECK(bn == ExactMatrix::from_ints(3, 2, q5, {1, 0, 0, 1, 3, 3}));
  }
  SUBCASE("already normalized is a fixed point; unique over column moves") {
    std::mt19937_64 rng(41);
    for (int rep = 0; rep < 30; ++rep) {
      ExactMatrix b = random_matrix(5, 2, q5, rng);
      IndexSet i_set(5, {1, 3});
      if (det(b.submatrix(i_set, IndexSet::full(2))).is_zero()) continue;
      ExactMatrix bn = normalize_columns(b, i_set);
      CHECK(normalize_columns(bn, i_set) == bn);
      ExactMatrix g = random_invertible(2, q5, rng);
      CHECK(normalize_columns(b * g, i_set) == bn);
      CHECK(plucker_of_columns(bn) == plucker_of_columns(b));
    }
  }
  SUBCASE("singular block is an error") {
    ExactMatrix b = ExactMatrix::from_ints(3, 2, q5, {1, 2, 2, 4, 0, 1});
    CHECK_THROWS_AS(normalize_columns(b, IndexSet(3, {1, 2})), std::domain_error);
  }
}

TEST_CASE("factor: identity, rank one, and exhaustive rank-2 4x4 over F_2") {
  PrimeModulus q2(2), q5(5);
  SUBCASE("identity") {
    ExactMatrix id = ExactMatrix::identity(3, q5);
    Factorization f = factor(id, 3);
    CHECK(f.left == id);
    CHECK(f.core == id);
    CHECK(f.right == id);
    CHECK(f.i_set == IndexSet::full(3));
    CHECK(f.j_set == IndexSet::full(3));
  }
  SUBCASE("rank-one outer product") {
    // u v^T with u = (0,2,1), v = (0,3,4) over F_5
    ExactMatrix a = ExactMatrix::from_ints(3, 3, q5, {0, 0, 0, 0, 6, 8, 0, 3, 4});
    Factorization f = factor(a, 1);
    CHECK(f.i_set == IndexSet(3, {2}));
    CHECK(f.j_set == IndexSet(3, {2}));
    CHECK(f.core.value_at(0, 0) == 1);  // 2*3 mod 5
    CHECK(f.left * f.core * f.right == a);
  }
  SUBCASE("round-trip over every rank-2 4x4 matrix over F_2") {
    int seen = 0;
    for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
      std::vector<std::int64_t> e(16);
      for (int k = 0; k < 16; ++k) e[k] = bits >> k & 1;
      ExactMatrix a = ExactMatrix::from_ints(4, 4, q2, e);
      if (rank(a) != 2) continue;
      ++seen;
      Factorization f = factor(a, 2);
      CHECK(f.left * f.core * f.right == a);
      CHECK(!det(f.core).is_zero());
      CHECK(f.left.submatrix(f.i_set, IndexSet::full(2)) == ExactMatrix::identity(2, q2));
      CHECK(f.right.submatrix(IndexSet::full(2), f.j_set) == ExactMatrix::identity(2, q2));
    }
    // |Grass(2,4)(F_2)|^2 * |GL(2,2)| = 35 * 35 * 6
    CHECK(seen == 7350);
  }
  SUBCASE("rank mismatch is an error") {
    CHECK_THROWS_AS(factor(ExactMatrix::identity(3, q5), 2), std::domain_error);
  }
}

TEST_CASE("theta: invariances and exhaustive fibre count") {
  PrimeModulus q2(2), q5(5);
  SUBCASE("identity maps to the top coordinate points") {
    auto [colp, rowp] = theta(ExactMatrix::identity(4, q5), 4);
    CHECK(colp.coords() == std::vector<std::uint32_t>{1});
    CHECK(rowp.coords() == std::vector<std::uint32_t>{1});
  }
  SUBCASE("column space is invariant under right multiplication") {
    std::mt19937_64 rng(43);
    for (int rep = 0; rep < 20; ++rep) {
      ExactMatrix a = random_matrix(4, 4, q5, rng);
      const int r = rank(a);
      if (r == 0) continue;
      ExactMatrix g1 = random_invertible(4, q5, rng);
      ExactMatrix g2 = random_invertible(4, q5, rng);
      CHECK(theta(g1 * a * g2, r).first == theta(g1 * a, r).first);
    }
  }
  SUBCASE("every fibre over a reachable pair has exactly |GL(2,2)| = 6 matrices") {
    std::map<std::pair<std::vector<std::uint32_t>, std::vector<std::uint32_t>>, int> fibre;
    for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
      std::vector<std::int64_t> e(16);
      for (int k = 0; k < 16; ++k) e[k] = bits >> k & 1;
      ExactMatrix a = ExactMatrix::from_ints(4, 4, q2, e);
      if (rank(a) != 2) continue;
      auto [colp, rowp] = theta(a, 2);
      ++fibre[{colp.coords(), rowp.coords()}];
    }
    CHECK(fibre.size() == 35 * 35);
    for (const auto& [key, count] : fibre) CHECK(count == 6);
  }
}

TEST_CASE("grassmannian enumeration counts match gaussian binomials") {
  CHECK(gaussian_binomial(2, 1, 2) == 3);
  CHECK(gaussian_binomial(4, 2, 2) == 35);
  CHECK(gaussian_binomial(5, 3, 2) == 155);
  // 1 + q + 2q^2 + 2q^3 + 2q^4 + q^5 + q^6 at q = 3
  CHECK(gaussian_binomial(5, 2, 3) == 1210);

  for (int n = 2; n <= 5; ++n)
    for (int r = 1; r <= n; ++r)
      for (std::uint32_t q : {2u, 3u}) {
        std::uint64_t count = 0;
        std::set<std::vector<std::uint32_t>> distinct;
        enumerate_grassmannian(n, r, PrimeModulus(q), std::uint64_t(1) << 30,
                               [&](const PluckerVector& v) {
                                 ++count;
                                 distinct.insert(v.coords());
                               });
        CHECK(count == gaussian_binomial(n, r, q));
        CHECK(distinct.size() == count);  // one canonical vector per subspace
      }
}

TEST_CASE("enumeration respects the budget") {
  CHECK_THROWS_AS(grassmannian_points(5, 2, PrimeModulus(3), 10), BudgetExceeded);
  try {
    grassmannian_points(4, 2, PrimeModulus(2), 10);
    FAIL("expected BudgetExceeded");
  } catch (const BudgetExceeded& e) {
    CHECK(e.projected == 35);
  }
}

TEST_CASE("canonical form: lex-first nonzero coordinate is one") {
  PrimeModulus q7(7);
  std::mt19937_64 rng(47);
  for (int rep = 0; rep < 40; ++rep) {
    ExactMatrix b = random_matrix(5, 2, q7, rng);
    if (rank(b) < 2) continue;
    PluckerVector v = plucker_of_columns(b);
    std::size_t lead = 0;
    while (lead < v.coords().size() && v.coords()[lead] == 0) ++lead;
    REQUIRE(lead < v.coords().size());
    CHECK(v.coords()[lead] == 1);
  }
  CHECK_THROWS_AS(PluckerVector(4, 2, q7, std::vector<std::uint32_t>(6, 0)),
                  std::invalid_argument);
}

TEST_CASE("componentwise product vanishing") {
  PrimeModulus q2(2);
  std::vector<std::uint32_t> e1{1, 0, 0, 0, 0, 0}, e2{0, 1, 0, 0, 0, 0};
  PluckerVector a(4, 2, q2, e1), b(4, 2, q2, e2);
  CHECK(!componentwise_product_vanishes(a, a));
  SUBCASE("different coordinate points") {
    // {1,2} and {3,4} are disjoint supports
    std::vector<std::uint32_t> e3{0, 0, 0, 0, 0, 1};
    PluckerVector c(4, 2, q2, e3);
    CHECK(componentwise_product_vanishes(a, c));
  }
  SUBCASE("indexer mismatch") {
    std::vector<std::uint32_t> e4{1, 0, 0, 0, 0, 0, 0, 0, 0, 0};
    PluckerVector c(5, 2, q2, e4);
    CHECK_THROWS_AS(componentwise_product_vanishes(a, c), std::invalid_argument);
  }
}

TEST_CASE("principal-minor vanishing equals componentwise vanishing of theta, exhaustively") {
  // Every rank-2 4x4 matrix over F_2.
  PrimeModulus q2(2);
  for (std::uint32_t bits = 0; bits < (1u << 16); ++bits) {
    std::vector<std::int64_t> e(16);
    for (int k = 0; k < 16; ++k) e[k] = bits >> k & 1;
    ExactMatrix a = ExactMatrix::from_ints(4, 4, q2, e);
    if (rank(a) != 2) continue;
    bool all_vanish = true;
    for (const auto& [s, v] : principal_minors(a, 2))
      if (!v.is_zero()) { all_vanish = false; break; }
    auto [colp, rowp] = theta(a, 2);
    CHECK(all_vanish == componentwise_product_vanishes(colp, rowp));
  }
}

TEST_CASE("enumerated points satisfy the quadratic relations; junk vectors fail") {
  for (auto [n, r, q] : {std::tuple<int, int, std::uint32_t>{4, 2, 2},
                         {4, 2, 3},
                         {5, 2, 2},
                         {5, 3, 2}}) {
    enumerate_grassmannian(n, r, PrimeModulus(q), std::uint64_t(1) << 30,
                           [&](const PluckerVector& v) {
                             CHECK(satisfies_plucker_relations(v));
                           });
  }
  // p12 = p34 = 1, rest 0 violates p12 p34 - p13 p24 + p14 p23 = 0 over F_3.
  PluckerVector bad(4, 2, PrimeModulus(3), {1, 0, 0, 0, 0, 1});
  CHECK(!satisfies_plucker_relations(bad));
}

TEST_CASE("support multisets are complement-dual between Grass(r,n) and Grass(n-r,n)") {
  auto support_multiset = [](int n, int r, std::uint32_t q, bool complement_indices) {
    SubsetIndexer idx(n, r);
    const std::uint32_t full = (1u << n) - 1;
    SubsetIndexer co_idx(n, n - r);
    std::map<std::uint64_t, int> multiset;
    enumerate_grassmannian(n, r, PrimeModulus(q), std::uint64_t(1) << 30,
                           [&](const PluckerVector& v) {
                             std::uint64_t supp = 0;
                             for (std::size_t k = 0; k < idx.size(); ++k) {
                               if (v.coords()[k] == 0) continue;
                               if (complement_indices)
                                 supp |= std::uint64_t(1)
                                         << co_idx.index_of_mask(full & ~idx.mask_at(k));
                               else
                                 supp |= std::uint64_t(1) << k;
                             }
                             ++multiset[supp];
                           });
    return multiset;
  };
  CHECK(support_multiset(4, 2, 2, false) == support_multiset(4, 2, 2, true));
  CHECK(support_multiset(5, 2, 2, false) == support_multiset(5, 3, 2, true));
  CHECK(support_multiset(5, 3, 2, false) == support_multiset(5, 2, 2, true));
}

TEST_CASE("plucker JSON serialization") {
  PrimeModulus q3(3);
  PluckerVector v(4, 2, q3, {1, 2, 0, 0, 1, 0});
  CHECK(plucker_to_json(v) == "{\"n\":4,\"r\":2,\"q\":3,\"coords\":[1,2,0,0,1,0]}");
}

TEST_CASE("gl_order") {
  CHECK(gl_order(1, 2) == 1);
  CHECK(gl_order(1, 5) == 4);
  CHECK(gl_order(2, 2) == 6);
  CHECK(gl_order(2, 3) == 48);
  CHECK(gl_order(3, 3) == 11232);
  CHECK_THROWS_AS(gl_order(20, 101), std::overflow_error);
}
