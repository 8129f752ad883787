#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "pmi/matrix.hpp"

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

// Cofactor-expansion determinant, independent of the elimination path.
FieldElement det_by_cofactors(const ExactMatrix& m) {
  const int n = m.rows();
  if (n == 1) return m.at(0, 0);
  FieldElement acc(0, m.modulus());
  std::vector<std::int64_t> sub((n - 1) * (n - 1));
  for (int j = 0; j < n; ++j) {
    int k = 0;
    for (int i2 = 1; i2 < n; ++i2)
      for (int j2 = 0; j2 < n; ++j2)
        if (j2 != j) sub[k++] = m.value_at(i2, j2);
    FieldElement term =
        m.at(0, j) * det_by_cofactors(ExactMatrix::from_ints(n - 1, n - 1, m.modulus(), sub));
    acc = (j % 2 == 0) ? acc + term : acc - term;
  }
  return acc;
}

}  // namespace

TEST_CASE("index sets") {
  IndexSet s(5, {1, 3, 4});
  CHECK(s.size() == 3);
  CHECK(s.complement().members() == std::vector<int>{2, 5});
  CHECK(s.contains(3));
  CHECK(!s.contains(2));
  CHECK_THROWS_AS(IndexSet(5, {0, 1}), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet(5, {2, 2}), std::invalid_argument);
  CHECK_THROWS_AS(IndexSet(5, {6}), std::invalid_argument);
}

TEST_CASE("rank examples") {
  PrimeModulus q2(2), q3(3);
  CHECK(rank(ExactMatrix::identity(4, q2)) == 4);
  CHECK(rank(ExactMatrix(3, 3, q3)) == 0);
  CHECK(rank(ExactMatrix::from_ints(2, 2, q2, {1, 1, 1, 1})) == 1);
}

TEST_CASE("minor examples") {
  PrimeModulus q5(5);
  ExactMatrix id3 = ExactMatrix::identity(3, q5);
  CHECK(minor_det(id3, IndexSet(3, {1, 2}), IndexSet(3, {1, 2})).value() == 1);
  CHECK(minor_det(id3, IndexSet(3, {1, 2}), IndexSet(3, {2, 3})).value() == 0);
  ExactMatrix m = ExactMatrix::from_ints(2, 2, q5, {1, 2, 3, 4});
  CHECK(minor_det(m, IndexSet(2, {1, 2}), IndexSet(2, {1, 2})).value() == 3);  // 4-6 mod 5
  CHECK_THROWS_AS(minor_det(id3, IndexSet(3, {1, 2}), IndexSet(3, {1})), std::invalid_argument);
}

TEST_CASE("determinant agrees with cofactor expansion") {
  std::mt19937_64 rng(7);
  for (std::uint32_t q : {2u, 3u, 7u}) {
    PrimeModulus m(q);
    for (int n = 1; n <= 5; ++n)
      for (int rep = 0; rep < 20; ++rep) {
        ExactMatrix a = random_matrix(n, n, m, rng);
        CHECK(det(a) == det_by_cofactors(a));
      }
  }
}

TEST_CASE("principal minors") {
  PrimeModulus q3(3);
  ExactMatrix id4 = ExactMatrix::identity(4, q3);
  for (int t = 1; t <= 4; ++t)
    for (const auto& [s, v] : principal_minors(id4, t)) CHECK(v.value() == 1);

  ExactMatrix hollow = ExactMatrix::from_ints(3, 3, q3, {0, 1, 2, 1, 0, 1, 2, 1, 0});
  for (const auto& [s, v] : principal_minors(hollow, 1)) CHECK(v.is_zero());

  auto top = principal_minors(hollow, 3);
  CHECK(top.size() == 1);
  CHECK(top.begin()->second == det(hollow));

  CHECK(principal_minors(id4, 2).size() == 6);
  CHECK_THROWS_AS(principal_minors(id4, 5), std::invalid_argument);
  CHECK_THROWS_AS(principal_minors(id4, 0), std::invalid_argument);
}

TEST_CASE("exterior power basics") {
  PrimeModulus q7(7);
  std::mt19937_64 rng(11);
  ExactMatrix a = random_matrix(4, 3, q7, rng);
  CHECK(exterior_power(a, 1) == a);

  ExactMatrix sq = random_matrix(3, 3, q7, rng);
  ExactMatrix top = exterior_power(sq, 3);
  CHECK(top.rows() == 1);
  CHECK(top.cols() == 1);
  CHECK(top.at(0, 0) == det(sq));
}

TEST_CASE("Cauchy-Binet: exterior power is multiplicative") {
  std::mt19937_64 rng(13);
  PrimeModulus q7(7);
  for (int rep = 0; rep < 25; ++rep) {
    ExactMatrix a = random_matrix(4, 3, q7, rng);
    ExactMatrix b = random_matrix(3, 4, q7, rng);
    for (int t = 1; t <= 3; ++t)
      CHECK(exterior_power(a * b, t) == exterior_power(a, t) * exterior_power(b, t));
  }
}

TEST_CASE("rank equals largest nonvanishing exterior power, exhaustive 3x3 over F_2") {
  PrimeModulus q2(2);
  for (std::uint32_t bits = 0; bits < 512; ++bits) {
    std::vector<std::int64_t> e(9);
    for (int k = 0; k < 9; ++k) e[k] = bits >> k & 1;
    ExactMatrix a = ExactMatrix::from_ints(3, 3, q2, e);
    int largest = 0;
    for (int t = 1; t <= 3; ++t) {
      const ExactMatrix w = exterior_power(a, t);
      bool nonzero = false;
      for (int i = 0; i < w.rows() && !nonzero; ++i)
        for (int j = 0; j < w.cols(); ++j)
          if (w.value_at(i, j)) { nonzero = true; break; }
      if (nonzero) largest = t;
    }
    CHECK(rank(a) == largest);
  }
}

TEST_CASE("inverse") {
  PrimeModulus q5(5), q101(101);
  CHECK(inverse(ExactMatrix::identity(4, q5)) == ExactMatrix::identity(4, q5));
  CHECK(inverse(ExactMatrix::from_ints(1, 1, q5, {2})) == ExactMatrix::from_ints(1, 1, q5, {3}));
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    ExactMatrix a = random_invertible(4, q101, rng);
    CHECK(a * inverse(a) == ExactMatrix::identity(4, q101));
    CHECK(inverse(inverse(a)) == a);
  }
  CHECK_THROWS_AS(inverse(ExactMatrix(3, 3, q5)), std::domain_error);
}

TEST_CASE("jacobi complementary minor identity") {
  PrimeModulus q101(101);
  std::mt19937_64 rng(19);

  ExactMatrix id5 = ExactMatrix::identity(5, q101);
  for (std::uint32_t mask = 0; mask < 32; ++mask)
    CHECK(jacobi_complementary_minor_check(id5, IndexSet::from_mask(5, mask)));

  ExactMatrix diag(4, 4, q101);
  diag.set(0, 0, 2);
  diag.set(1, 1, 3);
  diag.set(2, 2, 5);
  diag.set(3, 3, 7);
  for (std::uint32_t mask = 0; mask < 16; ++mask)
    CHECK(jacobi_complementary_minor_check(diag, IndexSet::from_mask(4, mask)));

  for (int n = 2; n <= 6; ++n)
    for (int rep = 0; rep < 40; ++rep) {
      ExactMatrix a = random_invertible(n, q101, rng);
      for (std::uint32_t mask = 0; mask < (1u << n); ++mask)
        CHECK(jacobi_complementary_minor_check(a, IndexSet::from_mask(n, mask)));
    }

  CHECK_THROWS_AS(jacobi_complementary_minor_check(ExactMatrix(3, 3, q101), IndexSet(3, {1})),
                  std::domain_error);
}

TEST_CASE("principal t-minor vanishing transfers to (n-t)-minors of the inverse") {
  // Exhaustive over invertible 3x3 matrices of F_3.
  PrimeModulus q3(3);
  for (std::uint32_t code = 0; code < 19683; ++code) {
    std::uint32_t c = code;
    std::vector<std::int64_t> e(9);
    for (int k = 0; k < 9; ++k) {
      e[k] = c % 3;
      c /= 3;
    }
    ExactMatrix a = ExactMatrix::from_ints(3, 3, q3, e);
    if (det(a).is_zero()) continue;
    ExactMatrix ai = inverse(a);
    for (int t = 1; t <= 2; ++t) {
      bool all_a = true, all_ai = true;
      for (const auto& [s, v] : principal_minors(a, t))
        if (!v.is_zero()) { all_a = false; break; }
      for (const auto& [s, v] : principal_minors(ai, 3 - t))
        if (!v.is_zero()) { all_ai = false; break; }
      CHECK(all_a == all_ai);
    }
  }
}

TEST_CASE("symmetry actions") {
  PrimeModulus q5(5);
  std::mt19937_64 rng(23);
  ExactMatrix m = random_matrix(4, 4, q5, rng);

  SUBCASE("identity permutation") {
    CHECK(permute_symmetric(m, {1, 2, 3, 4}) == m);
  }
  SUBCASE("pattern relabeling") {
    const std::vector<int> sigma{3, 1, 4, 2};
    ExactMatrix pm = permute_symmetric(m, sigma);
    for (int t = 1; t <= 4; ++t) {
      auto orig = principal_minors(m, t);
      auto perm = principal_minors(pm, t);
      for (const auto& [s, v] : orig) {
        std::vector<int> relabeled;
        for (int x : s.members()) relabeled.push_back(sigma[x - 1]);
        std::sort(relabeled.begin(), relabeled.end());
        CHECK(perm.at(IndexSet(4, relabeled)).is_zero() == v.is_zero());
      }
    }
  }
  SUBCASE("transpose preserves principal minors") {
    for (int t = 1; t <= 4; ++t) {
      auto a = principal_minors(m, t);
      auto b = principal_minors(transpose(m), t);
      CHECK(a == b);
    }
  }
  SUBCASE("row and column scaling preserve the vanishing pattern") {
    FieldElement lam(3, q5);
    ExactMatrix sm = scale_col(scale_row(m, 2, lam), 1, lam);
    for (int t = 1; t <= 4; ++t) {
      auto a = principal_minors(m, t);
      auto b = principal_minors(sm, t);
      for (const auto& [s, v] : a) CHECK(v.is_zero() == b.at(s).is_zero());
    }
    CHECK_THROWS_AS(scale_row(m, 0, FieldElement(0, q5)), std::invalid_argument);
  }
}

TEST_CASE("rank and principal vanishing membership is invariant under the group actions") {
  PrimeModulus q3(3);
  std::mt19937_64 rng(29);
  auto in_stratum = [](const ExactMatrix& a, int r, int t) {
    if (rank(a) != r) return false;
    for (const auto& [s, v] : principal_minors(a, t))
      if (!v.is_zero()) return false;
    return true;
  };
  for (int rep = 0; rep < 200; ++rep) {
    ExactMatrix m = random_matrix(4, 4, q3, rng);
    const int r = rank(m);
    for (int t = 1; t <= 3; ++t) {
      const bool base = in_stratum(m, r, t);
      CHECK(in_stratum(permute_symmetric(m, {2, 4, 1, 3}), r, t) == base);
      CHECK(in_stratum(transpose(m), r, t) == base);
      CHECK(in_stratum(scale_row(m, 1, FieldElement(2, q3)), r, t) == base);
      CHECK(in_stratum(scale_col(m, 3, FieldElement(2, q3)), r, t) == base);
    }
  }
}

TEST_CASE("matrix text format round-trips") {
  const std::string text = "2 3 5\n1 2 3\n4 0 2\n";
  ExactMatrix m = parse_matrix(text);
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 3);
  CHECK(m.q() == 5);
  CHECK(m.value_at(1, 0) == 4);
  CHECK(format_matrix(m) == text);
  CHECK_THROWS_AS(parse_matrix("2 2 4\n1 0\n0 1\n"), std::invalid_argument);  // q not prime
  CHECK_THROWS_AS(parse_matrix("2 2 5\n1 0\n"), std::invalid_argument);       // short
}
