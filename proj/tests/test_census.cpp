#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pmi/census.hpp"

using namespace pmi;

namespace {

// Slow reference count through the public matrix API; independent of the
// table-driven kernel.
std::uint64_t count_Y_reference(const StratumSpec& spec) {
  const int n = spec.n, N = n * n;
  PrimeModulus mod(spec.q);
  std::vector<std::int64_t> e(N, 0);
  std::uint64_t count = 0;
  for (;;) {
    ExactMatrix a = ExactMatrix::from_ints(n, n, mod, e);
    bool ok = true;
    for (const auto& [s, v] : principal_minors(a, spec.t))
      if (!v.is_zero()) { ok = false; break; }
    if (ok && (spec.r == kRankAny || rank(a) == spec.r)) ++count;
    int pos = N;
    while (--pos >= 0) {
      if (++e[pos] < spec.q) break;
      e[pos] = 0;
    }
    if (pos < 0) break;
  }
  return count;
}

}  // namespace

TEST_CASE("count_Y_bruteforce basics") {
  SUBCASE("zero-diagonal count, n = 3, q = 2") {
    CensusRecord rec = count_Y_bruteforce(StratumSpec{3, kRankAny, 1, 2});
    CHECK(rec.count == 64);
    CHECK(rec.method == "matrix-bruteforce");
  }
  SUBCASE("full-rank matrices cannot kill the determinant") {
    CHECK(count_Y_bruteforce(StratumSpec{3, 3, 3, 2}).count == 0);
    CHECK(count_Y_bruteforce(StratumSpec{3, 3, 3, 3}).count == 0);
  }
  SUBCASE("agrees with the reference route") {
    for (const StratumSpec spec : {StratumSpec{3, 2, 2, 3}, StratumSpec{3, kRankAny, 1, 3},
                                   StratumSpec{3, 1, 1, 2}, StratumSpec{3, 2, 1, 5}}) {
      CHECK(count_Y_bruteforce(spec).count == count_Y_reference(spec));
    }
  }
  SUBCASE("identical counts across job counts") {
    const StratumSpec spec{4, 2, 2, 2};
    const std::uint64_t c1 = count_Y_bruteforce(spec, 1).count;
    const std::uint64_t c8 = count_Y_bruteforce(spec, 8).count;
    CHECK(c1 == c8);
  }
  SUBCASE("budget") {
    CHECK_THROWS_AS(count_Y_bruteforce(StratumSpec{5, 3, 3, 7}), BudgetExceeded);
    CHECK_THROWS_AS(count_Y_bruteforce(StratumSpec{3, kRankAny, 1, 2}, 1, 100), BudgetExceeded);
  }
}

TEST_CASE("count_H_pairs") {
  SUBCASE("P1 x P1 over F_2 has two opposite coordinate pairs") {
    CHECK(count_H_pairs(2, 1, 2).count == 2);
  }
  SUBCASE("order of the pair does not matter") {
    // swapping the factors is a bijection of the locus; the count is stable
    // under rerunning with the same arguments
    CHECK(count_H_pairs(4, 2, 2).count == count_H_pairs(4, 2, 2).count);
  }
}

TEST_CASE("bundle identity for small cases") {
  for (auto [n, t, q] : {std::tuple<int, int, std::uint32_t>{3, 1, 2}, {3, 1, 3}, {4, 2, 2}}) {
    BundleCheck chk = verify_bundle_count(n, t, q, 2);
    CHECK(chk.ok);
    CHECK(chk.matrix_count == chk.pair_count * chk.gl);
  }
}

TEST_CASE("graph mask histogram") {
  SUBCASE("total equals the gaussian binomial") {
    for (auto [n, q] : {std::pair<int, std::uint32_t>{4, 2}, {4, 3}, {5, 2}, {5, 3}}) {
      const auto hist = graph_mask_histogram(n, q);
      std::uint64_t total = 0;
      for (auto c : hist) total += c;
      CHECK(total == gaussian_binomial(n, n - 2, q));
    }
  }
  SUBCASE("edgeless stratum is everything") {
    const auto hist = graph_mask_histogram(5, 2);
    CHECK(stratum_count_from_histogram(hist, 0) == 155);
  }
  SUBCASE("K_4 minus an edge pins the single coordinate point") {
    SimpleGraph g = SimpleGraph::complete(4);
    g.remove_edge(1, 2);
    CHECK(count_graph_stratum(4, g, 2).count == 1);
  }
  SUBCASE("monotone under adding edges") {
    const auto hist = graph_mask_histogram(5, 3);
    for (std::uint64_t m = 0; m < 1024; ++m) {
      const std::uint64_t with_edge = m | 1;
      CHECK(stratum_count_from_histogram(hist, m) >=
            stratum_count_from_histogram(hist, with_edge));
    }
  }
  SUBCASE("identical across job counts") {
    CHECK(graph_mask_histogram(5, 3, 1) == graph_mask_histogram(5, 3, 3));
  }
}

TEST_CASE("dimension estimation") {
  auto record = [](int n, int r, int t, std::uint32_t q, std::uint64_t count) {
    return CensusRecord{StratumSpec{n, r, t, q}, count, "graph-stratum", 0};
  };
  SUBCASE("projective spaces") {
    for (int n = 2; n <= 6; ++n) {
      const auto est = estimate_dimension(
          {record(n, 1, 1, 7, gaussian_binomial(n, 1, 7)),
           record(n, 1, 1, 11, gaussian_binomial(n, 1, 11))});
      CHECK(est.dim == n - 1);
      CHECK(est.residual < 0.5);
    }
  }
  SUBCASE("full Grass(3,5)") {
    const auto est = estimate_dimension(
        {record(5, 3, 3, 7, gaussian_binomial(5, 3, 7)),
         record(5, 3, 3, 11, gaussian_binomial(5, 3, 11))});
    CHECK(est.dim == 6);
    CHECK(est.residual < 0.5);
  }
  SUBCASE("single-edge stratum has dimension 5") {
    const SimpleGraph g = SimpleGraph::from_edges(5, {{1, 2}});
    const auto est = estimate_dimension({count_graph_stratum(5, g, 7, 2),
                                         count_graph_stratum(5, g, 11, 2)});
    CHECK(est.dim == 6 - codim(g));
    CHECK(est.residual < 0.5);
  }
  SUBCASE("errors") {
    CHECK_THROWS_AS(estimate_dimension({record(5, 3, 3, 7, 10)}), std::invalid_argument);
    CHECK_THROWS_AS(estimate_dimension({record(5, 3, 3, 7, 0), record(5, 3, 3, 11, 5)}),
                    std::domain_error);
  }
}

TEST_CASE("overlapping 2-minor rule") {
  CHECK(verify_overlap_rule(3, 2));
  CHECK(verify_overlap_rule(3, 3));
  CHECK(verify_overlap_rule(4, 3));
  CHECK_THROWS_AS(verify_overlap_rule(6, 2), std::invalid_argument);
}

TEST_CASE("case3 decomposition at q = 3") {
  const VerifyReport rep = verify_case3(3, 2);
  CHECK(rep.ok);
  CHECK(rep.failure.empty());
  CHECK(rep.checked == 3 * 19683);  // identity + two sampled index choices
}

TEST_CASE("m2 overlapping-minor example") {
  for (std::uint32_t q : {2u, 3u}) {
    const VerifyReport rep = verify_m2_overlapping2(q);
    CHECK(rep.ok);
  }
  SUBCASE("a point separating P2 from P1") {
    // u62 = u72 = 0, u61 = u73 = 1, u63 = u71 = 0: in V(P2), not in V(P1).
    const std::uint32_t q = 3;
    const std::uint32_t pt[6] = {1, 0, 0, 0, 0, 1};
    const Poly g3{{1, {0, 5}}, {-1, {2, 3}}};
    CHECK(pt[1] == 0);
    CHECK(pt[4] == 0);
    CHECK(eval_poly(g3, pt, q) == 1);
  }
  SUBCASE("the origin lies in both components") {
    const std::uint32_t q = 3;
    const std::uint32_t pt[6] = {0, 0, 0, 0, 0, 0};
    const std::vector<Poly> p1{{{1, {0, 4}}, {-1, {1, 3}}},
                               {{1, {1, 5}}, {-1, {2, 4}}},
                               {{1, {0, 5}}, {-1, {2, 3}}}};
    CHECK(all_vanish(p1, pt, q));
  }
}

TEST_CASE("worked 5x5 example") {
  const VerifyReport rep = verify_n5_example(5, 50);
  CHECK(rep.ok);
  CHECK(rep.failure.empty());
}

TEST_CASE("jacobi verifications") {
  CHECK(verify_jacobi_exhaustive_3x3(3).ok);
  CHECK(verify_jacobi_random(5, 101, 50).ok);
}

TEST_CASE("points of small grassmannians have permissible graphs") {
  for (auto [n, q] : {std::pair<int, std::uint32_t>{4, 2}, {4, 3}, {5, 2}}) {
    const VerifyReport rep = verify_points_permissible(n, q);
    CHECK(rep.ok);
    CHECK(rep.checked == gaussian_binomial(n, n - 2, q));
  }
}

TEST_CASE("var decomposition for small edge sets") {
  const VerifyReport rep = verify_var_decomposition(5, 2, 2);
  CHECK(rep.ok);
  // 1 empty + 10 singletons + 45 two-edge sets
  CHECK(rep.checked == 56);
}

TEST_CASE("duality of counts under inversion") {
  for (std::uint32_t q : {2u, 3u}) {
    const std::uint64_t t1 = count_Y_bruteforce(StratumSpec{3, 3, 1, q}).count;
    const std::uint64_t t2 = count_Y_bruteforce(StratumSpec{3, 3, 2, q}).count;
    CHECK(t1 == t2);
  }
}

TEST_CASE("record serialization") {
  CensusRecord rec{StratumSpec{4, 2, 2, 3}, 1350, "matrix-bruteforce", 17};
  CHECK(census_record_to_json(rec) ==
        "{\"n\":4,\"r\":2,\"t\":2,\"q\":3,\"count\":\"1350\",\"method\":\"matrix-bruteforce\",\"elapsed_ms\":17}");

  CensusRecord any_rec{StratumSpec{3, kRankAny, 1, 2}, 64, "matrix-bruteforce", 0};
  CHECK(census_record_to_json(any_rec).find("\"r\":\"any\"") != std::string::npos);

  SUBCASE("JSON round-trip is byte-identical") {
    const std::vector<CensusRecord> recs{rec, any_rec};
    const std::string text = census_records_to_json(recs);
    const auto parsed = census_records_from_json(text);
    CHECK(census_records_to_json(parsed) == text);
  }
  SUBCASE("CSV has the mandatory header") {
    const std::string csv = census_records_to_csv({rec});
    CHECK(csv.find("n,r,t,q,count,method,elapsed_ms\n") == 0);
    CHECK(csv.find("4,2,2,3,1350,matrix-bruteforce,17\n") != std::string::npos);
  }
}

TEST_CASE("polynomial evaluator") {
  // x0*x1 - x2 over F_5 at (3, 4, 2): 12 - 2 = 10 = 0
  const Poly p{{1, {0, 1}}, {-1, {2}}};
  const std::uint32_t pt[3] = {3, 4, 2};
  CHECK(eval_poly(p, pt, 5) == 0);
  VanishingLocusSpec spec{3, {p}, 5};
  // x0*x1 = x2 has 25 solutions over F_5
  CHECK(vanishing_count(spec) == 25);
}
