#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tdga/errors.hpp"
#include "tdga/prime_field.hpp"

using namespace tdga;
using tdga::test::all_words;
using tdga::test::gen;
using tdga::test::minus_ring;
using tdga::test::naive_count;
using tdga::test::poly;
using tdga::test::random_braid;

namespace {

AugmentationProblem knot_problem(std::uint64_t p, long long lambda, long long mu) {
  return AugmentationProblem{p, {lambda}, {mu}, std::nullopt, std::nullopt};
}

}  // namespace

TEST_SUITE("augmentations") {
  TEST_CASE("prime field") {
    PrimeField f(7);
    CHECK(f.reduce(-1) == 6);
    CHECK(f.mul(f.inv(3), 3) == 1);
    CHECK(f.pow(3, 6) == 1);
    CHECK(is_prime(3));
    CHECK_FALSE(is_prime(9));
    CHECK_FALSE(is_prime(1));
  }

  TEST_CASE("unknot examples") {
    const FilteredDGA triv = build_filtered_dga(parse_braid("", 1));
    // d c = lambda + mu = 0 holds at (-1, 1); no degree-0 generators.
    CHECK(count_augmentations(specialize(triv, 0, 0), knot_problem(3, -1, 1)) == 1);
    CHECK(count_augmentations(specialize(triv, 0, 0), knot_problem(3, 1, 1)) == 0);
    // sigma_1^-1: d c11 = lambda mu^-1 is a unit.
    const FilteredDGA inv = build_filtered_dga(parse_braid("-1"));
    CHECK(count_augmentations(specialize(inv, 0, 0), knot_problem(3, -1, 1)) == 0);
  }

  TEST_CASE("problem validation") {
    const FilteredDGA hat = specialize(build_filtered_dga(parse_braid("1")), 0, 1);
    CHECK_THROWS_AS(count_augmentations(hat, knot_problem(9, 1, 1)), DomainError);
    CHECK_THROWS_AS(count_augmentations(hat, knot_problem(3, 0, 1)), DomainError);
    CHECK_THROWS_AS(count_augmentations(hat, knot_problem(3, 1, 3)), DomainError);
    CHECK_THROWS_AS(count_augmentations(hat, AugmentationProblem{3, {}, {}, {}, {}}),
                    DomainError);
    AugmentationProblem with_uv = knot_problem(3, 1, 1);
    with_uv.u = 1;
    with_uv.v = 1;
    CHECK_THROWS_AS(count_augmentations(hat, with_uv), DomainError);
    const FilteredDGA minus = build_filtered_dga(parse_braid("1"));
    CHECK_THROWS_AS(count_augmentations(minus, knot_problem(3, 1, 1)), DomainError);
    CHECK_NOTHROW(count_augmentations(minus, with_uv));
    CHECK_THROWS_AS(count_braid_augmentations(parse_braid("1"), knot_problem(3, 1, 1)),
                    DomainError);
  }

  TEST_CASE("oracle: optimized counter equals the naive evaluator on n = 2") {
    for (const auto& b : all_words(2, 5)) {
      CAPTURE(to_string(b));
      const FilteredDGA minus = build_filtered_dga(b);
      const int r = minus.ring.components;
      for (const auto& [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 0}, {1, 1}}) {
        const FilteredDGA s = specialize(minus, u, v);
        for (std::uint64_t p : {2ull, 3ull, 5ull}) {
          const std::vector<long long> lambda(r, static_cast<long long>(p) - 1), mu(r, 1);
          CHECK(count_augmentations(s, {p, lambda, mu, {}, {}}) == naive_count(s, p, lambda, mu));
        }
      }
    }
  }

  TEST_CASE("the braid-action counter agrees with the expanded DGA") {
    std::mt19937_64 rng(61);
    std::vector<BraidWord> braids{parse_braid("1"), parse_braid("-1"), parse_braid("1 1"),
                                  parse_braid("1 -2 1")};
    for (int t = 0; t < 25; ++t) braids.push_back(random_braid(rng, 2, 3, 6));
    for (const auto& b : braids) {
      CAPTURE(to_string(b));
      const FilteredDGA minus = build_filtered_dga(b);
      const int r = minus.ring.components;
      for (std::uint64_t p : {2ull, 3ull, 5ull}) {
        std::uniform_int_distribution<long long> unit(1, static_cast<long long>(p) - 1),
            any(0, static_cast<long long>(p) - 1);
        AugmentationProblem problem{p, {}, {}, any(rng), any(rng)};
        for (int j = 0; j < r; ++j) {
          problem.lambda.push_back(unit(rng));
          problem.mu.push_back(unit(rng));
        }
        CHECK(count_braid_augmentations(b, problem) == count_augmentations(minus, problem));
      }
    }
  }

  TEST_CASE("the braid-action counter on the infinity version") {
    for (const char* w : {"1", "-1", "1 -2", "-1 -1 -1", "1 2 -1 2"}) {
      CAPTURE(w);
      const BraidWord b = parse_braid(w);
      const FilteredDGA inf = infinity_dga(b);
      for (const auto& row : count_augmentations_all_units(inf, 3)) {
        AugmentationProblem problem{3,
                                    {static_cast<long long>(row.lambda[0])},
                                    {static_cast<long long>(row.mu[0])},
                                    static_cast<long long>(*row.u),
                                    static_cast<long long>(*row.v)};
        CHECK(count_braid_augmentations_infinity(b, problem) == row.count);
      }
    }
    CHECK_THROWS_AS(count_braid_augmentations_infinity(parse_braid("1 1"),
                                                       {3, {1, 1}, {1, 1}, 1, 1}),
                    DomainError);
  }

  TEST_CASE("all-units tables") {
    const FilteredDGA hat = specialize(build_filtered_dga(parse_braid("1")), 0, 1);
    const auto rows = count_augmentations_all_units(hat, 3);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].lambda == std::vector<std::uint64_t>{1});
    CHECK(rows[0].mu == std::vector<std::uint64_t>{1});
    CHECK(rows[1].mu == std::vector<std::uint64_t>{2});
    CHECK_FALSE(rows[0].u.has_value());
    for (const auto& row : rows) {
      CHECK(row.count == count_augmentations(hat, knot_problem(3, static_cast<long long>(row.lambda[0]),
                                                               static_cast<long long>(row.mu[0]))));
    }
    const auto inf = count_augmentations_all_units(infinity_dga(parse_braid("", 1)), 3);
    CHECK(inf.size() == 16);
    CHECK(inf[0].u.has_value());
  }

  TEST_CASE("sigma_1 and the trivial braid have the same tables") {
    const FilteredDGA s1 = build_filtered_dga(parse_braid("1"));
    const FilteredDGA triv = build_filtered_dga(parse_braid("", 1));
    for (const auto& [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 0}, {1, 1}}) {
      CHECK(count_augmentations_all_units(specialize(s1, u, v), 3) ==
            count_augmentations_all_units(specialize(triv, u, v), 3));
    }
    CHECK(count_augmentations_all_units(infinity_dga(parse_braid("-1")), 3) ==
          count_augmentations_all_units(infinity_dga(parse_braid("", 1)), 3));
    // Double hat separates the two unknots.
    CHECK(count_augmentations_all_units(specialize(build_filtered_dga(parse_braid("-1")), 0, 0),
                                        3)[2]
              .count == 0);
    CHECK(count_augmentations_all_units(specialize(triv, 0, 0), 3)[2].count == 1);
  }

  TEST_CASE("counts are invariant under the sigma_1 tame sequence") {
    const RingDescriptor r = minus_ring();
    FilteredDGA d = build_filtered_dga(parse_braid("1"));
    const std::vector<std::pair<GenId, NcPoly>> steps = {
        {gen("c12"), poly(r, {{"1", "c12"}, {"-1*m1^-1", "c11"}})},
        {gen("a21"), poly(r, {{"1", "a21"}, {"-1*V + -1*m1^-1", ""}})},
        {gen("a12"), poly(r, {{"1", "a12"}, {"l1 + l1*m1*V", ""}})},
        {gen("b21"), poly(r, {{"1", "b21"}, {"m1^-1", "c11"}, {"-1*l1", "c22"}})},
    };
    auto table = [](const FilteredDGA& x) {
      std::vector<std::uint64_t> counts;
      for (auto [u, v] : std::vector<std::pair<int, int>>{{0, 1}, {0, 0}, {1, 1}, {1, 2}}) {
        for (long long lambda : {1, 2}) {
          for (long long mu : {1, 2}) {
            counts.push_back(count_augmentations(x, {3, {lambda}, {mu}, u, v}));
          }
        }
      }
      return counts;
    };
    const auto before = table(d);
    for (const auto& [g, image] : steps) {
      d = apply_tame_substitution(d, g, image);
      CHECK(table(d) == before);
    }
  }

  TEST_CASE("counts do not depend on generator order") {
    FilteredDGA d = specialize(build_filtered_dga(parse_braid("1 -2 1")), 0, 1);
    const auto forward = count_augmentations_all_units(d, 3);
    std::reverse(d.generators.begin(), d.generators.end());
    CHECK(count_augmentations_all_units(d, 3) == forward);
    CHECK(count_augmentations_all_units(d, 3, 1) == forward);
  }

  TEST_CASE("degree-2 differentials vanish under every augmentation") {
    const FilteredDGA d = build_filtered_dga(parse_braid("1 2 -1"));
    for (const auto& g : d.generators) {
      if (g.degree() != 2) continue;
      for (const auto& [w, c] : d.d(g).terms()) {
        int positive = 0;
        for (const auto& h : w) positive += h.degree() > 0;
        CHECK(positive == 1);
      }
    }
  }
}
