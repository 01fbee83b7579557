#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tdga/errors.hpp"

using namespace tdga;
using tdga::test::coeff;
using tdga::test::minus_ring;

namespace {

CoeffPoly random_poly(std::mt19937_64& rng, RingDescriptor ring) {
  std::uniform_int_distribution<int> terms(0, 6), c(-3, 3), e(-2, 2), ue(0, 2);
  std::vector<std::pair<Exponents, Integer>> raw;
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    Exponents x(ring.size());
    for (int s = 0; s < ring.size(); ++s) x[s] = ring.invertible(s) ? e(rng) : ue(rng);
    raw.emplace_back(x, c(rng));
  }
  return CoeffPoly::normalized(ring, raw);
}

// Oracle: schoolbook product on the raw term maps.
CoeffPoly naive_product(const CoeffPoly& a, const CoeffPoly& b) {
  std::map<Exponents, Integer> acc;
  for (const auto& [ea, ca] : a.terms()) {
    for (const auto& [eb, cb] : b.terms()) {
      Exponents sum(ea.size());
      for (std::size_t s = 0; s < ea.size(); ++s) sum[s] = ea[s] + eb[s];
      acc[sum] += ca * cb;
    }
  }
  std::vector<std::pair<Exponents, Integer>> raw(acc.begin(), acc.end());
  CoeffPoly out(a.ring());
  for (const auto& [x, c] : raw) {
    if (c != 0) out += CoeffPoly::monomial(a.ring(), x, c);
  }
  return out;
}

}  // namespace

TEST_SUITE("coeff_ring") {
  TEST_CASE("arithmetic examples") {
    const RingDescriptor r = minus_ring();
    const CoeffPoly l = CoeffPoly::variable(r, Var::lambda(1));
    const CoeffPoly m = CoeffPoly::variable(r, Var::mu(1));
    const CoeffPoly one = CoeffPoly::constant(r, 1);
    CHECK((l * l.inverse()).is_one());
    CHECK((one + m) * (one + m) == coeff(r, "1 + 2*m1 + m1^2"));
    const CoeffPoly unknot = l + l * m * CoeffPoly::variable(r, Var::v()) +
                             CoeffPoly::variable(r, Var::u()) + m;
    CHECK(unknot == coeff(r, "U + l1 + l1*m1*V + m1"));
    CHECK(unknot.size() == 4);
    CHECK((unknot - unknot).is_zero());
  }

  TEST_CASE("canonical form keeps no zero coefficients") {
    const RingDescriptor r = minus_ring();
    CoeffPoly p = coeff(r, "2*m1 + -2*m1 + l1");
    CHECK(p.size() == 1);
    for (const auto& [e, c] : p.terms()) CHECK(c != 0);
  }

  TEST_CASE("polynomial mode rejects negative U, V exponents") {
    const RingDescriptor r = minus_ring();
    CHECK_THROWS_AS(CoeffPoly::variable(r, Var::u(), -1), DomainError);
    CHECK_THROWS_AS(coeff(r, "V^-1"), DomainError);
    CHECK_FALSE(CoeffPoly::variable(r, Var::u()).is_unit());
    const RingDescriptor laurent{1, 0, UvMode::kLaurent};
    CHECK(CoeffPoly::variable(laurent, Var::u(), -1).is_unit());
  }

  TEST_CASE("descriptor mismatch is an error") {
    CHECK_THROWS_AS(coeff(minus_ring(1), "l1") + coeff(minus_ring(2), "l1"), DomainError);
    CHECK_THROWS_AS(coeff(minus_ring(1), "l1") * coeff(minus_ring(2), "l1"), DomainError);
  }

  TEST_CASE("substitute_coeff examples") {
    const RingDescriptor r = minus_ring();
    const RingDescriptor absent{1, 0, UvMode::kAbsent};
    const CoeffPoly unknot = coeff(r, "U + l1 + l1*m1*V + m1");

    CoeffMap hat(r, absent);
    hat.set(Var::u(), CoeffPoly(absent)).set(Var::v(), CoeffPoly::constant(absent, 1));
    CHECK(hat.apply(unknot) == coeff(absent, "l1 + l1*m1 + m1"));

    CoeffMap doublehat(r, absent);
    doublehat.set(Var::u(), CoeffPoly(absent)).set(Var::v(), CoeffPoly(absent));
    CHECK(substitute_coeff(unknot, doublehat) == coeff(absent, "l1 + m1"));

    FieldImages f{3, {{Var::lambda(1), 2}, {Var::mu(1), 1}}};
    CHECK(substitute_coeff(coeff(absent, "l1*m1^-1"), f) == 2);
  }

  TEST_CASE("substitution errors") {
    const RingDescriptor absent{1, 0, UvMode::kAbsent};
    FieldImages zero_mu{3, {{Var::lambda(1), 1}, {Var::mu(1), 0}}};
    CHECK_THROWS_AS(substitute_coeff(coeff(absent, "m1^-1"), zero_mu), DomainError);
    CHECK(substitute_coeff(coeff(absent, "m1^2"), zero_mu) == 0);
    FieldImages missing{3, {{Var::lambda(1), 1}}};
    CHECK_THROWS_AS(substitute_coeff(coeff(absent, "m1"), missing), DomainError);

    CoeffMap bad(absent, absent);
    bad.set(Var::mu(1), CoeffPoly(absent));
    CHECK_THROWS_AS(bad.apply(coeff(absent, "m1^-1")), DomainError);
  }

  TEST_CASE("min_uv_exponents examples") {
    const RingDescriptor r = minus_ring();
    CHECK(min_uv_exponents(coeff(r, "U + l1 + l1*m1*V + m1")) == std::pair{0, 0});
    CHECK(min_uv_exponents(coeff(r, "U*V^2")) == std::pair{1, 2});
    CHECK(min_uv_exponents(coeff(r, "U^2 + U*V")) == std::pair{1, 0});
    CHECK_THROWS_AS(min_uv_exponents(CoeffPoly(r)), DomainError);
  }

  TEST_CASE("text form round-trips") {
    const RingDescriptor r{2, 0, UvMode::kLaurent};
    const CoeffPoly p = coeff(r, "-1*l1^-1*m2^2*U*V^-3 + 7 + 3*m1");
    CHECK(parse_coeff(to_text(p), r) == p);
    CHECK(to_text(CoeffPoly(r)) == "0");
    CHECK_THROWS_AS(parse_coeff("q1", r), DomainError);
  }

  TEST_CASE("display is byte ordered") {
    const RingDescriptor r = minus_ring();
    CHECK(to_display(coeff(r, "U + l1 + l1*m1*V + m1")) == "U + λ + λμV + μ");
    CHECK(to_display(coeff(r, "-1*m1 + 2")) == "2 - μ");
  }

  TEST_CASE("property: ring axioms against a schoolbook product") {
    std::mt19937_64 rng(21);
    for (int r = 1; r <= 2; ++r) {
      for (UvMode mode : {UvMode::kPolynomial, UvMode::kLaurent, UvMode::kAbsent}) {
        const RingDescriptor ring{r, 0, mode};
        for (int t = 0; t < 60; ++t) {
          CoeffPoly a = random_poly(rng, ring), b = random_poly(rng, ring),
                    c = random_poly(rng, ring);
          CHECK(a * b == naive_product(a, b));
          CHECK(a * b == b * a);
          CHECK((a * b) * c == a * (b * c));
          CHECK(a * (b + c) == a * b + a * c);
          CHECK((a + b) + c == a + (b + c));
          CHECK(a + b == b + a);
          CHECK((a - a).is_zero());
        }
      }
    }
  }

  TEST_CASE("property: substitution is a ring homomorphism") {
    std::mt19937_64 rng(22);
    const RingDescriptor ring{2, 0, UvMode::kPolynomial};
    const RingDescriptor absent{2, 0, UvMode::kAbsent};
    CoeffMap map(ring, absent);
    map.set(Var::u(), coeff(absent, "l1 + m2"))
        .set(Var::v(), coeff(absent, "2"))
        .set(Var::mu(1), coeff(absent, "-1*l2^-1"));
    FieldImages f{5, {{Var::lambda(1), 2}, {Var::lambda(2), 3}, {Var::mu(1), 4},
                      {Var::mu(2), 1}, {Var::u(), 0}, {Var::v(), 3}}};
    for (int t = 0; t < 100; ++t) {
      CoeffPoly a = random_poly(rng, ring), b = random_poly(rng, ring);
      CHECK(map.apply(a * b) == map.apply(a) * map.apply(b));
      CHECK(map.apply(a + b) == map.apply(a) + map.apply(b));
      CHECK(substitute_coeff(a * b, f) == substitute_coeff(a, f) * substitute_coeff(b, f) % 5);
    }
  }

  TEST_CASE("property: normalization is idempotent") {
    std::mt19937_64 rng(23);
    const RingDescriptor ring{2, 0, UvMode::kLaurent};
    for (int t = 0; t < 100; ++t) {
      CoeffPoly a = random_poly(rng, ring);
      std::vector<std::pair<Exponents, Integer>> raw(a.terms().begin(), a.terms().end());
      CHECK(CoeffPoly::normalized(ring, raw) == a);
    }
  }
}
