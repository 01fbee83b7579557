#include <doctest.h>

#include <random>

#include "support.hpp"
#include "tdga/braid_action.hpp"
#include "tdga/errors.hpp"

using namespace tdga;
using tdga::test::coeff;
using tdga::test::matrix;
using tdga::test::minus_ring;
using tdga::test::poly;
using tdga::test::random_braid;

namespace {

// The sign = +1 table written out case by case, as an independent oracle.
NcPoly table_image(int k, int strands, int i, int j) {
  const RingDescriptor t = braid_action_ring(strands);
  const int l = k + 1;
  auto a = [&](int x, int y) { return NcPoly::generator(t, GenId::a(x, y)); };
  const CoeffPoly ratio =
      CoeffPoly::variable(t, Var::mu_tilde(k)) * CoeffPoly::variable(t, Var::mu_tilde(l), -1);
  const bool i_out = i != k && i != l, j_out = j != k && j != l;
  if (i_out && j_out) return a(i, j);
  if (i == k && j == l) return -a(l, k);
  if (i == l && j == k) return -(ratio * a(k, l));
  if (i_out && j == l) return a(i, k);
  if (i == l && j_out) return a(k, j);
  if (i_out && j == k && i < k) return a(i, l) - a(i, k) * a(k, l);
  if (i_out && j == k && i > l) return a(i, l) - ratio * (a(i, k) * a(k, l));
  return a(l, j) - a(l, k) * a(k, j);  // i == k, j outside
}

bool is_identity_on_a(const GenSubstitution& s, int strands, int first = 1) {
  const RingDescriptor t = s.target_ring();
  for (int i = first; i <= strands; ++i) {
    for (int j = first; j <= strands; ++j) {
      if (i == j) continue;
      if (!(s.image(GenId::a(i, j)) == NcPoly::generator(t, GenId::a(i, j)))) return false;
    }
  }
  for (int i = 0; i <= strands; ++i) {
    const CoeffPoly x = CoeffPoly::variable(t, Var::mu_tilde(i));
    if (!(s.coefficients().apply(x) == x)) return false;
  }
  return true;
}

bool same_on_a(const GenSubstitution& x, const GenSubstitution& y, int strands) {
  for (int i = 1; i <= strands; ++i) {
    for (int j = 1; j <= strands; ++j) {
      if (i != j && !(x.image(GenId::a(i, j)) == y.image(GenId::a(i, j)))) return false;
    }
  }
  for (int i = 0; i <= strands; ++i) {
    const CoeffPoly v = CoeffPoly::variable(x.target_ring(), Var::mu_tilde(i));
    if (!(x.coefficients().apply(v) == y.coefficients().apply(v))) return false;
  }
  return true;
}

GenSubstitution word(std::initializer_list<std::pair<int, int>> letters, int strands) {
  GenSubstitution out(braid_action_ring(strands), family_bit(Family::kA));
  for (const auto& [k, sign] : letters) out = compose(out, phi_generator(k, sign, strands));
  return out;
}

}  // namespace

TEST_SUITE("braid_action") {
  TEST_CASE("phi_generator examples") {
    const RingDescriptor t2 = braid_action_ring(2);
    const GenSubstitution s = phi_generator(1, 1, 2);
    CHECK(s.image(GenId::a(1, 2)) == poly(t2, {{"-1", "a21"}}));
    CHECK(s.image(GenId::a(2, 1)) == poly(t2, {{"-1*t1*t2^-1", "a12"}}));
    CHECK(s.coefficients().apply(coeff(t2, "t1")) == coeff(t2, "t2"));
    CHECK(s.coefficients().apply(coeff(t2, "t2^-1")) == coeff(t2, "t1^-1"));

    const RingDescriptor t3 = braid_action_ring(3);
    CHECK(phi_generator(1, 1, 3).image(GenId::a(2, 3)) == poly(t3, {{"1", "a13"}}));

    const GenSubstitution inv = phi_generator(1, -1, 2);
    CHECK(inv.image(GenId::a(2, 1)) == poly(t2, {{"-1", "a12"}}));
    CHECK(inv.image(GenId::a(1, 2)) == poly(t2, {{"-1*t1*t2^-1", "a21"}}));
    CHECK(inv.coefficients().apply(coeff(t2, "t1")) == coeff(t2, "t2"));

    CHECK_THROWS_AS(phi_generator(2, 1, 2), DomainError);
    CHECK_THROWS_AS(phi_generator(0, 1, 3), DomainError);
  }

  TEST_CASE("phi_generator matches the table for every case") {
    for (int n = 2; n <= 5; ++n) {
      for (int k = 1; k < n; ++k) {
        const GenSubstitution s = phi_generator(k, 1, n);
        for (int i = 1; i <= n; ++i) {
          for (int j = 1; j <= n; ++j) {
            if (i != j) CHECK(s.image(GenId::a(i, j)) == table_image(k, n, i, j));
          }
        }
      }
    }
  }

  TEST_CASE("phi_generator round trips to the identity, extended algebra included") {
    for (int n = 2; n <= 5; ++n) {
      for (int k = 1; k < n; ++k) {
        for (int first : {0, 1}) {
          CHECK(is_identity_on_a(
              compose(phi_generator(k, 1, n, first), phi_generator(k, -1, n, first)), n, first));
          CHECK(is_identity_on_a(
              compose(phi_generator(k, -1, n, first), phi_generator(k, 1, n, first)), n, first));
        }
      }
    }
  }

  TEST_CASE("braid relations and distant commutation") {
    for (int n = 3; n <= 5; ++n) {
      for (int k = 1; k + 1 < n; ++k) {
        for (int sign : {1, -1}) {
          CHECK(same_on_a(word({{k, sign}, {k + 1, sign}, {k, sign}}, n),
                          word({{k + 1, sign}, {k, sign}, {k + 1, sign}}, n), n));
        }
      }
      for (int k = 1; k < n; ++k) {
        for (int j = k + 2; j < n; ++j) {
          CHECK(same_on_a(word({{k, 1}, {j, 1}}, n), word({{j, 1}, {k, 1}}, n), n));
          CHECK(same_on_a(word({{k, -1}, {j, 1}}, n), word({{j, 1}, {k, -1}}, n), n));
        }
      }
    }
  }

  TEST_CASE("phi_braid examples") {
    CHECK(is_identity_on_a(phi_braid(parse_braid("", 3)), 3));
    CHECK(is_identity_on_a(phi_braid(parse_braid("1 -1")), 2));
    CHECK(is_identity_on_a(phi_braid(parse_braid("2 1 -1 -2", 4), 0), 4, 0));
    CHECK(same_on_a(phi_braid(parse_braid("1 2 1")), phi_braid(parse_braid("2 1 2")), 3));
    // phi_B is phi of the first letter applied last.
    CHECK(same_on_a(phi_braid(parse_braid("1 -2")), word({{1, 1}, {2, -1}}, 3), 3));
  }

  TEST_CASE("mu tilde elimination") {
    const BraidWord b = parse_braid("1 1", 3);  // components {1}, {2}, {3}
    const RingDescriptor target = minus_ring(3);
    const CoeffMap elim = mu_tilde_elimination(link_components(b), 3, target);
    CHECK(elim.apply(coeff(braid_action_ring(3), "t2^-1*t3")) == coeff(target, "m2^-1*m3"));
  }

  TEST_CASE("phi_matrices examples") {
    const RingDescriptor r = minus_ring();
    const NcPoly one = NcPoly::constant(r, 1), zero(r);
    const NcPoly a12 = NcPoly::generator(r, GenId::a(1, 2));
    const NcPoly a21 = NcPoly::generator(r, GenId::a(2, 1));

    PhiMatrices s1 = phi_matrices(parse_braid("1"));
    CHECK(s1.left == matrix(r, {{-a21, one}, {one, zero}}));
    CHECK(s1.right == matrix(r, {{-a12, one}, {one, zero}}));

    PhiMatrices s1inv = phi_matrices(parse_braid("-1"));
    CHECK(s1inv.right == matrix(r, {{zero, one}, {one, -a21}}));

    PhiMatrices triv = phi_matrices(parse_braid("", 3));
    CHECK(triv.left.is_identity());
    CHECK(triv.right.is_identity());
  }

  TEST_CASE("phi_matrix_inverses examples") {
    const RingDescriptor r = minus_ring();
    const NcPoly one = NcPoly::constant(r, 1), zero(r);
    const NcPoly a12 = NcPoly::generator(r, GenId::a(1, 2));
    PhiMatrices inv = phi_matrix_inverses(parse_braid("1"));
    CHECK(inv.right == matrix(r, {{zero, one}, {one, a12}}));

    PhiMatrices triv = phi_matrix_inverses(parse_braid("", 2));
    CHECK(triv.left.is_identity());
    CHECK(triv.right.is_identity());
  }

  TEST_CASE("property: Phi inverses on both sides and phi(A) = Phi^L A Phi^R") {
    std::mt19937_64 rng(41);
    for (int t = 0; t < 40; ++t) {
      const BraidWord b = random_braid(rng, 2, 4, 8);
      CAPTURE(to_string(b));
      CAPTURE(b.strands);
      const RingDescriptor ring = link_ring(b);
      const PhiData d = phi_data(b, ring);
      CHECK((d.phi_R * d.phi_R_inv).is_identity());
      CHECK((d.phi_R_inv * d.phi_R).is_identity());
      CHECK((d.phi_L * d.phi_L_inv).is_identity());
      CHECK((d.phi_L_inv * d.phi_L).is_identity());
      const NcMatrix A = build_matrices(b, ring).A;
      CHECK(A.substitute(d.phi) == d.phi_L * A * d.phi_R);
    }
  }

  TEST_CASE("property: Phi matrices of a concatenation") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 30; ++t) {
      const BraidWord b = random_braid(rng, 2, 4, 4);
      const BraidWord c = random_braid(rng, b.strands, b.strands, 4);
      const BraidWord bc = concatenate(b, c);
      CAPTURE(to_string(bc));
      const RingDescriptor ring = link_ring(bc);
      const PhiData d = phi_data(bc, ring);
      const NcMatrix A = build_matrices(bc, ring).A;
      CHECK(A.substitute(d.phi) == d.phi_L * A * d.phi_R);
      // Raw chain rule: Phi^R_{bc} = Phi^R_b phi_b(Phi^R_c) before elimination.
      const PhiMatrices mb = phi_matrices_raw(b), mc = phi_matrices_raw(c),
                        mbc = phi_matrices_raw(bc);
      const GenSubstitution pb = phi_braid(b);
      CHECK(mbc.right == mb.right * mc.right.substitute(pb));
      CHECK(mbc.left == mc.left.substitute(pb) * mb.left);
    }
  }
}
