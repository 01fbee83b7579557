#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace tdga {

using Integer = boost::multiprecision::cpp_int;

// How the filtration variables U, V live in the coefficient ring.
enum class UvMode { kPolynomial, kLaurent, kAbsent };

std::string to_string(UvMode mode);
UvMode parse_uv_mode(std::string_view text);

enum class VarKind : std::uint8_t { kLambda, kMu, kMuTilde, kU, kV };

// lambda_j, mu_j are 1-based by component; mu-tilde is indexed by strand label
// (0 is the idle strand of the extended braid).
struct Var {
  VarKind kind = VarKind::kLambda;
  int index = 0;

  static Var lambda(int j) { return {VarKind::kLambda, j}; }
  static Var mu(int j) { return {VarKind::kMu, j}; }
  static Var mu_tilde(int i) { return {VarKind::kMuTilde, i}; }
  static Var u() { return {VarKind::kU, 0}; }
  static Var v() { return {VarKind::kV, 0}; }

  friend auto operator<=>(const Var&, const Var&) = default;
};

// Z[lambda_j^{+-1}, mu_j^{+-1}, mu~_i^{+-1}][U, V] with the U, V part governed
// by uv_mode. Exponent vectors are laid out as
// (lambda_1..lambda_r, mu_1..mu_r, mu~_0..mu~_{tilde-1}, U, V).
struct RingDescriptor {
  int components = 1;
  int tilde = 0;
  UvMode uv_mode = UvMode::kPolynomial;

  int size() const { return 2 * components + tilde + (uv_mode == UvMode::kAbsent ? 0 : 2); }
  std::optional<int> slot(Var var) const;
  Var var_at(int slot) const;
  // U and V are not units in polynomial mode; everything else is Laurent.
  bool invertible(int slot) const;

  friend bool operator==(const RingDescriptor&, const RingDescriptor&) = default;
};

std::string describe(const RingDescriptor& ring);

using Exponents = std::vector<int>;

class CoeffPoly {
 public:
  using Terms = std::map<Exponents, Integer>;

  explicit CoeffPoly(RingDescriptor ring) : ring_(ring) {}

  static CoeffPoly constant(RingDescriptor ring, const Integer& c);
  static CoeffPoly monomial(RingDescriptor ring, Exponents exps, const Integer& c = 1);
  static CoeffPoly variable(RingDescriptor ring, Var var, int exponent = 1);

  const RingDescriptor& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  bool is_one() const;
  std::size_t size() const { return terms_.size(); }

  // Single monomial with coefficient +-1 and no non-invertible variable.
  bool is_unit() const;
  CoeffPoly inverse() const;  // units only
  CoeffPoly pow(int e) const;  // negative exponents for units only

  CoeffPoly operator-() const;
  CoeffPoly& operator+=(const CoeffPoly& other);
  CoeffPoly& operator-=(const CoeffPoly& other);
  CoeffPoly& operator*=(const CoeffPoly& other);
  friend CoeffPoly operator+(CoeffPoly a, const CoeffPoly& b) { return a += b; }
  friend CoeffPoly operator-(CoeffPoly a, const CoeffPoly& b) { return a -= b; }
  friend CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b);

  friend bool operator==(const CoeffPoly& a, const CoeffPoly& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  // Adds c * x^exps in place; used by the arithmetic and by substitution.
  void add_term(const Exponents& exps, const Integer& c);

  // Rebuilds the canonical map from raw (possibly repeated, possibly zero)
  // terms. Exposed for the idempotence property.
  static CoeffPoly normalized(RingDescriptor ring,
                              const std::vector<std::pair<Exponents, Integer>>& raw);

 private:
  void check_same_ring(const CoeffPoly& other, const char* op) const;
  void check_exponents(const Exponents& exps) const;

  RingDescriptor ring_;
  Terms terms_;
};

// Componentwise minimum of the U and V exponents over the stored monomials.
std::pair<int, int> min_uv_exponents(const CoeffPoly& p);

// Ring homomorphism between coefficient rings given by images of variables.
// Variables without an image are sent to the same variable of the target.
class CoeffMap {
 public:
  CoeffMap(RingDescriptor source, RingDescriptor target)
      : source_(source), target_(target) {}

  CoeffMap& set(Var var, CoeffPoly image);
  const RingDescriptor& source() const { return source_; }
  const RingDescriptor& target() const { return target_; }
  bool is_identity() const { return source_ == target_ && images_.empty(); }

  CoeffPoly apply(const CoeffPoly& p) const;
  CoeffPoly image(Var var) const;

 private:
  RingDescriptor source_;
  RingDescriptor target_;
  std::map<Var, CoeffPoly> images_;
};

CoeffPoly substitute_coeff(const CoeffPoly& p, const CoeffMap& images);

// outer o inner
CoeffMap compose(const CoeffMap& outer, const CoeffMap& inner);

// Values of the coefficient variables in Z/p.
struct FieldImages {
  std::uint64_t p = 2;
  std::map<Var, std::uint64_t> values;  // already reduced mod p
};

// Substitutes field values; raises when a variable has no image or a zero is
// substituted for a variable occurring with negative exponent.
std::uint64_t substitute_coeff(const CoeffPoly& p, const FieldImages& images);

// Coefficient text form: terms "c*l1^e*m1*U" joined by '+'; "0" for zero.
std::string to_text(const CoeffPoly& p);
CoeffPoly parse_coeff(std::string_view text, RingDescriptor ring);

// Human-readable rendering with monomials in byte order, e.g. "U + λ + λμV + μ".
std::string to_display(const CoeffPoly& p);
// Display of one monomial without sign or integer coefficient ("λμ^2V").
std::string monomial_display(const RingDescriptor& ring, const Exponents& exps);

}  // namespace tdga
