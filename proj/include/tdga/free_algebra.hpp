#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "tdga/coeff_ring.hpp"

namespace tdga {

enum class Family : std::uint8_t { kA, kB, kC, kE };

// Generator of the free algebra. a_ij, b_ij need i != j; c_ij, e_ij allow
// i == j. Strand label 0 is used only by the extended braid algebra.
struct GenId {
  Family family = Family::kA;
  std::uint8_t i = 1;
  std::uint8_t j = 2;

  static GenId a(int i, int j) { return make(Family::kA, i, j); }
  static GenId b(int i, int j) { return make(Family::kB, i, j); }
  static GenId c(int i, int j) { return make(Family::kC, i, j); }
  static GenId e(int i, int j) { return make(Family::kE, i, j); }
  static GenId make(Family family, int i, int j);

  int degree() const;
  std::string name() const;  // "a_1_2"

  friend auto operator<=>(const GenId&, const GenId&) = default;
};

int degree(Family family);
GenId parse_gen(std::string_view name);
// Short display form: "a12", or "c" / "e" when the algebra has one strand.
std::string display_name(const GenId& g, int strands);

using Word = std::vector<GenId>;

// Canonical term order: shorter words first, then lexicographic.
struct WordLess {
  bool operator()(const Word& x, const Word& y) const {
    if (x.size() != y.size()) return x.size() < y.size();
    return x < y;
  }
};

int word_degree(const Word& w);

// Element of the free unital algebra over a coefficient ring. Coefficients
// are central; generators never commute.
class NcPoly {
 public:
  using Terms = std::map<Word, CoeffPoly, WordLess>;

  explicit NcPoly(RingDescriptor ring) : ring_(ring) {}

  static NcPoly constant(const CoeffPoly& c);
  static NcPoly constant(RingDescriptor ring, const Integer& c);
  static NcPoly generator(RingDescriptor ring, GenId g);
  static NcPoly term(const CoeffPoly& c, Word w);

  const RingDescriptor& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }
  bool contains(GenId g) const;
  std::set<GenId> generators() const;
  // Coefficient of the word w (zero if absent).
  CoeffPoly coefficient_of(const Word& w) const;

  void add_term(const Word& w, const CoeffPoly& c);

  NcPoly operator-() const;
  NcPoly& operator+=(const NcPoly& other);
  NcPoly& operator-=(const NcPoly& other);
  friend NcPoly operator+(NcPoly a, const NcPoly& b) { return a += b; }
  friend NcPoly operator-(NcPoly a, const NcPoly& b) { return a -= b; }
  friend NcPoly operator*(const NcPoly& a, const NcPoly& b);
  friend NcPoly operator*(const CoeffPoly& c, const NcPoly& x);

  friend bool operator==(const NcPoly& a, const NcPoly& b) {
    return a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  NcPoly map_coefficients(const CoeffMap& map) const;

 private:
  void check_same_ring(const RingDescriptor& other, const char* op) const;

  RingDescriptor ring_;
  Terms terms_;
};

// Common degree of all words; nullopt when inhomogeneous. Throws on zero.
std::optional<int> degree_of(const NcPoly& x);

std::string to_display(const NcPoly& x, int strands);

// Families a substitution is defined on.
using FamilyMask = std::uint8_t;
constexpr FamilyMask family_bit(Family f) { return FamilyMask(1u << static_cast<int>(f)); }
constexpr FamilyMask kAllFamilies = 0x0f;

// Unital algebra endomorphism given by generator images (identity elsewhere
// inside the domain) and an optional coefficient-ring homomorphism.
class GenSubstitution {
 public:
  explicit GenSubstitution(RingDescriptor ring, FamilyMask domain = kAllFamilies);

  GenSubstitution& set(GenId g, NcPoly image);
  GenSubstitution& set_coefficients(CoeffMap map);

  const RingDescriptor& source_ring() const { return coeff_.source(); }
  const RingDescriptor& target_ring() const { return coeff_.target(); }
  const CoeffMap& coefficients() const { return coeff_; }
  const std::map<GenId, NcPoly>& images() const { return images_; }
  FamilyMask domain() const { return domain_; }

  NcPoly image(GenId g) const;
  NcPoly apply(const NcPoly& x) const;

 private:
  NcPoly apply_fast(const NcPoly& x) const;
  NcPoly apply_exact(const NcPoly& x) const;

  FamilyMask domain_;
  CoeffMap coeff_;
  std::map<GenId, NcPoly> images_;
};

NcPoly apply_substitution(const GenSubstitution& s, const NcPoly& x);

// outer o inner; the domain is the intersection of the two domains.
GenSubstitution compose(const GenSubstitution& outer, const GenSubstitution& inner);

class NcMatrix {
 public:
  NcMatrix(int n, RingDescriptor ring);

  static NcMatrix identity(int n, RingDescriptor ring);
  static NcMatrix diagonal(const std::vector<CoeffPoly>& entries);

  int dim() const { return n_; }
  const RingDescriptor& ring() const { return ring_; }
  // 1-based
  NcPoly& at(int i, int j) { return entries_[index(i, j)]; }
  const NcPoly& at(int i, int j) const { return entries_[index(i, j)]; }

  NcMatrix operator-() const;
  friend NcMatrix operator+(const NcMatrix& a, const NcMatrix& b);
  friend NcMatrix operator-(const NcMatrix& a, const NcMatrix& b);
  friend NcMatrix operator*(const NcMatrix& a, const NcMatrix& b);
  friend bool operator==(const NcMatrix& a, const NcMatrix& b) {
    return a.n_ == b.n_ && a.ring_ == b.ring_ && a.entries_ == b.entries_;
  }

  NcMatrix substitute(const GenSubstitution& s) const;
  NcMatrix map_coefficients(const CoeffMap& map) const;
  bool is_identity() const;

 private:
  std::size_t index(int i, int j) const;
  void check_dims(const NcMatrix& other, const char* op) const;

  int n_;
  RingDescriptor ring_;
  std::vector<NcPoly> entries_;
};

}  // namespace tdga
