#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tdga/braid.hpp"
#include "tdga/braid_action.hpp"
#include "tdga/coeff_ring.hpp"
#include "tdga/free_algebra.hpp"

namespace tdga {

enum class Provenance { kMinus, kHat, kDoubleHat, kUnfiltered, kInfinity, kTransformed };

std::string to_string(Provenance p);
Provenance parse_provenance(std::string_view text);

struct FilteredDGA {
  BraidWord braid;
  ComponentData components;
  RingDescriptor ring;
  std::vector<GenId> generators;  // canonical order
  std::map<GenId, NcPoly> differential;
  Provenance provenance = Provenance::kMinus;

  int strands() const { return braid.strands; }
  bool has(GenId g) const { return differential.count(g) != 0; }
  const NcPoly& d(GenId g) const;
};

struct DgaMatrices {
  NcMatrix A, AU, AV;
  NcMatrix B, BU, BV;
  NcMatrix C, E;
  NcMatrix lambda, lambda_inv;
};

// The link algebra's coefficient ring for a braid closure: r components,
// U, V per `mode`.
RingDescriptor link_ring(const BraidWord& braid, UvMode mode = UvMode::kPolynomial);

// Generators a_ij, b_ij (i != j), c_ij, e_ij in canonical order.
std::vector<GenId> all_generators(int strands);

// Matrices over `ring`. When the ring has no U, V the weighted variants
// coincide with A and B.
DgaMatrices build_matrices(const BraidWord& braid, RingDescriptor ring);
DgaMatrices build_matrices(const BraidWord& braid);

// Filtered differential over Z[lambda^{+-1}, mu^{+-1}][U, V].
FilteredDGA build_filtered_dga(const BraidWord& braid);
FilteredDGA build_filtered_dga(const BraidWord& braid, const PhiData& phi);

// Unfiltered differential built directly from its own matrix equations, over
// the ring without U, V. Independent route for the (1,1) specialization.
FilteredDGA build_unfiltered_dga(const BraidWord& braid);

// Differential extended to the whole algebra by linearity and
// d(xy) = d(x) y + (-1)^|x| x d(y).
NcPoly apply_differential(const FilteredDGA& dga, const NcPoly& x);

struct VerifyEntry {
  GenId generator;
  bool d_squared_zero = false;
  bool degree_ok = false;
  std::optional<bool> filtration_ok;  // only for polynomial U, V
};

struct VerifyReport {
  std::vector<VerifyEntry> entries;
  bool all_pass() const;
  std::vector<std::string> failures() const;
};

VerifyReport verify_dga(const FilteredDGA& dga);

// Sets U and/or V to integers (nullopt keeps the variable). Both set drops
// U, V from the ring. (0,1) is hat, (0,0) double hat, (1,1) unfiltered.
FilteredDGA specialize(const FilteredDGA& dga, std::optional<int> u, std::optional<int> v);

// Laurent U, V with lambda -> lambda (U/V)^{-(sl+1)/2}. Knots only.
FilteredDGA infinity_dga(const BraidWord& braid);

// Conjugates the differential by the elementary automorphism g -> image,
// where image = unit * g + (terms without g) has the degree of g.
FilteredDGA apply_tame_substitution(const FilteredDGA& dga, GenId g, const NcPoly& image);

// Removes a cancelling pair with d(high) = unit * low.
FilteredDGA destabilize(const FilteredDGA& dga, GenId high, GenId low);

// Text rendering: one "∂⁻g = ..." line per generator.
std::string to_display(const FilteredDGA& dga);
std::string differential_symbol(Provenance p);

}  // namespace tdga
