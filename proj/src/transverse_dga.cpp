#include "tdga/transverse_dga.hpp"

#include <functional>
#include <memory>
#include <sstream>

#include "flat.hpp"
#include "tdga/errors.hpp"

namespace tdga {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::kMinus: return "minus";
    case Provenance::kHat: return "hat";
    case Provenance::kDoubleHat: return "doublehat";
    case Provenance::kUnfiltered: return "unfiltered";
    case Provenance::kInfinity: return "infinity";
    case Provenance::kTransformed: return "transformed";
  }
  return "?";
}

Provenance parse_provenance(std::string_view text) {
  for (auto p : {Provenance::kMinus, Provenance::kHat, Provenance::kDoubleHat,
                 Provenance::kUnfiltered, Provenance::kInfinity, Provenance::kTransformed}) {
    if (text == to_string(p)) return p;
  }
  throw DomainError("unknown provenance '" + std::string(text) + "'");
}

const NcPoly& FilteredDGA::d(GenId g) const {
  auto it = differential.find(g);
  if (it == differential.end()) {
    throw DomainError("generator " + g.name() + " is not in the DGA");
  }
  return it->second;
}

RingDescriptor link_ring(const BraidWord& braid, UvMode mode) {
  return RingDescriptor{link_components(braid).count, 0, mode};
}

std::vector<GenId> all_generators(int n) {
  std::vector<GenId> gens;
  for (Family f : {Family::kA, Family::kB, Family::kC, Family::kE}) {
    for (int i = 1; i <= n; ++i) {
      for (int j = 1; j <= n; ++j) {
        if (i == j && (f == Family::kA || f == Family::kB)) continue;
        gens.push_back(GenId::make(f, i, j));
      }
    }
  }
  return gens;
}

// ---------------------------------------------------------------------------

DgaMatrices build_matrices(const BraidWord& braid, RingDescriptor ring) {
  const int n = braid.strands;
  const ComponentData comp = link_components(braid);
  if (comp.count != ring.components) {
    throw DomainError("build_matrices: ring has " + std::to_string(ring.components) +
                      " components, braid closure has " + std::to_string(comp.count));
  }
  const bool has_uv = ring.slot(Var::u()).has_value();
  const CoeffPoly one = CoeffPoly::constant(ring, 1);
  const CoeffPoly U = has_uv ? CoeffPoly::variable(ring, Var::u()) : one;
  const CoeffPoly V = has_uv ? CoeffPoly::variable(ring, Var::v()) : one;
  auto mu_of = [&](int strand) { return CoeffPoly::variable(ring, Var::mu(comp.alpha_of(strand))); };

  DgaMatrices m{NcMatrix(n, ring), NcMatrix(n, ring), NcMatrix(n, ring), NcMatrix(n, ring),
                NcMatrix(n, ring), NcMatrix(n, ring), NcMatrix(n, ring), NcMatrix(n, ring),
                NcMatrix(n, ring), NcMatrix(n, ring)};
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) {
      m.C.at(i, j) = NcPoly::generator(ring, GenId::c(i, j));
      m.E.at(i, j) = NcPoly::generator(ring, GenId::e(i, j));
      if (i == j) {
        const CoeffPoly mu = mu_of(i);
        m.A.at(i, i) = NcPoly::constant(one + mu);
        m.AU.at(i, i) = NcPoly::constant(U + mu);
        m.AV.at(i, i) = NcPoly::constant(one + mu * V);
        continue;
      }
      const NcPoly a = NcPoly::generator(ring, GenId::a(i, j));
      const NcPoly b = NcPoly::generator(ring, GenId::b(i, j));
      if (i < j) {
        m.A.at(i, j) = a;
        m.AU.at(i, j) = U * a;
        m.AV.at(i, j) = a;
        m.B.at(i, j) = b;
        m.BU.at(i, j) = U * b;
        m.BV.at(i, j) = b;
      } else {
        const CoeffPoly mu = mu_of(j);
        m.A.at(i, j) = mu * a;
        m.AU.at(i, j) = mu * a;
        m.AV.at(i, j) = (mu * V) * a;
        m.B.at(i, j) = mu * b;
        m.BU.at(i, j) = mu * b;
        m.BV.at(i, j) = (mu * V) * b;
      }
    }
  }

  std::vector<CoeffPoly> diag, diag_inv;
  for (int i = 1; i <= n; ++i) {
    CoeffPoly entry = one;
    if (comp.is_leading(i)) {
      const int c = comp.alpha_of(i);
      // mu exponent uses the strand's own component.
      entry = CoeffPoly::variable(ring, Var::lambda(c)) *
              CoeffPoly::variable(ring, Var::mu(c), comp.writhe_per_component[c - 1]);
    }
    diag_inv.push_back(entry.inverse());
    diag.push_back(std::move(entry));
  }
  m.lambda = NcMatrix::diagonal(diag);
  m.lambda_inv = NcMatrix::diagonal(diag_inv);
  return m;
}

DgaMatrices build_matrices(const BraidWord& braid) {
  return build_matrices(braid, link_ring(braid));
}

namespace {

FilteredDGA empty_dga(const BraidWord& braid, RingDescriptor ring, Provenance provenance) {
  FilteredDGA dga;
  dga.braid = braid;
  dga.components = link_components(braid);
  dga.ring = ring;
  dga.generators = all_generators(braid.strands);
  dga.provenance = provenance;
  for (const auto& g : dga.generators) dga.differential.emplace(g, NcPoly(ring));
  return dga;
}

// Reads d(B) off the B-matrix equation: B_ij = mu_{alpha(j)} b_ij below the
// diagonal.
void assign_b_differentials(FilteredDGA& dga, const NcMatrix& rhs) {
  const int n = dga.strands();
  for (int i = 1; i <= n; ++i) {
    if (!rhs.at(i, i).is_zero()) {
      throw VerificationError("build_dga: diagonal of the B equation is nonzero at (" +
                              std::to_string(i) + "," + std::to_string(i) + ")");
    }
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      NcPoly value = rhs.at(i, j);
      if (i > j) {
        value = CoeffPoly::variable(dga.ring, Var::mu(dga.components.alpha_of(j)), -1) * value;
      }
      dga.differential.at(GenId::b(i, j)) = std::move(value);
    }
  }
}

void assign_matrix(FilteredDGA& dga, Family family, const NcMatrix& rhs) {
  const int n = dga.strands();
  for (int i = 1; i <= n; ++i) {
    for (int j = 1; j <= n; ++j) dga.differential.at(GenId::make(family, i, j)) = rhs.at(i, j);
  }
}

}  // namespace

FilteredDGA build_filtered_dga(const BraidWord& braid, const PhiData& phi) {
  const RingDescriptor ring = link_ring(braid);
  const DgaMatrices m = build_matrices(braid, ring);
  FilteredDGA dga = empty_dga(braid, ring, Provenance::kMinus);

  assign_b_differentials(dga, -(m.lambda_inv * m.A * m.lambda) + m.A.substitute(phi.phi));
  assign_matrix(dga, Family::kC, m.AV * m.lambda + m.AU * phi.phi_R);
  assign_matrix(dga, Family::kE,
                m.BV * phi.phi_R_inv + m.BU * m.lambda_inv - phi.phi_L * m.C * m.lambda_inv +
                    m.lambda_inv * m.C * phi.phi_R_inv);
  return dga;
}

FilteredDGA build_filtered_dga(const BraidWord& braid) {
  return build_filtered_dga(braid, phi_data(braid, link_ring(braid)));
}

FilteredDGA build_unfiltered_dga(const BraidWord& braid) {
  const RingDescriptor ring = link_ring(braid, UvMode::kAbsent);
  const PhiData phi = phi_data(braid, ring);
  const DgaMatrices m = build_matrices(braid, ring);
  FilteredDGA dga = empty_dga(braid, ring, Provenance::kUnfiltered);

  assign_b_differentials(dga, -(m.lambda_inv * m.A * m.lambda) + m.A.substitute(phi.phi));
  assign_matrix(dga, Family::kC, m.A * m.lambda + m.A * phi.phi_R);
  assign_matrix(dga, Family::kE,
                m.B * phi.phi_R_inv + m.B * m.lambda_inv - phi.phi_L * m.C * m.lambda_inv +
                    m.lambda_inv * m.C * phi.phi_R_inv);
  return dga;
}

// ---------------------------------------------------------------------------

namespace {

NcPoly apply_differential_exact(const FilteredDGA& dga, const NcPoly& x) {
  NcPoly out(dga.ring);
  Word word;
  for (const auto& [w, c] : x.terms()) {
    int prefix_degree = 0;
    for (std::size_t k = 0; k < w.size(); ++k) {
      const NcPoly& dg = dga.d(w[k]);
      const CoeffPoly coeff = (prefix_degree % 2 == 0) ? c : -c;
      for (const auto& [dw, dc] : dg.terms()) {
        word.assign(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(k));
        word.insert(word.end(), dw.begin(), dw.end());
        word.insert(word.end(), w.begin() + static_cast<std::ptrdiff_t>(k) + 1, w.end());
        out.add_term(word, coeff * dc);
      }
      prefix_degree += w[k].degree();
    }
  }
  return out;
}

// Differential images packed for the fast derivation kernel.
class FlatDifferential {
 public:
  explicit FlatDifferential(const FilteredDGA& dga) {
    for (const auto& [g, dg] : dga.differential) {
      if (dg.is_zero()) continue;
      images_.emplace(detail::encode(g), detail::HashedPoly(detail::FlatPoly::from(dg)));
    }
  }
  const detail::HashedPoly* operator()(detail::Cell c) const {
    auto it = images_.find(c);
    return it == images_.end() ? nullptr : &it->second;
  }

 private:
  std::map<detail::Cell, detail::HashedPoly> images_;
};

void check_generators(const FilteredDGA& dga, const NcPoly& x) {
  for (const auto& [w, c] : x.terms()) {
    for (const auto& g : w) dga.d(g);
  }
}

}  // namespace

NcPoly apply_differential(const FilteredDGA& dga, const NcPoly& x) {
  if (!(x.ring() == dga.ring)) throw DomainError("apply_differential: ring mismatch");
  check_generators(dga, x);
  try {
    const FlatDifferential d(dga);
    return detail::apply_derivation(detail::FlatPoly::from(x), std::cref(d), dga.ring.size())
        .to_ncpoly(dga.ring);
  } catch (const detail::Overflow&) {
    return apply_differential_exact(dga, x);
  }
}

bool VerifyReport::all_pass() const {
  for (const auto& e : entries) {
    if (!e.d_squared_zero || !e.degree_ok || e.filtration_ok == false) return false;
  }
  return true;
}

std::vector<std::string> VerifyReport::failures() const {
  std::vector<std::string> out;
  for (const auto& e : entries) {
    if (!e.d_squared_zero) out.push_back("d^2 " + e.generator.name() + " != 0");
    if (!e.degree_ok) out.push_back("d " + e.generator.name() + " has the wrong degree");
    if (e.filtration_ok == false) {
      out.push_back("d " + e.generator.name() + " has a negative U or V exponent");
    }
  }
  return out;
}

namespace {

bool d_squared_zero(const FilteredDGA& dga, const FlatDifferential* flat, const NcPoly& dg) {
  if (flat) {
    try {
      return detail::apply_derivation(detail::FlatPoly::from(dg), std::cref(*flat),
                                      dga.ring.size())
          .empty();
    } catch (const detail::Overflow&) {
    }
  }
  return apply_differential_exact(dga, dg).is_zero();
}

}  // namespace

VerifyReport verify_dga(const FilteredDGA& dga) {
  VerifyReport report;
  std::unique_ptr<FlatDifferential> flat;
  try {
    flat = std::make_unique<FlatDifferential>(dga);
  } catch (const detail::Overflow&) {
  }
  const bool filtered = dga.ring.uv_mode == UvMode::kPolynomial;
  for (const auto& g : dga.generators) {
    const NcPoly& dg = dga.d(g);
    VerifyEntry entry;
    entry.generator = g;
    entry.d_squared_zero = d_squared_zero(dga, flat.get(), dg);
    entry.degree_ok = dg.is_zero() || degree_of(dg) == g.degree() - 1;
    if (filtered) {
      bool ok = true;
      for (const auto& [w, c] : dg.terms()) {
        auto [eu, ev] = min_uv_exponents(c);
        ok = ok && eu >= 0 && ev >= 0;
      }
      entry.filtration_ok = ok;
    }
    report.entries.push_back(entry);
  }
  return report;
}

// ---------------------------------------------------------------------------

namespace {

FilteredDGA map_dga_coefficients(const FilteredDGA& dga, const CoeffMap& map,
                                 Provenance provenance) {
  FilteredDGA out;
  out.braid = dga.braid;
  out.components = dga.components;
  out.ring = map.target();
  out.generators = dga.generators;
  out.provenance = provenance;
  for (const auto& [g, dg] : dga.differential) out.differential.emplace(g, dg.map_coefficients(map));
  return out;
}

}  // namespace

FilteredDGA specialize(const FilteredDGA& dga, std::optional<int> u, std::optional<int> v) {
  if (dga.ring.uv_mode != UvMode::kPolynomial) {
    throw DomainError("specialize: input must have polynomial U, V (minus version)");
  }
  RingDescriptor target = dga.ring;
  if (u && v) target.uv_mode = UvMode::kAbsent;
  CoeffMap map(dga.ring, target);
  if (u) map.set(Var::u(), CoeffPoly::constant(target, *u));
  if (v) map.set(Var::v(), CoeffPoly::constant(target, *v));

  Provenance provenance = Provenance::kTransformed;
  if (!u && !v) provenance = dga.provenance;
  if (u == 0 && v == 1) provenance = Provenance::kHat;
  if (u == 0 && v == 0) provenance = Provenance::kDoubleHat;
  if (u == 1 && v == 1) provenance = Provenance::kUnfiltered;
  return map_dga_coefficients(dga, map, provenance);
}

FilteredDGA infinity_dga(const BraidWord& braid) {
  const ComponentData comp = link_components(braid);
  if (comp.count != 1) {
    throw DomainError("infinity_dga: closure of '" + to_string(braid) + "' has " +
                      std::to_string(comp.count) +
                      " components; the infinity version is defined for knots only");
  }
  const int sl = self_linking(braid);
  if ((sl + 1) % 2 != 0) {
    throw VerificationError("infinity_dga: sl + 1 = " + std::to_string(sl + 1) + " is odd");
  }
  const int shift = (sl + 1) / 2;
  const FilteredDGA minus = build_filtered_dga(braid);
  RingDescriptor target = minus.ring;
  target.uv_mode = UvMode::kLaurent;
  CoeffMap map(minus.ring, target);
  map.set(Var::lambda(1), CoeffPoly::variable(target, Var::lambda(1)) *
                              CoeffPoly::variable(target, Var::u(), -shift) *
                              CoeffPoly::variable(target, Var::v(), shift));
  return map_dga_coefficients(minus, map, Provenance::kInfinity);
}

// ---------------------------------------------------------------------------

FilteredDGA apply_tame_substitution(const FilteredDGA& dga, GenId g, const NcPoly& image) {
  const std::string where = "apply_tame_substitution(" + g.name() + "): ";
  if (!dga.has(g)) throw DomainError(where + "generator is not in the DGA");
  if (!(image.ring() == dga.ring)) throw DomainError(where + "image has the wrong ring");
  if (image.is_zero()) throw DomainError(where + "image is zero");
  if (degree_of(image) != g.degree()) {
    throw DomainError(where + "image is not homogeneous of degree " + std::to_string(g.degree()));
  }
  const Word single{g};
  NcPoly rest(dga.ring);
  for (const auto& [w, c] : image.terms()) {
    if (w == single) continue;
    for (const auto& h : w) {
      if (h == g) throw DomainError(where + "the non-leading part contains " + g.name());
      if (!dga.has(h)) throw DomainError(where + "image uses unknown generator " + h.name());
    }
    rest.add_term(w, c);
  }
  const CoeffPoly unit = image.coefficient_of(single);
  if (unit.is_zero()) throw DomainError(where + "image does not contain " + g.name());
  if (!unit.is_unit()) {
    throw DomainError(where + "coefficient " + to_text(unit) + " of " + g.name() +
                      " is not a unit");
  }
  const CoeffPoly unit_inv = unit.inverse();

  GenSubstitution forward(dga.ring);
  forward.set(g, image);
  GenSubstitution backward(dga.ring);
  backward.set(g, unit_inv * (NcPoly::generator(dga.ring, g) - rest));

  FilteredDGA out = dga;
  out.provenance = Provenance::kTransformed;
  for (const auto& h : dga.generators) {
    NcPoly pulled = backward.apply(NcPoly::generator(dga.ring, h));
    out.differential.at(h) = forward.apply(apply_differential(dga, pulled));
  }
  return out;
}

FilteredDGA destabilize(const FilteredDGA& dga, GenId high, GenId low) {
  const std::string where = "destabilize(" + high.name() + ", " + low.name() + "): ";
  if (!dga.has(high) || !dga.has(low)) throw DomainError(where + "generator not in the DGA");
  if (high == low) throw DomainError(where + "generators must differ");
  if (high.degree() != low.degree() + 1) {
    throw DomainError(where + "degree of the first generator must exceed the second by one");
  }
  const NcPoly& dh = dga.d(high);
  const CoeffPoly unit = dh.coefficient_of(Word{low});
  if (unit.is_zero()) throw DomainError(where + "d(" + high.name() + ") is not a multiple of " + low.name());
  if (dh.size() != 1) {
    throw DomainError(where + "d(" + high.name() + ") has terms besides the multiple of " + low.name());
  }
  if (!unit.is_unit()) {
    throw DomainError(where + "coefficient " + to_text(unit) + " is not a unit");
  }
  if (!dga.d(low).is_zero()) throw DomainError(where + "d(" + low.name() + ") is nonzero");
  for (const auto& [g, dg] : dga.differential) {
    if (g == high) continue;
    if (dg.contains(low)) {
      throw DomainError(where + low.name() + " occurs in d(" + g.name() + ")");
    }
    if (dg.contains(high)) {
      throw DomainError(where + high.name() + " occurs in d(" + g.name() + ")");
    }
  }
  FilteredDGA out = dga;
  out.provenance = Provenance::kTransformed;
  out.differential.erase(high);
  out.differential.erase(low);
  std::erase_if(out.generators, [&](GenId g) { return g == high || g == low; });
  return out;
}

// ---------------------------------------------------------------------------

std::string differential_symbol(Provenance p) {
  switch (p) {
    case Provenance::kMinus: return "∂⁻";
    case Provenance::kHat: return "∂^";
    case Provenance::kDoubleHat: return "∂^^";
    case Provenance::kUnfiltered: return "∂";
    case Provenance::kInfinity: return "∂∞";
    case Provenance::kTransformed: return "∂'";
  }
  return "∂";
}

std::string to_display(const FilteredDGA& dga) {
  std::ostringstream out;
  const std::string symbol = differential_symbol(dga.provenance);
  for (const auto& g : dga.generators) {
    out << symbol << display_name(g, dga.strands()) << " = " << to_display(dga.d(g), dga.strands())
        << '\n';
  }
  return out.str();
}

}  // namespace tdga
