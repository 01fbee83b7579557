#include "tdga/braid_action.hpp"

#include "tdga/errors.hpp"

namespace tdga {

RingDescriptor braid_action_ring(int strands) {
  return RingDescriptor{0, strands + 1, UvMode::kAbsent};
}

GenSubstitution phi_generator(int k, int sign, int strands, int first) {
  if (k < first || k > strands - 1) {
    throw DomainError("phi_generator: sigma_" + std::to_string(k) + " is not a generator of B_" +
                      std::to_string(strands - first + 1));
  }
  if (sign != 1 && sign != -1) throw DomainError("phi_generator: sign must be +1 or -1");

  const RingDescriptor ring = braid_action_ring(strands);
  const int l = k + 1;
  auto gen = [&](int i, int j) { return NcPoly::generator(ring, GenId::a(i, j)); };
  // ratio = mu~_k mu~_{k+1}^{-1}
  const CoeffPoly ratio = CoeffPoly::variable(ring, Var::mu_tilde(k)) *
                          CoeffPoly::variable(ring, Var::mu_tilde(l), -1);

  GenSubstitution phi(ring, family_bit(Family::kA));
  CoeffMap swap(ring, ring);
  swap.set(Var::mu_tilde(k), CoeffPoly::variable(ring, Var::mu_tilde(l)));
  swap.set(Var::mu_tilde(l), CoeffPoly::variable(ring, Var::mu_tilde(k)));
  phi.set_coefficients(swap);

  if (sign == 1) {
    phi.set(GenId::a(k, l), -gen(l, k));
    phi.set(GenId::a(l, k), -(ratio * gen(k, l)));
    for (int i = first; i <= strands; ++i) {
      if (i == k || i == l) continue;
      phi.set(GenId::a(i, l), gen(i, k));
      phi.set(GenId::a(l, i), gen(k, i));
      if (i < k) {
        phi.set(GenId::a(i, k), gen(i, l) - gen(i, k) * gen(k, l));
      } else {
        phi.set(GenId::a(i, k), gen(i, l) - ratio * (gen(i, k) * gen(k, l)));
      }
      phi.set(GenId::a(k, i), gen(l, i) - gen(l, k) * gen(k, i));
    }
  } else {
    // Preimages under the sign = +1 table; the round trip is checked in tests.
    phi.set(GenId::a(l, k), -gen(k, l));
    phi.set(GenId::a(k, l), -(ratio * gen(l, k)));
    for (int i = first; i <= strands; ++i) {
      if (i == k || i == l) continue;
      phi.set(GenId::a(i, k), gen(i, l));
      phi.set(GenId::a(k, i), gen(l, i));
      if (i < k) {
        phi.set(GenId::a(i, l), gen(i, k) - ratio * (gen(i, l) * gen(l, k)));
      } else {
        phi.set(GenId::a(i, l), gen(i, k) - gen(i, l) * gen(l, k));
      }
      phi.set(GenId::a(l, i), gen(k, i) - gen(k, l) * gen(l, i));
    }
  }
  return phi;
}

GenSubstitution phi_braid(const BraidWord& braid, int first) {
  const int n = braid.strands;
  const RingDescriptor ring = braid_action_ring(n);
  std::map<GenId, NcPoly> images;
  for (int i = first; i <= n; ++i) {
    for (int j = first; j <= n; ++j) {
      if (i != j) images.emplace(GenId::a(i, j), NcPoly::generator(ring, GenId::a(i, j)));
    }
  }
  std::vector<CoeffPoly> tilde;
  for (int i = 0; i <= n; ++i) tilde.push_back(CoeffPoly::variable(ring, Var::mu_tilde(i)));

  // Innermost factor first: S <- phi_letter o S, from the last letter back.
  for (auto it = braid.letters.rbegin(); it != braid.letters.rend(); ++it) {
    GenSubstitution step = phi_generator(it->index, it->sign, n, first);
    for (auto& [g, image] : images) image = step.apply(image);
    for (auto& t : tilde) t = step.coefficients().apply(t);
  }

  GenSubstitution phi(ring, family_bit(Family::kA));
  CoeffMap coeff(ring, ring);
  for (int i = 0; i <= n; ++i) {
    if (!(tilde[i] == CoeffPoly::variable(ring, Var::mu_tilde(i)))) {
      coeff.set(Var::mu_tilde(i), tilde[i]);
    }
  }
  phi.set_coefficients(coeff);
  for (auto& [g, image] : images) {
    if (!(image == NcPoly::generator(ring, g))) phi.set(g, std::move(image));
  }
  return phi;
}

CoeffMap mu_tilde_elimination(const ComponentData& components, int strands,
                              RingDescriptor target) {
  CoeffMap map(braid_action_ring(strands), target);
  for (int i = 1; i <= strands; ++i) {
    map.set(Var::mu_tilde(i), CoeffPoly::variable(target, Var::mu(components.alpha_of(i))));
  }
  return map;
}

GenSubstitution eliminate(const GenSubstitution& phi, int strands, const CoeffMap& elimination) {
  GenSubstitution out(elimination.target(), family_bit(Family::kA));
  for (int i = 1; i <= strands; ++i) {
    for (int j = 1; j <= strands; ++j) {
      if (i == j) continue;
      GenId g = GenId::a(i, j);
      auto it = phi.images().find(g);
      if (it != phi.images().end()) out.set(g, it->second.map_coefficients(elimination));
    }
  }
  return out;
}

namespace {

PhiMatrices extract_matrices(const GenSubstitution& extended, int n) {
  const RingDescriptor ring = braid_action_ring(n);
  PhiMatrices m{NcMatrix(n, ring), NcMatrix(n, ring)};
  for (int i = 1; i <= n; ++i) {
    NcPoly left = extended.image(GenId::a(i, 0));
    for (const auto& [w, c] : left.terms()) {
      if (w.empty() || w.back().family != Family::kA || w.back().j != 0 || w.back().i == 0) {
        throw VerificationError("phi_matrices: a term of phi'(a_" + std::to_string(i) +
                                "_0) does not end in some a_j_0");
      }
      Word rest(w.begin(), w.end() - 1);
      m.left.at(i, w.back().i) += NcPoly::term(c, rest);
    }
    NcPoly right = extended.image(GenId::a(0, i));
    for (const auto& [w, c] : right.terms()) {
      if (w.empty() || w.front().family != Family::kA || w.front().i != 0 || w.front().j == 0) {
        throw VerificationError("phi_matrices: a term of phi'(a_0_" + std::to_string(i) +
                                ") does not start with some a_0_j");
      }
      Word rest(w.begin() + 1, w.end());
      m.right.at(w.front().j, i) += NcPoly::term(c, rest);
    }
  }
  return m;
}

// x * y or y * x, whichever has fewer term pairs to expand.
NcMatrix cheaper_product(const NcMatrix& x, const NcMatrix& y) {
  auto pairs = [](const NcMatrix& a, const NcMatrix& b) {
    double total = 0;
    for (int i = 1; i <= a.dim(); ++i) {
      for (int j = 1; j <= a.dim(); ++j) {
        for (int k = 1; k <= a.dim(); ++k) {
          total += static_cast<double>(a.at(i, k).size()) * static_cast<double>(b.at(k, j).size());
        }
      }
    }
    return total;
  };
  return pairs(x, y) <= pairs(y, x) ? x * y : y * x;
}

RingDescriptor closure_ring(const BraidWord& braid) {
  return RingDescriptor{link_components(braid).count, 0, UvMode::kPolynomial};
}

}  // namespace

PhiMatrices phi_matrices_raw(const BraidWord& braid) {
  return extract_matrices(phi_braid(braid, 0), braid.strands);
}

PhiMatrices phi_inverse_matrices_raw(const BraidWord& braid) {
  // Group law, one letter at a time: with P the prefix before letter s,
  //   Phi^R_{Ps} = Phi^R_P phi_P(Phi^R_s),  Phi^L_{Ps} = phi_P(Phi^L_s) Phi^L_P,
  // and the inverse of a single-letter matrix is phi_s(Phi_{s^-1}).
  const int n = braid.strands;
  const RingDescriptor ring = braid_action_ring(n);
  PhiMatrices inv{NcMatrix::identity(n, ring), NcMatrix::identity(n, ring)};
  GenSubstitution phi_prefix(ring, family_bit(Family::kA));
  for (const auto& letter : braid.letters) {
    phi_prefix = compose(phi_prefix, phi_generator(letter.index, letter.sign, n, 1));
    PhiMatrices undo = extract_matrices(phi_generator(letter.index, -letter.sign, n, 0), n);
    inv.left = inv.left * undo.left.substitute(phi_prefix);
    inv.right = undo.right.substitute(phi_prefix) * inv.right;
  }
  return inv;
}

PhiData phi_data(const BraidWord& braid, RingDescriptor target) {
  const int n = braid.strands;
  const ComponentData comp = link_components(braid);
  const CoeffMap elim = mu_tilde_elimination(comp, n, target);

  GenSubstitution extended = phi_braid(braid, 0);
  PhiMatrices raw = extract_matrices(extended, n);
  PhiMatrices raw_inv = phi_inverse_matrices_raw(braid);

  PhiData data{braid,
               extended,
               eliminate(extended, n, elim),
               raw.left.map_coefficients(elim),
               raw.right.map_coefficients(elim),
               raw_inv.left.map_coefficients(elim),
               raw_inv.right.map_coefficients(elim)};

  // Over a ring that embeds in a skew field a one-sided matrix inverse is
  // two-sided, so only the cheaper of the two products is expanded.
  const std::string where = " for braid '" + to_string(braid) + "'";
  if (!cheaper_product(data.phi_R, data.phi_R_inv).is_identity()) {
    throw VerificationError("phi_matrix_inverses: Phi^R times its inverse is not the identity" +
                            where);
  }
  if (!cheaper_product(data.phi_L, data.phi_L_inv).is_identity()) {
    throw VerificationError("phi_matrix_inverses: Phi^L times its inverse is not the identity" +
                            where);
  }
  return data;
}

PhiMatrices phi_matrices(const BraidWord& braid) {
  PhiData d = phi_data(braid, closure_ring(braid));
  return {d.phi_L, d.phi_R};
}

PhiMatrices phi_matrix_inverses(const BraidWord& braid) {
  PhiData d = phi_data(braid, closure_ring(braid));
  return {d.phi_L_inv, d.phi_R_inv};
}

}  // namespace tdga
