#pragma once

#include "tdga/braid.hpp"
#include "tdga/coeff_ring.hpp"
#include "tdga/free_algebra.hpp"

namespace tdga {

// Z[mu~_0^{+-1}, ..., mu~_n^{+-1}]: coefficients of the braid action before
// the mu~ variables are identified with link meridians. Slot 0 belongs to the
// idle strand of the extended braid.
RingDescriptor braid_action_ring(int strands);

// phi_{sigma_k}^{sign} on the degree-0 algebra over strands first..strands.
// first = 0 gives the extended algebra with an idle strand labelled 0.
GenSubstitution phi_generator(int k, int sign, int strands, int first = 1);

// phi_B = phi_{first letter} o ... o phi_{last letter}, before mu~ elimination.
GenSubstitution phi_braid(const BraidWord& braid, int first = 1);

// mu~_i -> mu_{alpha(i)} into `target`; mu~_0 has no image.
CoeffMap mu_tilde_elimination(const ComponentData& components, int strands,
                              RingDescriptor target);

// phi_B as an automorphism of the degree-0 part of the link algebra over
// `target` (identity on lambda, mu).
GenSubstitution eliminate(const GenSubstitution& phi, int strands, const CoeffMap& elimination);

struct PhiMatrices {
  NcMatrix left;
  NcMatrix right;
};

// Left/right coefficient matrices of phi'_B(a_i0), phi'_B(a_0j) on the
// extended braid, still over braid_action_ring.
PhiMatrices phi_matrices_raw(const BraidWord& braid);

// (Phi^L)^{-1}, (Phi^R)^{-1} over braid_action_ring, as products of
// single-letter inverses pushed forward by the prefix automorphisms.
PhiMatrices phi_inverse_matrices_raw(const BraidWord& braid);

struct PhiData {
  BraidWord braid;
  GenSubstitution phi_raw;  // extended algebra, before elimination
  GenSubstitution phi;      // n-strand algebra over the link ring
  NcMatrix phi_L;
  NcMatrix phi_R;
  NcMatrix phi_L_inv;
  NcMatrix phi_R_inv;
};

// All braid-action data over `target`. Each inverse is checked by expanding
// one product with Phi (the cheaper side); a VerificationError is raised if it
// is not the identity.
PhiData phi_data(const BraidWord& braid, RingDescriptor target);

// Convenience: (Phi^L, Phi^R) over the standard minus-mode ring of the closure.
PhiMatrices phi_matrices(const BraidWord& braid);
PhiMatrices phi_matrix_inverses(const BraidWord& braid);

}  // namespace tdga
