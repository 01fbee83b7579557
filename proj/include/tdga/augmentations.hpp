#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tdga/coeff_ring.hpp"
#include "tdga/transverse_dga.hpp"

namespace tdga {

// Field images of the coefficient variables for counting augmentations into
// (Z/p, 0). lambda and mu are indexed by component; u, v are required exactly
// when the DGA's ring still carries U and V.
struct AugmentationProblem {
  std::uint64_t p = 3;
  std::vector<long long> lambda;
  std::vector<long long> mu;
  std::optional<long long> u;
  std::optional<long long> v;
};

// Validates the problem against the ring and reduces the images mod p.
FieldImages field_images(const RingDescriptor& ring, const AugmentationProblem& problem);

// Number of assignments of Z/p values to the degree-0 generators under which
// every degree-1 generator's differential vanishes. `threads` <= 0 uses
// default_threads().
std::uint64_t count_augmentations(const FilteredDGA& dga, const AugmentationProblem& problem,
                                  int threads = 0);

// The count for the minus DGA of the closure of `braid` with U, V sent to
// problem.u, problem.v. Evaluates the braid action on each assignment one
// letter at a time, so the differentials are never expanded.
std::uint64_t count_braid_augmentations(const BraidWord& braid, const AugmentationProblem& problem,
                                        int threads = 0);

// The same count for the infinity DGA: lambda is replaced by
// lambda * U^-k * V^k in Z/p with k = (sl + 1) / 2. Knots only; U, V must be units.
std::uint64_t count_braid_augmentations_infinity(const BraidWord& braid,
                                                 const AugmentationProblem& problem,
                                                 int threads = 0);

struct UnitTableRow {
  std::vector<std::uint64_t> lambda;
  std::vector<std::uint64_t> mu;
  std::optional<std::uint64_t> u;
  std::optional<std::uint64_t> v;
  std::uint64_t count = 0;

  friend bool operator==(const UnitTableRow&, const UnitTableRow&) = default;
};

// count_augmentations over every unit assignment (lambda_j, mu_j[, U, V]),
// rows in odometer order with the last variable fastest.
std::vector<UnitTableRow> count_augmentations_all_units(const FilteredDGA& dga, std::uint64_t p,
                                                        int threads = 0);

// TDGA_THREADS if set and positive, else the hardware concurrency.
int default_threads();

}  // namespace tdga
