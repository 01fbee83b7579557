#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tdga {

// sigma_index^sign
struct BraidLetter {
  int index = 1;
  int sign = 1;

  friend bool operator==(const BraidLetter&, const BraidLetter&) = default;
};

struct BraidWord {
  int strands = 1;
  std::vector<BraidLetter> letters;

  friend bool operator==(const BraidWord&, const BraidWord&) = default;
};

struct ComponentData {
  int count = 0;                          // r
  std::vector<int> alpha;                 // alpha[i-1] in [1, r]
  std::vector<int> leading;               // sorted strand indices, one per component
  std::vector<int> writhe_per_component;  // writhe_per_component[c-1]
  int total_writhe = 0;

  bool is_leading(int strand) const;
  int alpha_of(int strand) const { return alpha.at(strand - 1); }
};

// Whitespace/comma separated nonzero integers; k > 0 is sigma_k, k < 0 is
// sigma_|k|^-1. Without `strands`, n = max|k| + 1 (1 for the empty word).
BraidWord parse_braid(std::string_view text,
                      std::optional<int> strands = std::nullopt);

// Inverse of parse_braid for the letters: "1 -2 1".
std::string to_string(const BraidWord& braid);

// perm[i-1] is the bottom position reached by the strand that starts at top
// position i, reading the word left to right as top to bottom. With this
// convention permutation(B B') = permutation(B') o permutation(B).
std::vector<int> permutation(const BraidWord& braid);

// Components are the cycles of the permutation, numbered by increasing
// minimal strand index; the minimal strand is the leading one.
ComponentData link_components(const BraidWord& braid);

// Writhe minus braid index. Only defined when the closure is a knot.
int self_linking(const BraidWord& braid);

BraidWord inverse_braid(const BraidWord& braid);

BraidWord concatenate(const BraidWord& first, const BraidWord& second);

}  // namespace tdga
