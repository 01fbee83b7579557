#include "tdga/braid.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "tdga/errors.hpp"

namespace tdga {

bool ComponentData::is_leading(int strand) const {
  return std::binary_search(leading.begin(), leading.end(), strand);
}

BraidWord parse_braid(std::string_view text, std::optional<int> strands) {
  std::vector<int> raw;
  std::vector<std::string> tokens;
  std::size_t pos = 0;
  auto is_sep = [](char ch) {
    return ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r' || ch == ',';
  };
  while (pos < text.size()) {
    while (pos < text.size() && is_sep(text[pos])) ++pos;
    std::size_t end = pos;
    while (end < text.size() && !is_sep(text[end])) ++end;
    if (end == pos) break;
    std::string_view token = text.substr(pos, end - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc{} || ptr != token.data() + token.size()) {
      throw DomainError("parse_braid: token '" + std::string(token) +
                        "' is not an integer");
    }
    if (value == 0) {
      throw DomainError("parse_braid: token '0' is not a braid generator");
    }
    raw.push_back(value);
    tokens.emplace_back(token);
    pos = end;
  }

  BraidWord braid;
  if (strands) {
    if (*strands < 1) {
      throw DomainError("parse_braid: strand count must be positive, got " +
                        std::to_string(*strands));
    }
    braid.strands = *strands;
  } else {
    int max_index = 0;
    for (int v : raw) max_index = std::max(max_index, std::abs(v));
    braid.strands = max_index + 1;
  }
  for (std::size_t i = 0; i < raw.size(); ++i) {
    int k = std::abs(raw[i]);
    if (k >= braid.strands) {
      throw DomainError("parse_braid: token '" + tokens[i] +
                        "' is out of range for " + std::to_string(braid.strands) +
                        " strands");
    }
    braid.letters.push_back({k, raw[i] > 0 ? 1 : -1});
  }
  return braid;
}

std::string to_string(const BraidWord& braid) {
  std::ostringstream out;
  for (std::size_t i = 0; i < braid.letters.size(); ++i) {
    if (i) out << ' ';
    out << braid.letters[i].index * braid.letters[i].sign;
  }
  return out.str();
}

std::vector<int> permutation(const BraidWord& braid) {
  // at[p] = strand (top label) currently at position p
  std::vector<int> at(braid.strands);
  std::iota(at.begin(), at.end(), 1);
  for (const auto& letter : braid.letters) {
    std::swap(at[letter.index - 1], at[letter.index]);
  }
  std::vector<int> perm(braid.strands);
  for (int p = 0; p < braid.strands; ++p) perm[at[p] - 1] = p + 1;
  return perm;
}

ComponentData link_components(const BraidWord& braid) {
  const int n = braid.strands;
  const auto perm = permutation(braid);
  ComponentData data;
  data.alpha.assign(n, 0);
  for (int start = 1; start <= n; ++start) {
    if (data.alpha[start - 1] != 0) continue;
    ++data.count;
    data.leading.push_back(start);
    for (int s = start; data.alpha[s - 1] == 0; s = perm[s - 1]) {
      data.alpha[s - 1] = data.count;
    }
  }
  data.writhe_per_component.assign(data.count, 0);
  std::vector<int> at(n);
  std::iota(at.begin(), at.end(), 1);
  for (const auto& letter : braid.letters) {
    int left = at[letter.index - 1];
    int right = at[letter.index];
    data.total_writhe += letter.sign;
    if (data.alpha[left - 1] == data.alpha[right - 1]) {
      data.writhe_per_component[data.alpha[left - 1] - 1] += letter.sign;
    }
    std::swap(at[letter.index - 1], at[letter.index]);
  }
  return data;
}

int self_linking(const BraidWord& braid) {
  const auto comp = link_components(braid);
  if (comp.count != 1) {
    throw DomainError("self_linking: closure of '" + to_string(braid) + "' has " +
                      std::to_string(comp.count) +
                      " components; only knots are supported");
  }
  return comp.total_writhe - braid.strands;
}

BraidWord inverse_braid(const BraidWord& braid) {
  BraidWord inv{braid.strands, {}};
  for (auto it = braid.letters.rbegin(); it != braid.letters.rend(); ++it) {
    inv.letters.push_back({it->index, -it->sign});
  }
  return inv;
}

BraidWord concatenate(const BraidWord& first, const BraidWord& second) {
  BraidWord out{std::max(first.strands, second.strands), first.letters};
  out.letters.insert(out.letters.end(), second.letters.begin(), second.letters.end());
  return out;
}

}  // namespace tdga
