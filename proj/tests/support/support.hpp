#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "tdga/augmentations.hpp"
#include "tdga/braid.hpp"
#include "tdga/coeff_ring.hpp"
#include "tdga/free_algebra.hpp"
#include "tdga/transverse_dga.hpp"

namespace tdga::test {

inline RingDescriptor minus_ring(int r = 1) { return RingDescriptor{r, 0, UvMode::kPolynomial}; }

// "a12" -> a_1_2; single-digit indices only.
inline GenId gen(const std::string& s) {
  const int i = s[1] - '0';
  const int j = s[2] - '0';
  switch (s[0]) {
    case 'a': return GenId::a(i, j);
    case 'b': return GenId::b(i, j);
    case 'c': return GenId::c(i, j);
    default: return GenId::e(i, j);
  }
}

// Sum of terms given as {coefficient text, space-separated word}.
inline NcPoly poly(RingDescriptor ring,
                   std::initializer_list<std::pair<std::string, std::string>> terms) {
  NcPoly out(ring);
  for (const auto& [coeff, word] : terms) {
    Word w;
    std::istringstream in(word);
    std::string tok;
    while (in >> tok) w.push_back(gen(tok));
    out.add_term(w, parse_coeff(coeff, ring));
  }
  return out;
}

inline CoeffPoly coeff(RingDescriptor ring, const std::string& text) {
  return parse_coeff(text, ring);
}

inline NcMatrix matrix(RingDescriptor ring, const std::vector<std::vector<NcPoly>>& rows) {
  NcMatrix m(static_cast<int>(rows.size()), ring);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows.size(); ++j) {
      m.at(static_cast<int>(i) + 1, static_cast<int>(j) + 1) = rows[i][j];
    }
  }
  return m;
}

inline BraidWord random_braid(std::mt19937_64& rng, int min_strands, int max_strands,
                              int max_length) {
  BraidWord b;
  b.strands = std::uniform_int_distribution<int>(min_strands, max_strands)(rng);
  const int len = std::uniform_int_distribution<int>(0, max_length)(rng);
  if (b.strands < 2) return b;
  std::uniform_int_distribution<int> index(1, b.strands - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int t = 0; t < len; ++t) b.letters.push_back({index(rng), coin(rng) ? 1 : -1});
  return b;
}

// Every word of length <= max_length in B_n.
inline std::vector<BraidWord> all_words(int strands, int max_length) {
  std::vector<BraidWord> out{BraidWord{strands, {}}};
  std::vector<BraidLetter> alphabet;
  for (int k = 1; k < strands; ++k) {
    alphabet.push_back({k, 1});
    alphabet.push_back({k, -1});
  }
  std::size_t begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t end = out.size();
    for (std::size_t w = begin; w < end; ++w) {
      for (const auto& letter : alphabet) {
        BraidWord next = out[w];
        next.letters.push_back(letter);
        out.push_back(next);
      }
    }
    begin = end;
  }
  return out;
}

// Brute force: for each assignment of Z/p values to the a-generators, every
// degree-1 differential is re-evaluated term by term from the symbolic
// polynomial. Nothing is cached between assignments.
inline std::uint64_t naive_count(const FilteredDGA& dga, std::uint64_t p,
                                 const std::vector<long long>& lambda,
                                 const std::vector<long long>& mu) {
  std::vector<GenId> vars;
  std::vector<GenId> constrained;
  for (const auto& g : dga.generators) {
    if (g.degree() == 0) vars.push_back(g);
    if (g.degree() == 1) constrained.push_back(g);
  }
  auto reduce = [p](long long x) {
    const long long m = static_cast<long long>(p);
    return static_cast<std::uint64_t>(((x % m) + m) % m);
  };
  FieldImages images{p, {}};
  for (int j = 1; j <= dga.ring.components; ++j) {
    images.values[Var::lambda(j)] = reduce(lambda[j - 1]);
    images.values[Var::mu(j)] = reduce(mu[j - 1]);
  }
  std::vector<std::uint64_t> value(vars.size(), 0);
  std::uint64_t count = 0;
  while (true) {
    bool all_zero = true;
    for (const auto& g : constrained) {
      std::uint64_t total = 0;
      for (const auto& [w, c] : dga.d(g).terms()) {
        std::uint64_t term = substitute_coeff(c, images);
        for (const auto& h : w) {
          if (h.degree() != 0) {
            term = 0;
            break;
          }
          const auto pos = static_cast<std::size_t>(
              std::find(vars.begin(), vars.end(), h) - vars.begin());
          term = term * value[pos] % p;
        }
        total = (total + term) % p;
      }
      if (total != 0) {
        all_zero = false;
        break;
      }
    }
    if (all_zero) ++count;
    std::size_t k = 0;
    while (k < value.size() && value[k] == p - 1) value[k++] = 0;
    if (k == value.size()) break;
    ++value[k];
  }
  return count;
}

}  // namespace tdga::test
