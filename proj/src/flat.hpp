#pragma once

// Internal fast-path term engine. Words and exponent vectors are packed into
// int16 cells and coefficients into int64; any value leaving that range
// raises Overflow so callers can redo the work with exact arithmetic.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "tdga/free_algebra.hpp"

namespace tdga::detail {

struct Overflow {};

using Cell = std::int16_t;
using Cells = std::span<const Cell>;

Cell encode(GenId g);
GenId decode(Cell c);
inline int cell_degree(Cell c) { return tdga::degree(static_cast<Family>(c >> 12)); }

class FlatPoly {
 public:
  explicit FlatPoly(int nexp = 0) : nexp_(nexp) { start_.push_back(0); }

  static FlatPoly from(const NcPoly& x);
  static FlatPoly from(const CoeffPoly& c);
  NcPoly to_ncpoly(const RingDescriptor& ring) const;

  int nexp() const { return nexp_; }
  std::size_t size() const { return coeff_.size(); }
  bool empty() const { return coeff_.empty(); }
  Cells word(std::size_t t) const { return {data_.data() + start_[t], wlen_[t]}; }
  const Cell* exps(std::size_t t) const { return data_.data() + start_[t] + wlen_[t]; }
  std::int64_t coeff(std::size_t t) const { return coeff_[t]; }

  void push(Cells word, const Cell* exps, std::int64_t c);

 private:
  int nexp_;
  std::vector<Cell> data_;
  std::vector<std::size_t> start_;
  std::vector<std::uint32_t> wlen_;
  std::vector<std::int64_t> coeff_;
};

// Hash map from (word, exponents) to an int64 coefficient.
class Accumulator {
 public:
  explicit Accumulator(int nexp);

  // Adds c * w1 w2 w3 * x^(e1 + e2 + e3); null exponent pointers mean zero.
  void add(Cells w1, Cells w2, Cells w3, const Cell* e1, const Cell* e2, const Cell* e3,
           std::int64_t c);
  void take_into(FlatPoly& out) const;
  bool all_zero() const;
  void clear();

 private:
  struct Slot {
    std::uint64_t hash;
    std::size_t off;
    std::uint32_t len;
    std::uint32_t wlen;
    std::int64_t coeff;
  };
  void grow();

  int nexp_;
  std::vector<Slot> slots_;
  std::vector<std::uint32_t> used_;
  std::vector<Cell> arena_;
  std::vector<Cell> key_;
};

// Flat polynomial with per-term hashes of the word and the exponent vector.
// Word hashes are polynomial in the cells so concatenations hash in O(1).
struct HashedPoly {
  FlatPoly poly;
  std::vector<std::uint64_t> word_hash;
  std::vector<std::uint64_t> exp_hash;

  explicit HashedPoly(FlatPoly p);
};

struct ProductPart {
  const HashedPoly* x;
  const HashedPoly* y;
};

// Sum of x * y over the parts.
FlatPoly sum_of_products(const std::vector<ProductPart>& parts, int nexp);

// Graded derivation given by generator images; lookup returns null for
// generators with zero image.
using DerivationLookup = std::function<const HashedPoly*(Cell)>;
FlatPoly apply_derivation(const FlatPoly& x, const DerivationLookup& d, int nexp);

}  // namespace tdga::detail
