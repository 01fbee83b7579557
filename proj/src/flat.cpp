#include "flat.hpp"

#include <algorithm>
#include <cstring>
#include <limits>
#include <numeric>

namespace tdga::detail {

namespace {

constexpr std::size_t kEmissionsPerPass = std::size_t(1) << 23;

std::int64_t mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
  return r;
}

std::uint64_t hash_cells(const Cell* p, std::size_t n) {
  std::uint64_t h = 0x9e3779b97f4a7c15ull ^ n;
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    std::uint64_t x;
    std::memcpy(&x, p + k, sizeof x);
    h = (h ^ x) * 0xbf58476d1ce4e5b9ull;
    h ^= h >> 29;
  }
  for (; k < n; ++k) {
    h = (h ^ static_cast<std::uint16_t>(p[k])) * 0x94d049bb133111ebull;
    h ^= h >> 31;
  }
  h ^= h >> 32;
  return h | (std::uint64_t(1) << 63);
}

std::size_t passes_for(std::size_t emissions) {
  return std::max<std::size_t>(1, (emissions + kEmissionsPerPass - 1) / kEmissionsPerPass);
}

}  // namespace

Cell encode(GenId g) {
  if (g.i >= 64 || g.j >= 64) throw Overflow{};
  return static_cast<Cell>((static_cast<int>(g.family) << 12) | (g.i << 6) | g.j);
}

GenId decode(Cell c) {
  return GenId{static_cast<Family>(c >> 12), static_cast<std::uint8_t>((c >> 6) & 63),
               static_cast<std::uint8_t>(c & 63)};
}

// ---------------------------------------------------------------------------

void FlatPoly::push(Cells word, const Cell* exps, std::int64_t c) {
  data_.insert(data_.end(), word.begin(), word.end());
  data_.insert(data_.end(), exps, exps + nexp_);
  wlen_.push_back(static_cast<std::uint32_t>(word.size()));
  coeff_.push_back(c);
  start_.push_back(data_.size());
}

namespace {

void push_coeff(FlatPoly& out, Cells word, const CoeffPoly& c) {
  static const Integer kMax = std::numeric_limits<std::int64_t>::max();
  std::vector<Cell> exps(static_cast<std::size_t>(out.nexp()));
  for (const auto& [e, k] : c.terms()) {
    if (k > kMax || k < -kMax) throw Overflow{};
    for (std::size_t s = 0; s < exps.size(); ++s) {
      if (e[s] > std::numeric_limits<Cell>::max() || e[s] < std::numeric_limits<Cell>::min()) {
        throw Overflow{};
      }
      exps[s] = static_cast<Cell>(e[s]);
    }
    out.push(word, exps.data(), static_cast<std::int64_t>(k));
  }
}

}  // namespace

FlatPoly FlatPoly::from(const NcPoly& x) {
  FlatPoly out(x.ring().size());
  std::vector<Cell> word;
  for (const auto& [w, c] : x.terms()) {
    word.clear();
    for (const auto& g : w) word.push_back(encode(g));
    push_coeff(out, word, c);
  }
  return out;
}

FlatPoly FlatPoly::from(const CoeffPoly& c) {
  FlatPoly out(c.ring().size());
  push_coeff(out, {}, c);
  return out;
}

NcPoly FlatPoly::to_ncpoly(const RingDescriptor& ring) const {
  std::vector<std::size_t> order(size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (wlen_[a] != wlen_[b]) return wlen_[a] < wlen_[b];
    const Cell* pa = data_.data() + start_[a];
    const Cell* pb = data_.data() + start_[b];
    return std::lexicographical_compare(pa, pa + wlen_[a] + nexp_, pb, pb + wlen_[b] + nexp_);
  });
  NcPoly out(ring);
  Word w;
  Exponents e(static_cast<std::size_t>(nexp_));
  std::size_t k = 0;
  while (k < order.size()) {
    Cells first = word(order[k]);
    CoeffPoly c(ring);
    std::size_t m = k;
    for (; m < order.size(); ++m) {
      Cells cur = word(order[m]);
      if (!std::equal(cur.begin(), cur.end(), first.begin(), first.end())) break;
      const Cell* ex = exps(order[m]);
      for (int s = 0; s < nexp_; ++s) e[s] = ex[s];
      c.add_term(e, coeff(order[m]));
    }
    w.clear();
    for (Cell cell : first) w.push_back(decode(cell));
    out.add_term(w, c);
    k = m;
  }
  return out;
}

// ---------------------------------------------------------------------------

Accumulator::Accumulator(int nexp) : nexp_(nexp), slots_(64, Slot{0, 0, 0, 0, 0}) {
}

void Accumulator::add(Cells w1, Cells w2, Cells w3, const Cell* e1, const Cell* e2,
                      const Cell* e3, std::int64_t c) {
  if (c == 0) return;
  key_.clear();
  key_.insert(key_.end(), w1.begin(), w1.end());
  key_.insert(key_.end(), w2.begin(), w2.end());
  key_.insert(key_.end(), w3.begin(), w3.end());
  const auto wlen = static_cast<std::uint32_t>(key_.size());
  for (int s = 0; s < nexp_; ++s) {
    std::int32_t v = (e1 ? e1[s] : 0) + (e2 ? e2[s] : 0) + (e3 ? e3[s] : 0);
    if (v > std::numeric_limits<Cell>::max() || v < std::numeric_limits<Cell>::min()) {
      throw Overflow{};
    }
    key_.push_back(static_cast<Cell>(v));
  }
  const std::uint64_t h = hash_cells(key_.data(), key_.size());
  if ((used_.size() + 1) * 2 > slots_.size()) grow();
  const std::size_t mask = slots_.size() - 1;
  std::size_t idx = h & mask;
  while (slots_[idx].hash != 0) {
    Slot& s = slots_[idx];
    if (s.hash == h && s.len == key_.size() &&
        std::memcmp(arena_.data() + s.off, key_.data(), key_.size() * sizeof(Cell)) == 0) {
      if (__builtin_add_overflow(s.coeff, c, &s.coeff)) throw Overflow{};
      return;
    }
    idx = (idx + 1) & mask;
  }
  slots_[idx] = Slot{h, arena_.size(), static_cast<std::uint32_t>(key_.size()), wlen, c};
  arena_.insert(arena_.end(), key_.begin(), key_.end());
  used_.push_back(static_cast<std::uint32_t>(idx));
}

void Accumulator::grow() {
  std::vector<Slot> old;
  old.swap(slots_);
  slots_.assign(old.size() * 2, Slot{0, 0, 0, 0, 0});
  const std::size_t mask = slots_.size() - 1;
  std::vector<std::uint32_t> used;
  used.reserve(used_.size());
  for (std::uint32_t k : used_) {
    std::size_t idx = old[k].hash & mask;
    while (slots_[idx].hash != 0) idx = (idx + 1) & mask;
    slots_[idx] = old[k];
    used.push_back(static_cast<std::uint32_t>(idx));
  }
  used_.swap(used);
}

void Accumulator::take_into(FlatPoly& out) const {
  for (std::uint32_t k : used_) {
    const Slot& s = slots_[k];
    if (s.coeff == 0) continue;
    out.push(Cells(arena_.data() + s.off, s.wlen), arena_.data() + s.off + s.wlen, s.coeff);
  }
}

bool Accumulator::all_zero() const {
  return std::all_of(used_.begin(), used_.end(), [&](std::uint32_t k) { return slots_[k].coeff == 0; });
}

void Accumulator::clear() {
  if (slots_.size() > (std::size_t(1) << 16) && used_.size() * 16 < slots_.size()) {
    slots_.assign(64, Slot{0, 0, 0, 0, 0});
  } else {
    for (std::uint32_t k : used_) slots_[k].hash = 0;
  }
  used_.clear();
  arena_.clear();
}

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint64_t kBase = 0x9fb21c651e98df25ull;
constexpr std::size_t kPowTable = 4096;

std::uint64_t fmix(std::uint64_t h) {
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  h *= 0xc4ceb9fe1a85ec53ull;
  h ^= h >> 33;
  return h;
}

const std::vector<std::uint64_t>& pow_table() {
  static const std::vector<std::uint64_t> table = [] {
    std::vector<std::uint64_t> t(kPowTable);
    t[0] = 1;
    for (std::size_t k = 1; k < kPowTable; ++k) t[k] = t[k - 1] * kBase;
    return t;
  }();
  return table;
}

std::uint64_t base_pow(std::size_t n) {
  if (n < kPowTable) return pow_table()[n];
  std::uint64_t r = 1, b = kBase;
  while (n) {
    if (n & 1) r *= b;
    b *= b;
    n >>= 1;
  }
  return r;
}

std::uint64_t word_hash(const Cell* p, std::size_t n) {
  std::uint64_t h = 0;
  for (std::size_t k = 0; k < n; ++k) h = h * kBase + static_cast<std::uint64_t>(p[k] + 1);
  return h;
}

std::uint64_t exp_hash(const Cell* e, int nexp) {
  std::uint64_t h = 0;
  for (int s = 0; s < nexp; ++s) {
    h += static_cast<std::uint64_t>(static_cast<std::int64_t>(e[s])) * (fmix(s + 1) | 1);
  }
  return h;
}

std::uint64_t key_hash(std::uint64_t hw, std::uint64_t he, std::size_t len) {
  return fmix(hw ^ fmix(he + len * 0x9e3779b97f4a7c15ull)) | (std::uint64_t(1) << 63);
}

bool in_pass(std::uint64_t h, std::size_t passes, std::size_t pass) {
  return passes == 1 || ((h >> 20) % passes) == pass;
}

// Up to three word segments read as one sequence.
struct Segments {
  Cells seg[3];

  std::size_t size() const { return seg[0].size() + seg[1].size() + seg[2].size(); }
  void append_to(std::vector<Cell>& out) const {
    for (const auto& s : seg) out.insert(out.end(), s.begin(), s.end());
  }
};

bool same_word(const Segments& a, const Segments& b) {
  if (a.size() != b.size()) return false;
  int ia = 0, ib = 0;
  std::size_t pa = 0, pb = 0;
  while (true) {
    while (ia < 3 && pa == a.seg[ia].size()) ++ia, pa = 0;
    while (ib < 3 && pb == b.seg[ib].size()) ++ib, pb = 0;
    if (ia == 3 || ib == 3) return true;
    const std::size_t run = std::min(a.seg[ia].size() - pa, b.seg[ib].size() - pb);
    if (std::memcmp(a.seg[ia].data() + pa, b.seg[ib].data() + pb, run * sizeof(Cell)) != 0) {
      return false;
    }
    pa += run;
    pb += run;
  }
}

// a1 a2 == b1 b2
bool same_concat(Cells a1, Cells a2, Cells b1, Cells b2) {
  if (a1.size() + a2.size() != b1.size() + b2.size()) return false;
  if (a1.size() > b1.size()) {
    std::swap(a1, b1);
    std::swap(a2, b2);
  }
  const std::size_t k = a1.size();
  const std::size_t m = b1.size() - k;
  return std::equal(a1.begin(), a1.end(), b1.begin()) &&
         std::equal(a2.begin(), a2.begin() + m, b1.begin() + k) &&
         std::equal(a2.begin() + m, a2.end(), b2.begin());
}

bool same_exps(const Cell* a1, const Cell* a2, const Cell* b1, const Cell* b2, int nexp) {
  for (int s = 0; s < nexp; ++s) {
    if (a1[s] + a2[s] != b1[s] + b2[s]) return false;
  }
  return true;
}

// Open-addressing table of coefficients keyed by a hash plus a reference
// that the caller can compare exactly.
class RefTable {
 public:
  // Sizes the (empty) table for about n distinct keys.
  void prepare(std::size_t n) {
    std::size_t want = 64;
    while (want < 2 * n) want *= 2;
    if (slots_.size() < want || slots_.size() > 8 * want) slots_.assign(want, Slot{0, 0, 0});
  }

  template <class Equal>
  void add(std::uint64_t h, std::uint64_t ref, std::int64_t c, const Equal& equal) {
    if ((used_.size() + 1) * 2 > slots_.size()) grow();
    const std::size_t mask = slots_.size() - 1;
    std::size_t idx = h & mask;
    while (slots_[idx].hash != 0) {
      Slot& s = slots_[idx];
      if (s.hash == h && equal(s.ref, ref)) {
        if (__builtin_add_overflow(s.coeff, c, &s.coeff)) throw Overflow{};
        return;
      }
      idx = (idx + 1) & mask;
    }
    slots_[idx] = Slot{h, c, ref};
    used_.push_back(idx);
  }

  template <class Emit>
  void drain(const Emit& emit) {
    for (std::size_t k : used_) {
      if (slots_[k].coeff != 0) emit(slots_[k].ref, slots_[k].coeff);
      slots_[k].hash = 0;
    }
    used_.clear();
  }

 private:
  struct Slot {
    std::uint64_t hash;
    std::int64_t coeff;
    std::uint64_t ref;
  };

  void grow() {
    std::vector<Slot> old(std::max<std::size_t>(64, slots_.size() * 2), Slot{0, 0, 0});
    old.swap(slots_);
    const std::size_t mask = slots_.size() - 1;
    for (std::size_t& k : used_) {
      std::size_t idx = old[k].hash & mask;
      while (slots_[idx].hash != 0) idx = (idx + 1) & mask;
      slots_[idx] = old[k];
      k = idx;
    }
  }

  std::vector<Slot> slots_;
  std::vector<std::size_t> used_;
};

struct Emission {
  std::uint64_t hash;
  std::int64_t coeff;
  std::uint64_t ref;
};

// Sums emissions with equal keys. `generate(sink)` calls sink(hash, ref, coeff)
// once per emission and may be called once per pass; each pass keeps the keys
// whose hash falls in it and scatters them into cache-sized buckets before
// combining.
template <class Generate, class Equal, class Emit>
void accumulate(std::size_t emissions, const Generate& generate, const Equal& equal,
                const Emit& emit) {
  constexpr std::size_t kBucketTarget = 4096;
  const std::size_t passes = passes_for(emissions);
  const std::size_t per_pass = emissions / passes + 1;
  std::size_t nb = 1;
  while (nb < 4096 && nb * kBucketTarget < per_pass) nb *= 2;
  // Bucket storage is kept between calls to avoid refaulting fresh pages.
  thread_local std::vector<std::vector<Emission>> buckets;
  thread_local RefTable table;
  if (buckets.size() < nb) buckets.resize(nb);
  for (std::size_t pass = 0; pass < passes; ++pass) {
    generate([&](std::uint64_t h, std::uint64_t ref, std::int64_t c) {
      if (!in_pass(h, passes, pass)) return;
      buckets[(h >> 40) & (nb - 1)].push_back(Emission{h, c, ref});
    });
    for (std::size_t b = 0; b < nb; ++b) {
      auto& bucket = buckets[b];
      if (bucket.empty()) continue;
      table.prepare(bucket.size());
      for (const auto& e : bucket) table.add(e.hash, e.ref, e.coeff, equal);
      bucket.clear();
      table.drain(emit);
    }
  }
  std::size_t kept = 0;
  for (const auto& bucket : buckets) kept += bucket.capacity() * sizeof(Emission);
  if (kept > (std::size_t(1) << 28)) {
    buckets.clear();
    buckets.shrink_to_fit();
  }
}

constexpr unsigned kIndexBits = 28;
constexpr std::uint64_t kIndexMask = (std::uint64_t(1) << kIndexBits) - 1;

void check_index(std::size_t n) {
  if (n > kIndexMask) throw Overflow{};
}

}  // namespace

HashedPoly::HashedPoly(FlatPoly p) : poly(std::move(p)) {
  word_hash.reserve(poly.size());
  exp_hash.reserve(poly.size());
  for (std::size_t t = 0; t < poly.size(); ++t) {
    Cells w = poly.word(t);
    word_hash.push_back(detail::word_hash(w.data(), w.size()));
    exp_hash.push_back(detail::exp_hash(poly.exps(t), poly.nexp()));
  }
}

FlatPoly sum_of_products(const std::vector<ProductPart>& parts, int nexp) {
  if (parts.size() > 255) throw Overflow{};
  std::size_t emissions = 0;
  std::vector<std::vector<std::uint64_t>> y_pow(parts.size());
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const FlatPoly& x = parts[k].x->poly;
    const FlatPoly& y = parts[k].y->poly;
    check_index(x.size());
    check_index(y.size());
    emissions += x.size() * y.size();
    for (std::size_t t = 0; t < y.size(); ++t) y_pow[k].push_back(base_pow(y.word(t).size()));
  }
  auto unpack = [&](std::uint64_t ref, const FlatPoly*& x, const FlatPoly*& y, std::size_t& xi,
                    std::size_t& yi) {
    const std::size_t k = ref >> (2 * kIndexBits);
    x = &parts[k].x->poly;
    y = &parts[k].y->poly;
    xi = (ref >> kIndexBits) & kIndexMask;
    yi = ref & kIndexMask;
  };
  auto equal = [&](std::uint64_t r1, std::uint64_t r2) {
    const FlatPoly *x1, *y1, *x2, *y2;
    std::size_t i1, j1, i2, j2;
    unpack(r1, x1, y1, i1, j1);
    unpack(r2, x2, y2, i2, j2);
    if (!same_exps(x1->exps(i1), y1->exps(j1), x2->exps(i2), y2->exps(j2), nexp)) return false;
    return same_concat(x1->word(i1), y1->word(j1), x2->word(i2), y2->word(j2));
  };
  FlatPoly out(nexp);
  std::vector<Cell> key, exps(static_cast<std::size_t>(nexp));
  auto emit = [&](std::uint64_t ref, std::int64_t c) {
    const FlatPoly *x, *y;
    std::size_t xi, yi;
    unpack(ref, x, y, xi, yi);
    key.clear();
    Segments{{x->word(xi), y->word(yi), {}}}.append_to(key);
    for (int s = 0; s < nexp; ++s) {
      const int v = x->exps(xi)[s] + y->exps(yi)[s];
      if (v > std::numeric_limits<Cell>::max() || v < std::numeric_limits<Cell>::min()) {
        throw Overflow{};
      }
      exps[s] = static_cast<Cell>(v);
    }
    out.push(key, exps.data(), c);
  };

  accumulate(
      emissions,
      [&](const auto& sink) {
        for (std::size_t k = 0; k < parts.size(); ++k) {
          const HashedPoly& hx = *parts[k].x;
          const HashedPoly& hy = *parts[k].y;
          const std::uint64_t part_bits = static_cast<std::uint64_t>(k) << (2 * kIndexBits);
          for (std::size_t xi = 0; xi < hx.poly.size(); ++xi) {
            const std::uint64_t wx = hx.word_hash[xi];
            const std::uint64_t ex = hx.exp_hash[xi];
            const std::size_t lx = hx.poly.word(xi).size();
            const std::int64_t cx = hx.poly.coeff(xi);
            const std::uint64_t x_bits = part_bits | (static_cast<std::uint64_t>(xi) << kIndexBits);
            for (std::size_t yi = 0; yi < hy.poly.size(); ++yi) {
              const std::size_t len = lx + hy.poly.word(yi).size();
              const std::uint64_t h =
                  key_hash(wx * y_pow[k][yi] + hy.word_hash[yi], ex + hy.exp_hash[yi], len);
              sink(h, x_bits | yi, mul(cx, hy.poly.coeff(yi)));
            }
          }
        }
      },
      equal, emit);
  return out;
}

FlatPoly apply_derivation(const FlatPoly& x, const DerivationLookup& d, int nexp) {
  check_index(x.size());
  std::size_t emissions = 0;
  std::vector<const HashedPoly*> images;
  std::vector<std::size_t> image_start{0};
  for (std::size_t t = 0; t < x.size(); ++t) {
    if (x.word(t).size() > 255) throw Overflow{};
    for (Cell c : x.word(t)) {
      const HashedPoly* g = d(c);
      if (g) {
        check_index(g->poly.size());
        emissions += g->poly.size();
      }
      images.push_back(g);
    }
    image_start.push_back(images.size());
  }

  struct Ref {
    std::size_t t, pos, td;
    const FlatPoly* image;
  };
  auto unpack = [&](std::uint64_t ref) {
    Ref r{static_cast<std::size_t>(ref >> (kIndexBits + 8)),
          static_cast<std::size_t>((ref >> kIndexBits) & 255),
          static_cast<std::size_t>(ref & kIndexMask), nullptr};
    r.image = &images[image_start[r.t] + r.pos]->poly;
    return r;
  };
  auto segments = [&](const Ref& r) {
    Cells w = x.word(r.t);
    return Segments{{w.first(r.pos), r.image->word(r.td), w.subspan(r.pos + 1)}};
  };
  auto equal = [&](std::uint64_t r1, std::uint64_t r2) {
    const Ref a = unpack(r1), b = unpack(r2);
    return same_word(segments(a), segments(b)) &&
           same_exps(x.exps(a.t), a.image->exps(a.td), x.exps(b.t), b.image->exps(b.td), nexp);
  };
  FlatPoly out(nexp);
  std::vector<Cell> key, exps(static_cast<std::size_t>(nexp));
  auto emit = [&](std::uint64_t ref, std::int64_t c) {
    const Ref r = unpack(ref);
    key.clear();
    segments(r).append_to(key);
    for (int s = 0; s < nexp; ++s) {
      const int v = x.exps(r.t)[s] + r.image->exps(r.td)[s];
      if (v > std::numeric_limits<Cell>::max() || v < std::numeric_limits<Cell>::min()) {
        throw Overflow{};
      }
      exps[s] = static_cast<Cell>(v);
    }
    out.push(key, exps.data(), c);
  };

  std::vector<std::uint64_t> prefix, suffix;
  accumulate(
      emissions,
      [&](const auto& sink) {
        for (std::size_t t = 0; t < x.size(); ++t) {
          Cells w = x.word(t);
          const std::size_t n = w.size();
          prefix.assign(n + 1, 0);
          suffix.assign(n + 1, 0);
          for (std::size_t k = 0; k < n; ++k) prefix[k + 1] = prefix[k] * kBase + (w[k] + 1);
          for (std::size_t k = n; k-- > 0;) {
            suffix[k] = static_cast<std::uint64_t>(w[k] + 1) * base_pow(n - 1 - k) + suffix[k + 1];
          }
          const std::uint64_t ex = exp_hash(x.exps(t), nexp);
          std::int64_t sign = 1;
          for (std::size_t k = 0; k < n; ++k) {
            const HashedPoly* dg = images[image_start[t] + k];
            if (dg) {
              const std::int64_t cx = sign * x.coeff(t);
              const std::size_t tail = n - 1 - k;
              const std::uint64_t tail_pow = base_pow(tail);
              const std::uint64_t ref_bits = (static_cast<std::uint64_t>(t) << (kIndexBits + 8)) |
                                             (static_cast<std::uint64_t>(k) << kIndexBits);
              for (std::size_t td = 0; td < dg->poly.size(); ++td) {
                const std::size_t ld = dg->poly.word(td).size();
                const std::uint64_t hw = prefix[k] * base_pow(ld + tail) +
                                         dg->word_hash[td] * tail_pow + suffix[k + 1];
                sink(key_hash(hw, ex + dg->exp_hash[td], n - 1 + ld), ref_bits | td,
                     mul(cx, dg->poly.coeff(td)));
              }
            }
            if (cell_degree(w[k]) % 2 != 0) sign = -sign;
          }
        }
      },
      equal, emit);
  return out;
}

}  // namespace tdga::detail
