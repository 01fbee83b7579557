#include "tdga/free_algebra.hpp"

#include <algorithm>
#include <charconv>

#include "flat.hpp"
#include "tdga/errors.hpp"

namespace tdga {

namespace {

char family_letter(Family f) {
  switch (f) {
    case Family::kA: return 'a';
    case Family::kB: return 'b';
    case Family::kC: return 'c';
    case Family::kE: return 'e';
  }
  return '?';
}

}  // namespace

int degree(Family family) {
  switch (family) {
    case Family::kA: return 0;
    case Family::kB: return 1;
    case Family::kC: return 1;
    case Family::kE: return 2;
  }
  return 0;
}

GenId GenId::make(Family family, int i, int j) {
  if (i < 0 || j < 0 || i > 255 || j > 255) {
    throw DomainError("generator index out of range");
  }
  if ((family == Family::kA || family == Family::kB) && i == j) {
    throw DomainError(std::string("generator ") + family_letter(family) +
                      " requires distinct indices");
  }
  return GenId{family, static_cast<std::uint8_t>(i), static_cast<std::uint8_t>(j)};
}

int GenId::degree() const { return tdga::degree(family); }

std::string GenId::name() const {
  return std::string(1, family_letter(family)) + "_" + std::to_string(i) + "_" +
         std::to_string(j);
}

GenId parse_gen(std::string_view name) {
  auto bad = [&] { return DomainError("bad generator name '" + std::string(name) + "'"); };
  if (name.size() < 5 || name[1] != '_') throw bad();
  Family family;
  switch (name[0]) {
    case 'a': family = Family::kA; break;
    case 'b': family = Family::kB; break;
    case 'c': family = Family::kC; break;
    case 'e': family = Family::kE; break;
    default: throw bad();
  }
  auto rest = name.substr(2);
  auto sep = rest.find('_');
  if (sep == std::string_view::npos) throw bad();
  int i = 0, j = 0;
  auto parse = [](std::string_view s, int& out) {
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc{} && p == s.data() + s.size();
  };
  if (!parse(rest.substr(0, sep), i) || !parse(rest.substr(sep + 1), j)) throw bad();
  return GenId::make(family, i, j);
}

std::string display_name(const GenId& g, int strands) {
  std::string head(1, family_letter(g.family));
  if (strands == 1) return head;
  if (g.i < 10 && g.j < 10) return head + std::to_string(g.i) + std::to_string(g.j);
  return head + "_" + std::to_string(g.i) + "," + std::to_string(g.j);
}

int word_degree(const Word& w) {
  int d = 0;
  for (const auto& g : w) d += g.degree();
  return d;
}

// ---------------------------------------------------------------------------

NcPoly NcPoly::constant(const CoeffPoly& c) { return term(c, {}); }

NcPoly NcPoly::constant(RingDescriptor ring, const Integer& c) {
  return constant(CoeffPoly::constant(ring, c));
}

NcPoly NcPoly::generator(RingDescriptor ring, GenId g) {
  return term(CoeffPoly::constant(ring, 1), {g});
}

NcPoly NcPoly::term(const CoeffPoly& c, Word w) {
  NcPoly x(c.ring());
  x.add_term(w, c);
  return x;
}

bool NcPoly::contains(GenId g) const {
  for (const auto& [w, c] : terms_) {
    for (const auto& h : w) {
      if (h == g) return true;
    }
  }
  return false;
}

std::set<GenId> NcPoly::generators() const {
  std::set<GenId> out;
  for (const auto& [w, c] : terms_) out.insert(w.begin(), w.end());
  return out;
}

CoeffPoly NcPoly::coefficient_of(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? CoeffPoly(ring_) : it->second;
}

void NcPoly::add_term(const Word& w, const CoeffPoly& c) {
  check_same_ring(c.ring(), "term");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

void NcPoly::check_same_ring(const RingDescriptor& other, const char* op) const {
  if (!(ring_ == other)) {
    throw DomainError(std::string("algebra ") + op + ": coefficient ring mismatch " +
                      describe(ring_) + " vs " + describe(other));
  }
}

NcPoly NcPoly::operator-() const {
  NcPoly out = *this;
  for (auto& [w, c] : out.terms_) c = -c;
  return out;
}

NcPoly& NcPoly::operator+=(const NcPoly& other) {
  check_same_ring(other.ring_, "sum");
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& other) {
  check_same_ring(other.ring_, "difference");
  for (const auto& [w, c] : other.terms_) add_term(w, -c);
  return *this;
}

namespace {

NcPoly exact_product(const NcPoly& a, const NcPoly& b) {
  NcPoly out(a.ring());
  Word w;
  for (const auto& [wa, ca] : a.terms()) {
    for (const auto& [wb, cb] : b.terms()) {
      w.assign(wa.begin(), wa.end());
      w.insert(w.end(), wb.begin(), wb.end());
      out.add_term(w, ca * cb);
    }
  }
  return out;
}

}  // namespace

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  a.check_same_ring(b.ring_, "product");
  if (a.is_zero() || b.is_zero()) return NcPoly(a.ring_);
  try {
    const detail::HashedPoly x(detail::FlatPoly::from(a));
    const detail::HashedPoly y(detail::FlatPoly::from(b));
    return detail::sum_of_products({{&x, &y}}, a.ring_.size()).to_ncpoly(a.ring_);
  } catch (const detail::Overflow&) {
    return exact_product(a, b);
  }
}

NcPoly operator*(const CoeffPoly& c, const NcPoly& x) {
  x.check_same_ring(c.ring(), "scalar product");
  NcPoly out(x.ring_);
  if (c.is_zero()) return out;
  for (const auto& [w, cx] : x.terms_) out.add_term(w, c * cx);
  return out;
}

NcPoly NcPoly::map_coefficients(const CoeffMap& map) const {
  if (map.is_identity() && map.source() == ring_) return *this;
  NcPoly out(map.target());
  for (const auto& [w, c] : terms_) out.add_term(w, map.apply(c));
  return out;
}

std::optional<int> degree_of(const NcPoly& x) {
  if (x.is_zero()) throw DomainError("degree_of: zero element has no degree");
  std::optional<int> d;
  for (const auto& [w, c] : x.terms()) {
    int dw = word_degree(w);
    if (d && *d != dw) return std::nullopt;
    d = dw;
  }
  return d;
}

std::string to_display(const NcPoly& x, int strands) {
  if (x.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [w, c] : x.terms()) {
    std::string word;
    for (const auto& g : w) word += display_name(g, strands);
    std::vector<std::pair<std::string, Integer>> items;
    for (const auto& [e, k] : c.terms()) items.emplace_back(monomial_display(c.ring(), e), k);
    std::sort(items.begin(), items.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (const auto& [mono, k] : items) {
      Integer mag = k < 0 ? Integer(-k) : k;
      if (first) {
        if (k < 0) out += "-";
      } else {
        out += k < 0 ? " - " : " + ";
      }
      first = false;
      if (mag != 1 || (mono.empty() && word.empty())) out += mag.str();
      out += mono + word;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

GenSubstitution::GenSubstitution(RingDescriptor ring, FamilyMask domain)
    : domain_(domain), coeff_(ring, ring) {}

GenSubstitution& GenSubstitution::set(GenId g, NcPoly image) {
  if (!(domain_ & family_bit(g.family))) {
    throw DomainError("substitution: generator " + g.name() + " is outside its domain");
  }
  if (!(image.ring() == coeff_.target())) {
    throw DomainError("substitution: image of " + g.name() + " has the wrong ring");
  }
  images_.insert_or_assign(g, std::move(image));
  return *this;
}

GenSubstitution& GenSubstitution::set_coefficients(CoeffMap map) {
  if (!(map.source() == coeff_.source())) {
    throw DomainError("substitution: coefficient map source ring mismatch");
  }
  if (!images_.empty() && !(map.target() == coeff_.target())) {
    throw DomainError("substitution: coefficient map target must be set before images");
  }
  coeff_ = std::move(map);
  return *this;
}

NcPoly GenSubstitution::image(GenId g) const {
  if (!(domain_ & family_bit(g.family))) {
    throw DomainError("substitution: generator " + g.name() + " is outside its domain");
  }
  auto it = images_.find(g);
  if (it != images_.end()) return it->second;
  return NcPoly::generator(coeff_.target(), g);
}

NcPoly GenSubstitution::apply(const NcPoly& x) const {
  if (!(x.ring() == coeff_.source())) {
    throw DomainError("substitution: input ring " + describe(x.ring()) +
                      " does not match " + describe(coeff_.source()));
  }
  for (const auto& [w, c] : x.terms()) {
    for (const auto& g : w) {
      if (!(domain_ & family_bit(g.family))) {
        throw DomainError("substitution: generator " + g.name() + " is outside its domain");
      }
    }
  }
  try {
    return apply_fast(x);
  } catch (const detail::Overflow&) {
    return apply_exact(x);
  }
}

NcPoly GenSubstitution::apply_fast(const NcPoly& x) const {
  const RingDescriptor& target = coeff_.target();
  const int nexp = target.size();
  std::map<GenId, detail::FlatPoly> flat_images;
  auto lookup = [&](GenId g) -> const detail::FlatPoly& {
    auto it = flat_images.find(g);
    if (it == flat_images.end()) it = flat_images.emplace(g, detail::FlatPoly::from(image(g))).first;
    return it->second;
  };
  detail::Accumulator total(nexp);
  detail::Accumulator step(nexp);
  for (const auto& [w, c] : x.terms()) {
    detail::FlatPoly product = detail::FlatPoly::from(coeff_.apply(c));
    for (const auto& g : w) {
      if (product.empty()) break;
      const detail::FlatPoly& img = lookup(g);
      for (std::size_t s = 0; s < product.size(); ++s) {
        for (std::size_t t = 0; t < img.size(); ++t) {
          std::int64_t k;
          if (__builtin_mul_overflow(product.coeff(s), img.coeff(t), &k)) throw detail::Overflow{};
          step.add(product.word(s), img.word(t), {}, product.exps(s), img.exps(t), nullptr, k);
        }
      }
      product = detail::FlatPoly(nexp);
      step.take_into(product);
      step.clear();
    }
    for (std::size_t s = 0; s < product.size(); ++s) {
      total.add(product.word(s), {}, {}, product.exps(s), nullptr, nullptr, product.coeff(s));
    }
  }
  detail::FlatPoly out(nexp);
  total.take_into(out);
  return out.to_ncpoly(target);
}

NcPoly GenSubstitution::apply_exact(const NcPoly& x) const {
  NcPoly out(coeff_.target());
  std::map<GenId, NcPoly> cache;
  auto lookup = [&](GenId g) -> const NcPoly& {
    auto c = cache.find(g);
    if (c == cache.end()) c = cache.emplace(g, image(g)).first;
    return c->second;
  };
  for (const auto& [w, c] : x.terms()) {
    NcPoly product = NcPoly::constant(coeff_.apply(c));
    for (const auto& g : w) {
      if (product.is_zero()) break;
      product = exact_product(product, lookup(g));
    }
    out += product;
  }
  return out;
}

NcPoly apply_substitution(const GenSubstitution& s, const NcPoly& x) { return s.apply(x); }

GenSubstitution compose(const GenSubstitution& outer, const GenSubstitution& inner) {
  GenSubstitution out(inner.source_ring(), outer.domain() & inner.domain());
  out.set_coefficients(compose(outer.coefficients(), inner.coefficients()));
  std::set<GenId> touched;
  for (const auto& [g, image] : inner.images()) touched.insert(g);
  for (const auto& [g, image] : outer.images()) touched.insert(g);
  for (const auto& g : touched) {
    NcPoly image = outer.apply(inner.image(g));
    if (!(image == NcPoly::generator(out.target_ring(), g))) out.set(g, std::move(image));
  }
  return out;
}

// ---------------------------------------------------------------------------

NcMatrix::NcMatrix(int n, RingDescriptor ring)
    : n_(n), ring_(ring), entries_(static_cast<std::size_t>(n) * n, NcPoly(ring)) {
  if (n < 0) throw DomainError("matrix dimension must be non-negative");
}

NcMatrix NcMatrix::identity(int n, RingDescriptor ring) {
  NcMatrix m(n, ring);
  for (int i = 1; i <= n; ++i) m.at(i, i) = NcPoly::constant(ring, 1);
  return m;
}

NcMatrix NcMatrix::diagonal(const std::vector<CoeffPoly>& entries) {
  if (entries.empty()) throw DomainError("diagonal: no entries");
  NcMatrix m(static_cast<int>(entries.size()), entries.front().ring());
  for (int i = 1; i <= m.n_; ++i) m.at(i, i) = NcPoly::constant(entries[i - 1]);
  return m;
}

std::size_t NcMatrix::index(int i, int j) const {
  if (i < 1 || j < 1 || i > n_ || j > n_) {
    throw DomainError("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                      ") out of range for dimension " + std::to_string(n_));
  }
  return static_cast<std::size_t>(i - 1) * n_ + (j - 1);
}

void NcMatrix::check_dims(const NcMatrix& other, const char* op) const {
  if (n_ != other.n_) {
    throw DomainError(std::string("matrix ") + op + ": dimension mismatch " +
                      std::to_string(n_) + " vs " + std::to_string(other.n_));
  }
  if (!(ring_ == other.ring_)) {
    throw DomainError(std::string("matrix ") + op + ": coefficient ring mismatch");
  }
}

NcMatrix NcMatrix::operator-() const {
  NcMatrix out = *this;
  for (auto& x : out.entries_) x = -x;
  return out;
}

NcMatrix operator+(const NcMatrix& a, const NcMatrix& b) {
  a.check_dims(b, "sum");
  NcMatrix out = a;
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] += b.entries_[k];
  return out;
}

NcMatrix operator-(const NcMatrix& a, const NcMatrix& b) {
  a.check_dims(b, "difference");
  NcMatrix out = a;
  for (std::size_t k = 0; k < out.entries_.size(); ++k) out.entries_[k] -= b.entries_[k];
  return out;
}

NcMatrix operator*(const NcMatrix& a, const NcMatrix& b) {
  a.check_dims(b, "product");
  NcMatrix out(a.n_, a.ring_);
  try {
    std::vector<detail::HashedPoly> fa, fb;
    fa.reserve(a.entries_.size());
    fb.reserve(b.entries_.size());
    for (const auto& x : a.entries_) fa.emplace_back(detail::FlatPoly::from(x));
    for (const auto& y : b.entries_) fb.emplace_back(detail::FlatPoly::from(y));
    for (int i = 1; i <= a.n_; ++i) {
      for (int j = 1; j <= a.n_; ++j) {
        std::vector<detail::ProductPart> parts;
        for (int k = 1; k <= a.n_; ++k) {
          const auto& x = fa[a.index(i, k)];
          const auto& y = fb[b.index(k, j)];
          if (x.poly.empty() || y.poly.empty()) continue;
          parts.push_back({&x, &y});
        }
        out.at(i, j) = detail::sum_of_products(parts, a.ring_.size()).to_ncpoly(a.ring_);
      }
    }
    return out;
  } catch (const detail::Overflow&) {
  }
  for (int i = 1; i <= a.n_; ++i) {
    for (int j = 1; j <= a.n_; ++j) {
      NcPoly sum(a.ring_);
      for (int k = 1; k <= a.n_; ++k) {
        const NcPoly& x = a.at(i, k);
        const NcPoly& y = b.at(k, j);
        if (x.is_zero() || y.is_zero()) continue;
        sum += exact_product(x, y);
      }
      out.at(i, j) = std::move(sum);
    }
  }
  return out;
}

NcMatrix NcMatrix::substitute(const GenSubstitution& s) const {
  NcMatrix out(n_, s.target_ring());
  for (std::size_t k = 0; k < entries_.size(); ++k) out.entries_[k] = s.apply(entries_[k]);
  return out;
}

NcMatrix NcMatrix::map_coefficients(const CoeffMap& map) const {
  NcMatrix out(n_, map.target());
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    out.entries_[k] = entries_[k].map_coefficients(map);
  }
  return out;
}

bool NcMatrix::is_identity() const { return *this == identity(n_, ring_); }

}  // namespace tdga
