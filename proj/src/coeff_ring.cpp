#include "tdga/coeff_ring.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <sstream>

#include "tdga/errors.hpp"
#include "tdga/prime_field.hpp"

namespace tdga {

std::string to_string(UvMode mode) {
  switch (mode) {
    case UvMode::kPolynomial: return "polynomial";
    case UvMode::kLaurent: return "laurent";
    case UvMode::kAbsent: return "absent";
  }
  return "?";
}

UvMode parse_uv_mode(std::string_view text) {
  if (text == "polynomial") return UvMode::kPolynomial;
  if (text == "laurent") return UvMode::kLaurent;
  if (text == "absent") return UvMode::kAbsent;
  throw DomainError("unknown uv_mode '" + std::string(text) + "'");
}

std::optional<int> RingDescriptor::slot(Var var) const {
  switch (var.kind) {
    case VarKind::kLambda:
      if (var.index >= 1 && var.index <= components) return var.index - 1;
      return std::nullopt;
    case VarKind::kMu:
      if (var.index >= 1 && var.index <= components) return components + var.index - 1;
      return std::nullopt;
    case VarKind::kMuTilde:
      if (var.index >= 0 && var.index < tilde) return 2 * components + var.index;
      return std::nullopt;
    case VarKind::kU:
      if (uv_mode == UvMode::kAbsent) return std::nullopt;
      return 2 * components + tilde;
    case VarKind::kV:
      if (uv_mode == UvMode::kAbsent) return std::nullopt;
      return 2 * components + tilde + 1;
  }
  return std::nullopt;
}

Var RingDescriptor::var_at(int s) const {
  if (s < components) return Var::lambda(s + 1);
  if (s < 2 * components) return Var::mu(s - components + 1);
  if (s < 2 * components + tilde) return Var::mu_tilde(s - 2 * components);
  if (s == 2 * components + tilde) return Var::u();
  return Var::v();
}

bool RingDescriptor::invertible(int s) const {
  if (uv_mode != UvMode::kPolynomial) return true;
  return s < 2 * components + tilde;
}

std::string describe(const RingDescriptor& ring) {
  std::ostringstream out;
  out << "{r=" << ring.components << ", tilde=" << ring.tilde
      << ", uv=" << to_string(ring.uv_mode) << "}";
  return out.str();
}

// ---------------------------------------------------------------------------

CoeffPoly CoeffPoly::constant(RingDescriptor ring, const Integer& c) {
  CoeffPoly p(ring);
  p.add_term(Exponents(ring.size(), 0), c);
  return p;
}

CoeffPoly CoeffPoly::monomial(RingDescriptor ring, Exponents exps, const Integer& c) {
  CoeffPoly p(ring);
  if (static_cast<int>(exps.size()) != ring.size()) {
    throw DomainError("monomial: exponent vector has wrong length for ring " +
                      describe(ring));
  }
  p.check_exponents(exps);
  p.add_term(exps, c);
  return p;
}

CoeffPoly CoeffPoly::variable(RingDescriptor ring, Var var, int exponent) {
  auto s = ring.slot(var);
  if (!s) throw DomainError("variable does not exist in ring " + describe(ring));
  Exponents exps(ring.size(), 0);
  exps[*s] = exponent;
  return monomial(ring, std::move(exps));
}

void CoeffPoly::check_exponents(const Exponents& exps) const {
  for (int s = 0; s < ring_.size(); ++s) {
    if (exps[s] < 0 && !ring_.invertible(s)) {
      throw DomainError("negative exponent on a non-invertible variable in ring " +
                        describe(ring_));
    }
  }
}

void CoeffPoly::check_same_ring(const CoeffPoly& other, const char* op) const {
  if (!(ring_ == other.ring_)) {
    throw DomainError(std::string("coefficient ") + op + ": ring mismatch " +
                      describe(ring_) + " vs " + describe(other.ring_));
  }
}

void CoeffPoly::add_term(const Exponents& exps, const Integer& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(exps, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

CoeffPoly CoeffPoly::normalized(RingDescriptor ring,
                                const std::vector<std::pair<Exponents, Integer>>& raw) {
  CoeffPoly p(ring);
  for (const auto& [e, c] : raw) {
    p.check_exponents(e);
    p.add_term(e, c);
  }
  return p;
}

bool CoeffPoly::is_one() const {
  if (terms_.size() != 1) return false;
  const auto& [e, c] = *terms_.begin();
  return c == 1 && std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

bool CoeffPoly::is_unit() const {
  if (terms_.size() != 1) return false;
  const auto& [e, c] = *terms_.begin();
  if (c != 1 && c != -1) return false;
  for (int s = 0; s < ring_.size(); ++s) {
    if (e[s] != 0 && !ring_.invertible(s)) return false;
  }
  return true;
}

CoeffPoly CoeffPoly::inverse() const {
  if (!is_unit()) throw DomainError("coefficient " + to_text(*this) + " is not a unit");
  const auto& [e, c] = *terms_.begin();
  Exponents inv(e.size());
  std::transform(e.begin(), e.end(), inv.begin(), [](int x) { return -x; });
  return monomial(ring_, std::move(inv), c);
}

CoeffPoly CoeffPoly::pow(int e) const {
  if (e < 0) return inverse().pow(-e);
  CoeffPoly result = constant(ring_, 1);
  CoeffPoly base = *this;
  while (e) {
    if (e & 1) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

CoeffPoly CoeffPoly::operator-() const {
  CoeffPoly out = *this;
  for (auto& [e, c] : out.terms_) c = -c;
  return out;
}

CoeffPoly& CoeffPoly::operator+=(const CoeffPoly& other) {
  check_same_ring(other, "sum");
  for (const auto& [e, c] : other.terms_) add_term(e, c);
  return *this;
}

CoeffPoly& CoeffPoly::operator-=(const CoeffPoly& other) {
  check_same_ring(other, "difference");
  for (const auto& [e, c] : other.terms_) add_term(e, -c);
  return *this;
}

CoeffPoly operator*(const CoeffPoly& a, const CoeffPoly& b) {
  a.check_same_ring(b, "product");
  CoeffPoly out(a.ring_);
  Exponents sum(a.ring_.size());
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t s = 0; s < sum.size(); ++s) sum[s] = ea[s] + eb[s];
      out.add_term(sum, ca * cb);
    }
  }
  return out;
}

CoeffPoly& CoeffPoly::operator*=(const CoeffPoly& other) {
  *this = *this * other;
  return *this;
}

std::pair<int, int> min_uv_exponents(const CoeffPoly& p) {
  if (p.is_zero()) throw DomainError("min_uv_exponents: zero polynomial");
  auto su = p.ring().slot(Var::u());
  auto sv = p.ring().slot(Var::v());
  if (!su || !sv) throw DomainError("min_uv_exponents: ring has no U, V");
  int mu = 0, mv = 0;
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (first) {
      mu = e[*su];
      mv = e[*sv];
      first = false;
    } else {
      mu = std::min(mu, e[*su]);
      mv = std::min(mv, e[*sv]);
    }
  }
  return {mu, mv};
}

// ---------------------------------------------------------------------------

CoeffMap& CoeffMap::set(Var var, CoeffPoly image) {
  if (!source_.slot(var)) {
    throw DomainError("coefficient substitution: variable not in source ring " +
                      describe(source_));
  }
  if (!(image.ring() == target_)) {
    throw DomainError("coefficient substitution: image ring mismatch, expected " +
                      describe(target_));
  }
  images_.insert_or_assign(var, std::move(image));
  return *this;
}

CoeffPoly CoeffMap::apply(const CoeffPoly& p) const {
  if (!(p.ring() == source_)) {
    throw DomainError("coefficient substitution: input ring " + describe(p.ring()) +
                      " does not match source " + describe(source_));
  }
  if (is_identity()) return p;

  // Per source slot: either a target slot (variable retained) or an image.
  const int ns = source_.size();
  std::vector<int> retained(ns, -1);
  std::vector<const CoeffPoly*> image(ns, nullptr);
  for (int s = 0; s < ns; ++s) {
    Var var = source_.var_at(s);
    if (auto it = images_.find(var); it != images_.end()) {
      image[s] = &it->second;
    } else if (auto t = target_.slot(var)) {
      retained[s] = *t;
    } else {
      retained[s] = -2;  // only an error if the variable actually occurs
    }
  }

  CoeffPoly out(target_);
  std::map<std::pair<int, int>, CoeffPoly> power_cache;
  Exponents base(target_.size());
  for (const auto& [e, c] : p.terms()) {
    std::fill(base.begin(), base.end(), 0);
    CoeffPoly factor = CoeffPoly::constant(target_, c);
    bool zero = false;
    for (int s = 0; s < ns && !zero; ++s) {
      if (e[s] == 0) continue;
      if (retained[s] >= 0) {
        base[retained[s]] += e[s];
      } else if (retained[s] == -2) {
        throw DomainError("coefficient substitution: variable without image is absent "
                          "from target ring " + describe(target_));
      } else {
        if (e[s] < 0 && !image[s]->is_unit()) {
          throw DomainError("coefficient substitution: image of a variable with "
                            "negative exponent is not invertible (" +
                            to_text(*image[s]) + ")");
        }
        auto key = std::make_pair(s, e[s]);
        auto it = power_cache.find(key);
        if (it == power_cache.end()) it = power_cache.emplace(key, image[s]->pow(e[s])).first;
        factor *= it->second;
        zero = factor.is_zero();
      }
    }
    if (zero) continue;
    for (int t = 0; t < target_.size(); ++t) {
      if (base[t] < 0 && !target_.invertible(t)) {
        throw DomainError("coefficient substitution: negative exponent on a "
                          "non-invertible target variable");
      }
    }
    out += CoeffPoly::monomial(target_, base) * factor;
  }
  return out;
}

CoeffPoly CoeffMap::image(Var var) const {
  return apply(CoeffPoly::variable(source_, var));
}

CoeffMap compose(const CoeffMap& outer, const CoeffMap& inner) {
  if (!(inner.target() == outer.source())) {
    throw DomainError("compose: coefficient maps are not composable");
  }
  CoeffMap out(inner.source(), outer.target());
  for (int s = 0; s < inner.source().size(); ++s) {
    Var var = inner.source().var_at(s);
    CoeffPoly image = outer.apply(inner.image(var));
    if (!(inner.source() == outer.target() && image == CoeffPoly::variable(outer.target(), var))) {
      out.set(var, std::move(image));
    }
  }
  return out;
}

CoeffPoly substitute_coeff(const CoeffPoly& p, const CoeffMap& images) {
  return images.apply(p);
}

std::uint64_t substitute_coeff(const CoeffPoly& p, const FieldImages& images) {
  PrimeField field(images.p);
  const RingDescriptor& ring = p.ring();
  std::uint64_t total = 0;
  for (const auto& [e, c] : p.terms()) {
    std::uint64_t term = field.reduce(c);
    for (int s = 0; s < ring.size(); ++s) {
      if (e[s] == 0) continue;
      Var var = ring.var_at(s);
      auto it = images.values.find(var);
      if (it == images.values.end()) {
        throw DomainError("field substitution: no image for variable in " + to_text(p));
      }
      std::uint64_t value = it->second % images.p;
      if (e[s] < 0) {
        if (value == 0) {
          throw DomainError("field substitution: zero substituted for a variable with "
                            "negative exponent in " + to_text(p));
        }
        value = field.inv(value);
      }
      term = field.mul(term, field.pow(value, static_cast<std::uint64_t>(std::abs(e[s]))));
    }
    total = field.add(total, term);
  }
  return total;
}

// ---------------------------------------------------------------------------

namespace {

std::string var_text(Var var) {
  switch (var.kind) {
    case VarKind::kLambda: return "l" + std::to_string(var.index);
    case VarKind::kMu: return "m" + std::to_string(var.index);
    case VarKind::kMuTilde: return "t" + std::to_string(var.index);
    case VarKind::kU: return "U";
    case VarKind::kV: return "V";
  }
  return "?";
}

std::string var_display(const RingDescriptor& ring, Var var) {
  std::string suffix = ring.components == 1 ? "" : std::to_string(var.index);
  switch (var.kind) {
    case VarKind::kLambda: return "λ" + suffix;
    case VarKind::kMu: return "μ" + suffix;
    case VarKind::kMuTilde: return "μ~" + std::to_string(var.index);
    case VarKind::kU: return "U";
    case VarKind::kV: return "V";
  }
  return "?";
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      parts.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return parts;
}

bool parse_int(std::string_view s, int& out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && ptr == s.data() + s.size();
}

bool looks_integer(std::string_view s) {
  if (!s.empty() && s.front() == '-') s.remove_prefix(1);
  return !s.empty() && std::all_of(s.begin(), s.end(),
                                   [](char ch) { return std::isdigit(static_cast<unsigned char>(ch)); });
}

Var parse_var(std::string_view name, std::string_view whole) {
  auto bad = [&] {
    return DomainError("coefficient text: bad variable '" + std::string(name) + "' in '" +
                       std::string(whole) + "'");
  };
  if (name == "U") return Var::u();
  if (name == "V") return Var::v();
  if (name.size() < 2) throw bad();
  int index = 0;
  if (!parse_int(name.substr(1), index)) throw bad();
  switch (name.front()) {
    case 'l': return Var::lambda(index);
    case 'm': return Var::mu(index);
    case 't': return Var::mu_tilde(index);
    default: throw bad();
  }
}

}  // namespace

std::string to_text(const CoeffPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  const RingDescriptor& ring = p.ring();
  bool first = true;
  for (const auto& [e, c] : p.terms()) {
    if (!first) out += '+';
    first = false;
    out += c.str();
    for (int s = 0; s < ring.size(); ++s) {
      if (e[s] == 0) continue;
      out += '*';
      out += var_text(ring.var_at(s));
      if (e[s] != 1) out += '^' + std::to_string(e[s]);
    }
  }
  return out;
}

CoeffPoly parse_coeff(std::string_view text, RingDescriptor ring) {
  CoeffPoly out(ring);
  std::string_view body = trim(text);
  if (body.empty()) throw DomainError("coefficient text: empty input");
  if (body == "0") return out;
  for (std::string_view term_text : split(body, '+')) {
    term_text = trim(term_text);
    if (term_text.empty()) {
      throw DomainError("coefficient text: empty term in '" + std::string(text) + "'");
    }
    auto factors = split(term_text, '*');
    Integer coeff = 1;
    std::size_t first_var = 0;
    std::string_view lead = trim(factors.front());
    if (looks_integer(lead)) {
      coeff = Integer(std::string(lead));
      first_var = 1;
    }
    Exponents exps(ring.size(), 0);
    for (std::size_t f = first_var; f < factors.size(); ++f) {
      std::string_view factor = trim(factors[f]);
      int exponent = 1;
      if (auto caret = factor.find('^'); caret != std::string_view::npos) {
        if (!parse_int(trim(factor.substr(caret + 1)), exponent)) {
          throw DomainError("coefficient text: bad exponent in '" + std::string(factor) + "'");
        }
        factor = trim(factor.substr(0, caret));
      }
      Var var = parse_var(factor, text);
      auto s = ring.slot(var);
      if (!s) {
        throw DomainError("coefficient text: variable '" + std::string(factor) +
                          "' not in ring " + describe(ring));
      }
      exps[*s] += exponent;
    }
    out += CoeffPoly::monomial(ring, exps, coeff);
  }
  return out;
}

std::string monomial_display(const RingDescriptor& ring, const Exponents& exps) {
  std::string out;
  for (int s = 0; s < ring.size(); ++s) {
    if (exps[s] == 0) continue;
    out += var_display(ring, ring.var_at(s));
    if (exps[s] != 1) out += '^' + std::to_string(exps[s]);
  }
  return out;
}

std::string to_display(const CoeffPoly& p) {
  if (p.is_zero()) return "0";
  std::vector<std::pair<std::string, Integer>> items;
  for (const auto& [e, c] : p.terms()) items.emplace_back(monomial_display(p.ring(), e), c);
  std::sort(items.begin(), items.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  std::string out;
  bool first = true;
  for (const auto& [mono, c] : items) {
    Integer mag = c < 0 ? Integer(-c) : c;
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    if (mono.empty() || mag != 1) out += mag.str();
    out += mono;
  }
  return out;
}

}  // namespace tdga
