#include "tdga/augmentations.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <cmath>
#include <set>
#include <thread>

#include "tdga/braid_action.hpp"
#include "tdga/errors.hpp"
#include "tdga/prime_field.hpp"

namespace tdga {

int default_threads() {
  if (const char* env = std::getenv("TDGA_THREADS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

FieldImages field_images(const RingDescriptor& ring, const AugmentationProblem& problem) {
  PrimeField field(problem.p);
  const auto r = static_cast<std::size_t>(ring.components);
  if (problem.lambda.size() != r || problem.mu.size() != r) {
    throw DomainError("augmentations: need " + std::to_string(r) +
                      " lambda and mu images, got " + std::to_string(problem.lambda.size()) +
                      " and " + std::to_string(problem.mu.size()));
  }
  if (ring.tilde != 0) throw DomainError("augmentations: ring still has mu~ variables");
  FieldImages images{problem.p, {}};
  auto unit = [&](long long value, const std::string& name) {
    std::uint64_t x = field.reduce(value);
    if (x == 0) {
      throw DomainError("augmentations: image of " + name + " is not a unit mod " +
                        std::to_string(problem.p));
    }
    return x;
  };
  for (std::size_t j = 0; j < r; ++j) {
    const int c = static_cast<int>(j) + 1;
    images.values[Var::lambda(c)] = unit(problem.lambda[j], "lambda" + std::to_string(c));
    images.values[Var::mu(c)] = unit(problem.mu[j], "mu" + std::to_string(c));
  }
  if (ring.uv_mode == UvMode::kAbsent) {
    if (problem.u || problem.v) {
      throw DomainError("augmentations: U/V images given but the DGA has no U, V");
    }
  } else {
    if (!problem.u || !problem.v) {
      throw DomainError("augmentations: the DGA still has U, V; images for both are required");
    }
    if (ring.uv_mode == UvMode::kLaurent) {
      images.values[Var::u()] = unit(*problem.u, "U");
      images.values[Var::v()] = unit(*problem.v, "V");
    } else {
      images.values[Var::u()] = field.reduce(*problem.u);
      images.values[Var::v()] = field.reduce(*problem.v);
    }
  }
  return images;
}

namespace {

struct CompiledTerm {
  std::uint64_t coeff;
  std::vector<int> vars;  // positions in the assignment order
};

struct Constraint {
  std::uint64_t constant = 0;
  std::vector<CompiledTerm> terms;
  std::set<int> vars;  // generator indices before reordering
};

class Counter {
 public:
  Counter(const FilteredDGA& dga, const FieldImages& images) : field_(images.p) {
    std::map<GenId, int> var_index;
    for (const auto& g : dga.generators) {
      if (g.degree() == 0) {
        var_index.emplace(g, static_cast<int>(var_index.size()));
      }
    }
    num_vars_ = static_cast<int>(var_index.size());

    std::vector<Constraint> constraints;
    std::vector<std::vector<std::pair<std::uint64_t, std::vector<int>>>> raw;
    for (const auto& g : dga.generators) {
      const NcPoly& dg = dga.d(g);
      if (g.degree() == 2) {
        // Every word must contain a positive-degree generator, so its image
        // under an augmentation is zero.
        for (const auto& [w, c] : dg.terms()) {
          if (word_degree(w) != 1) {
            throw VerificationError("augmentations: d(" + g.name() +
                                    ") has a term of degree != 1");
          }
        }
      }
      if (g.degree() != 1 || dg.is_zero()) continue;
      Constraint con;
      for (const auto& [w, c] : dg.terms()) {
        std::vector<int> vars;
        for (const auto& h : w) {
          auto it = var_index.find(h);
          if (h.degree() != 0 || it == var_index.end()) {
            throw VerificationError("augmentations: d(" + g.name() +
                                    ") contains a positive-degree generator " + h.name());
          }
          vars.push_back(it->second);
          con.vars.insert(it->second);
        }
        std::uint64_t coeff = substitute_coeff(c, images);
        if (coeff == 0) continue;
        if (vars.empty()) {
          con.constant = field_.add(con.constant, coeff);
        } else {
          con.terms.push_back({coeff, std::move(vars)});
        }
      }
      constraints.push_back(std::move(con));
    }

    // Cheapest constraints first; variables in order of first appearance.
    std::stable_sort(constraints.begin(), constraints.end(),
                     [](const Constraint& x, const Constraint& y) {
                       return x.vars.size() < y.vars.size();
                     });
    std::vector<int> position(num_vars_, -1);
    int next = 0;
    for (const auto& con : constraints) {
      for (const auto& t : con.terms) {
        for (int v : t.vars) {
          if (position[v] < 0) position[v] = next++;
        }
      }
    }
    bound_vars_ = next;
    by_depth_.assign(bound_vars_, {});
    for (auto& con : constraints) {
      int last = -1;
      for (auto& t : con.terms) {
        for (int& v : t.vars) {
          v = position[v];
          last = std::max(last, v);
        }
      }
      if (last < 0) {
        if (con.constant != 0) infeasible_ = true;
        continue;
      }
      by_depth_[last].push_back(std::move(con));
    }
  }

  std::uint64_t count(int threads) const {
    if (infeasible_) return 0;
    std::uint64_t free_factor = 1;
    for (int k = bound_vars_; k < num_vars_; ++k) free_factor *= field_.modulus();
    if (bound_vars_ == 0) return free_factor;

    const std::uint64_t p = field_.modulus();
    const int split = std::min(bound_vars_, 2);
    std::uint64_t tasks = 1;
    for (int k = 0; k < split; ++k) tasks *= p;

    std::atomic<std::uint64_t> next_task{0};
    std::atomic<std::uint64_t> total{0};
    auto worker = [&] {
      std::vector<std::uint64_t> values(bound_vars_, 0);
      std::uint64_t local = 0;
      for (std::uint64_t task; (task = next_task.fetch_add(1)) < tasks;) {
        std::uint64_t rest = task;
        bool ok = true;
        for (int k = split - 1; k >= 0; --k) {
          values[k] = rest % p;
          rest /= p;
        }
        for (int k = 0; k < split && ok; ++k) ok = satisfied(k, values);
        if (ok) local += search(split, values);
      }
      total += local;
    };
    const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(tasks)));
    if (n_threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    return total.load() * free_factor;
  }

 private:
  bool satisfied(int depth, const std::vector<std::uint64_t>& values) const {
    for (const auto& con : by_depth_[depth]) {
      std::uint64_t sum = con.constant;
      for (const auto& t : con.terms) {
        std::uint64_t prod = t.coeff;
        for (int v : t.vars) prod = field_.mul(prod, values[v]);
        sum = field_.add(sum, prod);
      }
      if (sum != 0) return false;
    }
    return true;
  }

  std::uint64_t search(int depth, std::vector<std::uint64_t>& values) const {
    if (depth == bound_vars_) return 1;
    std::uint64_t found = 0;
    for (std::uint64_t x = 0; x < field_.modulus(); ++x) {
      values[depth] = x;
      if (satisfied(depth, values)) found += search(depth + 1, values);
    }
    return found;
  }

  PrimeField field_;
  int num_vars_ = 0;
  int bound_vars_ = 0;
  bool infeasible_ = false;
  std::vector<std::vector<Constraint>> by_depth_;
};

// Polynomial in the a_ij and mu~_i packed for repeated evaluation mod p.
class EvalPoly {
 public:
  EvalPoly() = default;
  // Coefficient variables listed in `fixed` are replaced by constants; the
  // rest must be mu~ variables, read from the state at evaluation time.
  EvalPoly(const NcPoly& x, int n, const PrimeField& field, const FieldImages* fixed) {
    const RingDescriptor& ring = x.ring();
    for (const auto& [w, c] : x.terms()) {
      for (const auto& [exps, k] : c.terms()) {
        Term t;
        t.coeff = field.reduce(k);
        if (t.coeff == 0) continue;
        for (int s = 0; s < static_cast<int>(exps.size()); ++s) {
          if (exps[s] == 0) continue;
          const Var var = ring.var_at(s);
          if (fixed) {
            auto it = fixed->values.find(var);
            if (it == fixed->values.end()) throw DomainError("augmentations: no image for a variable");
            std::uint64_t v = it->second;
            if (exps[s] < 0) {
              if (v == 0) throw DomainError("augmentations: zero substituted for a unit");
              v = field.inv(v);
            }
            t.coeff = field.mul(t.coeff, field.pow(v, static_cast<std::uint64_t>(std::abs(exps[s]))));
          } else {
            if (var.kind != VarKind::kMuTilde) throw DomainError("augmentations: unexpected variable");
            for (int e = 0; e < std::abs(exps[s]); ++e) {
              factors_.push_back(exps[s] > 0 ? var.index : -1 - var.index);
            }
          }
        }
        t.tilde_end = factors_.size();
        for (const auto& g : w) {
          if (g.family != Family::kA) throw DomainError("augmentations: unexpected generator");
          factors_.push_back(g.i * (n + 1) + g.j);
        }
        t.end = factors_.size();
        terms_.push_back(t);
      }
    }
  }

  // tilde[i], tilde_inv[i]: values of mu~_i and its inverse.
  std::uint64_t operator()(const std::uint64_t* a, const std::uint64_t* tilde,
                           const std::uint64_t* tilde_inv, std::uint64_t p) const {
    std::uint64_t sum = 0;
    std::size_t k = 0;
    for (const auto& t : terms_) {
      std::uint64_t prod = t.coeff;
      for (; k < t.tilde_end; ++k) {
        const int f = factors_[k];
        prod = prod * (f >= 0 ? tilde[f] : tilde_inv[-1 - f]) % p;
      }
      for (; k < t.end && prod != 0; ++k) prod = prod * a[factors_[k]] % p;
      k = t.end;
      sum += prod;
    }
    return sum % p;
  }

 private:
  struct Term {
    std::uint64_t coeff;
    std::size_t tilde_end;
    std::size_t end;
  };
  std::vector<Term> terms_;
  std::vector<int> factors_;
};

class BraidCounter {
 public:
  BraidCounter(const BraidWord& braid, const AugmentationProblem& problem)
      : field_(problem.p), n_(braid.strands), stride_(n_ + 1) {
    const RingDescriptor ring = link_ring(braid);
    if (!problem.u || !problem.v) {
      throw DomainError("augmentations: images for U and V are required");
    }
    const FieldImages images = field_images(ring, problem);
    const ComponentData comp = link_components(braid);
    const DgaMatrices m = build_matrices(braid, ring);
    auto compile = [&](const NcMatrix& x) {
      std::vector<EvalPoly> out;
      for (int i = 1; i <= n_; ++i) {
        for (int j = 1; j <= n_; ++j) out.emplace_back(x.at(i, j), n_, field_, &images);
      }
      return out;
    };
    A_ = compile(m.A);
    AU_ = compile(m.AU);
    AV_ = compile(m.AV);
    lambda_ = compile(m.lambda);
    lambda_inv_ = compile(m.lambda_inv);

    tilde0_.assign(stride_, 1);
    for (int i = 1; i <= n_; ++i) tilde0_[i] = images.values.at(Var::mu(comp.alpha_of(i)));

    for (const auto& letter : braid.letters) {
      Step step;
      step.k = letter.index;
      const GenSubstitution phi = phi_generator(letter.index, letter.sign, n_, 1);
      for (int i = 1; i <= n_; ++i) {
        for (int j = 1; j <= n_; ++j) {
          if (i == j) continue;
          step.images.push_back({i * stride_ + j, EvalPoly(phi.image(GenId::a(i, j)), n_, field_, nullptr)});
        }
      }
      BraidWord single{n_, {letter}};
      const PhiMatrices raw = phi_matrices_raw(single);
      for (int i = 1; i <= n_; ++i) {
        for (int j = 1; j <= n_; ++j) step.right.emplace_back(raw.right.at(i, j), n_, field_, nullptr);
      }
      steps_.push_back(std::move(step));
    }
    for (int i = 1; i <= n_; ++i) {
      for (int j = 1; j <= n_; ++j) {
        if (i != j) vars_.push_back(i * stride_ + j);
      }
    }
  }

  std::uint64_t count(int threads) const {
    const std::uint64_t p = field_.modulus();
    const int nv = static_cast<int>(vars_.size());
    const int split = std::min(nv, 2);
    std::uint64_t tasks = 1;
    for (int k = 0; k < split; ++k) tasks *= p;

    std::atomic<std::uint64_t> next_task{0};
    std::atomic<std::uint64_t> total{0};
    auto worker = [&] {
      Scratch s(*this);
      std::uint64_t local = 0;
      for (std::uint64_t task; (task = next_task.fetch_add(1)) < tasks;) {
        std::vector<std::uint64_t> digits(nv, 0);
        std::uint64_t rest = task;
        for (int k = split - 1; k >= 0; --k) {
          digits[k] = rest % p;
          rest /= p;
        }
        while (true) {
          for (int k = 0; k < nv; ++k) s.eps[vars_[k]] = digits[k];
          if (vanishes(s)) ++local;
          int k = nv - 1;
          while (k >= split && digits[k] == p - 1) digits[k--] = 0;
          if (k < split) break;
          ++digits[k];
        }
      }
      total += local;
    };
    const int n_threads = std::max(1, std::min<int>(threads, static_cast<int>(tasks)));
    if (n_threads == 1) {
      worker();
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
      for (auto& th : pool) th.join();
    }
    return total.load();
  }

 private:
  struct Step {
    int k = 0;
    std::vector<std::pair<int, EvalPoly>> images;
    std::vector<EvalPoly> right;  // row-major n x n
  };

  struct Scratch {
    explicit Scratch(const BraidCounter& c)
        : eps(c.stride_ * c.stride_, 0), cur(eps), next(eps), tilde(c.stride_), tilde_inv(c.stride_),
          mr(c.n_ * c.n_), rs(mr), tmp(mr), x(mr), y(mr), z(mr) {}
    std::vector<std::uint64_t> eps, cur, next, tilde, tilde_inv, mr, rs, tmp, x, y, z;
  };

  void matmul(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b,
              std::vector<std::uint64_t>& out) const {
    const std::uint64_t p = field_.modulus();
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        std::uint64_t sum = 0;
        for (int k = 0; k < n_; ++k) sum = (sum + a[i * n_ + k] * b[k * n_ + j]) % p;
        out[i * n_ + j] = sum;
      }
    }
  }

  void eval_matrix(const std::vector<EvalPoly>& m, const std::vector<std::uint64_t>& a,
                   std::vector<std::uint64_t>& out) const {
    for (std::size_t k = 0; k < m.size(); ++k) {
      out[k] = m[k](a.data(), nullptr, nullptr, field_.modulus());
    }
  }

  bool vanishes(Scratch& s) const {
    const std::uint64_t p = field_.modulus();
    s.cur = s.eps;
    for (int i = 0; i < stride_; ++i) {
      s.tilde[i] = tilde0_[i];
      s.tilde_inv[i] = field_.inv(tilde0_[i]);
    }
    std::fill(s.mr.begin(), s.mr.end(), 0);
    for (int i = 0; i < n_; ++i) s.mr[i * n_ + i] = 1;

    // eps o phi_{Ps} = (eps o phi_P) o phi_s and Phi^R_{Ps} = Phi^R_P phi_P(Phi^R_s).
    for (const auto& step : steps_) {
      for (std::size_t k = 0; k < step.right.size(); ++k) {
        s.rs[k] = step.right[k](s.cur.data(), s.tilde.data(), s.tilde_inv.data(), p);
      }
      matmul(s.mr, s.rs, s.tmp);
      std::swap(s.mr, s.tmp);
      s.next = s.cur;
      for (const auto& [g, image] : step.images) {
        s.next[g] = image(s.cur.data(), s.tilde.data(), s.tilde_inv.data(), p);
      }
      std::swap(s.cur, s.next);
      std::swap(s.tilde[step.k], s.tilde[step.k + 1]);
      std::swap(s.tilde_inv[step.k], s.tilde_inv[step.k + 1]);
    }

    // d(C) = A^V lambda + A^U Phi^R
    eval_matrix(AV_, s.eps, s.x);
    eval_matrix(lambda_, s.eps, s.y);
    matmul(s.x, s.y, s.z);
    eval_matrix(AU_, s.eps, s.x);
    matmul(s.x, s.mr, s.tmp);
    for (int k = 0; k < n_ * n_; ++k) {
      if ((s.z[k] + s.tmp[k]) % p != 0) return false;
    }
    // d(B) = -lambda^{-1} A lambda + phi_B(A), off the diagonal
    eval_matrix(lambda_inv_, s.eps, s.x);
    eval_matrix(A_, s.eps, s.y);
    matmul(s.x, s.y, s.z);
    eval_matrix(lambda_, s.eps, s.x);
    matmul(s.z, s.x, s.tmp);
    eval_matrix(A_, s.cur, s.y);
    for (int i = 0; i < n_; ++i) {
      for (int j = 0; j < n_; ++j) {
        if (i != j && s.y[i * n_ + j] != s.tmp[i * n_ + j]) return false;
      }
    }
    return true;
  }

  PrimeField field_;
  int n_;
  int stride_;
  std::vector<EvalPoly> A_, AU_, AV_, lambda_, lambda_inv_;
  std::vector<std::uint64_t> tilde0_;
  std::vector<Step> steps_;
  std::vector<int> vars_;
};

}  // namespace

std::uint64_t count_braid_augmentations(const BraidWord& braid, const AugmentationProblem& problem,
                                        int threads) {
  return BraidCounter(braid, problem).count(threads > 0 ? threads : default_threads());
}

std::uint64_t count_braid_augmentations_infinity(const BraidWord& braid,
                                                 const AugmentationProblem& problem,
                                                 int threads) {
  const ComponentData comp = link_components(braid);
  if (comp.count != 1) {
    throw DomainError("augmentations: the infinity version of '" + to_string(braid) +
                      "' is undefined; its closure has " + std::to_string(comp.count) +
                      " components");
  }
  if (!problem.u || !problem.v) {
    throw DomainError("augmentations: the infinity version needs U and V images");
  }
  PrimeField field(problem.p);
  const std::uint64_t u = field.reduce(*problem.u);
  const std::uint64_t v = field.reduce(*problem.v);
  if (u == 0 || v == 0) {
    throw DomainError("augmentations: U and V must be units mod " + std::to_string(problem.p));
  }
  if (problem.lambda.size() != 1) {
    throw DomainError("augmentations: need 1 lambda image, got " +
                      std::to_string(problem.lambda.size()));
  }
  const int k = (self_linking(braid) + 1) / 2;
  const std::uint64_t ratio = field.mul(v, field.inv(u));  // V / U
  const std::uint64_t scale = k >= 0 ? field.pow(ratio, k) : field.pow(field.inv(ratio), -k);
  const std::uint64_t lambda = field.reduce(problem.lambda[0]);
  if (lambda == 0) {
    throw DomainError("augmentations: image of lambda1 is not a unit mod " +
                      std::to_string(problem.p));
  }
  AugmentationProblem minus = problem;
  minus.lambda[0] = static_cast<long long>(field.mul(lambda, scale));
  return count_braid_augmentations(braid, minus, threads);
}

std::uint64_t count_augmentations(const FilteredDGA& dga, const AugmentationProblem& problem,
                                  int threads) {
  const FieldImages images = field_images(dga.ring, problem);
  return Counter(dga, images).count(threads > 0 ? threads : default_threads());
}

std::vector<UnitTableRow> count_augmentations_all_units(const FilteredDGA& dga, std::uint64_t p,
                                                        int threads) {
  PrimeField field(p);
  const int r = dga.ring.components;
  const bool with_uv = dga.ring.uv_mode != UvMode::kAbsent;
  const int slots = 2 * r + (with_uv ? 2 : 0);
  std::vector<long long> digits(slots, 1);
  std::vector<UnitTableRow> rows;
  while (true) {
    AugmentationProblem problem;
    problem.p = p;
    problem.lambda.assign(digits.begin(), digits.begin() + r);
    problem.mu.assign(digits.begin() + r, digits.begin() + 2 * r);
    if (with_uv) {
      problem.u = digits[2 * r];
      problem.v = digits[2 * r + 1];
    }
    UnitTableRow row;
    for (auto x : problem.lambda) row.lambda.push_back(static_cast<std::uint64_t>(x));
    for (auto x : problem.mu) row.mu.push_back(static_cast<std::uint64_t>(x));
    if (with_uv) {
      row.u = static_cast<std::uint64_t>(*problem.u);
      row.v = static_cast<std::uint64_t>(*problem.v);
    }
    row.count = count_augmentations(dga, problem, threads);
    rows.push_back(std::move(row));

    int k = slots - 1;
    while (k >= 0 && digits[k] == static_cast<long long>(p) - 1) digits[k--] = 1;
    if (k < 0) break;
    ++digits[k];
  }
  return rows;
}

}  // namespace tdga
