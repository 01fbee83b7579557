#include "cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

#include "tdga/augmentations.hpp"
#include "tdga/braid.hpp"
#include "tdga/errors.hpp"
#include "tdga/prime_field.hpp"
#include "tdga/serialize.hpp"
#include "tdga/transverse_dga.hpp"

namespace tdga::cli {

namespace {

struct Options {
  std::string braid;
  std::optional<int> strands;
  std::string spec = "minus";
  std::uint64_t p = 3;
  std::vector<long long> lambda;
  std::vector<long long> mu;
  std::optional<long long> u;
  std::optional<long long> v;
  std::string format = "text";
  std::string method = "braid";
  bool all_units = false;
};

struct UvPair {
  std::optional<int> u;
  std::optional<int> v;
};

UvPair spec_values(const std::string& spec) {
  if (spec == "hat") return {0, 1};
  if (spec == "doublehat") return {0, 0};
  if (spec == "unfiltered") return {1, 1};
  return {};
}

FilteredDGA dga_for(const BraidWord& braid, const std::string& spec) {
  if (spec == "minus") return build_filtered_dga(braid);
  if (spec == "infinity") return infinity_dga(braid);
  const UvPair uv = spec_values(spec);
  return specialize(build_filtered_dga(braid), uv.u, uv.v);
}

void print_dga(const FilteredDGA& dga, const Options& o, std::ostream& out) {
  if (o.format == "json") {
    out << dump(to_json(dga));
  } else {
    out << to_display(dga);
  }
}

std::string join(const std::vector<std::uint64_t>& xs) {
  std::string s;
  for (std::size_t i = 0; i < xs.size(); ++i) s += (i ? "," : "") + std::to_string(xs[i]);
  return s;
}

class AugRunner {
 public:
  AugRunner(const BraidWord& braid, const Options& o) : braid_(braid), o_(o) {}

  std::uint64_t count(const AugmentationProblem& problem) const {
    if (o_.method == "dga") {
      if (!dga_) dga_ = dga_for(braid_, o_.spec);
      AugmentationProblem q = problem;
      if (o_.spec != "minus" && o_.spec != "infinity") q.u = q.v = std::nullopt;
      return count_augmentations(*dga_, q);
    }
    if (o_.spec == "infinity") return count_braid_augmentations_infinity(braid_, problem);
    AugmentationProblem q = problem;
    if (o_.spec != "minus") {
      const UvPair uv = spec_values(o_.spec);
      q.u = *uv.u;
      q.v = *uv.v;
    }
    return count_braid_augmentations(braid_, q);
  }

 private:
  BraidWord braid_;
  const Options& o_;
  mutable std::optional<FilteredDGA> dga_;
};

bool uses_uv(const std::string& spec) { return spec == "minus" || spec == "infinity"; }

int run_aug(const BraidWord& braid, const Options& o, std::ostream& out) {
  const bool uv = uses_uv(o.spec);
  if (!uv && (o.u || o.v)) {
    throw DomainError("aug: --U/--V apply only to --spec minus or infinity");
  }
  const AugRunner runner(braid, o);
  const int r = link_components(braid).count;

  if (o.all_units) {
    if (!o.lambda.empty() || !o.mu.empty() || o.u || o.v) {
      throw DomainError("aug: --all-units takes no --lambda/--mu/--U/--V");
    }
    const int slots = 2 * r + (uv ? 2 : 0);
    std::vector<long long> digits(slots, 1);
    Json rows = Json::array();
    std::ostringstream text;
    while (true) {
      AugmentationProblem problem{o.p, {}, {}, std::nullopt, std::nullopt};
      problem.lambda.assign(digits.begin(), digits.begin() + r);
      problem.mu.assign(digits.begin() + r, digits.begin() + 2 * r);
      if (uv) {
        problem.u = digits[2 * r];
        problem.v = digits[2 * r + 1];
      }
      UnitTableRow row;
      for (long long x : problem.lambda) row.lambda.push_back(static_cast<std::uint64_t>(x));
      for (long long x : problem.mu) row.mu.push_back(static_cast<std::uint64_t>(x));
      if (uv) {
        row.u = static_cast<std::uint64_t>(*problem.u);
        row.v = static_cast<std::uint64_t>(*problem.v);
      }
      row.count = runner.count(problem);
      rows.push_back(to_json(row));
      text << "lambda=" << join(row.lambda) << " mu=" << join(row.mu);
      if (uv) text << " U=" << *row.u << " V=" << *row.v;
      text << " count=" << row.count << "\n";

      int s = slots - 1;
      while (s >= 0 && digits[s] == static_cast<long long>(o.p) - 1) digits[s--] = 1;
      if (s < 0) break;
      ++digits[s];
    }
    if (o.format == "json") {
      out << dump(rows);
    } else {
      out << text.str();
    }
    return 0;
  }

  if (static_cast<int>(o.lambda.size()) != r || static_cast<int>(o.mu.size()) != r) {
    throw DomainError("aug: the closure has " + std::to_string(r) + " component(s); give " +
                      std::to_string(r) + " --lambda and --mu value(s)");
  }
  if (uv && (!o.u || !o.v)) throw DomainError("aug: --spec " + o.spec + " needs --U and --V");
  const AugmentationProblem problem{o.p, o.lambda, o.mu, o.u, o.v};
  const std::uint64_t count = runner.count(problem);
  if (o.format == "json") {
    Json assignments{{"lambda", o.lambda}, {"mu", o.mu}};
    if (o.u) assignments["U"] = *o.u;
    if (o.v) assignments["V"] = *o.v;
    Json doc{{"braid", to_string(braid)},
             {"specialization", o.spec},
             {"p", o.p},
             {"assignments", assignments},
             {"count", count}};
    out << dump(doc);
  } else {
    out << count << "\n";
  }
  return 0;
}

int run_check(const BraidWord& braid, const Options& o, std::ostream& out) {
  const FilteredDGA dga = dga_for(braid, o.spec);
  const VerifyReport report = verify_dga(dga);
  const bool ok = report.all_pass();
  if (o.format == "json") {
    Json doc{{"braid", to_string(braid)},
             {"specialization", o.spec},
             {"generators", report.entries.size()},
             {"pass", ok},
             {"failures", report.failures()}};
    out << dump(doc);
  } else if (ok) {
    out << "ok: " << report.entries.size() << " generators, d^2 = 0, degrees and filtration hold\n";
  } else {
    for (const auto& f : report.failures()) out << "FAIL " << f << "\n";
  }
  return ok ? 0 : 2;
}

// Braid words may start with '-', which CLI11 would read as a flag. A
// negative-integer token that is not an option value becomes --braid-word.
std::vector<std::string> protect_negatives(const std::vector<std::string>& args) {
  static const std::vector<std::string> valued = {"--strands", "--spec", "--p",      "--lambda",
                                                  "--mu",      "--U",    "--V",      "--format",
                                                  "--method"};
  auto is_negative_int = [](const std::string& s) {
    if (s.size() < 2 || s[0] != '-') return false;
    for (std::size_t i = 1; i < s.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])) && s[i] != ' ' && s[i] != ',' &&
          s[i] != '-') {
        return false;
      }
    }
    return true;
  };
  std::vector<std::string> out;
  bool after_separator = false;
  for (std::size_t i = 0; i < args.size(); ++i) {
    const std::string& a = args[i];
    const bool follows_option =
        i > 0 && std::find(valued.begin(), valued.end(), args[i - 1]) != valued.end();
    if (!after_separator && !follows_option && is_negative_int(a)) {
      out.push_back("--braid-word=" + a);
      continue;
    }
    if (a == "--") after_separator = true;
    out.push_back(a);
  }
  return out;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Filtered knot contact homology DGAs of braid closures", "tdga"};
  app.require_subcommand(1);
  Options o;

  auto add_braid = [&](CLI::App* sub) {
    auto* pos = sub->add_option("braid", o.braid, "braid word, e.g. \"1 -2 1\"");
    auto* named = sub->add_option("--braid-word", o.braid)->group("");
    pos->excludes(named);
    sub->add_option("--strands", o.strands, "strand count (default: max |k| + 1)")
        ->check(CLI::PositiveNumber);
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
  };
  const std::vector<std::string> specs = {"minus", "hat", "doublehat", "unfiltered"};
  std::vector<std::string> aug_specs = specs;
  aug_specs.push_back("infinity");

  auto* dga = app.add_subcommand("dga", "print the differential");
  add_braid(dga);
  dga->add_option("--spec", o.spec, "specialization")->check(CLI::IsMember(specs));
  add_format(dga);

  auto* check = app.add_subcommand("check", "verify d^2 = 0, degrees and filtration");
  add_braid(check);
  check->add_option("--spec", o.spec, "specialization")->check(CLI::IsMember(specs));
  add_format(check);

  auto* spec = app.add_subcommand("specialize", "print a specialized differential");
  add_braid(spec);
  spec->add_option("--spec", o.spec, "specialization")
      ->check(CLI::IsMember(specs))
      ->required();
  add_format(spec);

  auto* inf = app.add_subcommand("infinity", "print the infinity version (knots only)");
  add_braid(inf);
  add_format(inf);

  auto* aug = app.add_subcommand("aug", "count augmentations to Z/p");
  add_braid(aug);
  aug->add_option("--spec", o.spec, "specialization")->check(CLI::IsMember(aug_specs));
  aug->add_option("--p", o.p, "prime modulus");
  aug->add_option("--lambda", o.lambda, "image of lambda_j (repeat per component)")
      ->allow_extra_args(false);
  aug->add_option("--mu", o.mu, "image of mu_j (repeat per component)")->allow_extra_args(false);
  aug->add_option("--U", o.u, "image of U (minus and infinity)");
  aug->add_option("--V", o.v, "image of V (minus and infinity)");
  aug->add_flag("--all-units", o.all_units, "count for every unit assignment");
  aug->add_option("--method", o.method, "braid: evaluate the braid action; dga: expand first")
      ->check(CLI::IsMember({"braid", "dga"}));
  add_format(aug);

  auto* sl = app.add_subcommand("sl", "self-linking number of the closure");
  add_braid(sl);

  std::vector<std::string> args = protect_negatives(raw_args);
  std::reverse(args.begin(), args.end());
  try {
    app.parse(args);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "tdga: " << e.what() << "\n";
    return 1;
  }

  try {
    const BraidWord braid = parse_braid(o.braid, o.strands);
    if (*dga) {
      print_dga(dga_for(braid, o.spec), o, out);
    } else if (*check) {
      return run_check(braid, o, out);
    } else if (*spec) {
      print_dga(dga_for(braid, o.spec), o, out);
    } else if (*inf) {
      print_dga(infinity_dga(braid), o, out);
    } else if (*aug) {
      if (!is_prime(o.p)) throw DomainError("aug: --p " + std::to_string(o.p) + " is not prime");
      return run_aug(braid, o, out);
    } else if (*sl) {
      out << self_linking(braid) << "\n";
    }
  } catch (const DomainError& e) {
    err << "tdga: " << e.what() << "\n";
    return 1;
  } catch (const VerificationError& e) {
    err << "tdga: verification failed: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace tdga::cli
