// Command-line front end: load families from files, run verdicts, POVM
// builds, lattice scans, and bound evaluations; emit JSON/CSV reports.
// Exit codes: 0 distinguishable (or command succeeded), 2 not
// distinguishable (or crosscheck mismatch), 1 input/usage error.

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "udisc/family.hpp"
#include "udisc/io.hpp"
#include "udisc/lattice.hpp"
#include "udisc/mixed.hpp"
#include "udisc/povm.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitNegative = 2;

struct CommonOpts {
  std::string input;
  std::string output;
  std::string format;
  double tol = 0.0;  // 0 = unset; resolved against UDISC_TOL / default
};

double resolve_tolerance(double flag_tol) {
  if (flag_tol > 0.0) return flag_tol;
  if (const char* env = std::getenv("UDISC_TOL")) {
    char* end = nullptr;
    const double v = std::strtod(env, &end);
    if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
      throw udisc::InvalidInput("UDISC_TOL: expected a positive number, got \"" +
                                std::string(env) + "\"");
    }
    return v;
  }
  return udisc::kDefaultTol;
}

void emit(const std::string& text, const std::string& output_path) {
  if (output_path.empty()) {
    std::cout << text;
  } else {
    udisc::write_text_file(output_path, text);
  }
}

udisc::Complex parse_complex_arg(const std::string& text, const char* flag) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) {
    throw udisc::InvalidInput(std::string(flag) + ": expected \"re,im\"");
  }
  const std::string re_part = text.substr(0, comma);
  const std::string im_part = text.substr(comma + 1);
  char* end = nullptr;
  const double re = std::strtod(re_part.c_str(), &end);
  if (end == re_part.c_str() || *end != '\0') {
    throw udisc::InvalidInput(std::string(flag) + ": cannot parse \"" + re_part + "\"");
  }
  const double im = std::strtod(im_part.c_str(), &end);
  if (end == im_part.c_str() || *end != '\0') {
    throw udisc::InvalidInput(std::string(flag) + ": cannot parse \"" + im_part + "\"");
  }
  return {re, im};
}

// Lattice input: either --input JSON or both --omega flags.
struct LatticeArgs {
  std::string omega1;
  std::string omega2;
  int n_max = 0;  // 0 = unset
};

std::pair<udisc::LatticeSpec, std::optional<int>> resolve_lattice(const CommonOpts& common,
                                                                  const LatticeArgs& args) {
  if (!common.input.empty()) {
    const udisc::LatticeScanConfig config =
        udisc::load_lattice_spec(udisc::read_text_file(common.input));
    std::optional<int> n_max = config.n_max;
    if (args.n_max > 0) n_max = args.n_max;
    return {config.spec, n_max};
  }
  if (args.omega1.empty() || args.omega2.empty()) {
    throw udisc::InvalidInput("either --input or both --omega1 and --omega2 are required");
  }
  udisc::LatticeSpec spec;
  spec.omega1 = parse_complex_arg(args.omega1, "--omega1");
  spec.omega2 = parse_complex_arg(args.omega2, "--omega2");
  std::optional<int> n_max;
  if (args.n_max > 0) n_max = args.n_max;
  return {spec, n_max};
}

int run_discriminate(const CommonOpts& common) {
  const double tol = resolve_tolerance(common.tol);
  std::vector<std::string> warnings;
  const udisc::StateFamily family =
      udisc::load_state_family(udisc::read_text_file(common.input), &warnings);
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';

  const udisc::GramFamily gf = udisc::gram(family);
  const udisc::DistinguishabilityVerdict v = udisc::verdict(gf, tol);
  const bool csv = common.format == "csv";
  if (v.level == udisc::Level::None) {
    emit(csv ? udisc::discriminate_report_csv(v, nullptr)
             : udisc::discriminate_report_json(v, nullptr),
         common.output);
    std::cerr << "not distinguishable: lambda_min = " << udisc::format_double(v.lambda_min)
              << " at tolerance " << udisc::format_double(tol) << '\n';
    return kExitNegative;
  }
  const udisc::UnambiguousPOVM povm = udisc::build_optimal_povm(gf, tol);
  const udisc::ConfusionReport report = udisc::validate(povm, gf);
  emit(csv ? udisc::discriminate_report_csv(v, &report)
           : udisc::discriminate_report_json(v, &report),
       common.output);
  return kExitOk;
}

int run_mixed(const CommonOpts& common) {
  const double tol = resolve_tolerance(common.tol);
  const udisc::MixedFamily family =
      udisc::load_mixed_family(udisc::read_text_file(common.input));
  const udisc::MixedVerdict v = udisc::mixed_verdict(family, tol);
  const bool csv = common.format == "csv";
  if (!v.distinguishable) {
    emit(csv ? udisc::mixed_report_csv(v, nullptr) : udisc::mixed_report_json(v, nullptr),
         common.output);
    if (v.failing_index) {
      std::cerr << "not distinguishable: criterion fails at \"" << *v.failing_index << "\"\n";
    }
    return kExitNegative;
  }
  const udisc::UnambiguousPOVM povm = udisc::build_mixed_povm(family, v);
  const udisc::ConfusionReport report = udisc::validate(povm, family);
  emit(csv ? udisc::mixed_report_csv(v, &report) : udisc::mixed_report_json(v, &report),
       common.output);
  return kExitOk;
}

int run_vnl_scan(const CommonOpts& common, const LatticeArgs& args) {
  const double tol = resolve_tolerance(common.tol);
  const auto [spec, n_max] = resolve_lattice(common, args);
  if (!n_max) throw udisc::InvalidInput("n_max required (--n-max flag or \"n_max\" in the input)");
  const udisc::ThresholdScan scan = udisc::threshold_scan(spec, *n_max, tol);
  // CSV is the native format for scans; JSON on request.
  emit(common.format == "json" ? udisc::scan_json(spec, scan) : udisc::scan_csv(scan),
       common.output);
  return kExitOk;
}

int run_bounds(const CommonOpts& common, const LatticeArgs& args, int cutoff) {
  const auto [spec, n_max] = resolve_lattice(common, args);
  (void)n_max;
  const double s = udisc::fundamental_area(spec);
  const double gaussian = udisc::gaussian_sum_bound(spec, cutoff);
  std::optional<double> closed;
  if (s > std::numbers::pi) closed = udisc::closed_form_bound(spec);
  const double upper = udisc::two_state_upper_bound(spec);
  emit(common.format == "csv" ? udisc::bounds_csv(s, gaussian, closed, upper)
                              : udisc::bounds_json(spec, cutoff, s, gaussian, closed, upper),
       common.output);
  return kExitOk;
}

// Randomized self-check: the analytic overlap against the Fock-series
// oracle, and the eigensolver against the two-state closed form.
int run_crosscheck(const CommonOpts& common, unsigned long long seed, int trials) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  const auto random_point = [&](double radius) {
    const double r = radius * std::sqrt(unit(rng));
    const double theta = 2.0 * std::numbers::pi * unit(rng);
    return udisc::Complex(r * std::cos(theta), r * std::sin(theta));
  };

  double overlap_dev = 0.0;
  for (int t = 0; t < trials; ++t) {
    const udisc::Complex z = random_point(6.0);
    const udisc::Complex w = random_point(6.0);
    const udisc::CVector fz = udisc::fock_truncated_state(z, 160);
    const udisc::CVector fw = udisc::fock_truncated_state(w, 160);
    const udisc::Complex series = udisc::inner(fz, fw);
    overlap_dev = std::max(overlap_dev, std::abs(series - udisc::coherent_overlap(z, w)));
  }

  double two_state_dev = 0.0;
  std::uniform_int_distribution<std::size_t> dim_dist(2, 20);
  for (int t = 0; t < trials; ++t) {
    const std::size_t d = dim_dist(rng);
    udisc::CVector a(d), b(d);
    for (std::size_t i = 0; i < d; ++i) {
      a[i] = udisc::Complex(gauss(rng), gauss(rng));
      b[i] = udisc::Complex(gauss(rng), gauss(rng));
    }
    const double na = udisc::norm(a), nb = udisc::norm(b);
    for (auto& c : a) c /= na;
    for (auto& c : b) c /= nb;
    const udisc::StateFamily pair(d, {a, b}, {"a", "b"});
    const double q = udisc::max_uniform_success(udisc::gram(pair));
    const double expected = 1.0 - std::abs(udisc::inner(a, b));
    two_state_dev = std::max(two_state_dev, std::abs(q - expected));
  }

  const bool ok = overlap_dev <= 1e-10 && two_state_dev <= 1e-10;
  nlohmann::json doc = {
      {"seed", seed},
      {"trials", trials},
      {"max_overlap_deviation", udisc::round_to_12_digits(overlap_dev)},
      {"max_two_state_deviation", udisc::round_to_12_digits(two_state_dev)},
      {"ok", ok},
  };
  emit(doc.dump(2) + "\n", common.output);
  return ok ? kExitOk : kExitNegative;
}

void add_common(CLI::App* cmd, CommonOpts& opts, const char* default_format,
                bool input_required) {
  auto* input = cmd->add_option("-i,--input", opts.input, "Input JSON file");
  if (input_required) input->required();
  cmd->add_option("-o,--output", opts.output, "Output file (default: stdout)");
  opts.format = default_format;
  cmd->add_option("--format", opts.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--tol", opts.tol, "Tolerance (default 1e-9; env UDISC_TOL overrides)")
      ->check(CLI::PositiveNumber);
}

void add_lattice(CLI::App* cmd, LatticeArgs& args) {
  cmd->add_option("--omega1", args.omega1, "First lattice generator as \"re,im\"");
  cmd->add_option("--omega2", args.omega2, "Second lattice generator as \"re,im\"");
  cmd->add_option("--n-max", args.n_max, "Largest truncation index n");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Unambiguous discrimination of pure, mixed, and coherent-lattice state families"};
  app.require_subcommand(1);

  CommonOpts disc_opts;
  CLI::App* disc = app.add_subcommand(
      "discriminate", "Verdict + optimal unambiguous POVM for a pure-state family");
  add_common(disc, disc_opts, "json", /*input_required=*/true);

  CommonOpts mixed_opts;
  CLI::App* mixed = app.add_subcommand(
      "mixed", "Kernel/range distinguishability criterion for density operators");
  add_common(mixed, mixed_opts, "json", /*input_required=*/true);

  CommonOpts scan_opts;
  LatticeArgs scan_args;
  CLI::App* scan = app.add_subcommand(
      "vnl-scan", "q_n threshold scan over square truncations of a von Neumann lattice");
  add_common(scan, scan_opts, "csv", /*input_required=*/false);
  add_lattice(scan, scan_args);

  CommonOpts bounds_opts;
  LatticeArgs bounds_args;
  int cutoff = 40;
  CLI::App* bounds = app.add_subcommand(
      "bounds", "Gaussian-sum, closed-form, and two-state bounds for a lattice");
  add_common(bounds, bounds_opts, "json", /*input_required=*/false);
  add_lattice(bounds, bounds_args);
  bounds->add_option("--cutoff", cutoff, "Lattice cutoff for the Gaussian sum")
      ->check(CLI::PositiveNumber);

  CommonOpts cross_opts;
  unsigned long long seed = 12345;
  int trials = 500;
  CLI::App* cross = app.add_subcommand(
      "crosscheck", "Randomized self-check of overlaps and the two-state formula");
  add_common(cross, cross_opts, "json", /*input_required=*/false);
  cross->add_option("--seed", seed, "RNG seed");
  cross->add_option("--trials", trials, "Trials per check")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (app.got_subcommand(disc)) return run_discriminate(disc_opts);
    if (app.got_subcommand(mixed)) return run_mixed(mixed_opts);
    if (app.got_subcommand(scan)) return run_vnl_scan(scan_opts, scan_args);
    if (app.got_subcommand(bounds)) return run_bounds(bounds_opts, bounds_args, cutoff);
    if (app.got_subcommand(cross)) return run_crosscheck(cross_opts, seed, trials);
  } catch (const udisc::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
