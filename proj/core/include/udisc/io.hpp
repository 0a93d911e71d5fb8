#pragma once

#include <optional>
#include <string>
#include <vector>

#include "udisc/family.hpp"
#include "udisc/lattice.hpp"
#include "udisc/mixed.hpp"
#include "udisc/povm.hpp"

namespace udisc {

// Locale-free shortest representation at 12 significant digits; "nan",
// "inf", "-inf" for non-finite values.  Every float this library writes to
// CSV or JSON goes through here, which is what makes outputs byte-stable.
std::string format_double(double v);

// format_double composed with re-parsing: the value actually serialized.
double round_to_12_digits(double v);

struct LatticeScanConfig {
  LatticeSpec spec;
  std::optional<int> n_max;
};

// Loaders take JSON text and throw InvalidInput (or the domain error of the
// constructed type) with a diagnostic naming the offending field.  The
// state-family loader normalizes vectors, recording a warning when a norm
// is off by more than 1e-6.
StateFamily load_state_family(const std::string& json_text,
                              std::vector<std::string>* warnings = nullptr);
MixedFamily load_mixed_family(const std::string& json_text);
LatticeScanConfig load_lattice_spec(const std::string& json_text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

// Report serialization.  JSON documents re-parse to the same values within
// 1e-12 (numbers are rounded to 12 significant digits before insertion).
std::string discriminate_report_json(const DistinguishabilityVerdict& verdict,
                                     const ConfusionReport* report);
std::string discriminate_report_csv(const DistinguishabilityVerdict& verdict,
                                    const ConfusionReport* report);
std::string mixed_report_json(const MixedVerdict& verdict, const ConfusionReport* report);
std::string mixed_report_csv(const MixedVerdict& verdict, const ConfusionReport* report);
std::string scan_csv(const ThresholdScan& scan);
std::string scan_json(const LatticeSpec& spec, const ThresholdScan& scan);
std::string bounds_json(const LatticeSpec& spec, int cutoff, double s, double gaussian,
                        const std::optional<double>& closed_form, double upper);
std::string bounds_csv(double s, double gaussian, const std::optional<double>& closed_form,
                       double upper);

}  // namespace udisc
