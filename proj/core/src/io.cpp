#include "udisc/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include <json.hpp>

namespace udisc {

using nlohmann::json;

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

double round_to_12_digits(double v) {
  if (!std::isfinite(v)) return v;
  return std::strtod(format_double(v).c_str(), nullptr);
}

namespace {

json num(double v) {
  if (!std::isfinite(v)) return nullptr;
  return round_to_12_digits(v);
}

// ---- loading ----

json parse_or_throw(const std::string& text) {
  json j = json::parse(text, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) throw InvalidInput("input is not valid JSON");
  return j;
}

const json& require_field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name)) {
    throw InvalidInput(std::string("missing field \"") + name + "\"");
  }
  return j.at(name);
}

double require_number(const json& j, const std::string& where) {
  if (!j.is_number()) throw InvalidInput(where + ": expected a number");
  return j.get<double>();
}

int require_positive_int(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<long long>() < 1) {
    throw InvalidInput(where + ": expected a positive integer");
  }
  return static_cast<int>(j.get<long long>());
}

Complex require_complex(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) {
    throw InvalidInput(where + ": expected a [re, im] pair");
  }
  return Complex(require_number(j[0], where + "[0]"), require_number(j[1], where + "[1]"));
}

std::vector<std::string> require_labels(const json& j, std::size_t expected) {
  const json& field = require_field(j, "labels");
  if (!field.is_array() || field.size() != expected) {
    throw InvalidInput("labels: expected an array of " + std::to_string(expected) + " strings");
  }
  std::vector<std::string> labels;
  labels.reserve(expected);
  for (std::size_t i = 0; i < expected; ++i) {
    if (!field[i].is_string()) {
      throw InvalidInput("labels[" + std::to_string(i) + "]: expected a string");
    }
    labels.push_back(field[i].get<std::string>());
  }
  return labels;
}

// ---- serialization helpers ----

json complex_to_json(const Complex& z) {
  return json::array({num(z.real()), num(z.imag())});
}

json report_to_json_obj(const ConfusionReport& r) {
  json q_matrix = json::array();
  for (const auto& row : r.q_matrix) {
    json jrow = json::array();
    for (double v : row) jrow.push_back(num(v));
    q_matrix.push_back(std::move(jrow));
  }
  json q_success = json::array();
  for (double v : r.q_success) q_success.push_back(num(v));
  json q_inconclusive = json::array();
  for (double v : r.q_inconclusive) q_inconclusive.push_back(num(v));

  json obj = {
      {"labels", r.labels},
      {"q_matrix", std::move(q_matrix)},
      {"q_success", std::move(q_success)},
      {"q_inconclusive", std::move(q_inconclusive)},
      {"distinguishes", r.distinguishes},
      {"uniform", r.uniform},
      {"q_uniform", r.q_uniform ? json(num(*r.q_uniform)) : json(nullptr)},
      {"max_offdiagonal", num(r.max_offdiagonal)},
      {"max_column_sum_error", num(r.max_column_sum_error)},
  };
  obj["state_leak_max"] = r.state_leak_max ? json(num(*r.state_leak_max)) : json(nullptr);
  obj["inconclusive_leak_max"] =
      r.inconclusive_leak_max ? json(num(*r.inconclusive_leak_max)) : json(nullptr);
  obj["element_offdiag_max"] =
      r.element_offdiag_max ? json(num(*r.element_offdiag_max)) : json(nullptr);
  return obj;
}

// RFC-4180 style: quote when the cell contains a comma, quote, or newline.
std::string csv_escape(const std::string& cell) {
  if (cell.find_first_of(",\"\n") == std::string::npos) return cell;
  std::string out = "\"";
  for (char c : cell) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string report_to_csv(const ConfusionReport& r) {
  std::ostringstream out;
  out << "outcome";
  for (const auto& l : r.labels) out << ',' << csv_escape(l);
  out << '\n';
  for (std::size_t j = 0; j < r.q_matrix.size(); ++j) {
    out << csv_escape(r.labels[j]);
    for (double v : r.q_matrix[j]) out << ',' << format_double(v);
    out << '\n';
  }
  out << '?';
  for (double v : r.q_inconclusive) out << ',' << format_double(v);
  out << '\n';
  return out.str();
}

}  // namespace

StateFamily load_state_family(const std::string& json_text, std::vector<std::string>* warnings) {
  const json j = parse_or_throw(json_text);
  const int dim = require_positive_int(require_field(j, "dim"), "dim");
  const json& states_json = require_field(j, "states");
  if (!states_json.is_array() || states_json.empty()) {
    throw InvalidInput("states: expected a non-empty array");
  }

  std::vector<CVector> states;
  states.reserve(states_json.size());
  for (std::size_t i = 0; i < states_json.size(); ++i) {
    const std::string where = "states[" + std::to_string(i) + "]";
    const json& sj = states_json[i];
    if (!sj.is_array() || sj.size() != static_cast<std::size_t>(dim)) {
      throw InvalidInput(where + ": expected an array of " + std::to_string(dim) +
                         " [re, im] pairs");
    }
    CVector v(static_cast<std::size_t>(dim));
    for (std::size_t k = 0; k < v.size(); ++k) {
      v[k] = require_complex(sj[k], where + "[" + std::to_string(k) + "]");
    }
    const double n = norm(v);
    if (!(n > 0.0) || !std::isfinite(n)) {
      throw InvalidInput(where + ": vector has no finite positive norm");
    }
    if (std::abs(n - 1.0) > 1e-6 && warnings) {
      warnings->push_back(where + ": norm deviates from 1 by " + format_double(n - 1.0) +
                          "; normalized");
    }
    for (auto& c : v) c /= n;
    states.push_back(std::move(v));
  }

  std::vector<std::string> labels = require_labels(j, states.size());
  return StateFamily(static_cast<std::size_t>(dim), std::move(states), std::move(labels));
}

MixedFamily load_mixed_family(const std::string& json_text) {
  const json j = parse_or_throw(json_text);
  const int dim = require_positive_int(require_field(j, "dim"), "dim");
  const json& rhos_json = require_field(j, "rhos");
  if (!rhos_json.is_array() || rhos_json.empty()) {
    throw InvalidInput("rhos: expected a non-empty array");
  }

  std::vector<CMatrix> rhos;
  rhos.reserve(rhos_json.size());
  const auto d = static_cast<std::size_t>(dim);
  for (std::size_t i = 0; i < rhos_json.size(); ++i) {
    const std::string where = "rhos[" + std::to_string(i) + "]";
    const json& mj = rhos_json[i];
    if (!mj.is_array() || mj.size() != d) {
      throw InvalidInput(where + ": expected " + std::to_string(dim) + " rows");
    }
    CMatrix rho(d, d);
    for (std::size_t r = 0; r < d; ++r) {
      const json& rowj = mj[r];
      const std::string row_where = where + "[" + std::to_string(r) + "]";
      if (!rowj.is_array() || rowj.size() != d) {
        throw InvalidInput(row_where + ": expected " + std::to_string(dim) + " [re, im] pairs");
      }
      for (std::size_t c = 0; c < d; ++c) {
        rho(r, c) = require_complex(rowj[c], row_where + "[" + std::to_string(c) + "]");
      }
    }
    rhos.push_back(std::move(rho));
  }

  std::vector<std::string> labels = require_labels(j, rhos.size());
  return MixedFamily(d, std::move(rhos), std::move(labels));
}

LatticeScanConfig load_lattice_spec(const std::string& json_text) {
  const json j = parse_or_throw(json_text);
  LatticeScanConfig config;
  config.spec.omega1 = require_complex(require_field(j, "omega1"), "omega1");
  config.spec.omega2 = require_complex(require_field(j, "omega2"), "omega2");
  if (j.contains("n_max")) {
    config.n_max = require_positive_int(j.at("n_max"), "n_max");
  }
  return config;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot open file for writing: " + path);
  out << text;
  if (!out) throw InvalidInput("write failed: " + path);
}

std::string discriminate_report_json(const DistinguishabilityVerdict& verdict,
                                     const ConfusionReport* report) {
  json doc = {
      {"verdict",
       {
           {"level", to_string(verdict.level)},
           {"q_max", num(verdict.q_max)},
           {"lambda_min", num(verdict.lambda_min)},
           {"tolerance_used", num(verdict.tolerance_used)},
       }},
      {"confusion", report ? report_to_json_obj(*report) : json(nullptr)},
  };
  return doc.dump(2) + "\n";
}

std::string discriminate_report_csv(const DistinguishabilityVerdict& verdict,
                                    const ConfusionReport* report) {
  if (report) return report_to_csv(*report);
  std::ostringstream out;
  out << "level,q_max,lambda_min,tolerance_used\n";
  out << to_string(verdict.level) << ',' << format_double(verdict.q_max) << ','
      << format_double(verdict.lambda_min) << ',' << format_double(verdict.tolerance_used)
      << '\n';
  return out.str();
}

std::string mixed_report_json(const MixedVerdict& verdict, const ConfusionReport* report) {
  json witnesses = nullptr;
  if (verdict.distinguishable) {
    witnesses = json::array();
    for (const CVector& w : verdict.witnesses) {
      json wj = json::array();
      for (const Complex& z : w) wj.push_back(complex_to_json(z));
      witnesses.push_back(std::move(wj));
    }
  }
  json doc = {
      {"verdict",
       {
           {"distinguishable", verdict.distinguishable},
           {"criterion_kernel", verdict.criterion_kernel},
           {"criterion_range", verdict.criterion_range},
           {"failing_index", verdict.failing_index ? json(*verdict.failing_index) : json(nullptr)},
           {"witnesses", std::move(witnesses)},
       }},
      {"confusion", report ? report_to_json_obj(*report) : json(nullptr)},
  };
  return doc.dump(2) + "\n";
}

std::string mixed_report_csv(const MixedVerdict& verdict, const ConfusionReport* report) {
  if (report) return report_to_csv(*report);
  std::ostringstream out;
  out << "distinguishable,criterion_kernel,criterion_range,failing_index\n";
  out << (verdict.distinguishable ? "true" : "false") << ','
      << (verdict.criterion_kernel ? "true" : "false") << ','
      << (verdict.criterion_range ? "true" : "false") << ','
      << csv_escape(verdict.failing_index.value_or("")) << '\n';
  return out.str();
}

std::string scan_csv(const ThresholdScan& scan) {
  std::ostringstream out;
  out << "n,count,S,q_n,collapsed_flag,gaussian_sum_bound,closed_form_bound,upper_bound\n";
  for (const ScanRow& row : scan.rows) {
    out << row.n << ',' << row.count << ',' << format_double(row.s) << ','
        << format_double(row.q) << ',' << (row.collapsed ? 1 : 0) << ','
        << format_double(row.lower_bound_a) << ','
        << format_double(row.closed_form ? *row.closed_form
                                         : std::numeric_limits<double>::quiet_NaN())
        << ',' << format_double(row.upper_bound) << '\n';
  }
  return out.str();
}

std::string scan_json(const LatticeSpec& spec, const ThresholdScan& scan) {
  json rows = json::array();
  for (const ScanRow& row : scan.rows) {
    rows.push_back({
        {"n", row.n},
        {"count", row.count},
        {"S", num(row.s)},
        {"q_n", num(row.q)},
        {"collapsed", row.collapsed},
        {"gaussian_sum_bound", num(row.lower_bound_a)},
        {"closed_form_bound", row.closed_form ? json(num(*row.closed_form)) : json(nullptr)},
        {"upper_bound", num(row.upper_bound)},
    });
  }
  json doc = {
      {"omega1", complex_to_json(spec.omega1)},
      {"omega2", complex_to_json(spec.omega2)},
      {"rows", std::move(rows)},
  };
  return doc.dump(2) + "\n";
}

std::string bounds_json(const LatticeSpec& spec, int cutoff, double s, double gaussian,
                        const std::optional<double>& closed_form, double upper) {
  json doc = {
      {"omega1", complex_to_json(spec.omega1)},
      {"omega2", complex_to_json(spec.omega2)},
      {"S", num(s)},
      {"cutoff", cutoff},
      {"gaussian_sum_bound", num(gaussian)},
      {"closed_form_bound", closed_form ? json(num(*closed_form)) : json(nullptr)},
      {"two_state_upper_bound", num(upper)},
  };
  return doc.dump(2) + "\n";
}

std::string bounds_csv(double s, double gaussian, const std::optional<double>& closed_form,
                       double upper) {
  std::ostringstream out;
  out << "S,gaussian_sum_bound,closed_form_bound,upper_bound\n";
  out << format_double(s) << ',' << format_double(gaussian) << ','
      << format_double(closed_form ? *closed_form : std::numeric_limits<double>::quiet_NaN())
      << ',' << format_double(upper) << '\n';
  return out.str();
}

}  // namespace udisc
