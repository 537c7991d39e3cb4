#include "qmflow/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "qmflow/brooks.hpp"
#include "qmflow/errors.hpp"
#include "qmflow/flow.hpp"
#include "qmflow/rho.hpp"

namespace qmflow {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "pattern",        "N_list",          "T",                  "T_times_N",
      "m",              "m_per_N",         "K",                  "K_per_m",
      "hole_halfwidth", "phase_H",         "phase_V",            "phase_D",
      "smoothing",      "samples_per_strip", "seed",             "hofer_time_samples",
      "hofer_space_samples", "calabi_time_samples", "calabi_space_samples", "output"};
  return keys;
}

int positive_int(const KeyValueDocument& doc, const std::string& key, int fallback) {
  if (!doc.contains(key)) return fallback;
  const long long v = doc.require_int(key);
  if (v < 1 || v > 1'000'000'000) throw ConfigError(key + " must be a positive integer");
  return static_cast<int>(v);
}

double real_in(const KeyValueDocument& doc, const std::string& key, double fallback) {
  if (!doc.contains(key)) return fallback;
  const double v = doc.require_double(key);
  if (!std::isfinite(v)) throw ConfigError(key + " must be finite");
  return v;
}

std::vector<int> parse_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto first = item.find_first_not_of(" \t[]");
    const auto last = item.find_last_not_of(" \t[]");
    if (first == std::string::npos) continue;
    const long long v = parse_int(item.substr(first, last - first + 1), "N_list");
    if (v < 1 || v > 100000) throw ConfigError("N_list entries must be positive");
    out.push_back(static_cast<int>(v));
  }
  return out;
}

std::string json_scalar(const nlohmann::json& v, const std::string& key) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  if (v.is_number_unsigned()) return std::to_string(v.get<unsigned long long>());
  if (v.is_number_float()) return format_exact(v.get<double>());
  throw ConfigError("JSON key '" + key + "' must hold a string or number");
}

}  // namespace

BuildParams ExperimentConfig::build_params(int N) const {
  BuildParams p;
  p.N = N;
  p.T = T_for(N);
  p.m = m_for(N);
  p.hole_halfwidth = hole_halfwidth;
  p.offsets = phases;
  p.smoothing = smoothing;
  return p;
}

ExperimentConfig ExperimentConfig::from_document(const KeyValueDocument& doc) {
  for (const auto& [key, value] : doc.entries()) {
    if (!known_keys().count(key)) throw ConfigError("unknown config key '" + key + "'");
  }
  auto exclusive = [&](const char* a, const char* b) {
    if (doc.contains(a) && doc.contains(b)) {
      throw ConfigError(std::string("keys '") + a + "' and '" + b + "' are mutually exclusive");
    }
  };
  exclusive("T", "T_times_N");
  exclusive("m", "m_per_N");
  exclusive("K", "K_per_m");

  ExperimentConfig c;
  if (auto v = doc.get("pattern")) {
    try {
      c.pattern = *v;
      CountingQM q(Word::parse(*v));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("pattern: ") + e.what());
    }
  }
  if (auto v = doc.get("N_list")) c.N_list = parse_list(*v);
  if (doc.contains("T")) {
    c.T_scales_with_N = false;
    c.T_value = real_in(doc, "T", 0.0);
  } else {
    c.T_value = real_in(doc, "T_times_N", c.T_value);
  }
  if (!(c.T_value > 0.0)) throw ConfigError("T must be positive");
  if (doc.contains("m")) {
    c.m_scales_with_N = false;
    c.m_value = positive_int(doc, "m", 1);
  } else {
    c.m_value = positive_int(doc, "m_per_N", c.m_value);
  }
  if (doc.contains("K")) {
    c.K_scales_with_m = false;
    c.K_value = positive_int(doc, "K", 1);
  } else {
    c.K_value = positive_int(doc, "K_per_m", c.K_value);
  }
  c.hole_halfwidth = real_in(doc, "hole_halfwidth", c.hole_halfwidth);
  c.phases.phase_H = real_in(doc, "phase_H", c.phases.phase_H);
  c.phases.phase_V = real_in(doc, "phase_V", c.phases.phase_V);
  c.phases.phase_D = real_in(doc, "phase_D", c.phases.phase_D);
  c.smoothing = real_in(doc, "smoothing", c.smoothing);
  if (c.smoothing < 0.0) throw ConfigError("smoothing must be nonnegative");
  c.samples_per_strip = positive_int(doc, "samples_per_strip", c.samples_per_strip);
  if (c.samples_per_strip < 1000) throw ConfigError("samples_per_strip must be at least 1000");
  if (doc.contains("seed")) {
    const long long s = doc.require_int("seed");
    if (s < 0) throw ConfigError("seed must be nonnegative");
    c.seed = static_cast<std::uint64_t>(s);
  }
  c.hofer_time_samples = positive_int(doc, "hofer_time_samples", c.hofer_time_samples);
  c.hofer_space_samples = positive_int(doc, "hofer_space_samples", c.hofer_space_samples);
  c.calabi_time_samples = positive_int(doc, "calabi_time_samples", c.calabi_time_samples);
  c.calabi_space_samples = positive_int(doc, "calabi_space_samples", c.calabi_space_samples);
  if (auto v = doc.get("output")) c.output = v->empty() ? "-" : *v;

  for (int N : c.N_list) {
    if (c.K_for(N) % c.m_for(N) != 0) {
      throw ConfigError("K = " + std::to_string(c.K_for(N)) + " is not a multiple of m = " +
                        std::to_string(c.m_for(N)) + " for N = " + std::to_string(N));
    }
  }
  return c;
}

ExperimentConfig ExperimentConfig::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(std::string("JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("JSON config must be an object");
  KeyValueDocument doc;
  for (const auto& [key, value] : j.items()) {
    if (value.is_array()) {
      std::string joined;
      for (const auto& item : value) {
        if (!joined.empty()) joined += ",";
        joined += json_scalar(item, key);
      }
      doc.set(key, joined);
    } else {
      doc.set(key, json_scalar(value, key));
    }
  }
  return from_document(doc);
}

KeyValueDocument load_document(const std::string& path) {
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    return ExperimentConfig::from_json(buffer.str()).to_document();
  }
  return KeyValueDocument::load(path);
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  return from_document(load_document(path));
}

KeyValueDocument ExperimentConfig::to_document() const {
  KeyValueDocument doc;
  doc.set("pattern", pattern);
  std::string list;
  for (int N : N_list) list += (list.empty() ? "" : ",") + std::to_string(N);
  doc.set("N_list", list);
  doc.set(T_scales_with_N ? "T_times_N" : "T", format_exact(T_value));
  doc.set(m_scales_with_N ? "m_per_N" : "m", std::to_string(m_value));
  doc.set(K_scales_with_m ? "K_per_m" : "K", std::to_string(K_value));
  doc.set("hole_halfwidth", format_exact(hole_halfwidth));
  doc.set("phase_H", format_exact(phases.phase_H));
  doc.set("phase_V", format_exact(phases.phase_V));
  doc.set("phase_D", format_exact(phases.phase_D));
  doc.set("smoothing", format_exact(smoothing));
  doc.set("samples_per_strip", std::to_string(samples_per_strip));
  doc.set("seed", std::to_string(seed));
  doc.set("hofer_time_samples", std::to_string(hofer_time_samples));
  doc.set("hofer_space_samples", std::to_string(hofer_space_samples));
  doc.set("calabi_time_samples", std::to_string(calabi_time_samples));
  doc.set("calabi_space_samples", std::to_string(calabi_space_samples));
  doc.set("output", output);
  return doc;
}

SweepRow evaluate_scenario(const ExperimentConfig& config, const Scenario& sc) {
  sc.validate();
  require_zero_flux(sc);
  for (int c = 0; c < sc.copies(); ++c) {
    const Flux f = copy_flux(sc, c);
    if (f.a != 0.0 || f.b != 0.0) {
      throw NonHamiltonian("copy " + std::to_string(c) + " has nonzero flux");
    }
  }
  const double tau = sc.tau();
  check_validity_window(sc, tau);

  const CountingQM q(Word::parse(config.pattern));
  const int K = config.K_scales_with_m ? config.K_value * sc.m() : config.K_value;
  const RhoEstimate est = rho_estimate(sc, q, K, config.samples_per_strip, config.seed);
  const RhoPrediction pred = rho_predicted(sc, q);
  const HoferBound hofer =
      hofer_upper_bound(sc, tau, config.hofer_time_samples, config.hofer_space_samples);

  SweepRow row;
  row.N = sc.copies();
  row.T = sc.T();
  row.m = sc.m();
  row.tau = tau;
  row.rho_est = est.value;
  row.rho_stderr = est.std_error;
  row.rho_pred = pred.value;
  row.rho_pred_radius = pred.error_radius;
  row.bad_area = est.bad_area;
  row.bad_area_budget = sc.validation().bad_area_budget;
  row.hofer_numeric = hofer.numeric;
  row.hofer_2Ktau = hofer.analytic;
  row.calabi = calabi(sc, tau, config.calabi_time_samples, config.calabi_space_samples);
  row.ratio = hofer.numeric > 0.0 ? std::abs(est.value) / hofer.numeric : 0.0;
  return row;
}

SweepRow evaluate_N(const ExperimentConfig& config, int N) {
  return evaluate_scenario(config, build_scenario(config.build_params(N)));
}

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  std::vector<SweepRow> rows;
  rows.reserve(config.N_list.size());
  for (int N : config.N_list) rows.push_back(evaluate_N(config, N));
  return rows;
}

std::string format_row(const SweepRow& r) {
  char buf[512];
  std::snprintf(buf, sizeof buf, "%d,%.12g,%d,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g,%.12g",
                r.N, r.T, r.m, r.tau, r.rho_est, r.rho_stderr, r.rho_pred, r.bad_area,
                r.hofer_numeric, r.hofer_2Ktau, r.calabi, r.ratio);
  return buf;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kCsvHeader << '\n';
  for (const SweepRow& r : rows) out << format_row(r) << '\n';
}

std::string error_record(const std::string& kind, const std::string& message) {
  return nlohmann::json{{"error", kind}, {"message", message}}.dump();
}

}  // namespace qmflow
