#include "unruhqi/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <future>
#include <stdexcept>
#include <thread>
#include <vector>

#include <json.hpp>

namespace uqi {

namespace {

using Json = nlohmann::ordered_json;

Json json_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  return round_significant(value);
}

Json json_vec(const Vec3& v) { return Json::array({json_number(v[0]), json_number(v[1]), json_number(v[2])}); }

void add_ellipsoid(Json& j, const std::string& prefix, const SteeringEllipsoid& e) {
  j[prefix + "_center"] = json_vec(e.center);
  j[prefix + "_semiaxes"] = json_vec(e.semiaxes);
  j[prefix + "_axes"] = Json::array({json_vec(e.axes.column(0)), json_vec(e.axes.column(1)), json_vec(e.axes.column(2))});
}

const char* method_name(CriticalRadiusMethod m) {
  return m == CriticalRadiusMethod::analytic ? "analytic" : "quadrature";
}

}  // namespace

AnalysisRecord analyze(double p, UnruhParameter r, const AnalysisOptions& options) {
  const TwoQubitState rho = alice_rob_state(p, r);
  AnalysisRecord rec;
  rec.p = p;
  rec.r = r.value();
  rec.correlations = correlation_report(rho, p, r);
  rec.eq17_gap = rec.correlations.concurrence_eq17 - rec.correlations.concurrence_wootters;
  rec.sep_threshold = separability_threshold(r);
  rec.bell_threshold = bell_threshold(r);
  rec.steer_threshold = steerability_threshold(r);

  const PauliDecomposition d = pauli_decompose(rho);
  rec.ellipsoid_first = steering_ellipsoid(d, Qubit::first);
  rec.ellipsoid_second = steering_ellipsoid(d, Qubit::second);
  rec.msc = msc_closed_form(rho, Qubit::first);
  rec.msc_second = msc_closed_form(rho, Qubit::second);
  rec.critical_radius = critical_radius_analytic(p, r);

  if (options.with_oracles) {
    rec.msc_oracle = msc_oracle(rho, Qubit::first, options.oracle_grid, options.oracle_refine);
    if (p > 0.0) {
      rec.critical_radius_quadrature = critical_radius_quadrature(d.T, options.quadrature_nodes);
    } else {
      rec.critical_radius_quadrature = rec.critical_radius;
      rec.critical_radius_quadrature->method = CriticalRadiusMethod::quadrature;
    }
  }
  return rec;
}

double round_significant(double value) {
  if (!std::isfinite(value) || value == 0.0) return value;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", value);
  return std::strtod(buf, nullptr);
}

std::string format_number(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (std::isnan(value)) return "nan";
  char buf[64];
  // Avoid "-0" so that byte-level output does not depend on the sign of zero.
  std::snprintf(buf, sizeof buf, "%.9g", value == 0.0 ? 0.0 : value);
  return buf;
}

std::string to_json(const AnalysisRecord& rec) {
  Json j;
  const CorrelationReport& c = rec.correlations;
  j["p"] = json_number(rec.p);
  j["r"] = json_number(rec.r);
  j["concurrence_wootters"] = json_number(c.concurrence_wootters);
  j["concurrence_eq17"] = json_number(c.concurrence_eq17);
  j["eq17_gap"] = json_number(rec.eq17_gap);
  j["ppt_min_eigenvalue"] = json_number(c.ppt_min_eigenvalue);
  j["entangled_ppt"] = c.entangled_ppt;
  j["chsh_m"] = json_number(c.chsh_m);
  j["b_max"] = json_number(c.b_max);
  j["bell_nonlocal"] = c.bell_nonlocal;
  j["sep_threshold"] = json_number(rec.sep_threshold);
  j["bell_threshold"] = json_number(rec.bell_threshold);
  j["steer_threshold"] = json_number(rec.steer_threshold);
  j["msc"] = json_number(rec.msc);
  j["msc_second"] = json_number(rec.msc_second);
  j["msc_method"] = "closed_form";
  if (rec.msc_oracle) j["msc_oracle"] = json_number(*rec.msc_oracle);
  j["r_c"] = json_number(rec.critical_radius.value);
  j["r_c_method"] = method_name(rec.critical_radius.method);
  j["unsteerable"] = rec.critical_radius.unsteerable;
  if (rec.critical_radius_quadrature) j["r_c_quadrature"] = json_number(rec.critical_radius_quadrature->value);
  j["concurrence_method"] = "wootters";
  j["chsh_method"] = "horodecki_x_state";
  add_ellipsoid(j, "ellipsoid_first", rec.ellipsoid_first);
  add_ellipsoid(j, "ellipsoid_second", rec.ellipsoid_second);
  return j.dump();
}

Quantity parse_quantity(const std::string& name) {
  if (name == "concurrence") return Quantity::concurrence;
  if (name == "concurrence_eq17") return Quantity::concurrence_eq17;
  if (name == "chsh_M" || name == "chsh_m") return Quantity::chsh_m;
  if (name == "msc") return Quantity::msc;
  if (name == "r_c") return Quantity::r_c;
  if (name == "thresholds") return Quantity::thresholds;
  throw std::invalid_argument("unknown quantity '" + name + "'");
}

void SweepSpec::validate() const {
  if (p_steps < 1 || r_steps < 1) throw std::invalid_argument("sweep: step counts must be >= 1");
  if (!(p_min >= 0.0 && p_max <= 1.0 && p_min <= p_max)) {
    throw std::invalid_argument("sweep: p range must satisfy 0 <= p_min <= p_max <= 1");
  }
  if (!(r_min >= 0.0 && r_min <= r_max)) throw std::invalid_argument("sweep: r range must satisfy 0 <= r_min <= r_max");
  UnruhParameter{r_max};
}

double SweepSpec::p_at(int i) const {
  return p_steps == 1 ? p_min : p_min + (p_max - p_min) * i / (p_steps - 1);
}

double SweepSpec::r_at(int j) const {
  return r_steps == 1 ? r_min : r_min + (r_max - r_min) * j / (r_steps - 1);
}

void write_sweep_csv(const SweepSpec& spec, const AnalysisOptions& options, std::ostream& out) {
  spec.validate();
  const auto has = [&](Quantity q) { return spec.quantities.count(q) > 0; };

  std::vector<std::string> header{"p", "r"};
  if (has(Quantity::concurrence)) header.push_back("concurrence");
  if (has(Quantity::concurrence_eq17)) header.push_back("concurrence_eq17");
  if (has(Quantity::chsh_m)) {
    header.push_back("chsh_M");
    header.push_back("b_max");
  }
  if (has(Quantity::msc)) header.push_back("msc");
  if (has(Quantity::r_c)) header.push_back("r_c");
  if (has(Quantity::thresholds)) {
    header.push_back("sep_threshold");
    header.push_back("bell_threshold");
    header.push_back("steer_threshold");
  }
  if (options.with_oracles) {
    if (has(Quantity::msc)) header.push_back("msc_oracle");
    if (has(Quantity::r_c)) header.push_back("r_c_quadrature");
  }

  const int cells = spec.p_steps * spec.r_steps;
  std::vector<std::string> rows(static_cast<std::size_t>(cells));
  auto compute = [&](int cell) {
    const double p = spec.p_at(cell / spec.r_steps);
    const double r = spec.r_at(cell % spec.r_steps);
    const AnalysisRecord rec = analyze(p, UnruhParameter(r), options);
    std::vector<double> fields{rec.p, rec.r};
    if (has(Quantity::concurrence)) fields.push_back(rec.correlations.concurrence_wootters);
    if (has(Quantity::concurrence_eq17)) fields.push_back(rec.correlations.concurrence_eq17);
    if (has(Quantity::chsh_m)) {
      fields.push_back(rec.correlations.chsh_m);
      fields.push_back(rec.correlations.b_max);
    }
    if (has(Quantity::msc)) fields.push_back(rec.msc);
    if (has(Quantity::r_c)) fields.push_back(rec.critical_radius.value);
    if (has(Quantity::thresholds)) {
      fields.push_back(rec.sep_threshold);
      fields.push_back(rec.bell_threshold);
      fields.push_back(rec.steer_threshold);
    }
    if (options.with_oracles) {
      if (has(Quantity::msc)) fields.push_back(*rec.msc_oracle);
      if (has(Quantity::r_c)) fields.push_back(rec.critical_radius_quadrature->value);
    }
    std::string line;
    for (std::size_t k = 0; k < fields.size(); ++k) {
      if (k) line += ',';
      line += format_number(fields[k]);
    }
    rows[static_cast<std::size_t>(cell)] = std::move(line);
  };

  // Cells are independent; each worker takes a strided slice.
  unsigned workers = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<unsigned>(workers, static_cast<unsigned>(cells));
  std::vector<std::future<void>> jobs;
  for (unsigned w = 0; w < workers; ++w) {
    jobs.push_back(std::async(std::launch::async, [&, w] {
      for (int cell = static_cast<int>(w); cell < cells; cell += static_cast<int>(workers)) compute(cell);
    }));
  }
  for (auto& job : jobs) job.get();

  for (std::size_t k = 0; k < header.size(); ++k) out << (k ? "," : "") << header[k];
  out << '\n';
  for (const std::string& row : rows) out << row << '\n';
  if (!out) throw std::runtime_error("sweep: failed writing output");
}

void write_ellipsoid_csv(double p, UnruhParameter r, Qubit steered, int samples, std::ostream& out) {
  if (samples < 8) throw std::invalid_argument("ellipsoid: samples must be >= 8");
  const SteeringEllipsoid e = steering_ellipsoid(alice_rob_state(p, r), steered);
  out << "# center=" << format_number(e.center[0]) << ',' << format_number(e.center[1]) << ','
      << format_number(e.center[2]) << " semiaxes=" << format_number(e.semiaxes[0]) << ','
      << format_number(e.semiaxes[1]) << ',' << format_number(e.semiaxes[2]) << '\n';
  out << "x,y,z\n";
  for (const Vec3& point : ellipsoid_surface(e, samples)) {
    out << format_number(point[0]) << ',' << format_number(point[1]) << ',' << format_number(point[2]) << '\n';
  }
  if (!out) throw std::runtime_error("ellipsoid: failed writing output");
}

}  // namespace uqi
