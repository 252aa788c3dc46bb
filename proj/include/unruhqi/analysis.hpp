#pragma once

#include <optional>
#include <ostream>
#include <set>
#include <string>

#include "unruhqi/correlations.hpp"
#include "unruhqi/steering.hpp"
#include "unruhqi/unruh.hpp"

namespace uqi {

struct AnalysisOptions {
  bool with_oracles = false;
  int oracle_grid = 64;
  int oracle_refine = 40;
  int quadrature_nodes = 64;
  unsigned threads = 0;  // 0: hardware concurrency (sweeps only)
};

// Everything computed for one accelerated Werner state alice_rob_state(p, r).
struct AnalysisRecord {
  double p = 0.0;
  double r = 0.0;
  CorrelationReport correlations;
  double eq17_gap = 0.0;  // concurrence_eq17 - concurrence_wootters
  double sep_threshold = 0.0;
  double bell_threshold = 0.0;
  double steer_threshold = 0.0;
  SteeringEllipsoid ellipsoid_first;   // inertial qubit, steered from the accelerated one
  SteeringEllipsoid ellipsoid_second;  // accelerated qubit, steered from the inertial one
  double msc = 0.0;                    // closed form, first qubit steered
  double msc_second = 0.0;
  std::optional<double> msc_oracle;
  CriticalRadiusResult critical_radius;
  std::optional<CriticalRadiusResult> critical_radius_quadrature;
};

AnalysisRecord analyze(double p, UnruhParameter r, const AnalysisOptions& options = {});

// Flat JSON object, snake_case keys, numbers rounded to 9 significant digits,
// "inf" for the p = 0 critical radius.
std::string to_json(const AnalysisRecord& record);

// "%.9g", with "inf" / "-inf" / "nan" spelled out.
std::string format_number(double value);
double round_significant(double value);

enum class Quantity { concurrence, concurrence_eq17, chsh_m, msc, r_c, thresholds };

Quantity parse_quantity(const std::string& name);

struct SweepSpec {
  double p_min = 0.0;
  double p_max = 1.0;
  int p_steps = 11;
  double r_min = 0.0;
  double r_max = kMaxAcceleration;
  int r_steps = 11;
  std::set<Quantity> quantities{Quantity::concurrence, Quantity::concurrence_eq17, Quantity::chsh_m,
                                Quantity::msc,         Quantity::r_c,              Quantity::thresholds};

  void validate() const;
  double p_at(int i) const;
  double r_at(int j) const;
};

// Header row plus p_steps * r_steps rows, p outer, r inner.
void write_sweep_csv(const SweepSpec& spec, const AnalysisOptions& options, std::ostream& out);

// "# center=..." / "# semiaxes=..." comment lines, an "x,y,z" header and one
// row per Fibonacci-lattice surface point.
void write_ellipsoid_csv(double p, UnruhParameter r, Qubit steered, int samples, std::ostream& out);

}  // namespace uqi
