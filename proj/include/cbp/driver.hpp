// SPDX-License-Identifier: Apache-2.0
//
// Experiment orchestration behind the CLI: the static-discontinuity
// limiting demo, the near-vacuum vortex error table, and the property
// suite entry point.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cbp/csv.hpp"
#include "cbp/element.hpp"
#include "cbp/euler.hpp"
#include "cbp/limiter.hpp"

namespace cbp {

struct RunConfig {
  enum class Command { LimitDemo, Vortex, Props };
  enum class ModeSel { Linear, Nonlinear, Both };

  Command command = Command::LimitDemo;
  int degree = 9;
  int elements = 20;       ///< per direction (vortex)
  double t_final = 20.0;
  ModeSel mode = ModeSel::Both;
  double cfl = 0.1;
  double sigma_min = 0.1;  ///< entropy floor for the limit demo
  int samples = 10000;
  std::string out_path{};
  std::uint64_t seed = 42;
  GasParams gas{};
};

/// Throws ContractError when a RunConfig invariant is violated.
void validate(const RunConfig& cfg);

/// Per-mode result of the limiting demo. Density is enforced first; the
/// pressure and entropy panels each limit the density-limited base field
/// for their own constraint, so the two modes are compared per constraint
/// on identical inputs.
struct LimitDemoModeResult {
  double alpha_density = 0.0;
  double alpha_pressure = 0.0;
  double alpha_entropy = 0.0;
  Coord pressure_argmin;  ///< binding location of the pressure h-minimum
  Coord entropy_argmin;   ///< binding location of the entropy h-minimum
  ModalForm after_pressure;
  ModalForm after_entropy;
};

struct LimitDemoResult {
  ElementSolution unlimited;
  ModalForm unlimited_modal;
  LimitDemoModeResult linear;
  LimitDemoModeResult nonlinear;
  GasParams gas;
};

LimitDemoResult run_limit_demo_core(const RunConfig& cfg);
CsvTable run_limit_demo(const RunConfig& cfg);

struct VortexRow {
  std::string mode;
  int degree = 4;
  int elements = 20;
  double t_final = 20.0;
  double linf_pressure_error = 0.0;
  std::optional<double> error_reduction_percent{};
};

std::vector<VortexRow> run_vortex_rows(const RunConfig& cfg);
CsvTable run_vortex(const RunConfig& cfg);

/// Runs the property/oracle suites; prints one line per check and a
/// summary. Returns 0 iff every check passes.
int run_props(const RunConfig& cfg);

}  // namespace cbp
