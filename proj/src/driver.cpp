// SPDX-License-Identifier: Apache-2.0

#include "cbp/driver.hpp"

#include <cmath>
#include <cstdio>

#include "cbp/cases.hpp"
#include "cbp/props.hpp"
#include "cbp/solver.hpp"

namespace cbp {

namespace {

constexpr const char* kVersion = "0.1.0";

const char* mode_name(LimiterMode m) {
  return m == LimiterMode::Linearized ? "linear" : "nonlinear";
}

}  // namespace

void validate(const RunConfig& cfg) {
  if (cfg.degree < 1) throw ContractError("config: degree must be positive");
  if (cfg.elements < 1) throw ContractError("config: elements must be positive");
  if (cfg.t_final < 0.0) throw ContractError("config: t_final must be >= 0");
  if (cfg.cfl <= 0.0) throw ContractError("config: cfl must be positive");
  if (cfg.samples < 2) throw ContractError("config: samples must be >= 2");
}

namespace {

// Density is enforced first; the pressure and entropy panels then compare
// the two modes per constraint on the same density-limited base field, the
// way the two-panel demo presents them.
LimitDemoModeResult run_demo_mode(const ElementSolution& base,
                                  LimiterMode mode, const GasParams& gp) {
  LimiterConfig cfg;
  cfg.mode = mode;
  LimitDemoModeResult out;

  const ConservedState mean = element_mean(base);
  auto limited_by = [&](const ElementSolution& e, const ConstraintSpec& spec,
                        double* alpha_out, Coord* argmin_out) {
    const LimitResult r = compute_alpha(e, spec, cfg, gp);
    *alpha_out = r.alpha;
    if (argmin_out) *argmin_out = r.argmin_x;
    ElementSolution cur = e;
    if (r.alpha > 0.0) {
      const StateVec mvec = to_state_vec(mean);
      cur.coeffs = (1.0 - r.alpha) * cur.coeffs;
      cur.coeffs.rowwise() += r.alpha * mvec.transpose();
    }
    return cur;
  };

  const ElementSolution after_density = limited_by(
      base, {ConstraintKind::Density, gp.rho_min}, &out.alpha_density, nullptr);
  out.after_pressure = nodal_to_modal(
      limited_by(after_density, {ConstraintKind::Pressure, gp.p_min},
                 &out.alpha_pressure, &out.pressure_argmin));
  out.after_entropy = nodal_to_modal(
      limited_by(after_density, {ConstraintKind::MinEntropy, *gp.sigma_min},
                 &out.alpha_entropy, &out.entropy_argmin));
  return out;
}

}  // namespace

LimitDemoResult run_limit_demo_core(const RunConfig& cfg) {
  validate(cfg);
  GasParams gp = cfg.gas;
  gp.sigma_min = cfg.sigma_min;

  LimitDemoResult res;
  res.gas = gp;
  res.unlimited = static_discontinuity_element(gp);
  res.unlimited_modal = nodal_to_modal(res.unlimited);
  res.linear = run_demo_mode(res.unlimited, LimiterMode::Linearized, gp);
  res.nonlinear = run_demo_mode(res.unlimited, LimiterMode::Nonlinear, gp);
  return res;
}

CsvTable run_limit_demo(const RunConfig& cfg) {
  const LimitDemoResult res = run_limit_demo_core(cfg);
  const GasParams& gp = res.gas;

  CsvTable table;
  table.comments = {
      std::string("cbp limit-demo v") + kVersion,
      "degree = " + std::to_string(res.unlimited.degree) +
          ", samples = " + std::to_string(cfg.samples) +
          ", sigma_min = " + format_cell(cfg.sigma_min),
      "alpha_density_linear = " + format_cell(res.linear.alpha_density),
      "alpha_pressure_linear = " + format_cell(res.linear.alpha_pressure),
      "alpha_entropy_linear = " + format_cell(res.linear.alpha_entropy),
      "alpha_density_nonlinear = " + format_cell(res.nonlinear.alpha_density),
      "alpha_pressure_nonlinear = " + format_cell(res.nonlinear.alpha_pressure),
      "alpha_entropy_nonlinear = " + format_cell(res.nonlinear.alpha_entropy),
  };
  table.header = {"x",     "rho_unlim", "P_unlim",  "sigma_unlim",
                  "P_lin", "P_nl",      "sigma_lin", "sigma_nl"};

  for (int i = 0; i < cfg.samples; ++i) {
    Coord x = Coord::Constant(1, static_cast<double>(i) / (cfg.samples - 1));
    const ConservedState u0 = eval_at(res.unlimited_modal, x);
    const ConservedState up_lin = eval_at(res.linear.after_pressure, x);
    const ConservedState up_nl = eval_at(res.nonlinear.after_pressure, x);
    const ConservedState ue_lin = eval_at(res.linear.after_entropy, x);
    const ConservedState ue_nl = eval_at(res.nonlinear.after_entropy, x);
    table.rows.push_back({
        format_cell(x[0]),
        format_cell(u0.rho),
        format_cell(pressure(u0, gp)),
        format_cell(specific_entropy(u0, gp)),
        format_cell(pressure(up_lin, gp)),
        format_cell(pressure(up_nl, gp)),
        format_cell(specific_entropy(ue_lin, gp)),
        format_cell(specific_entropy(ue_nl, gp)),
    });
  }
  return table;
}

std::vector<VortexRow> run_vortex_rows(const RunConfig& cfg) {
  validate(cfg);
  const VortexParams vp;
  const GasParams gp = cfg.gas;

  Mesh mesh;
  mesh.dim = 2;
  mesh.n = {cfg.elements, cfg.elements};
  mesh.box.lo = Coord::Constant(2, vp.box_lo);
  mesh.box.hi = Coord::Constant(2, vp.box_hi);

  std::vector<LimiterMode> modes;
  if (cfg.mode != RunConfig::ModeSel::Nonlinear)
    modes.push_back(LimiterMode::Linearized);
  if (cfg.mode != RunConfig::ModeSel::Linear)
    modes.push_back(LimiterMode::Nonlinear);

  std::vector<VortexRow> rows;
  for (LimiterMode mode : modes) {
    SolverConfig sc;
    sc.degree = cfg.degree;
    sc.cfl = cfg.cfl;
    sc.t_final = cfg.t_final;
    sc.gas = gp;
    LimiterConfig lc;
    lc.mode = mode;
    sc.limiter = lc;
    // Positivity-preserving constraints only for the vortex runs.
    sc.constraints = {{ConstraintKind::Density, gp.rho_min},
                      {ConstraintKind::Pressure, gp.p_min}};

    FieldState fs = init_field(
        mesh, cfg.degree, [&](const Coord& x) { return vortex_ic(x, vp, gp); });
    if (cfg.t_final > 0.0) {
      fs = advance(std::move(fs), sc);
    }
    const ErrorReport err = linf_pressure_error(
        fs,
        [&](const Coord& x) { return vortex_exact(x, cfg.t_final, vp, gp); },
        gp);

    VortexRow row;
    row.mode = mode_name(mode);
    row.degree = cfg.degree;
    row.elements = cfg.elements;
    row.t_final = cfg.t_final;
    row.linf_pressure_error = err.value;
    rows.push_back(row);
  }
  if (rows.size() == 2) {
    const double lin = rows[0].linf_pressure_error;
    const double nl = rows[1].linf_pressure_error;
    if (lin != 0.0) {
      rows[1].error_reduction_percent = 100.0 * (nl - lin) / lin;
    }
  }
  return rows;
}

CsvTable run_vortex(const RunConfig& cfg) {
  const std::vector<VortexRow> rows = run_vortex_rows(cfg);
  CsvTable table;
  table.comments = {
      std::string("cbp vortex v") + kVersion,
      "degree = " + std::to_string(cfg.degree) +
          ", elements = " + std::to_string(cfg.elements) +
          ", t_final = " + format_cell(cfg.t_final) +
          ", cfl = " + format_cell(cfg.cfl),
  };
  table.header = {"mode",        "degree",
                  "elements",    "t_final",
                  "linf_pressure_error", "error_reduction_percent"};
  for (const VortexRow& r : rows) {
    table.rows.push_back({
        r.mode,
        std::to_string(r.degree),
        std::to_string(r.elements),
        format_cell(r.t_final),
        format_cell(r.linf_pressure_error),
        r.error_reduction_percent ? format_cell(*r.error_reduction_percent)
                                  : std::string{},
    });
  }
  return table;
}

int run_props(const RunConfig& cfg) {
  const auto results = props::run_all(cfg.seed);
  int failed = 0;
  for (const auto& r : results) {
    std::printf("%-34s %s  %s\n", r.name.c_str(), r.pass ? "PASS" : "FAIL",
                r.detail.c_str());
    if (!r.pass) ++failed;
  }
  std::printf("%zu checks, %d failed (seed %llu)\n", results.size(), failed,
              static_cast<unsigned long long>(cfg.seed));
  return failed == 0 ? 0 : 1;
}

}  // namespace cbp
