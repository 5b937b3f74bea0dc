// SPDX-License-Identifier: Apache-2.0
//
// Command-line driver. Exit codes: 0 ok, 1 property failure, 2 I/O failure,
// 3 solver failure.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cbp/csv.hpp"
#include "cbp/driver.hpp"
#include "cbp/errors.hpp"

namespace {

void emit(const cbp::CsvTable& table, const std::string& out_path) {
  if (out_path.empty()) {
    cbp::write_csv(table, std::cout);
  } else {
    cbp::write_csv_file(table, out_path);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuously bounds-preserving DG limiting for the "
               "compressible Euler equations"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from a key = value file");

  cbp::RunConfig cfg;

  CLI::App* demo = app.add_subcommand(
      "limit-demo", "Static-discontinuity limiting demo (CSV plot data)");
  demo->add_option("--degree", cfg.degree, "Polynomial degree")
      ->default_val(9);
  demo->add_option("--samples", cfg.samples, "Uniform sample count")
      ->default_val(10000);
  demo->add_option("--sigma-min", cfg.sigma_min, "Minimum entropy bound")
      ->default_val(0.1);
  demo->add_option("--out", cfg.out_path, "Output CSV path (stdout if empty)");

  CLI::App* vortex = app.add_subcommand(
      "vortex", "Near-vacuum isentropic vortex pressure-error table");
  vortex->add_option("--degree", cfg.degree, "Polynomial degree")
      ->default_val(4);
  vortex->add_option("--elements", cfg.elements, "Elements per direction")
      ->default_val(20);
  vortex->add_option("--t-final", cfg.t_final, "Final time")->default_val(20.0);
  std::string mode = "both";
  vortex->add_option("--mode", mode, "Limiting mode")
      ->check(CLI::IsMember({"linear", "nonlinear", "both"}))
      ->default_val("both");
  vortex->add_option("--cfl", cfg.cfl, "Courant number")->default_val(0.1);
  vortex->add_option("--out", cfg.out_path, "Output CSV path (stdout if empty)");

  CLI::App* props = app.add_subcommand(
      "props", "Run the seeded property/oracle verification suites");
  props->add_option("--seed", cfg.seed, "Random seed")->default_val(42);

  CLI11_PARSE(app, argc, argv);

  try {
    if (demo->parsed()) {
      cfg.command = cbp::RunConfig::Command::LimitDemo;
      emit(cbp::run_limit_demo(cfg), cfg.out_path);
      return 0;
    }
    if (vortex->parsed()) {
      cfg.command = cbp::RunConfig::Command::Vortex;
      cfg.mode = (mode == "linear")      ? cbp::RunConfig::ModeSel::Linear
                 : (mode == "nonlinear") ? cbp::RunConfig::ModeSel::Nonlinear
                                         : cbp::RunConfig::ModeSel::Both;
      emit(cbp::run_vortex(cfg), cfg.out_path);
      return 0;
    }
    cfg.command = cbp::RunConfig::Command::Props;
    return cbp::run_props(cfg);
  } catch (const cbp::IoError& ex) {
    std::fprintf(stderr, "I/O error: %s\n", ex.what());
    return 2;
  } catch (const cbp::SolverBlowupError& ex) {
    std::fprintf(stderr, "solver failure (element %d): %s\n", ex.element_index,
                 ex.what());
    return 3;
  } catch (const std::exception& ex) {
    std::fprintf(stderr, "error: %s\n", ex.what());
    return 1;
  }
}
