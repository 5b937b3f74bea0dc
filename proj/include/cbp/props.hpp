// SPDX-License-Identifier: Apache-2.0
//
// Seeded property/oracle verification harness. The oracles here (bisection
// roots, dense sampling, Richardson-extrapolated differences, Riemann-sum
// means, direct Lagrange evaluation) are deliberately independent of the
// implementation paths they check.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "cbp/element.hpp"
#include "cbp/euler.hpp"
#include "cbp/limiter.hpp"

namespace cbp::props {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

/// Runs the full suite with the given seed.
std::vector<CheckResult> run_all(std::uint64_t seed);

/// Deterministic generator independent of libstdc++ distribution details.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  double uniform();  ///< in [0, 1)
  double uniform(double lo, double hi);
  double normal();
  int uniform_int(int lo, int hi);  ///< inclusive bounds

 private:
  std::uint64_t next();
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// ---- random inputs --------------------------------------------------------

ConservedState random_admissible_state(Rng& rng, int dim);

/// g2(u) < 0, g2(mean) >= eps, rho(u) > 0.
struct StatePair {
  ConservedState u;
  ConservedState mean;
};
StatePair random_pressure_pair(Rng& rng, int dim, const GasParams& gp);

/// sigma(u) < bound <= sigma(mean) - eps, densities positive.
struct EntropyCase {
  ConservedState u;
  ConservedState mean;
  double sigma_bound = 0.0;
};
EntropyCase random_entropy_case(Rng& rng, int dim, const GasParams& gp);

/// Random perturbed element whose mean satisfies density/pressure floors
/// (and, when requested, an entropy floor reported via sigma_bound_out).
ElementSolution random_element(Rng& rng, int degree, int dim,
                               const GasParams& gp, bool entropy_feasible_mean,
                               double* sigma_bound_out);

// ---- oracles --------------------------------------------------------------

/// Plain bisection after `iters` halvings; requires g(lo) < 0 <= g(hi).
double bisect_root(const std::function<double(double)>& g, double lo, double hi,
                   int iters);

/// Min of g over a uniform sample grid (n points in 1D, ~n total in 2D).
double dense_min_g(const ModalForm& mf, const ConstraintSpec& spec,
                   const GasParams& gp, int samples);

/// Same grid scan for the limiting functional h.
double dense_min_h(const ModalForm& mf, const ConservedState& mean,
                   const ConstraintSpec& spec, const LimiterConfig& cfg,
                   const GasParams& gp, int samples);

/// Richardson-extrapolated central difference gradient (two step levels).
Coord richardson_gradient(const std::function<double(const Coord&)>& f,
                          const Coord& x, double h0);

/// Direct Lagrange-basis evaluation from nodal values (tensor product).
ConservedState lagrange_eval(const ElementSolution& e, const Coord& x);

/// Riemann-sum element mean with n uniform cells per direction.
ConservedState riemann_sum_mean(const ElementSolution& e, int n);

}  // namespace cbp::props
