// SPDX-License-Identifier: Apache-2.0

#include "cbp/limiter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cbp {

ConservedState squeeze(const ConservedState& u_x, const ConservedState& mean,
                       double alpha) {
  // (1 - alpha) u + alpha mean: exact at both endpoints.
  ConservedState out;
  out.rho = (1.0 - alpha) * u_x.rho + alpha * mean.rho;
  out.m = (1.0 - alpha) * u_x.m + alpha * mean.m;
  out.E = (1.0 - alpha) * u_x.E + alpha * mean.E;
  return out;
}

double h_plus(double g_u, double g_mean) { return g_u / g_mean; }

double h_minus_linear(double g_u, double g_mean) {
  return g_u / (g_mean - g_u);
}

double pressure_alpha_star(const ConservedState& u, const ConservedState& mean,
                           const GasParams& gp, double eps) {
  const ConstraintSpec spec{ConstraintKind::Pressure, gp.p_min};
  const double g_u = constraint_g(spec, u, gp);
  const double g_mean = constraint_g(spec, mean, gp);
  if (!(g_u < 0.0) || !(g_mean >= eps)) {
    throw ContractError("pressure_alpha_star: dispatcher precondition violated");
  }
  const double drho = mean.rho - u.rho;
  const SpatialVec dm = mean.m - u.m;
  const double dE = mean.E - u.E;
  const double pfloor = gp.p_min / (gp.gamma - 1.0);

  const double A = drho * dE - 0.5 * dm.squaredNorm();
  const double B = u.E * drho + u.rho * dE - u.m.dot(dm) - drho * pfloor;
  const double C = u.rho * u.E - 0.5 * u.m.squaredNorm() - u.rho * pfloor;

  double alpha;
  if (std::abs(A) < eps) {
    alpha = 1.0;
  } else {
    const double disc = std::max(0.0, B * B - 4.0 * A * C);
    alpha = (-B + std::sqrt(disc)) / (2.0 * A);
  }
  return std::min(std::max(alpha, 0.0), 1.0);
}

double h_functional(const ConservedState& u_x, const ConservedState& mean,
                    const ConstraintSpec& spec, const LimiterConfig& cfg,
                    const GasParams& gp) {
  const double g_u = constraint_g(spec, u_x, gp);
  const double g_mean = constraint_g(spec, mean, gp);
  if (!(g_mean >= cfg.eps)) {
    throw ContractError("h_functional: mean infeasible; dispatcher must handle");
  }
  if (g_u >= 0.0) {
    return h_plus(g_u, g_mean);
  }
  if (cfg.mode == LimiterMode::Linearized) {
    return h_minus_linear(g_u, g_mean);
  }
  switch (spec.kind) {
    case ConstraintKind::Density:
      // Linear constraint: the intersection problem reduces to the
      // linearized form.
      return h_minus_linear(g_u, g_mean);
    case ConstraintKind::Pressure:
      return -pressure_alpha_star(u_x, mean, gp, cfg.eps);
    case ConstraintKind::MinEntropy: {
      auto g_of_alpha = [&](double a) {
        return constraint_g(spec, squeeze(u_x, mean, a), gp);
      };
      double alpha_hi = -h_minus_linear(g_u, g_mean);
      if (!(g_of_alpha(alpha_hi) >= 0.0)) {
        // The linearized factor is an upper bound in exact arithmetic; fall
        // back to the mean endpoint if roundoff spoiled the bracket.
        alpha_hi = 1.0;
      }
      return -illinois_alpha_star(g_of_alpha, alpha_hi, cfg.illinois_iters);
    }
  }
  throw ContractError("h_functional: bad constraint kind");
}

namespace {

struct MinTracker {
  double best_h = std::numeric_limits<double>::infinity();
  Coord best_x;
  double g_min = std::numeric_limits<double>::infinity();
};

}  // namespace

MinHResult find_min_h(const ElementSolution& e, const ModalForm& mf,
                      const ConservedState& mean, const ConstraintSpec& spec,
                      const LimiterConfig& cfg, const GasParams& gp) {
  const ElementBasis& basis = element_basis(e.degree, e.dim);
  MinTracker track;
  track.best_x = Coord::Zero(e.dim);
  std::vector<std::pair<double, Coord>> seeds;
  seeds.reserve(4 * basis.n_nodes);

  auto visit_state = [&](const ConservedState& u, const Coord& x) {
    const double g = constraint_g(spec, u, gp);
    track.g_min = std::min(track.g_min, g);
    const double h = h_functional(u, mean, spec, cfg, gp);
    if (h < track.best_h) {
      track.best_h = h;
      track.best_x = x;
    }
    return h;
  };
  auto field = [&](const Coord& x) { return visit_state(eval_at(mf, x), x); };
  auto seed_state = [&](const ConservedState& u, const Coord& x) {
    seeds.emplace_back(visit_state(u, x), x);
  };

  // Seeds: solution nodes (nodal states directly), volume quadrature
  // points, and surface quadrature points.
  for (int k = 0; k < basis.n_nodes; ++k) {
    seed_state(node_state(e, k), basis.node_coords.row(k).transpose());
  }
  const int nq = static_cast<int>(basis.vol_quad.weights.size());
  Eigen::MatrixXd quad_states = basis.vol_interp * e.coeffs;
  for (int q = 0; q < nq; ++q) {
    seed_state(from_state_vec(StateVec(quad_states.row(q).transpose())),
               basis.vol_quad.points.row(q).transpose());
  }
  for (const auto& face : basis.faces) {
    Eigen::MatrixXd traces = face.interp * e.coeffs;
    for (int q = 0; q < traces.rows(); ++q) {
      seed_state(from_state_vec(StateVec(traces.row(q).transpose())),
                 face.points.row(q).transpose());
    }
  }
  if (cfg.seed_samples > 0) {
    const int per_dim =
        (e.dim == 1) ? cfg.seed_samples
                     : static_cast<int>(std::ceil(std::sqrt(
                           static_cast<double>(cfg.seed_samples))));
    Coord x(e.dim);
    for (int j = 0; j < (e.dim == 2 ? per_dim : 1); ++j) {
      for (int i = 0; i < per_dim; ++i) {
        x[0] = (per_dim == 1) ? 0.5 : static_cast<double>(i) / (per_dim - 1);
        if (e.dim == 2) {
          x[1] = (per_dim == 1) ? 0.5 : static_cast<double>(j) / (per_dim - 1);
        }
        seed_state(eval_at(mf, x), x);
      }
    }
  }

  const double h_seed_min = track.best_h;

  auto clamp_box = [&](Coord p) {
    for (int a = 0; a < e.dim; ++a) p[a] = std::min(std::max(p[a], 0.0), 1.0);
    return p;
  };

  // Newton refinement with a gradient descent and backtracking fallback
  // where Newton is ill-suited (indefinite Hessian or an uphill step).
  // Iterates stay in the box; the loop exits once the step or improvement
  // stalls at roundoff level.
  auto refine_from = [&](Coord x, double fx) {
    for (int it = 0; it < cfg.newton_iters; ++it) {
      const GradHess gh = numeric_grad_hess(field, x, cfg.fd_step);
      bool accepted = false;
      Coord xn = x;
      double fn = fx;

      bool hess_pd;
      Coord step(e.dim);
      if (e.dim == 1) {
        hess_pd = gh.hess(0, 0) > 0.0;
        if (hess_pd) step[0] = -gh.grad[0] / gh.hess(0, 0);
      } else {
        const double det =
            gh.hess(0, 0) * gh.hess(1, 1) - gh.hess(0, 1) * gh.hess(1, 0);
        hess_pd = gh.hess(0, 0) > 0.0 && det > 0.0;
        if (hess_pd) {
          step[0] =
              -(gh.hess(1, 1) * gh.grad[0] - gh.hess(0, 1) * gh.grad[1]) / det;
          step[1] =
              -(gh.hess(0, 0) * gh.grad[1] - gh.hess(1, 0) * gh.grad[0]) / det;
        }
      }
      if (hess_pd) {
        const Coord cand = clamp_box(x + step);
        const double fc = field(cand);
        if (fc < fx) {
          xn = cand;
          fn = fc;
          accepted = true;
        }
      }
      if (!accepted) {
        const double grad_norm = gh.grad.norm();
        if (grad_norm > 0.0) {
          const Coord dir = gh.grad / grad_norm;
          double t = 1.0 / (e.degree + 1);
          for (int bt = 0; bt < 20; ++bt) {
            const Coord cand = clamp_box(x - t * dir);
            const double fc = field(cand);
            if (fc <= fx - 1e-4 * t * grad_norm) {
              xn = cand;
              fn = fc;
              accepted = true;
              break;
            }
            t *= 0.5;
          }
        }
      }
      if (!accepted) break;
      const double moved = (xn - x).norm();
      const double gained = fx - fn;
      x = xn;
      fx = fn;
      if (moved <= 1e-10 || gained <= 1e-14 * std::max(1.0, std::abs(fx)))
        break;
    }
  };

  // Multi-start: descend from the few best seeds that are spatially
  // distinct, so a shallow basin near the global seed minimum does not
  // shadow a deeper one elsewhere.
  std::sort(seeds.begin(), seeds.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  const double r_min = 0.25 / (e.degree + 1);
  const int max_starts = 2 + 2 * e.dim;
  std::vector<Coord> starts;
  for (const auto& [h, x] : seeds) {
    if (static_cast<int>(starts.size()) >= max_starts) break;
    bool close = false;
    for (const Coord& s : starts) {
      if ((s - x).norm() < r_min) {
        close = true;
        break;
      }
    }
    if (!close) starts.push_back(x);
  }
  for (const Coord& s : starts) {
    refine_from(s, field(s));
  }

  MinHResult out;
  const double margin =
      cfg.safety_kappa * std::max(std::abs(h_seed_min), cfg.eps);
  out.value = track.best_h - margin;
  out.argmin = track.best_x;
  out.g_min = track.g_min;
  return out;
}

namespace {

void apply_squeeze(ElementSolution& e, const ConservedState& mean, double alpha) {
  const StateVec mvec = to_state_vec(mean);
  e.coeffs = (1.0 - alpha) * e.coeffs;
  e.coeffs.rowwise() += alpha * mvec.transpose();
}

double dense_sample_min_g(const ModalForm& mf, const ConstraintSpec& spec,
                          const GasParams& gp, int samples) {
  const int per_dim =
      (mf.dim == 1) ? samples
                    : static_cast<int>(
                          std::ceil(std::sqrt(static_cast<double>(samples))));
  double gmin = std::numeric_limits<double>::infinity();
  Coord x(mf.dim);
  for (int j = 0; j < (mf.dim == 2 ? per_dim : 1); ++j) {
    for (int i = 0; i < per_dim; ++i) {
      x[0] = (per_dim == 1) ? 0.5 : static_cast<double>(i) / (per_dim - 1);
      if (mf.dim == 2) {
        x[1] = (per_dim == 1) ? 0.5 : static_cast<double>(j) / (per_dim - 1);
      }
      gmin = std::min(gmin, constraint_g(spec, eval_at(mf, x), gp));
    }
  }
  return gmin;
}

}  // namespace

LimitResult compute_alpha(const ElementSolution& e, const ConstraintSpec& spec,
                          const LimiterConfig& cfg, const GasParams& gp) {
  check_element(e);
  LimitResult res;
  res.argmin_x = Coord::Zero(e.dim);

  const ConservedState mean = element_mean(e);
  const double g_mean = constraint_g(spec, mean, gp);
  if (g_mean < cfg.eps) {
    res.alpha = 1.0;
    res.status = LimitStatus::MeanInfeasible;
    res.g_min_before = g_mean;
    return res;
  }

  const ModalForm mf = nodal_to_modal(e);
  const MinHResult mh = find_min_h(e, mf, mean, spec, cfg, gp);
  res.alpha = std::min(std::max(-mh.value, 0.0), 1.0);
  res.argmin_x = mh.argmin;
  res.g_min_before = mh.g_min;
  res.status =
      (res.alpha == 0.0) ? LimitStatus::NoLimitingNeeded : LimitStatus::Limited;

  if (cfg.seed_samples > 0) {
    ElementSolution limited = e;
    apply_squeeze(limited, mean, res.alpha);
    res.g_min_after =
        dense_sample_min_g(nodal_to_modal(limited), spec, gp, cfg.seed_samples);
  }
  return res;
}

std::pair<ElementSolution, std::vector<LimitResult>> limit_element(
    const ElementSolution& e, const std::vector<ConstraintSpec>& specs,
    const LimiterConfig& cfg, const GasParams& gp) {
  check_element(e);
  for (std::size_t i = 1; i < specs.size(); ++i) {
    if (static_cast<int>(specs[i].kind) <= static_cast<int>(specs[i - 1].kind)) {
      throw ContractError(
          "limit_element: constraints must be ordered density, pressure, "
          "min-entropy");
    }
  }

  ElementSolution cur = e;
  std::vector<LimitResult> results;
  results.reserve(specs.size());
  for (const ConstraintSpec& spec : specs) {
    LimitResult r = compute_alpha(cur, spec, cfg, gp);
    if (r.alpha > 0.0) {
      const ConservedState mean = element_mean(cur);
      apply_squeeze(cur, mean, r.alpha);
    }
    results.push_back(std::move(r));
  }
  return {std::move(cur), std::move(results)};
}

}  // namespace cbp
