#include "cavelim/evolve.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cavelim/error.hpp"

namespace cavelim {

cplx expect(const Operator& op, const Operator& rho) {
  require_same_space(op, rho, "expect");
  // Tr(Oρ) = Σ_ij O_ij ρ_ji
  return (op.matrix().transpose().cwiseProduct(rho.matrix())).sum();
}

void require_density_matrix(const Operator& rho, double tol, const char* context) {
  std::ostringstream msg;
  msg << context << ": ";
  if (hermiticity_defect(rho) > tol) {
    msg << "state is not Hermitian";
    throw SpecError(msg.str());
  }
  if (std::abs(trace(rho) - 1.0) > tol) {
    msg << "state does not have unit trace";
    throw SpecError(msg.str());
  }
  const Matrix herm = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -tol) {
    msg << "state is not positive semidefinite";
    throw SpecError(msg.str());
  }
}

namespace {

// Dormand–Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 71.0 / 57600.0, e3 = -71.0 / 16695.0, e4 = 71.0 / 1920.0,
                 e5 = -17253.0 / 339200.0, e6 = 22.0 / 525.0, e7 = -1.0 / 40.0;

void record(Trajectory& traj, const std::vector<Observable>& obs, const Matrix& rho,
            const std::string& space, double t, bool store) {
  traj.times.push_back(t);
  Operator state(rho, space);
  for (std::size_t k = 0; k < obs.size(); ++k) traj.observables[k].push_back(expect(obs[k].op, state));
  if (store) traj.states.push_back(std::move(state));
}

}  // namespace

Trajectory evolve(const SuperOp& generator, const Operator& rho0, const std::vector<double>& times,
                  const std::vector<Observable>& observables, const EvolveOptions& opts) {
  if (rho0.space() != generator.space() || rho0.dim() != generator.dim()) {
    throw DimensionError("evolve: initial state does not match the generator space");
  }
  require_density_matrix(rho0, opts.state_tol, "evolve");
  if (times.empty()) throw SpecError("evolve: time grid is empty");
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw SpecError("evolve: time grid must be strictly increasing");
  }
  if (!(opts.rtol > 0.0) || !(opts.atol > 0.0)) throw SpecError("evolve: tolerances must be positive");
  for (const auto& o : observables) {
    if (o.op.space() != generator.space()) {
      throw DimensionError("evolve: observable '" + o.name + "' is on the wrong space");
    }
  }

  Trajectory traj;
  traj.generator = generator.label();
  traj.rtol = opts.rtol;
  traj.atol = opts.atol;
  traj.observables.resize(observables.size());
  for (const auto& o : observables) traj.observable_names.push_back(o.name);

  Matrix y = rho0.matrix();
  double t = times.front();
  record(traj, observables, y, generator.space(), t, opts.store_states);
  if (times.size() == 1) return traj;

  double h = opts.initial_step;
  if (!(h > 0.0)) h = 0.01 / std::max(1.0, generator.norm_estimate());

  const Index d = generator.dim();
  Matrix k1 = generator.apply(y), k2(d, d), k3(d, d), k4(d, d), k5(d, d), k6(d, d), k7(d, d);
  Matrix stage(d, d), y_new(d, d), err(d, d);
  bool rejected_last = false;

  for (std::size_t next = 1; next < times.size(); ++next) {
    const double target = times[next];
    while (t < target) {
      if (traj.accepted_steps + traj.rejected_steps >= opts.max_steps) {
        throw IntegrationError("evolve: step budget exhausted", t);
      }
      const bool clamp = t + h >= target;
      const double step = clamp ? target - t : h;
      if (step < 1e-14 * std::max(1.0, std::abs(t))) {
        throw IntegrationError("evolve: step size underflow", t);
      }

      stage = y + step * (a21 * k1);
      k2 = generator.apply(stage);
      stage = y + step * (a31 * k1 + a32 * k2);
      k3 = generator.apply(stage);
      stage = y + step * (a41 * k1 + a42 * k2 + a43 * k3);
      k4 = generator.apply(stage);
      stage = y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
      k5 = generator.apply(stage);
      stage = y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
      k6 = generator.apply(stage);
      y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
      k7 = generator.apply(y_new);
      err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

      double acc = 0.0;
      for (Index j = 0; j < d; ++j) {
        for (Index i = 0; i < d; ++i) {
          const double scale =
              opts.atol + opts.rtol * std::max(std::abs(y(i, j)), std::abs(y_new(i, j)));
          const double r = std::abs(err(i, j)) / scale;
          acc += r * r;
        }
      }
      const double norm = std::sqrt(acc / static_cast<double>(d * d));

      double factor = norm > 0.0 ? 0.9 * std::pow(norm, -0.2) : 5.0;
      factor = std::clamp(factor, 0.2, 5.0);
      if (norm <= 1.0) {
        t = clamp ? target : t + step;
        // ℒ maps A† to (ℒA)†, so the Hermitian parts of y and k7 stay paired.
        y = 0.5 * (y_new + y_new.adjoint());
        k1 = 0.5 * (k7 + k7.adjoint());
        ++traj.accepted_steps;
        if (rejected_last) factor = std::min(factor, 1.0);
        rejected_last = false;
        if (!clamp || step >= h) h = step * factor;
      } else {
        ++traj.rejected_steps;
        rejected_last = true;
        h = step * factor;
      }
    }
    record(traj, observables, y, generator.space(), t, opts.store_states);
  }
  return traj;
}

}  // namespace cavelim
