#include "cavelim/steady_state.hpp"

#include <cmath>
#include <sstream>

#include <Eigen/SparseLU>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "cavelim/error.hpp"

namespace cavelim {

double steady_residual(const SuperOp& generator, const Operator& rho) {
  const double lnorm = generator.norm_estimate();
  const double rnorm = rho.matrix().norm();
  if (lnorm == 0.0 || rnorm == 0.0) return 0.0;
  return generator.apply(rho).matrix().norm() / (lnorm * rnorm);
}

namespace {

Index diagonal_index(Index i, Index d) { return i * d + i; }

Matrix bordered_dense(const Matrix& l, Index row, Index d) {
  Matrix out = l;
  out.row(row).setZero();
  for (Index i = 0; i < d; ++i) out(row, diagonal_index(i, d)) = 1.0;
  return out;
}

SparseMatrix bordered_sparse(const SparseMatrix& l, Index row, Index d) {
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(l.nonZeros() + d));
  for (Index k = 0; k < l.outerSize(); ++k) {
    for (SparseMatrix::InnerIterator it(l, k); it; ++it) {
      if (it.row() != row) trip.emplace_back(it.row(), it.col(), it.value());
    }
  }
  for (Index i = 0; i < d; ++i) trip.emplace_back(row, diagonal_index(i, d), 1.0);
  SparseMatrix out(l.rows(), l.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  out.makeCompressed();
  return out;
}

[[noreturn]] void degenerate(const std::string& detail) {
  throw DegenerateSteadyStateError("steady_state: the generator has more than one steady state (" +
                                   detail + ")");
}

Operator finish(const SuperOp& generator, Matrix rho, const SteadyStateOptions& opts) {
  if (!rho.allFinite()) throw SolverError("steady_state: solution is not finite");
  rho = 0.5 * (rho + rho.adjoint()).eval();
  const cplx tr = rho.trace();
  if (std::abs(tr) == 0.0) throw SolverError("steady_state: solution has zero trace");
  rho /= tr;
  Operator out(std::move(rho), generator.space());

  Eigen::SelfAdjointEigenSolver<Matrix> es(out.matrix(), Eigen::EigenvaluesOnly);
  const double min_eig = es.eigenvalues().minCoeff();
  if (min_eig < -opts.psd_tol) {
    std::ostringstream msg;
    msg << "steady_state: solution is not positive semidefinite (min eigenvalue " << min_eig
        << ")";
    throw SolverError(msg.str());
  }
  const double res = steady_residual(generator, out);
  if (res > opts.residual_tol) {
    std::ostringstream msg;
    msg << "steady_state: null-vector residual " << res << " exceeds " << opts.residual_tol;
    throw SolverError(msg.str());
  }
  return out;
}

// LU with a 1-norm condition estimate; returns rcond and overwrites rhs.
double lapack_solve(Matrix a, Vector& rhs) {
  const auto n = static_cast<lapack_int>(a.rows());
  const double anorm = a.cwiseAbs().colwise().sum().maxCoeff();
  std::vector<lapack_int> piv(static_cast<std::size_t>(n));
  lapack_int info = LAPACKE_zgetrf(LAPACK_COL_MAJOR, n, n, a.data(), n, piv.data());
  if (info > 0) return 0.0;
  if (info < 0) throw SolverError("steady_state: zgetrf failed");
  double rcond = 0.0;
  info = LAPACKE_zgecon(LAPACK_COL_MAJOR, '1', n, a.data(), n, anorm, &rcond);
  if (info != 0) throw SolverError("steady_state: zgecon failed");
  info = LAPACKE_zgetrs(LAPACK_COL_MAJOR, 'N', n, 1, a.data(), n, piv.data(), rhs.data(), n);
  if (info != 0) throw SolverError("steady_state: zgetrs failed");
  return rcond;
}

Matrix solve_dense(const SuperOp& generator, const SteadyStateOptions& opts) {
  const Index d = generator.dim();
  const Index n = d * d;
  const Matrix l = generator.dense_matrix(std::max(opts.dense_cap, kDenseLiouvilleCap));
  const Index rows[2] = {diagonal_index(0, d), diagonal_index(d - 1, d)};
  Matrix sol[2];
  for (int r = 0; r < 2; ++r) {
    Vector x = Vector::Unit(n, rows[r]);
    const double rcond = lapack_solve(bordered_dense(l, rows[r], d), x);
    if (!(rcond > opts.min_rcond)) {
      std::ostringstream msg;
      msg << "bordered system rcond " << rcond;
      degenerate(msg.str());
    }
    sol[r] = unvec(x, d);
    if (d == 1 || rcond >= opts.confirm_rcond) return sol[0];
  }
  const double diff = (sol[0] - sol[1]).cwiseAbs().maxCoeff();
  if (!(diff <= opts.uniqueness_tol)) {
    std::ostringstream msg;
    msg << "bordered solutions differ by " << diff;
    degenerate(msg.str());
  }
  return sol[0];
}

Matrix solve_sparse(const SuperOp& generator, const SteadyStateOptions& opts) {
  const Index d = generator.dim();
  const Index n = d * d;
  const SparseMatrix l = generator.sparse_matrix();
  const Index rows[2] = {diagonal_index(0, d), diagonal_index(d - 1, d)};
  Matrix sol[2];
  for (int r = 0; r < 2; ++r) {
    Eigen::SparseLU<SparseMatrix> lu;
    lu.compute(bordered_sparse(l, rows[r], d));
    if (lu.info() != Eigen::Success) degenerate("bordered system is singular");
    Vector rhs = Vector::Zero(n);
    rhs(rows[r]) = 1.0;
    const Vector x = lu.solve(rhs);
    if (lu.info() != Eigen::Success || !x.allFinite()) degenerate("bordered solve failed");
    sol[r] = unvec(x, d);
    if (d == 1) return sol[0];
  }
  const double diff = (sol[0] - sol[1]).cwiseAbs().maxCoeff();
  if (!(diff <= opts.uniqueness_tol)) {
    std::ostringstream msg;
    msg << "bordered solutions differ by " << diff;
    degenerate(msg.str());
  }
  return sol[0];
}

}  // namespace

Operator steady_state(const SuperOp& generator, const SteadyStateOptions& opts) {
  const Index n = generator.liouville_dim();
  switch (opts.route) {
    case SteadyRoute::Dense:
      return finish(generator, solve_dense(generator, opts), opts);
    case SteadyRoute::Sparse:
      return finish(generator, solve_sparse(generator, opts), opts);
    case SteadyRoute::Evolution: {
      const Index d = generator.dim();
      const Operator mixed(Matrix::Identity(d, d) / static_cast<double>(d), generator.space());
      return steady_state_by_evolution(generator, mixed, opts);
    }
    case SteadyRoute::Auto:
      break;
  }
  bool dense = n <= opts.dense_cap;
  if (!dense && n <= kDenseLiouvilleCap) {
    const SparseMatrix l = generator.sparse_matrix();
    dense = static_cast<double>(l.nonZeros()) > opts.dense_fill * static_cast<double>(n) * static_cast<double>(n);
  }
  Matrix rho = dense ? solve_dense(generator, opts) : solve_sparse(generator, opts);
  return finish(generator, std::move(rho), opts);
}

Operator steady_state_by_evolution(const SuperOp& generator, const Operator& rho0,
                                   const SteadyStateOptions& opts) {
  EvolveOptions eopts;
  eopts.rtol = 1e-11;
  eopts.atol = 1e-13;
  eopts.store_states = true;
  Operator rho = rho0;
  double t = 0.0;
  while (t < opts.evolution_horizon) {
    const Trajectory traj = evolve(generator, rho, {t, t + opts.evolution_chunk}, {}, eopts);
    Matrix m = 0.5 * (traj.states.back().matrix() + traj.states.back().matrix().adjoint());
    m /= m.trace();
    rho = Operator(std::move(m), generator.space());
    t += opts.evolution_chunk;
    const double change = generator.apply(rho).matrix().norm();
    if (change <= opts.residual_tol * rho.matrix().norm()) return rho;
  }
  throw SolverError("steady_state_by_evolution: no convergence within the time horizon");
}

}  // namespace cavelim
