#include "cavelim/eliminate.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "cavelim/error.hpp"

namespace cavelim {

std::string_view to_string(AlphaMethod m) {
  switch (m) {
    case AlphaMethod::Generic:
      return "generic";
    case AlphaMethod::OptomechClosed:
      return "optomech_closed";
    case AlphaMethod::OptomechWeak:
      return "optomech_weak";
    case AlphaMethod::RabiAnalytic:
      return "rabi_analytic";
  }
  return "unknown";
}

Operator elimination_lhs(const SystemSpec& spec, const Operator& alpha) {
  require_same_space(spec.hamiltonian(), alpha, "elimination_lhs");
  const Matrix& h = spec.hamiltonian().matrix();
  const Matrix& a = alpha.matrix();
  Matrix lhs = h * a - a * h + spec.mode_frequency().matrix() * a + spec.drive().matrix() -
               kI * spec.kappa() * a;
  return Operator(std::move(lhs), alpha.space());
}

double elimination_residual(const SystemSpec& spec, const Operator& alpha) {
  return spectral_norm(elimination_lhs(spec, alpha));
}

namespace {

Matrix solve_vectorized(const SystemSpec& spec, double max_condition) {
  const Index d = spec.dim();
  const Matrix& h = spec.hamiltonian().matrix();
  const Matrix a = h + spec.mode_frequency().matrix() - kI * spec.kappa() * Matrix::Identity(d, d);

  // Column-stacked: vec(AX) = (I⊗A)vec X, vec(XB) = (Bᵀ⊗I)vec X.
  Matrix sys = Matrix::Zero(d * d, d * d);
  for (Index j = 0; j < d; ++j) sys.block(j * d, j * d, d, d) = a;
  for (Index j = 0; j < d; ++j) {
    for (Index k = 0; k < d; ++k) {
      const cplx hkj = h(k, j);  // (Hᵀ)(j,k)
      if (hkj == cplx{0.0}) continue;
      for (Index i = 0; i < d; ++i) sys(j * d + i, k * d + i) -= hkj;
    }
  }
  const Vector rhs = -Eigen::Map<const Vector>(spec.drive().matrix().data(), d * d);

  Eigen::PartialPivLU<Matrix> lu(sys);
  const double rcond = lu.rcond();
  if (!(rcond > 0.0) || 1.0 / rcond > max_condition) {
    std::ostringstream msg;
    msg << "solve_alpha_steady: elimination system is singular or ill-conditioned (rcond = "
        << rcond << ")";
    throw SolverError(msg.str());
  }
  Vector x = lu.solve(rhs);
  return Eigen::Map<Matrix>(x.data(), d, d);
}

// Bartels–Stewart for A X − X B = C with B Hermitian.
Matrix solve_schur(const SystemSpec& spec, double max_condition) {
  const Index d = spec.dim();
  const Matrix& h = spec.hamiltonian().matrix();
  const Matrix a = h + spec.mode_frequency().matrix() - kI * spec.kappa() * Matrix::Identity(d, d);
  const Matrix c = -spec.drive().matrix();

  Eigen::ComplexSchur<Matrix> schur(a);
  if (schur.info() != Eigen::Success) throw SolverError("solve_alpha_steady: Schur step failed");
  const Matrix& t = schur.matrixT();
  const Matrix& q = schur.matrixU();

  Eigen::SelfAdjointEigenSolver<Matrix> eig(h);
  const Eigen::VectorXd& e = eig.eigenvalues();
  const Matrix& u = eig.eigenvectors();

  double sep = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < d; ++i) {
    for (Index j = 0; j < d; ++j) sep = std::min(sep, std::abs(t(i, i) - e(j)));
  }
  const double scale = t.cwiseAbs().maxCoeff() + e.cwiseAbs().maxCoeff();
  if (!(sep > 0.0) || scale / sep > max_condition) {
    throw SolverError("solve_alpha_steady: spectra of the Sylvester operands overlap");
  }

  // Q T Qᴴ Y − Y diag(e) = C U with Y = X U, Z = Qᴴ Y.
  const Matrix rhs = q.adjoint() * c * u;
  Matrix z(d, d);
  for (Index j = 0; j < d; ++j) {
    Matrix shifted = t;
    shifted.diagonal().array() -= e(j);
    z.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs.col(j));
  }
  return q * z * u.adjoint();
}

}  // namespace

AlphaSolution solve_alpha_steady(const SystemSpec& spec, const AlphaSolveOptions& opts) {
  const Index d = spec.dim();
  bool vectorized = false;
  switch (opts.route) {
    case SylvesterRoute::Auto:
      vectorized = d * d <= opts.vectorized_cap;
      break;
    case SylvesterRoute::Vectorized:
      vectorized = true;
      break;
    case SylvesterRoute::Schur:
      vectorized = false;
      break;
  }
  Matrix a = vectorized ? solve_vectorized(spec, opts.max_condition)
                        : solve_schur(spec, opts.max_condition);
  Operator alpha(std::move(a), spec.space());
  const double res = elimination_residual(spec, alpha);
  return {std::move(alpha), res, AlphaMethod::Generic};
}

AlphaSolution alpha_optomech_closed(const OptomechParams& p) {
  const SystemSpec spec = make_optomech(p);
  const Index m_dim = p.mirror_cutoff;
  const auto b = bosonic_ops(m_dim, kMirrorSpace);
  const Matrix base = -p.omega0 * b.n.matrix() - p.g * (b.a.matrix() + b.adag.matrix());

  Matrix alpha(m_dim, m_dim);
  for (Index m = 0; m < m_dim; ++m) {
    Matrix resolvent = base;
    resolvent.diagonal().array() += cplx{p.delta + static_cast<double>(m) * p.omega0, p.kappa};
    Eigen::PartialPivLU<Matrix> lu(resolvent);
    if (!(lu.rcond() > 1e-14)) {
      throw SolverError("alpha_optomech_closed: resolvent for Fock column " + std::to_string(m) +
                        " is singular");
    }
    alpha.col(m) = p.eta * lu.solve(Vector::Unit(m_dim, m));
  }
  Operator op(std::move(alpha), kMirrorSpace);
  const double res = elimination_residual(spec, op);
  return {std::move(op), res, AlphaMethod::OptomechClosed};
}

AlphaSolution alpha_optomech_weak(const OptomechParams& p) {
  if (p.mirror_cutoff < 2) throw SpecError("alpha_optomech_weak: cutoff must be at least 2");
  const auto b = bosonic_ops(p.mirror_cutoff, kMirrorSpace);
  const cplx base{p.delta, p.kappa};
  const cplx lower = p.g / cplx{p.delta + p.omega0, p.kappa};
  const cplx raise = p.g / cplx{p.delta - p.omega0, p.kappa};
  Operator alpha = (p.eta / base) *
                   (Operator::identity(p.mirror_cutoff, kMirrorSpace) + lower * b.a + raise * b.adag);
  double res = std::numeric_limits<double>::quiet_NaN();
  if (p.mirror_cutoff >= 3) res = elimination_residual(make_optomech(p), alpha);
  return {std::move(alpha), res, AlphaMethod::OptomechWeak};
}

RabiAlpha rabi_alpha_coefficients(double omega0, double omega_c, double g, double kappa) {
  return {-g / cplx{omega_c + omega0, -kappa}, -g / cplx{omega_c - omega0, -kappa}};
}

AlphaSolution alpha_rabi(double omega0, double omega_c, double g, double kappa) {
  const RabiAlpha c = rabi_alpha_coefficients(omega0, omega_c, g, kappa);
  Operator alpha(c.plus * pauli(PauliAxis::Plus) + c.minus * pauli(PauliAxis::Minus),
                 spin_space(1));
  const SystemSpec spec = make_rabi({omega0, omega_c, g, kappa, 0.0});
  const double res = elimination_residual(spec, alpha);
  return {std::move(alpha), res, AlphaMethod::RabiAnalytic};
}

ValidityReport validity_report(const SystemSpec& spec, const Operator& alpha) {
  ValidityReport r;
  r.alpha_norm = spectral_norm(alpha);
  r.residual = elimination_residual(spec, alpha);
  if (r.alpha_norm == 0.0) {
    r.alpha_is_zero = true;
    r.commutator_ratio = 0.0;
    return r;
  }
  const Index d = spec.dim();
  const Matrix shifted =
      spec.mode_frequency().matrix() - kI * spec.kappa() * Matrix::Identity(d, d);
  const double comm = spectral_norm(commutator(spec.mode_frequency(), alpha));
  r.commutator_ratio = comm / (spectral_norm(shifted) * r.alpha_norm);
  return r;
}

double interior_max_difference(const Operator& a, const Operator& b, Index boundary) {
  require_same_space(a, b, "interior_max_difference");
  const Index n = a.dim() - boundary;
  if (n <= 0) return 0.0;
  return (a.matrix().topLeftCorner(n, n) - b.matrix().topLeftCorner(n, n)).cwiseAbs().maxCoeff();
}

}  // namespace cavelim
