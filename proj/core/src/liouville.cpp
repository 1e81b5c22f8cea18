#include "cavelim/liouville.hpp"

#include <sstream>

#include "cavelim/eliminate.hpp"
#include "cavelim/error.hpp"

namespace cavelim {

std::string composite_space(const SystemSpec& spec) { return spec.space() + "⊗" + kModeSpace; }

namespace {

SparseMatrix sparse_identity(Index n) {
  SparseMatrix id(n, n);
  id.setIdentity();
  return id;
}

void check_alpha(const SystemSpec& spec, const Operator& alpha, const EffectiveOptions& opts) {
  require_same_space(spec.hamiltonian(), alpha, "effective builder");
  const double res = elimination_residual(spec, alpha);
  const double bound = opts.residual_tol * spectral_norm(spec.drive());
  if (res > bound) {
    std::ostringstream msg;
    msg << "effective builder: alpha does not solve the elimination condition (residual " << res
        << " > " << bound << ")";
    throw SpecError(msg.str());
  }
}

Operator hermitized(const Operator& h) {
  return Operator(0.5 * (h.matrix() + h.matrix().adjoint()), h.space());
}

SuperOp make_effective_superop(const SystemSpec& spec, const EffectiveModel& m,
                               const char* label) {
  std::vector<LindbladTerm> terms;
  terms.push_back({m.rate_down, to_sparse(m.jump_down.matrix())});
  terms.push_back({m.rate_up, to_sparse(m.jump_up.matrix())});
  return SuperOp(to_sparse(m.h_eff.matrix()), std::move(terms), spec.space(), label);
}

}  // namespace

SuperOp build_full_liouvillian(const SystemSpec& spec, Index cutoff) {
  if (cutoff < 2) throw SpecError("build_full_liouvillian: mode cutoff must be at least 2");
  const auto b = bosonic_ops(cutoff, kModeSpace);
  const SparseMatrix a = to_sparse(b.a.matrix());
  const SparseMatrix adag = to_sparse(b.adag.matrix());
  const SparseMatrix n = to_sparse(b.n.matrix());
  const SparseMatrix hs = to_sparse(spec.hamiltonian().matrix());
  const SparseMatrix om = to_sparse(spec.mode_frequency().matrix());
  const SparseMatrix s = to_sparse(spec.drive().matrix());
  const SparseMatrix sdag = s.adjoint();
  const SparseMatrix id_sys = sparse_identity(spec.dim());
  const SparseMatrix id_mode = sparse_identity(cutoff);

  SparseMatrix h = sparse_kron(hs, id_mode);
  h += sparse_kron(om, n);
  h += sparse_kron(s, adag);
  h += sparse_kron(sdag, a);

  std::vector<LindbladTerm> terms;
  terms.push_back({spec.kappa() * (spec.nbar() + 1.0), sparse_kron(id_sys, a)});
  terms.push_back({spec.kappa() * spec.nbar(), sparse_kron(id_sys, adag)});
  return SuperOp(std::move(h), std::move(terms), composite_space(spec), "full");
}

Operator embed_system(const Operator& op, Index cutoff) {
  return kron(op, Operator::identity(cutoff, kModeSpace));
}

Operator embed_mode(const SystemSpec& spec, const Operator& op) {
  if (op.space() != kModeSpace) {
    throw DimensionError("embed_mode: operator lives on '" + op.space() + "', expected '" +
                         kModeSpace + "'");
  }
  return kron(Operator::identity(spec.dim(), spec.space()), op);
}

Operator trace_out_mode(const Operator& rho, const SystemSpec& spec) {
  const Index d = spec.dim();
  if (rho.space() != composite_space(spec) || rho.dim() % d != 0) {
    throw DimensionError("trace_out_mode: operator is not on " + composite_space(spec));
  }
  const Index l = rho.dim() / d;
  Matrix out(d, d);
  for (Index j = 0; j < d; ++j) {
    for (Index i = 0; i < d; ++i) out(i, j) = rho.matrix().block(i * l, j * l, l, l).trace();
  }
  return Operator(std::move(out), spec.space());
}

Operator effective_hamiltonian(const SystemSpec& spec, const Operator& alpha,
                               const EffectiveOptions& opts) {
  check_alpha(spec, alpha, opts);
  const Operator& s = spec.drive();
  const Operator adag = dagger(alpha);
  const Operator sdag = dagger(s);
  Operator h = spec.hamiltonian() + cplx{0.5} * (adag * s + sdag * alpha);
  if (spec.nbar() != 0.0) {
    h += cplx{0.5 * spec.nbar()} * (commutator(adag, s) + commutator(sdag, alpha));
    h += cplx{spec.nbar()} * spec.mode_frequency();
  }
  return hermitized(h);
}

std::pair<SuperOp, EffectiveModel> build_effective_liouvillian(const SystemSpec& spec,
                                                               const Operator& alpha,
                                                               const EffectiveOptions& opts) {
  EffectiveModel m{alpha,
                   effective_hamiltonian(spec, alpha, opts),
                   alpha,
                   spec.kappa() * (spec.nbar() + 1.0),
                   dagger(alpha),
                   spec.kappa() * spec.nbar()};
  SuperOp gen = make_effective_superop(spec, m, "effective");
  return {std::move(gen), std::move(m)};
}

std::pair<SuperOp, EffectiveModel> build_effective_liouvillian_zero_temperature(
    const SystemSpec& spec, const Operator& alpha, const EffectiveOptions& opts) {
  check_alpha(spec, alpha, opts);
  const Operator& s = spec.drive();
  Operator h = spec.hamiltonian() + cplx{0.5} * (dagger(alpha) * s + dagger(s) * alpha);
  EffectiveModel m{alpha, hermitized(h), alpha, spec.kappa(), dagger(alpha), 0.0};
  SuperOp gen = make_effective_superop(spec, m, "effective");
  return {std::move(gen), std::move(m)};
}

}  // namespace cavelim
