#pragma once

#include <string>
#include <vector>

#include "cavelim/operator.hpp"

namespace cavelim {

/// Largest Liouville-space dimension d² for which a dense matrix is formed.
inline constexpr Index kDenseLiouvilleCap = 4096;

/// rate · 𝒟[jump], with 𝒟[O]ρ = 2OρO† − O†Oρ − ρO†O.
struct LindbladTerm {
  double rate;
  SparseMatrix jump;
};

/**
 * Lindblad generator ℒρ = −i[H, ρ] + Σ_k γ_k 𝒟[L_k]ρ.
 *
 * The generator is stored in operator form and applied matrix-free; the
 * d²×d² matrix is materialized on request, sparse at any size and dense
 * up to a cap. Vectorization is column stacking, vec(AXB) = (Bᵀ⊗A) vec X.
 */
class SuperOp {
 public:
  SuperOp(SparseMatrix hamiltonian, std::vector<LindbladTerm> terms, std::string space,
          std::string label = {});

  Index dim() const noexcept { return h_.rows(); }
  Index liouville_dim() const noexcept { return h_.rows() * h_.rows(); }
  const std::string& space() const noexcept { return space_; }
  const std::string& label() const noexcept { return label_; }
  const SparseMatrix& hamiltonian() const noexcept { return h_; }
  const std::vector<LindbladTerm>& terms() const noexcept { return terms_; }

  Matrix apply(const Matrix& rho) const;
  Operator apply(const Operator& rho) const;

  SparseMatrix sparse_matrix() const;
  /// Throws BudgetError when d² exceeds `cap`.
  Matrix dense_matrix(Index cap = kDenseLiouvilleCap) const;

  /// Induced 1-norm of the superoperator matrix.
  double norm_estimate() const;

 private:
  SparseMatrix h_;
  SparseMatrix k_;     // H − iΣγ L†L
  SparseMatrix kadj_;  // K†
  std::vector<LindbladTerm> terms_;
  std::vector<SparseMatrix> jump_adj_;
  std::string space_;
  std::string label_;
};

Operator apply_liouvillian(const SuperOp& generator, const Operator& rho);

SparseMatrix to_sparse(const Matrix& m, double drop_tol = 0.0);

/// Sparse Kronecker product, `a` is the left factor.
SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b);

Vector vec(const Matrix& m);
Matrix unvec(const Vector& v, Index dim);

}  // namespace cavelim
