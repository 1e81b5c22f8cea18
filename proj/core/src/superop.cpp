#include "cavelim/superop.hpp"

#include <cmath>
#include <sstream>

#include "cavelim/error.hpp"

namespace cavelim {

SparseMatrix to_sparse(const Matrix& m, double drop_tol) {
  std::vector<Eigen::Triplet<cplx>> trip;
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (std::abs(m(i, j)) > drop_tol) trip.emplace_back(i, j, m(i, j));
    }
  }
  SparseMatrix s(m.rows(), m.cols());
  s.setFromTriplets(trip.begin(), trip.end());
  return s;
}

SparseMatrix sparse_kron(const SparseMatrix& a, const SparseMatrix& b) {
  std::vector<Eigen::Triplet<cplx>> trip;
  trip.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (Index ka = 0; ka < a.outerSize(); ++ka) {
    for (SparseMatrix::InnerIterator ia(a, ka); ia; ++ia) {
      for (Index kb = 0; kb < b.outerSize(); ++kb) {
        for (SparseMatrix::InnerIterator ib(b, kb); ib; ++ib) {
          trip.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                            ia.value() * ib.value());
        }
      }
    }
  }
  SparseMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trip.begin(), trip.end());
  return out;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Index dim) {
  if (v.size() != dim * dim) throw DimensionError("unvec: length is not dim^2");
  return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

SuperOp::SuperOp(SparseMatrix hamiltonian, std::vector<LindbladTerm> terms, std::string space,
                 std::string label)
    : h_(std::move(hamiltonian)), space_(std::move(space)), label_(std::move(label)) {
  if (h_.rows() != h_.cols() || h_.rows() == 0) {
    throw DimensionError("SuperOp: Hamiltonian must be square and non-empty");
  }
  k_ = h_;
  for (auto& t : terms) {
    if (t.jump.rows() != h_.rows() || t.jump.cols() != h_.cols()) {
      throw DimensionError("SuperOp: jump operator dimension differs from the Hamiltonian");
    }
    if (!(t.rate >= 0.0) || !std::isfinite(t.rate)) {
      throw SpecError("SuperOp: Lindblad rates must be non-negative and finite");
    }
    if (t.rate == 0.0) continue;
    SparseMatrix adj = t.jump.adjoint();
    k_ -= (kI * t.rate) * SparseMatrix(adj * t.jump);
    jump_adj_.push_back(std::move(adj));
    terms_.push_back(std::move(t));
  }
  k_.makeCompressed();
  kadj_ = k_.adjoint();
}

Matrix SuperOp::apply(const Matrix& rho) const {
  if (rho.rows() != dim() || rho.cols() != dim()) {
    throw DimensionError("SuperOp::apply: density matrix has the wrong dimension");
  }
  Matrix out = -kI * (k_ * rho);
  out.noalias() += kI * (rho * kadj_);
  for (std::size_t k = 0; k < terms_.size(); ++k) {
    const Matrix lr = terms_[k].jump * rho;
    out.noalias() += (2.0 * terms_[k].rate) * (lr * jump_adj_[k]);
  }
  return out;
}

Operator SuperOp::apply(const Operator& rho) const {
  if (rho.space() != space_ || rho.dim() != dim()) {
    std::ostringstream msg;
    msg << "SuperOp::apply: generator acts on " << dim() << " on '" << space_ << "', got "
        << rho.dim() << " on '" << rho.space() << "'";
    throw DimensionError(msg.str());
  }
  return Operator(apply(rho.matrix()), space_);
}

SparseMatrix SuperOp::sparse_matrix() const {
  const Index d = dim();
  SparseMatrix id(d, d);
  id.setIdentity();
  // −i(I⊗K) + i(K̄⊗I) + 2Σγ(L̄⊗L)
  SparseMatrix out = (-kI) * sparse_kron(id, k_);
  out += kI * sparse_kron(SparseMatrix(k_.conjugate()), id);
  for (const auto& t : terms_) {
    out += (2.0 * t.rate) * sparse_kron(SparseMatrix(t.jump.conjugate()), t.jump);
  }
  out.prune(cplx{0.0});
  out.makeCompressed();
  return out;
}

Matrix SuperOp::dense_matrix(Index cap) const {
  if (liouville_dim() > cap) {
    throw BudgetError("SuperOp::dense_matrix: Liouville dimension " +
                      std::to_string(liouville_dim()) + " exceeds the dense cap " +
                      std::to_string(cap));
  }
  return Matrix(sparse_matrix());
}

double SuperOp::norm_estimate() const {
  const SparseMatrix s = sparse_matrix();
  double best = 0.0;
  for (Index k = 0; k < s.outerSize(); ++k) {
    double col = 0.0;
    for (SparseMatrix::InnerIterator it(s, k); it; ++it) col += std::abs(it.value());
    best = std::max(best, col);
  }
  return best;
}

Operator apply_liouvillian(const SuperOp& generator, const Operator& rho) {
  return generator.apply(rho);
}

}  // namespace cavelim
