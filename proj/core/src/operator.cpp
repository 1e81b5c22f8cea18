#include "cavelim/operator.hpp"

#include <cmath>
#include <sstream>

#include "cavelim/error.hpp"

namespace cavelim {

Operator::Operator(Matrix entries, std::string space)
    : m_(std::move(entries)), space_(std::move(space)) {
  if (m_.rows() != m_.cols()) {
    std::ostringstream msg;
    msg << "operator on '" << space_ << "' is not square (" << m_.rows() << "x" << m_.cols()
        << ")";
    throw DimensionError(msg.str());
  }
  if (m_.rows() == 0) throw DimensionError("operator on '" + space_ + "' has dimension 0");
}

Operator Operator::identity(Index dim, std::string space) {
  return Operator(Matrix::Identity(dim, dim), std::move(space));
}

Operator Operator::zero(Index dim, std::string space) {
  return Operator(Matrix::Zero(dim, dim), std::move(space));
}

void require_same_space(const Operator& a, const Operator& b, std::string_view context) {
  if (a.dim() != b.dim() || a.space() != b.space()) {
    std::ostringstream msg;
    msg << context << ": operand mismatch (" << a.dim() << " on '" << a.space() << "' vs "
        << b.dim() << " on '" << b.space() << "')";
    throw DimensionError(msg.str());
  }
}

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_space(*this, rhs, "operator+");
  m_ += rhs.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_space(*this, rhs, "operator-");
  m_ -= rhs.m_;
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_space(lhs, rhs, "operator*");
  return Operator(lhs.m_ * rhs.m_, lhs.space_);
}

Operator kron(const Operator& a, const Operator& b) {
  const Index na = a.dim();
  const Index nb = b.dim();
  Matrix out(na * nb, na * nb);
  for (Index j = 0; j < na; ++j) {
    for (Index i = 0; i < na; ++i) {
      out.block(i * nb, j * nb, nb, nb) = a(i, j) * b.matrix();
    }
  }
  return Operator(std::move(out), a.space() + "⊗" + b.space());
}

Operator dagger(const Operator& a) { return Operator(a.matrix().adjoint(), a.space()); }

Operator commutator(const Operator& a, const Operator& b) {
  require_same_space(a, b, "commutator");
  return Operator(a.matrix() * b.matrix() - b.matrix() * a.matrix(), a.space());
}

cplx trace(const Operator& a) { return a.matrix().trace(); }

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() <= 16) {
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double spectral_norm(const Operator& a) { return spectral_norm(a.matrix()); }

double hermiticity_defect(const Operator& a) {
  return (a.matrix() - a.matrix().adjoint()).cwiseAbs().maxCoeff();
}

bool is_hermitian(const Operator& a, double rel_tol) {
  const double scale = std::max(1.0, a.matrix().cwiseAbs().maxCoeff());
  return hermiticity_defect(a) <= rel_tol * scale;
}

BosonicOps bosonic_ops(Index cutoff, std::string space) {
  if (cutoff < 2) {
    throw SpecError("bosonic cutoff must be at least 2, got " + std::to_string(cutoff));
  }
  Matrix a = Matrix::Zero(cutoff, cutoff);
  for (Index m = 1; m < cutoff; ++m) a(m - 1, m) = std::sqrt(static_cast<double>(m));
  Operator ann(std::move(a), space);
  Operator cre = dagger(ann);
  Operator num = cre * ann;
  return {std::move(ann), std::move(cre), std::move(num)};
}

Matrix pauli(PauliAxis q) {
  Matrix s = Matrix::Zero(2, 2);
  switch (q) {
    case PauliAxis::X:
      s(0, 1) = 1.0;
      s(1, 0) = 1.0;
      break;
    case PauliAxis::Y:
      s(0, 1) = -kI;
      s(1, 0) = kI;
      break;
    case PauliAxis::Z:
      s(0, 0) = 1.0;
      s(1, 1) = -1.0;
      break;
    case PauliAxis::Plus:
      s(0, 1) = 1.0;
      break;
    case PauliAxis::Minus:
      s(1, 0) = 1.0;
      break;
  }
  return s;
}

std::string spin_space(int n_sites) { return "spin^" + std::to_string(n_sites); }

Operator spin_site(PauliAxis q, int site, int n_sites) {
  if (n_sites < 1 || site < 1 || site > n_sites) {
    throw DimensionError("spin_site: site " + std::to_string(site) + " out of range 1.." +
                         std::to_string(n_sites));
  }
  // I_{2^(site-1)} ⊗ σ ⊗ I_{2^(N-site)}
  const Index left = Index{1} << (site - 1);
  const Index right = Index{1} << (n_sites - site);
  const Matrix s = pauli(q);
  const Index dim = left * 2 * right;
  Matrix out = Matrix::Zero(dim, dim);
  for (Index l = 0; l < left; ++l) {
    for (Index a = 0; a < 2; ++a) {
      for (Index b = 0; b < 2; ++b) {
        if (s(a, b) == cplx{0.0}) continue;
        for (Index r = 0; r < right; ++r) {
          out((l * 2 + a) * right + r, (l * 2 + b) * right + r) = s(a, b);
        }
      }
    }
  }
  return Operator(std::move(out), spin_space(n_sites));
}

Operator dissipator_apply(const Operator& jump, const Operator& rho) {
  require_same_space(jump, rho, "dissipator_apply");
  const Matrix& o = jump.matrix();
  const Matrix& r = rho.matrix();
  const Matrix odo = o.adjoint() * o;
  return Operator(2.0 * o * r * o.adjoint() - odo * r - r * odo, rho.space());
}

}  // namespace cavelim
