#pragma once

#include <complex>
#include <string>
#include <string_view>

#include <Eigen/Dense>
#include <Eigen/Sparse>

namespace cavelim {

using cplx = std::complex<double>;
using Index = Eigen::Index;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using SparseMatrix = Eigen::SparseMatrix<cplx>;

inline constexpr cplx kI{0.0, 1.0};

/**
 * Dense square operator on a finite-dimensional Hilbert space.
 *
 * The space tag names the tensor-factor structure ("spin^3", "mode",
 * "mirror⊗mode", ...). Algebraic operations require equal dimension *and*
 * equal tag, so accidentally multiplying a system operator with a composite
 * one is reported instead of silently producing garbage. Composite objects
 * are always ordered system ⊗ mode.
 */
class Operator {
 public:
  Operator() = default;
  Operator(Matrix entries, std::string space);

  static Operator identity(Index dim, std::string space);
  static Operator zero(Index dim, std::string space);

  Index dim() const noexcept { return m_.rows(); }
  const std::string& space() const noexcept { return space_; }
  const Matrix& matrix() const noexcept { return m_; }
  cplx operator()(Index row, Index col) const { return m_(row, col); }

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(cplx s);

  friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
  friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
  friend Operator operator*(const Operator& lhs, const Operator& rhs);
  friend Operator operator*(cplx s, Operator op) { return op *= s; }
  friend Operator operator*(Operator op, cplx s) { return op *= s; }
  friend Operator operator-(const Operator& op) { return cplx{-1.0} * op; }

 private:
  Matrix m_;
  std::string space_;
};

/// Throws DimensionError unless both operands live on the same space.
void require_same_space(const Operator& a, const Operator& b, std::string_view context);

/// Kronecker product with `a` as the left (outer) factor.
Operator kron(const Operator& a, const Operator& b);
Operator dagger(const Operator& a);
Operator commutator(const Operator& a, const Operator& b);

cplx trace(const Operator& a);

/// Largest singular value. This is the operator norm used everywhere.
double spectral_norm(const Matrix& a);
double spectral_norm(const Operator& a);

/// max |A - A†| entrywise.
double hermiticity_defect(const Operator& a);
/// Hermitian within rel_tol * max(1, ‖A‖_max).
bool is_hermitian(const Operator& a, double rel_tol = 1e-12);

struct BosonicOps {
  Operator a;
  Operator adag;
  Operator n;
};

/// Truncated Fock-space ladder: a|m⟩ = √m |m−1⟩ on m = 0 … cutoff−1.
BosonicOps bosonic_ops(Index cutoff, std::string space = "mode");

enum class PauliAxis { X, Y, Z, Plus, Minus };

/// Single-site Pauli matrix in the basis {|↑⟩, |↓⟩}, σ^z = diag(1, −1).
Matrix pauli(PauliAxis q);

/// σ^q acting on `site` (1-based) of an `n_sites` chain; space "spin^N".
Operator spin_site(PauliAxis q, int site, int n_sites);

std::string spin_space(int n_sites);

/// 𝒟[O]ρ = 2OρO† − O†Oρ − ρO†O.
Operator dissipator_apply(const Operator& jump, const Operator& rho);

}  // namespace cavelim
