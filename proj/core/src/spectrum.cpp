#include "cavelim/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include <Eigen/SparseLU>

#include "cavelim/error.hpp"

namespace cavelim {

std::vector<cplx> eigenvalues(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("eigenvalues: matrix is not square");
  const Index n = m.rows();
  Matrix work = m;
  std::vector<cplx> w(static_cast<std::size_t>(n));
  const lapack_int info =
      LAPACKE_zgeev(LAPACK_COL_MAJOR, 'N', 'N', static_cast<lapack_int>(n), work.data(),
                    static_cast<lapack_int>(n), w.data(), nullptr, 1, nullptr, 1);
  if (info != 0) throw SolverError("eigenvalues: zgeev failed with info " + std::to_string(info));
  return w;
}

void sort_spectrum(std::vector<cplx>& values) {
  std::sort(values.begin(), values.end(), [](cplx a, cplx b) {
    if (a.real() != b.real()) return a.real() > b.real();
    return a.imag() > b.imag();
  });
}

std::vector<cplx> spectrum(const SuperOp& generator, Index dense_cap) {
  std::vector<cplx> w = eigenvalues(generator.dense_matrix(dense_cap));
  sort_spectrum(w);
  return w;
}

std::vector<cplx> spectrum_near(const SuperOp& generator, cplx shift, Index k,
                                const SpectrumNearOptions& opts) {
  const Index n = generator.liouville_dim();
  if (k < 1 || k > n) throw SpecError("spectrum_near: k must lie in [1, d^2]");
  const Index p = std::min(n, k + opts.extra_vectors);

  const SparseMatrix l = generator.sparse_matrix();
  SparseMatrix shifted = l;
  {
    SparseMatrix id(n, n);
    id.setIdentity();
    shifted -= shift * id;
  }
  shifted.makeCompressed();
  Eigen::SparseLU<SparseMatrix> lu;
  lu.compute(shifted);
  if (lu.info() != Eigen::Success) {
    throw SolverError("spectrum_near: factorization failed, the shift may be an eigenvalue");
  }
  const double lnorm = std::max(1.0, generator.norm_estimate());

  std::mt19937_64 rng(opts.seed);
  std::normal_distribution<double> gauss;
  Matrix q(n, p);
  for (Index j = 0; j < p; ++j) {
    for (Index i = 0; i < n; ++i) q(i, j) = cplx{gauss(rng), gauss(rng)};
  }

  {
    Eigen::HouseholderQR<Matrix> qr(q);
    q = qr.householderQ() * Matrix::Identity(n, p);
  }
  std::vector<cplx> ritz(static_cast<std::size_t>(k));
  for (int it = 0; it < opts.max_iterations; ++it) {
    const Matrix z = lu.solve(q);
    if (lu.info() != Eigen::Success || !z.allFinite()) {
      throw SolverError("spectrum_near: shifted solve failed");
    }
    // Ritz pairs of (ℒ − σ)⁻¹ on span(q); the largest |μ| lie nearest the shift.
    Eigen::ComplexEigenSolver<Matrix> es(q.adjoint() * z);
    if (es.info() != Eigen::Success) throw SolverError("spectrum_near: Ritz step failed");
    const auto& mu = es.eigenvalues();
    std::vector<Index> order(static_cast<std::size_t>(p));
    for (Index i = 0; i < p; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return std::abs(mu(a)) > std::abs(mu(b)); });

    bool converged = true;
    for (Index i = 0; i < k; ++i) {
      const Index c = order[static_cast<std::size_t>(i)];
      const Vector x = (q * es.eigenvectors().col(c)).normalized();
      const Vector lx = l * x;
      const cplx value = x.dot(lx);
      if ((lx - value * x).norm() > opts.tol * lnorm) converged = false;
      ritz[static_cast<std::size_t>(i)] = value;
    }
    if (converged) {
      std::stable_sort(ritz.begin(), ritz.end(),
                       [&](cplx a, cplx b) { return std::abs(a - shift) < std::abs(b - shift); });
      return ritz;
    }

    Eigen::HouseholderQR<Matrix> qr(z);
    q = qr.householderQ() * Matrix::Identity(n, p);
  }
  throw SolverError("spectrum_near: block inverse iteration did not converge in " +
                    std::to_string(opts.max_iterations) + " iterations");
}

std::vector<double> nearest_distances(const std::vector<cplx>& probe,
                                      const std::vector<cplx>& reference) {
  std::vector<double> out;
  out.reserve(probe.size());
  for (const cplx& z : probe) {
    double best = std::numeric_limits<double>::infinity();
    for (const cplx& r : reference) best = std::min(best, std::abs(z - r));
    out.push_back(best);
  }
  return out;
}

}  // namespace cavelim
