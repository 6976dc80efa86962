#pragma once

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mhdidp/slicing.hpp"
#include "mhdidp/state.hpp"

namespace mhdidp {

/// N x (2+2n) cell averages, row i = (rho, m_1..m_n, E, B_1..B_n) of cell i.
template <typename Scalar>
using CellAverageMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using RowVector = Eigen::Matrix<Scalar, 1, Eigen::Dynamic>;

/// Vector dimension n encoded by a (2+2n)-column layout.
inline int vector_dim_of(Eigen::Index cols) {
  if (cols != 4 && cols != 6 && cols != 8)
    throw std::invalid_argument("cell-average matrix must have 2+2n columns, n in {1,2,3}");
  return static_cast<int>(cols - 2) / 2;
}

/// Column sums to preserve (uniform mesh: A = [1, ..., 1], b^T = A Ubar).
template <typename Scalar>
struct ConservationTarget {
  RowVector<Scalar> b;
};

/// Column sums in fixed row order, so results do not depend on Eigen's vectorization.
template <typename Derived>
RowVector<typename Derived::Scalar> column_sums(const Eigen::MatrixBase<Derived>& X) {
  using Scalar = typename Derived::Scalar;
  RowVector<Scalar> s = RowVector<Scalar>::Zero(X.cols());
  for (Eigen::Index c = 0; c < X.cols(); ++c) {
    Scalar acc = 0;
    for (Eigen::Index r = 0; r < X.rows(); ++r) acc += X(r, c);
    s(c) = acc;
  }
  return s;
}

template <typename Scalar>
ConservationTarget<Scalar> conservation_target(const CellAverageMatrix<Scalar>& Ubar) {
  return {column_sums(Ubar)};
}

template <typename Scalar>
MHDPoint<Scalar> row_point(const CellAverageMatrix<Scalar>& X, Eigen::Index i) {
  const int n = vector_dim_of(X.cols());
  MHDPoint<Scalar> p;
  p.u = X(i, 0);
  p.v = X.row(i).segment(1, n).transpose();
  p.w = X(i, 1 + n);
  p.z = X.row(i).segment(2 + n, n).transpose();
  return p;
}

template <typename Scalar>
void set_row(CellAverageMatrix<Scalar>& X, Eigen::Index i, const BasicConservedState<Scalar>& s) {
  const int n = s.dim();
  X(i, 0) = s.rho;
  X.row(i).segment(1, n) = s.m.transpose();
  X(i, 1 + n) = s.E;
  X.row(i).segment(2 + n, n) = s.B.transpose();
}

template <typename Scalar>
bool row_admissible(const CellAverageMatrix<Scalar>& X, Eigen::Index i, Scalar eps) {
  const int n = vector_dim_of(X.cols());
  const Scalar rho = X(i, 0);
  if (!(rho >= eps) || !(rho > 0)) return false;
  const Scalar ie = X(i, 1 + n) - X.row(i).segment(1, n).squaredNorm() / (2 * rho) -
                    X.row(i).segment(2 + n, n).squaredNorm() / 2;
  return ie >= eps;
}

/// Worst violation of G^eps over all rows (0 when every row is admissible).
template <typename Scalar>
Scalar feasibility_residual(const CellAverageMatrix<Scalar>& X, Scalar eps) {
  const int n = vector_dim_of(X.cols());
  Scalar worst = 0;
  for (Eigen::Index i = 0; i < X.rows(); ++i) {
    const Scalar rho = X(i, 0);
    if (!(rho > 0)) return std::numeric_limits<Scalar>::infinity();
    const Scalar ie = X(i, 1 + n) - X.row(i).segment(1, n).squaredNorm() / (2 * rho) -
                      X.row(i).segment(2 + n, n).squaredNorm() / 2;
    worst = std::max({worst, eps - rho, eps - ie});
  }
  return worst;
}

/// Prox of the conservation indicator: Euclidean projection onto {A X = b^T}.
template <typename Scalar>
CellAverageMatrix<Scalar> prox_conservation(const CellAverageMatrix<Scalar>& X,
                                            const ConservationTarget<Scalar>& target) {
  if (target.b.size() != X.cols())
    throw std::invalid_argument("prox_conservation: target width does not match X");
  const RowVector<Scalar> shift = (target.b - column_sums(X)) / static_cast<Scalar>(X.rows());
  CellAverageMatrix<Scalar> out = X;
  out.rowwise() += shift;
  return out;
}

/// Euler-slice call statistics accumulated over nontrivial row projections.
struct SliceCallStats {
  long long total_calls = 0;
  long long projections = 0;
  int min_calls = std::numeric_limits<int>::max();
  int max_calls = 0;
  bool all_converged = true;

  void record(int calls, bool converged) {
    total_calls += calls;
    ++projections;
    min_calls = std::min(min_calls, calls);
    max_calls = std::max(max_calls, calls);
    all_converged = all_converged && converged;
  }
  void merge(const SliceCallStats& o) {
    total_calls += o.total_calls;
    projections += o.projections;
    min_calls = std::min(min_calls, o.min_calls);
    max_calls = std::max(max_calls, o.max_calls);
    all_converged = all_converged && o.all_converged;
  }
};

/// Prox of the admissibility indicator: row-wise projection onto G^eps.
/// Admissible rows are copied unchanged.
template <typename Scalar>
CellAverageMatrix<Scalar> prox_admissible(const CellAverageMatrix<Scalar>& X, Scalar eps,
                                          SliceCallStats* stats = nullptr,
                                          const BrentConfig<Scalar>& brent = {}) {
  CellAverageMatrix<Scalar> out = X;
  const Eigen::Index N = X.rows();
  std::vector<int> calls(static_cast<size_t>(N), -1);
  std::vector<char> converged(static_cast<size_t>(N), 1);
  std::exception_ptr failure;

#pragma omp parallel for schedule(dynamic, 64)
  for (Eigen::Index i = 0; i < N; ++i) {
    if (row_admissible(X, i, eps)) continue;
    try {
      const auto res = project_admissible(row_point(X, i), eps, brent);
      set_row(out, i, res.state);
      calls[static_cast<size_t>(i)] = res.n_slice_calls;
      converged[static_cast<size_t>(i)] = res.converged;
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  if (stats) {
    for (Eigen::Index i = 0; i < N; ++i)
      if (calls[static_cast<size_t>(i)] >= 0)
        stats->record(calls[static_cast<size_t>(i)], converged[static_cast<size_t>(i)] != 0);
  }
  return out;
}

template <typename Scalar = double>
struct DYOptions {
  /// Stop when |x^{k+1} - x^{k+1/2}|_F <= tol * (1 + |Ubar|_F).
  Scalar tol = Scalar(1e-12);
  int max_iters = 500;
  /// Step size gamma; gradient of the quadratic term is 1-Lipschitz, so 1 = 1/L.
  Scalar step = Scalar(1);
  BrentConfig<Scalar> brent{};
};

template <typename Scalar = double>
struct DYReport {
  int n_iters = 0;
  Scalar conservation_residual = 0;
  Scalar feasibility_residual = 0;
  bool converged = false;
  std::vector<Scalar> increment_history;
  SliceCallStats slice_calls;
};

template <typename Scalar = double>
struct DYResult {
  CellAverageMatrix<Scalar> X;
  DYReport<Scalar> report;
};

/// Closest conservative, row-wise admissible matrix to Ubar in the Frobenius norm,
/// computed by Davis-Yin three-operator splitting:
///   x^{k+1/2} = P_adm(z^k)
///   x^{k+1}   = P_cons(2 x^{k+1/2} - z^k - gamma (x^{k+1/2} - Ubar))
///   z^{k+1}   = z^k + x^{k+1} - x^{k+1/2}
/// Returns the admissible iterate x^{k+1/2} of the last sweep.
template <typename Scalar>
DYResult<Scalar> limit_cell_averages(const CellAverageMatrix<Scalar>& Ubar, Scalar eps,
                                     const DYOptions<Scalar>& opt = {}) {
  vector_dim_of(Ubar.cols());
  if (!Ubar.allFinite()) throw std::invalid_argument("limit_cell_averages: non-finite input");
  DYResult<Scalar> result;
  const auto target = conservation_target(Ubar);

  bool all_admissible = true;
  for (Eigen::Index i = 0; i < Ubar.rows() && all_admissible; ++i)
    all_admissible = row_admissible(Ubar, i, eps);
  if (all_admissible) {
    result.X = Ubar;
    result.report.converged = true;
    return result;
  }

  const Scalar threshold = opt.tol * (1 + Ubar.norm());
  CellAverageMatrix<Scalar> z = Ubar;
  CellAverageMatrix<Scalar> x_half;
  for (int k = 0; k < opt.max_iters; ++k) {
    x_half = prox_admissible(z, eps, &result.report.slice_calls, opt.brent);
    const CellAverageMatrix<Scalar> reflected = 2 * x_half - z - opt.step * (x_half - Ubar);
    const CellAverageMatrix<Scalar> x_next = prox_conservation(reflected, target);
    const CellAverageMatrix<Scalar> delta = x_next - x_half;
    const Scalar inc = delta.norm();
    result.report.increment_history.push_back(inc);
    z += delta;
    result.report.n_iters = k + 1;
    if (inc <= threshold) {
      result.report.converged = true;
      break;
    }
  }

  result.X = std::move(x_half);
  result.report.conservation_residual =
      (column_sums(result.X) - target.b).cwiseAbs().maxCoeff();
  result.report.feasibility_residual = feasibility_residual(result.X, eps);
  return result;
}

}  // namespace mhdidp
