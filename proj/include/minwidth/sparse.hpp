#ifndef MINWIDTH_SPARSE_HPP
#define MINWIDTH_SPARSE_HPP

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>
#include <vector>

#include "minwidth/errors.hpp"

namespace minwidth {

// Compressed sparse row matrix.
struct CsrMatrix {
  int n = 0;
  std::vector<int> row_ptr;
  std::vector<int> col;
  std::vector<double> val;

  void multiply(const std::vector<double>& x, std::vector<double>& y) const {
    y.resize(n);
    for (int i = 0; i < n; ++i) {
      double s = 0.0;
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k) s += val[k] * x[col[k]];
      y[i] = s;
    }
  }

  std::vector<double> diagonal() const {
    std::vector<double> d(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int k = row_ptr[i]; k < row_ptr[i + 1]; ++k)
        if (col[k] == i) d[i] = val[k];
    return d;
  }

  double at(int i, int j) const {
    const auto first = col.begin() + row_ptr[i], last = col.begin() + row_ptr[i + 1];
    const auto it = std::lower_bound(first, last, j);
    return (it != last && *it == j) ? val[it - col.begin()] : 0.0;
  }
};

// Sums duplicate (row, col) entries; columns sorted within each row.
struct Triplet {
  int row;
  int col;
  double value;
};

inline CsrMatrix csr_from_triplets(int n, std::vector<Triplet> entries) {
  std::sort(entries.begin(), entries.end(),
            [](const Triplet& a, const Triplet& b) { return std::tie(a.row, a.col) < std::tie(b.row, b.col); });
  CsrMatrix m;
  m.n = n;
  m.row_ptr.assign(n + 1, 0);
  for (std::size_t k = 0; k < entries.size();) {
    const int r = entries[k].row, c = entries[k].col;
    double s = 0.0;
    for (; k < entries.size() && entries[k].row == r && entries[k].col == c; ++k) s += entries[k].value;
    m.col.push_back(c);
    m.val.push_back(s);
    ++m.row_ptr[r + 1];
  }
  for (int i = 0; i < n; ++i) m.row_ptr[i + 1] += m.row_ptr[i];
  return m;
}

struct CgResult {
  int iterations;
  double relative_residual;
};

// Jacobi-preconditioned conjugate gradients. x holds the initial guess on
// entry. Stops when ||b - Ax|| <= rel_tol * ||b||. Default cap is
// 50 * sqrt(n) iterations.
inline CgResult conjugate_gradient(const CsrMatrix& a, const std::vector<double>& b, std::vector<double>& x,
                                   double rel_tol = 1e-10, int max_iterations = -1) {
  const int n = a.n;
  if (max_iterations < 0) max_iterations = std::max(10, int(std::ceil(50.0 * std::sqrt(double(n)))));
  x.resize(n, 0.0);
  double bnorm = 0.0;
  for (double v : b) bnorm += v * v;
  bnorm = std::sqrt(bnorm);
  if (bnorm == 0.0) {
    std::fill(x.begin(), x.end(), 0.0);
    return {0, 0.0};
  }
  std::vector<double> inv_diag = a.diagonal();
  for (double& d : inv_diag) {
    if (!(d > 0.0)) throw SolverDiverged("conjugate_gradient: non-positive diagonal entry");
    d = 1.0 / d;
  }
  std::vector<double> r(n), z(n), p(n), q(n);
  a.multiply(x, q);
  for (int i = 0; i < n; ++i) r[i] = b[i] - q[i];
  for (int i = 0; i < n; ++i) z[i] = inv_diag[i] * r[i];
  p = z;
  double rz = 0.0, rr = 0.0;
  for (int i = 0; i < n; ++i) {
    rz += r[i] * z[i];
    rr += r[i] * r[i];
  }
  int it = 0;
  while (std::sqrt(rr) > rel_tol * bnorm) {
    if (it >= max_iterations)
      throw SolverDiverged("conjugate_gradient: relative residual " + std::to_string(std::sqrt(rr) / bnorm) +
                           " after " + std::to_string(it) + " iterations");
    a.multiply(p, q);
    double pq = 0.0;
    for (int i = 0; i < n; ++i) pq += p[i] * q[i];
    if (!(pq > 0.0)) throw SolverDiverged("conjugate_gradient: matrix is not positive definite");
    const double alpha = rz / pq;
    rr = 0.0;
    double rz_new = 0.0;
    for (int i = 0; i < n; ++i) {
      x[i] += alpha * p[i];
      r[i] -= alpha * q[i];
      z[i] = inv_diag[i] * r[i];
      rr += r[i] * r[i];
      rz_new += r[i] * z[i];
    }
    const double beta = rz_new / rz;
    rz = rz_new;
    for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    ++it;
  }
  return {it, std::sqrt(rr) / bnorm};
}

}  // namespace minwidth

#endif  // MINWIDTH_SPARSE_HPP
