#include "kmu/liecore.hpp"

#include <algorithm>
#include <cstdlib>
#include <limits>

namespace kmu {

Matrix bracket(const Matrix& a, const Matrix& b) { return a * b - b * a; }

double span_tolerance() {
  static double tol = [] {
    if (const char* s = std::getenv("KMU_TOL")) {
      char* end = nullptr;
      const double v = std::strtod(s, &end);
      if (end != s && v > 0.0) return v;
    }
    return 1e-9;
  }();
  return tol;
}

OrderedBasis OrderedBasis::concat(const OrderedBasis& other) const {
  OrderedBasis out = *this;
  out.elements.insert(out.elements.end(), other.elements.begin(), other.elements.end());
  out.labels.insert(out.labels.end(), other.labels.begin(), other.labels.end());
  return out;
}

Vector so_signature(int p, int q) {
  Vector s(p + q);
  for (int i = 0; i < p + q; ++i) s(i) = i < q ? -1.0 : 1.0;
  return s;
}

OrderedBasis so_basis(int p, int q) {
  if (p < 0 || q < 0 || p + q < 2) throw Error("so_basis: need p + q >= 2");
  const int n = p + q;
  const Vector s = so_signature(p, q);
  OrderedBasis out;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n, n);
      e(i, j) = 1.0;
      e(j, i) = -s(i) * s(j);
      out.push(std::move(e), "E_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  return out;
}

SpanSolver::SpanSolver(const OrderedBasis& basis) {
  d_ = basis.size();
  if (d_ == 0) throw Error("empty basis");
  const int n = basis.matrix_dim();
  rows_ = static_cast<long long>(n) * n;
  flat_.resize(rows_, d_);
  for (int k = 0; k < d_; ++k) {
    const Matrix& m = basis.elements[static_cast<size_t>(k)];
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) flat_(static_cast<long long>(i) * n + j, k) = m(i, j);
  }
  qr_.compute(flat_);
  if (qr_.rank() < d_) throw Error("basis is linearly dependent");
  const Matrix gram = flat_.transpose() * flat_;
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  const double lo = es.eigenvalues().minCoeff();
  const double hi = es.eigenvalues().maxCoeff();
  gram_cond_ = lo > 0.0 ? hi / lo : std::numeric_limits<double>::infinity();
}

Vector SpanSolver::coordinates(const Matrix& x, double tol) const {
  const int n = static_cast<int>(x.rows());
  Vector rhs(rows_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rhs(static_cast<long long>(i) * n + j) = x(i, j);
  Vector sol = qr_.solve(rhs);
  const double res = (flat_ * sol - rhs).cwiseAbs().maxCoeff();
  if (res > tol) throw Error("not in span");
  return sol;
}

double SpanSolver::residual(const Matrix& x) const {
  const int n = static_cast<int>(x.rows());
  Vector rhs(rows_);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) rhs(static_cast<long long>(i) * n + j) = x(i, j);
  Vector sol = qr_.solve(rhs);
  return (flat_ * sol - rhs).cwiseAbs().maxCoeff();
}

Vector coordinates(const Matrix& x, const OrderedBasis& basis, double tol) {
  return SpanSolver(basis).coordinates(x, tol);
}

Vector StructureConstants::apply(const Vector& x, const Vector& y) const {
  Vector out = Vector::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      const double w = x(i) * y(j);
      if (w == 0.0) continue;
      const double* row = &c[static_cast<size_t>(i * dim + j) * dim];
      for (int k = 0; k < dim; ++k) out(k) += w * row[k];
    }
  }
  return out;
}

StructureConstants structure_constants(const OrderedBasis& basis, double tol) {
  const int d = basis.size();
  SpanSolver solver(basis);
  StructureConstants sc;
  sc.dim = d;
  sc.c.assign(static_cast<size_t>(d) * d * d, 0.0);
  double worst = 0.0;
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      const Matrix br = bracket(basis.elements[static_cast<size_t>(i)],
                                basis.elements[static_cast<size_t>(j)]);
      const double res = solver.residual(br);
      worst = std::max(worst, res);
      if (res > tol) throw Error("not a subalgebra");
      Vector co = solver.coordinates(br, tol);
      for (int k = 0; k < d; ++k) {
        sc.c[static_cast<size_t>(i * d + j) * d + k] = co(k);
        sc.c[static_cast<size_t>(j * d + i) * d + k] = -co(k);
      }
    }
  sc.reconstruction_residual = worst;
  return sc;
}

double jacobi_residual(const StructureConstants& sc, ExecPolicy pol) {
  return jacobi_scan(sc.c, sc.dim, pol);
}

}  // namespace kmu
