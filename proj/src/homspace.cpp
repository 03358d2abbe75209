#include "kmu/homspace.hpp"

#include <algorithm>
#include <cmath>

namespace kmu {

void ReductiveDecomposition::bracket_m(const Vector& x, const Vector& y, Vector& h_out,
                                       Vector& m_out) const {
  const int dm = dim_m();
  h_out = Vector::Zero(dim_h);
  m_out = Vector::Zero(dm);
  for (int i = 0; i < dm; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dm; ++j) {
      const double w = x(i) * y(j);
      if (w == 0.0) continue;
      const double* vm = mm_m(i, j);
      for (int k = 0; k < dm; ++k) m_out(k) += w * vm[k];
      if (dim_h > 0) {
        const double* vh = mm_h(i, j);
        for (int a = 0; a < dim_h; ++a) h_out(a) += w * vh[a];
      }
    }
  }
}

Vector ReductiveDecomposition::bracket_hm(const Vector& h, const Vector& z) const {
  const int dm = dim_m();
  Vector out = Vector::Zero(dm);
  for (int a = 0; a < dim_h; ++a) {
    if (h(a) == 0.0) continue;
    for (int i = 0; i < dm; ++i) {
      const double w = h(a) * z(i);
      if (w == 0.0) continue;
      const double* v = hm(a, i);
      for (int k = 0; k < dm; ++k) out(k) += w * v[k];
    }
  }
  return out;
}

Matrix ReductiveDecomposition::adjoint_h(const Vector& h) const {
  const int dm = dim_m();
  Matrix out = Matrix::Zero(dm, dm);
  for (int a = 0; a < dim_h; ++a) {
    if (h(a) == 0.0) continue;
    for (int i = 0; i < dm; ++i) {
      const double* v = hm(a, i);
      for (int k = 0; k < dm; ++k) out(k, i) += h(a) * v[k];
    }
  }
  return out;
}

ReductiveDecomposition make_decomposition(const OrderedBasis& h, const Matrix& xi,
                                          const OrderedBasis& p, const OrderedBasis& q,
                                          double tol) {
  if (p.size() != q.size()) throw Error("p and q must have equal dimension");
  ReductiveDecomposition d;
  d.dim_h = h.size();
  d.n = p.size();
  OrderedBasis xib;
  xib.push(xi, "xi");
  d.full = h.concat(xib).concat(p).concat(q);

  SpanSolver solver(d.full);
  d.gram_condition = solver.gram_condition();
  d.c = structure_constants(d.full, tol);

  const int dm = d.dim_m();
  const int dh = d.dim_h;
  d.bmm_m.assign(static_cast<size_t>(dm) * dm * dm, 0.0);
  d.bmm_h.assign(static_cast<size_t>(dm) * dm * std::max(dh, 1), 0.0);
  d.bhm.assign(static_cast<size_t>(std::max(dh, 1)) * dm * dm, 0.0);

  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j) {
      for (int k = 0; k < dm; ++k)
        d.bmm_m[static_cast<size_t>(i * dm + j) * dm + k] = d.c.at(dh + i, dh + j, dh + k);
      for (int a = 0; a < dh; ++a)
        d.bmm_h[static_cast<size_t>(i * dm + j) * dh + a] = d.c.at(dh + i, dh + j, a);
    }
  double red = 0.0;
  for (int a = 0; a < dh; ++a)
    for (int i = 0; i < dm; ++i) {
      for (int k = 0; k < dm; ++k)
        d.bhm[static_cast<size_t>(a * dm + i) * dm + k] = d.c.at(a, dh + i, dh + k);
      for (int b = 0; b < dh; ++b) red = std::max(red, std::fabs(d.c.at(a, dh + i, b)));
    }
  d.reductivity_residual = red;
  return d;
}

double DecompositionResiduals::max() const {
  return std::max({reductive_hm, hbar_closed, hbar_b, bb_hbar, bb_m_xi});
}

DecompositionResiduals decomposition_residuals(const ReductiveDecomposition& d) {
  DecompositionResiduals r;
  r.reductive_hm = d.reductivity_residual;
  const int dh = d.dim_h;
  const int df = d.dim_full();
  const int xi = dh;          // full index of ξ
  const int b0 = dh + 1;      // first b index
  auto is_hbar = [&](int k) { return k <= xi; };
  auto is_b = [&](int k) { return k >= b0; };
  for (int i = 0; i < df; ++i)
    for (int j = 0; j < df; ++j)
      for (int k = 0; k < df; ++k) {
        const double v = std::fabs(d.c.at(i, j, k));
        if (v == 0.0) continue;
        if (is_hbar(i) && is_hbar(j) && is_b(k)) r.hbar_closed = std::max(r.hbar_closed, v);
        if (is_hbar(i) && is_b(j) && !is_b(k)) r.hbar_b = std::max(r.hbar_b, v);
        if (is_b(i) && is_b(j) && is_b(k)) {
          r.bb_hbar = std::max(r.bb_hbar, v);
          r.bb_m_xi = std::max(r.bb_m_xi, v);  // m-part of [b,b] outside ℝξ
        }
      }
  return r;
}

Vector canonical_torsion(const ReductiveDecomposition& d, const Vector& x, const Vector& y) {
  Vector h, m;
  d.bracket_m(x, y, h, m);
  return -m;
}

Vector canonical_curvature(const ReductiveDecomposition& d, const Vector& x, const Vector& y,
                           const Vector& z) {
  Vector h, m;
  d.bracket_m(x, y, h, m);
  return -d.bracket_hm(h, z);
}

Vector canonical_curvature_symmetric_base(const ReductiveDecomposition& d, const Vector& x,
                                          const Vector& y, const Vector& z, double tol) {
  if (std::fabs(x(0)) > tol || std::fabs(y(0)) > tol || std::fabs(z(0)) > tol)
    throw Error("nonzero xi-component");
  Vector h, m;
  d.bracket_m(x, y, h, m);
  const int dm = d.dim_m();
  Vector out = -d.bracket_hm(h, z);
  const double s = m(0);  // ξ-component of [x,y]
  if (s != 0.0) {
    for (int k = 0; k < dm; ++k) {
      double acc = 0.0;
      for (int i = 0; i < dm; ++i) acc += z(i) * d.mm_m(0, i)[k];
      out(k) -= s * acc;
    }
  }
  return out;
}

double MetricAtO::min_eigenvalue() const {
  Eigen::SelfAdjointEigenSolver<Matrix> es(gram);
  return es.eigenvalues().minCoeff();
}

Matrix ConnectionAtO::op(const Vector& x) const {
  Matrix out = Matrix::Zero(dim, dim);
  for (int i = 0; i < dim; ++i)
    if (x(i) != 0.0) out += x(i) * Lambda[static_cast<size_t>(i)];
  return out;
}

Vector ConnectionAtO::gamma(const Vector& x, const Vector& y) const { return op(x) * y; }

ConnectionAtO levi_civita_connection(const ReductiveDecomposition& d, const MetricAtO& g) {
  const int dm = d.dim_m();
  Eigen::SelfAdjointEigenSolver<Matrix> es(g.gram);
  const double lo = es.eigenvalues().cwiseAbs().minCoeff();
  const double hi = es.eigenvalues().cwiseAbs().maxCoeff();
  if (!(lo > hi * 1e-13)) throw Error("singular gram matrix");
  Eigen::LDLT<Matrix> ldlt(g.gram);

  ConnectionAtO conn;
  conn.dim = dm;
  conn.Lambda.assign(static_cast<size_t>(dm), Matrix::Zero(dm, dm));

  // Gv[k] = G * [E_k, E_i]_m stored per (k,i) on demand
  std::vector<Matrix> gv(static_cast<size_t>(dm));  // gv[k].col(i) = G * mm_m(k,i)
  for (int k = 0; k < dm; ++k) {
    Matrix cols(dm, dm);
    for (int i = 0; i < dm; ++i) {
      Vector v(dm);
      const double* raw = d.mm_m(k, i);
      for (int l = 0; l < dm; ++l) v(l) = raw[l];
      cols.col(i) = g.gram * v;
    }
    gv[static_cast<size_t>(k)] = std::move(cols);
  }

  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j) {
      Vector r(dm);
      for (int k = 0; k < dm; ++k)
        r(k) = gv[static_cast<size_t>(k)](j, i) + gv[static_cast<size_t>(k)](i, j);
      const Vector u = 0.5 * ldlt.solve(r);
      Vector half(dm);
      const double* raw = d.mm_m(i, j);
      for (int l = 0; l < dm; ++l) half(l) = 0.5 * raw[l];
      conn.Lambda[static_cast<size_t>(i)].col(j) = half + u;
    }
  return conn;
}

Vector connection_deviation(const ConnectionAtO& conn, const Vector& x, const Vector& y) {
  return -conn.gamma(x, y);
}

TrilinearMap levi_civita_curvature(const ConnectionAtO& conn, const ReductiveDecomposition& d) {
  const int dm = d.dim_m();
  const int dh = d.dim_h;
  // operators z -> [H_a, z]_m
  std::vector<Matrix> hop(static_cast<size_t>(std::max(dh, 1)), Matrix::Zero(dm, dm));
  for (int a = 0; a < dh; ++a)
    for (int i = 0; i < dm; ++i)
      for (int k = 0; k < dm; ++k) hop[static_cast<size_t>(a)](k, i) = d.hm(a, i)[k];

  TrilinearMap r(dm);
  for (int i = 0; i < dm; ++i)
    for (int j = i + 1; j < dm; ++j) {
      Matrix m = conn.Lambda[static_cast<size_t>(i)] * conn.Lambda[static_cast<size_t>(j)] -
                 conn.Lambda[static_cast<size_t>(j)] * conn.Lambda[static_cast<size_t>(i)];
      const double* vm = d.mm_m(i, j);
      for (int a = 0; a < dm; ++a)
        if (vm[a] != 0.0) m -= vm[a] * conn.Lambda[static_cast<size_t>(a)];
      const double* vh = d.mm_h(i, j);
      for (int a = 0; a < dh; ++a)
        if (vh[a] != 0.0) m -= vh[a] * hop[static_cast<size_t>(a)];
      for (int k = 0; k < dm; ++k)
        for (int l = 0; l < dm; ++l) {
          r.at(i, j, k, l) = m(l, k);
          r.at(j, i, k, l) = -m(l, k);
        }
    }
  return r;
}

double CurvatureSymmetryResiduals::max() const { return std::max({antisym_xy, antisym_zw, bianchi}); }

CurvatureSymmetryResiduals curvature_symmetry_residuals(const TrilinearMap& r,
                                                        const Matrix& gram) {
  CurvatureSymmetryResiduals out;
  const int d = r.dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double* a = r.row(i, j, k);
        const double* b = r.row(j, i, k);
        for (int l = 0; l < d; ++l)
          out.antisym_xy = std::max(out.antisym_xy, std::fabs(a[l] + b[l]));
        const double* c1 = r.row(j, k, i);
        const double* c2 = r.row(k, i, j);
        for (int l = 0; l < d; ++l)
          out.bianchi = std::max(out.bianchi, std::fabs(a[l] + c1[l] + c2[l]));
      }
  // lowered tensor: low(i,j,k,w) = sum_l r(i,j,k,l) gram(l,w)
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        for (int w = k; w < d; ++w) {
          double lo1 = 0.0, lo2 = 0.0;
          const double* a = r.row(i, j, k);
          const double* b = r.row(i, j, w);
          for (int l = 0; l < d; ++l) {
            lo1 += a[l] * gram(l, w);
            lo2 += b[l] * gram(l, k);
          }
          out.antisym_zw = std::max(out.antisym_zw, std::fabs(lo1 + lo2));
        }
  return out;
}

double torsion_residual(const ConnectionAtO& conn, const ReductiveDecomposition& d) {
  const int dm = d.dim_m();
  double worst = 0.0;
  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j) {
      const double* vm = d.mm_m(i, j);
      for (int l = 0; l < dm; ++l) {
        const double t = conn.Lambda[static_cast<size_t>(i)](l, j) -
                         conn.Lambda[static_cast<size_t>(j)](l, i) - vm[l];
        worst = std::max(worst, std::fabs(t));
      }
    }
  return worst;
}

double metricity_residual(const ConnectionAtO& conn, const ReductiveDecomposition& d,
                          const MetricAtO& g) {
  const int dm = d.dim_m();
  double worst = 0.0;
  for (int i = 0; i < dm; ++i) {
    const Matrix& m = conn.Lambda[static_cast<size_t>(i)];
    const Matrix s = g.gram * m + m.transpose() * g.gram;
    worst = std::max(worst, s.cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace kmu
