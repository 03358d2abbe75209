#include "kmu/contact.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace kmu {

double ContactResiduals::max() const {
  return std::max({phi_square, metric_compat, deta, eta_dual, phi_xi});
}

namespace {

Matrix ad_xi(const ReductiveDecomposition& d) {
  const int dm = d.dim_m();
  Matrix a = Matrix::Zero(dm, dm);
  for (int i = 0; i < dm; ++i) {
    const double* v = d.mm_m(0, i);
    for (int k = 0; k < dm; ++k) a(k, i) = v[k];
  }
  return a;
}

std::pair<Matrix, Matrix> gram_sqrt(const Matrix& g) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(g);
  if (es.eigenvalues().minCoeff() <= 0.0) throw Error("singular gram matrix");
  const Vector root = es.eigenvalues().cwiseSqrt();
  const Matrix half = es.eigenvectors() * root.asDiagonal() * es.eigenvectors().transpose();
  const Matrix halfinv =
      es.eigenvectors() * root.cwiseInverse().asDiagonal() * es.eigenvectors().transpose();
  return {half, halfinv};
}

}  // namespace

ContactResiduals verify_contact_metric(const ContactStructureAtO& s,
                                       const ReductiveDecomposition& d) {
  const int dm = d.dim_m();
  const Matrix& g = s.metric.gram;
  ContactResiduals r;
  const Matrix sq = s.phi * s.phi + Matrix::Identity(dm, dm) - s.xi * s.eta.transpose();
  r.phi_square = sq.cwiseAbs().maxCoeff();
  const Matrix mc = s.phi.transpose() * g * s.phi - g + s.eta * s.eta.transpose();
  r.metric_compat = mc.cwiseAbs().maxCoeff();
  const Matrix gphi = g * s.phi;  // g(Ei, φEj)
  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j) {
      const double* v = d.mm_m(i, j);
      double e = 0.0;
      for (int k = 0; k < dm; ++k) e += s.eta(k) * v[k];
      r.deta = std::max(r.deta, std::fabs(-e - 2.0 * gphi(i, j)));
    }
  r.eta_dual = (g * s.xi - s.eta).cwiseAbs().maxCoeff();
  r.phi_xi = (s.phi * s.xi).cwiseAbs().maxCoeff();
  return r;
}

HOperator compute_h(const ContactStructureAtO& s, const ReductiveDecomposition& d) {
  const int dm = d.dim_m();
  const Matrix axi = ad_xi(d);
  HOperator out;
  out.h = 0.5 * (axi * s.phi - s.phi * axi);
  out.trace_abs = std::fabs(out.h.trace());
  out.xi_kernel_residual = (out.h * s.xi).cwiseAbs().maxCoeff();
  out.phi_anticommute = (s.phi * out.h + out.h * s.phi).cwiseAbs().maxCoeff();
  const Matrix gh = s.metric.gram * out.h;
  out.g_sym_residual = (gh - gh.transpose()).cwiseAbs().maxCoeff();

  auto [ghalf, ghalfinv] = gram_sqrt(s.metric.gram);
  Matrix sym = ghalf * out.h * ghalfinv;
  sym = 0.5 * (sym + sym.transpose());
  Eigen::SelfAdjointEigenSolver<Matrix> es(sym);
  const Vector ev = es.eigenvalues();
  out.lambda = ev.cwiseAbs().maxCoeff();

  if (out.lambda <= sasakian_cutoff) {
    out.k_contact = true;
    out.pattern_residual = out.lambda;
    return out;
  }

  const int n = d.n;
  std::vector<int> plus, minus, zero;
  double pattern = 0.0;
  for (int i = 0; i < dm; ++i) {
    const double dplus = std::fabs(ev(i) - out.lambda);
    const double dminus = std::fabs(ev(i) + out.lambda);
    const double dzero = std::fabs(ev(i));
    const double best = std::min({dplus, dminus, dzero});
    pattern = std::max(pattern, best);
    if (best == dzero)
      zero.push_back(i);
    else if (best == dplus)
      plus.push_back(i);
    else
      minus.push_back(i);
  }
  out.pattern_residual = pattern;
  const double tol = 1e-6 * std::max(1.0, out.lambda);
  if (pattern > tol || static_cast<int>(plus.size()) != n ||
      static_cast<int>(minus.size()) != n || zero.size() != 1)
    throw Error("not a (kappa,mu) candidate");

  out.b_plus.resize(dm, n);
  out.b_minus.resize(dm, n);
  for (int c = 0; c < n; ++c) {
    out.b_plus.col(c) = ghalfinv * es.eigenvectors().col(plus[static_cast<size_t>(c)]);
    out.b_minus.col(c) = ghalfinv * es.eigenvectors().col(minus[static_cast<size_t>(c)]);
  }
  return out;
}

KappaMu fit_kappa_mu(const TrilinearMap& r, const ContactStructureAtO& s, const HOperator& h) {
  const int dm = r.dim;
  const Matrix& g = s.metric.gram;
  KappaMu km;
  km.lambda = h.k_contact ? 0.0 : h.lambda;

  if (h.k_contact) {
    km.kappa = 1.0;
    km.mu = 0.0;
    km.sasakian = true;
  } else {
    const int n = static_cast<int>(h.b_plus.cols());
    auto sectional = [&](const Vector& x) {
      // g(R(x,ξ)ξ, x): R(x,ξ)ξ = Σ x_i R(Ei,Ej)Ek ξ_j ξ_k
      Vector rv = Vector::Zero(dm);
      for (int i = 0; i < dm; ++i) {
        if (x(i) == 0.0) continue;
        for (int j = 0; j < dm; ++j) {
          if (s.xi(j) == 0.0) continue;
          for (int k = 0; k < dm; ++k) {
            if (s.xi(k) == 0.0) continue;
            const double* row = r.row(i, j, k);
            const double w = x(i) * s.xi(j) * s.xi(k);
            for (int l = 0; l < dm; ++l) rv(l) += w * row[l];
          }
        }
      }
      return x.dot(g * rv);
    };
    double cp = 0.0, cm = 0.0;
    for (int c = 0; c < n; ++c) {
      cp += sectional(h.b_plus.col(c));
      cm += sectional(h.b_minus.col(c));
    }
    cp /= n;
    cm /= n;
    km.kappa = 0.5 * (cp + cm);
    km.mu = (cp - cm) / (2.0 * h.lambda);
  }

  // all-pairs residual of the defining condition on R(·,·)ξ
  double worst = 0.0;
  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j) {
      // R(Ei,Ej)ξ with ξ in m-coordinates
      Vector rv = Vector::Zero(dm);
      for (int k = 0; k < dm; ++k) {
        if (s.xi(k) == 0.0) continue;
        const double* row = r.row(i, j, k);
        for (int l = 0; l < dm; ++l) rv(l) += s.xi(k) * row[l];
      }
      Vector model = km.kappa * (s.eta(j) * Vector::Unit(dm, i) - s.eta(i) * Vector::Unit(dm, j));
      model += km.mu * (s.eta(j) * h.h.col(i) - s.eta(i) * h.h.col(j));
      worst = std::max(worst, (rv - model).cwiseAbs().maxCoeff());
    }
  km.fit_residual = worst;
  return km;
}

double boeckx_invariant(const KappaMu& km) {
  if (!(km.kappa < 1.0)) throw Error("Boeckx invariant undefined for kappa >= 1");
  return (1.0 - 0.5 * km.mu) / std::sqrt(1.0 - km.kappa);
}

KappaMu d_homothetic(const KappaMu& km, double a) {
  if (!(a > 0.0)) throw Error("deformation parameter must be positive");
  KappaMu out;
  out.kappa = (km.kappa + a * a - 1.0) / (a * a);
  out.mu = (km.mu + 2.0 * a - 2.0) / a;
  out.lambda = km.lambda / a;
  out.sasakian = km.sasakian;
  out.fit_residual = 0.0;
  return out;
}

ContactStructureAtO d_homothetic_structure(const ContactStructureAtO& s, double a) {
  if (!(a > 0.0)) throw Error("deformation parameter must be positive");
  ContactStructureAtO out;
  out.phi = s.phi;
  out.xi = s.xi / a;
  out.eta = a * s.eta;
  out.metric.gram = a * s.metric.gram + a * (a - 1.0) * s.eta * s.eta.transpose();
  return out;
}

TrilinearMap kmu_curvature_eval(const KappaMu& km, const ContactStructureAtO& s,
                                const HOperator& h) {
  if (!(km.kappa < 1.0)) throw Error("kappa = 1");
  const int dm = static_cast<int>(s.phi.rows());
  const Matrix& g = s.metric.gram;
  const double kappa = km.kappa, mu = km.mu;

  const Matrix mh = h.h.transpose() * g;              // g(h Ei, Ej)
  const Matrix mp = s.phi.transpose() * g;            // g(φ Ei, Ej)
  const Matrix mph = (s.phi * h.h).transpose() * g;   // g(φh Ei, Ej)
  const Vector& e = s.eta;

  const double c1 = 1.0 - 0.5 * mu;
  const double c2 = (1.0 - 0.5 * mu) / (1.0 - kappa);
  const double c3 = 0.5 * mu;
  const double c4 = (kappa - 0.5 * mu) / (1.0 - kappa);
  const double c6 = kappa - 1.0 + 0.5 * mu;
  const double c7 = mu - 1.0;

  TrilinearMap low(dm);
  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j)
      for (int k = 0; k < dm; ++k) {
        double* row = low.row(i, j, k);
        for (int w = 0; w < dm; ++w) {
          double v = c1 * (g(j, k) * g(i, w) - g(i, k) * g(j, w));
          v += g(j, k) * mh(i, w) - g(i, k) * mh(j, w);
          v += -g(j, w) * mh(i, k) + g(i, w) * mh(j, k);
          v += c2 * (mh(j, k) * mh(i, w) - mh(i, k) * mh(j, w));
          v -= c3 * (mp(j, k) * mp(i, w) - mp(i, k) * mp(j, w));
          v += c4 * (mph(j, k) * mph(i, w) - mph(j, w) * mph(i, k));
          v += mu * mp(i, j) * mp(k, w);
          v += e(i) * e(w) * (c6 * g(j, k) + c7 * mh(j, k));
          v -= e(i) * e(k) * (c6 * g(j, w) + c7 * mh(j, w));
          v += e(j) * e(k) * (c6 * g(i, w) + c7 * mh(i, w));
          v -= e(j) * e(w) * (c6 * g(i, k) + c7 * mh(i, k));
          row[w] = v;
        }
      }

  // raise the last index
  const Matrix ginv = g.inverse();
  TrilinearMap r(dm);
  for (int i = 0; i < dm; ++i)
    for (int j = 0; j < dm; ++j)
      for (int k = 0; k < dm; ++k) {
        const double* lo = low.row(i, j, k);
        double* hi = r.row(i, j, k);
        for (int l = 0; l < dm; ++l) {
          double acc = 0.0;
          for (int w = 0; w < dm; ++w) acc += lo[w] * ginv(w, l);
          hi[l] = acc;
        }
      }
  return r;
}

double eta_parallel_residual(const ConnectionAtO& conn, const ContactStructureAtO& s,
                             const HOperator& h, const ReductiveDecomposition& d) {
  const int dm = d.dim_m();
  const Matrix& g = s.metric.gram;
  // b-directions are m-coordinates 1..2n; (∇_X h)Y = h A(X,Y) − A(X,hY)
  // with A(x,y) = −Λ(x)y, so (∇_X h)Y = Λ(X)(hY) − h Λ(X)Y.
  double worst = 0.0;
  for (int i = 1; i < dm; ++i) {
    const Matrix& li = conn.Lambda[static_cast<size_t>(i)];
    const Matrix nh = li * h.h - h.h * li;  // column j = (∇_Ei h) Ej
    const Matrix lowered = g * nh;
    for (int j = 1; j < dm; ++j)
      for (int k = 1; k < dm; ++k) worst = std::max(worst, std::fabs(lowered(k, j)));
  }
  return worst;
}

double boeckx_t1m(double c) {
  if (c == 1.0) throw Error("undefined at c = 1");
  return (1.0 + c) / std::fabs(1.0 - c);
}

}  // namespace kmu
