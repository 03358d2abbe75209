#include "kmu/triple.hpp"

#include <algorithm>
#include <cmath>

namespace kmu {

Vector TripleSystem::apply(const Vector& x, const Vector& y, const Vector& z) const {
  Vector out = Vector::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x(i) == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y(j) == 0.0) continue;
      const double w = x(i) * y(j);
      for (int k = 0; k < dim; ++k) {
        if (z(k) == 0.0) continue;
        const double* row = t.row(i, j, k);
        const double wz = w * z(k);
        for (int l = 0; l < dim; ++l) out(l) += wz * row[l];
      }
    }
  }
  return out;
}

double LtsResiduals::max() const { return std::max({antisym, cyclic, derivation}); }
double JtsResiduals::max() const { return std::max(jt1, jt2); }

LtsResiduals lts_axiom_residuals(const TripleSystem& ts, uint64_t seed, ExecPolicy pol) {
  LtsResiduals r;
  const int d = ts.dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double* a = ts.t.row(i, j, k);
        const double* b = ts.t.row(j, i, k);
        const double* c1 = ts.t.row(j, k, i);
        const double* c2 = ts.t.row(k, i, j);
        for (int l = 0; l < d; ++l) {
          r.antisym = std::max(r.antisym, std::fabs(a[l] + b[l]));
          r.cyclic = std::max(r.cyclic, std::fabs(a[l] + c1[l] + c2[l]));
        }
      }
  r.derivation = derivation_scan(ts.t, seed, pol);
  return r;
}

JtsResiduals jts_axiom_residuals(const TripleSystem& ts, uint64_t seed, ExecPolicy pol) {
  JtsResiduals r;
  const int d = ts.dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double* a = ts.t.row(i, j, k);
        const double* b = ts.t.row(k, j, i);
        for (int l = 0; l < d; ++l) r.jt1 = std::max(r.jt1, std::fabs(a[l] - b[l]));
      }
  r.jt2 = jordan_law_scan(ts.t, seed, pol);
  return r;
}

double axiom_residual(const TripleSystem& ts, uint64_t seed, ExecPolicy pol) {
  if (ts.kind == TripleKind::LTS) return lts_axiom_residuals(ts, seed, pol).max();
  return jts_axiom_residuals(ts, seed, pol).max();
}

TripleSystem lts_from_jts(const TripleSystem& ts) {
  TripleSystem out;
  out.dim = ts.dim;
  out.kind = TripleKind::LTS;
  out.t = TrilinearMap(ts.dim);
  const int d = ts.dim;
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        const double* a = ts.t.row(i, j, k);
        const double* b = ts.t.row(j, i, k);
        double* o = out.t.row(i, j, k);
        for (int l = 0; l < d; ++l) o[l] = a[l] - b[l];
      }
  return out;
}

double StructureOperator::square_residual() const {
  const int d = static_cast<int>(op.rows());
  const Matrix sq = op * op;
  const Matrix target =
      kind == OperatorKind::Complex ? Matrix(-Matrix::Identity(d, d)) : Matrix(Matrix::Identity(d, d));
  return (sq - target).cwiseAbs().maxCoeff();
}

InvarianceResiduals invariance_residuals(const TripleSystem& lts, const StructureOperator& s) {
  InvarianceResiduals r;
  const int d = lts.dim;
  const Matrix& j = s.op;
  for (int i = 0; i < d; ++i)
    for (int jj = 0; jj < d; ++jj)
      for (int k = 0; k < d; ++k)
        for (int l = 0; l < d; ++l) {
          double first = 0.0, second = 0.0, third = 0.0, jbr = 0.0;
          for (int a = 0; a < d; ++a) {
            first += j(a, i) * lts.t.at(a, jj, k, l);   // [Sx, y, z]
            second += j(a, jj) * lts.t.at(i, a, k, l);  // [x, Sy, z]
            third += j(a, k) * lts.t.at(i, jj, a, l);   // [x, y, Sz]
            jbr += j(l, a) * lts.t.at(i, jj, k, a);     // S[x, y, z]
          }
          r.invariant = std::max(r.invariant, std::fabs(third - jbr));
          r.straight = std::max(r.straight, std::fabs(first - second));
          r.twisted = std::max(r.twisted, std::fabs(first + second));
        }
  return r;
}

BaseSpace base_space(const ReductiveDecomposition& d, const ContactStructureAtO& s,
                     const HOperator& h) {
  const int n = d.n;
  const int db = 2 * n;
  BaseSpace b;
  b.n = n;
  b.lambda = h.lambda;
  b.gram = s.metric.gram.block(1, 1, db, db);
  b.phi = s.phi.block(1, 1, db, db);
  b.h = h.h.block(1, 1, db, db);
  b.b_plus = h.b_plus.block(1, 0, db, n);
  b.b_minus = h.b_minus.block(1, 0, db, n);

  b.lts.dim = db;
  b.lts.kind = TripleKind::LTS;
  b.lts.t = TrilinearMap(db);
  const int dm = d.dim_m();
  Vector ex = Vector::Zero(dm), ey = Vector::Zero(dm), ez = Vector::Zero(dm);
  for (int i = 0; i < db; ++i) {
    ex.setZero();
    ex(i + 1) = 1.0;
    for (int j = 0; j < db; ++j) {
      ey.setZero();
      ey(j + 1) = 1.0;
      for (int k = 0; k < db; ++k) {
        ez.setZero();
        ez(k + 1) = 1.0;
        // [x,y,z] = −R̄(x,y)z = +[[x,y]_h̄, z]
        const Vector v = -canonical_curvature_symmetric_base(d, ex, ey, ez);
        b.xi_leak = std::max(b.xi_leak, std::fabs(v(0)));
        double* row = b.lts.t.row(i, j, k);
        for (int l = 0; l < db; ++l) row[l] = v(l + 1);
      }
    }
  }
  return b;
}

StructureOperator scaled_structure(const BaseSpace& base, OperatorKind kind, double a) {
  const Matrix pplus = base.b_plus * base.b_plus.transpose() * base.gram;
  const Matrix pminus = base.b_minus * base.b_minus.transpose() * base.gram;
  const double sign = kind == OperatorKind::Complex ? 1.0 : -1.0;
  StructureOperator s;
  s.kind = kind;
  s.op = a * base.phi * pplus + sign * (1.0 / a) * base.phi * pminus;
  return s;
}

namespace {

StructureOperator restricted_structure(const ContactStructureAtO& s, const HOperator& h,
                                       OperatorKind kind, double a) {
  const int dm = static_cast<int>(s.phi.rows());
  const int db = dm - 1;
  const int n = static_cast<int>(h.b_plus.cols());
  BaseSpace stub;
  stub.n = n;
  stub.gram = s.metric.gram.block(1, 1, db, db);
  stub.phi = s.phi.block(1, 1, db, db);
  stub.b_plus = h.b_plus.block(1, 0, db, n);
  stub.b_minus = h.b_minus.block(1, 0, db, n);
  return scaled_structure(stub, kind, a);
}

}  // namespace

StandardStructure standard_structure_solve(const KappaMu& km, const ContactStructureAtO& s,
                                           const HOperator& h) {
  const double I = boeckx_invariant(km);
  if (std::fabs(std::fabs(I) - 1.0) <= 1e-9) throw Error("no standard structure");
  StandardStructure out;
  if (std::fabs(I) > 1.0) {
    out.kind = OperatorKind::Complex;
    out.a = std::sqrt((I + 1.0) / (I - 1.0));
  } else {
    out.kind = OperatorKind::ParaComplex;
    out.a = std::sqrt((1.0 + I) / (1.0 - I));
  }
  out.op = restricted_structure(s, h, out.kind, out.a);
  return out;
}

TrilinearMap base_curvature_formula(const KappaMu& km, const ContactStructureAtO& s,
                                    const HOperator& h) {
  if (!(km.kappa < 1.0)) throw Error("kappa = 1");
  const int dm = static_cast<int>(s.phi.rows());
  const int db = dm - 1;
  const Matrix g = s.metric.gram.block(1, 1, db, db);
  const Matrix phi = s.phi.block(1, 1, db, db);
  const Matrix hh = h.h.block(1, 1, db, db);
  const double mu = km.mu, kappa = km.kappa;
  const double cm = 1.0 - 0.5 * mu;
  const double cf = cm / (1.0 - kappa);

  const Matrix gh = hh.transpose() * g;           // g(h·, ·)
  const Matrix gp = phi.transpose() * g;          // g(φ·, ·)
  const Matrix gph = (phi * hh).transpose() * g;  // g(φh·, ·)
  const Matrix phih = phi * hh;

  TrilinearMap r(db);
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < db; ++k) {
        Vector v = Vector::Zero(db);
        v += (cm * g(j, k) + gh(j, k)) * Vector::Unit(db, i);
        v -= (cm * g(i, k) + gh(i, k)) * Vector::Unit(db, j);
        v += (cf * gh(j, k) + g(j, k)) * hh.col(i);
        v -= (cf * gh(i, k) + g(i, k)) * hh.col(j);
        v += (cm * gp(j, k) + gph(j, k)) * phi.col(i);
        v -= (cm * gp(i, k) + gph(i, k)) * phi.col(j);
        v += (cf * gph(j, k) + gp(j, k)) * phih.col(i);
        v -= (cf * gph(i, k) + gp(i, k)) * phih.col(j);
        v += (mu - 2.0) * gp(i, j) * phi.col(k);
        v -= 2.0 * gp(i, j) * phih.col(k);
        double* row = r.row(i, j, k);
        for (int l = 0; l < db; ++l) row[l] = v(l);
      }
  return r;
}

namespace {

// least-squares multiple of `pattern` in `t`, with sup-norm residual
std::pair<double, double> fit_multiple(const TrilinearMap& t, const TrilinearMap& pattern) {
  double num = 0.0, den = 0.0;
  for (size_t i = 0; i < t.coeff.size(); ++i) {
    num += t.coeff[i] * pattern.coeff[i];
    den += pattern.coeff[i] * pattern.coeff[i];
  }
  const double s = den > 0.0 ? num / den : 0.0;
  double res = 0.0;
  for (size_t i = 0; i < t.coeff.size(); ++i)
    res = std::max(res, std::fabs(t.coeff[i] - s * pattern.coeff[i]));
  return {s, res};
}

TrilinearMap curvature_pattern(int d) {
  // g(y,z)x − g(x,z)y in an orthonormal basis
  TrilinearMap p(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k) {
        if (j == k) p.at(i, j, k, i) += 1.0;
        if (i == k) p.at(i, j, k, j) -= 1.0;
      }
  return p;
}

TrilinearMap jordan_pattern(int d) {
  // g(y,z)x − g(x,z)y + g(x,y)z in an orthonormal basis
  TrilinearMap p = curvature_pattern(d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j)
      for (int k = 0; k < d; ++k)
        if (i == j) p.at(i, j, k, k) += 1.0;
  return p;
}

}  // namespace

TauFixed tau_and_fixed_subsystem(const BaseSpace& base) {
  TauFixed out;
  const int db = 2 * base.n;
  const Matrix tau = base.h / base.lambda;
  out.involution = (tau * tau - Matrix::Identity(db, db)).cwiseAbs().maxCoeff();

  double aut = 0.0;
  for (int i = 0; i < db; ++i)
    for (int j = 0; j < db; ++j)
      for (int k = 0; k < db; ++k) {
        const Vector lhs = tau * Vector(Eigen::Map<const Vector>(base.lts.t.row(i, j, k), db));
        const Vector rhs = base.lts.apply(tau.col(i), tau.col(j), tau.col(k));
        aut = std::max(aut, (lhs - rhs).cwiseAbs().maxCoeff());
      }
  out.automorphism = aut;

  const int n = base.n;
  out.fixed.dim = n;
  out.fixed.kind = TripleKind::LTS;
  out.fixed.t = TrilinearMap(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Vector v = base.lts.apply(base.b_plus.col(a), base.b_plus.col(b), base.b_plus.col(c));
        const Vector coords = base.b_plus.transpose() * base.gram * v;
        const Vector back = base.b_plus * coords;
        out.off_subspace = std::max(out.off_subspace, (v - back).cwiseAbs().maxCoeff());
        double* row = out.fixed.t.row(a, b, c);
        for (int l = 0; l < n; ++l) row[l] = coords(l);
      }

  // −fixed bracket = R̄₊; fit against g(y,z)x − g(x,z)y
  TrilinearMap rbar(n);
  for (size_t i = 0; i < rbar.coeff.size(); ++i) rbar.coeff[i] = -out.fixed.t.coeff[i];
  const auto [sc, res] = fit_multiple(rbar, curvature_pattern(n));
  out.rbar_scalar = sc;
  out.rbar_residual = res;
  return out;
}

double tau_anticommute_residual(const BaseSpace& base, const StructureOperator& s) {
  const Matrix tau = base.h / base.lambda;
  return (tau * s.op + s.op * tau).cwiseAbs().maxCoeff();
}

JordanExtension jordan_extension(const BaseSpace& base, const StructureOperator& s,
                                 uint64_t seed, ExecPolicy pol) {
  JordanExtension out;
  const int n = base.n;
  const Matrix& j = s.op;
  const Matrix jinv = s.kind == OperatorKind::Complex ? Matrix(-j) : j;

  auto structure_tensor = [&](const Vector& x, const Vector& y, const Vector& z) {
    // T(x,y)z = −½(R̄(x,y)z − J R̄(x, J⁻¹y)z) with R̄(x,y)z = −[x,y,z]
    const Vector first = base.lts.apply(x, y, z);
    const Vector second = base.lts.apply(x, jinv * y, z);
    return 0.5 * (first - j * second);
  };

  out.jts.dim = n;
  out.jts.kind = TripleKind::JTS;
  out.jts.t = TrilinearMap(n);
  TripleSystem fixed;
  fixed.dim = n;
  fixed.t = TrilinearMap(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const Vector v =
            structure_tensor(base.b_plus.col(a), base.b_plus.col(b), base.b_plus.col(c));
        const Vector coords = base.b_plus.transpose() * base.gram * v;
        out.off_subspace = std::max(out.off_subspace, (v - base.b_plus * coords).cwiseAbs().maxCoeff());
        double* row = out.jts.t.row(a, b, c);
        for (int l = 0; l < n; ++l) row[l] = coords(l);
        const Vector w =
            base.lts.apply(base.b_plus.col(a), base.b_plus.col(b), base.b_plus.col(c));
        const Vector wc = base.b_plus.transpose() * base.gram * w;
        double* frow = fixed.t.row(a, b, c);
        for (int l = 0; l < n; ++l) frow[l] = wc(l);
      }

  const JtsResiduals jr = jts_axiom_residuals(out.jts, seed, pol);
  out.jt1 = jr.jt1;
  out.jt2 = jr.jt2;
  out.rt_residual = max_abs_diff(lts_from_jts(out.jts).t, fixed.t, pol);
  const auto [sc, res] = fit_multiple(out.jts.t, jordan_pattern(n));
  out.scalar_fit = sc;
  out.scalar_residual = res;
  return out;
}

BaseClass classify_base(double invariant) {
  if (std::fabs(std::fabs(invariant) - 1.0) <= 1e-12) throw Error("unclassified boundary");
  if (invariant > 1.0) return BaseClass::ComplexificationSphere;
  if (invariant < -1.0) return BaseClass::ComplexificationHyperbolic;
  return BaseClass::ParaComplexificationSphere;
}

namespace {
std::string nsym(int n) { return n > 0 ? std::to_string(n) : std::string("n"); }
std::string nplus(int n, int k) { return n > 0 ? std::to_string(n + k) : "n+" + std::to_string(k); }
}  // namespace

std::string base_space_label(BaseClass c, int n) {
  switch (c) {
    case BaseClass::ComplexificationSphere:
      return "SO(" + nplus(n, 2) + ")/(SO(" + nsym(n) + ")×SO(2))";
    case BaseClass::ParaComplexificationSphere:
      return "SO(" + nplus(n, 1) + ",1)/(SO(" + nsym(n) + ")×SO(1,1))";
    case BaseClass::ComplexificationHyperbolic:
      return "SO(" + nsym(n) + ",2)/(SO(" + nsym(n) + ")×SO(2))";
  }
  return {};
}

std::string model_space_label(BaseClass c, int n) {
  switch (c) {
    case BaseClass::ComplexificationSphere:
      return "SO(" + nplus(n, 2) + ")/SO(" + nsym(n) + ")";
    case BaseClass::ParaComplexificationSphere:
      return "SO(" + nplus(n, 1) + ",1)/SO(" + nsym(n) + ")";
    case BaseClass::ComplexificationHyperbolic:
      return "SO(" + nsym(n) + ",2)/SO(" + nsym(n) + ")";
  }
  return {};
}

std::string type_label(BaseClass c, int n) {
  switch (c) {
    case BaseClass::ComplexificationSphere:
      return "complexification of S^" + nsym(n);
    case BaseClass::ParaComplexificationSphere:
      return "para-complexification of S^" + nsym(n);
    case BaseClass::ComplexificationHyperbolic:
      return "complexification of H^" + nsym(n);
  }
  return {};
}

TripleSystem sphere_lts(int dim) {
  TripleSystem ts;
  ts.dim = dim;
  ts.kind = TripleKind::LTS;
  ts.t = TrilinearMap(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        if (j == k) ts.t.at(i, j, k, i) -= 1.0;
        if (i == k) ts.t.at(i, j, k, j) += 1.0;
      }
  return ts;
}

TripleSystem sphere_jts(int dim) {
  TripleSystem ts;
  ts.dim = dim;
  ts.kind = TripleKind::JTS;
  ts.t = TrilinearMap(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        if (i == k) ts.t.at(i, j, k, j) += 0.5;
        if (i == j) ts.t.at(i, j, k, k) -= 0.5;
        if (j == k) ts.t.at(i, j, k, i) -= 0.5;
      }
  return ts;
}

TripleSystem hyperbolic_jts(int dim) { return scale(sphere_jts(dim), -1.0); }

TripleSystem scale(const TripleSystem& ts, double factor) {
  TripleSystem out = ts;
  for (auto& c : out.t.coeff) c *= factor;
  return out;
}

}  // namespace kmu
