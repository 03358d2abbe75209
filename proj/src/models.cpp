#include "kmu/models.hpp"

#include <algorithm>
#include <cmath>

namespace kmu {

std::string family_flag(Family f) {
  switch (f) {
    case Family::SphereType: return "so_n_plus_2";
    case Family::HyperbolicType: return "so_n_2";
    case Family::ParaType: return "so_n_plus_1_1";
  }
  return {};
}

BaseClass family_base_class(Family f) {
  switch (f) {
    case Family::SphereType: return BaseClass::ComplexificationSphere;
    case Family::HyperbolicType: return BaseClass::ComplexificationHyperbolic;
    case Family::ParaType: return BaseClass::ParaComplexificationSphere;
  }
  return BaseClass::ComplexificationSphere;
}

Family family_for_class(BaseClass c) {
  switch (c) {
    case BaseClass::ComplexificationSphere: return Family::SphereType;
    case BaseClass::ComplexificationHyperbolic: return Family::HyperbolicType;
    case BaseClass::ParaComplexificationSphere: return Family::ParaType;
  }
  return Family::SphereType;
}

std::string family_space_label(Family f, int n) { return model_space_label(family_base_class(f), n); }

void validate(const ModelSpec& spec) {
  if (spec.n < 1) throw Error("n must be at least 1");
  if (!(spec.alpha > 0.0)) throw Error("alpha must be positive");
}

bool is_sasakian(const ModelSpec& spec) {
  if (spec.family == Family::ParaType) return false;
  return std::fabs(spec.alpha * spec.alpha - 1.0) / (2.0 * spec.alpha) <= sasakian_cutoff;
}

namespace {

Vector family_signs(Family f, int n) {
  Vector s = Vector::Ones(n + 2);
  if (f == Family::HyperbolicType) {
    s(0) = -1.0;
    s(1) = -1.0;
  } else if (f == Family::ParaType) {
    s(0) = -1.0;
  }
  return s;
}

Matrix xi_matrix(Family f, int n) {
  Matrix x = Matrix::Zero(n + 2, n + 2);
  if (f == Family::ParaType) {
    x(0, 1) = 1.0;
    x(1, 0) = 1.0;
  } else {
    x(0, 1) = -1.0;
    x(1, 0) = 1.0;
  }
  return x;
}

Matrix b_element(Family f, int n, const Vector& v, const Vector& w) {
  Matrix x = Matrix::Zero(n + 2, n + 2);
  for (int k = 0; k < n; ++k) {
    if (f == Family::SphereType) {
      x(0, 2 + k) = -v(k);
      x(1, 2 + k) = -w(k);
    } else if (f == Family::HyperbolicType) {
      x(0, 2 + k) = v(k);
      x(1, 2 + k) = w(k);
    } else {
      x(0, 2 + k) = v(k);
      x(1, 2 + k) = -w(k);
    }
    x(2 + k, 0) = v(k);
    x(2 + k, 1) = w(k);
  }
  return x;
}

}  // namespace

ModelBundle build_model(const ModelSpec& spec) {
  validate(spec);
  const int n = spec.n;
  const double alpha = spec.alpha;
  const Vector s = family_signs(spec.family, n);
  const Matrix smat = s.asDiagonal();

  OrderedBasis h;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Matrix e = Matrix::Zero(n + 2, n + 2);
      e(2 + i, 2 + j) = 1.0;
      e(2 + j, 2 + i) = -1.0;
      h.push(std::move(e), "h_" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    }
  const Matrix xi = xi_matrix(spec.family, n);
  OrderedBasis p, q;
  for (int k = 0; k < n; ++k) {
    p.push(b_element(spec.family, n, Vector::Unit(n, k), Vector::Zero(n)),
           "p_" + std::to_string(k + 1));
    q.push(b_element(spec.family, n, Vector::Zero(n), Vector::Unit(n, k)),
           "q_" + std::to_string(k + 1));
  }
  for (const auto& e : h.concat(p).concat(q).elements)
    if ((e.transpose() * smat + smat * e).cwiseAbs().maxCoeff() > 1e-14)
      throw Error("element not in the algebra");
  if ((xi.transpose() * smat + smat * xi).cwiseAbs().maxCoeff() > 1e-14)
    throw Error("element not in the algebra");

  ModelBundle b;
  b.spec = spec;
  b.decomposition = make_decomposition(h, xi, p, q);

  const int dm = 2 * n + 1;
  b.contact.xi = Vector::Unit(dm, 0);
  b.contact.eta = Vector::Unit(dm, 0);
  Vector diag(dm);
  diag(0) = 1.0;
  for (int k = 0; k < n; ++k) {
    diag(1 + k) = 0.5 * alpha;
    diag(1 + n + k) = 0.5 / alpha;
  }
  b.contact.metric.gram = diag.asDiagonal();
  Matrix phi = Matrix::Zero(dm, dm);
  for (int k = 0; k < n; ++k) {
    const int ip = 1 + k, iq = 1 + n + k;
    if (spec.family == Family::HyperbolicType) {
      phi(iq, ip) = -alpha;
      phi(ip, iq) = 1.0 / alpha;
    } else {
      phi(iq, ip) = alpha;
      phi(ip, iq) = -1.0 / alpha;
    }
  }
  b.contact.phi = phi;

  const int db = 2 * n;
  Matrix j = Matrix::Zero(db, db);
  for (int k = 0; k < n; ++k) {
    switch (spec.family) {
      case Family::SphereType:  // J₁(v,w) = (−w, v)
        j(n + k, k) = 1.0;
        j(k, n + k) = -1.0;
        break;
      case Family::HyperbolicType:  // J₂(v,w) = (w, −v)
        j(n + k, k) = -1.0;
        j(k, n + k) = 1.0;
        break;
      case Family::ParaType:  // I(v,w) = (w, v)
        j(n + k, k) = 1.0;
        j(k, n + k) = 1.0;
        break;
    }
  }
  b.base_structure.op = j;
  b.base_structure.kind =
      spec.family == Family::ParaType ? OperatorKind::ParaComplex : OperatorKind::Complex;
  Vector bm = Vector::Ones(db);
  if (spec.family == Family::ParaType)
    for (int k = 0; k < n; ++k) bm(n + k) = -1.0;
  b.base_metric = bm.asDiagonal();
  return b;
}

double closed_form_invariant(const ModelSpec& spec) {
  validate(spec);
  const double alpha = spec.alpha;
  if (spec.family == Family::ParaType)
    return (alpha * alpha - 1.0) / (alpha * alpha + 1.0);
  if (is_sasakian(spec)) throw Error("Sasakian: Boeckx invariant undefined");
  const double a0 = std::min(alpha, 1.0 / alpha);
  const double v = (1.0 + a0 * a0) / (1.0 - a0 * a0);
  return spec.family == Family::SphereType ? v : -v;
}

double closed_form_lambda(const ModelSpec& spec) {
  validate(spec);
  const double a2 = spec.alpha * spec.alpha;
  if (spec.family == Family::ParaType) return (a2 + 1.0) / (2.0 * spec.alpha);
  return std::fabs(a2 - 1.0) / (2.0 * spec.alpha);
}

double alpha_for_invariant(Family f, double invariant) {
  switch (f) {
    case Family::SphereType:
      if (!(invariant > 1.0)) throw Error("invariant outside family range");
      return std::sqrt((invariant - 1.0) / (invariant + 1.0));
    case Family::HyperbolicType:
      if (!(invariant < -1.0)) throw Error("invariant outside family range");
      return std::sqrt((-invariant - 1.0) / (-invariant + 1.0));
    case Family::ParaType:
      if (!(std::fabs(invariant) < 1.0)) throw Error("invariant outside family range");
      return std::sqrt((1.0 + invariant) / (1.0 - invariant));
  }
  throw Error("invariant outside family range");
}

double standard_a_closed_form(const ModelSpec& spec) {
  const double a0 = std::min(spec.alpha, 1.0 / spec.alpha);
  switch (spec.family) {
    case Family::SphereType: return 1.0 / a0;
    case Family::HyperbolicType: return a0;
    case Family::ParaType: return spec.alpha;
  }
  return 0.0;
}

Matrix matrix_exp(const Matrix& a) {
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  Matrix t = a;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
    t /= std::pow(2.0, squarings);
  }
  const int dim = static_cast<int>(a.rows());
  Matrix result = Matrix::Identity(dim, dim);
  Matrix term = Matrix::Identity(dim, dim);
  for (int k = 1; k <= 20; ++k) {
    term = term * t / static_cast<double>(k);
    result += term;
  }
  for (int k = 0; k < squarings; ++k) result = result * result;
  return result;
}

double uniform_pm1(std::mt19937_64& rng) {
  const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0,1)
  return 2.0 * u - 1.0;
}

AdTransport ad_transport(const ModelBundle& bundle, const Matrix& group_element) {
  const ReductiveDecomposition& d = bundle.decomposition;
  const int dm = d.dim_m();
  const int dh = d.dim_h;
  SpanSolver solver(d.full);
  const Matrix inv = group_element.inverse();
  AdTransport out;
  out.t = Matrix::Zero(dm, dm);
  out.h_leak = 0.0;
  for (int i = 0; i < dm; ++i) {
    const Matrix img =
        group_element * d.full.elements[static_cast<size_t>(dh + i)] * inv;
    const Vector co = solver.coordinates(img, 1e-6);
    for (int a = 0; a < dh; ++a) out.h_leak = std::max(out.h_leak, std::fabs(co(a)));
    out.t.col(i) = co.segment(dh, dm);
  }
  return out;
}

double ad_invariance_residual(const ModelBundle& bundle, int samples, uint64_t seed) {
  if (samples < 1) throw Error("samples must be at least 1");
  const int n = bundle.spec.n;
  const int nn = n + 2;
  std::mt19937_64 rng(seed);
  double worst = 0.0;
  const Matrix& g = bundle.contact.metric.gram;
  const Matrix& phi = bundle.contact.phi;
  for (int s = 0; s < samples; ++s) {
    Matrix w = Matrix::Zero(nn, nn);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        const double u = uniform_pm1(rng);
        w(2 + i, 2 + j) = u;
        w(2 + j, 2 + i) = -u;
      }
    const AdTransport tr = ad_transport(bundle, matrix_exp(w));
    const Matrix& t = tr.t;
    worst = std::max(worst, tr.h_leak);
    worst = std::max(worst, (t.transpose() * g * t - g).cwiseAbs().maxCoeff());
    worst = std::max(worst, (t * phi - phi * t).cwiseAbs().maxCoeff());
    worst = std::max(worst, (bundle.contact.eta.transpose() * t -
                             bundle.contact.eta.transpose())
                                .cwiseAbs()
                                .maxCoeff());
    worst = std::max(worst, (t * bundle.contact.xi - bundle.contact.xi).cwiseAbs().maxCoeff());
  }
  return worst;
}

Report verify_model(const ModelSpec& spec, const Tolerances& tol, uint64_t seed, ExecPolicy pol) {
  Report rep;
  rep.family_label = family_space_label(spec.family, spec.n);
  rep.n = spec.n;
  rep.alpha = spec.alpha;
  rep.seed = seed;
  auto add = [&](const std::string& name, double value, Direction dir = Direction::Below) {
    rep.add(name, value, tol.get(name), dir);
  };

  ModelBundle bundle;
  try {
    bundle = build_model(spec);
  } catch (const std::exception& e) {
    rep.errors.emplace_back(std::string("build: ") + e.what());
    rep.finalize();
    return rep;
  }
  const ReductiveDecomposition& d = bundle.decomposition;
  const ContactStructureAtO& s = bundle.contact;

  add("structure_constants", d.c.reconstruction_residual);
  add("jacobi", jacobi_residual(d.c, pol));
  add("gram_condition", d.gram_condition);
  const DecompositionResiduals dr = decomposition_residuals(d);
  add("decomp_reductive", dr.reductive_hm);
  add("decomp_hbar_closed", dr.hbar_closed);
  add("decomp_hbar_b", dr.hbar_b);
  add("decomp_bb_hbar", dr.bb_hbar);
  add("decomp_bb_m_xi", dr.bb_m_xi);
  const ContactResiduals cr = verify_contact_metric(s, d);
  add("contact_phi_square", cr.phi_square);
  add("contact_metric_compat", cr.metric_compat);
  add("contact_deta", cr.deta);
  add("contact_eta_dual", cr.eta_dual);
  add("contact_phi_xi", cr.phi_xi);

  HOperator h;
  try {
    h = compute_h(s, d);
  } catch (const std::exception& e) {
    rep.errors.emplace_back(std::string("h extraction: ") + e.what());
    rep.finalize();
    return rep;
  }
  add("h_trace", h.trace_abs);
  add("h_g_symmetric", h.g_sym_residual);
  add("h_xi_kernel", h.xi_kernel_residual);
  add("h_phi_anticommute", h.phi_anticommute);
  add("h_eigen_pattern", h.pattern_residual);

  ConnectionAtO conn;
  TrilinearMap curv;
  try {
    conn = levi_civita_connection(d, s.metric);
    curv = levi_civita_curvature(conn, d);
  } catch (const std::exception& e) {
    rep.errors.emplace_back(std::string("curvature: ") + e.what());
    rep.finalize();
    return rep;
  }
  add("lc_torsion", torsion_residual(conn, d));
  add("lc_metricity", metricity_residual(conn, d, s.metric));
  {
    // Λ(X)ξ = −A(X,ξ) = −(φX + φhX)
    double worst = 0.0;
    const int dm = d.dim_m();
    for (int i = 0; i < dm; ++i) {
      const Vector lhs = conn.Lambda[static_cast<size_t>(i)] * s.xi;
      const Vector rhs = -(s.phi.col(i) + s.phi * h.h.col(i));
      worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
    }
    add("lc_xi_deviation", worst);
  }
  const CurvatureSymmetryResiduals cs = curvature_symmetry_residuals(curv, s.metric.gram);
  add("curv_antisym_xy", cs.antisym_xy);
  add("curv_antisym_zw", cs.antisym_zw);
  add("curv_bianchi", cs.bianchi);

  KappaMu km = fit_kappa_mu(curv, s, h);
  bundle.kappa_mu = km;
  rep.sasakian = km.sasakian;
  rep.kappa = km.kappa;
  rep.mu = km.mu;
  rep.lambda = km.lambda;
  add("kappa_mu_fit", km.fit_residual);
  add("kappa_le_one", std::max(km.kappa - 1.0, 0.0));
  add("kappa_lambda_consistency",
      std::fabs(km.kappa - (1.0 - km.lambda * km.lambda)));
  add("lambda_closed_form", std::fabs(km.lambda - closed_form_lambda(spec)));

  double invariant = 0.0;
  if (!km.sasakian) {
    invariant = boeckx_invariant(km);
    rep.boeckx_fit = invariant;
    try {
      rep.boeckx_closed = closed_form_invariant(spec);
      add("boeckx_match", std::fabs(invariant - *rep.boeckx_closed));
    } catch (const std::exception& e) {
      rep.errors.emplace_back(std::string("closed form: ") + e.what());
    }
    const TrilinearMap disp = kmu_curvature_eval(km, s, h);
    add("curvature_display_cross", max_abs_diff(curv, disp, pol));
  }
  add("eta_parallel", eta_parallel_residual(conn, s, h, d));

  {
    double da_ax = 0.0, da_inv = 0.0, da_h = 0.0, da_kmf = 0.0;
    for (const double a : {0.5, 2.0, 7.0}) {
      try {
        const ContactStructureAtO s2 = d_homothetic_structure(s, a);
        da_ax = std::max(da_ax, verify_contact_metric(s2, d).max());
        const HOperator h2 = compute_h(s2, d);
        da_h = std::max(da_h, (h2.h - h.h / a).cwiseAbs().maxCoeff());
        const ConnectionAtO conn2 = levi_civita_connection(d, s2.metric);
        const TrilinearMap curv2 = levi_civita_curvature(conn2, d);
        const KappaMu fitted = fit_kappa_mu(curv2, s2, h2);
        const KappaMu formula = d_homothetic(km, a);
        double diff = std::fabs(fitted.kappa - formula.kappa);
        if (!km.sasakian) {
          diff = std::max(diff, std::fabs(fitted.mu - formula.mu));
          da_inv = std::max(da_inv, std::fabs(boeckx_invariant(fitted) - invariant));
        }
        da_kmf = std::max(da_kmf, diff);
      } catch (const std::exception& e) {
        rep.errors.emplace_back(std::string("deformation probe: ") + e.what());
      }
    }
    add("da_axioms", da_ax);
    add("da_h_scaling", da_h);
    add("da_kappa_mu_formula", da_kmf);
    if (!km.sasakian) add("da_invariant", da_inv);
  }
  try {
    add("ad_invariance", ad_invariance_residual(bundle, 10, seed));
  } catch (const std::exception& e) {
    rep.errors.emplace_back(std::string("ad invariance: ") + e.what());
  }

  if (!km.sasakian) {
    try {
      const BaseSpace base = base_space(d, s, h);
      add("base_xi_leak", base.xi_leak);
      add("base_lts_axioms", lts_axiom_residuals(base.lts, seed, pol).max());
      {
        const TrilinearMap formula = base_curvature_formula(km, s, h);
        TrilinearMap rbar = base.lts.t;
        for (auto& c : rbar.coeff) c = -c;
        add("base_curvature_cross", max_abs_diff(rbar, formula, pol));
      }
      const TauFixed tf = tau_and_fixed_subsystem(base);
      add("tau_involution", tf.involution);
      add("tau_automorphism", tf.automorphism);
      add("rbar_plus_scalar",
          std::fabs(tf.rbar_scalar - (2.0 - km.mu + 2.0 * km.lambda)));
      add("rbar_plus_residual", tf.rbar_residual);

      const StandardStructure std_struct = standard_structure_solve(km, s, h);
      rep.standard_kind =
          std_struct.kind == OperatorKind::Complex ? "complex" : "para-complex";
      rep.standard_a = std_struct.a;
      add("standard_square", std_struct.op.square_residual());
      const InvarianceResiduals ir = invariance_residuals(base.lts, std_struct.op);
      add("standard_invariant", ir.invariant);
      add("standard_twisted", ir.twisted);
      add("tau_anticommute", tau_anticommute_residual(base, std_struct.op));
      const double wlo =
          invariance_residuals(base.lts,
                               scaled_structure(base, std_struct.kind, 0.9 * std_struct.a))
              .invariant;
      const double whi =
          invariance_residuals(base.lts,
                               scaled_structure(base, std_struct.kind, 1.1 * std_struct.a))
              .invariant;
      add("standard_uniqueness_low", wlo, Direction::Above);
      add("standard_uniqueness_high", whi, Direction::Above);

      const JordanExtension jx = jordan_extension(base, std_struct.op, seed, pol);
      add("jordan_off_subspace", jx.off_subspace);
      add("jordan_jt1", jx.jt1);
      add("jordan_jt2", jx.jt2);
      add("jordan_rt", jx.rt_residual);
      add("jordan_scalar_match",
          std::fabs(jx.scalar_fit - 0.5 * (km.mu - 2.0 - 2.0 * km.lambda)));
      add("jordan_scalar_residual", jx.scalar_residual);

      rep.base_label = base_space_label(classify_base(invariant), spec.n);
    } catch (const std::exception& e) {
      rep.errors.emplace_back(std::string("base stage: ") + e.what());
    }
  }

  rep.finalize();
  return rep;
}

}  // namespace kmu
