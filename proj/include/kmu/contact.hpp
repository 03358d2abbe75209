#pragma once

#include "kmu/homspace.hpp"

namespace kmu {

// Invariant contact metric data at the base point, in m-coordinates.
struct ContactStructureAtO {
  Matrix phi;      // (1,1) tensor on m
  Vector xi;       // Reeb vector (m-coordinates)
  Vector eta;      // dual covector, eta(x) = eta . x
  MetricAtO metric;
};

struct ContactResiduals {
  double phi_square = 0.0;     // φ² = −id + η ⊗ ξ
  double metric_compat = 0.0;  // g(φX,φY) = g(X,Y) − η(X)η(Y)
  double deta = 0.0;           // 2 dη(X,Y) = 2 g(X,φY), dη via −η([X,Y]_m)
  double eta_dual = 0.0;       // η = g(·,ξ)
  double phi_xi = 0.0;         // φξ = 0
  double max() const;
};

ContactResiduals verify_contact_metric(const ContactStructureAtO& s,
                                       const ReductiveDecomposition& d);

constexpr double sasakian_cutoff = 1e-7;

struct HOperator {
  Matrix h;                  // ½ (Lie_ξ φ) as operator on m
  double lambda = 0.0;       // largest |eigenvalue|
  bool k_contact = false;    // λ ≤ sasakian_cutoff
  Matrix b_plus, b_minus;    // g-orthonormal eigencolumns for +λ / −λ (m-coords), n each
  double pattern_residual = 0.0;  // eigenvalue deviation from {−λ, 0, +λ}
  double trace_abs = 0.0;
  double g_sym_residual = 0.0;      // g(hX,Y) = g(X,hY)
  double xi_kernel_residual = 0.0;  // hξ = 0
  double phi_anticommute = 0.0;     // φh + hφ = 0
};

// h = ½ L_ξ φ via h(Y) = ½([ξ, φY]_m − φ[ξ,Y]_m).  Throws
// "not a (kappa,mu) candidate" when the spectrum does not split as
// {0, +λ x n, −λ x n}.
HOperator compute_h(const ContactStructureAtO& s, const ReductiveDecomposition& d);

struct KappaMu {
  double kappa = 0.0;
  double mu = 0.0;
  double lambda = 0.0;
  double fit_residual = 0.0;
  bool sasakian = false;
};

// Fits R(X,Y)ξ = κ(η(Y)X − η(X)Y) + μ(η(Y)hX − η(X)hY) using the h
// eigenvectors, then reports the all-pairs sup residual.  Degenerate h
// (λ ≤ cutoff) returns the Sasakian marker κ = 1, μ = 0.
KappaMu fit_kappa_mu(const TrilinearMap& r, const ContactStructureAtO& s, const HOperator& h);

// (1 − μ/2) / √(1 − κ); requires κ < 1.
double boeckx_invariant(const KappaMu& km);

// κ̄ = (κ + a² − 1)/a², μ̄ = (μ + 2a − 2)/a
KappaMu d_homothetic(const KappaMu& km, double a);
// η̄ = aη, ξ̄ = ξ/a, φ̄ = φ, ḡ = ag + a(a−1) η⊗η
ContactStructureAtO d_homothetic_structure(const ContactStructureAtO& s, double a);

// Curvature tensor of a (κ,μ)-space from the closed-form display, returned
// with the last index raised (same layout as levi_civita_curvature).
// Requires κ < 1.
TrilinearMap kmu_curvature_eval(const KappaMu& km, const ContactStructureAtO& s,
                                const HOperator& h);

// max over X,Y,Z ⊥ ξ of |g((∇_X h)Y, Z)| at the base point, evaluated through
// A = ∇̃ − ∇:  (∇_X h)Y = h A(X,Y) − A(X,hY) since ∇̃h = 0.
double eta_parallel_residual(const ConnectionAtO& conn, const ContactStructureAtO& s,
                             const HOperator& h, const ReductiveDecomposition& d);

// Boeckx invariant of the unit tangent sphere bundle of a space of constant
// curvature c: (1 + c)/|1 − c|.  Requires c ≠ 1.
double boeckx_t1m(double c);

}  // namespace kmu
