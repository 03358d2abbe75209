#pragma once

#include "kmu/liecore.hpp"

namespace kmu {

// Reductive decomposition g = h ⊕ m with m = ℝξ ⊕ p ⊕ q.
// Full-basis order: h-block, ξ, p-block, q-block.
// m-coordinates: index 0 = ξ, 1..n = p, n+1..2n = q.
struct ReductiveDecomposition {
  OrderedBasis full;
  int dim_h = 0;
  int n = 0;
  StructureConstants c;  // of the full basis
  double gram_condition = 0.0;

  int dim_m() const { return 2 * n + 1; }
  int dim_full() const { return dim_h + dim_m(); }

  // cached bracket tables
  std::vector<double> bmm_m;  // dm^3: m-part of [E_i, E_j], i,j m-indices
  std::vector<double> bmm_h;  // dm^2 * dh: h-part of [E_i, E_j]
  std::vector<double> bhm;    // dh * dm^2: m-part of [H_a, E_i]
  double reductivity_residual = 0.0;  // h-part of [h, m]

  const double* mm_m(int i, int j) const {
    return &bmm_m[static_cast<size_t>(i * dim_m() + j) * dim_m()];
  }
  const double* mm_h(int i, int j) const {
    return &bmm_h[static_cast<size_t>(i * dim_m() + j) * dim_h];
  }
  const double* hm(int a, int i) const {
    return &bhm[static_cast<size_t>(a * dim_m() + i) * dim_m()];
  }

  // [x, y] split into h-part (size dim_h) and m-part (size dim_m) for m-vectors x, y
  void bracket_m(const Vector& x, const Vector& y, Vector& h_out, Vector& m_out) const;
  // [h-vector, m-vector]_m
  Vector bracket_hm(const Vector& h, const Vector& z) const;
  Matrix adjoint_h(const Vector& h) const;  // operator z -> [h, z]_m on m
};

ReductiveDecomposition make_decomposition(const OrderedBasis& h, const Matrix& xi,
                                          const OrderedBasis& p, const OrderedBasis& q,
                                          double tol = span_tolerance());

struct DecompositionResiduals {
  double reductive_hm = 0.0;  // [h,m] ⊆ m
  double hbar_closed = 0.0;   // [h̄,h̄] ⊆ h̄
  double hbar_b = 0.0;        // [h̄,b] ⊆ b
  double bb_hbar = 0.0;       // [b,b] ⊆ h̄
  double bb_m_xi = 0.0;       // [X,Y]_m ∈ ℝξ for X,Y ∈ b
  double max() const;
};

DecompositionResiduals decomposition_residuals(const ReductiveDecomposition& d);

// -[X,Y]_m
Vector canonical_torsion(const ReductiveDecomposition& d, const Vector& x, const Vector& y);

// -[[X,Y]_h, Z]_m
Vector canonical_curvature(const ReductiveDecomposition& d, const Vector& x, const Vector& y,
                           const Vector& z);

// -[[X,Y]_h̄, Z] with h̄ = h ⊕ ℝξ; inputs must have no ξ-component.
Vector canonical_curvature_symmetric_base(const ReductiveDecomposition& d, const Vector& x,
                                          const Vector& y, const Vector& z,
                                          double tol = span_tolerance());

struct MetricAtO {
  Matrix gram;  // on m, in the m-basis
  double min_eigenvalue() const;
};

// Connection function at the base point: Lambda[i] is the matrix of Λ(E_i)
// acting on m-coordinates (column j = Λ(E_i)E_j).
struct ConnectionAtO {
  int dim = 0;
  std::vector<Matrix> Lambda;

  Matrix op(const Vector& x) const;                 // Λ(x)
  Vector gamma(const Vector& x, const Vector& y) const;  // Λ(x)y
};

// Λ(X)Y = ½[X,Y]_m + U(X,Y), 2 g(U(X,Y),Z) = g([Z,X]_m,Y) + g(X,[Z,Y]_m).
ConnectionAtO levi_civita_connection(const ReductiveDecomposition& d, const MetricAtO& g);

// Difference tensor A = (canonical connection) − (Levi-Civita) evaluated at
// the base point; the canonical connection function vanishes on m there, so
// A(x, y) = −Λ(x)y.  This is the only place the sign convention enters.
Vector connection_deviation(const ConnectionAtO& conn, const Vector& x, const Vector& y);

// R(X,Y)Z = Λ(X)Λ(Y)Z − Λ(Y)Λ(X)Z − Λ([X,Y]_m)Z − [[X,Y]_h, Z];
// entry (i,j,k,l) = coordinate l of R(E_i,E_j)E_k.
TrilinearMap levi_civita_curvature(const ConnectionAtO& conn, const ReductiveDecomposition& d);

struct CurvatureSymmetryResiduals {
  double antisym_xy = 0.0;  // R(X,Y) + R(Y,X)
  double antisym_zw = 0.0;  // g(R(X,Y)Z,W) + g(R(X,Y)W,Z)
  double bianchi = 0.0;     // R(X,Y)Z + R(Y,Z)X + R(Z,X)Y
  double max() const;
};

CurvatureSymmetryResiduals curvature_symmetry_residuals(const TrilinearMap& r, const Matrix& gram);

// torsion and metricity checks for a connection (diagnostics)
double torsion_residual(const ConnectionAtO& conn, const ReductiveDecomposition& d);
double metricity_residual(const ConnectionAtO& conn, const ReductiveDecomposition& d,
                          const MetricAtO& g);

}  // namespace kmu
