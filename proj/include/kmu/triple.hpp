#pragma once

#include "kmu/contact.hpp"

namespace kmu {

enum class TripleKind { LTS, JTS };

struct TripleSystem {
  int dim = 0;
  TrilinearMap t;
  TripleKind kind = TripleKind::LTS;

  Vector apply(const Vector& x, const Vector& y, const Vector& z) const;
};

struct LtsResiduals {
  double antisym = 0.0;     // [x,y,z] + [y,x,z]
  double cyclic = 0.0;      // [x,y,z] + [y,z,x] + [z,x,y]
  double derivation = 0.0;  // [u,v,·] acts as a derivation of the bracket
  double max() const;
};
LtsResiduals lts_axiom_residuals(const TripleSystem& ts, uint64_t seed = 1,
                                 ExecPolicy pol = default_policy());

struct JtsResiduals {
  double jt1 = 0.0;  // T(x,y,z) = T(z,y,x)
  double jt2 = 0.0;  // T(u,v)T(x,y,z) = T(T(u,v)x,y,z) − T(x,T(v,u)y,z) + T(x,y,T(u,v)z)
  double max() const;
};
JtsResiduals jts_axiom_residuals(const TripleSystem& ts, uint64_t seed = 1,
                                 ExecPolicy pol = default_policy());

// max over the axioms appropriate to ts.kind
double axiom_residual(const TripleSystem& ts, uint64_t seed = 1,
                      ExecPolicy pol = default_policy());

// [x,y,z] := T(x,y,z) − T(y,x,z)
TripleSystem lts_from_jts(const TripleSystem& ts);

enum class OperatorKind { Complex, ParaComplex };

struct StructureOperator {
  Matrix op;
  OperatorKind kind = OperatorKind::Complex;
  // |op² + id| (complex) or |op² − id| (para)
  double square_residual() const;
};

struct InvarianceResiduals {
  double invariant = 0.0;  // [x,y,Sz] − S[x,y,z]
  double straight = 0.0;   // [Sx,y,z] − [x,Sy,z]
  double twisted = 0.0;    // [Sx,y,z] + [x,Sy,z]
};
InvarianceResiduals invariance_residuals(const TripleSystem& lts, const StructureOperator& s);

// The base b = p ⊕ q of a decomposition with its restricted tensors and the
// canonical symmetric-space LTS bracket [x,y,z] = −R̄(x,y)z = [[x,y]_h̄, z].
struct BaseSpace {
  int n = 0;  // dim b = 2n
  Matrix gram;
  Matrix phi, h;
  Matrix b_plus, b_minus;  // 2n x n, g-orthonormal eigencolumns of h
  double lambda = 0.0;
  TripleSystem lts;
  double xi_leak = 0.0;  // ξ-component of [[b,b]_h̄, b]
};
BaseSpace base_space(const ReductiveDecomposition& d, const ContactStructureAtO& s,
                     const HOperator& h);

// Standard invariant (para-)complex structure on b: J = aφ on b₊ and
// ±(1/a)φ on b₋, with a determined by the Boeckx invariant.  Throws
// "no standard structure" when |I| = 1 within tolerance.
struct StandardStructure {
  OperatorKind kind = OperatorKind::Complex;
  double a = 0.0;
  StructureOperator op;  // on b
};
StandardStructure standard_structure_solve(const KappaMu& km, const ContactStructureAtO& s,
                                           const HOperator& h);
// the same operator with a replaced by a free parameter (uniqueness witnesses)
StructureOperator scaled_structure(const BaseSpace& base, OperatorKind kind, double a);

// Curvature of the base from the closed-form display (last index raised),
// as a TrilinearMap on b.  Requires κ < 1.
TrilinearMap base_curvature_formula(const KappaMu& km, const ContactStructureAtO& s,
                                    const HOperator& h);

struct TauFixed {
  double involution = 0.0;    // τ² − id
  double automorphism = 0.0;  // τ[x,y,z] − [τx,τy,τz]
  double off_subspace = 0.0;  // component of [b₊,b₊,b₊] outside b₊
  TripleSystem fixed;         // LTS on b₊ in the g-orthonormal eigenbasis
  double rbar_scalar = 0.0;   // R̄₊ = scalar · (g(y,z)x − g(x,z)y)
  double rbar_residual = 0.0;
};
// τ = h/λ
TauFixed tau_and_fixed_subsystem(const BaseSpace& base);
double tau_anticommute_residual(const BaseSpace& base, const StructureOperator& s);

struct JordanExtension {
  TripleSystem jts;            // on b₊ in the g-orthonormal eigenbasis
  double off_subspace = 0.0;   // component of T(b₊,b₊,b₊) outside b₊
  double jt1 = 0.0, jt2 = 0.0;
  double rt_residual = 0.0;    // lts_from_jts(T) vs the fixed-subsystem bracket
  double scalar_fit = 0.0;     // coefficient of g(y,z)x − g(x,z)y + g(x,y)z
  double scalar_residual = 0.0;
};
// Structure tensor T(X,Y)Z = −½(R̄(X,Y)Z − J R̄(X, J⁻¹Y)Z) restricted to b₊.
JordanExtension jordan_extension(const BaseSpace& base, const StructureOperator& s,
                                 uint64_t seed = 1, ExecPolicy pol = default_policy());

enum class BaseClass {
  ComplexificationSphere,      // I > 1
  ParaComplexificationSphere,  // −1 < I < 1
  ComplexificationHyperbolic,  // I < −1
};
// Throws "unclassified boundary" at |I| = 1.
BaseClass classify_base(double invariant);
// n <= 0 renders the symbolic label with "n"
std::string base_space_label(BaseClass c, int n = 0);
std::string model_space_label(BaseClass c, int n = 0);
std::string type_label(BaseClass c, int n = 0);

// toy systems on ℝ^dim with the standard inner product
TripleSystem sphere_lts(int dim);        // [x,y,z] = −(⟨y,z⟩x − ⟨x,z⟩y)
TripleSystem sphere_jts(int dim);        // T(x,y)z = ½(⟨x,z⟩y − ⟨x,y⟩z − ⟨y,z⟩x)
TripleSystem hyperbolic_jts(int dim);    // −T
TripleSystem scale(const TripleSystem& ts, double factor);

}  // namespace kmu
