#pragma once

#include <random>

#include "kmu/report.hpp"
#include "kmu/triple.hpp"

namespace kmu {

enum class Family { SphereType, HyperbolicType, ParaType };

std::string family_flag(Family f);                 // so_n_plus_2 / so_n_2 / so_n_plus_1_1
std::string family_space_label(Family f, int n);   // SO(n+2)/SO(n) etc.
BaseClass family_base_class(Family f);
Family family_for_class(BaseClass c);

struct ModelSpec {
  Family family = Family::SphereType;
  int n = 1;
  double alpha = 1.0;
};

void validate(const ModelSpec& spec);  // throws on n < 1 or alpha <= 0
bool is_sasakian(const ModelSpec& spec);

struct ModelBundle {
  ModelSpec spec;
  ReductiveDecomposition decomposition;
  ContactStructureAtO contact;
  StructureOperator base_structure;  // built-in J_i or I on b (coordinates p then q)
  Matrix base_metric;                // family pairing ⟨v,u⟩ ± ⟨w,z⟩ on b
  KappaMu kappa_mu;                  // filled by verification
};

ModelBundle build_model(const ModelSpec& spec);

// Theorem invariant formulas; α and 1/α give the same value in families 1–2.
double closed_form_invariant(const ModelSpec& spec);  // throws Sasakian marker at α = 1, fam 1–2
double closed_form_lambda(const ModelSpec& spec);
double alpha_for_invariant(Family f, double invariant);
double standard_a_closed_form(const ModelSpec& spec);

// deterministic helpers
Matrix matrix_exp(const Matrix& a);
double uniform_pm1(std::mt19937_64& rng);  // uniform on [−1, 1)

struct AdTransport {
  Matrix t;           // induced map on m-coordinates
  double h_leak;      // component of Ad(a)(m) outside m
};
AdTransport ad_transport(const ModelBundle& bundle, const Matrix& group_element);
// max deviation of g, φ, η, ξ under `samples` random rotations exp(W), W ∈ so(n)
double ad_invariance_residual(const ModelBundle& bundle, int samples, uint64_t seed);

Report verify_model(const ModelSpec& spec, const Tolerances& tol, uint64_t seed = 1,
                    ExecPolicy pol = default_policy());

}  // namespace kmu
