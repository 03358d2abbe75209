#pragma once

#include <cstdint>
#include <vector>

namespace kmu {

enum class ExecPolicy { Serial, Parallel };

// Process-wide default used when callers do not pass a policy explicitly.
ExecPolicy default_policy();
void set_default_policy(ExecPolicy p);

// Trilinear coefficient table t(i,j,k) -> vector, stored flat as
// ((i*d + j)*d + k)*d + l.  Doubles as the storage for structure
// constants (antisymmetric in i,j) and curvature tensors.
struct TrilinearMap {
  int dim = 0;
  std::vector<double> coeff;

  TrilinearMap() = default;
  explicit TrilinearMap(int d) : dim(d), coeff(static_cast<size_t>(d) * d * d * d, 0.0) {}

  double& at(int i, int j, int k, int l) {
    return coeff[static_cast<size_t>(((i * dim + j) * dim + k)) * dim + l];
  }
  double at(int i, int j, int k, int l) const {
    return coeff[static_cast<size_t>(((i * dim + j) * dim + k)) * dim + l];
  }
  const double* row(int i, int j, int k) const {
    return &coeff[static_cast<size_t>(((i * dim + j) * dim + k)) * dim];
  }
  double* row(int i, int j, int k) {
    return &coeff[static_cast<size_t>(((i * dim + j) * dim + k)) * dim];
  }
};

// max |a - b| over all d^4 entries.
double max_abs_diff(const TrilinearMap& a, const TrilinearMap& b, ExecPolicy pol = default_policy());

// max |entry|.
double max_abs(const TrilinearMap& a, ExecPolicy pol = default_policy());

// Structure constants c(i,j,-) as flat d^3 array, antisymmetric in (i,j).
// Jacobi scan: max over i<j<k of the sup-norm of the cyclic sum
//   [[Ei,Ej],Ek] + [[Ej,Ek],Ei] + [[Ek,Ei],Ej]
// expressed through c.  Total antisymmetry of the cyclic sum makes the
// restriction to i<j<k exhaustive.
double jacobi_scan(const std::vector<double>& c, int d, ExecPolicy pol = default_policy());

// Deterministic index-tuple sampler: k-tuples over [0, d), fixed stream
// for a given (seed, d, k, count) independent of policy.
std::vector<int> sample_tuples(int d, int k, int count, uint64_t seed);

// Derivation-law scan for a trilinear bracket t:
//   D(u,v).t(x,y,z) = t(D(u,v)x, y, z) + t(x, D(u,v)y, z) + t(x, y, D(u,v)z)
// with D(u,v) = t(u,v,.).  Exhaustive over all 5-tuples when d <= max_exhaustive_dim,
// otherwise scans `samples` tuples drawn with `seed`.
double derivation_scan(const TrilinearMap& t, uint64_t seed, ExecPolicy pol = default_policy());

// Jordan-law scan: residual of
//   T(u,v)T(x,y,z) = T(T(u,v)x,y,z) - T(x,T(v,u)y,z) + T(x,y,T(u,v)z)
// with T(u,v)x = t(u,v,x).  Same exhaustive/sampled rule as derivation_scan.
double jordan_law_scan(const TrilinearMap& t, uint64_t seed, ExecPolicy pol = default_policy());

constexpr int max_exhaustive_dim = 8;
constexpr int scan_sample_count = 20000;

}  // namespace kmu
