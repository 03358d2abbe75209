#include "kmu/kernels.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <random>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace kmu {

namespace {
std::atomic<ExecPolicy> g_policy{
#ifdef _OPENMP
    ExecPolicy::Parallel
#else
    ExecPolicy::Serial
#endif
};
}  // namespace

ExecPolicy default_policy() { return g_policy.load(); }
void set_default_policy(ExecPolicy p) { g_policy.store(p); }

double max_abs_diff(const TrilinearMap& a, const TrilinearMap& b, ExecPolicy pol) {
  const size_t n = a.coeff.size();
  double m = 0.0;
  if (pol == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for reduction(max : m) schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      m = std::max(m, std::fabs(a.coeff[i] - b.coeff[i]));
  } else {
    for (size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a.coeff[i] - b.coeff[i]));
  }
  return m;
}

double max_abs(const TrilinearMap& a, ExecPolicy pol) {
  const size_t n = a.coeff.size();
  double m = 0.0;
  if (pol == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for reduction(max : m) schedule(static)
#endif
    for (long long i = 0; i < static_cast<long long>(n); ++i)
      m = std::max(m, std::fabs(a.coeff[i]));
  } else {
    for (size_t i = 0; i < n; ++i) m = std::max(m, std::fabs(a.coeff[i]));
  }
  return m;
}

namespace {

inline double jacobi_triple(const std::vector<double>& c, int d, int i, int j, int k) {
  // max_l | sum_a c(i,j,a)c(a,k,l) + c(j,k,a)c(a,i,l) + c(k,i,a)c(a,j,l) |
  double worst = 0.0;
  const double* cij = &c[static_cast<size_t>(i * d + j) * d];
  const double* cjk = &c[static_cast<size_t>(j * d + k) * d];
  const double* cki = &c[static_cast<size_t>(k * d + i) * d];
  for (int l = 0; l < d; ++l) {
    double s = 0.0;
    for (int a = 0; a < d; ++a) {
      const double* ca = &c[static_cast<size_t>(a) * d * d];
      s += cij[a] * ca[k * d + l] + cjk[a] * ca[i * d + l] + cki[a] * ca[j * d + l];
    }
    worst = std::max(worst, std::fabs(s));
  }
  return worst;
}

}  // namespace

double jacobi_scan(const std::vector<double>& c, int d, ExecPolicy pol) {
  std::vector<std::pair<int, int>> pairs;
  pairs.reserve(static_cast<size_t>(d) * (d - 1) / 2);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) pairs.emplace_back(i, j);

  double m = 0.0;
  const long long np = static_cast<long long>(pairs.size());
  if (pol == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for reduction(max : m) schedule(dynamic, 4)
#endif
    for (long long t = 0; t < np; ++t) {
      const auto [i, j] = pairs[static_cast<size_t>(t)];
      for (int k = j + 1; k < d; ++k) m = std::max(m, jacobi_triple(c, d, i, j, k));
    }
  } else {
    for (long long t = 0; t < np; ++t) {
      const auto [i, j] = pairs[static_cast<size_t>(t)];
      for (int k = j + 1; k < d; ++k) m = std::max(m, jacobi_triple(c, d, i, j, k));
    }
  }
  return m;
}

std::vector<int> sample_tuples(int d, int k, int count, uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<int> out(static_cast<size_t>(k) * count);
  for (auto& v : out) v = static_cast<int>(rng() % static_cast<uint64_t>(d));
  return out;
}

namespace {

// residual of the derivation law at one 5-tuple of basis indices
inline double derivation_tuple(const TrilinearMap& t, int u, int v, int x, int y, int z) {
  const int d = t.dim;
  const double* txyz = t.row(x, y, z);
  double worst = 0.0;
  // lhs_l = sum_a t(u,v,a,l) t(x,y,z)_a
  // rhs_l = sum_a t(u,v,x,a) t(a,y,z,l) + t(u,v,y,a) t(x,a,z,l) + t(u,v,z,a) t(x,y,a,l)
  const double* dx = t.row(u, v, x);
  const double* dy = t.row(u, v, y);
  const double* dz = t.row(u, v, z);
  for (int l = 0; l < d; ++l) {
    double lhs = 0.0, rhs = 0.0;
    for (int a = 0; a < d; ++a) {
      lhs += t.at(u, v, a, l) * txyz[a];
      rhs += dx[a] * t.at(a, y, z, l) + dy[a] * t.at(x, a, z, l) + dz[a] * t.at(x, y, a, l);
    }
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

// residual of the Jordan law at one 5-tuple
inline double jordan_tuple(const TrilinearMap& t, int u, int v, int x, int y, int z) {
  const int d = t.dim;
  const double* txyz = t.row(x, y, z);
  const double* dx = t.row(u, v, x);
  const double* dy = t.row(v, u, y);  // middle slot uses T(v,u)
  const double* dz = t.row(u, v, z);
  double worst = 0.0;
  for (int l = 0; l < d; ++l) {
    double lhs = 0.0, rhs = 0.0;
    for (int a = 0; a < d; ++a) {
      lhs += t.at(u, v, a, l) * txyz[a];
      rhs += dx[a] * t.at(a, y, z, l) - dy[a] * t.at(x, a, z, l) + dz[a] * t.at(x, y, a, l);
    }
    worst = std::max(worst, std::fabs(lhs - rhs));
  }
  return worst;
}

template <typename TupleFn>
double five_tuple_scan(const TrilinearMap& t, uint64_t seed, ExecPolicy pol, TupleFn fn) {
  const int d = t.dim;
  double m = 0.0;
  if (d <= max_exhaustive_dim) {
    const long long npairs = static_cast<long long>(d) * d;
    if (pol == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for reduction(max : m) schedule(dynamic, 1)
#endif
      for (long long uv = 0; uv < npairs; ++uv) {
        const int u = static_cast<int>(uv / d), v = static_cast<int>(uv % d);
        for (int x = 0; x < d; ++x)
          for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z) m = std::max(m, fn(t, u, v, x, y, z));
      }
    } else {
      for (long long uv = 0; uv < npairs; ++uv) {
        const int u = static_cast<int>(uv / d), v = static_cast<int>(uv % d);
        for (int x = 0; x < d; ++x)
          for (int y = 0; y < d; ++y)
            for (int z = 0; z < d; ++z) m = std::max(m, fn(t, u, v, x, y, z));
      }
    }
    return m;
  }
  const auto tuples = sample_tuples(d, 5, scan_sample_count, seed);
  const long long nt = scan_sample_count;
  if (pol == ExecPolicy::Parallel) {
#ifdef _OPENMP
#pragma omp parallel for reduction(max : m) schedule(static)
#endif
    for (long long i = 0; i < nt; ++i) {
      const int* q = &tuples[static_cast<size_t>(i) * 5];
      m = std::max(m, fn(t, q[0], q[1], q[2], q[3], q[4]));
    }
  } else {
    for (long long i = 0; i < nt; ++i) {
      const int* q = &tuples[static_cast<size_t>(i) * 5];
      m = std::max(m, fn(t, q[0], q[1], q[2], q[3], q[4]));
    }
  }
  return m;
}

}  // namespace

double derivation_scan(const TrilinearMap& t, uint64_t seed, ExecPolicy pol) {
  return five_tuple_scan(t, seed, pol,
                         [](const TrilinearMap& tt, int u, int v, int x, int y, int z) {
                           return derivation_tuple(tt, u, v, x, y, z);
                         });
}

double jordan_law_scan(const TrilinearMap& t, uint64_t seed, ExecPolicy pol) {
  return five_tuple_scan(t, seed, pol,
                         [](const TrilinearMap& tt, int u, int v, int x, int y, int z) {
                           return jordan_tuple(tt, u, v, x, y, z);
                         });
}

}  // namespace kmu
