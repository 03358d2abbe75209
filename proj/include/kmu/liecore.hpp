#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "kmu/kernels.hpp"

namespace kmu {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Matrix bracket(const Matrix& a, const Matrix& b);

// Default tolerance for membership / closure checks.  Overridable via the
// KMU_TOL environment variable (read once per process).
double span_tolerance();

struct OrderedBasis {
  std::vector<Matrix> elements;
  std::vector<std::string> labels;

  int size() const { return static_cast<int>(elements.size()); }
  int matrix_dim() const { return elements.empty() ? 0 : static_cast<int>(elements[0].rows()); }
  void push(Matrix m, std::string label) {
    elements.push_back(std::move(m));
    labels.push_back(std::move(label));
  }
  OrderedBasis concat(const OrderedBasis& other) const;
};

// Basis of so(p,q) = { X : X^T S + S X = 0 }, S = diag(-1 x q, +1 x p),
// i.e. the q negative signs come first.  Elements E_ij = e_i e_j^T - s_i s_j e_j e_i^T
// for i < j, ordered lexicographically.
OrderedBasis so_basis(int p, int q);
Vector so_signature(int p, int q);  // diagonal of S

// Least-squares coordinates of matrices in the flattened span of a basis.
class SpanSolver {
 public:
  explicit SpanSolver(const OrderedBasis& basis);
  // Throws Error("not in span") when the residual exceeds tol.
  Vector coordinates(const Matrix& x, double tol = span_tolerance()) const;
  double residual(const Matrix& x) const;
  double gram_condition() const { return gram_cond_; }
  int size() const { return d_; }

 private:
  int d_ = 0;
  long long rows_ = 0;
  Eigen::MatrixXd flat_;
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr_;
  double gram_cond_ = 0.0;
};

Vector coordinates(const Matrix& x, const OrderedBasis& basis, double tol = span_tolerance());

struct StructureConstants {
  int dim = 0;
  std::vector<double> c;  // flat (i*d + j)*d + k, antisymmetric in (i,j) exactly
  double reconstruction_residual = 0.0;

  double at(int i, int j, int k) const {
    return c[static_cast<size_t>(i * dim + j) * dim + k];
  }
  // coordinate bracket: out_k = sum_ij x_i y_j c(i,j,k)
  Vector apply(const Vector& x, const Vector& y) const;
};

// Throws Error("not a subalgebra") when some bracket leaves the span.
StructureConstants structure_constants(const OrderedBasis& basis, double tol = span_tolerance());

double jacobi_residual(const StructureConstants& sc, ExecPolicy pol = default_policy());

}  // namespace kmu
