#ifndef ROPEALG_LINALG_HPP
#define ROPEALG_LINALG_HPP

#include <initializer_list>
#include <span>
#include <vector>

#include "ropealg/errors.hpp"
#include "ropealg/tolerances.hpp"

namespace ropealg {

// Dense real matrix, row-major. Sized for desk-scale work (d <= 128); no
// sparse storage even for block-diagonal operands.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols);  // zero-filled

  static Matrix identity(int n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_ && rows_ > 0; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  bool all_finite() const;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator*(double s, const Matrix& a);
bool operator==(const Matrix& a, const Matrix& b);

Matrix transpose(const Matrix& a);
double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);
double one_norm(const Matrix& a);  // max column sum

// LU with partial pivoting; the workhorse behind det(), solve() and inverse().
struct LuFactors {
  Matrix lu;               // packed L (unit diagonal) and U
  std::vector<int> pivot;  // row swaps applied, in order
  int sign = 1;            // permutation parity
  bool singular = false;
};

LuFactors lu_factor(Matrix a);
double determinant(const Matrix& a);
Matrix lu_solve(const LuFactors& f, const Matrix& rhs);
Matrix solve(const Matrix& a, const Matrix& rhs);
Matrix inverse(const Matrix& a);

// Thin SVD via one-sided Jacobi. Singular values sorted descending. For an
// m x n input with m >= n, a == u * diag(sigma) * v^T with u m x n, v n x n.
struct SvdResult {
  std::vector<double> singular_values;
  Matrix u;
  Matrix v;
};

SvdResult jacobi_svd(const Matrix& a);

// Rank with the relative cutoff sigma_max * max(m, n) * rel_cutoff.
int numerical_rank(const Matrix& a, double rel_cutoff = default_tolerances().rank_relative_cutoff);

struct LeastSquaresResult {
  std::vector<double> solution;
  double residual_norm = 0.0;
  int rank = 0;
};

// Minimum-norm least squares via the SVD pseudo-inverse.
LeastSquaresResult solve_least_squares(const Matrix& a, std::span<const double> b,
                                       double rel_cutoff = default_tolerances().rank_relative_cutoff);

// exp(A) by scaling-and-squaring: scale so ||A||_1 / 2^s <= 0.5, sum 13 Taylor
// terms, square s times. Trusted oracle for every fast path in the library.
Matrix mat_exp_dense(const Matrix& a);

// [[cos a, -sin a], [sin a, cos a]] == exp(a * J), J = [[0,-1],[1,0]].
Matrix rot2_block(double angle);

// AB - BA.
Matrix commutator(const Matrix& a, const Matrix& b);

struct StructureResiduals {
  double skew_residual = 0.0;  // max-abs of A + A^T
  double orth_residual = 0.0;  // ||A^T A - I||_F
  double det_residual = 0.0;   // |det(A) - 1|
};

StructureResiduals structure_residuals(const Matrix& a);

// Direct sum of square blocks, in order.
Matrix block_diag(std::span<const Matrix> blocks);
Matrix block_diag(std::initializer_list<Matrix> blocks);

// Validated element of so(d), d even. The diagonal is zeroed exactly on
// construction; off-diagonal skewness is checked against `tol`.
class SkewMatrix {
 public:
  static SkewMatrix checked(Matrix m, double tol = default_tolerances().skew_symmetry);
  const Matrix& matrix() const { return m_; }
  int dim() const { return m_.rows(); }

 private:
  explicit SkewMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

// Validated element of SO(d). `checked` measures the structure residuals;
// `trusted` skips them for construction-correct paths (e.g. assembling a
// direct sum of 2x2 rotation blocks), keeping those paths O(d)-O(d^2).
class RotationMatrix {
 public:
  static RotationMatrix checked(Matrix m,
                                double orth_tol = default_tolerances().orthogonality,
                                double det_tol = default_tolerances().determinant);
  static RotationMatrix trusted(Matrix m);
  const Matrix& matrix() const { return m_; }
  int dim() const { return m_.rows(); }

 private:
  explicit RotationMatrix(Matrix m) : m_(std::move(m)) {}
  Matrix m_;
};

}  // namespace ropealg

#endif  // ROPEALG_LINALG_HPP
