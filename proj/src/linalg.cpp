#include "ropealg/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <utility>

namespace ropealg {

namespace {

void require_same_shape(const Matrix& a, const Matrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw DimensionError(std::string(op) + ": shape mismatch (" + std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                         std::to_string(b.cols()) + ")");
  }
}

void require_square(const Matrix& a, const char* op) {
  if (!a.is_square()) {
    throw DimensionError(std::string(op) + ": matrix must be square, got " +
                         std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
  }
}

void require_finite(const Matrix& a, const char* op) {
  if (!a.all_finite()) {
    throw DomainError(std::string(op) + ": matrix has non-finite entries");
  }
}

}  // namespace

Matrix::Matrix(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) {
    throw DimensionError("Matrix: dimensions must be positive, got " + std::to_string(rows) +
                         "x" + std::to_string(cols));
  }
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Matrix Matrix::identity(int n) {
  Matrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const int r = static_cast<int>(rows.size());
  if (r == 0) throw DimensionError("Matrix::from_rows: empty row list");
  const int c = static_cast<int>(rows.begin()->size());
  Matrix m(r, c);
  int i = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != c) {
      throw DimensionError("Matrix::from_rows: ragged rows");
    }
    int j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

bool Matrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Matrix operator+(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "operator+");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) out.data()[i] = a.data()[i] + b.data()[i];
  return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
  require_same_shape(a, b, "operator-");
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) out.data()[i] = a.data()[i] - b.data()[i];
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) {
    throw DimensionError("operator*: inner dimensions disagree (" + std::to_string(a.cols()) +
                         " vs " + std::to_string(b.rows()) + ")");
  }
  Matrix out(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

Matrix operator*(double s, const Matrix& a) {
  Matrix out(a.rows(), a.cols());
  for (std::size_t i = 0; i < a.data().size(); ++i) out.data()[i] = s * a.data()[i];
  return out;
}

bool operator==(const Matrix& a, const Matrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::equal(a.data().begin(), a.data().end(), b.data().begin());
}

Matrix transpose(const Matrix& a) {
  Matrix out(a.cols(), a.rows());
  for (int i = 0; i < a.rows(); ++i) {
    for (int j = 0; j < a.cols(); ++j) out(j, i) = a(i, j);
  }
  return out;
}

double frobenius_norm(const Matrix& a) {
  double sum = 0.0;
  for (double v : a.data()) sum += v * v;
  return std::sqrt(sum);
}

double max_abs(const Matrix& a) {
  double m = 0.0;
  for (double v : a.data()) m = std::max(m, std::abs(v));
  return m;
}

double one_norm(const Matrix& a) {
  double best = 0.0;
  for (int j = 0; j < a.cols(); ++j) {
    double col = 0.0;
    for (int i = 0; i < a.rows(); ++i) col += std::abs(a(i, j));
    best = std::max(best, col);
  }
  return best;
}

LuFactors lu_factor(Matrix a) {
  require_square(a, "lu_factor");
  const int n = a.rows();
  LuFactors f;
  f.pivot.resize(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    double best = std::abs(a(k, k));
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        p = i;
      }
    }
    f.pivot[k] = p;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      f.sign = -f.sign;
    }
    if (a(k, k) == 0.0) {
      f.singular = true;
      continue;
    }
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= a(k, k);
      const double lik = a(i, k);
      if (lik == 0.0) continue;
      for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
    }
  }
  f.lu = std::move(a);
  return f;
}

double determinant(const Matrix& a) {
  require_square(a, "determinant");
  const LuFactors f = lu_factor(a);
  double det = f.sign;
  for (int i = 0; i < f.lu.rows(); ++i) det *= f.lu(i, i);
  return det;
}

Matrix lu_solve(const LuFactors& f, const Matrix& rhs) {
  const int n = f.lu.rows();
  if (rhs.rows() != n) throw DimensionError("lu_solve: rhs row count mismatch");
  if (f.singular) throw DomainError("lu_solve: matrix is singular");
  Matrix x = rhs;
  for (int k = 0; k < n; ++k) {
    if (f.pivot[k] != k) {
      for (int j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(f.pivot[k], j));
    }
  }
  // forward substitution (unit lower triangle)
  for (int k = 0; k < n; ++k) {
    for (int i = k + 1; i < n; ++i) {
      const double lik = f.lu(i, k);
      if (lik == 0.0) continue;
      for (int j = 0; j < x.cols(); ++j) x(i, j) -= lik * x(k, j);
    }
  }
  // back substitution
  for (int k = n - 1; k >= 0; --k) {
    const double ukk = f.lu(k, k);
    for (int j = 0; j < x.cols(); ++j) x(k, j) /= ukk;
    for (int i = 0; i < k; ++i) {
      const double uik = f.lu(i, k);
      if (uik == 0.0) continue;
      for (int j = 0; j < x.cols(); ++j) x(i, j) -= uik * x(k, j);
    }
  }
  return x;
}

Matrix solve(const Matrix& a, const Matrix& rhs) { return lu_solve(lu_factor(a), rhs); }

Matrix inverse(const Matrix& a) {
  require_square(a, "inverse");
  return solve(a, Matrix::identity(a.rows()));
}

SvdResult jacobi_svd(const Matrix& a) {
  if (a.rows() < a.cols()) {
    // Work on the transpose and swap factors back.
    SvdResult t = jacobi_svd(transpose(a));
    return SvdResult{std::move(t.singular_values), std::move(t.v), std::move(t.u)};
  }
  const int m = a.rows();
  const int n = a.cols();
  Matrix w = a;
  Matrix v = Matrix::identity(n);
  const double eps = std::numeric_limits<double>::epsilon();
  const int max_sweeps = 60;
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    bool rotated = false;
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        double alpha = 0.0, beta = 0.0, gamma = 0.0;
        for (int i = 0; i < m; ++i) {
          alpha += w(i, p) * w(i, p);
          beta += w(i, q) * w(i, q);
          gamma += w(i, p) * w(i, q);
        }
        if (std::abs(gamma) <= eps * std::sqrt(alpha * beta) || gamma == 0.0) continue;
        rotated = true;
        const double zeta = (beta - alpha) / (2.0 * gamma);
        const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = c * t;
        for (int i = 0; i < m; ++i) {
          const double wp = w(i, p), wq = w(i, q);
          w(i, p) = c * wp - s * wq;
          w(i, q) = s * wp + c * wq;
        }
        for (int i = 0; i < n; ++i) {
          const double vp = v(i, p), vq = v(i, q);
          v(i, p) = c * vp - s * vq;
          v(i, q) = s * vp + c * vq;
        }
      }
    }
    if (!rotated) break;
  }
  SvdResult out;
  out.singular_values.resize(n);
  out.u = Matrix(m, n);
  std::vector<int> order(n);
  std::vector<double> norms(n);
  for (int j = 0; j < n; ++j) {
    double s2 = 0.0;
    for (int i = 0; i < m; ++i) s2 += w(i, j) * w(i, j);
    norms[j] = std::sqrt(s2);
    order[j] = j;
  }
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return norms[x] > norms[y]; });
  Matrix v_sorted(n, n);
  for (int jj = 0; jj < n; ++jj) {
    const int j = order[jj];
    out.singular_values[jj] = norms[j];
    for (int i = 0; i < m; ++i) out.u(i, jj) = norms[j] > 0.0 ? w(i, j) / norms[j] : 0.0;
    for (int i = 0; i < n; ++i) v_sorted(i, jj) = v(i, j);
  }
  out.v = std::move(v_sorted);
  return out;
}

int numerical_rank(const Matrix& a, double rel_cutoff) {
  const SvdResult svd = jacobi_svd(a);
  if (svd.singular_values.empty()) return 0;
  const double sigma_max = svd.singular_values.front();
  const double cutoff = sigma_max * std::max(a.rows(), a.cols()) * rel_cutoff;
  int rank = 0;
  for (double s : svd.singular_values) {
    if (s > cutoff && s > 0.0) ++rank;
  }
  return rank;
}

LeastSquaresResult solve_least_squares(const Matrix& a, std::span<const double> b,
                                       double rel_cutoff) {
  if (static_cast<int>(b.size()) != a.rows()) {
    throw DimensionError("solve_least_squares: rhs length mismatch");
  }
  const SvdResult svd = jacobi_svd(a);
  const int n = a.cols();
  const double sigma_max = svd.singular_values.empty() ? 0.0 : svd.singular_values.front();
  const double cutoff = sigma_max * std::max(a.rows(), a.cols()) * rel_cutoff;
  LeastSquaresResult out;
  out.solution.assign(n, 0.0);
  for (int j = 0; j < static_cast<int>(svd.singular_values.size()); ++j) {
    const double s = svd.singular_values[j];
    if (s <= cutoff || s == 0.0) continue;
    ++out.rank;
    double ub = 0.0;
    for (int i = 0; i < a.rows(); ++i) ub += svd.u(i, j) * b[i];
    const double coef = ub / s;
    for (int i = 0; i < n; ++i) out.solution[i] += coef * svd.v(i, j);
  }
  double res = 0.0;
  for (int i = 0; i < a.rows(); ++i) {
    double ax = 0.0;
    for (int j = 0; j < n; ++j) ax += a(i, j) * out.solution[j];
    res += (ax - b[i]) * (ax - b[i]);
  }
  out.residual_norm = std::sqrt(res);
  return out;
}

Matrix mat_exp_dense(const Matrix& a) {
  require_square(a, "mat_exp_dense");
  require_finite(a, "mat_exp_dense");
  const int n = a.rows();
  const double norm = one_norm(a);
  int s = 0;
  if (norm > 0.5) {
    s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  const double scale = std::ldexp(1.0, -s);
  Matrix as = scale * a;
  Matrix term = Matrix::identity(n);
  Matrix sum = Matrix::identity(n);
  for (int k = 1; k <= 13; ++k) {
    term = (1.0 / k) * (term * as);
    sum = sum + term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

Matrix rot2_block(double angle) {
  if (!std::isfinite(angle)) throw DomainError("rot2_block: non-finite angle");
  const double c = std::cos(angle);
  const double sn = std::sin(angle);
  return Matrix::from_rows({{c, -sn}, {sn, c}});
}

Matrix commutator(const Matrix& a, const Matrix& b) {
  require_square(a, "commutator");
  require_square(b, "commutator");
  require_same_shape(a, b, "commutator");
  return a * b - b * a;
}

StructureResiduals structure_residuals(const Matrix& a) {
  require_square(a, "structure_residuals");
  StructureResiduals r;
  r.skew_residual = max_abs(a + transpose(a));
  r.orth_residual = frobenius_norm(transpose(a) * a - Matrix::identity(a.rows()));
  r.det_residual = std::abs(determinant(a) - 1.0);
  return r;
}

Matrix block_diag(std::span<const Matrix> blocks) {
  if (blocks.empty()) throw DomainError("block_diag: empty block list");
  int total = 0;
  for (const Matrix& b : blocks) {
    if (!b.is_square()) throw DimensionError("block_diag: blocks must be square");
    total += b.rows();
  }
  Matrix out(total, total);
  int offset = 0;
  for (const Matrix& b : blocks) {
    for (int i = 0; i < b.rows(); ++i) {
      for (int j = 0; j < b.cols(); ++j) out(offset + i, offset + j) = b(i, j);
    }
    offset += b.rows();
  }
  return out;
}

Matrix block_diag(std::initializer_list<Matrix> blocks) {
  return block_diag(std::span<const Matrix>(blocks.begin(), blocks.size()));
}

SkewMatrix SkewMatrix::checked(Matrix m, double tol) {
  if (!m.is_square()) throw DimensionError("SkewMatrix: matrix must be square");
  if (m.rows() % 2 != 0) {
    throw DomainError("SkewMatrix: dimension must be even, got " + std::to_string(m.rows()));
  }
  if (!m.all_finite()) throw DomainError("SkewMatrix: non-finite entries");
  const double residual = max_abs(m + transpose(m));
  if (residual > tol) {
    throw ValidationError("SkewMatrix: skew-symmetry residual " + std::to_string(residual) +
                              " exceeds tolerance",
                          residual);
  }
  for (int i = 0; i < m.rows(); ++i) m(i, i) = 0.0;
  return SkewMatrix(std::move(m));
}

RotationMatrix RotationMatrix::checked(Matrix m, double orth_tol, double det_tol) {
  if (!m.is_square()) throw DimensionError("RotationMatrix: matrix must be square");
  if (!m.all_finite()) throw DomainError("RotationMatrix: non-finite entries");
  const StructureResiduals r = structure_residuals(m);
  if (r.orth_residual > orth_tol) {
    throw ValidationError("RotationMatrix: orthogonality residual " +
                              std::to_string(r.orth_residual) + " exceeds tolerance",
                          r.orth_residual);
  }
  if (r.det_residual > det_tol) {
    throw ValidationError("RotationMatrix: determinant residual " +
                              std::to_string(r.det_residual) + " exceeds tolerance",
                          r.det_residual);
  }
  return RotationMatrix(std::move(m));
}

RotationMatrix RotationMatrix::trusted(Matrix m) { return RotationMatrix(std::move(m)); }

}  // namespace ropealg
