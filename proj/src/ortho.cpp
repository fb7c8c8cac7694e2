#include "ropealg/ortho.hpp"

#include <cmath>
#include <string>

namespace ropealg {

namespace {

int triangle_size(int dim) { return dim * (dim - 1) / 2; }

void validate_param(const OrthoParam& p) {
  if (p.dim < 2 || p.dim % 2 != 0) {
    throw DomainError("OrthoParam: dim must be even and >= 2, got " + std::to_string(p.dim));
  }
  for (double v : p.params) {
    if (!std::isfinite(v)) throw DomainError("OrthoParam: non-finite parameter");
  }
  if (p.kind == OrthoKind::givens) {
    if (p.plan.empty()) throw DomainError("OrthoParam: givens plan must be non-empty");
    if (p.params.size() != p.plan.size()) {
      throw DomainError("OrthoParam: givens needs one angle per plan entry");
    }
    for (const auto& [i, j] : p.plan) {
      if (i < 0 || j >= p.dim || i >= j) {
        throw DomainError("OrthoParam: invalid plan pair (" + std::to_string(i) + ", " +
                          std::to_string(j) + ")");
      }
    }
  } else {
    if (static_cast<int>(p.params.size()) != triangle_size(p.dim)) {
      throw DomainError("OrthoParam: expected " + std::to_string(triangle_size(p.dim)) +
                        " parameters for dim " + std::to_string(p.dim) + ", got " +
                        std::to_string(p.params.size()));
    }
  }
}

// Left-multiply m by the Givens rotation on rows (i, j): two-row update.
void apply_givens_left(Matrix& m, int i, int j, double c, double s) {
  for (int col = 0; col < m.cols(); ++col) {
    const double vi = m(i, col), vj = m(j, col);
    m(i, col) = c * vi - s * vj;
    m(j, col) = s * vi + c * vj;
  }
}

Matrix cayley_transform(const Matrix& a, OrthoBuildInfo* info) {
  const int n = a.rows();
  const Matrix i_plus = Matrix::identity(n) + a;
  const Matrix i_minus = Matrix::identity(n) - a;
  const LuFactors f = lu_factor(i_plus);
  // (I - A) and (I + A)^{-1} commute, so either product order works.
  Matrix q = lu_solve(f, i_minus);
  if (info) {
    const Matrix inv = lu_solve(f, Matrix::identity(n));
    info->condition_estimate = one_norm(i_plus) * one_norm(inv);
    info->ill_conditioned = info->condition_estimate > default_tolerances().condition_warning;
  }
  return q;
}

// d exp(A)[E] via the commutator series exp(A) * sum_k (-ad_A)^k(E) / (k+1)!,
// truncated at the same 13 terms as mat_exp_dense and combined through the
// squaring recurrence D <- D X + X D after scaling ||A||_1 / 2^s <= 0.5.
Matrix exp_frechet(const Matrix& a, const Matrix& e) {
  const double norm = one_norm(a);
  int s = 0;
  if (norm > 0.5) s = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  const double scale = std::ldexp(1.0, -s);
  const Matrix as = scale * a;
  const Matrix es = scale * e;

  Matrix term = es;
  Matrix sum = es;
  double factorial = 1.0;
  for (int k = 1; k <= 13; ++k) {
    term = as * term - term * as;
    factorial *= static_cast<double>(k + 1);
    const double coeff = ((k % 2) ? -1.0 : 1.0) / factorial;
    sum = sum + coeff * term;
  }
  Matrix x = mat_exp_dense(as);
  Matrix deriv = x * sum;
  for (int level = 0; level < s; ++level) {
    deriv = deriv * x + x * deriv;
    x = x * x;
  }
  return deriv;
}

}  // namespace

const char* ortho_kind_name(OrthoKind kind) {
  switch (kind) {
    case OrthoKind::cayley: return "cayley";
    case OrthoKind::exp: return "exp";
    case OrthoKind::givens: return "givens";
  }
  return "unknown";
}

OrthoKind ortho_kind_from_name(const std::string& name) {
  if (name == "cayley") return OrthoKind::cayley;
  if (name == "exp") return OrthoKind::exp;
  if (name == "givens") return OrthoKind::givens;
  throw DomainError("unknown orthogonal parameterization kind: " + name);
}

std::vector<std::pair<int, int>> default_givens_plan(int d) {
  if (d < 2) throw DomainError("default_givens_plan: d must be >= 2");
  std::vector<std::pair<int, int>> plan;
  plan.reserve(triangle_size(d));
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) plan.emplace_back(i, j);
  }
  return plan;
}

Matrix skew_from_params(int dim, std::span<const double> params) {
  if (static_cast<int>(params.size()) != triangle_size(dim)) {
    throw DomainError("skew_from_params: wrong parameter count");
  }
  Matrix a(dim, dim);
  int k = 0;
  for (int i = 0; i < dim; ++i) {
    for (int j = i + 1; j < dim; ++j) {
      a(i, j) = params[k];
      a(j, i) = -params[k];
      ++k;
    }
  }
  return a;
}

RotationMatrix build_orthogonal(const OrthoParam& p, OrthoBuildInfo* info) {
  validate_param(p);
  switch (p.kind) {
    case OrthoKind::cayley:
      return RotationMatrix::trusted(cayley_transform(skew_from_params(p.dim, p.params), info));
    case OrthoKind::exp:
      return RotationMatrix::trusted(mat_exp_dense(skew_from_params(p.dim, p.params)));
    case OrthoKind::givens: {
      Matrix q = Matrix::identity(p.dim);
      for (std::size_t k = 0; k < p.plan.size(); ++k) {
        const auto [i, j] = p.plan[k];
        apply_givens_left(q, i, j, std::cos(p.params[k]), std::sin(p.params[k]));
      }
      return RotationMatrix::trusted(std::move(q));
    }
  }
  throw DomainError("build_orthogonal: unreachable kind");
}

Matrix directional_derivative(const OrthoParam& p, int index) {
  validate_param(p);
  if (index < 0 || index >= static_cast<int>(p.params.size())) {
    throw DomainError("directional_derivative: parameter index out of range");
  }
  switch (p.kind) {
    case OrthoKind::cayley: {
      const Matrix a = skew_from_params(p.dim, p.params);
      std::vector<double> unit(p.params.size(), 0.0);
      unit[index] = 1.0;
      const Matrix da = skew_from_params(p.dim, unit);
      const Matrix m_inv = inverse(Matrix::identity(p.dim) + a);
      const Matrix q = (Matrix::identity(p.dim) - a) * m_inv;
      // dQ = -(I + Q) dA (I + A)^{-1}
      return -1.0 * ((Matrix::identity(p.dim) + q) * da * m_inv);
    }
    case OrthoKind::exp: {
      const Matrix a = skew_from_params(p.dim, p.params);
      std::vector<double> unit(p.params.size(), 0.0);
      unit[index] = 1.0;
      return exp_frechet(a, skew_from_params(p.dim, unit));
    }
    case OrthoKind::givens: {
      // Q = G_r ... G_1; replace factor `index` by its angle derivative.
      Matrix acc(p.dim, p.dim);
      const auto [di, dj] = p.plan[index];
      const double c = std::cos(p.params[index]);
      const double s = std::sin(p.params[index]);
      // Start from dG * (G_{index-1} ... G_1).
      Matrix prefix = Matrix::identity(p.dim);
      for (int k = 0; k < index; ++k) {
        const auto [i, j] = p.plan[k];
        apply_givens_left(prefix, i, j, std::cos(p.params[k]), std::sin(p.params[k]));
      }
      for (int col = 0; col < p.dim; ++col) {
        const double vi = prefix(di, col), vj = prefix(dj, col);
        acc(di, col) = -s * vi - c * vj;
        acc(dj, col) = c * vi - s * vj;
      }
      for (std::size_t k = index + 1; k < p.plan.size(); ++k) {
        const auto [i, j] = p.plan[k];
        apply_givens_left(acc, i, j, std::cos(p.params[k]), std::sin(p.params[k]));
      }
      return acc;
    }
  }
  throw DomainError("directional_derivative: unreachable kind");
}

Matrix fd_directional_derivative(const OrthoParam& p, int index, double eps) {
  validate_param(p);
  if (index < 0 || index >= static_cast<int>(p.params.size())) {
    throw DomainError("fd_directional_derivative: parameter index out of range");
  }
  if (!(eps > 0.0)) throw DomainError("fd_directional_derivative: eps must be positive");
  OrthoParam plus = p;
  OrthoParam minus = p;
  plus.params[index] += eps;
  minus.params[index] -= eps;
  const Matrix qp = build_orthogonal(plus).matrix();
  const Matrix qm = build_orthogonal(minus).matrix();
  return (1.0 / (2.0 * eps)) * (qp - qm);
}

OrthoParam random_ortho_param(OrthoKind kind, int dim, std::mt19937_64& rng) {
  OrthoParam p;
  p.kind = kind;
  p.dim = dim;
  if (kind == OrthoKind::givens) p.plan = default_givens_plan(dim);
  const std::size_t count =
      kind == OrthoKind::givens ? p.plan.size() : static_cast<std::size_t>(triangle_size(dim));
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  p.params.resize(count);
  for (double& v : p.params) v = dist(rng);
  return p;
}

}  // namespace ropealg
