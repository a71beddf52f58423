#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jordanis/errors.hpp"
#include "jordanis/linalg.hpp"

namespace jordanis {

using Element = Vec;

/// Finite-dimensional real algebra given by structure constants over a fixed
/// basis: e_i e_j = sum_k c(i,j,k) e_k. Immutable after construction.
class Algebra {
 public:
  Algebra(int dim, std::string label = {})
      : dim_(dim),
        label_(std::move(label)),
        c_(static_cast<size_t>(dim) * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  const std::string& label() const { return label_; }

  double c(int i, int j, int k) const {
    return c_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k];
  }
  double& c(int i, int j, int k) {
    return c_[(static_cast<size_t>(i) * dim_ + j) * dim_ + k];
  }

  const std::vector<double>& raw() const { return c_; }

  /// max(1, max |c_ijk|); reference magnitude for relative tolerances.
  double scale() const {
    double m = 1.0;
    for (double x : c_) m = std::max(m, std::abs(x));
    return m;
  }

  double max_structure_constant() const {
    double m = 0.0;
    for (double x : c_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  int dim_;
  std::string label_;
  std::vector<double> c_;
};

constexpr double kDefaultTol = 1e-9;

inline void require_element(const Algebra& a, const Element& x, const char* role) {
  if (static_cast<int>(x.size()) != a.dim())
    throw InvalidElement(std::string(role) + " has length " + std::to_string(x.size()) +
                         ", algebra dimension is " + std::to_string(a.dim()));
}

inline Element multiply(const Algebra& a, const Element& x, const Element& y) {
  require_element(a, x, "left factor");
  require_element(a, y, "right factor");
  const int n = a.dim();
  Element z(n, 0.0);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double w = x[i] * y[j];
      if (w == 0.0) continue;
      for (int k = 0; k < n; ++k) z[k] += w * a.c(i, j, k);
    }
  }
  return z;
}

/// Matrix of y -> x y: (L_x)_{kj} = sum_i x_i c(i,j,k).
inline Mat left_mul(const Algebra& a, const Element& x) {
  require_element(a, x, "element");
  const int n = a.dim();
  Mat l(n, n);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) l(k, j) += x[i] * a.c(i, j, k);
  }
  return l;
}

/// Matrix of y -> y x.
inline Mat right_mul(const Algebra& a, const Element& x) {
  require_element(a, x, "element");
  const int n = a.dim();
  Mat r(n, n);
  for (int i = 0; i < n; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) r(k, j) += x[i] * a.c(j, i, k);
  }
  return r;
}

/// Left-iterated power: x^0 = identity, x^{k+1} = x * x^k.
inline Element jordan_power(const Algebra& a, const Element& x, int k,
                            const std::optional<Element>& identity = std::nullopt) {
  require_element(a, x, "element");
  if (k == 0) {
    if (!identity) throw NoIdentity("power 0 requested but no identity element supplied");
    return *identity;
  }
  Element p = x;
  for (int i = 1; i < k; ++i) p = multiply(a, x, p);
  return p;
}

struct JordanCheck {
  double commutator_residual = 0.0;  // max |c_ijk - c_jik|
  double jordan_residual = 0.0;      // trilinear operator identity residual
  bool is_jordan = false;
};

/// Commutativity plus the fully polarized Jordan identity
/// [L_X, L_{YZ}] + [L_Y, L_{ZX}] + [L_Z, L_{XY}] = 0 over basis triples.
/// Trilinearity makes the basis check complete.
inline JordanCheck check_jordan(const Algebra& a, double tol = kDefaultTol) {
  const int n = a.dim();
  JordanCheck r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        r.commutator_residual = std::max(r.commutator_residual,
                                         std::abs(a.c(i, j, k) - a.c(j, i, k)));
  std::vector<Mat> l(n);
  for (int i = 0; i < n; ++i) l[i] = left_mul(a, basis_vector(n, i));
  std::vector<std::vector<Mat>> lprod(n, std::vector<Mat>(n));
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      lprod[i][j] = left_mul(a, multiply(a, basis_vector(n, i), basis_vector(n, j)));
      if (j != i) lprod[j][i] = left_mul(a, multiply(a, basis_vector(n, j), basis_vector(n, i)));
    }
  auto comm = [](const Mat& s, const Mat& t) { return s * t - t * s; };
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        const Mat m = comm(l[i], lprod[j][k]) + comm(l[j], lprod[k][i]) + comm(l[k], lprod[i][j]);
        r.jordan_residual = std::max(r.jordan_residual, m.max_abs());
      }
  const double bound = tol * a.scale();
  r.is_jordan = r.commutator_residual <= bound && r.jordan_residual <= bound;
  return r;
}

struct FundamentalCheck {
  double residual_linearized = 0.0;   // [L_X, L_{Y^2}] + 2 [L_Y, L_{XY}]
  double residual_cyclic = 0.0;       // [L_X, L_{YZ}] + [L_Y, L_{ZX}] + [L_Z, L_{XY}]
  double residual_quadratic = 0.0;    // L_{X^2 Y} - L_{X^2} L_Y - 2 (L_{XY} - L_X L_Y) L_X
  bool pass = false;
};

inline FundamentalCheck check_fundamental_identities(const Algebra& a, double tol = kDefaultTol) {
  const int n = a.dim();
  FundamentalCheck r;
  std::vector<Mat> l(n);
  for (int i = 0; i < n; ++i) l[i] = left_mul(a, basis_vector(n, i));
  auto comm = [](const Mat& s, const Mat& t) { return s * t - t * s; };
  for (int x = 0; x < n; ++x) {
    const Element ex = basis_vector(n, x);
    const Element x2 = multiply(a, ex, ex);
    const Mat lx2 = left_mul(a, x2);
    for (int y = 0; y < n; ++y) {
      const Element ey = basis_vector(n, y);
      const Element xy = multiply(a, ex, ey);
      const Mat lxy = left_mul(a, xy);
      const Mat ly2 = left_mul(a, multiply(a, ey, ey));
      const Mat lin = comm(l[x], ly2) + 2.0 * comm(l[y], lxy);
      r.residual_linearized = std::max(r.residual_linearized, lin.max_abs());
      const Mat quad = left_mul(a, multiply(a, x2, ey)) - lx2 * l[y] -
                       2.0 * ((lxy - l[x] * l[y]) * l[x]);
      r.residual_quadratic = std::max(r.residual_quadratic, quad.max_abs());
      for (int z = y; z < n; ++z) {
        const Element ez = basis_vector(n, z);
        const Mat cyc = comm(l[x], left_mul(a, multiply(a, ey, ez))) +
                        comm(l[y], left_mul(a, multiply(a, ez, ex))) +
                        comm(l[z], lxy);
        r.residual_cyclic = std::max(r.residual_cyclic, cyc.max_abs());
      }
    }
  }
  const double bound = tol * a.scale();
  r.pass = r.residual_linearized <= bound && r.residual_cyclic <= bound &&
           r.residual_quadratic <= bound;
  return r;
}

/// GL action: (g.A)(x, y) = g A(g^-1 x, g^-1 y). The result is isomorphic
/// to the input; |det g| below tol is rejected.
inline Algebra base_change(const Algebra& a, const Mat& g, double tol = kDefaultTol) {
  const int n = a.dim();
  if (std::abs(determinant(g)) <= tol) throw SingularMatrix("base change matrix is singular");
  const Mat gi = inverse(g);
  Algebra out(n, a.label());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Element p = g * multiply(a, gi.col(i), gi.col(j));
      for (int k = 0; k < n; ++k) out.c(i, j, k) = p[k];
    }
  }
  return out;
}

/// Solves L_e = Id in the least-squares sense; returns e only when the
/// residual certifies an identity element.
inline std::optional<Element> identity_element(const Algebra& a, double tol = kDefaultTol) {
  const int n = a.dim();
  Mat sys(n * n, n);
  for (int i = 0; i < n; ++i) {
    const Mat li = left_mul(a, basis_vector(n, i));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) sys(r * n + c, i) = li(r, c);
  }
  Vec rhs(n * n, 0.0);
  for (int r = 0; r < n; ++r) rhs[r * n + r] = 1.0;
  const Vec e = least_squares(sys, rhs);
  const Mat le = left_mul(a, e);
  double resid = 0.0;
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) resid = std::max(resid, std::abs(le(r, c) - (r == c ? 1.0 : 0.0)));
  if (resid > tol * a.scale()) return std::nullopt;
  return e;
}

struct LssaCheck {
  double residual = 0.0;
  bool pass = false;
};

/// Residual of (x*y)*z - x*(y*z) = -(y*x)*z + y*(x*z) over basis triples.
inline LssaCheck check_lssa(const Algebra& a, double tol = kDefaultTol) {
  const int n = a.dim();
  LssaCheck r;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Element x = basis_vector(n, i), y = basis_vector(n, j), z = basis_vector(n, k);
        const Element lhs = multiply(a, multiply(a, x, y), z) - multiply(a, x, multiply(a, y, z));
        const Element rhs = scaled(multiply(a, multiply(a, y, x), z), -1.0) +
                            multiply(a, y, multiply(a, x, z));
        r.residual = std::max(r.residual, max_abs(lhs - rhs));
      }
  r.pass = r.residual <= tol * a.scale();
  return r;
}

/// x . y + y . x; turns a left skew-symmetric product into a Jordan one.
inline Algebra symmetrize_product(const Algebra& a) {
  const int n = a.dim();
  Algebra out(n, a.label());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.c(i, j, k) = a.c(i, j, k) + a.c(j, i, k);
  return out;
}

/// Convenience: build an algebra from (i, j, coefficients) triples,
/// mirroring unspecified (j, i) products when symmetrize is set.
inline Algebra make_algebra(int dim, const std::vector<std::pair<std::pair<int, int>, Vec>>& products,
                            bool symmetrize = true, std::string label = {}) {
  Algebra a(dim, std::move(label));
  std::vector<std::vector<bool>> given(dim, std::vector<bool>(dim, false));
  for (const auto& [ij, coeffs] : products) {
    const auto [i, j] = ij;
    for (int k = 0; k < dim; ++k) a.c(i, j, k) = coeffs[k];
    given[i][j] = true;
  }
  if (symmetrize) {
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        if (given[i][j] && !given[j][i] && i != j)
          for (int k = 0; k < dim; ++k) a.c(j, i, k) = a.c(i, j, k);
  }
  return a;
}

}  // namespace jordanis
