#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "jordanis/algebra.hpp"
#include "jordanis/structure.hpp"

namespace jordanis {

enum class Family { SymR, HermC, HermH, Spin };

inline const char* family_name(Family f) {
  switch (f) {
    case Family::SymR: return "sym-r";
    case Family::HermC: return "herm-c";
    case Family::HermH: return "herm-h";
    case Family::Spin: return "spin";
  }
  return "?";
}

struct ClassicalSpec {
  Family family;
  int n_param = 0;
  std::optional<Mat> f;  // Spin factors only: SPD form on R^{n_param - 1}
};

struct ClassicalAlgebra {
  Algebra algebra;
  std::vector<Element> frame;  // canonical Jordan frame
  int rank = 0;
  int d = 0;
};

namespace detail {

/// Real composition coefficients for R, C, H: u_a u_b = sum_c tab[a][b][c] u_c.
inline std::vector<double> division_table(int dd) {
  std::vector<double> t(static_cast<size_t>(dd) * dd * dd, 0.0);
  auto set = [&](int a, int b, int c, double s) { t[(static_cast<size_t>(a) * dd + b) * dd + c] = s; };
  set(0, 0, 0, 1.0);
  for (int x = 1; x < dd; ++x) {
    set(0, x, x, 1.0);
    set(x, 0, x, 1.0);
    set(x, x, 0, -1.0);
  }
  if (dd == 4) {
    set(1, 2, 3, 1.0);  set(2, 1, 3, -1.0);
    set(2, 3, 1, 1.0);  set(3, 2, 1, -1.0);
    set(3, 1, 2, 1.0);  set(1, 3, 2, -1.0);
  }
  return t;
}

/// Hermitian matrix algebra over R, C, or H (dd = 1, 2, 4) expressed by real
/// structure constants. Entries are stored as m x m blocks of dd reals; the
/// basis consists of diagonal units and symmetrized off-diagonal units, which
/// are orthogonal in the flattened coordinates, so coefficient extraction is
/// exact.
inline ClassicalAlgebra hermitian_algebra(int m, int dd, const std::string& label) {
  const std::vector<double> tab = division_table(dd);
  auto dmul = [&](const std::array<double, 4>& x, const std::array<double, 4>& y) {
    std::array<double, 4> z{0, 0, 0, 0};
    for (int a = 0; a < dd; ++a)
      for (int b = 0; b < dd; ++b) {
        const double w = x[a] * y[b];
        if (w == 0.0) continue;
        for (int c = 0; c < dd; ++c) z[c] += w * tab[(static_cast<size_t>(a) * dd + b) * dd + c];
      }
    return z;
  };
  using QMat = std::vector<std::array<double, 4>>;  // m*m entries
  auto at = [m](QMat& q, int i, int j) -> std::array<double, 4>& { return q[i * m + j]; };
  auto cat = [m](const QMat& q, int i, int j) -> const std::array<double, 4>& { return q[i * m + j]; };
  auto conj = [&](std::array<double, 4> x) {
    for (int a = 1; a < dd; ++a) x[a] = -x[a];
    return x;
  };

  std::vector<QMat> basis;
  for (int i = 0; i < m; ++i) {
    QMat q(m * m, {0, 0, 0, 0});
    at(q, i, i)[0] = 1.0;
    basis.push_back(q);
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      for (int a = 0; a < dd; ++a) {
        QMat q(m * m, {0, 0, 0, 0});
        at(q, i, j)[a] = 1.0;
        at(q, j, i) = conj(at(q, i, j));
        basis.push_back(q);
      }
  const int n = static_cast<int>(basis.size());

  auto jordan_mult = [&](const QMat& x, const QMat& y) {
    QMat z(m * m, {0, 0, 0, 0});
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        for (int k = 0; k < m; ++k) {
          const auto p = dmul(cat(x, i, k), cat(y, k, j));
          const auto q = dmul(cat(y, i, k), cat(x, k, j));
          for (int a = 0; a < dd; ++a) at(z, i, j)[a] += 0.5 * (p[a] + q[a]);
        }
    return z;
  };
  auto flat_dot = [&](const QMat& x, const QMat& y) {
    double s = 0.0;
    for (int e = 0; e < m * m; ++e)
      for (int a = 0; a < dd; ++a) s += x[e][a] * y[e][a];
    return s;
  };

  ClassicalAlgebra out{Algebra(n, label), {}, m, 0};
  std::vector<double> basis_norm2(n);
  for (int b = 0; b < n; ++b) basis_norm2[b] = flat_dot(basis[b], basis[b]);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const QMat p = jordan_mult(basis[i], basis[j]);
      for (int b = 0; b < n; ++b) {
        const double coeff = flat_dot(p, basis[b]) / basis_norm2[b];
        out.algebra.c(i, j, b) = coeff;
        out.algebra.c(j, i, b) = coeff;
      }
    }
  for (int i = 0; i < m; ++i) out.frame.push_back(basis_vector(n, i));
  out.d = (m >= 2) ? dd : 0;
  return out;
}

}  // namespace detail

/// Structure constants, canonical frame, and classification data for the
/// classical simple formally real families.
inline ClassicalAlgebra build_classical(const ClassicalSpec& spec) {
  ClassicalAlgebra out{Algebra(0), {}, 0, 0};
  switch (spec.family) {
    case Family::SymR:
      if (spec.n_param < 1) throw NotApplicable("matrix size must be at least 1");
      out = detail::hermitian_algebra(spec.n_param, 1, "sym-r " + std::to_string(spec.n_param));
      break;
    case Family::HermC:
      if (spec.n_param < 1) throw NotApplicable("matrix size must be at least 1");
      out = detail::hermitian_algebra(spec.n_param, 2, "herm-c " + std::to_string(spec.n_param));
      break;
    case Family::HermH:
      if (spec.n_param < 1) throw NotApplicable("matrix size must be at least 1");
      out = detail::hermitian_algebra(spec.n_param, 4, "herm-h " + std::to_string(spec.n_param));
      break;
    case Family::Spin: {
      const int n = spec.n_param;
      if (n < 3) throw NotApplicable("spin factors need dimension at least 3");
      Mat f = spec.f.value_or(Mat::identity(n - 1));
      {
        const EigenSym es = jacobi_eigensym(f);
        if (es.values.front() <= 1e-10 * std::max(es.values.back(), 1.0))
          throw NotPositiveDefinite("spin form must be positive definite");
      }
      Algebra a(n, "spin " + std::to_string(n));
      a.c(0, 0, 0) = 1.0;
      for (int k = 1; k < n; ++k) {
        a.c(0, k, k) = 1.0;
        a.c(k, 0, k) = 1.0;
        for (int l = 1; l < n; ++l) a.c(k, l, 0) = f(k - 1, l - 1);
      }
      out.algebra = std::move(a);
      out.rank = 2;
      out.d = n - 2;
      // Frame (1 +- u)/2 for a unit-f vector u.
      const double fu = f(0, 0);
      Element u(n, 0.0);
      u[1] = 1.0 / std::sqrt(fu);
      Element h1(n, 0.0), h2(n, 0.0);
      h1[0] = 0.5;
      h2[0] = 0.5;
      axpy(h1, 0.5, u);
      axpy(h2, -0.5, u);
      out.frame = {h1, h2};
      break;
    }
  }
  const int n = out.algebra.dim();
  const int r = out.rank, d = out.d;
  const int expected = (r >= 3) ? r + r * (r - 1) * d / 2 : n;
  if (n != expected) throw InternalCheck("dimension bookkeeping failed for classical family");
  const JordanCheck jc = check_jordan(out.algebra);
  if (!jc.is_jordan) throw InternalCheck("classical construction violates the Jordan identity");
  if (!is_formally_real(out.algebra)) throw InternalCheck("classical construction is not formally real");
  return out;
}

inline std::optional<Family> family_from_name(const std::string& name) {
  if (name == "sym-r") return Family::SymR;
  if (name == "herm-c") return Family::HermC;
  if (name == "herm-h") return Family::HermH;
  if (name == "spin") return Family::Spin;
  return std::nullopt;
}

}  // namespace jordanis
