#pragma once

#include <optional>
#include <vector>

#include "jordanis/algebra.hpp"
#include "jordanis/rng.hpp"
#include "jordanis/structure.hpp"

namespace jordanis {

/// Symmetric positive definite Gram matrix over the algebra basis.
class InnerProduct {
 public:
  explicit InnerProduct(Mat gram) : g_(std::move(gram)) {
    const int n = g_.rows();
    double asym = 0.0;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) asym = std::max(asym, std::abs(g_(i, j) - g_(j, i)));
    if (asym > 1e-12 * std::max(g_.max_abs(), 1.0))
      throw NotPositiveDefinite("Gram matrix is not symmetric");
    const EigenSym es = jacobi_eigensym(g_);
    if (es.values.back() <= 0.0 || es.values.front() <= 1e-10 * es.values.back())
      throw NotPositiveDefinite("Gram matrix is not positive definite");
  }

  static InnerProduct standard(int n) { return InnerProduct(Mat::identity(n)); }

  int dim() const { return g_.rows(); }
  const Mat& gram() const { return g_; }
  double inner(const Vec& x, const Vec& y) const { return dot(x, g_ * y); }
  double norm(const Vec& x) const { return std::sqrt(std::max(inner(x, x), 0.0)); }

 private:
  Mat g_;
};

/// Gram-Schmidt orthonormalization of the given start basis (standard basis
/// by default). Columns b_i satisfy b_i^T g b_j = delta_ij.
inline Mat orthonormal_basis(const InnerProduct& g, const std::optional<Mat>& start = std::nullopt) {
  const int n = g.dim();
  std::vector<Vec> input;
  for (int i = 0; i < n; ++i)
    input.push_back(start ? start->col(i) : basis_vector(n, i));
  const std::vector<Vec> on = gram_schmidt(input, g.gram(), 1e-12);
  if (static_cast<int>(on.size()) != n)
    throw NotPositiveDefinite("start basis degenerates under the inner product");
  Mat b(n, n);
  for (int i = 0; i < n; ++i) b.set_col(i, on[i]);
  return b;
}

/// Coefficients of the covariant derivative: nabla_{e_i} e_j = sum_k gamma(i,j,k) e_k.
struct Connection {
  int dim = 0;
  std::vector<double> gamma;

  Connection() = default;
  explicit Connection(int n) : dim(n), gamma(static_cast<size_t>(n) * n * n, 0.0) {}

  double at(int i, int j, int k) const {
    return gamma[(static_cast<size_t>(i) * dim + j) * dim + k];
  }
  double& at(int i, int j, int k) {
    return gamma[(static_cast<size_t>(i) * dim + j) * dim + k];
  }

  /// Matrix of y -> nabla_x y.
  Mat operator_of(const Vec& x) const {
    Mat m(dim, dim);
    for (int i = 0; i < dim; ++i) {
      if (x[i] == 0.0) continue;
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) m(k, j) += x[i] * at(i, j, k);
    }
    return m;
  }

  Vec apply(const Vec& x, const Vec& y) const { return operator_of(x) * y; }

  /// The covariant derivative as a bilinear product, for the flat-structure
  /// correspondence.
  Algebra as_algebra() const {
    Algebra a(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        for (int k = 0; k < dim; ++k) a.c(i, j, k) = at(i, j, k);
    return a;
  }
};

namespace detail {

/// Orthonormal-coordinate view of a metric algebra: structure constants over
/// a g-orthonormal basis, where the Gram matrix is the identity.
struct OrthoView {
  Algebra algebra;        // structure constants over the orthonormal basis
  Mat basis;              // columns = orthonormal basis in original coordinates
  Mat basis_inv;

  OrthoView(const Algebra& a, const InnerProduct& g)
      : algebra(0), basis(orthonormal_basis(g)), basis_inv(inverse(basis)) {
    // basis_inv is invertible by construction; skip the determinant guard,
    // which rejects legitimately small determinants of scaled metrics.
    algebra = base_change(a, basis_inv, 0.0);
  }
};

/// Koszul coefficients in orthonormal coordinates:
/// gamma(i,j,k) = (c_ijk - c_jki + c_kij) / 2.
inline Connection koszul_orthonormal(const Algebra& on) {
  const int n = on.dim();
  Connection conn(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        conn.at(i, j, k) = 0.5 * (on.c(i, j, k) - on.c(j, k, i) + on.c(k, i, j));
  return conn;
}

}  // namespace detail

/// The unique torsion-free connection whose operators are self-adjoint:
/// <nabla_X Y, Z> = (<XY,Z> - <YZ,X> + <ZX,Y>) / 2.
inline Connection levi_civita(const Algebra& a, const InnerProduct& g) {
  const int n = a.dim();
  const detail::OrthoView view(a, g);
  const Connection conn_on = detail::koszul_orthonormal(view.algebra);
  // Transform like a bilinear product back to the original coordinates.
  Connection conn(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      // columns of basis_inv hold the coordinates of e_i over the ON basis
      const Vec bi = view.basis_inv.col(i), bj = view.basis_inv.col(j);
      Vec tmp(n, 0.0);
      for (int p = 0; p < n; ++p) {
        if (bi[p] == 0.0) continue;
        for (int q = 0; q < n; ++q) {
          const double w = bi[p] * bj[q];
          if (w == 0.0) continue;
          for (int k = 0; k < n; ++k) tmp[k] += w * conn_on.at(p, q, k);
        }
      }
      const Vec img = view.basis * tmp;
      for (int k = 0; k < n; ++k) conn.at(i, j, k) = img[k];
    }
  // Both defining properties must hold by construction; verify.
  const double bound = 1e-10 * a.scale() * std::max(1.0, g.gram().max_abs());
  for (int i = 0; i < n; ++i) {
    const Mat ni = conn.operator_of(basis_vector(n, i));
    const Mat gn = g.gram() * ni;
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        if (std::abs(gn(r, c) - gn(c, r)) > 100 * bound)
          throw InternalCheck("connection operator is not self-adjoint");
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (std::abs(conn.at(i, j, k) + conn.at(j, i, k) - a.c(i, j, k)) > 100 * bound)
          throw InternalCheck("connection is not torsion-free");
  }
  return conn;
}

/// Curvature tensor entries over an orthonormal basis:
/// R(i,j,k,l) = <R(b_i, b_j) b_k, b_l>, with
/// R(X, Y) = nabla_{XY} - (nabla_X nabla_Y + nabla_Y nabla_X).
struct Curvature4 {
  int dim = 0;
  std::vector<double> r;
  Mat basis;      // orthonormal basis columns in algebra coordinates
  Mat basis_inv;

  double at(int i, int j, int k, int l) const {
    return r[((static_cast<size_t>(i) * dim + j) * dim + k) * dim + l];
  }
  double& at(int i, int j, int k, int l) {
    return r[((static_cast<size_t>(i) * dim + j) * dim + k) * dim + l];
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : r) m = std::max(m, std::abs(x));
    return m;
  }
};

inline Curvature4 curvature(const Algebra& a, const InnerProduct& g) {
  const int n = a.dim();
  const detail::OrthoView view(a, g);
  const Connection conn = detail::koszul_orthonormal(view.algebra);
  std::vector<Mat> nop(n);
  for (int i = 0; i < n; ++i) nop[i] = conn.operator_of(basis_vector(n, i));
  Curvature4 out;
  out.dim = n;
  out.r.assign(static_cast<size_t>(n) * n * n * n, 0.0);
  out.basis = view.basis;
  out.basis_inv = view.basis_inv;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      Mat rop(n, n);
      for (int k = 0; k < n; ++k) {
        const double w = view.algebra.c(i, j, k);
        if (w != 0.0) rop += w * nop[k];
      }
      rop -= nop[i] * nop[j] + nop[j] * nop[i];
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) {
          out.at(i, j, k, l) = rop(l, k);
          out.at(j, i, k, l) = rop(l, k);
        }
    }
  return out;
}

/// <R(x,y)x, y> / (<x,x><y,y> - <x,y>^2) for linearly independent x, y.
inline double jordan_sectional(const Curvature4& r4, const InnerProduct& g, const Element& x,
                               const Element& y) {
  const double den = g.inner(x, x) * g.inner(y, y) - g.inner(x, y) * g.inner(x, y);
  const double nx2 = g.inner(x, x), ny2 = g.inner(y, y);
  if (den <= 1e-12 * nx2 * ny2) throw DegeneratePair("sectional pair is linearly dependent");
  const Vec xo = r4.basis_inv * x, yo = r4.basis_inv * y;
  const int n = r4.dim;
  double num = 0.0;
  for (int i = 0; i < n; ++i) {
    if (xo[i] == 0.0) continue;
    for (int j = 0; j < n; ++j) {
      const double w = xo[i] * yo[j];
      if (w == 0.0) continue;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) num += w * xo[k] * yo[l] * r4.at(i, j, k, l);
    }
  }
  return num / den;
}

struct MomentMap {
  Mat operator_form;   // sum L_i L_i^T - L_i^T L_i - R_i^T R_i over an orthonormal basis
  Mat bilinear_form;   // same map assembled entrywise from products
  Mat basis;           // the orthonormal basis used (columns, algebra coordinates)
  Mat basis_inv;
  double mu_norm2 = 0.0;
  Mat normalized;      // operator_form / ||mu||^2

  /// Value of the moment-map bilinear form on algebra-coordinate vectors.
  double form(const Vec& u, const Vec& v) const {
    return dot(basis_inv * u, operator_form * (basis_inv * v));
  }
};

namespace detail {

struct MomentForms {
  Mat op;
  Mat bil;
  double norm2 = 0.0;
};

/// Operator-sum and entrywise assemblies of the moment map over an
/// orthonormal basis; cross-checked against each other.
inline MomentForms moment_forms(const Algebra& on) {
  const int n = on.dim();
  MomentForms out{Mat(n, n), Mat(n, n), 0.0};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) out.norm2 += on.c(i, j, k) * on.c(i, j, k);
  for (int i = 0; i < n; ++i) {
    const Mat l = left_mul(on, basis_vector(n, i));
    const Mat r = right_mul(on, basis_vector(n, i));
    out.op += l * l.transposed() - l.transposed() * l - r.transposed() * r;
  }
  for (int x = 0; x < n; ++x)
    for (int y = x; y < n; ++y) {
      double s1 = 0.0, s2 = 0.0, s3 = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          s1 += on.c(i, j, x) * on.c(i, j, y);
          s2 += on.c(i, x, j) * on.c(i, y, j);
          s3 += on.c(x, i, j) * on.c(y, i, j);
        }
      out.bil(x, y) = s1 - s2 - s3;
      out.bil(y, x) = out.bil(x, y);
    }
  if ((out.op - out.bil).max_abs() > 1e-10 * std::max(1.0, out.op.max_abs()))
    throw InternalCheck("moment map operator and bilinear forms disagree");
  return out;
}

}  // namespace detail

/// Moment map of the product relative to the metric, computed both as an
/// operator sum and entrywise; the two are cross-checked.
inline MomentMap moment_map(const Algebra& a, const InnerProduct& g) {
  const detail::OrthoView view(a, g);
  const detail::MomentForms forms = detail::moment_forms(view.algebra);
  if (forms.norm2 <= 0.0) throw ZeroAlgebra("moment map of the zero product is undefined");
  MomentMap out;
  out.basis = view.basis;
  out.basis_inv = view.basis_inv;
  out.mu_norm2 = forms.norm2;
  out.operator_form = forms.op;
  out.bilinear_form = forms.bil;
  out.normalized = forms.op * (1.0 / forms.norm2);
  return out;
}

/// All Ricci-level invariants over an orthonormal basis. Matrices are stored
/// in the orthonormal coordinates given by `basis`.
struct RicciData {
  Mat ric;                 // trace-definition tensor, not symmetric in general
  Mat Ric;                 // symmetrized
  double sc = 0.0;
  Element H;               // mean curvature vector, algebra coordinates
  Mat M;                   // quarter of the moment map
  Mat B_op;                // Killing form over the orthonormal basis
  Mat S_H;                 // <H, . .>
  std::optional<double> einstein_constant;
  double einstein_residual = 0.0;
  Mat basis;
  Mat basis_inv;
  // Internal cross-check residuals.
  double ric_vs_closed = 0.0;
  double sc_vs_formula = 0.0;
  double operator_identity_residual = 0.0;

  double form(const Mat& m, const Vec& u, const Vec& v) const {
    return dot(basis_inv * u, m * (basis_inv * v));
  }
};

/// Ricci data by two independent routes: the curvature trace and the closed
/// formula -1/2 sum <XE_i,E_j><YE_i,E_j> + 1/4 sum <E_iE_j,X><E_iE_j,Y>
/// + 1/2 B(X,Y) - 1/4 <H, XY>.
inline RicciData ricci(const Algebra& a, const InnerProduct& g) {
  const int n = a.dim();
  const Curvature4 r4 = curvature(a, g);
  const Algebra on = base_change(a, r4.basis_inv, 0.0);
  RicciData out;
  out.basis = r4.basis;
  out.basis_inv = r4.basis_inv;

  out.ric = Mat(n, n);
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += r4.at(u, i, v, i);
      out.ric(u, v) = s;
    }
  out.Ric = 0.5 * (out.ric + out.ric.transposed());

  // Closed formula ingredients.
  Element h(n, 0.0);
  for (int i = 0; i < n; ++i) h = h + multiply(on, basis_vector(n, i), basis_vector(n, i));
  Mat bk(n, n);
  {
    std::vector<Mat> l(n);
    for (int i = 0; i < n; ++i) l[i] = left_mul(on, basis_vector(n, i));
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) {
        bk(i, j) = (l[i] * l[j]).trace();
        bk(j, i) = bk(i, j);
      }
  }
  Mat sh(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      sh(i, j) = dot(h, multiply(on, basis_vector(n, i), basis_vector(n, j)));
      sh(j, i) = sh(i, j);
    }
  const detail::MomentForms mm = detail::moment_forms(on);
  const Mat m_ric = 0.25 * mm.op;
  const Mat ric_closed = m_ric + 0.5 * bk - 0.25 * sh;
  out.M = m_ric;
  out.B_op = bk;
  out.S_H = sh;
  out.H = r4.basis * h;

  const double scale = a.scale();
  out.ric_vs_closed = (out.Ric - ric_closed).max_abs();
  if (out.ric_vs_closed > 1e-9 * scale * scale)
    throw InternalCheck("trace-definition Ricci disagrees with the closed formula");

  out.sc = out.Ric.trace();
  double sc_formula = -0.25 * mm.norm2 + 0.5 * bk.trace() - 0.25 * dot(h, h);
  out.sc_vs_formula = std::abs(out.sc - sc_formula);
  out.operator_identity_residual = (out.Ric - (out.M + 0.5 * out.B_op - 0.25 * out.S_H)).max_abs();

  const double c = out.sc / n;
  Mat dev = out.Ric;
  for (int i = 0; i < n; ++i) dev(i, i) -= c;
  out.einstein_residual = dev.frobenius() / std::sqrt(static_cast<double>(n));
  if (out.einstein_residual <= 1e-8) out.einstein_constant = c;
  return out;
}

struct FlatLssaReport {
  bool flat = false;
  double curvature_max = 0.0;
  std::optional<bool> lssa_pass;
  double lssa_residual = 0.0;
  std::optional<bool> symmetrize_recovers;
  double symmetrize_residual = 0.0;
};

/// For flat metric structures the covariant derivative is a left
/// skew-symmetric product whose symmetrization returns the original product.
inline FlatLssaReport check_flat_lssa(const Algebra& a, const InnerProduct& g,
                                      double tol = kDefaultTol) {
  FlatLssaReport rep;
  const Curvature4 r4 = curvature(a, g);
  rep.curvature_max = r4.max_abs();
  rep.flat = rep.curvature_max <= 1e-9 * a.scale();
  if (!rep.flat) return rep;
  const Connection conn = levi_civita(a, g);
  const Algebra diamond = conn.as_algebra();
  const LssaCheck lssa = check_lssa(diamond, tol);
  rep.lssa_pass = lssa.pass;
  rep.lssa_residual = lssa.residual;
  const Algebra sym = symmetrize_product(diamond);
  double dev = 0.0;
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < a.dim(); ++j)
      for (int k = 0; k < a.dim(); ++k) dev = std::max(dev, std::abs(sym.c(i, j, k) - a.c(i, j, k)));
  rep.symmetrize_residual = dev;
  rep.symmetrize_recovers = dev <= tol * a.scale();
  return rep;
}

struct NonpositivityReport {
  int trials = 0;
  double max_inequality_violation = -std::numeric_limits<double>::infinity();
  double max_sectional = -std::numeric_limits<double>::infinity();
  double bianchi_residual = 0.0;
  bool inequality_ok = false;
  bool sectional_ok = false;
  bool bianchi_ok = false;
};

/// Checks metric associativity, then samples pairs for the product
/// inequality <xy,xy> <= <x^2,y^2> and non-positive sectional values, and
/// verifies the cyclic curvature identity on basis triples.
inline NonpositivityReport sample_nonpositivity(const Algebra& a, const InnerProduct& g, int trials,
                                                uint64_t rng_seed) {
  const int n = a.dim();
  double assoc = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const Element ei = basis_vector(n, i), ej = basis_vector(n, j), ek = basis_vector(n, k);
        assoc = std::max(assoc, std::abs(g.inner(multiply(a, ei, ej), ek) -
                                         g.inner(ei, multiply(a, ej, ek))));
      }
  if (assoc > 1e-9 * a.scale() * std::max(1.0, g.gram().max_abs()))
    throw NotAssociativeMetric("inner product is not associative for this product");

  NonpositivityReport rep;
  rep.trials = trials;
  const detail::OrthoView view(a, g);
  const Algebra& on = view.algebra;
  const Connection conn = detail::koszul_orthonormal(on);
  std::vector<Mat> nop(n);
  for (int i = 0; i < n; ++i) nop[i] = conn.operator_of(basis_vector(n, i));

  for (int t = 0; t < trials; ++t) {
    Rng rng = Rng::split(rng_seed, static_cast<uint64_t>(t));
    Vec x = gaussian_element(n, rng), y = gaussian_element(n, rng);
    const double nx = norm(x), ny = norm(y);
    if (nx == 0.0 || ny == 0.0) continue;
    x = scaled(x, 1.0 / nx);
    y = scaled(y, 1.0 / ny);
    const Element xy = multiply(on, x, y);
    const Element x2 = multiply(on, x, x);
    const Element y2 = multiply(on, y, y);
    rep.max_inequality_violation = std::max(rep.max_inequality_violation, dot(xy, xy) - dot(x2, y2));
    const double den = 1.0 - dot(x, y) * dot(x, y);
    if (den > 1e-12) {
      Mat rop(n, n);
      for (int k = 0; k < n; ++k)
        if (xy[k] != 0.0) rop += xy[k] * nop[k];
      Mat nx_op(n, n), ny_op(n, n);
      for (int k = 0; k < n; ++k) {
        if (x[k] != 0.0) nx_op += x[k] * nop[k];
        if (y[k] != 0.0) ny_op += y[k] * nop[k];
      }
      rop -= nx_op * ny_op + ny_op * nx_op;
      rep.max_sectional = std::max(rep.max_sectional, dot(rop * x, y) / den);
    }
  }
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j)
      for (int k = j; k < n; ++k) {
        auto rz = [&](int p, int q, int s) {
          Mat rop(n, n);
          for (int m = 0; m < n; ++m) {
            const double w = on.c(p, q, m);
            if (w != 0.0) rop += w * nop[m];
          }
          rop -= nop[p] * nop[q] + nop[q] * nop[p];
          return rop * basis_vector(n, s);
        };
        const Vec cyc = rz(i, j, k) + rz(j, k, i) + rz(k, i, j);
        rep.bianchi_residual = std::max(rep.bianchi_residual, max_abs(cyc));
      }
  const double s4 = std::pow(a.scale(), 4);
  rep.inequality_ok = rep.max_inequality_violation <= 1e-9 * s4;
  rep.sectional_ok = rep.max_sectional <= 1e-9;
  rep.bianchi_ok = rep.bianchi_residual <= 1e-10 * a.scale();
  return rep;
}

}  // namespace jordanis
