#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "jordanis/algebra.hpp"
#include "jordanis/geometry.hpp"
#include "jordanis/structure.hpp"

namespace jordanis {

/// tr(xy) = (r/n) tau(x, y): the canonical associative inner product of a
/// simple formally real algebra, normalized so that <E, E> = r.
inline InnerProduct canonical_metric(const Algebra& a, int r) {
  const int n = a.dim();
  Mat g = tau_form(a);
  g *= static_cast<double>(r) / n;
  return InnerProduct(std::move(g));
}

/// Reduced-trace functional tr(x) = (r/n) tau(x, E) as a coordinate vector.
inline Vec reduced_trace_functional(const Algebra& a, int r, double tol = kDefaultTol) {
  const auto e = identity_element(a, tol);
  if (!e) throw NoIdentity("reduced trace needs an identity element");
  return scaled(tau_form(a) * *e, static_cast<double>(r) / a.dim());
}

struct Ric0Report {
  double h_residual = 0.0;           // H - (n/r) E
  double ric_formula_residual = 0.0; // Ric + (rd/16) g0 - (d/16) tr x tr
  double ric_e_residual = 0.0;       // Ric(E, .)
  bool pass = false;
};

/// Peirce constant from (n, r): the off-diagonal blocks of a simple algebra
/// all share one dimension, so it is determined by the bookkeeping identity.
inline int peirce_constant(int n, int r) {
  if (r <= 1) return 0;
  if (r == 2) return n - 2;
  return 2 * (n - r) / (r * (r - 1));
}

/// Under the canonical metric: H = (n/r) E and
/// Ric(x, y) = -(rd/16) <x,y>_0 + (d/16) tr(x) tr(y), with Ric(E, .) = 0.
inline Ric0Report ric0_check(const Algebra& a, const InnerProduct& g0,
                             const std::vector<Element>& frame, double tol = 1e-8) {
  const int n = a.dim();
  const int r = static_cast<int>(frame.size());
  const int d = peirce_constant(n, r);
  const auto e = identity_element(a);
  if (!e) throw NoIdentity("canonical-metric checks need an identity element");
  const Vec tr = reduced_trace_functional(a, r);
  const RicciData rd = ricci(a, g0);

  Ric0Report rep;
  Element h_expected = scaled(*e, static_cast<double>(n) / r);
  rep.h_residual = max_abs(rd.H - h_expected);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const Vec bi = rd.basis.col(i), bj = rd.basis.col(j);
      const double predicted =
          -(r * d / 16.0) * g0.inner(bi, bj) + (d / 16.0) * dot(tr, bi) * dot(tr, bj);
      rep.ric_formula_residual = std::max(rep.ric_formula_residual,
                                          std::abs(rd.Ric(i, j) - predicted));
    }
  const Vec e_on = rd.basis_inv * *e;
  rep.ric_e_residual = max_abs(rd.Ric * e_on);
  rep.pass = rep.h_residual <= tol && rep.ric_formula_residual <= tol && rep.ric_e_residual <= tol;
  return rep;
}

struct DeformationResult {
  Algebra algebra;
  PeirceData peirce;
  Mat f_basis;        // columns: scaled-identity direction first, then the
                      // traceless frame span, then the off-diagonal blocks
  double t_star = 0.0;
  RicciData ricci_at_t_star;
  double einstein_constant = 0.0;
  double block_residual_t0 = 0.0;      // closed-form block values at t = 0
  double block_residual_tstar = 0.0;   // and at t = t_star
  double scalar_equation_residual = 0.0;

  /// Family of metrics scaling the identity direction by e^t.
  InnerProduct metric_at(double t) const {
    const int n = algebra.dim();
    const Mat fi = inverse(f_basis);
    Mat diag(n, n);
    diag(0, 0) = std::exp(2.0 * t);
    for (int i = 1; i < n; ++i) diag(i, i) = 1.0;
    return InnerProduct(fi.transposed() * diag * fi);
  }

  /// Orthonormal basis of metric_at(t): the first column contracts by e^{-t}.
  Mat deformed_basis_at(double t) const {
    Mat g = f_basis;
    for (int r = 0; r < g.rows(); ++r) g(r, 0) *= std::exp(-t);
    return g;
  }
};

namespace detail {

struct DeformedBlocks {
  double m_first, m_rest;
  double b_first, b_rest;
  double sh_first, sh_rest;
};

inline DeformedBlocks closed_form_blocks(int n, int r, int d, double t) {
  DeformedBlocks b{};
  const double e2t = std::exp(2.0 * t), em2t = std::exp(-2.0 * t);
  const double cpar = 2.0 / r - 1.0 - (r - 2) * d / 4.0;
  b.m_first = 0.25 * (-(2.0 * n - 1.0) / r * em2t + (n - 1.0) / r * e2t);
  b.m_rest = 0.25 * (-(2.0 / r) * e2t + cpar);
  b.b_first = (1.0 + (r - 1) * d / 2.0) * em2t;
  b.b_rest = 1.0 + (r - 2) * d / 4.0;
  b.sh_first = (em2t + n - 1.0) / r;
  b.sh_rest = ((em2t + n - 1.0) / r) * e2t;
  return b;
}

}  // namespace detail

/// Deforms the canonical metric along the identity direction to the
/// Einstein parameter t = log(1 - r d / (8 + 4 (r-1) d)) / 2 and verifies
/// the resulting invariants.
inline DeformationResult deform_to_einstein(const Algebra& a, const std::vector<Element>& frame,
                                            double tol = kDefaultTol) {
  const int n = a.dim();
  const int r = static_cast<int>(frame.size());
  if (r < 2) throw RankOne("rank-one algebras have no deformation direction");
  const auto e_opt = identity_element(a, tol);
  if (!e_opt) throw NoIdentity("deformation needs an identity element");
  const Element e = *e_opt;
  const PeirceData peirce = peirce_decompose(a, frame, tol);
  const int d = peirce.d;
  const InnerProduct g0 = canonical_metric(a, r);
  const Vec tr = reduced_trace_functional(a, r);

  // Orthonormal basis adapted to the decomposition: E/sqrt(r), a traceless
  // completion of the frame span, then the off-diagonal blocks.
  std::vector<Vec> f_cols;
  f_cols.push_back(scaled(e, 1.0 / std::sqrt(static_cast<double>(r))));
  {
    std::vector<Vec> span = {f_cols[0]};
    for (const Element& h : frame) span.push_back(h);
    const std::vector<Vec> on = gram_schmidt(span, g0.gram(), tol);
    if (static_cast<int>(on.size()) != r) throw InternalCheck("frame span collapsed");
    for (int i = 1; i < r; ++i) {
      if (std::abs(dot(tr, on[i])) > 1e-8 * (1.0 + max_abs(on[i])))
        throw InternalCheck("frame completion is not traceless");
      f_cols.push_back(on[i]);
    }
  }
  for (const auto& [key, block] : peirce.blocks) {
    if (key.first == key.second) continue;
    std::vector<Vec> seeded = f_cols;
    const size_t before = f_cols.size();
    for (const Element& b : block) seeded.push_back(b);
    const std::vector<Vec> on = gram_schmidt(seeded, g0.gram(), tol);
    for (size_t i = before; i < on.size(); ++i) f_cols.push_back(on[i]);
  }
  if (static_cast<int>(f_cols.size()) != n) throw InternalCheck("adapted basis is incomplete");

  DeformationResult out{a, peirce, Mat(n, n), 0.0, RicciData{}, 0.0, 0.0, 0.0, 0.0};
  for (int i = 0; i < n; ++i) out.f_basis.set_col(i, f_cols[i]);
  out.t_star = 0.5 * std::log(1.0 - static_cast<double>(r) * d / (8.0 + 4.0 * (r - 1) * d));

  auto blocks_residual = [&](double t) {
    const InnerProduct gt = out.metric_at(t);
    const RicciData rd = ricci(a, gt);
    const Mat gb = out.deformed_basis_at(t);
    const detail::DeformedBlocks pred = detail::closed_form_blocks(n, r, d, t);
    double worst = 0.0;
    const Element h_expected = scaled(e, (std::exp(-2.0 * t) + n - 1.0) / r);
    worst = std::max(worst, max_abs(rd.H - h_expected));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const Vec gi = gb.col(i), gj = gb.col(j);
        const double m_pred = (i != j) ? 0.0 : (i == 0 ? pred.m_first : pred.m_rest);
        const double b_pred = (i != j) ? 0.0 : (i == 0 ? pred.b_first : pred.b_rest);
        const double sh_pred = (i != j) ? 0.0 : (i == 0 ? pred.sh_first : pred.sh_rest);
        worst = std::max(worst, std::abs(rd.form(rd.M, gi, gj) - m_pred));
        worst = std::max(worst, std::abs(rd.form(rd.B_op, gi, gj) - b_pred));
        worst = std::max(worst, std::abs(rd.form(rd.S_H, gi, gj) - sh_pred));
      }
    return worst;
  };
  out.block_residual_t0 = blocks_residual(0.0);
  out.block_residual_tstar = blocks_residual(out.t_star);

  // The two diagonal Ricci values coincide at t_star.
  {
    const detail::DeformedBlocks p = detail::closed_form_blocks(n, r, d, out.t_star);
    const double first = p.m_first + 0.5 * p.b_first - 0.25 * p.sh_first;
    const double rest = p.m_rest + 0.5 * p.b_rest - 0.25 * p.sh_rest;
    out.scalar_equation_residual = std::abs(first - rest);
  }

  out.ricci_at_t_star = ricci(a, out.metric_at(out.t_star));
  if (!out.ricci_at_t_star.einstein_constant)
    throw InternalCheck("deformed metric failed the Einstein residual test");
  out.einstein_constant = *out.ricci_at_t_star.einstein_constant;
  return out;
}

struct SignReport {
  double sc = 0.0;
  double einstein_constant = 0.0;
  bool negative = false;
};

inline SignReport einstein_constant_sign(const DeformationResult& result) {
  SignReport rep;
  rep.sc = result.ricci_at_t_star.sc;
  rep.einstein_constant = result.einstein_constant;
  rep.negative = rep.sc < 0.0 && rep.einstein_constant < 0.0;
  return rep;
}

struct NilpotentCertificate {
  double tr_ric = 0.0;
  std::vector<Element> annihilator;  // algebra coordinates
  double ric_on_annihilator = 0.0;   // Ric(z,z) for the certified z
  double moment_on_annihilator = 0.0;
  bool conclusive = false;
  bool no_einstein = false;
  int nilpotency_degree = 0;
};

/// Certificate that a nontrivial nilpotent algebra has no Einstein metric:
/// Tr Ric < 0 while Ric(z, z) >= 0 on the annihilator.
inline NilpotentCertificate nilpotent_no_einstein_certificate(const Algebra& a,
                                                              const InnerProduct& g,
                                                              double tol = kDefaultTol) {
  const int n = a.dim();
  if (a.max_structure_constant() == 0.0) throw TrivialAlgebra("zero product has Ric = 0");
  const JordanCheck jc = check_jordan(a, tol);
  if (!jc.is_jordan) throw NotJordan("certificate applies to Jordan algebras only");
  const NilpotencyReport nil = is_nilpotent(a, tol);
  if (!nil.nilpotent) throw NotNilpotent("certificate applies to nilpotent algebras only");

  NilpotentCertificate cert;
  cert.nilpotency_degree = nil.degree;
  const RicciData rd = ricci(a, g);
  cert.tr_ric = rd.sc;

  // Annihilator: joint kernel of all multiplications, via the Gram matrix of
  // z -> L_z.
  Mat sys(n * n, n);
  for (int i = 0; i < n; ++i) {
    const Mat li = left_mul(a, basis_vector(n, i));
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) sys(r * n + c, i) = li(r, c);
  }
  const Mat gramm = sys.transposed() * sys;
  const EigenSym es = jacobi_eigensym(gramm);
  const double lmax = std::max(std::abs(es.values.back()), 1e-300);
  for (int i = 0; i < n; ++i)
    if (std::abs(es.values[i]) <= 1e-9 * lmax) cert.annihilator.push_back(es.vectors.col(i));

  cert.conclusive = !cert.annihilator.empty();
  if (cert.conclusive) {
    const Element& z = cert.annihilator.front();
    cert.ric_on_annihilator = rd.form(rd.Ric, z, z);
    cert.moment_on_annihilator = rd.form(rd.M, z, z);
    cert.no_einstein = cert.tr_ric < 0.0 && cert.ric_on_annihilator >= -tol;
  }
  return cert;
}

}  // namespace jordanis
