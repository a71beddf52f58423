#pragma once

#include <functional>
#include <limits>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "jordanis/algebra.hpp"
#include "jordanis/rng.hpp"

namespace jordanis {

/// Trace form tau(x, y) = Tr L_{xy}. Associative on Jordan algebras; its
/// kernel is the radical.
inline Mat tau_form(const Algebra& a) {
  const int n = a.dim();
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double t = left_mul(a, multiply(a, basis_vector(n, i), basis_vector(n, j))).trace();
      g(i, j) = t;
      g(j, i) = t;
    }
  return g;
}

/// Killing form B(x, y) = Tr L_x L_y. Symmetric, in general not associative.
inline Mat killing_form(const Algebra& a) {
  const int n = a.dim();
  std::vector<Mat> l(n);
  for (int i = 0; i < n; ++i) l[i] = left_mul(a, basis_vector(n, i));
  Mat g(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      const double t = (l[i] * l[j]).trace();
      g(i, j) = t;
      g(j, i) = t;
    }
  return g;
}

/// Orthonormal basis of the kernel of the trace form (coordinate inner
/// product), i.e. the radical of a Jordan algebra.
inline std::vector<Element> radical(const Algebra& a, double tol = kDefaultTol) {
  const EigenSym es = jacobi_eigensym(tau_form(a));
  double lmax = 0.0;
  for (double v : es.values) lmax = std::max(lmax, std::abs(v));
  std::vector<Element> kernel;
  for (int i = 0; i < a.dim(); ++i)
    if (std::abs(es.values[i]) <= tol * std::max(lmax, 1.0)) kernel.push_back(es.vectors.col(i));
  return kernel;
}

struct NilpotencyReport {
  bool nilpotent = false;
  int degree = 0;  // first m with A^m = 0, where A^0 = A and A^{k+1} = A A^k
  std::vector<int> chain_dims;
};

inline NilpotencyReport is_nilpotent(const Algebra& a, double tol = kDefaultTol) {
  const int n = a.dim();
  NilpotencyReport rep;
  std::vector<Vec> current;
  for (int i = 0; i < n; ++i) current.push_back(basis_vector(n, i));
  rep.chain_dims.push_back(n);
  int m = 0;
  while (true) {
    std::vector<Vec> products;
    for (int i = 0; i < n; ++i)
      for (const Vec& b : current) products.push_back(multiply(a, basis_vector(n, i), b));
    // The floor ties "zero product" to the algebra's own magnitude, so a
    // chain step made of pure round-off cannot masquerade as new directions.
    std::vector<Vec> next = span_basis(products, Mat::identity(n), tol, tol * a.scale());
    ++m;
    rep.chain_dims.push_back(static_cast<int>(next.size()));
    if (next.empty()) {
      rep.nilpotent = true;
      rep.degree = m;
      return rep;
    }
    if (next.size() >= current.size()) {
      rep.nilpotent = false;
      return rep;
    }
    current = std::move(next);
  }
}

/// Semisimple iff tau is non-degenerate.
inline bool is_semisimple(const Algebra& a, double tol = kDefaultTol) {
  const EigenSym es = jacobi_eigensym(tau_form(a));
  double lmax = 0.0;
  for (double v : es.values) lmax = std::max(lmax, std::abs(v));
  if (lmax == 0.0) return false;
  for (double v : es.values)
    if (std::abs(v) <= tol * lmax) return false;
  return true;
}

/// Formally real iff tau is positive definite.
inline bool is_formally_real(const Algebra& a, double tol = kDefaultTol) {
  const EigenSym es = jacobi_eigensym(tau_form(a));
  const double lmax = std::abs(es.values.back());
  if (lmax == 0.0) return false;
  return es.values.front() > tol * lmax;
}

inline Element gaussian_element(int n, Rng& rng) {
  Element x(n);
  for (double& v : x) v = rng.gaussian();
  return x;
}

/// dim R[x]: the span of {E, x, x^2, ...}. Returns the degree at which the
/// power sequence becomes dependent.
inline int subalgebra_degree(const Algebra& a, const Element& x, const Element& e,
                             double tol = kDefaultTol) {
  const int n = a.dim();
  std::vector<Vec> basis;
  Element p = e;
  for (int k = 0; k <= n; ++k) {
    std::vector<Vec> trial = basis;
    const double np = norm(p);
    if (np == 0.0) return static_cast<int>(basis.size());
    trial.push_back(scaled(p, 1.0 / np));
    std::vector<Vec> on = gram_schmidt(trial, Mat::identity(n), tol);
    if (on.size() == basis.size()) return static_cast<int>(basis.size());
    basis = std::move(on);
    p = multiply(a, x, p);
  }
  return static_cast<int>(basis.size());
}

struct RankTrace {
  int rank = 0;
  Vec trace_vector;  // tr(x) = <trace_vector, x> in coordinates
};

/// Rank via sampled generic elements, and the reduced trace as the functional
/// (r/n) tau(., E). The result is validated against Tr L_Y restricted to R[Y]
/// on sampled regular elements; a mismatch means the algebra is semisimple
/// but not simple with unequal ideal ratios, which this functional cannot
/// represent.
inline RankTrace rank_and_trace(const Algebra& a, int samples, uint64_t rng_seed,
                                double tol = kDefaultTol) {
  const int n = a.dim();
  const auto e = identity_element(a, tol);
  if (!e) throw NoIdentity("rank is defined relative to an identity element");
  if (!is_semisimple(a, tol))
    throw NotApplicable("reduced trace requires a semisimple algebra");
  RankTrace out;
  std::vector<Element> regulars;
  for (int s = 0; s < std::max(samples, 1); ++s) {
    Rng rng = Rng::split(rng_seed, static_cast<uint64_t>(s));
    const Element y = gaussian_element(n, rng);
    const int deg = subalgebra_degree(a, y, *e, tol);
    if (deg > out.rank) {
      out.rank = deg;
      regulars.clear();
    }
    if (deg == out.rank && regulars.size() < 5) regulars.push_back(y);
  }
  const Mat tau = tau_form(a);
  out.trace_vector = scaled(tau * *e, static_cast<double>(out.rank) / n);
  for (const Element& y : regulars) {
    // Tr of L_y restricted to R[y], via an orthonormal basis of the subalgebra.
    std::vector<Vec> powers;
    Element p = *e;
    for (int k = 0; k < out.rank; ++k) {
      powers.push_back(p);
      p = multiply(a, y, p);
    }
    const std::vector<Vec> q = gram_schmidt(powers, Mat::identity(n), tol);
    const Mat ly = left_mul(a, y);
    double tr_direct = 0.0;
    for (const Vec& b : q) tr_direct += dot(b, ly * b);
    const double tr_formula = dot(out.trace_vector, y);
    if (std::abs(tr_direct - tr_formula) > 1e-6 * (1.0 + std::abs(tr_direct)))
      throw NotApplicable(
          "reduced trace is not a multiple of the trace form; the algebra is "
          "semisimple but its simple ideals have unequal rank/dimension ratios");
  }
  return out;
}

struct SpectralDecomposition {
  std::vector<Element> idempotents;
  std::vector<double> eigenvalues;
  std::vector<double> minimal_polynomial;  // monic, coefficient of lambda^i at index i
};

namespace detail {

inline double eval_poly(const std::vector<double>& coeffs, double x) {
  double v = 0.0;
  for (int i = static_cast<int>(coeffs.size()) - 1; i >= 0; --i) v = v * x + coeffs[i];
  return v;
}

/// Real roots by sign scanning plus bisection. Valid for polynomials with all
/// real simple roots; near-multiple roots surface as sign-preserving dips.
inline std::vector<double> real_roots_scan(const std::vector<double>& coeffs, double radius,
                                           bool* suspicious_dip) {
  const int points = 10000;
  std::vector<double> roots;
  double min_dip = std::numeric_limits<double>::infinity();
  double prev_x = -radius;
  double prev_v = eval_poly(coeffs, prev_x);
  for (int i = 1; i <= points; ++i) {
    const double x = -radius + 2.0 * radius * i / points;
    const double v = eval_poly(coeffs, x);
    if (v == 0.0) {
      roots.push_back(x);
    } else if (prev_v != 0.0 && ((prev_v < 0) != (v < 0))) {
      double lo = prev_x, hi = x, flo = prev_v;
      for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = eval_poly(coeffs, mid);
        if (fm == 0.0) {
          lo = hi = mid;
          break;
        }
        if ((fm < 0) == (flo < 0)) {
          lo = mid;
          flo = fm;
        } else {
          hi = mid;
        }
      }
      roots.push_back(0.5 * (lo + hi));
    } else {
      min_dip = std::min(min_dip, std::abs(v) + std::abs(prev_v));
    }
    prev_x = x;
    prev_v = v;
  }
  if (suspicious_dip) *suspicious_dip = min_dip < 1e-6;
  return roots;
}

}  // namespace detail

/// Spectral decomposition x = sum lambda_i C_i with orthogonal idempotents
/// C_i, via the minimal polynomial on R[x] and Lagrange interpolation.
/// expected_rank, when supplied, rejects non-regular x.
inline SpectralDecomposition spectral_decompose(const Algebra& a, const Element& x,
                                                double tol = kDefaultTol,
                                                std::optional<int> expected_rank = std::nullopt) {
  const int n = a.dim();
  require_element(a, x, "element");
  const auto e = identity_element(a, tol);
  if (!e) throw NoIdentity("spectral decomposition needs a unital algebra");
  const int deg = subalgebra_degree(a, x, *e, tol);
  if (expected_rank && deg < *expected_rank)
    throw RepeatedEigenvalues("element is not regular: dim R[x] = " + std::to_string(deg) +
                              " < rank " + std::to_string(*expected_rank));
  // Monic minimal polynomial: x^deg = sum_{i<deg} a_i x^i.
  std::vector<Element> powers;
  Element p = *e;
  for (int k = 0; k < deg; ++k) {
    powers.push_back(p);
    p = multiply(a, x, p);
  }
  Mat sys(n, deg);
  for (int k = 0; k < deg; ++k) sys.set_col(k, powers[k]);
  const Vec coeff_low = least_squares(sys, p);
  std::vector<double> poly(deg + 1);
  for (int i = 0; i < deg; ++i) poly[i] = -coeff_low[i];
  poly[deg] = 1.0;

  double cauchy = 0.0;
  for (int i = 0; i < deg; ++i) cauchy = std::max(cauchy, std::abs(coeff_low[i]));
  const double radius = std::max(norm(x) * n, 1.0 + cauchy);
  bool dip = false;
  std::vector<double> roots = detail::real_roots_scan(poly, radius, &dip);
  if (static_cast<int>(roots.size()) < deg) {
    if (dip)
      throw RepeatedEigenvalues("minimal polynomial has nearly multiple roots; resample");
    throw NotFormallyReal("minimal polynomial has non-real roots");
  }
  if (static_cast<int>(roots.size()) > deg)
    throw RepeatedEigenvalues("sign scan split a nearly multiple root; resample");
  std::sort(roots.begin(), roots.end(), std::greater<double>());
  double root_scale = 1.0;
  for (double r : roots) root_scale = std::max(root_scale, std::abs(r));
  for (size_t i = 0; i + 1 < roots.size(); ++i)
    if (std::abs(roots[i] - roots[i + 1]) < std::sqrt(tol) * root_scale)
      throw RepeatedEigenvalues("spectral values closer than sqrt(tol); resample");

  SpectralDecomposition sd;
  sd.eigenvalues = roots;
  sd.minimal_polynomial = poly;
  for (int i = 0; i < deg; ++i) {
    Element c = *e;
    for (int j = 0; j < deg; ++j) {
      if (j == i) continue;
      Element shifted = x;
      axpy(shifted, -roots[j], *e);
      c = scaled(multiply(a, c, shifted), 1.0 / (roots[i] - roots[j]));
    }
    sd.idempotents.push_back(c);
  }
  // Invariants: idempotency, orthogonality, reconstruction.
  Element recon(n, 0.0);
  for (int i = 0; i < deg; ++i) {
    const Element sq = multiply(a, sd.idempotents[i], sd.idempotents[i]);
    if (max_abs(sq - sd.idempotents[i]) > 1e-8 * std::max(1.0, max_abs(sd.idempotents[i])))
      throw InternalCheck("spectral idempotent failed C^2 = C");
    for (int j = i + 1; j < deg; ++j)
      if (max_abs(multiply(a, sd.idempotents[i], sd.idempotents[j])) > 1e-8)
        throw InternalCheck("spectral idempotents are not orthogonal");
    axpy(recon, roots[i], sd.idempotents[i]);
  }
  if (max_abs(recon - x) > 1e-8 * std::max(1.0, norm(x)))
    throw InternalCheck("spectral reconstruction failed");
  return sd;
}

namespace detail {

/// tau-orthonormal coordinates; L_x becomes a symmetric matrix there for
/// formally real algebras.
struct TauFrame {
  Mat basis;      // columns: tau-orthonormal basis in algebra coordinates
  Mat basis_inv;
};

inline TauFrame tau_frame(const Algebra& a, double tol = kDefaultTol) {
  const Mat tau = tau_form(a);
  std::vector<Vec> std_basis;
  for (int i = 0; i < a.dim(); ++i) std_basis.push_back(basis_vector(a.dim(), i));
  const std::vector<Vec> on = gram_schmidt(std_basis, tau, tol);
  if (static_cast<int>(on.size()) != a.dim())
    throw NotFormallyReal("trace form is not positive definite");
  TauFrame f;
  f.basis = Mat(a.dim(), a.dim());
  for (int i = 0; i < a.dim(); ++i) f.basis.set_col(i, on[i]);
  f.basis_inv = inverse(f.basis);
  return f;
}

inline int eigenspace_dimension(const Mat& sym, double eigenvalue, double gap) {
  const EigenSym es = jacobi_eigensym(sym);
  int count = 0;
  for (double v : es.values)
    if (std::abs(v - eigenvalue) < gap) ++count;
  return count;
}

}  // namespace detail

/// A Jordan frame: pairwise orthogonal primitive idempotents summing to the
/// identity. Sampled from regular elements; primitivity is certified by
/// dim A(C_i, 1) = 1.
inline std::vector<Element> jordan_frame(const Algebra& a, double tol, uint64_t rng_seed) {
  const int n = a.dim();
  if (!is_formally_real(a, tol)) throw NotFormallyReal("Jordan frames need a formally real algebra");
  const auto e = identity_element(a, tol);
  if (!e) throw NoIdentity("Jordan frames need an identity element");
  const detail::TauFrame tf = detail::tau_frame(a, tol);

  int rank_estimate = 0;
  for (int s = 0; s < 10; ++s) {
    Rng rng = Rng::split(rng_seed, 1000 + static_cast<uint64_t>(s));
    rank_estimate = std::max(rank_estimate, subalgebra_degree(a, gaussian_element(n, rng), *e, tol));
  }
  for (int attempt = 0; attempt < 100; ++attempt) {
    Rng rng = Rng::split(rng_seed, static_cast<uint64_t>(attempt));
    const Element x = gaussian_element(n, rng);
    SpectralDecomposition sd;
    try {
      sd = spectral_decompose(a, x, tol, rank_estimate);
    } catch (const RepeatedEigenvalues&) {
      continue;
    } catch (const NotFormallyReal&) {
      // formal reality was checked up front, so this draw merely landed too
      // close to a degenerate spectrum
      continue;
    }
    bool primitive = true;
    for (const Element& c : sd.idempotents) {
      const Mat l_sym = tf.basis_inv * left_mul(a, c) * tf.basis;
      if (detail::eigenspace_dimension(l_sym, 1.0, 1.0 / 6.0) != 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) return sd.idempotents;
  }
  throw MaxResamples("no regular element with primitive spectral idempotents in 100 draws");
}

struct PeirceData {
  std::vector<Element> frame;
  int rank = 0;
  int d = 0;
  std::map<std::pair<int, int>, std::vector<Element>> blocks;  // keys (i,j), i <= j
  double multiplication_rule_residual = 0.0;
};

/// Simultaneous eigenspace decomposition under the frame multiplications,
/// eigenvalues clustered at {0, 1/2, 1}.
inline PeirceData peirce_decompose(const Algebra& a, const std::vector<Element>& frame,
                                   double tol = kDefaultTol) {
  const int n = a.dim();
  const int r = static_cast<int>(frame.size());
  const double scale = a.scale();
  const auto e = identity_element(a, tol);
  if (!e) throw BadFrame("algebra has no identity element");
  Element sum(n, 0.0);
  for (int i = 0; i < r; ++i) {
    const Element& h = frame[i];
    if (max_abs(multiply(a, h, h) - h) > 100 * tol * scale)
      throw BadFrame("frame element " + std::to_string(i + 1) + " is not idempotent");
    for (int j = i + 1; j < r; ++j)
      if (max_abs(multiply(a, h, frame[j])) > 100 * tol * scale)
        throw BadFrame("frame elements are not orthogonal");
    sum = sum + h;
  }
  if (max_abs(sum - *e) > 100 * tol * scale) throw BadFrame("frame does not sum to the identity");

  const detail::TauFrame tf = detail::tau_frame(a, tol);
  std::vector<Mat> l_sym(r);
  for (int i = 0; i < r; ++i) l_sym[i] = tf.basis_inv * left_mul(a, frame[i]) * tf.basis;

  struct Space {
    Mat q;  // tau-orthonormal columns, in tau-frame coordinates
    std::vector<double> signature;
  };
  std::vector<Space> spaces{{Mat::identity(n), {}}};
  const double allowed[3] = {0.0, 0.5, 1.0};
  for (int i = 0; i < r; ++i) {
    std::vector<Space> refined;
    for (const Space& sp : spaces) {
      const int m = sp.q.cols();
      Mat sub(m, m);
      const Mat lq = l_sym[i] * sp.q;
      for (int p = 0; p < m; ++p)
        for (int q2 = 0; q2 < m; ++q2) {
          double s = 0.0;
          for (int k = 0; k < n; ++k) s += sp.q(k, p) * lq(k, q2);
          sub(p, q2) = s;
        }
      const EigenSym es = jacobi_eigensym(sub);
      std::map<int, std::vector<int>> clusters;
      for (int c = 0; c < m; ++c) {
        int best = -1;
        for (int t = 0; t < 3; ++t)
          if (std::abs(es.values[c] - allowed[t]) < 1.0 / 6.0) best = t;
        if (best < 0)
          throw BadFrame("frame multiplication has an eigenvalue away from {0, 1/2, 1}: " +
                         std::to_string(es.values[c]));
        clusters[best].push_back(c);
      }
      for (const auto& [t, cols] : clusters) {
        Space next;
        next.q = Mat(n, static_cast<int>(cols.size()));
        for (size_t c = 0; c < cols.size(); ++c) {
          const Vec v = es.vectors.col(cols[c]);
          Vec w(n, 0.0);
          for (int k = 0; k < n; ++k)
            for (int p = 0; p < m; ++p) w[k] += sp.q(k, p) * v[p];
          next.q.set_col(static_cast<int>(c), w);
        }
        next.signature = sp.signature;
        next.signature.push_back(allowed[t]);
        refined.push_back(std::move(next));
      }
    }
    spaces = std::move(refined);
  }

  PeirceData out;
  out.frame = frame;
  out.rank = r;
  int accounted = 0;
  for (const Space& sp : spaces) {
    std::vector<int> ones, halves;
    for (int i = 0; i < r; ++i) {
      if (sp.signature[i] == 1.0) ones.push_back(i);
      if (sp.signature[i] == 0.5) halves.push_back(i);
    }
    std::pair<int, int> key;
    if (ones.size() == 1 && halves.empty()) {
      key = {ones[0], ones[0]};
    } else if (ones.empty() && halves.size() == 2) {
      key = {halves[0], halves[1]};
    } else {
      throw BadFrame("eigenvalue signature does not match a Peirce block");
    }
    auto& block = out.blocks[key];
    for (int c = 0; c < sp.q.cols(); ++c) block.push_back(tf.basis * sp.q.col(c));
    accounted += sp.q.cols();
  }
  if (accounted != n) throw BadFrame("Peirce blocks do not fill the algebra");
  for (int i = 0; i < r; ++i) {
    const auto it = out.blocks.find({i, i});
    if (it == out.blocks.end() || it->second.size() != 1)
      throw BadFrame("diagonal Peirce block " + std::to_string(i + 1) + " is not one-dimensional");
  }

  if (r >= 3) {
    int d = -1;
    for (int i = 0; i < r; ++i)
      for (int j = i + 1; j < r; ++j) {
        const auto it = out.blocks.find({i, j});
        const int dim_ij = it == out.blocks.end() ? 0 : static_cast<int>(it->second.size());
        if (d < 0) d = dim_ij;
        if (dim_ij != d) throw BadFrame("off-diagonal Peirce blocks have unequal dimensions");
      }
    out.d = std::max(d, 0);
  } else if (r == 2) {
    out.d = n - 2;
  } else {
    out.d = 0;
  }

  // Multiplication rules. With index sets S(A_ii) = {i}, S(A_ij) = {i, j}:
  // disjoint sets multiply to zero; A_ij A_ij lands in A_ii + A_jj;
  // A_ii A_ij stays in A_ij; A_ij A_jk lands in A_ik.
  const Mat tau = tau_form(a);
  auto project_residual = [&](const Element& p, const std::vector<std::pair<int, int>>& targets) {
    Element res = p;
    for (const auto& key : targets) {
      const auto it = out.blocks.find(key);
      if (it == out.blocks.end()) continue;
      for (const Element& b : it->second) axpy(res, -dot(p, tau * b), b);
    }
    return max_abs(res);
  };
  auto key_of = [](int i, int j) { return std::make_pair(std::min(i, j), std::max(i, j)); };
  auto targets_for = [&](std::pair<int, int> ka, std::pair<int, int> kb) {
    std::vector<std::pair<int, int>> targets;
    const bool diag_a = ka.first == ka.second, diag_b = kb.first == kb.second;
    std::vector<int> shared, sym_diff;
    for (int idx : {ka.first, ka.second, kb.first, kb.second}) {
      const bool in_a = idx == ka.first || idx == ka.second;
      const bool in_b = idx == kb.first || idx == kb.second;
      if (in_a && in_b && std::find(shared.begin(), shared.end(), idx) == shared.end())
        shared.push_back(idx);
      if (in_a != in_b && std::find(sym_diff.begin(), sym_diff.end(), idx) == sym_diff.end())
        sym_diff.push_back(idx);
    }
    if (shared.empty()) return targets;  // product must vanish
    if (ka == kb) {
      if (diag_a)
        targets = {ka};
      else
        targets = {key_of(ka.first, ka.first), key_of(ka.second, ka.second)};
    } else if (diag_a || diag_b) {
      targets = {diag_a ? kb : ka};
    } else {
      targets = {key_of(sym_diff[0], sym_diff[1])};
    }
    return targets;
  };
  double worst = 0.0;
  for (const auto& [key_a, basis_a] : out.blocks)
    for (const auto& [key_b, basis_b] : out.blocks)
      for (const Element& u : basis_a)
        for (const Element& v : basis_b)
          worst = std::max(worst, project_residual(multiply(a, u, v), targets_for(key_a, key_b)));
  out.multiplication_rule_residual = worst;
  return out;
}

}  // namespace jordanis
