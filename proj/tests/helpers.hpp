#pragma once

#include <vector>

#include "jordanis/jordanis.hpp"

namespace testalg {

using namespace jordanis;

// e1 e1 = e1, e2 e2 = e2: the split two-dimensional semisimple algebra.
inline Algebra split_two() {
  return make_algebra(2, {{{0, 0}, {1, 0}}, {{1, 1}, {0, 1}}}, true, "split2");
}

// e1 e1 = e1, e2 e2 = -e1, e1 e2 = e2: the complex numbers as a real algebra.
inline Algebra complex_two() {
  return make_algebra(2, {{{0, 0}, {1, 0}}, {{1, 1}, {-1, 0}}, {{0, 1}, {0, 1}}}, true, "complex2");
}

// e1 e1 = e1, e1 e_j = e_j for j >= 2.
inline Algebra semidirect(int n) {
  std::vector<std::pair<std::pair<int, int>, Vec>> prods;
  prods.push_back({{0, 0}, basis_vector(n, 0)});
  for (int j = 1; j < n; ++j) prods.push_back({{0, j}, basis_vector(n, j)});
  return make_algebra(n, prods, true, "semidirect");
}

// e_i e_i = e_i for all i.
inline Algebra diagonal_idempotents(int n) {
  std::vector<std::pair<std::pair<int, int>, Vec>> prods;
  for (int i = 0; i < n; ++i) prods.push_back({{i, i}, basis_vector(n, i)});
  return make_algebra(n, prods, true, "diag-idem");
}

// e1 e1 = e1, e1 e_j = e_j / 2 for j >= 2.
inline Algebra half_action(int n) {
  std::vector<std::pair<std::pair<int, int>, Vec>> prods;
  prods.push_back({{0, 0}, basis_vector(n, 0)});
  for (int j = 1; j < n; ++j) prods.push_back({{0, j}, scaled(basis_vector(n, j), 0.5)});
  return make_algebra(n, prods, true, "half-action");
}

// e1 e1 = e2 (nilpotent of degree 2).
inline Algebra nil_square() { return make_algebra(2, {{{0, 0}, {0, 1}}}, true, "nil2"); }

// e1 e1 = e2, e1 e2 = e3 (nilpotent of degree 3).
inline Algebra nil_chain3() {
  return make_algebra(3, {{{0, 0}, {0, 1, 0}}, {{0, 1}, {0, 0, 1}}}, true, "nil3");
}

// The rank-two matrix table: e1 e1 = e1, e2 e2 = e2, e3 e3 = e1 + e2,
// e1 e3 = e2 e3 = e3 / 2.
inline Algebra sym2_table() {
  return make_algebra(3,
                      {{{0, 0}, {1, 0, 0}},
                       {{1, 1}, {0, 1, 0}},
                       {{2, 2}, {1, 1, 0}},
                       {{0, 2}, {0, 0, 0.5}},
                       {{1, 2}, {0, 0, 0.5}}},
                      true, "sym2");
}

inline Algebra trivial(int n) { return Algebra(n, "trivial"); }

inline Algebra direct_sum(const std::vector<Algebra>& parts) {
  int n = 0;
  for (const Algebra& p : parts) n += p.dim();
  Algebra out(n, "sum");
  int off = 0;
  for (const Algebra& p : parts) {
    const int k = p.dim();
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j)
        for (int l = 0; l < k; ++l) out.c(off + i, off + j, off + l) = p.c(i, j, l);
    off += k;
  }
  return out;
}

inline Mat random_spd(int n, Rng& rng) {
  Mat w(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) w(i, j) = rng.gaussian();
  Mat g = w * w.transposed();
  for (int i = 0; i < n; ++i) g(i, i) += n;
  return g;
}

/// Well-conditioned random transform: orthogonalized Gaussian columns with
/// singular values in [1, 1.5].
inline Mat random_well_conditioned(int n, Rng& rng) {
  std::vector<Vec> cols;
  for (int i = 0; i < n; ++i) {
    Vec v(n);
    for (double& x : v) x = rng.gaussian();
    cols.push_back(v);
  }
  std::vector<Vec> on = gram_schmidt(cols, Mat::identity(n), 1e-9);
  while (static_cast<int>(on.size()) < n) {
    Vec v(n);
    for (double& x : v) x = rng.gaussian();
    on.push_back(v);
    on = gram_schmidt(on, Mat::identity(n), 1e-9);
  }
  Mat q(n, n);
  for (int i = 0; i < n; ++i) q.set_col(i, on[i]);
  Mat d(n, n);
  for (int i = 0; i < n; ++i) d(i, i) = 1.0 + 0.5 * rng.next_double();
  return q * d;
}

/// Seeded corpus member: a direct sum of known Jordan tables pushed through
/// a well-conditioned change of basis. Every member passes check_jordan.
inline Algebra random_jordan(int target_dim, Rng& rng) {
  std::vector<Algebra> parts;
  int left = target_dim;
  while (left > 0) {
    const int pick = static_cast<int>(rng.next_below(6));
    if (pick == 0) {
      parts.push_back(make_algebra(1, {{{0, 0}, {1}}}, true));
      left -= 1;
    } else if (pick == 1) {
      parts.push_back(trivial(1));
      left -= 1;
    } else if (pick == 2 && left >= 2) {
      parts.push_back(rng.next_below(2) ? split_two() : complex_two());
      left -= 2;
    } else if (pick == 3 && left >= 2) {
      parts.push_back(rng.next_below(2) ? nil_square() : semidirect(2));
      left -= 2;
    } else if (pick == 4 && left >= 3) {
      parts.push_back(rng.next_below(2) ? sym2_table() : nil_chain3());
      left -= 3;
    } else if (pick == 5 && left >= 3) {
      const int k = 3 + static_cast<int>(rng.next_below(static_cast<uint64_t>(left - 2)));
      ClassicalSpec spec{Family::Spin, k, std::nullopt};
      parts.push_back(build_classical(spec).algebra);
      left -= k;
    }
  }
  Algebra sum = direct_sum(parts);
  if (sum.max_structure_constant() == 0.0) {
    // All parts came out trivial; give the first coordinate an idempotent.
    sum.c(0, 0, 0) = 1.0;
  }
  return base_change(sum, random_well_conditioned(sum.dim(), rng));
}

}  // namespace testalg
