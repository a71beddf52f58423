#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "jordanis/errors.hpp"

namespace jordanis {

using Vec = std::vector<double>;

/// Dense row-major matrix. Everything in this library is small (n <= ~30),
/// so no attempt is made at blocking or sparsity.
class Mat {
 public:
  Mat() = default;
  Mat(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, 0.0) {}

  static Mat identity(int n) {
    Mat m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int r, int c) { return a_[static_cast<size_t>(r) * cols_ + c]; }
  double operator()(int r, int c) const { return a_[static_cast<size_t>(r) * cols_ + c]; }

  const std::vector<double>& data() const { return a_; }
  std::vector<double>& data() { return a_; }

  Vec col(int c) const {
    Vec v(rows_);
    for (int r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
    return v;
  }
  void set_col(int c, const Vec& v) {
    for (int r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
  }

  Mat transposed() const {
    Mat t(cols_, rows_);
    for (int r = 0; r < rows_; ++r)
      for (int c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
    return t;
  }

  Mat& operator+=(const Mat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
    return *this;
  }
  Mat& operator-=(const Mat& o) {
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
    return *this;
  }
  Mat& operator*=(double s) {
    for (double& x : a_) x *= s;
    return *this;
  }

  friend Mat operator+(Mat a, const Mat& b) { return a += b; }
  friend Mat operator-(Mat a, const Mat& b) { return a -= b; }
  friend Mat operator*(Mat a, double s) { return a *= s; }
  friend Mat operator*(double s, Mat a) { return a *= s; }

  friend Mat operator*(const Mat& a, const Mat& b) {
    Mat c(a.rows_, b.cols_);
    for (int i = 0; i < a.rows_; ++i)
      for (int k = 0; k < a.cols_; ++k) {
        const double aik = a(i, k);
        if (aik == 0.0) continue;
        for (int j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Vec operator*(const Mat& a, const Vec& x) {
    Vec y(a.rows_, 0.0);
    for (int i = 0; i < a.rows_; ++i) {
      double s = 0.0;
      for (int j = 0; j < a.cols_; ++j) s += a(i, j) * x[j];
      y[i] = s;
    }
    return y;
  }

  double max_abs() const {
    double m = 0.0;
    for (double x : a_) m = std::max(m, std::abs(x));
    return m;
  }

  double frobenius() const {
    double s = 0.0;
    for (double x : a_) s += x * x;
    return std::sqrt(s);
  }

  double trace() const {
    double s = 0.0;
    for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
    return s;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> a_;
};

inline double dot(const Vec& x, const Vec& y) {
  double s = 0.0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

inline double norm(const Vec& x) { return std::sqrt(dot(x, x)); }

inline double max_abs(const Vec& x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

inline Vec& axpy(Vec& y, double a, const Vec& x) {
  for (size_t i = 0; i < y.size(); ++i) y[i] += a * x[i];
  return y;
}

inline Vec scaled(Vec x, double s) {
  for (double& v : x) v *= s;
  return x;
}

inline Vec operator+(Vec a, const Vec& b) { return axpy(a, 1.0, b); }
inline Vec operator-(Vec a, const Vec& b) { return axpy(a, -1.0, b); }

inline Vec basis_vector(int n, int i) {
  Vec v(n, 0.0);
  v[i] = 1.0;
  return v;
}

/// LU factorization with partial pivoting, in place. Returns the permutation
/// sign, or 0 when a pivot underflows.
inline int lu_factor(Mat& a, std::vector<int>& piv) {
  const int n = a.rows();
  piv.resize(n);
  std::iota(piv.begin(), piv.end(), 0);
  int sign = 1;
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (p != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(piv[k], piv[p]);
      sign = -sign;
    }
    if (a(k, k) == 0.0) return 0;
    for (int i = k + 1; i < n; ++i) {
      a(i, k) /= a(k, k);
      const double lik = a(i, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= lik * a(k, j);
    }
  }
  return sign;
}

inline double determinant(Mat a) {
  std::vector<int> piv;
  const int sign = lu_factor(a, piv);
  if (sign == 0) return 0.0;
  double d = sign;
  for (int i = 0; i < a.rows(); ++i) d *= a(i, i);
  return d;
}

inline Vec lu_solve_factored(const Mat& lu, const std::vector<int>& piv, const Vec& b) {
  const int n = lu.rows();
  Vec x(n);
  for (int i = 0; i < n; ++i) x[i] = b[piv[i]];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < i; ++j) x[i] -= lu(i, j) * x[j];
  for (int i = n - 1; i >= 0; --i) {
    for (int j = i + 1; j < n; ++j) x[i] -= lu(i, j) * x[j];
    x[i] /= lu(i, i);
  }
  return x;
}

inline Vec solve(Mat a, const Vec& b) {
  std::vector<int> piv;
  if (lu_factor(a, piv) == 0) throw SingularMatrix("linear solve hit a zero pivot");
  return lu_solve_factored(a, piv, b);
}

inline Mat inverse(Mat a) {
  const int n = a.rows();
  std::vector<int> piv;
  if (lu_factor(a, piv) == 0) throw SingularMatrix("matrix is not invertible");
  Mat inv(n, n);
  for (int c = 0; c < n; ++c) inv.set_col(c, lu_solve_factored(a, piv, basis_vector(n, c)));
  return inv;
}

/// Least squares min ||A x - b|| via Householder QR, for rows >= cols.
inline Vec least_squares(Mat a, Vec b) {
  const int m = a.rows(), n = a.cols();
  for (int k = 0; k < n; ++k) {
    double alpha = 0.0;
    for (int i = k; i < m; ++i) alpha += a(i, k) * a(i, k);
    alpha = std::sqrt(alpha);
    if (alpha == 0.0) continue;
    if (a(k, k) > 0) alpha = -alpha;
    Vec v(m, 0.0);
    v[k] = a(k, k) - alpha;
    for (int i = k + 1; i < m; ++i) v[i] = a(i, k);
    double vtv = 0.0;
    for (int i = k; i < m; ++i) vtv += v[i] * v[i];
    if (vtv == 0.0) continue;
    for (int j = k; j < n; ++j) {
      double s = 0.0;
      for (int i = k; i < m; ++i) s += v[i] * a(i, j);
      s *= 2.0 / vtv;
      for (int i = k; i < m; ++i) a(i, j) -= s * v[i];
    }
    double s = 0.0;
    for (int i = k; i < m; ++i) s += v[i] * b[i];
    s *= 2.0 / vtv;
    for (int i = k; i < m; ++i) b[i] -= s * v[i];
  }
  Vec x(n, 0.0);
  for (int i = n - 1; i >= 0; --i) {
    double s = b[i];
    for (int j = i + 1; j < n; ++j) s -= a(i, j) * x[j];
    x[i] = (a(i, i) != 0.0) ? s / a(i, i) : 0.0;
  }
  return x;
}

struct EigenSym {
  Vec values;   // ascending
  Mat vectors;  // columns, orthonormal
};

/// Cyclic Jacobi for symmetric matrices. Deterministic sweep order; iterates
/// until the off-diagonal Frobenius norm drops below 1e-12 * ||A||_F.
inline EigenSym jacobi_eigensym(Mat a, int max_sweeps = 128) {
  const int n = a.rows();
  Mat v = Mat::identity(n);
  const double target = 1e-12 * std::max(a.frobenius(), 1e-300);
  for (int sweep = 0; sweep < max_sweeps; ++sweep) {
    double off = 0.0;
    for (int p = 0; p < n; ++p)
      for (int q = p + 1; q < n; ++q) off += 2.0 * a(p, q) * a(p, q);
    if (std::sqrt(off) <= target) break;
    for (int p = 0; p < n; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (int k = 0; k < n; ++k) {
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (int k = 0; k < n; ++k) {
          const double apk = a(p, k), aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }
  EigenSym es;
  es.values.resize(n);
  for (int i = 0; i < n; ++i) es.values[i] = a(i, i);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return es.values[i] < es.values[j]; });
  EigenSym sorted;
  sorted.values.resize(n);
  sorted.vectors = Mat(n, n);
  for (int i = 0; i < n; ++i) {
    sorted.values[i] = es.values[order[i]];
    sorted.vectors.set_col(i, v.col(order[i]));
  }
  return sorted;
}

/// Modified Gram-Schmidt against an SPD Gram matrix, with one
/// reorthogonalization pass. Vectors whose remainder norm falls below
/// drop_tol * original norm are discarded.
inline std::vector<Vec> gram_schmidt(const std::vector<Vec>& input, const Mat& gram,
                                     double drop_tol = 1e-9) {
  std::vector<Vec> basis;
  for (const Vec& v0 : input) {
    Vec v = v0;
    const double n0 = std::sqrt(std::max(dot(v, gram * v), 0.0));
    if (n0 == 0.0) continue;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& b : basis) axpy(v, -dot(b, gram * v), b);
    const double nv = std::sqrt(std::max(dot(v, gram * v), 0.0));
    if (nv <= drop_tol * n0) continue;
    basis.push_back(scaled(v, 1.0 / nv));
  }
  return basis;
}

/// Orthonormal basis of the span with singular-value-style dropping:
/// remainders below rel_tol times the largest input norm, or below the
/// absolute floor, count as zero. Unlike gram_schmidt, near-zero inputs
/// cannot be inflated into spurious directions.
inline std::vector<Vec> span_basis(const std::vector<Vec>& input, const Mat& gram,
                                   double rel_tol = 1e-9, double abs_floor = 0.0) {
  double scale = 0.0;
  for (const Vec& v : input) scale = std::max(scale, std::sqrt(std::max(dot(v, gram * v), 0.0)));
  std::vector<Vec> basis;
  const double cutoff = std::max(rel_tol * scale, abs_floor);
  if (scale == 0.0 || scale <= cutoff) return basis;
  for (const Vec& v0 : input) {
    Vec v = v0;
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& b : basis) axpy(v, -dot(b, gram * v), b);
    const double nv = std::sqrt(std::max(dot(v, gram * v), 0.0));
    if (nv <= cutoff) continue;
    basis.push_back(scaled(v, 1.0 / nv));
  }
  return basis;
}

/// Dimension of the span of the given vectors (coordinate inner product).
inline int numerical_rank(const std::vector<Vec>& vectors, int ambient_dim,
                          double rel_tol = 1e-9) {
  if (vectors.empty()) return 0;
  return static_cast<int>(span_basis(vectors, Mat::identity(ambient_dim), rel_tol).size());
}

}  // namespace jordanis
