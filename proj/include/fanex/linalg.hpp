#pragma once

#include "fanex/rational.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace fanex {

/// Dense row-major real matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<double>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_square() const { return rows_ == cols_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// Dense matrix of exact rationals.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  RationalMatrix(std::initializer_list<std::initializer_list<Rational>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Rational& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix to_double() const {
    Matrix m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = fanex::to_double((*this)(i, j));
    return m;
  }

  friend bool operator==(const RationalMatrix&, const RationalMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct SymmetricEigen {
  std::vector<double> values;  // ascending
  Matrix vectors;              // column j belongs to values[j]
};

/// Cyclic Jacobi rotations for a real symmetric matrix.
inline SymmetricEigen jacobi_eigen(Matrix a, double tol = 1e-14, int max_sweeps = 100) {
  if (!a.is_square()) throw std::invalid_argument("jacobi_eigen needs a square matrix");
  const std::size_t n = a.rows();
  Matrix v(n, n);
  for (std::size_t i = 0; i < n; ++i) v(i, i) = 1.0;

  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
    return std::sqrt(s);
  };
  double scale = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) scale = std::max(scale, std::abs(a(i, j)));
  if (scale == 0.0) scale = 1.0;

  for (int sweep = 0; sweep < max_sweeps && off_norm() > tol * scale; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) < std::numeric_limits<double>::min()) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const double akp = a(k, p);
          const double akq = a(k, q);
          a(k, p) = c * akp - s * akq;
          a(k, q) = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double apk = a(p, k);
          const double aqk = a(q, k);
          a(p, k) = c * apk - s * aqk;
          a(q, k) = s * apk + c * aqk;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const double vkp = v(k, p);
          const double vkq = v(k, q);
          v(k, p) = c * vkp - s * vkq;
          v(k, q) = s * vkp + c * vkq;
        }
      }
    }
  }

  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return a(x, x) < a(y, y); });
  SymmetricEigen out;
  out.values.resize(n);
  out.vectors = Matrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.values[j] = a(order[j], order[j]);
    for (std::size_t i = 0; i < n; ++i) out.vectors(i, j) = v(i, order[j]);
  }
  return out;
}

/// S with S_ij = sqrt(M_ij·M_ji). Similar to M whenever M = D·S·D^{-1} for a
/// positive diagonal D, which holds for quotient matrices of partitions.
inline Matrix symmetrized(const Matrix& m) {
  if (!m.is_square()) throw std::invalid_argument("symmetrized needs a square matrix");
  Matrix s(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s(i, i) = m(i, i);
    for (std::size_t j = i + 1; j < m.cols(); ++j) {
      const double p = m(i, j) * m(j, i);
      if (p < 0) throw std::invalid_argument("matrix is not diagonally symmetrizable");
      s(i, j) = s(j, i) = std::sqrt(p);
    }
  }
  return s;
}

struct PerronResult {
  double rho = 0.0;
  std::vector<double> vector;  // max entry 1
  double lower = 0.0;          // Collatz–Wielandt bracket at exit
  double upper = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Perron root of an entrywise nonnegative square matrix by shifted power
/// iteration. For positive iterates x, min_i (Mx)_i/x_i <= rho <= max_i (Mx)_i/x_i,
/// so `converged` means the bracket is narrower than tol·max(1, rho).
inline PerronResult perron_root(const Matrix& m, double tol = 1e-13, int max_iterations = 200000) {
  if (!m.is_square() || m.rows() == 0) throw std::invalid_argument("perron_root needs a nonempty square matrix");
  const std::size_t n = m.rows();
  double shift = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (m(i, j) < 0) throw std::invalid_argument("perron_root needs a nonnegative matrix");
      row += m(i, j);
    }
    shift = std::max(shift, row);
  }
  PerronResult out;
  std::vector<double> x(n, 1.0);
  std::vector<double> mx(n);
  if (shift == 0.0) {
    out.vector = x;
    out.converged = true;
    return out;
  }
  for (int it = 1; it <= max_iterations; ++it) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = 0.0;
    bool positive = true;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t j = 0; j < n; ++j) s += m(i, j) * x[j];
      mx[i] = s;
      if (x[i] > 0) {
        lo = std::min(lo, s / x[i]);
        hi = std::max(hi, s / x[i]);
      } else {
        positive = false;
      }
    }
    double top = 0.0;
    for (std::size_t i = 0; i < n; ++i) top = std::max(top, mx[i]);
    const double xmax = *std::max_element(x.begin(), x.end());
    const double estimate = top / xmax;
    out.iterations = it;
    out.lower = positive ? lo : 0.0;
    out.upper = positive ? hi : estimate;
    out.rho = positive ? 0.5 * (lo + hi) : estimate;
    if (positive && hi - lo <= tol * std::max(1.0, hi)) {
      out.converged = true;
      break;
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = mx[i] + shift * x[i];
      norm = std::max(norm, x[i]);
    }
    for (auto& xi : x) xi /= norm;
  }
  const double xmax = *std::max_element(x.begin(), x.end());
  out.vector = x;
  for (auto& xi : out.vector) xi /= xmax;
  return out;
}

/// Largest eigenvalue through Jacobi on symmetrized(m).
inline double largest_eigenvalue_symmetrized(const Matrix& m) { return jacobi_eigen(symmetrized(m)).values.back(); }

/// det(x·I - M) by cofactor expansion along the first row.
inline Rational characteristic_determinant(const RationalMatrix& m, const Rational& x) {
  if (m.rows() != m.cols()) throw std::invalid_argument("characteristic_determinant needs a square matrix");
  const std::size_t n = m.rows();
  RationalMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a(i, j) = (i == j ? x : Rational(0)) - m(i, j);

  struct Expand {
    static Rational det(const RationalMatrix& a, std::vector<std::size_t>& cols, std::size_t row) {
      if (cols.empty()) return Rational(1);
      Rational total(0);
      for (std::size_t idx = 0; idx < cols.size(); ++idx) {
        const std::size_t c = cols[idx];
        if (a(row, c) == 0) continue;
        std::vector<std::size_t> rest;
        rest.reserve(cols.size() - 1);
        for (std::size_t j = 0; j < cols.size(); ++j)
          if (j != idx) rest.push_back(cols[j]);
        Rational term = a(row, c) * det(a, rest, row + 1);
        if (idx % 2 == 0) total += term;
        else total -= term;
      }
      return total;
    }
  };
  std::vector<std::size_t> cols(n);
  for (std::size_t j = 0; j < n; ++j) cols[j] = j;
  return Expand::det(a, cols, 0);
}

/// Polynomial with exact coefficients, constant term first.
struct Polynomial {
  std::vector<Rational> coeffs;

  int degree() const { return static_cast<int>(coeffs.size()) - 1; }

  Rational operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
    return acc;
  }
  double operator()(double x) const {
    double acc = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + fanex::to_double(*it);
    return acc;
  }

  friend Polynomial operator-(const Polynomial& a, const Polynomial& b) {
    Polynomial out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i] += a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] -= b.coeffs[i];
    while (out.coeffs.size() > 1 && out.coeffs.back() == 0) out.coeffs.pop_back();
    return out;
  }
  friend bool operator==(const Polynomial&, const Polynomial&) = default;
};

/// x^3 + c2 x^2 + c1 x + c0.
inline Polynomial monic_cubic(Rational c2, Rational c1, Rational c0) {
  return Polynomial{{std::move(c0), std::move(c1), std::move(c2), Rational(1)}};
}

}  // namespace fanex
