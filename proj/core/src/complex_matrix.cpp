// Copyright 2026 The Unlearn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "unlearn/complex_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "unlearn/errors.hpp"

namespace unlearn {

namespace {

constexpr int kMaxSweeps = 100;
// Columns (or off-diagonal entries) count as orthogonal once the cosine of
// their angle drops below this.
constexpr double kJacobiEpsilon = 1e-15;

std::string shape_string(const ComplexMatrix& a) {
  return std::to_string(a.rows()) + "x" + std::to_string(a.cols());
}

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeError(std::string(op) + ": shape mismatch " + shape_string(a) + " vs " +
                     shape_string(b));
  }
}

void require_square(const ComplexMatrix& a, const char* op) {
  if (!a.is_square()) {
    throw ShapeError(std::string(op) + ": expected a square matrix, got " + shape_string(a));
  }
}

// Column-major scratch storage for the Jacobi iterations.
struct Columns {
  std::size_t rows;
  std::vector<std::vector<Complex>> cols;

  static Columns of(const ComplexMatrix& a) {
    Columns out{a.rows(), std::vector<std::vector<Complex>>(a.cols(), std::vector<Complex>(a.rows()))};
    for (std::size_t r = 0; r < a.rows(); ++r) {
      for (std::size_t c = 0; c < a.cols(); ++c) {
        out.cols[c][r] = a(r, c);
      }
    }
    return out;
  }

  static Columns identity(std::size_t n) {
    Columns out{n, std::vector<std::vector<Complex>>(n, std::vector<Complex>(n))};
    for (std::size_t i = 0; i < n; ++i) {
      out.cols[i][i] = 1.0;
    }
    return out;
  }

  ComplexMatrix to_matrix(std::span<const std::size_t> order) const {
    std::vector<Complex> entries(rows * order.size());
    for (std::size_t c = 0; c < order.size(); ++c) {
      for (std::size_t r = 0; r < rows; ++r) {
        entries[r * order.size() + c] = cols[order[c]][r];
      }
    }
    return ComplexMatrix(rows, order.size(), std::move(entries));
  }
};

Complex inner(const std::vector<Complex>& x, const std::vector<Complex>& y) {
  Complex s = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    s += std::conj(x[i]) * y[i];
  }
  return s;
}

double norm2(const std::vector<Complex>& x) {
  double s = 0.0;
  for (const Complex& v : x) {
    s += std::norm(v);
  }
  return s;
}

// Rotation that zeroes the real symmetric 2x2 off-diagonal: returns (c, s)
// for R = [[c, s], [-s, c]] given diagonal (alpha, beta) and off-diagonal g > 0.
std::pair<double, double> jacobi_rotation(double alpha, double beta, double g) {
  const double zeta = (beta - alpha) / (2.0 * g);
  const double t = (zeta >= 0.0 ? 1.0 : -1.0) / (std::abs(zeta) + std::sqrt(1.0 + zeta * zeta));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  return {c, c * t};
}

// Appends orthonormal columns to `basis` until it has `target` columns.
void complete_basis(std::vector<std::vector<Complex>>& basis, std::size_t dim, std::size_t target) {
  while (basis.size() < target) {
    std::vector<Complex> best;
    double best_norm = -1.0;
    for (std::size_t k = 0; k < dim; ++k) {
      std::vector<Complex> v(dim);
      v[k] = 1.0;
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) {
          const Complex proj = inner(b, v);
          for (std::size_t i = 0; i < dim; ++i) {
            v[i] -= proj * b[i];
          }
        }
      }
      const double n = norm2(v);
      if (n > best_norm) {
        best_norm = n;
        best = std::move(v);
      }
    }
    const double scale = 1.0 / std::sqrt(best_norm);
    for (Complex& x : best) {
      x *= scale;
    }
    basis.push_back(std::move(best));
  }
}

// Requires rows >= cols.
SvdResult svd_tall(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  Columns work = Columns::of(a);
  Columns v = Columns::identity(n);

  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    converged = true;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        auto& ap = work.cols[p];
        auto& aq = work.cols[q];
        const double alpha = norm2(ap);
        const double beta = norm2(aq);
        const Complex gamma = inner(ap, aq);
        const double g = std::abs(gamma);
        if (g <= kJacobiEpsilon * std::sqrt(alpha * beta) || g < 1e-300) {
          continue;
        }
        converged = false;
        const Complex phase = std::conj(gamma) / g;  // e^{-i arg(gamma)}
        const auto [c, s] = jacobi_rotation(alpha, beta, g);
        for (std::size_t i = 0; i < m; ++i) {
          const Complex xp = ap[i];
          const Complex xq = aq[i] * phase;
          ap[i] = c * xp - s * xq;
          aq[i] = s * xp + c * xq;
        }
        auto& vp = v.cols[p];
        auto& vq = v.cols[q];
        for (std::size_t i = 0; i < n; ++i) {
          const Complex xp = vp[i];
          const Complex xq = vq[i] * phase;
          vp[i] = c * xp - s * xq;
          vq[i] = s * xp + c * xq;
        }
      }
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "svd: no convergence after " << kMaxSweeps << " sweeps (||A||_F = " << a.frobenius_norm()
        << ")";
    throw NumericError(msg.str());
  }

  std::vector<double> sigma(n);
  for (std::size_t j = 0; j < n; ++j) {
    sigma[j] = std::sqrt(norm2(work.cols[j]));
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return sigma[x] > sigma[y]; });

  const double sigma_max = n > 0 ? sigma[order[0]] : 0.0;
  // Directions this small are numerically null; their normalized columns are
  // noise and are replaced by an orthonormal completion.
  const double null_floor = std::max(sigma_max * 1e-13, 1e-300);

  std::vector<std::vector<Complex>> left;
  std::vector<double> sorted_sigma;
  for (std::size_t j : order) {
    sorted_sigma.push_back(sigma[j]);
    if (sigma[j] > null_floor) {
      std::vector<Complex> u = work.cols[j];
      for (Complex& x : u) {
        x /= sigma[j];
      }
      left.push_back(std::move(u));
    }
  }
  std::vector<std::vector<Complex>> kept = left;
  complete_basis(kept, m, m);

  // Completed columns belong after the non-null ones, which is where the null
  // singular values sit in the sorted order.
  Columns u_cols{m, std::move(kept)};
  std::vector<std::size_t> identity_order(m);
  std::iota(identity_order.begin(), identity_order.end(), std::size_t{0});
  ComplexMatrix u = u_cols.to_matrix(identity_order);
  ComplexMatrix vmat = v.to_matrix(order);
  return SvdResult{std::move(u), std::move(sorted_sigma), dagger(vmat)};
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("ComplexMatrix: dimensions must be positive");
  }
}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (rows == 0 || cols == 0) {
    throw ShapeError("ComplexMatrix: dimensions must be positive");
  }
  if (entries_.size() != rows * cols) {
    throw ShapeError("ComplexMatrix: expected " + std::to_string(rows * cols) + " entries, got " +
                     std::to_string(entries_.size()));
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericError("ComplexMatrix: non-finite entry");
    }
  }
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  if (rows_ == 0 || cols_ == 0) {
    throw ShapeError("ComplexMatrix: dimensions must be positive");
  }
  entries_.reserve(rows_ * cols_);
  for (const auto& row : rows) {
    if (row.size() != cols_) {
      throw ShapeError("ComplexMatrix: ragged row initializer");
    }
    entries_.insert(entries_.end(), row.begin(), row.end());
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw NumericError("ComplexMatrix: non-finite entry");
    }
  }
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i * n + i] = 1.0;
  }
  return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  std::vector<Complex> d(values.begin(), values.end());
  return diagonal(std::span<const Complex>(d));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const Complex> values) {
  const std::size_t n = values.size();
  std::vector<Complex> e(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    e[i * n + i] = values[i];
  }
  return ComplexMatrix(n, n, std::move(e));
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> values) {
  return diagonal(std::span<const double>(values.begin(), values.size()));
}

ComplexMatrix ComplexMatrix::column(std::span<const Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values.begin(), values.end()));
}

ComplexMatrix ComplexMatrix::column(std::initializer_list<Complex> values) {
  return ComplexMatrix(values.size(), 1, std::vector<Complex>(values));
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) {
    t += (*this)(i, i);
  }
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const Complex& z : entries_) {
    s += std::norm(z);
  }
  return std::sqrt(s);
}

ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator+");
  std::vector<Complex> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = a.entries_[i] + b.entries_[i];
  }
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "operator-");
  std::vector<Complex> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = a.entries_[i] - b.entries_[i];
  }
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) { return multiply(a, b); }

ComplexMatrix operator*(Complex s, const ComplexMatrix& a) {
  std::vector<Complex> e(a.entries_.size());
  for (std::size_t i = 0; i < e.size(); ++i) {
    e[i] = s * a.entries_[i];
  }
  return ComplexMatrix(a.rows_, a.cols_, std::move(e));
}

ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw ShapeError("multiply: " + shape_string(a) + " times " + shape_string(b));
  }
  std::vector<Complex> e(a.rows() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < b.cols(); ++j) {
        e[i * b.cols() + j] += aik * b(k, j);
      }
    }
  }
  return ComplexMatrix(a.rows(), b.cols(), std::move(e));
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  std::vector<Complex> e(a.rows() * a.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      e[c * a.rows() + r] = std::conj(a(r, c));
    }
  }
  return ComplexMatrix(a.cols(), a.rows(), std::move(e));
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  std::vector<Complex> e(rows * cols);
  for (std::size_t ar = 0; ar < a.rows(); ++ar) {
    for (std::size_t ac = 0; ac < a.cols(); ++ac) {
      for (std::size_t br = 0; br < b.rows(); ++br) {
        for (std::size_t bc = 0; bc < b.cols(); ++bc) {
          e[(ar * b.rows() + br) * cols + ac * b.cols() + bc] = a(ar, ac) * b(br, bc);
        }
      }
    }
  }
  return ComplexMatrix(rows, cols, std::move(e));
}

double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "frobenius_distance");
  double s = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) {
    s += std::norm(a.entries()[i] - b.entries()[i]);
  }
  return std::sqrt(s);
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
  return a.is_square() && frobenius_distance(a, dagger(a)) <= tol;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
  return a.is_square() && frobenius_distance(dagger(a) * a, ComplexMatrix::identity(a.rows())) <= tol;
}

ComplexMatrix SvdResult::reconstruct() const {
  const std::size_t m = left_unitary.rows();
  const std::size_t n = right_unitary_dagger.rows();
  std::vector<Complex> e(m * n);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t k = 0; k < singular_values.size(); ++k) {
      const Complex uk = left_unitary(i, k) * singular_values[k];
      for (std::size_t j = 0; j < n; ++j) {
        e[i * n + j] += uk * right_unitary_dagger(k, j);
      }
    }
  }
  return ComplexMatrix(m, n, std::move(e));
}

SvdResult svd(const ComplexMatrix& a) {
  if (a.rows() >= a.cols()) {
    return svd_tall(a);
  }
  // a^dagger = U' S V'^dagger  =>  a = V' S U'^dagger.
  SvdResult t = svd_tall(dagger(a));
  return SvdResult{dagger(t.right_unitary_dagger), std::move(t.singular_values),
                   dagger(t.left_unitary)};
}

std::vector<double> singular_values(const ComplexMatrix& a) { return svd(a).singular_values; }

HermitianEigen hermitian_eigen(const ComplexMatrix& a) {
  require_square(a, "hermitian_eigen");
  const std::size_t n = a.rows();
  std::vector<Complex> h(n * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      h[r * n + c] = 0.5 * (a(r, c) + std::conj(a(c, r)));
    }
  }
  auto at = [&](std::size_t r, std::size_t c) -> Complex& { return h[r * n + c]; };
  Columns v = Columns::identity(n);

  const double scale = std::max(a.frobenius_norm(), 1e-300);
  bool converged = false;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    double off = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        off += std::norm(at(p, q));
      }
    }
    if (std::sqrt(off) <= kJacobiEpsilon * scale) {
      converged = true;
      break;
    }
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex hpq = at(p, q);
        const double g = std::abs(hpq);
        if (g < 1e-300) {
          continue;
        }
        const Complex phase = std::conj(hpq) / g;
        const auto [c, s] = jacobi_rotation(at(p, p).real(), at(q, q).real(), g);
        // J = diag(1, phase) * [[c, s], [-s, c]]
        const Complex jpp = c;
        const Complex jpq = s;
        const Complex jqp = -s * phase;
        const Complex jqq = c * phase;
        for (std::size_t k = 0; k < n; ++k) {
          const Complex xp = at(k, p);
          const Complex xq = at(k, q);
          at(k, p) = xp * jpp + xq * jqp;
          at(k, q) = xp * jpq + xq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex xp = at(p, k);
          const Complex xq = at(q, k);
          at(p, k) = std::conj(jpp) * xp + std::conj(jqp) * xq;
          at(q, k) = std::conj(jpq) * xp + std::conj(jqq) * xq;
        }
        at(p, q) = 0.0;
        at(q, p) = 0.0;
        at(p, p) = at(p, p).real();
        at(q, q) = at(q, q).real();
        auto& vp = v.cols[p];
        auto& vq = v.cols[q];
        for (std::size_t k = 0; k < n; ++k) {
          const Complex xp = vp[k];
          const Complex xq = vq[k];
          vp[k] = xp * jpp + xq * jqp;
          vq[k] = xp * jpq + xq * jqq;
        }
      }
    }
  }
  if (!converged) {
    std::ostringstream msg;
    msg << "hermitian_eigen: no convergence after " << kMaxSweeps
        << " sweeps (||A||_F = " << a.frobenius_norm() << ")";
    throw NumericError(msg.str());
  }

  std::vector<double> lambda(n);
  for (std::size_t i = 0; i < n; ++i) {
    lambda[i] = at(i, i).real();
  }
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t x, std::size_t y) { return lambda[x] < lambda[y]; });
  std::vector<double> sorted;
  for (std::size_t i : order) {
    sorted.push_back(lambda[i]);
  }
  return HermitianEigen{std::move(sorted), v.to_matrix(order)};
}

ComplexMatrix hermitian_sqrt(const ComplexMatrix& a) {
  require_square(a, "hermitian_sqrt");
  if (!is_hermitian(a, kPsdSlack)) {
    throw NotPsdError("hermitian_sqrt: matrix is not Hermitian within 1e-10");
  }
  const HermitianEigen eig = hermitian_eigen(a);
  const std::size_t n = a.rows();
  if (eig.values.front() < -kPsdSlack) {
    std::ostringstream msg;
    msg << "hermitian_sqrt: eigenvalue " << eig.values.front() << " below -1e-10";
    throw NotPsdError(msg.str());
  }
  std::vector<Complex> e(n * n);
  for (std::size_t k = 0; k < n; ++k) {
    const double root = std::sqrt(std::max(eig.values[k], 0.0));
    if (root == 0.0) {
      continue;
    }
    for (std::size_t i = 0; i < n; ++i) {
      const Complex vik = eig.vectors(i, k) * root;
      for (std::size_t j = 0; j < n; ++j) {
        e[i * n + j] += vik * std::conj(eig.vectors(j, k));
      }
    }
  }
  return ComplexMatrix(n, n, std::move(e));
}

bool is_psd(const ComplexMatrix& a, double tol) {
  require_square(a, "is_psd");
  if (!is_hermitian(a, tol)) {
    return false;
  }
  return hermitian_eigen(a).values.front() >= -tol;
}

}  // namespace unlearn
