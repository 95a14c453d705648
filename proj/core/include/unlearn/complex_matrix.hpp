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

#ifndef UNLEARN_COMPLEX_MATRIX_HPP
#define UNLEARN_COMPLEX_MATRIX_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace unlearn {

using Complex = std::complex<double>;

/// Frobenius tolerance for structural equalities (completeness, unitarity, ...).
inline constexpr double kStructuralTol = 1e-9;
/// Slack allowed on eigenvalues when testing positive semidefiniteness.
inline constexpr double kPsdSlack = 1e-10;

/// Dense row-major complex matrix. Immutable once constructed; every entry is
/// finite. Intended for the small dimensions (2 to 16) that operators on a few
/// qubits need.
class ComplexMatrix {
 public:
  /// rows x cols zero matrix.
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Takes ownership of row-major entries. Throws ShapeError on a size
  /// mismatch and NumericError on a non-finite entry.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Nested rows, e.g. {{1, 0}, {0, 1}}. Rows must have equal length.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> values);
  static ComplexMatrix diagonal(std::span<const Complex> values);
  static ComplexMatrix diagonal(std::initializer_list<double> values);
  /// n x 1 column vector.
  static ComplexMatrix column(std::span<const Complex> values);
  static ComplexMatrix column(std::initializer_list<Complex> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  Complex operator()(std::size_t r, std::size_t c) const { return entries_[r * cols_ + c]; }
  std::span<const Complex> entries() const { return entries_; }

  Complex trace() const;
  double frobenius_norm() const;

  friend ComplexMatrix operator+(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator-(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend ComplexMatrix operator*(Complex s, const ComplexMatrix& a);
  friend ComplexMatrix operator*(const ComplexMatrix& a, Complex s) { return s * a; }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Complex> entries_;
};

/// Standard product. Throws ShapeError when a.cols() != b.rows().
ComplexMatrix multiply(const ComplexMatrix& a, const ComplexMatrix& b);

/// Conjugate transpose.
ComplexMatrix dagger(const ComplexMatrix& a);

/// Kronecker product a (x) b.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// ||a - b||_F. Throws ShapeError on mismatched shapes.
double frobenius_distance(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_hermitian(const ComplexMatrix& a, double tol = kStructuralTol);
/// ||a^dagger a - I||_F <= tol for square a.
bool is_unitary(const ComplexMatrix& a, double tol = kStructuralTol);

/// a = left_unitary * diag(singular_values) * right_unitary_dagger.
///
/// For an m x n input, left_unitary is m x m, right_unitary_dagger is n x n
/// and there are min(m, n) singular values, sorted non-increasing. Equal
/// singular values keep the order in which their vectors emerged from the
/// iteration, so output is deterministic.
struct SvdResult {
  ComplexMatrix left_unitary;
  std::vector<double> singular_values;
  ComplexMatrix right_unitary_dagger;

  /// U * Sigma * V^dagger.
  ComplexMatrix reconstruct() const;
};

/// One-sided (Hestenes) Jacobi SVD. Throws NumericError, quoting the
/// Frobenius norm of the input, if the sweep budget is exhausted.
SvdResult svd(const ComplexMatrix& a);

/// Singular values only, non-increasing.
std::vector<double> singular_values(const ComplexMatrix& a);

/// Eigen-decomposition of a Hermitian matrix: a = vectors * diag(values) * vectors^dagger.
struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // columns are eigenvectors
};

/// Cyclic Jacobi eigensolver. The input is symmetrized first; throws
/// ShapeError if it is not square and NumericError on sweep exhaustion.
HermitianEigen hermitian_eigen(const ComplexMatrix& a);

/// Principal square root of a Hermitian PSD matrix. Throws NotPsdError when
/// a is not Hermitian within 1e-10 or has an eigenvalue below -1e-10.
ComplexMatrix hermitian_sqrt(const ComplexMatrix& a);

/// True iff a is Hermitian within tol (Frobenius) and its smallest
/// eigenvalue is at least -tol. Throws ShapeError if a is not square.
bool is_psd(const ComplexMatrix& a, double tol = kPsdSlack);

}  // namespace unlearn

#endif  // UNLEARN_COMPLEX_MATRIX_HPP
