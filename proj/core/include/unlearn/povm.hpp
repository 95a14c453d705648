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

#ifndef UNLEARN_POVM_HPP
#define UNLEARN_POVM_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "unlearn/complex_matrix.hpp"
#include "unlearn/rng.hpp"

namespace unlearn {

/// Branches whose Born probability falls below this are treated as impossible.
inline constexpr double kZeroProbability = 1e-12;

/// Measurement branch operator K. Square, and a contraction (every singular
/// value at most 1 + 1e-9), since it must fit inside a complete set.
class KrausOperator {
 public:
  /// Throws ShapeError if the matrix is not square and NotContractionError if
  /// its largest singular value exceeds 1 + 1e-9.
  explicit KrausOperator(ComplexMatrix matrix, std::string label = "");

  const ComplexMatrix& matrix() const { return matrix_; }
  const std::string& label() const { return label_; }
  std::size_t dim() const { return matrix_.rows(); }

  /// K^dagger K.
  ComplexMatrix element() const;

 private:
  ComplexMatrix matrix_;
  std::string label_;
};

/// Effect M = K^dagger K of one outcome: Hermitian, PSD, eigenvalues <= 1.
class PovmElement {
 public:
  explicit PovmElement(ComplexMatrix matrix);
  static PovmElement of(const KrausOperator& k) { return PovmElement(k.element()); }

  const ComplexMatrix& matrix() const { return matrix_; }

 private:
  ComplexMatrix matrix_;
};

/// Ordered Kraus operators of one measurement, all of the same dimension.
///
/// Completeness is not enforced at construction so that incomplete sets can be
/// loaded and diagnosed; call validate_povm() before relying on it.
class Povm {
 public:
  /// Throws ShapeError on an empty list or mixed dimensions.
  explicit Povm(std::vector<KrausOperator> kraus_ops);

  const std::vector<KrausOperator>& kraus_ops() const { return kraus_ops_; }
  std::size_t size() const { return kraus_ops_.size(); }
  std::size_t dim() const { return kraus_ops_.front().dim(); }
  const KrausOperator& operator[](std::size_t j) const { return kraus_ops_.at(j); }

  /// Sum_j K_j^dagger K_j.
  ComplexMatrix element_sum() const;

 private:
  std::vector<KrausOperator> kraus_ops_;
};

/// System state rho: Hermitian and PSD within tolerance, unit trace.
class DensityOperator {
 public:
  /// Throws NotPsdError if Hermiticity (1e-9), positivity (-1e-10) or unit
  /// trace (1e-9) fails.
  explicit DensityOperator(ComplexMatrix matrix);

  /// |psi><psi| for a column vector, normalized here. Throws ZeroProbabilityError
  /// for a (numerically) zero vector.
  static DensityOperator pure(const ComplexMatrix& amplitudes);
  static DensityOperator maximally_mixed(std::size_t dim);

  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dim() const { return matrix_.rows(); }

 private:
  ComplexMatrix matrix_;
};

/// K = scale * unitary.
struct UnitaryWitness {
  double scale;
  ComplexMatrix unitary;
};

struct ElementCheck {
  std::string label;
  bool psd;
  double min_eigenvalue;
  double max_eigenvalue;
};

struct ValidationReport {
  bool passed;
  double tolerance;
  /// ||Sum_j K_j^dagger K_j - I||_F.
  double completeness_residual;
  std::vector<ElementCheck> elements;
};

ValidationReport validate_povm(const Povm& p, double tol = kStructuralTol);

/// tr[K_j^dagger K_j rho], clamped into [0, 1]. Throws DomainError for an
/// out-of-range index and ShapeError for a dimension mismatch.
double outcome_probability(const Povm& p, std::size_t j, const DensityOperator& rho);

/// All Born probabilities of p, in outcome order.
std::vector<double> outcome_probabilities(const Povm& p, const DensityOperator& rho);

/// K rho K^dagger / tr[K^dagger K rho]. Throws ZeroProbabilityError when the
/// branch probability is at most 1e-12.
DensityOperator post_measurement_state(const KrausOperator& k, const DensityOperator& rho);

/// Present iff the spread of singular values of k is at most tol and k is not
/// zero; then scale is the largest singular value and unitary = U V^dagger.
std::optional<UnitaryWitness> unitary_witness(const KrausOperator& k, double tol = kStructuralTol);

/// Principal square root sqrt(I - K^dagger K), which completes {K} to a
/// two-outcome measurement. Throws NotContractionError when K^dagger K has an
/// eigenvalue above 1 + 1e-10.
KrausOperator complement_kraus(const KrausOperator& k, std::string label = "");

struct SampledOutcome {
  std::size_t index;
  DensityOperator state;
};

/// Index drawn from a discrete distribution by inverse CDF. Probabilities need
/// not be normalized; a single uniform draw is consumed.
std::size_t sample_index(const std::vector<double>& probabilities, CounterRng& rng);

/// Born-rule draw of one outcome of p, paired with the post-measurement state.
SampledOutcome sample_outcome(const Povm& p, const DensityOperator& rho, CounterRng& rng);

}  // namespace unlearn

#endif  // UNLEARN_POVM_HPP
