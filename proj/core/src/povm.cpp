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

#include "unlearn/povm.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "unlearn/errors.hpp"

namespace unlearn {

namespace {

ComplexMatrix hermitian_part(const ComplexMatrix& a) { return Complex(0.5) * (a + dagger(a)); }

}  // namespace

KrausOperator::KrausOperator(ComplexMatrix matrix, std::string label)
    : matrix_(std::move(matrix)), label_(std::move(label)) {
  if (!matrix_.is_square()) {
    throw ShapeError("KrausOperator '" + label_ + "' must be square");
  }
  const double top = singular_values(matrix_).front();
  if (top > 1.0 + kStructuralTol) {
    std::ostringstream msg;
    msg << "KrausOperator '" << label_ << "' has singular value " << top << " > 1";
    throw NotContractionError(msg.str());
  }
}

ComplexMatrix KrausOperator::element() const { return dagger(matrix_) * matrix_; }

PovmElement::PovmElement(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square()) {
    throw ShapeError("PovmElement must be square");
  }
  if (!is_hermitian(matrix_, kStructuralTol)) {
    throw NotPsdError("PovmElement is not Hermitian");
  }
  const auto eig = hermitian_eigen(matrix_);
  if (eig.values.front() < -kPsdSlack) {
    throw NotPsdError("PovmElement has a negative eigenvalue");
  }
  if (eig.values.back() > 1.0 + kStructuralTol) {
    throw NotContractionError("PovmElement has an eigenvalue above one");
  }
}

Povm::Povm(std::vector<KrausOperator> kraus_ops) : kraus_ops_(std::move(kraus_ops)) {
  if (kraus_ops_.empty()) {
    throw ShapeError("Povm needs at least one Kraus operator");
  }
  for (const auto& k : kraus_ops_) {
    if (k.dim() != kraus_ops_.front().dim()) {
      throw ShapeError("Povm: mixed dimensions " + std::to_string(kraus_ops_.front().dim()) +
                       " and " + std::to_string(k.dim()));
    }
  }
}

ComplexMatrix Povm::element_sum() const {
  ComplexMatrix sum(dim(), dim());
  for (const auto& k : kraus_ops_) {
    sum = sum + k.element();
  }
  return sum;
}

DensityOperator::DensityOperator(ComplexMatrix matrix) : matrix_(std::move(matrix)) {
  if (!matrix_.is_square()) {
    throw ShapeError("DensityOperator must be square");
  }
  if (!is_hermitian(matrix_, kStructuralTol)) {
    throw NotPsdError("DensityOperator is not Hermitian");
  }
  if (std::abs(matrix_.trace() - Complex(1.0)) > kStructuralTol) {
    std::ostringstream msg;
    msg << "DensityOperator trace " << matrix_.trace().real() << " != 1";
    throw NotPsdError(msg.str());
  }
  if (hermitian_eigen(matrix_).values.front() < -kPsdSlack) {
    throw NotPsdError("DensityOperator has a negative eigenvalue");
  }
}

DensityOperator DensityOperator::pure(const ComplexMatrix& amplitudes) {
  if (amplitudes.cols() != 1) {
    throw ShapeError("DensityOperator::pure expects a column vector");
  }
  const double norm = amplitudes.frobenius_norm();
  if (norm * norm <= kZeroProbability) {
    throw ZeroProbabilityError("DensityOperator::pure: zero vector");
  }
  const ComplexMatrix psi = Complex(1.0 / norm) * amplitudes;
  return DensityOperator(hermitian_part(psi * dagger(psi)));
}

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  return DensityOperator(Complex(1.0 / static_cast<double>(dim)) * ComplexMatrix::identity(dim));
}

ValidationReport validate_povm(const Povm& p, double tol) {
  ValidationReport report{true, tol, 0.0, {}};
  report.completeness_residual =
      frobenius_distance(p.element_sum(), ComplexMatrix::identity(p.dim()));
  if (report.completeness_residual > tol) {
    report.passed = false;
  }
  for (const auto& k : p.kraus_ops()) {
    const ComplexMatrix m = k.element();
    const auto eig = hermitian_eigen(m);
    ElementCheck check{k.label(), true, eig.values.front(), eig.values.back()};
    check.psd = is_hermitian(m, tol) && check.min_eigenvalue >= -kPsdSlack &&
                check.max_eigenvalue <= 1.0 + tol;
    report.passed = report.passed && check.psd;
    report.elements.push_back(std::move(check));
  }
  return report;
}

double outcome_probability(const Povm& p, std::size_t j, const DensityOperator& rho) {
  if (j >= p.size()) {
    throw DomainError("outcome_probability: index " + std::to_string(j) + " out of range for " +
                      std::to_string(p.size()) + " outcomes");
  }
  if (rho.dim() != p.dim()) {
    throw ShapeError("outcome_probability: state dimension " + std::to_string(rho.dim()) +
                     " does not match measurement dimension " + std::to_string(p.dim()));
  }
  const ComplexMatrix& k = p[j].matrix();
  const double value = (k * rho.matrix() * dagger(k)).trace().real();
  return std::clamp(value, 0.0, 1.0);
}

std::vector<double> outcome_probabilities(const Povm& p, const DensityOperator& rho) {
  std::vector<double> out;
  out.reserve(p.size());
  for (std::size_t j = 0; j < p.size(); ++j) {
    out.push_back(outcome_probability(p, j, rho));
  }
  return out;
}

DensityOperator post_measurement_state(const KrausOperator& k, const DensityOperator& rho) {
  if (rho.dim() != k.dim()) {
    throw ShapeError("post_measurement_state: dimension mismatch");
  }
  const ComplexMatrix unnormalized = k.matrix() * rho.matrix() * dagger(k.matrix());
  const double probability = unnormalized.trace().real();
  if (probability <= kZeroProbability) {
    std::ostringstream msg;
    msg << "post_measurement_state: branch '" << k.label() << "' has probability " << probability;
    throw ZeroProbabilityError(msg.str());
  }
  return DensityOperator(hermitian_part(Complex(1.0 / probability) * unnormalized));
}

std::optional<UnitaryWitness> unitary_witness(const KrausOperator& k, double tol) {
  const SvdResult s = svd(k.matrix());
  const double top = s.singular_values.front();
  const double bottom = s.singular_values.back();
  if (top - bottom > tol || top <= kZeroProbability) {
    return std::nullopt;
  }
  return UnitaryWitness{top, s.left_unitary * s.right_unitary_dagger};
}

KrausOperator complement_kraus(const KrausOperator& k, std::string label) {
  const ComplexMatrix rest = ComplexMatrix::identity(k.dim()) - k.element();
  const auto eig = hermitian_eigen(rest);
  if (eig.values.front() < -kPsdSlack) {
    std::ostringstream msg;
    msg << "complement_kraus: K^dagger K has eigenvalue " << 1.0 - eig.values.front() << " > 1";
    throw NotContractionError(msg.str());
  }
  return KrausOperator(hermitian_sqrt(hermitian_part(rest)), std::move(label));
}

std::size_t sample_index(const std::vector<double>& probabilities, CounterRng& rng) {
  double total = 0.0;
  for (double p : probabilities) {
    total += p;
  }
  const double target = rng.uniform() * total;
  double running = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t j = 0; j < probabilities.size(); ++j) {
    if (probabilities[j] <= 0.0) {
      continue;
    }
    last_nonzero = j;
    running += probabilities[j];
    if (target < running) {
      return j;
    }
  }
  return last_nonzero;
}

SampledOutcome sample_outcome(const Povm& p, const DensityOperator& rho, CounterRng& rng) {
  const std::vector<double> probs = outcome_probabilities(p, rho);
  const std::size_t j = sample_index(probs, rng);
  return SampledOutcome{j, post_measurement_state(p[j], rho)};
}

}  // namespace unlearn
