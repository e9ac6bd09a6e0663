#include "holo/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>

#include "holo/errors.hpp"

namespace holo {
namespace {

void require_dim(std::size_t dim) {
  if (dim != 2 && dim != 3) {
    throw ValidationError("dimension must be 2 or 3, got " + std::to_string(dim));
  }
}

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// Infinity norm (max absolute row sum).
double row_sum_norm(const Matrix& m) {
  double best = 0.0;
  for (std::size_t i = 0; i < m.dim(); ++i) {
    double sum = 0.0;
    for (std::size_t j = 0; j < m.dim(); ++j) sum += std::abs(m(i, j));
    best = std::max(best, sum);
  }
  return best;
}

using Column = std::array<Complex, Matrix::kMaxDim>;

double column_norm(const Column& v, std::size_t dim) {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim; ++i) sum += std::norm(v[i]);
  return std::sqrt(sum);
}

// Bilinear cross product; a . (a x b) = 0 without conjugation, so the result
// annihilates both rows of (H - lambda I) it was built from.
Column cross(const Complex* a, const Complex* b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

// Null vector of (H - lambda I), unit norm. Returns false when the shifted
// matrix has rank below dim-1 (degenerate eigenvalue).
bool null_vector(const Matrix& h, double lambda, Column& out) {
  const std::size_t n = h.dim();
  Matrix shifted = h;
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= lambda;
  const double scale = std::max(1.0, shifted.max_abs());

  Column best{};
  double best_norm = 0.0;
  if (n == 2) {
    const Column from_row0{shifted(0, 1), -shifted(0, 0), Complex{}};
    const Column from_row1{-shifted(1, 1), shifted(1, 0), Complex{}};
    for (const auto& c : {from_row0, from_row1}) {
      const double nrm = column_norm(c, 2);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = c;
      }
    }
    if (best_norm <= 1e-14 * scale) return false;
  } else {
    std::array<Column, 3> rows{};
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) rows[i][j] = shifted(i, j);
    const std::array<Column, 3> candidates{cross(rows[0].data(), rows[1].data()),
                                           cross(rows[0].data(), rows[2].data()),
                                           cross(rows[1].data(), rows[2].data())};
    for (const auto& c : candidates) {
      const double nrm = column_norm(c, 3);
      if (nrm > best_norm) {
        best_norm = nrm;
        best = c;
      }
    }
    if (best_norm <= 1e-14 * scale * scale) return false;
  }
  for (std::size_t i = 0; i < n; ++i) best[i] /= best_norm;
  out = best;
  return true;
}

double rayleigh_quotient(const Matrix& h, const Column& v) {
  Complex acc{};
  for (std::size_t i = 0; i < h.dim(); ++i) {
    Complex hv{};
    for (std::size_t j = 0; j < h.dim(); ++j) hv += h(i, j) * v[j];
    acc += std::conj(v[i]) * hv;
  }
  return acc.real();
}

std::array<double, 3> cubic_eigenvalues(const Matrix& h) {
  const double q = (h(0, 0).real() + h(1, 1).real() + h(2, 2).real()) / 3.0;
  Matrix b = h;
  for (std::size_t i = 0; i < 3; ++i) b(i, i) -= q;
  double frob = 0.0;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) frob += std::norm(b(i, j));
  const double p = std::sqrt(frob / 6.0);
  if (p == 0.0) return {q, q, q};

  const Matrix c = b * Complex(1.0 / p);
  const Complex det = c(0, 0) * (c(1, 1) * c(2, 2) - c(1, 2) * c(2, 1)) -
                      c(0, 1) * (c(1, 0) * c(2, 2) - c(1, 2) * c(2, 0)) +
                      c(0, 2) * (c(1, 0) * c(2, 1) - c(1, 1) * c(2, 0));
  const double r = std::clamp(det.real() / 2.0, -1.0, 1.0);
  const double angle = std::acos(r) / 3.0;
  const double largest = q + 2.0 * p * std::cos(angle);
  const double smallest = q + 2.0 * p * std::cos(angle + 2.0 * kPi / 3.0);
  const double middle = 3.0 * q - largest - smallest;
  return {smallest, middle, largest};
}

void validate_time(double t) {
  if (!std::isfinite(t) || t < 0.0) {
    std::ostringstream msg;
    msg << "evolution time must be finite and >= 0, got " << t;
    throw ValidationError(msg.str());
  }
}

}  // namespace

double wrap_angle(double angle) {
  if (!std::isfinite(angle)) throw ValidationError("angle must be finite");
  double wrapped = std::fmod(angle, kTwoPi);
  if (wrapped < 0.0) wrapped += kTwoPi;
  if (wrapped >= kTwoPi) wrapped = 0.0;
  return wrapped;
}

Matrix::Matrix(std::size_t dim) : dim_(dim) { require_dim(dim); }

Matrix::Matrix(std::size_t dim, std::initializer_list<Complex> row_major) : Matrix(dim) {
  if (row_major.size() != dim * dim) {
    throw ValidationError("expected " + std::to_string(dim * dim) + " matrix entries, got " +
                          std::to_string(row_major.size()));
  }
  auto it = row_major.begin();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) (*this)(i, j) = *it++;
}

Matrix Matrix::identity(std::size_t dim) {
  Matrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::adjoint() const {
  Matrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

Matrix Matrix::block(std::size_t k) const {
  if (k > dim_) throw ValidationError("block larger than matrix");
  Matrix out(k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out(i, j) = (*this)(i, j);
  return out;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) best = std::max(best, std::abs((*this)(i, j)));
  return best;
}

Matrix& Matrix::operator+=(const Matrix& rhs) {
  if (rhs.dim_ != dim_) throw ValidationError("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& rhs) {
  if (rhs.dim_ != dim_) throw ValidationError("matrix dimension mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= rhs.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(Complex scale) {
  for (auto& z : data_) z *= scale;
  return *this;
}

Matrix operator*(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw ValidationError("matrix dimension mismatch");
  Matrix out(lhs.dim());
  for (std::size_t i = 0; i < lhs.dim(); ++i)
    for (std::size_t k = 0; k < lhs.dim(); ++k) {
      const Complex a = lhs(i, k);
      for (std::size_t j = 0; j < lhs.dim(); ++j) out(i, j) += a * rhs(k, j);
    }
  return out;
}

double max_entry_difference(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.dim() != rhs.dim()) throw ValidationError("matrix dimension mismatch");
  double best = 0.0;
  for (std::size_t i = 0; i < lhs.dim(); ++i)
    for (std::size_t j = 0; j < lhs.dim(); ++j)
      best = std::max(best, std::abs(lhs(i, j) - rhs(i, j)));
  return best;
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes) {
  require_dim(amplitudes.size());
  dim_ = amplitudes.size();
  std::copy(amplitudes.begin(), amplitudes.end(), amp_.begin());
  require_normalized();
}

StateVector StateVector::normalized(std::initializer_list<Complex> amplitudes) {
  require_dim(amplitudes.size());
  StateVector s;
  s.dim_ = amplitudes.size();
  std::copy(amplitudes.begin(), amplitudes.end(), s.amp_.begin());
  double norm = 0.0;
  for (std::size_t i = 0; i < s.dim_; ++i) {
    if (!finite(s.amp_[i])) throw ValidationError("state amplitude is not finite");
    norm += std::norm(s.amp_[i]);
  }
  if (norm == 0.0) throw ValidationError("cannot normalize the zero vector");
  const double inv = 1.0 / std::sqrt(norm);
  for (std::size_t i = 0; i < s.dim_; ++i) s.amp_[i] *= inv;
  return s;
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  require_dim(dim);
  if (index >= dim) throw ValidationError("basis index out of range");
  StateVector s;
  s.dim_ = dim;
  s.amp_[index] = 1.0;
  return s;
}

Complex StateVector::dot(const StateVector& other) const {
  if (other.dim_ != dim_) {
    throw ValidationError("state dimension mismatch: " + std::to_string(dim_) + " vs " +
                          std::to_string(other.dim_));
  }
  Complex acc{};
  for (std::size_t i = 0; i < dim_; ++i) acc += std::conj(amp_[i]) * other.amp_[i];
  return acc;
}

StateVector StateVector::with_phase(Complex phase) const {
  if (std::abs(std::abs(phase) - 1.0) > kNormTolerance) {
    throw ValidationError("global phase must have unit modulus");
  }
  StateVector s = *this;
  for (std::size_t i = 0; i < dim_; ++i) s.amp_[i] *= phase;
  return s;
}

StateVector StateVector::apply(const Matrix& op, const StateVector& state) {
  if (op.dim() != state.dim_) throw ValidationError("operator/state dimension mismatch");
  StateVector out;
  out.dim_ = state.dim_;
  double norm = 0.0;
  for (std::size_t i = 0; i < out.dim_; ++i) {
    Complex acc{};
    for (std::size_t j = 0; j < out.dim_; ++j) acc += op(i, j) * state.amp_[j];
    out.amp_[i] = acc;
    norm += std::norm(acc);
  }
  const double inv = 1.0 / std::sqrt(norm);
  for (std::size_t i = 0; i < out.dim_; ++i) out.amp_[i] *= inv;
  return out;
}

void StateVector::require_normalized() const {
  double norm = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!finite(amp_[i])) throw ValidationError("state amplitude is not finite");
    norm += std::norm(amp_[i]);
  }
  if (std::abs(std::sqrt(norm) - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "state is not normalized: norm = " << std::sqrt(norm);
    throw ValidationError(msg.str());
  }
}

HermitianMatrix::HermitianMatrix(const Matrix& m) : m_(m) {
  const double tol = kHermitianTolerance * std::max(1.0, m.max_abs());
  double worst = 0.0;
  std::size_t wi = 0, wj = 0;
  for (std::size_t i = 0; i < m.dim(); ++i)
    for (std::size_t j = i; j < m.dim(); ++j) {
      if (!finite(m(i, j))) throw ValidationError("generator entry is not finite");
      const double dev = std::abs(m(i, j) - std::conj(m(j, i)));
      if (dev > worst) {
        worst = dev;
        wi = i;
        wj = j;
      }
    }
  if (worst > tol) {
    std::ostringstream msg;
    msg << "generator is not Hermitian: |H(" << wi << "," << wj << ") - conj(H(" << wj << ","
        << wi << "))| = " << worst;
    throw ValidationError(msg.str());
  }
  // Store the exactly Hermitian part.
  for (std::size_t i = 0; i < m.dim(); ++i) {
    m_(i, i) = m(i, i).real();
    for (std::size_t j = i + 1; j < m.dim(); ++j) {
      m_(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
      m_(j, i) = std::conj(m_(i, j));
    }
  }
}

UnitaryMatrix::UnitaryMatrix(const Matrix& m) : m_(m) {
  const double defect = unitarity_defect(m);
  if (!(defect <= kUnitaryTolerance)) {
    std::ostringstream msg;
    msg << "unitarity violated: max |U^dagger U - I| = " << defect;
    throw NumericError(msg.str());
  }
}

UnitaryMatrix operator*(const UnitaryMatrix& lhs, const UnitaryMatrix& rhs) {
  return UnitaryMatrix(lhs.m_ * rhs.m_);
}

Eigensystem eigensystem(const HermitianMatrix& h) {
  const Matrix& m = h.matrix();
  const std::size_t n = m.dim();
  Eigensystem es;
  es.dim = n;
  es.vectors = Matrix(n);

  if (n == 2) {
    const double mean = 0.5 * (m(0, 0).real() + m(1, 1).real());
    const double half_diff = 0.5 * (m(0, 0).real() - m(1, 1).real());
    const double radius = std::hypot(half_diff, std::abs(m(0, 1)));
    es.values = {mean - radius, mean + radius, 0.0};
  } else {
    es.values = cubic_eigenvalues(m);
  }

  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (es.values[k + 1] - es.values[k] < kDegenerateGap) es.degenerate = true;
  }
  if (es.degenerate) return es;

  std::array<Column, 3> vecs{};
  for (std::size_t k = 0; k < n; ++k) {
    if (!null_vector(m, es.values[k], vecs[k])) {
      es.degenerate = true;
      return es;
    }
    // Refinement: Rayleigh quotient, then the null vector at the improved eigenvalue.
    es.values[k] = rayleigh_quotient(m, vecs[k]);
    if (!null_vector(m, es.values[k], vecs[k])) {
      es.degenerate = true;
      return es;
    }
  }

  // Orthonormalize: Gram-Schmidt for the first n-1 vectors, conjugate completion for the last.
  for (std::size_t k = 1; k + 1 < n; ++k) {
    for (std::size_t j = 0; j < k; ++j) {
      Complex proj{};
      for (std::size_t i = 0; i < n; ++i) proj += std::conj(vecs[j][i]) * vecs[k][i];
      for (std::size_t i = 0; i < n; ++i) vecs[k][i] -= proj * vecs[j][i];
    }
    const double nrm = column_norm(vecs[k], n);
    for (std::size_t i = 0; i < n; ++i) vecs[k][i] /= nrm;
  }
  if (n == 2) {
    vecs[1] = {-std::conj(vecs[0][1]), std::conj(vecs[0][0]), Complex{}};
  } else {
    const Column c = cross(vecs[0].data(), vecs[1].data());
    vecs[2] = {std::conj(c[0]), std::conj(c[1]), std::conj(c[2])};
  }

  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) es.vectors(i, k) = vecs[k][i];
  }
  return es;
}

UnitaryMatrix expm_unitary(const HermitianMatrix& h, double t) {
  validate_time(t);
  const Eigensystem es = eigensystem(h);
  if (es.degenerate) return expm_series(h, t);

  const std::size_t n = h.dim();
  Matrix out(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::polar(1.0, -es.values[k] * t);
    for (std::size_t i = 0; i < n; ++i) {
      const Complex left = phase * es.vectors(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += left * std::conj(es.vectors(j, k));
    }
  }
  return UnitaryMatrix(out);
}

UnitaryMatrix expm_series(const HermitianMatrix& h, double t) {
  validate_time(t);
  const std::size_t n = h.dim();
  Matrix x = h.matrix() * Complex(0.0, -t);

  const double norm = row_sum_norm(x);
  int squarings = 0;
  if (norm > 0.5) squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  x *= Complex(std::ldexp(1.0, -squarings));

  // ||x|| <= 0.5: 24 terms put the truncation error far below double rounding.
  Matrix sum = Matrix::identity(n);
  Matrix term = Matrix::identity(n);
  for (int k = 1; k <= 24; ++k) {
    term = (term * x) * Complex(1.0 / k);
    sum += term;
    if (term.max_abs() < 1e-20) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return UnitaryMatrix(sum);
}

StateVector state_from_bloch(const BlochAngles& b) {
  if (!(b.alpha >= 0.0 && b.alpha <= kPi) || !(b.beta >= 0.0 && b.beta < kTwoPi)) {
    std::ostringstream msg;
    msg << "Bloch angles out of range: alpha = " << b.alpha << " (need [0, pi]), beta = " << b.beta
        << " (need [0, 2pi))";
    throw ValidationError(msg.str());
  }
  return StateVector::normalized(
      {Complex(std::cos(0.5 * b.alpha)), std::sin(0.5 * b.alpha) * std::polar(1.0, b.beta)});
}

double fidelity(const StateVector& desired, const StateVector& actual) {
  return std::min(1.0, std::norm(desired.dot(actual)));
}

double infidelity(const StateVector& desired, const StateVector& actual) {
  const Complex overlap = desired.dot(actual);
  double perp = 0.0;
  for (std::size_t i = 0; i < desired.dim(); ++i) perp += std::norm(actual[i] - overlap * desired[i]);
  return std::min(1.0, perp);
}

Complex matrix_element(const StateVector& bra, const Matrix& op, const StateVector& ket) {
  if (bra.dim() != op.dim() || ket.dim() != op.dim()) {
    throw ValidationError("operator/state dimension mismatch");
  }
  Complex acc{};
  for (std::size_t i = 0; i < op.dim(); ++i) {
    Complex row{};
    for (std::size_t j = 0; j < op.dim(); ++j) row += op(i, j) * ket[j];
    acc += std::conj(bra[i]) * row;
  }
  return acc;
}

double unitarity_defect(const Matrix& m) {
  const Matrix gram = m.adjoint() * m;
  return max_entry_difference(gram, Matrix::identity(m.dim()));
}

StateVector embed_qubit(const StateVector& qubit) {
  if (qubit.dim() != 2) throw ValidationError("embed_qubit expects a dimension-2 state");
  return StateVector({qubit[0], qubit[1], Complex{}});
}

StateVector operator*(const UnitaryMatrix& u, const StateVector& s) {
  return StateVector::apply(u.m_, s);
}

}  // namespace holo
