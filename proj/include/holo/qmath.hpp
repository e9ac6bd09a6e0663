#pragma once

// Dense complex linear algebra for dimensions 2 and 3: states, Hermitian
// generators, unitary propagators and the two matrix-exponential paths.
// hbar = 1 throughout.

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numbers>

namespace holo {

using Complex = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-12;
inline constexpr double kUnitaryTolerance = 1e-10;
// Eigenvalue gap below which spectral projectors are not trusted.
inline constexpr double kDegenerateGap = 1e-9;

// Maps any finite angle to its representative in [0, 2pi).
double wrap_angle(double angle);

// Square complex matrix of dimension 2 or 3, row-major, no invariants.
class Matrix {
public:
  static constexpr std::size_t kMaxDim = 3;

  explicit Matrix(std::size_t dim);
  Matrix(std::size_t dim, std::initializer_list<Complex> row_major);

  static Matrix identity(std::size_t dim);

  std::size_t dim() const { return dim_; }
  Complex& operator()(std::size_t row, std::size_t col) { return data_[row * kMaxDim + col]; }
  const Complex& operator()(std::size_t row, std::size_t col) const {
    return data_[row * kMaxDim + col];
  }

  Matrix adjoint() const;
  // Upper-left k x k block.
  Matrix block(std::size_t k) const;
  double max_abs() const;

  Matrix& operator+=(const Matrix& rhs);
  Matrix& operator-=(const Matrix& rhs);
  Matrix& operator*=(Complex scale);

  friend Matrix operator+(Matrix lhs, const Matrix& rhs) { return lhs += rhs; }
  friend Matrix operator-(Matrix lhs, const Matrix& rhs) { return lhs -= rhs; }
  friend Matrix operator*(Matrix lhs, Complex scale) { return lhs *= scale; }
  friend Matrix operator*(Complex scale, Matrix rhs) { return rhs *= scale; }
  friend Matrix operator*(const Matrix& lhs, const Matrix& rhs);

private:
  std::size_t dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

// Largest |lhs(i,j) - rhs(i,j)|; dimensions must agree.
double max_entry_difference(const Matrix& lhs, const Matrix& rhs);

class UnitaryMatrix;

class StateVector {
public:
  // Throws ValidationError unless the amplitudes have unit norm within kNormTolerance.
  StateVector(std::initializer_list<Complex> amplitudes);
  // Rescales to unit norm; throws on the zero vector.
  static StateVector normalized(std::initializer_list<Complex> amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const { return dim_; }
  const Complex& operator[](std::size_t i) const { return amp_[i]; }

  // Inner product <this|other>.
  Complex dot(const StateVector& other) const;
  // Global phase multiplication; phase must have unit modulus.
  StateVector with_phase(Complex phase) const;

private:
  friend class UnitaryMatrix;
  friend StateVector operator*(const UnitaryMatrix& u, const StateVector& s);
  StateVector() = default;
  // op * state, rescaled to unit norm.
  static StateVector apply(const Matrix& op, const StateVector& state);
  void require_normalized() const;

  std::size_t dim_ = 0;
  std::array<Complex, Matrix::kMaxDim> amp_{};
};

class HermitianMatrix {
public:
  // Throws ValidationError naming the worst (i,j) pair when m deviates from m^dagger.
  explicit HermitianMatrix(const Matrix& m);
  static HermitianMatrix zero(std::size_t dim) { return HermitianMatrix(Matrix(dim)); }

  std::size_t dim() const { return m_.dim(); }
  const Matrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

private:
  Matrix m_;
};

class UnitaryMatrix {
public:
  // Throws NumericError when the unitarity defect exceeds kUnitaryTolerance.
  explicit UnitaryMatrix(const Matrix& m);

  std::size_t dim() const { return m_.dim(); }
  const Matrix& matrix() const { return m_; }
  const Complex& operator()(std::size_t row, std::size_t col) const { return m_(row, col); }

  friend StateVector operator*(const UnitaryMatrix& u, const StateVector& s);
  friend UnitaryMatrix operator*(const UnitaryMatrix& lhs, const UnitaryMatrix& rhs);

private:
  Matrix m_;
};

struct BlochAngles {
  double alpha = 0.0;  // polar, [0, pi]
  double beta = 0.0;   // azimuth, [0, 2pi)
};

struct Eigensystem {
  std::size_t dim = 0;
  std::array<double, Matrix::kMaxDim> values{};
  // Column k of `vectors` is the eigenvector for values[k].
  Matrix vectors{2};
  bool degenerate = false;
};

// Closed-form eigensolve (quadratic for dim 2, trigonometric cubic roots for dim 3)
// followed by a Rayleigh-quotient refinement pass. Eigenvalues ascend.
Eigensystem eigensystem(const HermitianMatrix& h);

// exp(-i H t) by spectral decomposition. Near-degenerate spectra defer to expm_series.
UnitaryMatrix expm_unitary(const HermitianMatrix& h, double t);

// exp(-i H t) by scaling and squaring of a truncated Taylor series.
UnitaryMatrix expm_series(const HermitianMatrix& h, double t);

StateVector state_from_bloch(const BlochAngles& b);

// |<desired|actual>|^2.
double fidelity(const StateVector& desired, const StateVector& actual);

// 1 - fidelity, computed as the squared norm of the component of `actual`
// orthogonal to `desired`, which keeps full relative precision near 1.
double infidelity(const StateVector& desired, const StateVector& actual);

// <bra| op |ket>.
Complex matrix_element(const StateVector& bra, const Matrix& op, const StateVector& ket);

// max |(M^dagger M - I)_ij|.
double unitarity_defect(const Matrix& m);

// Appends a zero |e> amplitude to a qubit state.
StateVector embed_qubit(const StateVector& qubit);

}  // namespace holo
