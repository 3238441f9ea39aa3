#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "covacap/errors.hpp"

namespace covacap {

using cplx = std::complex<double>;

// Dense row-major complex matrix.  Deliberately minimal: just what the
// channel and representation layers need, no expression templates.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols)
      : rows_(rows), cols_(cols), a_(static_cast<std::size_t>(rows) * cols) {}

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int rows, int cols) {
    return ComplexMatrix(rows, cols);
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }

  cplx& operator()(int r, int c) {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const cplx& operator()(int r, int c) const {
    return a_[static_cast<std::size_t>(r) * cols_ + c];
  }
  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

  ComplexMatrix adjoint() const;
  cplx trace() const;
  double frobenius_norm() const;
  bool is_hermitian(double tol) const;
  bool is_unitary(double tol) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(cplx s);

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> a_;
};

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

// Kronecker product, row-major block layout: (a (x) b)(i*rb+k, j*cb+l).
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);

// Unit vector in C^dim; construction checks the norm to 1e-12.
class PureState {
 public:
  explicit PureState(std::vector<cplx> amplitudes);
  int dim() const { return static_cast<int>(amp_.size()); }
  const std::vector<cplx>& amplitudes() const { return amp_; }
  const cplx& operator[](int i) const { return amp_[static_cast<std::size_t>(i)]; }
  static PureState basis_vector(int dim, int index);

 private:
  std::vector<cplx> amp_;
};

PureState tensor(const PureState& a, const PureState& b);

// Hermitian, unit-trace matrix.  Hermiticity (1e-10) and trace (1e-10) are
// checked at construction; eigenvalue positivity is enforced where spectra
// are actually consumed (entropy clamps values in [-1e-9, 0) and rejects
// anything more negative).
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);
  static DensityMatrix pure(const PureState& f);
  static DensityMatrix maximally_mixed(int dim);

  int dim() const { return m_.rows(); }
  const ComplexMatrix& matrix() const { return m_; }

 private:
  ComplexMatrix m_;
};

// Eigenvalues in descending order.
struct Spectrum {
  std::vector<double> values;
};

struct EigenSystem {
  std::vector<double> values;  // descending
  ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

// Cyclic Jacobi diagonalization of (M + M^dagger)/2.  Rejects matrices whose
// anti-Hermitian part exceeds 1e-8 relative to the Frobenius norm.  The
// reconstruction residual is kept below 1e-9 * |M|_F.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);
Spectrum hermitian_spectrum(const ComplexMatrix& m);

// log of x in an arbitrary base > 1, exact for base 2.
double log_in_base(double x, double log_base);

// -sum lambda log lambda in the given logarithm base.  Eigenvalues in
// [-1e-9, 0) are clamped to zero; anything lower throws InvalidState.
double von_neumann_entropy(const DensityMatrix& rho, double log_base = 2.0);
double entropy_from_spectrum(std::span<const double> values, double log_base);
double shannon_entropy(std::span<const double> probs, double log_base);

enum class Keep { A, B };

// Partial trace of a state on C^dimA (x) C^dimB (row-major index a*dimB+b).
DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            Keep keep);
ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b,
                            Keep keep);

// Haar-distributed pure state from a seeded generator (normalized vector of
// i.i.d. complex Gaussians).  Identical seeds give identical states.
PureState random_pure_state(int dim, std::uint64_t seed);

// Common eigenbasis of a family of commuting normal (here: unitary) matrices,
// obtained by diagonalizing a seeded random Hermitian combination.  Retries
// with fresh coefficients up to five times if a degenerate combination slips
// through; throws NotCommuting if the inputs do not commute (1e-9) or no
// combination splits them.
ComplexMatrix simultaneous_eigenbasis(std::span<const ComplexMatrix> mats,
                                      std::uint64_t seed = 0x5eedbea7u);

// Deterministic uniform/normal helpers used everywhere randomness is needed,
// so reports are reproducible bit-for-bit across runs with the same seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}
  std::uint64_t next_u64();
  double uniform01();             // in [0, 1)
  double uniform(double a, double b);
  double normal();                // standard normal, Box-Muller
  cplx complex_normal();

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

}  // namespace covacap
