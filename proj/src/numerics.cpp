#include "covacap/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace covacap {

namespace {

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b,
                        const char* op) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw DimensionMismatch(std::string(op) + ": shapes " +
                            std::to_string(a.rows()) + "x" +
                            std::to_string(a.cols()) + " vs " +
                            std::to_string(b.rows()) + "x" +
                            std::to_string(b.cols()));
}

}  // namespace

ComplexMatrix ComplexMatrix::identity(int n) {
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix r(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) r(j, i) = std::conj((*this)(i, j));
  return r;
}

cplx ComplexMatrix::trace() const {
  if (!is_square()) throw NotSquare("trace of non-square matrix");
  cplx t = 0.0;
  for (int i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const cplx& z : a_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::is_hermitian(double tol) const {
  if (!is_square()) return false;
  for (int i = 0; i < rows_; ++i)
    for (int j = i; j < cols_; ++j)
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol)
        return false;
  return true;
}

bool ComplexMatrix::is_unitary(double tol) const {
  if (!is_square()) return false;
  const ComplexMatrix g = adjoint() * (*this);
  ComplexMatrix d = g - identity(rows_);
  return d.frobenius_norm() <= tol * rows_;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "matrix add");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "matrix subtract");
  for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
  for (cplx& z : a_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw DimensionMismatch("matrix product: " + std::to_string(a.cols()) +
                            " inner vs " + std::to_string(b.rows()));
  ComplexMatrix r(a.rows(), b.cols());
  for (int i = 0; i < a.rows(); ++i) {
    for (int k = 0; k < a.cols(); ++k) {
      const cplx aik = a(i, k);
      if (aik == cplx(0.0)) continue;
      for (int j = 0; j < b.cols(); ++j) r(i, j) += aik * b(k, j);
    }
  }
  return r;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix r(a.rows() * b.rows(), a.cols() * b.cols());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      const cplx aij = a(i, j);
      if (aij == cplx(0.0)) continue;
      for (int k = 0; k < b.rows(); ++k)
        for (int l = 0; l < b.cols(); ++l)
          r(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return r;
}

PureState::PureState(std::vector<cplx> amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.empty()) throw InvalidState("pure state with zero dimension");
  double n2 = 0.0;
  for (const cplx& z : amp_) n2 += std::norm(z);
  if (std::abs(std::sqrt(n2) - 1.0) > 1e-12)
    throw InvalidState("pure state norm deviates from 1 by more than 1e-12");
}

PureState PureState::basis_vector(int dim, int index) {
  if (index < 0 || index >= dim)
    throw DimensionMismatch("basis vector index out of range");
  std::vector<cplx> a(static_cast<std::size_t>(dim), cplx(0.0));
  a[static_cast<std::size_t>(index)] = 1.0;
  return PureState(std::move(a));
}

PureState tensor(const PureState& a, const PureState& b) {
  std::vector<cplx> out(static_cast<std::size_t>(a.dim()) * b.dim());
  for (int i = 0; i < a.dim(); ++i)
    for (int j = 0; j < b.dim(); ++j)
      out[static_cast<std::size_t>(i) * b.dim() + j] = a[i] * b[j];
  return PureState(std::move(out));
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
  if (!m_.is_square()) throw NotSquare("density matrix must be square");
  if (!m_.is_hermitian(1e-10))
    throw NotHermitian("density matrix fails Hermiticity at 1e-10");
  if (std::abs(m_.trace() - cplx(1.0)) > 1e-10)
    throw InvalidState("density matrix trace deviates from 1 beyond 1e-10");
}

DensityMatrix DensityMatrix::pure(const PureState& f) {
  const int n = f.dim();
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = f[i] * std::conj(f[j]);
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  ComplexMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i) m(i, i) = 1.0 / dim;
  return DensityMatrix(std::move(m));
}

namespace {

// One cyclic Jacobi pass infrastructure: rotate rows/columns (p, q) of the
// Hermitian matrix a in place and accumulate the rotation into v.
void jacobi_rotate(ComplexMatrix& a, ComplexMatrix* v, int p, int q) {
  const cplx z = a(p, q);
  const double az = std::abs(z);
  if (az == 0.0) return;
  const cplx w = z / az;  // phase of the pivot
  const double app = a(p, p).real();
  const double aqq = a(q, q).real();
  const double theta = (aqq - app) / (2.0 * az);
  // Small-magnitude root of t^2 - 2*theta*t - 1 = 0, in the reciprocal form
  // that stays accurate for large |theta| (theta - hypot cancels to zero
  // there, which would silently discard the pivot instead of rotating it).
  const double t =
      -std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  const int n = a.rows();
  for (int k = 0; k < n; ++k) {  // columns: A <- A J
    const cplx akp = a(k, p);
    const cplx akq = a(k, q);
    a(k, p) = c * akp + s * std::conj(w) * akq;
    a(k, q) = -s * w * akp + c * akq;
  }
  for (int k = 0; k < n; ++k) {  // rows: A <- J^dagger A
    const cplx apk = a(p, k);
    const cplx aqk = a(q, k);
    a(p, k) = c * apk + s * w * aqk;
    a(q, k) = -s * std::conj(w) * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  a(p, p) = a(p, p).real();
  a(q, q) = a(q, q).real();
  if (v) {
    for (int k = 0; k < n; ++k) {
      const cplx vkp = (*v)(k, p);
      const cplx vkq = (*v)(k, q);
      (*v)(k, p) = c * vkp + s * std::conj(w) * vkq;
      (*v)(k, q) = -s * w * vkp + c * vkq;
    }
  }
}

double offdiagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += std::norm(a(i, j));
  return std::sqrt(s);
}

EigenSystem jacobi_eigensystem(ComplexMatrix a, bool want_vectors) {
  const int n = a.rows();
  ComplexMatrix v = want_vectors ? ComplexMatrix::identity(n) : ComplexMatrix();
  const double scale = std::max(a.frobenius_norm(), 1e-300);
  constexpr int kMaxSweeps = 100;
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    if (offdiagonal_norm(a) <= 1e-12 * scale) break;
    for (int p = 0; p < n - 1; ++p)
      for (int q = p + 1; q < n; ++q)
        jacobi_rotate(a, want_vectors ? &v : nullptr, p, q);
  }
  if (offdiagonal_norm(a) > 1e-10 * scale)
    throw InvalidState("Jacobi eigensolver failed to converge in 100 sweeps");
  EigenSystem out;
  out.values.resize(static_cast<std::size_t>(n));
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int i, int j) {
    return a(i, i).real() > a(j, j).real();
  });
  for (int k = 0; k < n; ++k)
    out.values[static_cast<std::size_t>(k)] = a(order[static_cast<std::size_t>(k)], order[static_cast<std::size_t>(k)]).real();
  if (want_vectors) {
    out.vectors = ComplexMatrix(n, n);
    for (int k = 0; k < n; ++k)
      for (int r = 0; r < n; ++r)
        out.vectors(r, k) = v(r, order[static_cast<std::size_t>(k)]);
  }
  return out;
}

ComplexMatrix symmetrized(const ComplexMatrix& m) {
  if (!m.is_square()) throw NotSquare("eigensolver needs a square matrix");
  const double norm = m.frobenius_norm();
  ComplexMatrix anti = m - m.adjoint();
  if (anti.frobenius_norm() > 2e-8 * std::max(1.0, norm))
    throw NotHermitian("matrix anti-Hermitian part exceeds 1e-8 tolerance");
  ComplexMatrix h = m;
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j)
      h(i, j) = 0.5 * (m(i, j) + std::conj(m(j, i)));
  return h;
}

}  // namespace

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
  return jacobi_eigensystem(symmetrized(m), true);
}

Spectrum hermitian_spectrum(const ComplexMatrix& m) {
  return Spectrum{jacobi_eigensystem(symmetrized(m), false).values};
}

double log_in_base(double x, double log_base) {
  if (log_base <= 1.0) throw InvalidState("logarithm base must exceed 1");
  if (log_base == 2.0) return std::log2(x);
  return std::log(x) / std::log(log_base);
}

double entropy_from_spectrum(std::span<const double> values, double log_base) {
  if (log_base <= 1.0) throw InvalidState("entropy base must exceed 1");
  double h = 0.0;
  for (double lam : values) {
    if (lam < -1e-9)
      throw InvalidState("eigenvalue " + std::to_string(lam) +
                         " below -1e-9; not a state");
    if (lam <= 0.0) continue;
    if (lam > 1.0) lam = std::min(lam, 1.0);  // clamp roundoff above 1
    h -= lam * log_in_base(lam, log_base);
  }
  return h;
}

double von_neumann_entropy(const DensityMatrix& rho, double log_base) {
  const Spectrum s = hermitian_spectrum(rho.matrix());
  return entropy_from_spectrum(s.values, log_base);
}

double shannon_entropy(std::span<const double> probs, double log_base) {
  return entropy_from_spectrum(probs, log_base);
}

ComplexMatrix partial_trace(const ComplexMatrix& m, int dim_a, int dim_b,
                            Keep keep) {
  if (m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b)
    throw DimensionMismatch("partial trace: matrix is not dimA*dimB square");
  if (keep == Keep::A) {
    ComplexMatrix r(dim_a, dim_a);
    for (int i = 0; i < dim_a; ++i)
      for (int j = 0; j < dim_a; ++j) {
        cplx s = 0.0;
        for (int b = 0; b < dim_b; ++b) s += m(i * dim_b + b, j * dim_b + b);
        r(i, j) = s;
      }
    return r;
  }
  ComplexMatrix r(dim_b, dim_b);
  for (int i = 0; i < dim_b; ++i)
    for (int j = 0; j < dim_b; ++j) {
      cplx s = 0.0;
      for (int a = 0; a < dim_a; ++a) s += m(a * dim_b + i, a * dim_b + j);
      r(i, j) = s;
    }
  return r;
}

DensityMatrix partial_trace(const DensityMatrix& rho, int dim_a, int dim_b,
                            Keep keep) {
  return DensityMatrix(partial_trace(rho.matrix(), dim_a, dim_b, keep));
}

std::uint64_t Rng::next_u64() {
  // splitmix64: tiny, seedable, identical output on every platform.
  state_ += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double Rng::uniform01() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double a, double b) { return a + (b - a) * uniform01(); }

double Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u = 0.0;
  do {
    u = uniform01();
  } while (u <= 0.0);
  const double v = uniform01();
  const double r = std::sqrt(-2.0 * std::log(u));
  const double a = 2.0 * 3.14159265358979323846 * v;
  spare_ = r * std::sin(a);
  have_spare_ = true;
  return r * std::cos(a);
}

cplx Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return cplx(re, im);
}

PureState random_pure_state(int dim, std::uint64_t seed) {
  if (dim < 1) throw DimensionMismatch("random state needs dim >= 1");
  Rng rng(seed);
  std::vector<cplx> a(static_cast<std::size_t>(dim));
  double n2 = 0.0;
  do {
    n2 = 0.0;
    for (auto& z : a) {
      z = rng.complex_normal();
      n2 += std::norm(z);
    }
  } while (n2 < 1e-12);
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& z : a) z *= inv;
  return PureState(std::move(a));
}

ComplexMatrix simultaneous_eigenbasis(std::span<const ComplexMatrix> mats,
                                      std::uint64_t seed) {
  if (mats.empty()) throw DimensionMismatch("no matrices to diagonalize");
  const int n = mats.front().rows();
  for (const auto& u : mats) {
    if (u.rows() != n || u.cols() != n)
      throw DimensionMismatch("simultaneous eigenbasis: mixed dimensions");
    if (!u.is_unitary(1e-9))
      throw InvalidState("simultaneous eigenbasis expects unitary inputs");
  }
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j) {
      ComplexMatrix comm = mats[i] * mats[j] - mats[j] * mats[i];
      if (comm.frobenius_norm() > 1e-9 * n)
        throw NotCommuting("matrices " + std::to_string(i) + " and " +
                           std::to_string(j) + " do not commute (residual " +
                           std::to_string(comm.frobenius_norm()) + ")");
    }

  const auto diagonalizes_all = [&](const ComplexMatrix& q) {
    for (const auto& u : mats) {
      const ComplexMatrix d = q.adjoint() * u * q;
      double off = 0.0;
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (i != j) off += std::norm(d(i, j));
      if (std::sqrt(off) > 1e-9) return false;
    }
    return true;
  };

  for (int attempt = 0; attempt < 5; ++attempt) {
    Rng rng(seed + 0x9d2c5680u * static_cast<std::uint64_t>(attempt + 1));
    ComplexMatrix h(n, n);
    for (const auto& u : mats) {
      const double c = rng.uniform(-1.0, 1.0);
      const double d = rng.uniform(-1.0, 1.0);
      const ComplexMatrix ud = u.adjoint();
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          const cplx re = 0.5 * (u(i, j) + ud(i, j));
          const cplx im = cplx(0.0, -0.5) * (u(i, j) - ud(i, j));
          h(i, j) += c * re + d * im;
        }
    }
    const EigenSystem es = hermitian_eigensystem(h);
    if (diagonalizes_all(es.vectors)) return es.vectors;
  }
  throw NotCommuting(
      "no random Hermitian combination separated the joint eigenspaces after "
      "5 attempts");
}

}  // namespace covacap
