#include "covacap/channel.hpp"

#include <algorithm>
#include <cmath>

#include "covacap/errors.hpp"

namespace covacap {

namespace {

// (u (x) I_trail) m, computed without materializing the Kronecker product.
ComplexMatrix lmul_first(const ComplexMatrix& u, const ComplexMatrix& m,
                         int lead, int trail) {
  const int d = lead * trail;
  ComplexMatrix out(d, m.cols());
  for (int a = 0; a < lead; ++a)
    for (int c = 0; c < lead; ++c) {
      const cplx uac = u(a, c);
      if (uac == cplx(0.0)) continue;
      for (int b = 0; b < trail; ++b) {
        const int ra = a * trail + b;
        const int rc = c * trail + b;
        for (int j = 0; j < m.cols(); ++j) out(ra, j) += uac * m(rc, j);
      }
    }
  return out;
}

// (I_lead (x) u) m.
ComplexMatrix lmul_second(const ComplexMatrix& u, const ComplexMatrix& m,
                          int lead, int trail) {
  ComplexMatrix out(lead * trail, m.cols());
  for (int b = 0; b < trail; ++b)
    for (int c = 0; c < trail; ++c) {
      const cplx ubc = u(b, c);
      if (ubc == cplx(0.0)) continue;
      for (int a = 0; a < lead; ++a) {
        const int ra = a * trail + b;
        const int rc = a * trail + c;
        for (int j = 0; j < m.cols(); ++j) out(ra, j) += ubc * m(rc, j);
      }
    }
  return out;
}

ComplexMatrix sandwich_first(const ComplexMatrix& u, const ComplexMatrix& x,
                             int lead, int trail) {
  ComplexMatrix y = lmul_first(u, x, lead, trail);
  return lmul_first(u, y.adjoint(), lead, trail).adjoint();
}

ComplexMatrix sandwich_second(const ComplexMatrix& u, const ComplexMatrix& x,
                              int lead, int trail) {
  ComplexMatrix y = lmul_second(u, x, lead, trail);
  return lmul_second(u, y.adjoint(), lead, trail).adjoint();
}

PureState random_state_from(Rng& rng, int dim) {
  std::vector<cplx> v(static_cast<std::size_t>(dim));
  double norm2 = 0.0;
  for (auto& c : v) {
    c = rng.complex_normal();
    norm2 += std::norm(c);
  }
  const double inv = 1.0 / std::sqrt(norm2);
  for (auto& c : v) c *= inv;
  return PureState(std::move(v));
}

}  // namespace

GroupDistribution::GroupDistribution(FiniteGroup g, std::vector<Rational> w)
    : group(std::move(g)), weights(std::move(w)) {
  if (weights.size() != static_cast<std::size_t>(group.order()))
    throw DimensionMismatch("one weight per group element required");
  Rational sum(0);
  for (const Rational& r : weights) {
    if (r < Rational(0)) throw InvalidDistribution("negative weight");
    sum = sum + r;
  }
  if (!(sum == Rational(1)))
    throw InvalidDistribution("weights must sum to 1 exactly");
}

GroupDistribution GroupDistribution::uniform(const FiniteGroup& g) {
  return GroupDistribution(
      g, std::vector<Rational>(static_cast<std::size_t>(g.order()),
                               Rational(1, g.order())));
}

GroupDistribution GroupDistribution::point_mass(const FiniteGroup& g, int element) {
  if (element < 0 || element >= g.order())
    throw ValidationError("point mass element out of range");
  std::vector<Rational> w(static_cast<std::size_t>(g.order()), Rational(0));
  w[static_cast<std::size_t>(element)] = Rational(1);
  return GroupDistribution(g, std::move(w));
}

std::vector<double> GroupDistribution::as_doubles() const {
  std::vector<double> out;
  out.reserve(weights.size());
  for (const Rational& r : weights) out.push_back(r.to_double());
  return out;
}

MixedUnitaryChannel::MixedUnitaryChannel(ProjectiveRep rep, GroupDistribution dist)
    : rep_(std::move(rep)), dist_(std::move(dist)) {
  if (!rep_.group.same_table(dist_.group))
    throw ValidationError("distribution group differs from representation group");
  ComplexMatrix acc(rep_.dim, rep_.dim);
  const std::vector<double> w = dist_.as_doubles();
  for (std::size_t g = 0; g < w.size(); ++g) {
    if (w[g] == 0.0) continue;
    const ComplexMatrix& u = rep_.matrices[g];
    ComplexMatrix term = u.adjoint() * u;
    term *= cplx(w[g]);
    acc += term;
  }
  acc -= ComplexMatrix::identity(rep_.dim);
  if (acc.frobenius_norm() > 1e-10)
    throw ValidationError("channel is not trace preserving");
}

DensityMatrix apply(const MixedUnitaryChannel& phi, const DensityMatrix& rho) {
  if (rho.dim() != phi.dim())
    throw DimensionMismatch("state dimension differs from channel dimension");
  const int n = phi.dim();
  ComplexMatrix acc(n, n);
  const std::vector<double> w = phi.distribution().as_doubles();
  for (std::size_t g = 0; g < w.size(); ++g) {
    if (w[g] == 0.0) continue;
    const ComplexMatrix& u = phi.rep().matrices[g];
    ComplexMatrix term = u * rho.matrix() * u.adjoint();
    term *= cplx(w[g]);
    acc += term;
  }
  return DensityMatrix(std::move(acc));
}

DensityMatrix apply_to_pure(const MixedUnitaryChannel& phi, const PureState& f) {
  if (f.dim() != phi.dim())
    throw DimensionMismatch("state dimension differs from channel dimension");
  const int n = phi.dim();
  ComplexMatrix acc(n, n);
  const std::vector<double> w = phi.distribution().as_doubles();
  std::vector<cplx> v(static_cast<std::size_t>(n));
  for (std::size_t g = 0; g < w.size(); ++g) {
    if (w[g] == 0.0) continue;
    const ComplexMatrix& u = phi.rep().matrices[g];
    for (int i = 0; i < n; ++i) {
      cplx s(0.0);
      for (int j = 0; j < n; ++j) s += u(i, j) * f[j];
      v[static_cast<std::size_t>(i)] = s;
    }
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        acc(i, j) += w[g] * v[static_cast<std::size_t>(i)] *
                     std::conj(v[static_cast<std::size_t>(j)]);
  }
  return DensityMatrix(std::move(acc));
}

DensityMatrix apply_tensor(const MixedUnitaryChannel& phi,
                           const MixedUnitaryChannel& omega,
                           const DensityMatrix& rho) {
  const int nh = phi.dim();
  const int nk = omega.dim();
  if (rho.dim() != nh * nk)
    throw DimensionMismatch("state dimension must be the product of the factors");
  const std::vector<double> wo = omega.distribution().as_doubles();
  ComplexMatrix mid(nh * nk, nh * nk);
  for (std::size_t h = 0; h < wo.size(); ++h) {
    if (wo[h] == 0.0) continue;
    ComplexMatrix term =
        sandwich_second(omega.rep().matrices[h], rho.matrix(), nh, nk);
    term *= cplx(wo[h]);
    mid += term;
  }
  const std::vector<double> wp = phi.distribution().as_doubles();
  ComplexMatrix out(nh * nk, nh * nk);
  for (std::size_t g = 0; g < wp.size(); ++g) {
    if (wp[g] == 0.0) continue;
    ComplexMatrix term = sandwich_first(phi.rep().matrices[g], mid, nh, nk);
    term *= cplx(wp[g]);
    out += term;
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix id_tensor_apply(const MixedUnitaryChannel& phi, int dim_k,
                              const DensityMatrix& rho) {
  const int n = phi.dim();
  if (dim_k < 1) throw DimensionMismatch("identity factor needs dimension >= 1");
  if (rho.dim() != dim_k * n)
    throw DimensionMismatch("state dimension must be dim_k times channel dimension");
  const std::vector<double> w = phi.distribution().as_doubles();
  ComplexMatrix out(dim_k * n, dim_k * n);
  for (std::size_t g = 0; g < w.size(); ++g) {
    if (w[g] == 0.0) continue;
    ComplexMatrix term =
        sandwich_second(phi.rep().matrices[g], rho.matrix(), dim_k, n);
    term *= cplx(w[g]);
    out += term;
  }
  return DensityMatrix(std::move(out));
}

CovarianceReport covariance_check(const MixedUnitaryChannel& phi, int trials,
                                  std::uint64_t seed) {
  if (trials < 1) throw ValidationError("covariance check needs at least one trial");
  CovarianceReport rep;
  rep.covariant = true;
  Rng rng(seed);
  const int order = phi.rep().group.order();
  for (int trial = 0; trial < trials; ++trial) {
    const int g = static_cast<int>(rng.next_u64() % static_cast<std::uint64_t>(order));
    const PureState f = random_state_from(rng, phi.dim());
    const ComplexMatrix& u = phi.rep().matrices[static_cast<std::size_t>(g)];
    const DensityMatrix rho = DensityMatrix::pure(f);
    DensityMatrix rotated(u * rho.matrix() * u.adjoint());
    const ComplexMatrix lhs = apply(phi, rotated).matrix();
    const ComplexMatrix rhs = u * apply(phi, rho).matrix() * u.adjoint();
    const double residual = (lhs - rhs).frobenius_norm();
    rep.max_residual = std::max(rep.max_residual, residual);
    if (residual > 1e-8 && rep.covariant) {
      rep.covariant = false;
      rep.witness_element = g;
    }
  }
  return rep;
}

MixedUnitaryChannel qc_reference(const MixedUnitaryChannel& phi, const Subgroup& t,
                                 const CosetDistribution& cd) {
  const FiniteGroup& g = phi.rep().group;
  const int order = g.order();
  const int tsize = static_cast<int>(t.members.size());
  if (tsize == 0 || order % tsize != 0 || order / tsize != phi.dim())
    throw HypothesesNotMet("subgroup index must equal the channel dimension");
  if (!is_normal_abelian(g, t))
    throw HypothesesNotMet("reference channel needs a normal abelian subgroup");
  if (!restriction_is_unitary_rep(phi.rep(), t))
    throw HypothesesNotMet("restriction to the subgroup must be a unitary representation");
  if (cd.quotient.coset_of.size() != static_cast<std::size_t>(order))
    throw DimensionMismatch("coset distribution built over a different group");
  const int id_block = cd.quotient.coset_of[static_cast<std::size_t>(g.identity())];
  if (cd.quotient.blocks[static_cast<std::size_t>(id_block)] != t.members)
    throw HypothesesNotMet("coset distribution does not match the subgroup");

  std::vector<Rational> w(static_cast<std::size_t>(order), Rational(0));
  for (std::size_t j = 0; j < cd.coset_order.size(); ++j) {
    const Rational share = cd.sums[j] / Rational(tsize);
    const int block = cd.coset_order[j];
    for (int e : cd.quotient.blocks[static_cast<std::size_t>(block)])
      w[static_cast<std::size_t>(e)] = share;
  }
  return MixedUnitaryChannel(phi.rep(), GroupDistribution(g, std::move(w)));
}

ComplexMatrix conditional_expectation(std::span<const ComplexMatrix> t_matrices,
                                      const ComplexMatrix& x) {
  if (t_matrices.empty()) throw ValidationError("empty matrix family");
  if (!x.is_square()) throw NotSquare("conditional expectation needs a square matrix");
  const int n = x.rows();
  ComplexMatrix acc(n, n);
  for (const ComplexMatrix& u : t_matrices) {
    if (u.rows() != n || u.cols() != n)
      throw DimensionMismatch("matrix family dimension differs from argument");
    acc += u * x * u.adjoint();
  }
  acc *= cplx(1.0 / static_cast<double>(t_matrices.size()));
  return acc;
}

TwirlReport twirl_identity_check(const MixedUnitaryChannel& phi,
                                 const MixedUnitaryChannel& omega,
                                 const PureState& f) {
  const int nh = phi.dim();
  const int nk = omega.dim();
  if (f.dim() != nh * nk)
    throw DimensionMismatch("vector must live on the tensor product space");
  TwirlReport rep;
  rep.spanning = spanning_check(phi.rep());
  if (!rep.spanning) return rep;

  const ComplexMatrix psi = DensityMatrix::pure(f).matrix();
  const std::vector<double> wo = omega.distribution().as_doubles();
  ComplexMatrix x(nh * nk, nh * nk);
  for (std::size_t h = 0; h < wo.size(); ++h) {
    if (wo[h] == 0.0) continue;
    ComplexMatrix term = sandwich_second(omega.rep().matrices[h], psi, nh, nk);
    term *= cplx(wo[h]);
    x += term;
  }

  ComplexMatrix lhs(nh * nk, nh * nk);
  for (const ComplexMatrix& u : phi.rep().matrices)
    lhs += sandwich_first(u, x, nh, nk);

  const double scale =
      static_cast<double>(phi.rep().group.order()) / static_cast<double>(nh);
  ComplexMatrix rhs = tensor(ComplexMatrix::identity(nh),
                             partial_trace(x, nh, nk, Keep::B));
  rhs *= cplx(scale);

  rep.residual = (lhs - rhs).frobenius_norm();
  rep.ok = rep.residual <= 1e-8;
  return rep;
}

UnitaryEnsemble UnitaryEnsemble::from_channel(const MixedUnitaryChannel& phi) {
  UnitaryEnsemble e;
  Factor fac;
  fac.dim = phi.dim();
  fac.is_identity = false;
  fac.weights = phi.distribution().as_doubles();
  fac.unitaries = phi.rep().matrices;
  e.factors_.push_back(std::move(fac));
  e.dim_ = phi.dim();
  return e;
}

UnitaryEnsemble UnitaryEnsemble::id_extended(const UnitaryEnsemble& e, int lead_dim) {
  if (lead_dim < 1) throw DimensionMismatch("identity factor needs dimension >= 1");
  UnitaryEnsemble out;
  Factor id;
  id.dim = lead_dim;
  id.is_identity = true;
  out.factors_.push_back(std::move(id));
  out.factors_.insert(out.factors_.end(), e.factors_.begin(), e.factors_.end());
  out.dim_ = lead_dim * e.dim_;
  return out;
}

UnitaryEnsemble UnitaryEnsemble::tensor(const UnitaryEnsemble& a,
                                        const UnitaryEnsemble& b) {
  UnitaryEnsemble out;
  out.factors_ = a.factors_;
  out.factors_.insert(out.factors_.end(), b.factors_.begin(), b.factors_.end());
  out.dim_ = a.dim_ * b.dim_;
  return out;
}

std::size_t UnitaryEnsemble::terms() const {
  std::size_t n = 1;
  for (const Factor& f : factors_)
    if (!f.is_identity) n *= f.weights.size();
  return n;
}

DensityMatrix UnitaryEnsemble::output(const PureState& f) const {
  if (f.dim() != dim_)
    throw DimensionMismatch("state dimension differs from ensemble dimension");
  const int d = dim_;

  struct Active {
    const Factor* fac;
    int lead;   // product of dims to the left
    int trail;  // product of dims to the right
  };
  std::vector<Active> active;
  {
    int lead = 1;
    std::vector<int> trails(factors_.size());
    int trail = 1;
    for (std::size_t i = factors_.size(); i-- > 0;) {
      trails[i] = trail;
      trail *= factors_[i].dim;
    }
    for (std::size_t i = 0; i < factors_.size(); ++i) {
      if (!factors_[i].is_identity)
        active.push_back(Active{&factors_[i], lead, trails[i]});
      lead *= factors_[i].dim;
    }
  }

  ComplexMatrix acc(d, d);
  std::vector<std::size_t> idx(active.size(), 0);
  std::vector<cplx> v, tmp;
  v.reserve(static_cast<std::size_t>(d));
  tmp.assign(static_cast<std::size_t>(d), cplx(0.0));

  const bool done_empty = active.empty();
  if (done_empty) {
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) acc(i, j) = f[i] * std::conj(f[j]);
    return DensityMatrix(std::move(acc));
  }

  while (true) {
    double weight = 1.0;
    for (std::size_t k = 0; k < active.size(); ++k)
      weight *= active[k].fac->weights[idx[k]];
    if (weight != 0.0) {
      v = f.amplitudes();
      for (std::size_t k = 0; k < active.size(); ++k) {
        const Active& a = active[k];
        const ComplexMatrix& u = a.fac->unitaries[idx[k]];
        const int fd = a.fac->dim;
        std::fill(tmp.begin(), tmp.end(), cplx(0.0));
        for (int l = 0; l < a.lead; ++l)
          for (int row = 0; row < fd; ++row) {
            const std::size_t out_base =
                (static_cast<std::size_t>(l) * fd + row) * a.trail;
            for (int col = 0; col < fd; ++col) {
              const cplx urc = u(row, col);
              if (urc == cplx(0.0)) continue;
              const std::size_t in_base =
                  (static_cast<std::size_t>(l) * fd + col) * a.trail;
              for (int r = 0; r < a.trail; ++r)
                tmp[out_base + r] += urc * v[in_base + r];
            }
          }
        v.swap(tmp);
      }
      // rank-one update on the upper triangle, mirrored afterwards
      for (int i = 0; i < d; ++i) {
        const cplx wvi = weight * v[static_cast<std::size_t>(i)];
        for (int j = i; j < d; ++j)
          acc(i, j) += wvi * std::conj(v[static_cast<std::size_t>(j)]);
      }
    }
    std::size_t k = 0;
    for (; k < active.size(); ++k) {
      if (++idx[k] < active[k].fac->weights.size()) break;
      idx[k] = 0;
    }
    if (k == active.size()) break;
  }

  for (int i = 0; i < d; ++i)
    for (int j = 0; j < i; ++j) acc(i, j) = std::conj(acc(j, i));
  return DensityMatrix(std::move(acc));
}

}  // namespace covacap
