#include "covacap/capacity.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <utility>

#include "covacap/errors.hpp"

namespace covacap {

namespace {

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

// Unit vectors modulo global phase as 2n-1 reals: the first amplitude is kept
// real, the vector is renormalized at every evaluation.
struct EntropyObjective {
  const UnitaryEnsemble* ens;
  double log_base;

  int dim() const { return ens->dim(); }
  int params() const { return 2 * dim() - 1; }
  double penalty() const { return log_in_base(dim(), log_base) + 10.0; }

  std::optional<PureState> state(const std::vector<double>& x) const {
    const int n = dim();
    std::vector<cplx> c(static_cast<std::size_t>(n));
    c[0] = cplx(x[0], 0.0);
    for (int j = 1; j < n; ++j)
      c[static_cast<std::size_t>(j)] =
          cplx(x[static_cast<std::size_t>(2 * j - 1)],
               x[static_cast<std::size_t>(2 * j)]);
    double norm2 = 0.0;
    for (const cplx& a : c) norm2 += std::norm(a);
    if (norm2 < 1e-24) return std::nullopt;
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& a : c) a *= inv;
    return PureState(std::move(c));
  }

  double value(const std::vector<double>& x) const {
    const std::optional<PureState> f = state(x);
    if (!f) return penalty();
    const DensityMatrix rho = ens->output(*f);
    const Spectrum s = hermitian_spectrum(rho.matrix());
    return entropy_from_spectrum(s.values, log_base);
  }
};

std::vector<double> params_from_state(const PureState& f) {
  const int n = f.dim();
  cplx phase(1.0, 0.0);
  const double a0 = std::abs(f[0]);
  if (a0 > 1e-15) phase = std::conj(f[0]) / a0;
  std::vector<double> x(static_cast<std::size_t>(2 * n - 1), 0.0);
  x[0] = (f[0] * phase).real();
  for (int j = 1; j < n; ++j) {
    const cplx a = f[j] * phase;
    x[static_cast<std::size_t>(2 * j - 1)] = a.real();
    x[static_cast<std::size_t>(2 * j)] = a.imag();
  }
  return x;
}

struct NmOutcome {
  std::vector<double> best_x;
  double best_f{0.0};
  bool converged{false};
};

// Nelder-Mead with standard coefficients; stops when the simplex value spread
// drops below tol or the evaluation budget runs out.
NmOutcome nelder_mead(const EntropyObjective& obj, std::vector<double> x0,
                      double tol, int max_evals) {
  const std::size_t d = x0.size();
  const double alpha = 1.0, gamma = 2.0, beta = 0.5, sigma = 0.5;
  const double step = 0.25;

  std::vector<std::vector<double>> xs(d + 1, x0);
  for (std::size_t i = 0; i < d; ++i) xs[i + 1][i] += step;
  std::vector<double> fs(d + 1);
  int evals = 0;
  for (std::size_t i = 0; i <= d; ++i) {
    fs[i] = obj.value(xs[i]);
    ++evals;
  }

  std::vector<std::size_t> order(d + 1);
  bool converged = false;
  while (true) {
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return fs[a] < fs[b]; });
    const std::size_t best = order[0], worst = order[d], second = order[d - 1];
    if (fs[worst] - fs[best] < tol) {
      converged = true;
      break;
    }
    if (evals >= max_evals) break;

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == worst) continue;
      for (std::size_t k = 0; k < d; ++k) centroid[k] += xs[i][k];
    }
    for (double& c : centroid) c /= static_cast<double>(d);

    std::vector<double> xr(d);
    for (std::size_t k = 0; k < d; ++k)
      xr[k] = centroid[k] + alpha * (centroid[k] - xs[worst][k]);
    const double fr = obj.value(xr);
    ++evals;

    if (fr < fs[best]) {
      std::vector<double> xe(d);
      for (std::size_t k = 0; k < d; ++k)
        xe[k] = centroid[k] + gamma * (xr[k] - centroid[k]);
      const double fe = obj.value(xe);
      ++evals;
      if (fe < fr) {
        xs[worst] = std::move(xe);
        fs[worst] = fe;
      } else {
        xs[worst] = std::move(xr);
        fs[worst] = fr;
      }
      continue;
    }
    if (fr < fs[second]) {
      xs[worst] = std::move(xr);
      fs[worst] = fr;
      continue;
    }
    std::vector<double> xc(d);
    if (fr < fs[worst]) {
      for (std::size_t k = 0; k < d; ++k)
        xc[k] = centroid[k] + beta * (xr[k] - centroid[k]);
    } else {
      for (std::size_t k = 0; k < d; ++k)
        xc[k] = centroid[k] + beta * (xs[worst][k] - centroid[k]);
    }
    const double fc = obj.value(xc);
    ++evals;
    if (fc < std::min(fr, fs[worst])) {
      xs[worst] = std::move(xc);
      fs[worst] = fc;
      continue;
    }
    for (std::size_t i = 0; i <= d; ++i) {
      if (i == best) continue;
      for (std::size_t k = 0; k < d; ++k)
        xs[i][k] = xs[best][k] + sigma * (xs[i][k] - xs[best][k]);
      fs[i] = obj.value(xs[i]);
      ++evals;
    }
  }

  std::size_t best = 0;
  for (std::size_t i = 1; i <= d; ++i)
    if (fs[i] < fs[best]) best = i;
  return NmOutcome{std::move(xs[best]), fs[best], converged};
}

}  // namespace

ClosedForm theorem_capacity(int n, const ProbVector& p, double log_base) {
  if (n < 1) throw ValidationError("dimension must be positive");
  if (p.size() != static_cast<std::size_t>(n))
    throw DimensionMismatch("distribution length must equal the dimension");
  ClosedForm out;
  out.entropy_p = shannon_entropy(p.values, log_base);
  out.capacity = log_in_base(static_cast<double>(n), log_base) - out.entropy_p;
  return out;
}

double qubit_capacity_from_lambdas(double lambda_x, double lambda_y,
                                   double lambda_z, double log_base) {
  const double pi00 = (1.0 + lambda_x + lambda_y + lambda_z) / 4.0;
  const double pi01 = (1.0 + lambda_x - lambda_y - lambda_z) / 4.0;
  const double pi10 = (1.0 - lambda_x + lambda_y - lambda_z) / 4.0;
  const double pi11 = (1.0 - lambda_x - lambda_y + lambda_z) / 4.0;
  for (double w : {pi00, pi01, pi10, pi11})
    if (w < -1e-12)
      throw InvalidLambdas("lambdas do not correspond to a Pauli mixture");
  const double lm =
      std::max({std::abs(lambda_x), std::abs(lambda_y), std::abs(lambda_z)});
  const double qs[2] = {(1.0 + lm) / 2.0, (1.0 - lm) / 2.0};
  return log_in_base(2.0, log_base) - shannon_entropy(qs, log_base);
}

OptimizationResult min_output_entropy(const UnitaryEnsemble& ens, int restarts,
                                      std::uint64_t seed, double tol,
                                      std::span<const PureState> warm_starts,
                                      double log_base) {
  if (restarts < 1) throw ValidationError("at least one restart required");
  const EntropyObjective obj{&ens, log_base};
  const int d = obj.params();
  const int max_evals = 2000 + 250 * d;
  const int total = std::max<int>(restarts, static_cast<int>(warm_starts.size()));

  Rng rng(seed);
  double best_f = std::numeric_limits<double>::infinity();
  std::vector<double> best_x;
  bool any_converged = false;
  std::vector<double> finals;
  finals.reserve(static_cast<std::size_t>(total));

  for (int run = 0; run < total; ++run) {
    std::vector<double> x0 =
        run < static_cast<int>(warm_starts.size())
            ? params_from_state(warm_starts[static_cast<std::size_t>(run)])
            : params_from_state(random_state_from(rng, ens.dim()));
    NmOutcome out = nelder_mead(obj, std::move(x0), tol, max_evals);
    finals.push_back(out.best_f);
    any_converged = any_converged || out.converged;
    if (out.best_f < best_f) {
      best_f = out.best_f;
      best_x = std::move(out.best_x);
    }
  }

  std::optional<PureState> argmin = obj.state(best_x);
  if (!argmin)
    throw InvalidState("optimizer returned a degenerate parameter vector");
  return OptimizationResult{best_f, std::move(*argmin), total, any_converged,
                            std::move(finals)};
}

OptimizationResult min_output_entropy(const MixedUnitaryChannel& phi, int restarts,
                                      std::uint64_t seed, double tol,
                                      double log_base) {
  std::vector<PureState> warm;
  const ProjectiveRep& rep = phi.rep();
  if (rep.group.order() % rep.dim == 0 && commutant_dimension(rep) == 1) {
    std::vector<SubgroupCandidate> cands =
        scan_subgroups(rep, phi.distribution().weights);
    const SubgroupCandidate* pick = nullptr;
    for (const SubgroupCandidate& c : cands)
      if (c.admissible) {
        pick = &c;
        break;
      }
    if (!pick)
      for (const SubgroupCandidate& c : cands)
        if (c.restriction_unitary) {
          pick = &c;
          break;
        }
    if (pick) {
      std::vector<ComplexMatrix> mats;
      mats.reserve(pick->t.members.size());
      for (int t : pick->t.members)
        mats.push_back(rep.matrices[static_cast<std::size_t>(t)]);
      const ComplexMatrix q = simultaneous_eigenbasis(mats);
      for (int j = 0; j < rep.dim; ++j) {
        std::vector<cplx> col(static_cast<std::size_t>(rep.dim));
        double norm2 = 0.0;
        for (int i = 0; i < rep.dim; ++i) {
          col[static_cast<std::size_t>(i)] = q(i, j);
          norm2 += std::norm(q(i, j));
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (cplx& c : col) c *= inv;
        warm.emplace_back(std::move(col));
      }
    }
  }
  return min_output_entropy(UnitaryEnsemble::from_channel(phi), restarts, seed,
                            tol, warm, log_base);
}

namespace {

OracleReport run_majorization_oracle(const UnitaryEnsemble& ens,
                                     const ProbVector& ref, int samples,
                                     std::uint64_t seed, bool exploratory) {
  if (samples < 0) throw ValidationError("negative sample count");
  OracleReport rep;
  rep.samples = samples;
  rep.exploratory = exploratory;
  Rng rng(seed);
  for (int i = 0; i < samples; ++i) {
    const PureState f = random_state_from(rng, ens.dim());
    const Spectrum s = hermitian_spectrum(ens.output(f).matrix());
    const ProbVector sp = ProbVector::from_spectrum(s);
    const MajorizationReport mc = majorization_check(ref, sp, rep.tol);
    rep.max_slack = std::max(rep.max_slack, mc.max_deficit);
    if (!mc.holds) {
      ++rep.violations;
      if (rep.first_violation_sample < 0) rep.first_violation_sample = i;
    }
  }
  return rep;
}

}  // namespace

OracleReport prop2_sampling_oracle(const MixedUnitaryChannel& phi,
                                   const ProbVector& p, int samples,
                                   std::uint64_t seed, bool exploratory) {
  return run_majorization_oracle(UnitaryEnsemble::from_channel(phi), p, samples,
                                 seed, exploratory);
}

OracleReport prop4_sampling_oracle(const MixedUnitaryChannel& phi,
                                   const ProbVector& q, int dim_k, int samples,
                                   std::uint64_t seed) {
  if (dim_k < 1) throw DimensionMismatch("identity factor needs dimension >= 1");
  if (!spanning_check(phi.rep()))
    throw HypothesesNotMet("extension oracle needs a spanning representation");
  const UnitaryEnsemble ens =
      UnitaryEnsemble::id_extended(UnitaryEnsemble::from_channel(phi), dim_k);
  return run_majorization_oracle(ens, q, samples, seed, false);
}

OracleReport prop5_sampling_oracle(const MixedUnitaryChannel& phi,
                                   const MixedUnitaryChannel& omega,
                                   const ProbVector& p, const ProbVector& q,
                                   int samples, std::uint64_t seed) {
  if (!spanning_check(phi.rep()))
    throw HypothesesNotMet("product oracle needs a spanning representation");
  const UnitaryEnsemble ens = UnitaryEnsemble::tensor(
      UnitaryEnsemble::from_channel(phi), UnitaryEnsemble::from_channel(omega));
  return run_majorization_oracle(ens, product_distribution(p, q), samples, seed,
                                 false);
}

WeakAdditivityReport weak_additivity_check(const MixedUnitaryChannel& phi,
                                           int restarts, std::uint64_t seed,
                                           double log_base) {
  const std::optional<AdmissibleSubgroup> adm =
      find_admissible_subgroup(phi.rep(), phi.distribution().weights);
  if (!adm)
    throw HypothesesNotMet("weak additivity check needs an admissible subgroup");

  const double hp = shannon_entropy(adm->dist.p.values, log_base);
  const int n = phi.dim();

  std::vector<ComplexMatrix> mats;
  mats.reserve(adm->t.members.size());
  for (int t : adm->t.members)
    mats.push_back(phi.rep().matrices[static_cast<std::size_t>(t)]);
  const ComplexMatrix q = simultaneous_eigenbasis(mats);

  std::vector<PureState> basis;
  basis.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    std::vector<cplx> col(static_cast<std::size_t>(n));
    double norm2 = 0.0;
    for (int i = 0; i < n; ++i) {
      col[static_cast<std::size_t>(i)] = q(i, j);
      norm2 += std::norm(q(i, j));
    }
    const double inv = 1.0 / std::sqrt(norm2);
    for (cplx& c : col) c *= inv;
    basis.emplace_back(std::move(col));
  }
  std::vector<PureState> warm;
  warm.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) warm.push_back(tensor(basis[j], basis[k]));

  const UnitaryEnsemble ens2 = UnitaryEnsemble::tensor(
      UnitaryEnsemble::from_channel(phi), UnitaryEnsemble::from_channel(phi));

  WeakAdditivityReport rep;
  rep.twice_entropy = 2.0 * hp;
  rep.product_warm_start_ok = true;
  for (const PureState& w : warm) {
    const Spectrum s = hermitian_spectrum(ens2.output(w).matrix());
    const double ent = entropy_from_spectrum(s.values, log_base);
    if (std::abs(ent - rep.twice_entropy) > 1e-9) rep.product_warm_start_ok = false;
  }

  const OptimizationResult opt =
      min_output_entropy(ens2, restarts, seed, 1e-10, warm, log_base);
  rep.level2_min = opt.min_entropy;
  rep.gap = opt.min_entropy - rep.twice_entropy;
  rep.restarts_used = opt.restarts_used;
  rep.converged = opt.converged;
  rep.pass = rep.product_warm_start_ok && rep.gap >= -1e-6;
  return rep;
}

CapacityReport full_capacity_pipeline(const MixedUnitaryChannel& phi,
                                      const PipelineOptions& opts) {
  CapacityReport rep;
  rep.n = phi.dim();
  rep.log_base = opts.log_base;

  Rng seeder(opts.seed);
  const std::uint64_t cov_seed = seeder.next_u64();
  const std::uint64_t opt_seed = seeder.next_u64();

  const ProjectiveRep& r = phi.rep();
  rep.flags.spanning = spanning_check(r);
  rep.flags.irreducible = commutant_dimension(r) == 1;

  const SubgroupCandidate* chosen = nullptr;
  if (rep.flags.irreducible && r.group.order() % r.dim == 0) {
    rep.candidates = scan_subgroups(r, phi.distribution().weights);
    for (const SubgroupCandidate& c : rep.candidates) {
      if (c.restriction_unitary) rep.flags.restriction_unitary = true;
      if (c.admissible && !chosen) chosen = &c;
    }
    rep.flags.condition_holds = chosen != nullptr;
  }

  if (chosen) {
    rep.has_subgroup = true;
    rep.chosen_t = chosen->t;
    rep.p = chosen->dist;
    const ClosedForm cf = theorem_capacity(rep.n, chosen->dist.p, opts.log_base);
    rep.entropy_p = cf.entropy_p;
    rep.capacity = cf.capacity;
  }
  rep.theorem_applies = rep.flags.all();
  rep.status = rep.theorem_applies ? "theorem-applies" : "theorem-not-applicable";

  const CovarianceReport cov =
      covariance_check(phi, opts.covariance_trials, cov_seed);
  rep.covariant = cov.covariant;
  rep.covariance_residual = cov.max_residual;

  if (opts.run_optimizer) {
    std::vector<PureState> warm;
    const SubgroupCandidate* basis_source = chosen;
    if (!basis_source)
      for (const SubgroupCandidate& c : rep.candidates)
        if (c.restriction_unitary) {
          basis_source = &c;
          break;
        }
    if (basis_source) {
      std::vector<ComplexMatrix> mats;
      mats.reserve(basis_source->t.members.size());
      for (int t : basis_source->t.members)
        mats.push_back(r.matrices[static_cast<std::size_t>(t)]);
      const ComplexMatrix q = simultaneous_eigenbasis(mats);
      for (int j = 0; j < rep.n; ++j) {
        std::vector<cplx> col(static_cast<std::size_t>(rep.n));
        double norm2 = 0.0;
        for (int i = 0; i < rep.n; ++i) {
          col[static_cast<std::size_t>(i)] = q(i, j);
          norm2 += std::norm(q(i, j));
        }
        const double inv = 1.0 / std::sqrt(norm2);
        for (cplx& c : col) c *= inv;
        warm.emplace_back(std::move(col));
      }
    }
    rep.optimizer = min_output_entropy(UnitaryEnsemble::from_channel(phi),
                                       opts.restarts, opt_seed, 1e-10, warm,
                                       opts.log_base);
    rep.numeric_capacity =
        log_in_base(static_cast<double>(rep.n), opts.log_base) -
        rep.optimizer->min_entropy;
    if (rep.theorem_applies) {
      rep.cross_check_gap = std::abs(rep.capacity - rep.numeric_capacity);
      rep.cross_check_ok = rep.cross_check_gap <= 1e-6;
    } else if (rep.flags.irreducible && rep.covariant) {
      rep.has_c1_lower_bound = true;
      rep.c1_lower_bound = rep.numeric_capacity;
    }
  }
  return rep;
}

}  // namespace covacap
