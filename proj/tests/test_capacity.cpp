#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "covacap/capacity.hpp"
#include "covacap/channel.hpp"
#include "covacap/errors.hpp"
#include "covacap/majorization.hpp"
#include "covacap/numerics.hpp"
#include "covacap/representation.hpp"

using namespace covacap;

namespace {

constexpr double kEntropyP = 1.459147917027245;   // H(1/2, 1/3, 1/6) in bits
constexpr double kCapacity = 0.125814583693911;   // log2(3) - kEntropyP
constexpr double kQubitCapacity = 0.2780719051126377;  // 1 - h2(4/5)

std::vector<Rational> example_weights() {
  return {Rational(1, 4),  Rational(1, 8),  Rational(1, 12),
          Rational(1, 8),  Rational(1, 8),  Rational(1, 24),
          Rational(1, 8),  Rational(1, 12), Rational(1, 24)};
}

MixedUnitaryChannel example_channel() {
  GroupChannelSetup s = heisenberg_weyl_setup(3);
  GroupDistribution d(s.rep.group, example_weights());
  return MixedUnitaryChannel(std::move(s.rep), std::move(d));
}

MixedUnitaryChannel pauli_channel() {
  GroupChannelSetup s = pauli_setup();
  GroupDistribution d(s.rep.group,
                      {Rational(7, 10), Rational(1, 10), Rational(1, 10),
                       Rational(1, 10)});
  return MixedUnitaryChannel(std::move(s.rep), std::move(d));
}

// weights chosen so every unitary-restriction subgroup fails the ordering
// condition (zeros inside the leading cosets break every chain)
MixedUnitaryChannel condition_violating_channel() {
  GroupChannelSetup s = heisenberg_weyl_setup(3);
  std::vector<Rational> w(9, Rational(0));
  w[0] = Rational(1, 2);
  w[1] = Rational(1, 4);
  w[3] = Rational(1, 8);
  w[4] = Rational(1, 8);
  GroupDistribution d(s.rep.group, std::move(w));
  return MixedUnitaryChannel(std::move(s.rep), std::move(d));
}

ProbVector example_p() {
  return ProbVector::from_rationals(
      {Rational(1, 2), Rational(1, 3), Rational(1, 6)});
}

}  // namespace

TEST_CASE("closed form on the frozen example distribution") {
  const ClosedForm cf = theorem_capacity(3, example_p());
  CHECK(cf.entropy_p == doctest::Approx(kEntropyP).epsilon(1e-12));
  CHECK(cf.capacity == doctest::Approx(kCapacity).epsilon(1e-12));

  const ClosedForm qubit = theorem_capacity(
      2, ProbVector::from_rationals({Rational(4, 5), Rational(1, 5)}));
  CHECK(qubit.capacity == doctest::Approx(kQubitCapacity).epsilon(1e-12));

  // in nats the same distribution scales by ln 2
  const ClosedForm nats = theorem_capacity(3, example_p(), std::exp(1.0));
  CHECK(nats.capacity ==
        doctest::Approx(kCapacity * std::log(2.0)).epsilon(1e-12));

  CHECK_THROWS_AS(theorem_capacity(4, example_p()), Error);
}

TEST_CASE("point mass and uniform coset weights give the trivial limits") {
  for (int n : {2, 3, 4, 8}) {
    std::vector<Rational> point(static_cast<std::size_t>(n), Rational(0));
    point[0] = Rational(1);
    const ClosedForm top =
        theorem_capacity(n, ProbVector::from_rationals(point));
    CHECK(top.capacity == std::log2(static_cast<double>(n)));  // exact
    const ClosedForm flat =
        theorem_capacity(n, ProbVector::uniform(static_cast<std::size_t>(n)));
    CHECK(std::abs(flat.capacity) <= 1e-12);
  }
}

TEST_CASE("qubit capacity from the signed eigenvalues") {
  CHECK(qubit_capacity_from_lambdas(0.6, 0.6, 0.6) ==
        doctest::Approx(kQubitCapacity).epsilon(1e-12));
  // identity channel: all lambdas one
  CHECK(qubit_capacity_from_lambdas(1.0, 1.0, 1.0) ==
        doctest::Approx(1.0).epsilon(1e-12));
  // completely depolarizing: all lambdas zero
  CHECK(qubit_capacity_from_lambdas(0.0, 0.0, 0.0) ==
        doctest::Approx(0.0).epsilon(1e-12));
  // the largest |lambda| wins regardless of sign or axis
  CHECK(qubit_capacity_from_lambdas(-0.6, 0.2, 0.2) ==
        doctest::Approx(qubit_capacity_from_lambdas(0.6, 0.2, 0.2))
            .epsilon(1e-12));
  CHECK(qubit_capacity_from_lambdas(0.2, 0.6, 0.2) ==
        doctest::Approx(kQubitCapacity).epsilon(1e-12));
  // inconsistent triples imply negative weights
  CHECK_THROWS_AS(qubit_capacity_from_lambdas(0.9, 0.9, -0.5), InvalidLambdas);
}

TEST_CASE("minimal output entropy matches the closed form on the example") {
  const MixedUnitaryChannel phi = example_channel();
  const OptimizationResult res = min_output_entropy(phi, 8, 1729);
  CHECK(res.min_entropy == doctest::Approx(kEntropyP).epsilon(1e-9));
  CHECK(res.converged);
  CHECK(res.restarts_used >= 8);
  CHECK(static_cast<int>(res.restart_finals.size()) == res.restarts_used);
  for (double f : res.restart_finals) CHECK(f >= res.min_entropy - 1e-12);
  CHECK(res.argmin.dim() == 3);
  // the argmin reproduces the reported entropy
  const UnitaryEnsemble ens = UnitaryEnsemble::from_channel(phi);
  const Spectrum s = hermitian_spectrum(ens.output(res.argmin).matrix());
  CHECK(entropy_from_spectrum(s.values, 2.0) ==
        doctest::Approx(res.min_entropy).epsilon(1e-9));
}

TEST_CASE("minimal output entropy from cold Haar starts on the qubit channel") {
  const UnitaryEnsemble ens = UnitaryEnsemble::from_channel(pauli_channel());
  const OptimizationResult res = min_output_entropy(ens, 12, 31337);
  const double h2 = 1.0 - kQubitCapacity;  // h2(0.8)
  CHECK(res.min_entropy == doctest::Approx(h2).epsilon(1e-6));
  CHECK(res.converged);
}

TEST_CASE("optimizer is deterministic in the seed") {
  const UnitaryEnsemble ens = UnitaryEnsemble::from_channel(example_channel());
  const OptimizationResult a = min_output_entropy(ens, 4, 555);
  const OptimizationResult b = min_output_entropy(ens, 4, 555);
  CHECK(a.min_entropy == b.min_entropy);
  CHECK(a.restart_finals == b.restart_finals);
}

TEST_CASE("sampling oracles find no violations on the example channel") {
  const MixedUnitaryChannel phi = example_channel();
  const ProbVector p = example_p();

  const OracleReport single = prop2_sampling_oracle(phi, p, 50, 42);
  CHECK(single.samples == 50);
  CHECK(single.violations == 0);
  CHECK(single.max_slack <= 1e-9);
  CHECK(single.first_violation_sample == -1);
  CHECK(!single.exploratory);

  const OracleReport ext = prop4_sampling_oracle(phi, p, 3, 25, 43);
  CHECK(ext.violations == 0);

  const OracleReport prod = prop5_sampling_oracle(phi, phi, p, p, 20, 44);
  CHECK(prod.violations == 0);
}

TEST_CASE("oracle determinism and the exploratory flag") {
  const MixedUnitaryChannel phi = condition_violating_channel();
  // probe distribution from the first unitary-restriction grouping
  const std::vector<SubgroupCandidate> cands =
      scan_subgroups(phi.rep(), phi.distribution().weights);
  const OracleReport probe =
      prop2_sampling_oracle(phi, cands[0].dist.p, 30, 7, true);
  CHECK(probe.exploratory);
  CHECK(probe.samples == 30);

  const OracleReport again =
      prop2_sampling_oracle(phi, cands[0].dist.p, 30, 7, true);
  CHECK(probe.violations == again.violations);
  CHECK(probe.max_slack == again.max_slack);
}

TEST_CASE("tensor oracles require a spanning representation") {
  GroupChannelSetup trivial = trivial_setup(2);
  const MixedUnitaryChannel flat(trivial.rep,
                                 GroupDistribution::uniform(trivial.rep.group));
  const ProbVector p = ProbVector::uniform(2);
  CHECK_THROWS_AS(prop4_sampling_oracle(flat, p, 2, 5, 1), HypothesesNotMet);
  CHECK_THROWS_AS(prop5_sampling_oracle(flat, flat, p, p, 5, 1),
                  HypothesesNotMet);
}

TEST_CASE("weak additivity holds at level two for the example") {
  const WeakAdditivityReport rep = weak_additivity_check(example_channel(), 6, 99);
  CHECK(rep.pass);
  CHECK(rep.product_warm_start_ok);
  CHECK(rep.twice_entropy == doctest::Approx(2.0 * kEntropyP).epsilon(1e-12));
  CHECK(rep.level2_min == doctest::Approx(2.0 * kEntropyP).epsilon(1e-6));
  CHECK(rep.gap >= -1e-6);
  CHECK(rep.restarts_used >= 6);

  CHECK_THROWS_AS(weak_additivity_check(condition_violating_channel(), 2, 1),
                  HypothesesNotMet);
}

TEST_CASE("full pipeline on the dimension-3 example") {
  PipelineOptions opts;
  opts.restarts = 8;
  const CapacityReport rep = full_capacity_pipeline(example_channel(), opts);

  CHECK(rep.n == 3);
  CHECK(rep.flags.irreducible);
  CHECK(rep.flags.restriction_unitary);
  CHECK(rep.flags.condition_holds);
  CHECK(rep.flags.spanning);
  CHECK(rep.theorem_applies);
  CHECK(rep.status == "theorem-applies");
  CHECK(rep.has_subgroup);
  CHECK(rep.chosen_t.members == std::vector<int>{0, 3, 6});
  REQUIRE(rep.p.has_value());
  CHECK(rep.p->sums == std::vector<Rational>{Rational(1, 2), Rational(1, 3),
                                             Rational(1, 6)});
  CHECK(rep.entropy_p == doctest::Approx(kEntropyP).epsilon(1e-12));
  CHECK(rep.capacity == doctest::Approx(kCapacity).epsilon(1e-12));
  REQUIRE(rep.optimizer.has_value());
  CHECK(rep.cross_check_ok);
  CHECK(std::abs(rep.cross_check_gap) <= 1e-6);
  CHECK(rep.numeric_capacity == doctest::Approx(kCapacity).epsilon(1e-6));
  CHECK(rep.covariant);
  CHECK(rep.covariance_residual <= 1e-8);
  CHECK(rep.candidates.size() == 4);
  CHECK(!rep.has_c1_lower_bound);  // exact value known, no bound needed
}

TEST_CASE("pipeline agreement between the two qubit formulas") {
  PipelineOptions opts;
  opts.restarts = 8;
  const CapacityReport rep = full_capacity_pipeline(pauli_channel(), opts);
  CHECK(rep.theorem_applies);
  CHECK(rep.capacity ==
        doctest::Approx(qubit_capacity_from_lambdas(0.6, 0.6, 0.6))
            .epsilon(1e-12));
  CHECK(rep.chosen_t.members == std::vector<int>{0, 1});
}

TEST_CASE("pipeline degrades to a bound when the condition fails") {
  PipelineOptions opts;
  opts.restarts = 8;
  const CapacityReport rep =
      full_capacity_pipeline(condition_violating_channel(), opts);
  CHECK(!rep.theorem_applies);
  CHECK(rep.status == "theorem-not-applicable");
  CHECK(!rep.has_subgroup);
  CHECK(rep.flags.irreducible);
  CHECK(!rep.flags.condition_holds);
  CHECK(rep.covariant);
  REQUIRE(rep.optimizer.has_value());
  CHECK(rep.has_c1_lower_bound);
  CHECK(rep.c1_lower_bound ==
        doctest::Approx(std::log2(3.0) - rep.optimizer->min_entropy)
            .epsilon(1e-12));
  CHECK(!rep.cross_check_ok);
  CHECK(rep.candidates.size() == 4);
}

TEST_CASE("pipeline can skip the optimizer") {
  PipelineOptions opts;
  opts.run_optimizer = false;
  const CapacityReport rep = full_capacity_pipeline(example_channel(), opts);
  CHECK(rep.theorem_applies);
  CHECK(!rep.optimizer.has_value());
  CHECK(!rep.cross_check_ok);
  CHECK(rep.capacity == doctest::Approx(kCapacity).epsilon(1e-12));
}

TEST_CASE("pipeline trivial limits through real channels") {
  // point mass at the identity: the channel is the identity map
  GroupChannelSetup hw = heisenberg_weyl_setup(3);
  const MixedUnitaryChannel id_channel(
      hw.rep, GroupDistribution::point_mass(hw.rep.group, 0));
  PipelineOptions opts;
  opts.restarts = 4;
  const CapacityReport top = full_capacity_pipeline(id_channel, opts);
  CHECK(top.theorem_applies);
  CHECK(top.capacity == std::log2(3.0));  // exact

  GroupChannelSetup hw2 = heisenberg_weyl_setup(3);
  const MixedUnitaryChannel flat(hw2.rep,
                                 GroupDistribution::uniform(hw2.rep.group));
  const CapacityReport zero = full_capacity_pipeline(flat, opts);
  CHECK(zero.theorem_applies);
  CHECK(std::abs(zero.capacity) <= 1e-12);
  CHECK(zero.cross_check_ok);
}

TEST_CASE("pipeline determinism in the seed") {
  PipelineOptions opts;
  opts.restarts = 4;
  opts.seed = 2718;
  const CapacityReport a = full_capacity_pipeline(example_channel(), opts);
  const CapacityReport b = full_capacity_pipeline(example_channel(), opts);
  CHECK(a.numeric_capacity == b.numeric_capacity);
  CHECK(a.covariance_residual == b.covariance_residual);
  CHECK(a.optimizer->restart_finals == b.optimizer->restart_finals);
}
