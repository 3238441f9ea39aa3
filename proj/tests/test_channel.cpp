#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "covacap/channel.hpp"
#include "covacap/errors.hpp"
#include "covacap/finite_group.hpp"
#include "covacap/majorization.hpp"
#include "covacap/numerics.hpp"
#include "covacap/representation.hpp"

using namespace covacap;

namespace {

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

// brute-force (phi (x) omega)(rho) with materialized Kronecker products
DensityMatrix tensor_apply_reference(const MixedUnitaryChannel& phi,
                                     const MixedUnitaryChannel& omega,
                                     const DensityMatrix& rho) {
  const int n = phi.dim() * omega.dim();
  ComplexMatrix acc(n, n);
  const auto pw = phi.distribution().as_doubles();
  const auto ow = omega.distribution().as_doubles();
  for (std::size_t g = 0; g < pw.size(); ++g)
    for (std::size_t h = 0; h < ow.size(); ++h) {
      if (pw[g] == 0.0 || ow[h] == 0.0) continue;
      const ComplexMatrix u =
          tensor(phi.rep().matrices[g], omega.rep().matrices[h]);
      ComplexMatrix term = u * rho.matrix() * u.adjoint();
      term *= cplx(pw[g] * ow[h]);
      acc += term;
    }
  return DensityMatrix(acc);
}

}  // namespace

TEST_CASE("group distributions validate exactness") {
  const FiniteGroup g = FiniteGroup::cyclic(4);
  CHECK_THROWS_AS(
      GroupDistribution(g, {Rational(1, 2), Rational(1, 2), Rational(1, 2),
                            Rational(-1, 2)}),
      InvalidDistribution);
  CHECK_THROWS_AS(
      GroupDistribution(g, {Rational(1, 2), Rational(1, 4), Rational(1, 8),
                            Rational(1, 16)}),
      InvalidDistribution);
  CHECK_THROWS_AS(GroupDistribution(g, {Rational(1, 2), Rational(1, 2)}),
                  DimensionMismatch);

  const GroupDistribution u = GroupDistribution::uniform(g);
  CHECK(u.weights == std::vector<Rational>(4, Rational(1, 4)));
  const GroupDistribution p = GroupDistribution::point_mass(g, 2);
  CHECK(p.weights[2] == Rational(1));
  CHECK(p.as_doubles() == std::vector<double>{0.0, 0.0, 1.0, 0.0});
}

TEST_CASE("qubit channel sends |0><0| to diag(4/5, 1/5)") {
  const MixedUnitaryChannel phi = pauli_channel();
  const DensityMatrix out = apply_to_pure(phi, PureState::basis_vector(2, 0));
  CHECK(out.matrix()(0, 0).real() == doctest::Approx(0.8).epsilon(1e-14));
  CHECK(out.matrix()(1, 1).real() == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(std::abs(out.matrix()(0, 1)) <= 1e-14);
}

TEST_CASE("dimension-3 channel sends |0><0| to the shift marginals") {
  const MixedUnitaryChannel phi = example_channel();
  const DensityMatrix out = apply_to_pure(phi, PureState::basis_vector(3, 0));
  CHECK(out.matrix()(0, 0).real() ==
        doctest::Approx(11.0 / 24.0).epsilon(1e-14));
  CHECK(out.matrix()(1, 1).real() == doctest::Approx(7.0 / 24.0).epsilon(1e-14));
  CHECK(out.matrix()(2, 2).real() == doctest::Approx(6.0 / 24.0).epsilon(1e-14));
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j) CHECK(std::abs(out.matrix()(i, j)) <= 1e-14);
}

TEST_CASE("apply preserves trace and hermiticity on random states") {
  const MixedUnitaryChannel phi = example_channel();
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const DensityMatrix rho = DensityMatrix::pure(random_pure_state(3, seed));
    const DensityMatrix out = apply(phi, rho);
    CHECK(std::abs(out.matrix().trace() - cplx(1.0)) <= 1e-12);
    CHECK(out.matrix().is_hermitian(1e-12));
  }
}

TEST_CASE("channels built from group reps are covariant") {
  const CovarianceReport rep = covariance_check(example_channel(), 20, 99);
  CHECK(rep.covariant);
  CHECK(rep.max_residual <= 1e-12);

  // swapping in an alien unitary breaks covariance
  GroupChannelSetup s = pauli_setup();
  ComplexMatrix hadamard(2, 2);
  const double r = 1.0 / std::sqrt(2.0);
  hadamard(0, 0) = r;
  hadamard(0, 1) = r;
  hadamard(1, 0) = r;
  hadamard(1, 1) = -r;
  s.rep.matrices[3] = hadamard;
  const MixedUnitaryChannel tampered(
      s.rep, GroupDistribution(s.rep.group,
                               {Rational(7, 10), Rational(1, 10),
                                Rational(1, 10), Rational(1, 10)}));
  const CovarianceReport bad = covariance_check(tampered, 20, 99);
  CHECK(!bad.covariant);
  CHECK(bad.witness_element >= 0);
  CHECK(bad.max_residual > 1e-6);
}

TEST_CASE("tensor applications match materialized Kronecker references") {
  const MixedUnitaryChannel phi = pauli_channel();
  const MixedUnitaryChannel psi = example_channel();
  for (std::uint64_t seed = 10; seed < 13; ++seed) {
    const DensityMatrix rho = DensityMatrix::pure(random_pure_state(6, seed));
    const DensityMatrix fast = apply_tensor(phi, psi, rho);
    const DensityMatrix slow = tensor_apply_reference(phi, psi, rho);
    CHECK((fast.matrix() - slow.matrix()).frobenius_norm() <= 1e-11);
  }

  // id (x) phi acts only on the trailing factor
  for (std::uint64_t seed = 20; seed < 23; ++seed) {
    const DensityMatrix rho = DensityMatrix::pure(random_pure_state(6, seed));
    const DensityMatrix fast = id_tensor_apply(phi, 3, rho);
    ComplexMatrix acc(6, 6);
    const auto pw = phi.distribution().as_doubles();
    for (std::size_t ig = 0; ig < pw.size(); ++ig) {
      const ComplexMatrix u =
          tensor(ComplexMatrix::identity(3), phi.rep().matrices[ig]);
      ComplexMatrix term = u * rho.matrix() * u.adjoint();
      term *= cplx(pw[ig]);
      acc += term;
    }
    CHECK((fast.matrix() - acc).frobenius_norm() <= 1e-11);
  }
}

TEST_CASE("ensembles reproduce channel outputs without Kronecker blowup") {
  const MixedUnitaryChannel phi = example_channel();
  const UnitaryEnsemble e1 = UnitaryEnsemble::from_channel(phi);
  CHECK(e1.dim() == 3);
  CHECK(e1.terms() == 9);
  for (std::uint64_t seed = 30; seed < 34; ++seed) {
    const PureState f = random_pure_state(3, seed);
    CHECK((e1.output(f).matrix() - apply_to_pure(phi, f).matrix())
              .frobenius_norm() <= 1e-11);
  }

  const UnitaryEnsemble e2 = UnitaryEnsemble::tensor(e1, e1);
  CHECK(e2.dim() == 9);
  CHECK(e2.terms() == 81);
  for (std::uint64_t seed = 40; seed < 43; ++seed) {
    const PureState f = random_pure_state(9, seed);
    const DensityMatrix viaens = e2.output(f);
    const DensityMatrix direct = apply_tensor(phi, phi, DensityMatrix::pure(f));
    CHECK((viaens.matrix() - direct.matrix()).frobenius_norm() <= 1e-11);
  }

  const UnitaryEnsemble e3 = UnitaryEnsemble::id_extended(e1, 3);
  CHECK(e3.dim() == 9);
  for (std::uint64_t seed = 50; seed < 53; ++seed) {
    const PureState f = random_pure_state(9, seed);
    const DensityMatrix viaens = e3.output(f);
    const DensityMatrix direct = id_tensor_apply(phi, 3, DensityMatrix::pure(f));
    CHECK((viaens.matrix() - direct.matrix()).frobenius_norm() <= 1e-11);
  }
}

TEST_CASE("the reference channel carries coset-uniform weights") {
  const MixedUnitaryChannel phi = example_channel();
  const Subgroup t = make_subgroup(phi.rep().group, {0, 3, 6});
  const CosetDistribution cd =
      coset_distribution(example_weights(), quotient(phi.rep().group, t));
  const MixedUnitaryChannel ref = qc_reference(phi, t, cd);

  // p = (1/2, 1/3, 1/6) over cosets {0,3,6}, {1,4,7}, {2,5,8}
  const std::vector<Rational>& w = ref.distribution().weights;
  for (int e : {0, 3, 6}) CHECK(w[static_cast<std::size_t>(e)] == Rational(1, 6));
  for (int e : {1, 4, 7}) CHECK(w[static_cast<std::size_t>(e)] == Rational(1, 9));
  for (int e : {2, 5, 8}) CHECK(w[static_cast<std::size_t>(e)] == Rational(1, 18));

  // the wrong subgroup is rejected
  const Subgroup diag = make_subgroup(phi.rep().group, {0, 4, 8});
  const CosetDistribution cd2 =
      coset_distribution(example_weights(), quotient(phi.rep().group, diag));
  CHECK_THROWS_AS(qc_reference(phi, diag, cd2), HypothesesNotMet);
}

TEST_CASE("conditional expectation fixes reference-channel outputs") {
  const MixedUnitaryChannel phi = example_channel();
  const Subgroup t = make_subgroup(phi.rep().group, {0, 3, 6});
  const CosetDistribution cd =
      coset_distribution(example_weights(), quotient(phi.rep().group, t));
  const MixedUnitaryChannel ref = qc_reference(phi, t, cd);

  std::vector<ComplexMatrix> tm;
  for (int m : t.members)
    tm.push_back(phi.rep().matrices[static_cast<std::size_t>(m)]);

  for (std::uint64_t seed = 60; seed < 70; ++seed) {
    const DensityMatrix rho = DensityMatrix::pure(random_pure_state(3, seed));
    const ComplexMatrix out = apply(ref, rho).matrix();
    const ComplexMatrix averaged = conditional_expectation(tm, out);
    CHECK((averaged - out).frobenius_norm() <= 1e-10);
  }
}

TEST_CASE("twirl identity holds for spanning reps and reports otherwise") {
  const MixedUnitaryChannel phi = example_channel();
  for (std::uint64_t seed = 80; seed < 85; ++seed) {
    const PureState f = random_pure_state(9, seed);
    const TwirlReport rep = twirl_identity_check(phi, phi, f);
    CHECK(rep.spanning);
    CHECK(rep.ok);
    CHECK(rep.residual <= 1e-8);
    CHECK(rep.residual >= 0.0);
  }

  GroupChannelSetup trivial = trivial_setup(2);
  const MixedUnitaryChannel flat(trivial.rep,
                                 GroupDistribution::uniform(trivial.rep.group));
  const TwirlReport rep =
      twirl_identity_check(flat, flat, random_pure_state(4, 4));
  CHECK(!rep.spanning);
  CHECK(!rep.ok);
  CHECK(rep.residual == -1.0);
}

TEST_CASE("channel construction rejects mismatched inputs") {
  GroupChannelSetup s = pauli_setup();
  const FiniteGroup other = FiniteGroup::cyclic(4);
  CHECK_THROWS_AS(
      MixedUnitaryChannel(s.rep, GroupDistribution::uniform(other)), Error);
}
