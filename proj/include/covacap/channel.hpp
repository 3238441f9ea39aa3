#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "covacap/finite_group.hpp"
#include "covacap/majorization.hpp"
#include "covacap/numerics.hpp"
#include "covacap/rational.hpp"
#include "covacap/representation.hpp"

namespace covacap {

// Exact probability distribution on the elements of a finite group.
struct GroupDistribution {
  FiniteGroup group;
  std::vector<Rational> weights;

  GroupDistribution(FiniteGroup g, std::vector<Rational> w);

  static GroupDistribution uniform(const FiniteGroup& g);
  static GroupDistribution point_mass(const FiniteGroup& g, int element);

  std::vector<double> as_doubles() const;
};

// rho -> sum_g pi_g U_g rho U_g^dagger for a projective rep and exact weights.
class MixedUnitaryChannel {
 public:
  MixedUnitaryChannel(ProjectiveRep rep, GroupDistribution dist);

  int dim() const { return rep_.dim; }
  const ProjectiveRep& rep() const { return rep_; }
  const GroupDistribution& distribution() const { return dist_; }

 private:
  ProjectiveRep rep_;
  GroupDistribution dist_;
};

DensityMatrix apply(const MixedUnitaryChannel& phi, const DensityMatrix& rho);
DensityMatrix apply_to_pure(const MixedUnitaryChannel& phi, const PureState& f);

// (phi (x) omega)(rho) for rho on H (x) K, H the domain of phi.
DensityMatrix apply_tensor(const MixedUnitaryChannel& phi,
                           const MixedUnitaryChannel& omega,
                           const DensityMatrix& rho);

// (id_K (x) phi)(rho) for rho on K (x) H with dim K = dim_k.
DensityMatrix id_tensor_apply(const MixedUnitaryChannel& phi, int dim_k,
                              const DensityMatrix& rho);

struct CovarianceReport {
  bool covariant{false};
  int witness_element{-1};
  double max_residual{0.0};
};

// Samples group elements and random pure inputs, comparing
// phi(U_g rho U_g^dagger) against U_g phi(rho) U_g^dagger in Frobenius norm.
CovarianceReport covariance_check(const MixedUnitaryChannel& phi, int trials,
                                  std::uint64_t seed);

// The q-c reference channel: coset-uniform weights p_j / |T| on every element
// of coset j.  Requires T normal abelian of index dim with a true unitary
// restriction.
MixedUnitaryChannel qc_reference(const MixedUnitaryChannel& phi, const Subgroup& t,
                                 const CosetDistribution& cd);

// (1/|T|) sum_t U_t X U_t^dagger.
ComplexMatrix conditional_expectation(std::span<const ComplexMatrix> t_matrices,
                                      const ComplexMatrix& x);

struct TwirlReport {
  bool spanning{false};
  bool ok{false};
  double residual{-1.0};
};

// Checks sum_g (U_g (x) I) X (U_g (x) I)^dagger = (|G|/n) I (x) Tr_H(X) for
// X = (id (x) omega)(|f><f|), f on H (x) K.  Requires a spanning rep; reports
// the hypothesis failure otherwise instead of evaluating.
TwirlReport twirl_identity_check(const MixedUnitaryChannel& phi,
                                 const MixedUnitaryChannel& omega,
                                 const PureState& f);

// Weighted family of unitaries stored as a cartesian product of tensor
// factors, so level-2 and level-3 ensembles never materialize Kronecker
// products.  output(f) evaluates sum w |U f><U f| with per-factor mode
// products.
class UnitaryEnsemble {
 public:
  static UnitaryEnsemble from_channel(const MixedUnitaryChannel& phi);
  static UnitaryEnsemble id_extended(const UnitaryEnsemble& e, int lead_dim);
  static UnitaryEnsemble tensor(const UnitaryEnsemble& a, const UnitaryEnsemble& b);

  int dim() const { return dim_; }
  std::size_t terms() const;

  DensityMatrix output(const PureState& f) const;

 private:
  struct Factor {
    int dim{0};
    bool is_identity{false};
    std::vector<double> weights;
    std::vector<ComplexMatrix> unitaries;
  };
  std::vector<Factor> factors_;
  int dim_{0};
};

}  // namespace covacap
