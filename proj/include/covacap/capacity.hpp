#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covacap/channel.hpp"
#include "covacap/majorization.hpp"

namespace covacap {

struct ClosedForm {
  double entropy_p{0.0};
  double capacity{0.0};
};

// log n + sum_j p_j log p_j in the chosen base; p must have length n.
ClosedForm theorem_capacity(int n, const ProbVector& p, double log_base = 2.0);

// log 2 - h((1 + lambda_max)/2) for a Pauli channel described by its three
// signed eigenvalue parameters.  Throws InvalidLambdas when the implied
// weights go negative.
double qubit_capacity_from_lambdas(double lambda_x, double lambda_y,
                                   double lambda_z, double log_base = 2.0);

struct OptimizationResult {
  double min_entropy{0.0};
  PureState argmin;
  int restarts_used{0};
  bool converged{false};
  std::vector<double> restart_finals;
};

// Multi-start simplex minimization of f -> S(output(|f><f|)) over unit
// vectors, parameterized by 2n-1 reals with the global phase fixed.  Warm
// starts run first; seeded Haar-random starts fill the remaining restarts.
OptimizationResult min_output_entropy(const UnitaryEnsemble& ens, int restarts,
                                      std::uint64_t seed, double tol = 1e-10,
                                      std::span<const PureState> warm_starts = {},
                                      double log_base = 2.0);

// Channel convenience overload: derives eigenbasis warm starts from an
// admissible (or at least unitary-restriction) subgroup when one exists.
OptimizationResult min_output_entropy(const MixedUnitaryChannel& phi, int restarts,
                                      std::uint64_t seed, double tol = 1e-10,
                                      double log_base = 2.0);

struct OracleReport {
  int samples{0};
  int violations{0};
  // worst prefix excess of a sampled spectrum over the reference distribution;
  // values above tol are violations
  double max_slack{-1.0};
  int first_violation_sample{-1};
  double tol{1e-9};
  bool exploratory{false};
};

// Haar-sampled outputs of phi majorized by p.
OracleReport prop2_sampling_oracle(const MixedUnitaryChannel& phi,
                                   const ProbVector& p, int samples,
                                   std::uint64_t seed, bool exploratory = false);

// Haar-sampled outputs of (id_K (x) phi) majorized by q zero-padded.
OracleReport prop4_sampling_oracle(const MixedUnitaryChannel& phi,
                                   const ProbVector& q, int dim_k, int samples,
                                   std::uint64_t seed);

// Haar-sampled outputs of (phi (x) omega) majorized by the descending product
// distribution of p and q.
OracleReport prop5_sampling_oracle(const MixedUnitaryChannel& phi,
                                   const MixedUnitaryChannel& omega,
                                   const ProbVector& p, const ProbVector& q,
                                   int samples, std::uint64_t seed);

struct WeakAdditivityReport {
  double level2_min{0.0};
  double twice_entropy{0.0};
  double gap{0.0};  // level2_min - twice_entropy
  bool product_warm_start_ok{false};
  bool pass{false};
  int restarts_used{0};
  bool converged{false};
};

// Level-2 minimal output entropy of phi (x) phi against twice the coset
// entropy, with product eigenbasis warm starts.
WeakAdditivityReport weak_additivity_check(const MixedUnitaryChannel& phi,
                                           int restarts, std::uint64_t seed,
                                           double log_base = 2.0);

struct HypothesisFlags {
  bool irreducible{false};
  bool restriction_unitary{false};
  bool condition_holds{false};
  bool spanning{false};
  bool all() const {
    return irreducible && restriction_unitary && condition_holds && spanning;
  }
};

struct PipelineOptions {
  int restarts{32};
  std::uint64_t seed{1729};
  double log_base{2.0};
  int covariance_trials{20};
  bool run_optimizer{true};
};

struct CapacityReport {
  int n{0};
  double log_base{2.0};
  HypothesisFlags flags;
  bool theorem_applies{false};
  std::string status;

  bool has_subgroup{false};
  Subgroup chosen_t;
  std::optional<CosetDistribution> p;
  double entropy_p{0.0};
  double capacity{0.0};  // closed form, valid when theorem_applies

  std::optional<OptimizationResult> optimizer;
  double numeric_capacity{0.0};  // log n - numeric minimal entropy
  double cross_check_gap{0.0};
  bool cross_check_ok{false};

  bool covariant{false};
  double covariance_residual{0.0};
  bool has_c1_lower_bound{false};
  double c1_lower_bound{0.0};

  std::vector<SubgroupCandidate> candidates;
};

CapacityReport full_capacity_pipeline(const MixedUnitaryChannel& phi,
                                      const PipelineOptions& opts = {});

}  // namespace covacap
