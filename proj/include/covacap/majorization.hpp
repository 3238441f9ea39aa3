#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "covacap/finite_group.hpp"
#include "covacap/rational.hpp"
#include "covacap/representation.hpp"

namespace covacap {

// Probability vector, either exact (rationals) or floating point.  Exact
// vectors keep a synchronized double view for entropy evaluation.
struct ProbVector {
  std::vector<double> values;
  std::vector<Rational> exact;
  bool is_exact{false};

  std::size_t size() const { return values.size(); }

  static ProbVector from_doubles(std::vector<double> v);
  static ProbVector from_rationals(std::vector<Rational> v);
  static ProbVector from_spectrum(const Spectrum& s);
  static ProbVector uniform(std::size_t n);
};

ProbVector descending(const ProbVector& v);

// Appends the given number of zero entries.
ProbVector pad(const ProbVector& v, std::size_t zeros);

// All pairwise products p_k * q_m, sorted descending.
ProbVector product_distribution(const ProbVector& p, const ProbVector& q);

struct MajorizationReport {
  bool holds{false};
  // first prefix length whose partial sum violates, -1 when none
  int first_violation{-1};
  // largest prefix excess of the majorized candidate over the majorant;
  // positive values beyond tolerance are violations
  double max_deficit{0.0};
};

// Does mu majorize nu (nu < mu in majorization order)?  Vectors are sorted
// descending and zero-padded to a common length internally.  Comparisons are
// exact when both vectors are exact, otherwise tolerance applies per prefix.
MajorizationReport majorization_check(const ProbVector& mu, const ProbVector& nu,
                                      double tol = 1e-9);
bool majorizes(const ProbVector& mu, const ProbVector& nu, double tol = 1e-9);

// Weights of a group distribution regrouped by the cosets of a quotient.
// Cosets are sorted by descending exact sum; ties keep ascending block order.
struct CosetDistribution {
  QuotientStructure quotient;
  // positions are indices into quotient.blocks, one per coset, giving the
  // descending arrangement
  std::vector<int> coset_order;
  std::vector<Rational> sums;                          // aligned with coset_order
  std::vector<int> representatives;                    // aligned with coset_order
  std::vector<std::vector<Rational>> per_coset_weights;  // aligned with coset_order
  ProbVector p;                                        // exact view of sums
};

CosetDistribution coset_distribution(const std::vector<Rational>& weights,
                                     const QuotientStructure& quotient);

// Decision for the coset ordering requirement: some descending arrangement of
// the cosets must put every weight of a later coset at or below every weight
// of an earlier coset.
struct ConditionReport {
  bool holds{false};
  std::int64_t tie_permutations_tried{0};
  // arrangement that witnesses success (indices into quotient.blocks)
  std::vector<int> chosen_order;
  // violation witness against the canonical arrangement when holds is false:
  // coset positions j > k with a weight in coset j exceeding one in coset k
  int later_coset{-1};
  int earlier_coset{-1};
  int later_element{-1};
  int earlier_element{-1};
  Rational later_weight{0};
  Rational earlier_weight{0};

  std::string summary() const;
};

ConditionReport check_ordering_condition(const CosetDistribution& cd);

struct SubgroupCandidate {
  Subgroup t;
  bool restriction_unitary{false};
  CosetDistribution dist;
  ConditionReport condition;
  bool admissible{false};
};

// All normal abelian subgroups of index dim, each with its regrouped
// distribution and condition verdict.  Requires an irreducible rep.
std::vector<SubgroupCandidate> scan_subgroups(const ProjectiveRep& rep,
                                              const std::vector<Rational>& weights);

struct AdmissibleSubgroup {
  Subgroup t;
  CosetDistribution dist;
  ConditionReport condition;
};

// First admissible candidate in deterministic scan order, if any.
std::optional<AdmissibleSubgroup> find_admissible_subgroup(
    const ProjectiveRep& rep, const std::vector<Rational>& weights);

}  // namespace covacap
