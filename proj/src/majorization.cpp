#include "covacap/majorization.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numeric>
#include <sstream>

#include "covacap/errors.hpp"

namespace covacap {

namespace {

constexpr double kSumTol = 1e-9;
constexpr std::int64_t kPermutationCap = 3628800;  // 10!

void require_valid_doubles(const std::vector<double>& v) {
  double sum = 0.0;
  for (double x : v) {
    if (x < -kSumTol) throw InvalidDistribution("negative probability entry");
    sum += x;
  }
  if (std::abs(sum - 1.0) > kSumTol)
    throw InvalidDistribution("probabilities do not sum to 1");
}

}  // namespace

ProbVector ProbVector::from_doubles(std::vector<double> v) {
  require_valid_doubles(v);
  for (double& x : v)
    if (x < 0.0) x = 0.0;
  ProbVector out;
  out.values = std::move(v);
  out.is_exact = false;
  return out;
}

ProbVector ProbVector::from_rationals(std::vector<Rational> v) {
  Rational sum(0);
  for (const Rational& r : v) {
    if (r < Rational(0)) throw InvalidDistribution("negative probability entry");
    sum = sum + r;
  }
  if (!(sum == Rational(1)))
    throw InvalidDistribution("probabilities do not sum to 1 exactly");
  ProbVector out;
  out.values.reserve(v.size());
  for (const Rational& r : v) out.values.push_back(r.to_double());
  out.exact = std::move(v);
  out.is_exact = true;
  return out;
}

ProbVector ProbVector::from_spectrum(const Spectrum& s) {
  return from_doubles(s.values);
}

ProbVector ProbVector::uniform(std::size_t n) {
  if (n == 0) throw InvalidDistribution("empty distribution");
  std::vector<Rational> v(n, Rational(1, static_cast<long long>(n)));
  return from_rationals(std::move(v));
}

ProbVector descending(const ProbVector& v) {
  ProbVector out = v;
  if (v.is_exact) {
    std::vector<std::size_t> idx(v.exact.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return v.exact[b] < v.exact[a];
    });
    for (std::size_t i = 0; i < idx.size(); ++i) {
      out.exact[i] = v.exact[idx[i]];
      out.values[i] = v.values[idx[i]];
    }
  } else {
    std::stable_sort(out.values.begin(), out.values.end(),
                     [](double a, double b) { return a > b; });
  }
  return out;
}

ProbVector pad(const ProbVector& v, std::size_t zeros) {
  ProbVector out = v;
  out.values.insert(out.values.end(), zeros, 0.0);
  if (out.is_exact) out.exact.insert(out.exact.end(), zeros, Rational(0));
  return out;
}

ProbVector product_distribution(const ProbVector& p, const ProbVector& q) {
  if (p.is_exact && q.is_exact) {
    std::vector<Rational> prod;
    prod.reserve(p.exact.size() * q.exact.size());
    for (const Rational& a : p.exact)
      for (const Rational& b : q.exact) prod.push_back(a * b);
    return descending(ProbVector::from_rationals(std::move(prod)));
  }
  std::vector<double> prod;
  prod.reserve(p.values.size() * q.values.size());
  for (double a : p.values)
    for (double b : q.values) prod.push_back(a * b);
  return descending(ProbVector::from_doubles(std::move(prod)));
}

MajorizationReport majorization_check(const ProbVector& mu, const ProbVector& nu,
                                      double tol) {
  const std::size_t len = std::max(mu.size(), nu.size());
  ProbVector a = descending(pad(mu, len - mu.size()));
  ProbVector b = descending(pad(nu, len - nu.size()));

  MajorizationReport rep;
  rep.holds = true;
  if (a.is_exact && b.is_exact) {
    Rational pa(0), pb(0);
    for (std::size_t k = 0; k < len; ++k) {
      pa = pa + a.exact[k];
      pb = pb + b.exact[k];
      double deficit = pb.to_double() - pa.to_double();
      rep.max_deficit = std::max(rep.max_deficit, deficit);
      if (pa < pb && rep.holds) {
        rep.holds = false;
        rep.first_violation = static_cast<int>(k + 1);
      }
    }
    return rep;
  }
  double pa = 0.0, pb = 0.0;
  rep.max_deficit = -1.0;
  for (std::size_t k = 0; k < len; ++k) {
    pa += a.values[k];
    pb += b.values[k];
    double deficit = pb - pa;
    rep.max_deficit = std::max(rep.max_deficit, deficit);
    if (deficit > tol && rep.holds) {
      rep.holds = false;
      rep.first_violation = static_cast<int>(k + 1);
    }
  }
  return rep;
}

bool majorizes(const ProbVector& mu, const ProbVector& nu, double tol) {
  return majorization_check(mu, nu, tol).holds;
}

CosetDistribution coset_distribution(const std::vector<Rational>& weights,
                                     const QuotientStructure& quotient) {
  const std::size_t order = quotient.coset_of.size();
  if (weights.size() != order)
    throw DimensionMismatch("weight count does not match group order");
  Rational sum(0);
  for (const Rational& w : weights) {
    if (w < Rational(0)) throw InvalidDistribution("negative weight");
    sum = sum + w;
  }
  if (!(sum == Rational(1)))
    throw InvalidDistribution("weights do not sum to 1 exactly");

  const std::size_t blocks = quotient.blocks.size();
  std::vector<Rational> block_sum(blocks, Rational(0));
  for (std::size_t b = 0; b < blocks; ++b)
    for (int g : quotient.blocks[b])
      block_sum[b] = block_sum[b] + weights[static_cast<std::size_t>(g)];

  std::vector<int> order_idx(blocks);
  std::iota(order_idx.begin(), order_idx.end(), 0);
  std::stable_sort(order_idx.begin(), order_idx.end(), [&](int a, int b) {
    return block_sum[static_cast<std::size_t>(b)] < block_sum[static_cast<std::size_t>(a)];
  });

  CosetDistribution cd;
  cd.quotient = quotient;
  cd.coset_order = order_idx;
  cd.sums.reserve(blocks);
  cd.representatives.reserve(blocks);
  cd.per_coset_weights.reserve(blocks);
  for (int b : order_idx) {
    cd.sums.push_back(block_sum[static_cast<std::size_t>(b)]);
    cd.representatives.push_back(quotient.representatives[static_cast<std::size_t>(b)]);
    std::vector<Rational> ws;
    ws.reserve(quotient.blocks[static_cast<std::size_t>(b)].size());
    for (int g : quotient.blocks[static_cast<std::size_t>(b)])
      ws.push_back(weights[static_cast<std::size_t>(g)]);
    cd.per_coset_weights.push_back(std::move(ws));
  }
  cd.p = ProbVector::from_rationals(cd.sums);
  return cd;
}

namespace {

struct CosetStats {
  Rational min_w, max_w;
  int min_pos, max_pos;  // positions inside the coset's member list
};

CosetStats coset_stats(const std::vector<Rational>& ws) {
  CosetStats st{ws[0], ws[0], 0, 0};
  for (std::size_t i = 1; i < ws.size(); ++i) {
    if (ws[i] < st.min_w) {
      st.min_w = ws[i];
      st.min_pos = static_cast<int>(i);
    }
    if (st.max_w < ws[i]) {
      st.max_w = ws[i];
      st.max_pos = static_cast<int>(i);
    }
  }
  return st;
}

}  // namespace

std::string ConditionReport::summary() const {
  std::ostringstream os;
  if (holds) {
    os << "condition holds (" << tie_permutations_tried
       << " tie arrangement(s) tried)";
  } else {
    os << "condition fails: weight " << later_weight.str() << " at element "
       << later_element << " (coset position " << later_coset
       << ") exceeds weight " << earlier_weight.str() << " at element "
       << earlier_element << " (coset position " << earlier_coset << ")";
  }
  return os.str();
}

ConditionReport check_ordering_condition(const CosetDistribution& cd) {
  ConditionReport rep;
  const std::size_t m = cd.coset_order.size();
  if (m == 0) throw InvalidState("empty coset distribution");

  std::vector<CosetStats> stats;
  stats.reserve(m);
  for (const auto& ws : cd.per_coset_weights) stats.push_back(coset_stats(ws));

  auto element_at = [&](std::size_t pos, int member_pos) {
    int block = cd.coset_order[pos];
    return cd.quotient.blocks[static_cast<std::size_t>(block)]
                            [static_cast<std::size_t>(member_pos)];
  };
  auto fail_with = [&](std::size_t earlier, std::size_t later) {
    rep.holds = false;
    rep.earlier_coset = static_cast<int>(earlier);
    rep.later_coset = static_cast<int>(later);
    rep.earlier_element = element_at(earlier, stats[earlier].min_pos);
    rep.later_element = element_at(later, stats[later].max_pos);
    rep.earlier_weight = stats[earlier].min_w;
    rep.later_weight = stats[later].max_w;
  };

  // Tie blocks: maximal runs of equal coset sums in the descending arrangement.
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // [begin, end)
  for (std::size_t i = 0; i < m;) {
    std::size_t j = i + 1;
    while (j < m && cd.sums[j] == cd.sums[i]) ++j;
    runs.emplace_back(i, j);
    i = j;
  }

  // Between distinct-sum runs every weight of the later run must sit at or
  // below every weight of the earlier run, independent of arrangement.
  for (std::size_t r = 0; r + 1 < runs.size(); ++r) {
    std::size_t min_holder = runs[r].first;
    for (std::size_t i = runs[r].first; i < runs[r].second; ++i)
      if (stats[i].min_w < stats[min_holder].min_w) min_holder = i;
    std::size_t max_holder = runs[r + 1].first;
    for (std::size_t i = runs[r + 1].first; i < runs[r + 1].second; ++i)
      if (stats[max_holder].max_w < stats[i].max_w) max_holder = i;
    if (stats[min_holder].min_w < stats[max_holder].max_w) {
      fail_with(min_holder, max_holder);
      return rep;
    }
  }

  // Within a tie block the cosets must admit a chain arrangement; the sums are
  // equal so any permutation keeps the distribution descending.  Permutations
  // are tried exhaustively (blocks are small; hard cap guards the factorial).
  std::vector<int> arrangement;
  arrangement.reserve(m);
  for (const auto& run : runs) {
    const std::size_t b = run.first, e = run.second;
    const std::size_t len = e - b;
    if (len == 1) {
      arrangement.push_back(static_cast<int>(b));
      continue;
    }
    std::vector<int> perm(len);
    std::iota(perm.begin(), perm.end(), static_cast<int>(b));
    bool found = false;
    do {
      ++rep.tie_permutations_tried;
      if (rep.tie_permutations_tried > kPermutationCap)
        throw InvalidState("tie block too large for exhaustive arrangement search");
      bool chain = true;
      for (std::size_t i = 0; i + 1 < len; ++i) {
        std::size_t prev = static_cast<std::size_t>(perm[i]);
        std::size_t next = static_cast<std::size_t>(perm[i + 1]);
        if (stats[prev].min_w < stats[next].max_w) {
          chain = false;
          break;
        }
      }
      if (chain) {
        found = true;
        break;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found) {
      // report against the canonical in-block order
      for (std::size_t i = b; i + 1 < e; ++i) {
        if (stats[i].min_w < stats[i + 1].max_w) {
          fail_with(i, i + 1);
          return rep;
        }
      }
      throw InvalidState("arrangement search failed without a witness");
    }
    arrangement.insert(arrangement.end(), perm.begin(), perm.end());
  }

  rep.holds = true;
  rep.chosen_order.reserve(m);
  for (int pos : arrangement)
    rep.chosen_order.push_back(cd.coset_order[static_cast<std::size_t>(pos)]);

  // defensive re-verification of the full chain
  for (std::size_t i = 0; i + 1 < m; ++i) {
    std::size_t prev = static_cast<std::size_t>(arrangement[i]);
    std::size_t next = static_cast<std::size_t>(arrangement[i + 1]);
    if (stats[prev].min_w < stats[next].max_w)
      throw InvalidState("chain verification failed after arrangement search");
  }
  return rep;
}

std::vector<SubgroupCandidate> scan_subgroups(const ProjectiveRep& rep,
                                              const std::vector<Rational>& weights) {
  if (commutant_dimension(rep) != 1)
    throw NotIrreducible("subgroup search requires an irreducible representation");
  std::vector<Subgroup> subs =
      enumerate_normal_abelian_subgroups(rep.group, rep.dim);
  std::vector<SubgroupCandidate> out;
  out.reserve(subs.size());
  for (const Subgroup& t : subs) {
    SubgroupCandidate cand;
    cand.t = t;
    cand.restriction_unitary = restriction_is_unitary_rep(rep, t);
    cand.dist = coset_distribution(weights, quotient(rep.group, t));
    cand.condition = check_ordering_condition(cand.dist);
    cand.admissible = cand.restriction_unitary && cand.condition.holds;
    out.push_back(std::move(cand));
  }
  return out;
}

std::optional<AdmissibleSubgroup> find_admissible_subgroup(
    const ProjectiveRep& rep, const std::vector<Rational>& weights) {
  for (SubgroupCandidate& cand : scan_subgroups(rep, weights)) {
    if (cand.admissible)
      return AdmissibleSubgroup{std::move(cand.t), std::move(cand.dist),
                                std::move(cand.condition)};
  }
  return std::nullopt;
}

}  // namespace covacap
