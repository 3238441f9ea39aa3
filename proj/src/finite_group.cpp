#include "covacap/finite_group.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>

namespace covacap {

namespace {

std::string default_label(int i) { return std::to_string(i); }

}  // namespace

FiniteGroup FiniteGroup::from_cayley_table(std::vector<std::vector<int>> table,
                                           std::vector<std::string> labels) {
  const int n = static_cast<int>(table.size());
  if (n == 0) throw NotAGroup("empty Cayley table");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(table[static_cast<std::size_t>(i)].size()) != n)
      throw NotAGroup("Cayley table row " + std::to_string(i) +
                      " has wrong length");
    for (int j = 0; j < n; ++j) {
      const int v = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v < 0 || v >= n)
        throw NotAGroup("Cayley entry (" + std::to_string(i) + "," +
                        std::to_string(j) + ") = " + std::to_string(v) +
                        " out of range");
    }
  }
  // Latin square: every row and column is a permutation.
  for (int i = 0; i < n; ++i) {
    std::vector<bool> row(static_cast<std::size_t>(n), false);
    std::vector<bool> col(static_cast<std::size_t>(n), false);
    for (int j = 0; j < n; ++j) {
      const int r = table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      const int c = table[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      if (row[static_cast<std::size_t>(r)])
        throw NotAGroup("row " + std::to_string(i) + " repeats element " +
                        std::to_string(r) + ": not left-cancellative");
      if (col[static_cast<std::size_t>(c)])
        throw NotAGroup("column " + std::to_string(i) + " repeats element " +
                        std::to_string(c) + ": not right-cancellative");
      row[static_cast<std::size_t>(r)] = true;
      col[static_cast<std::size_t>(c)] = true;
    }
  }
  int identity = -1;
  for (int e = 0; e < n; ++e) {
    bool ok = true;
    for (int g = 0; g < n && ok; ++g)
      ok = table[static_cast<std::size_t>(e)][static_cast<std::size_t>(g)] == g &&
           table[static_cast<std::size_t>(g)][static_cast<std::size_t>(e)] == g;
    if (ok) {
      identity = e;
      break;
    }
  }
  if (identity < 0) throw NotAGroup("no two-sided identity element");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        const int ab_c = table[static_cast<std::size_t>(table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)])][static_cast<std::size_t>(c)];
        const int a_bc = table[static_cast<std::size_t>(a)][static_cast<std::size_t>(table[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)])];
        if (ab_c != a_bc)
          throw NotAGroup("associativity fails at (" + std::to_string(a) +
                          "," + std::to_string(b) + "," + std::to_string(c) +
                          "): (ab)c=" + std::to_string(ab_c) +
                          " vs a(bc)=" + std::to_string(a_bc));
      }
  std::vector<int> inverse(static_cast<std::size_t>(n), -1);
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h)
      if (table[static_cast<std::size_t>(g)][static_cast<std::size_t>(h)] == identity &&
          table[static_cast<std::size_t>(h)][static_cast<std::size_t>(g)] == identity) {
        inverse[static_cast<std::size_t>(g)] = h;
        break;
      }
    if (inverse[static_cast<std::size_t>(g)] < 0)
      throw NotAGroup("element " + std::to_string(g) +
                      " has no two-sided inverse");
  }
  if (labels.empty()) {
    labels.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) labels.push_back(default_label(i));
  } else if (static_cast<int>(labels.size()) != n) {
    throw NotAGroup("label list length does not match group order");
  }
  FiniteGroup g;
  g.table_ = std::move(table);
  g.inverse_ = std::move(inverse);
  g.labels_ = std::move(labels);
  g.identity_ = identity;
  return g;
}

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n < 1) throw NotAGroup("cyclic group order must be positive");
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n),
                                  std::vector<int>(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = (a + b) % n;
  return from_cayley_table(std::move(t));
}

FiniteGroup FiniteGroup::direct_product(const FiniteGroup& a,
                                        const FiniteGroup& b) {
  const int na = a.order();
  const int nb = b.order();
  const int n = na * nb;
  std::vector<std::vector<int>> t(static_cast<std::size_t>(n),
                                  std::vector<int>(static_cast<std::size_t>(n)));
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      for (int a2 = 0; a2 < na; ++a2)
        for (int b2 = 0; b2 < nb; ++b2)
          t[static_cast<std::size_t>(a1 * nb + b1)][static_cast<std::size_t>(a2 * nb + b2)] =
              a.mul(a1, a2) * nb + b.mul(b1, b2);
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(n));
  for (int a1 = 0; a1 < na; ++a1)
    for (int b1 = 0; b1 < nb; ++b1)
      labels.push_back("(" + a.label(a1) + "," + b.label(b1) + ")");
  return from_cayley_table(std::move(t), std::move(labels));
}

FiniteGroup FiniteGroup::dihedral(int n) {
  if (n < 1) throw NotAGroup("dihedral parameter must be positive");
  const int order = 2 * n;
  // index(x^a y^b) = 2a + b; (x^a y^b)(x^c y^d) = x^{a + (-1)^b c} y^{b+d}
  std::vector<std::vector<int>> t(static_cast<std::size_t>(order),
                                  std::vector<int>(static_cast<std::size_t>(order)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < 2; ++d) {
          const int e = b ? ((a - c) % n + n) % n : (a + c) % n;
          t[static_cast<std::size_t>(2 * a + b)][static_cast<std::size_t>(2 * c + d)] = 2 * e + (b ^ d);
        }
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(order));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < 2; ++b) {
      std::string s;
      if (a == 0 && b == 0) s = "e";
      if (a > 0) s += "x" + (a > 1 ? "^" + std::to_string(a) : "");
      if (b) s += "y";
      labels.push_back(s);
    }
  return from_cayley_table(std::move(t), std::move(labels));
}

bool Subgroup::contains(int g) const {
  return std::binary_search(members.begin(), members.end(), g);
}

Subgroup make_subgroup(const FiniteGroup& g, std::vector<int> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  if (members.empty()) throw NotASubgroup("empty member list");
  for (int m : members)
    if (m < 0 || m >= g.order())
      throw NotASubgroup("member " + std::to_string(m) + " out of range");
  Subgroup t{members};
  if (!t.contains(g.identity()))
    throw NotASubgroup("member list does not contain the identity");
  for (int a : members) {
    if (!t.contains(g.inverse(a)))
      throw NotASubgroup("member " + std::to_string(a) +
                         " lacks its inverse in the list");
    for (int b : members)
      if (!t.contains(g.mul(a, b)))
        throw NotASubgroup("members " + std::to_string(a) + "," +
                           std::to_string(b) + " produce " +
                           std::to_string(g.mul(a, b)) + " outside the list");
  }
  return t;
}

NormalAbelianReport check_normal_abelian(const FiniteGroup& g,
                                         const Subgroup& t) {
  NormalAbelianReport r;
  try {
    make_subgroup(g, t.members);
  } catch (const NotASubgroup&) {
    return r;
  }
  r.is_subgroup = true;
  r.normal = true;
  for (int x = 0; x < g.order() && r.normal; ++x)
    for (int m : t.members) {
      const int conj = g.mul(g.mul(x, m), g.inverse(x));
      if (!t.contains(conj)) {
        r.normal = false;
        r.normality_witness = {x, m};
        break;
      }
    }
  r.abelian = true;
  for (int a : t.members) {
    for (int b : t.members)
      if (g.mul(a, b) != g.mul(b, a)) {
        r.abelian = false;
        r.commutation_witness = {a, b};
        break;
      }
    if (!r.abelian) break;
  }
  return r;
}

bool is_normal_abelian(const FiniteGroup& g, const Subgroup& t) {
  return check_normal_abelian(g, t).ok();
}

QuotientStructure quotient(const FiniteGroup& g, const Subgroup& t) {
  make_subgroup(g, t.members);  // validate, throws NotASubgroup
  QuotientStructure q;
  q.coset_of.assign(static_cast<std::size_t>(g.order()), -1);
  for (int rep = 0; rep < g.order(); ++rep) {
    if (q.coset_of[static_cast<std::size_t>(rep)] >= 0) continue;
    const int block = static_cast<int>(q.blocks.size());
    std::vector<int> members;
    members.reserve(t.members.size());
    for (int m : t.members) {
      const int e = g.mul(rep, m);
      members.push_back(e);
      q.coset_of[static_cast<std::size_t>(e)] = block;
    }
    std::sort(members.begin(), members.end());
    q.blocks.push_back(std::move(members));
    q.representatives.push_back(rep);
  }
  return q;
}

std::vector<int> subgroup_closure(const FiniteGroup& g,
                                  const std::vector<int>& generators) {
  std::vector<bool> in(static_cast<std::size_t>(g.order()), false);
  std::vector<int> worklist;
  const auto add = [&](int e) {
    if (!in[static_cast<std::size_t>(e)]) {
      in[static_cast<std::size_t>(e)] = true;
      worklist.push_back(e);
    }
  };
  add(g.identity());
  for (int x : generators) {
    if (x < 0 || x >= g.order())
      throw NotASubgroup("generator " + std::to_string(x) + " out of range");
    add(x);
  }
  std::vector<int> members;
  while (!worklist.empty()) {
    const int x = worklist.back();
    worklist.pop_back();
    members.push_back(x);
    for (std::size_t i = 0; i < in.size(); ++i) {
      if (!in[i]) continue;
      add(g.mul(x, static_cast<int>(i)));
      add(g.mul(static_cast<int>(i), x));
    }
  }
  std::sort(members.begin(), members.end());
  return members;
}

std::vector<Subgroup> enumerate_normal_abelian_subgroups(const FiniteGroup& g,
                                                         int index) {
  const int n = g.order();
  if (index < 1 || n % index != 0)
    throw ValidationError("subgroup index " + std::to_string(index) +
                          " does not divide group order " + std::to_string(n));
  if (n > 64)
    throw ValidationError("subgroup enumeration supports order <= 64");
  const int target = n / index;

  using Mask = std::uint64_t;
  const auto to_mask = [](const std::vector<int>& v) {
    Mask m = 0;
    for (int e : v) m |= Mask{1} << e;
    return m;
  };
  const auto closure_mask = [&](Mask seed) {
    std::vector<int> gens;
    for (int e = 0; e < n; ++e)
      if (seed >> e & 1) gens.push_back(e);
    return to_mask(subgroup_closure(g, gens));
  };

  // Walk the subgroup lattice bottom-up, adjoining one element at a time.
  // Every subgroup of order <= target is reached through a chain of
  // one-generator extensions, so pruning anything larger than target is safe.
  std::set<Mask> seen;
  std::vector<Mask> queue;
  const Mask trivial = Mask{1} << g.identity();
  seen.insert(trivial);
  queue.push_back(trivial);
  std::vector<Mask> hits;
  while (!queue.empty()) {
    const Mask h = queue.back();
    queue.pop_back();
    const int size = __builtin_popcountll(h);
    if (size == target) {
      hits.push_back(h);
      continue;  // any extension would exceed the target order
    }
    for (int e = 0; e < n; ++e) {
      if (h >> e & 1) continue;
      const Mask j = closure_mask(h | (Mask{1} << e));
      if (__builtin_popcountll(j) > target) continue;
      if (seen.insert(j).second) queue.push_back(j);
    }
  }

  std::vector<Subgroup> out;
  for (Mask m : hits) {
    std::vector<int> members;
    for (int e = 0; e < n; ++e)
      if (m >> e & 1) members.push_back(e);
    Subgroup t{members};
    if (is_normal_abelian(g, t)) out.push_back(std::move(t));
  }
  std::sort(out.begin(), out.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.members < b.members;
  });
  return out;
}

}  // namespace covacap
