#include "covacap/representation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace covacap {

namespace {

constexpr double kPi = 3.14159265358979323846;

cplx unit_phase(double angle) { return cplx(std::cos(angle), std::sin(angle)); }

// Rank of the matrix whose columns are given, via modified Gram-Schmidt with
// column pivoting.  Columns whose remaining norm falls below rel_tol times
// the largest initial norm are treated as dependent.
int column_rank(std::vector<std::vector<cplx>> cols, double rel_tol) {
  const auto norm_of = [](const std::vector<cplx>& v) {
    double s = 0.0;
    for (const cplx& z : v) s += std::norm(z);
    return std::sqrt(s);
  };
  double max_norm = 0.0;
  for (const auto& c : cols) max_norm = std::max(max_norm, norm_of(c));
  if (max_norm == 0.0) return 0;
  const double cutoff = rel_tol * max_norm;
  int rank = 0;
  std::vector<bool> used(cols.size(), false);
  for (std::size_t step = 0; step < cols.size(); ++step) {
    std::size_t pivot = cols.size();
    double best = cutoff;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (used[j]) continue;
      const double nj = norm_of(cols[j]);
      if (nj > best) {
        best = nj;
        pivot = j;
      }
    }
    if (pivot == cols.size()) break;
    used[pivot] = true;
    ++rank;
    const double inv = 1.0 / best;
    for (cplx& z : cols[pivot]) z *= inv;
    for (std::size_t j = 0; j < cols.size(); ++j) {
      if (used[j]) continue;
      cplx dot = 0.0;
      for (std::size_t k = 0; k < cols[j].size(); ++k)
        dot += std::conj(cols[pivot][k]) * cols[j][k];
      for (std::size_t k = 0; k < cols[j].size(); ++k)
        cols[j][k] -= dot * cols[pivot][k];
    }
  }
  return rank;
}

void require_unitary_family(const std::vector<ComplexMatrix>& mats, int dim,
                            const char* what) {
  for (std::size_t i = 0; i < mats.size(); ++i) {
    if (mats[i].rows() != dim || mats[i].cols() != dim)
      throw DimensionMismatch(std::string(what) + " matrix " +
                              std::to_string(i) + " has wrong shape");
    if (!mats[i].is_unitary(1e-10))
      throw InvalidState(std::string(what) + " matrix " + std::to_string(i) +
                         " is not unitary at 1e-10");
  }
}

}  // namespace

void validate_character_set(const FiniteGroup& t, const CharacterSet& chars,
                            int root_exponent) {
  if (chars.t_order != t.order())
    throw InvalidCharacters("character table has " +
                            std::to_string(chars.t_order) +
                            " columns for a group of order " +
                            std::to_string(t.order()));
  if (static_cast<int>(chars.table.size()) != chars.dim)
    throw InvalidCharacters("character table row count mismatch");
  for (int j = 0; j < chars.dim; ++j) {
    const auto& row = chars.table[static_cast<std::size_t>(j)];
    if (static_cast<int>(row.size()) != chars.t_order)
      throw InvalidCharacters("character row " + std::to_string(j) +
                              " has wrong length");
    for (int a = 0; a < chars.t_order; ++a) {
      if (std::abs(std::abs(row[static_cast<std::size_t>(a)]) - 1.0) > 1e-10)
        throw InvalidCharacters("character (" + std::to_string(j) + "," +
                                std::to_string(a) + ") is not unimodular");
      if (root_exponent > 0) {
        cplx p = 1.0;
        for (int k = 0; k < root_exponent; ++k)
          p *= row[static_cast<std::size_t>(a)];
        if (std::abs(p - cplx(1.0)) > 1e-8)
          throw InvalidCharacters("character (" + std::to_string(j) + "," +
                                  std::to_string(a) + ") is not a " +
                                  std::to_string(root_exponent) +
                                  "-th root of unity");
      }
    }
    for (int a = 0; a < chars.t_order; ++a)
      for (int b = 0; b < chars.t_order; ++b) {
        const cplx lhs = row[static_cast<std::size_t>(a)] * row[static_cast<std::size_t>(b)];
        const cplx rhs = row[static_cast<std::size_t>(t.mul(a, b))];
        if (std::abs(lhs - rhs) > 1e-12)
          throw InvalidCharacters(
              "character " + std::to_string(j) + " is not multiplicative at (" +
              std::to_string(a) + "," + std::to_string(b) + ")");
      }
  }
}

void validate_action(const PermutationAction& action) {
  const int n = action.dim;
  const int m = action.group.order();
  if (static_cast<int>(action.maps.size()) != m)
    throw ValidationError("action has " + std::to_string(action.maps.size()) +
                          " maps for a group of order " + std::to_string(m));
  for (int s = 0; s < m; ++s) {
    const auto& p = action.maps[static_cast<std::size_t>(s)];
    if (static_cast<int>(p.size()) != n)
      throw ValidationError("action map " + std::to_string(s) +
                            " has wrong length");
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int j : p) {
      if (j < 0 || j >= n || seen[static_cast<std::size_t>(j)])
        throw ValidationError("action map " + std::to_string(s) +
                              " is not a permutation");
      seen[static_cast<std::size_t>(j)] = true;
    }
  }
  const auto& id_map = action.maps[static_cast<std::size_t>(action.group.identity())];
  for (int j = 0; j < n; ++j)
    if (id_map[static_cast<std::size_t>(j)] != j)
      throw ValidationError("identity element does not act trivially");
  for (int g = 0; g < m; ++g)
    for (int h = 0; h < m; ++h) {
      const auto& pg = action.maps[static_cast<std::size_t>(g)];
      const auto& ph = action.maps[static_cast<std::size_t>(h)];
      const auto& pgh = action.maps[static_cast<std::size_t>(action.group.mul(g, h))];
      for (int j = 0; j < n; ++j)
        if (pgh[static_cast<std::size_t>(j)] != pg[static_cast<std::size_t>(ph[static_cast<std::size_t>(j)])])
          throw ValidationError("action is not a homomorphism at (" +
                                std::to_string(g) + "," + std::to_string(h) +
                                ")");
    }
}

std::vector<ComplexMatrix> build_w(const FiniteGroup& t,
                                   const CharacterSet& chars) {
  validate_character_set(t, chars);
  std::vector<ComplexMatrix> w;
  w.reserve(static_cast<std::size_t>(t.order()));
  for (int a = 0; a < t.order(); ++a) {
    ComplexMatrix m(chars.dim, chars.dim);
    for (int j = 0; j < chars.dim; ++j)
      m(j, j) = chars.table[static_cast<std::size_t>(j)][static_cast<std::size_t>(a)];
    w.push_back(std::move(m));
  }
  return w;
}

std::vector<ComplexMatrix> build_v(const PermutationAction& action) {
  validate_action(action);
  std::vector<ComplexMatrix> v;
  v.reserve(action.maps.size());
  for (const auto& p : action.maps) {
    ComplexMatrix m(action.dim, action.dim);
    for (int j = 0; j < action.dim; ++j) m(p[static_cast<std::size_t>(j)], j) = 1.0;
    v.push_back(std::move(m));
  }
  return v;
}

CocycleTable extract_cocycle(const FiniteGroup& g,
                             const std::vector<ComplexMatrix>& mats) {
  const int m = g.order();
  if (static_cast<int>(mats.size()) != m)
    throw DimensionMismatch("matrix family size differs from group order");
  const int n = mats.front().rows();
  require_unitary_family(mats, n, "representation");
  CocycleTable omega(static_cast<std::size_t>(m),
                     std::vector<cplx>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b) {
      const ComplexMatrix prod = mats[static_cast<std::size_t>(a)] * mats[static_cast<std::size_t>(b)];
      const ComplexMatrix& target = mats[static_cast<std::size_t>(g.mul(a, b))];
      const cplx w = (prod * target.adjoint()).trace() / static_cast<double>(n);
      ComplexMatrix residual = prod - w * target;
      if (residual.frobenius_norm() > 1e-9)
        throw NotProjective("products at pair (" + std::to_string(a) + "," +
                            std::to_string(b) +
                            ") do not close up to a scalar (residual " +
                            std::to_string(residual.frobenius_norm()) + ")");
      if (std::abs(std::abs(w) - 1.0) > 1e-10)
        throw NotProjective("cocycle value at (" + std::to_string(a) + "," +
                            std::to_string(b) + ") is not unimodular");
      omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = w;
    }
  return omega;
}

ProjectiveRep assemble_rep(const FiniteGroup& s, const FiniteGroup& t,
                           const std::vector<ComplexMatrix>& v,
                           const std::vector<ComplexMatrix>& w) {
  if (static_cast<int>(v.size()) != s.order())
    throw DimensionMismatch("V family size differs from |S|");
  if (static_cast<int>(w.size()) != t.order())
    throw DimensionMismatch("W family size differs from |T|");
  const int n = v.front().rows();
  require_unitary_family(v, n, "V");
  require_unitary_family(w, n, "W");
  ProjectiveRep rep;
  rep.group = FiniteGroup::direct_product(s, t);
  rep.dim = n;
  rep.matrices.reserve(static_cast<std::size_t>(rep.group.order()));
  for (int h = 0; h < s.order(); ++h)
    for (int k = 0; k < t.order(); ++k)
      rep.matrices.push_back(v[static_cast<std::size_t>(h)] * w[static_cast<std::size_t>(k)]);
  rep.cocycle = extract_cocycle(rep.group, rep.matrices);
  return rep;
}

bool verify_cocycle_identity(const FiniteGroup& g, const CocycleTable& omega,
                             CocycleIdentityWitness* witness) {
  const int m = g.order();
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      for (int c = 0; c < m; ++c) {
        const cplx lhs = omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] *
                         omega[static_cast<std::size_t>(g.mul(a, b))][static_cast<std::size_t>(c)];
        const cplx rhs = omega[static_cast<std::size_t>(a)][static_cast<std::size_t>(g.mul(b, c))] *
                         omega[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)];
        if (std::abs(lhs - rhs) > 1e-10) {
          if (witness) *witness = {a, b, c, lhs, rhs};
          return false;
        }
      }
  return true;
}

ProjectiveRep gauge_transform(const ProjectiveRep& rep,
                              std::span<const cplx> phases) {
  if (static_cast<int>(phases.size()) != rep.group.order())
    throw DimensionMismatch("gauge phase list size differs from group order");
  for (std::size_t i = 0; i < phases.size(); ++i)
    if (std::abs(std::abs(phases[i]) - 1.0) > 1e-10)
      throw NotUnimodular("gauge phase " + std::to_string(i) +
                          " is not unimodular");
  ProjectiveRep out;
  out.group = rep.group;
  out.dim = rep.dim;
  out.matrices.reserve(rep.matrices.size());
  for (std::size_t i = 0; i < rep.matrices.size(); ++i)
    out.matrices.push_back(phases[i] * rep.matrices[i]);
  const int m = rep.group.order();
  out.cocycle.assign(static_cast<std::size_t>(m),
                     std::vector<cplx>(static_cast<std::size_t>(m)));
  for (int a = 0; a < m; ++a)
    for (int b = 0; b < m; ++b)
      out.cocycle[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] =
          phases[static_cast<std::size_t>(a)] * phases[static_cast<std::size_t>(b)] /
          phases[static_cast<std::size_t>(rep.group.mul(a, b))] *
          rep.cocycle[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
  return out;
}

bool cocycle_roots_check(const CocycleTable& omega, int exponent) {
  if (exponent < 1) throw ValidationError("root exponent must be positive");
  for (const auto& row : omega)
    for (const cplx& w : row) {
      cplx p = 1.0;
      for (int k = 0; k < exponent; ++k) p *= w;
      if (std::abs(p - cplx(1.0)) > 1e-8) return false;
    }
  return true;
}

int commutant_dimension(const ProjectiveRep& rep) {
  const int n = rep.dim;
  const int m = rep.group.order();
  // Unknowns X_{ij}; for each g, equations (X U_g - U_g X)_{ij} = 0.
  // Column (k,l) of the stacked system holds the coefficients of X_{kl}.
  std::vector<std::vector<cplx>> cols(
      static_cast<std::size_t>(n) * n,
      std::vector<cplx>(static_cast<std::size_t>(m) * n * n, cplx(0.0)));
  for (int gi = 0; gi < m; ++gi) {
    const ComplexMatrix& u = rep.matrices[static_cast<std::size_t>(gi)];
    const std::size_t base = static_cast<std::size_t>(gi) * n * n;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        const std::size_t row = base + static_cast<std::size_t>(i) * n + j;
        for (int k = 0; k < n; ++k) {
          // (X U)_{ij} takes X_{ik} with weight U_{kj}
          cols[static_cast<std::size_t>(i) * n + k][row] += u(k, j);
          // (U X)_{ij} takes X_{kj} with weight U_{ik}
          cols[static_cast<std::size_t>(k) * n + j][row] -= u(i, k);
        }
      }
  }
  const int rank = column_rank(std::move(cols), 1e-8);
  return n * n - rank;
}

bool spanning_check(const ProjectiveRep& rep) {
  const int n = rep.dim;
  std::vector<std::vector<cplx>> cols;
  cols.reserve(rep.matrices.size());
  for (const auto& u : rep.matrices) cols.push_back(u.data());
  return column_rank(std::move(cols), 1e-8) == n * n;
}

bool restriction_is_unitary_rep(const ProjectiveRep& rep, const Subgroup& t) {
  make_subgroup(rep.group, t.members);
  for (int a : t.members)
    for (int b : t.members) {
      const ComplexMatrix d =
          rep.matrices[static_cast<std::size_t>(a)] * rep.matrices[static_cast<std::size_t>(b)] -
          rep.matrices[static_cast<std::size_t>(rep.group.mul(a, b))];
      if (d.frobenius_norm() > 1e-10) return false;
    }
  return true;
}

InducedAction induced_action(const ProjectiveRep& rep,
                             const QuotientStructure& q,
                             const ComplexMatrix& eigenbasis) {
  const int n = rep.dim;
  if (eigenbasis.rows() != n || eigenbasis.cols() != n)
    throw DimensionMismatch("eigenbasis has wrong shape");
  // Basis projections P_j from the eigenbasis columns.
  std::vector<ComplexMatrix> proj;
  proj.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    ComplexMatrix p(n, n);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c)
        p(r, c) = eigenbasis(r, j) * std::conj(eigenbasis(c, j));
    proj.push_back(std::move(p));
  }
  InducedAction out;
  out.coset_representatives = q.representatives;
  for (int rep_elt : q.representatives) {
    const ComplexMatrix& u = rep.matrices[static_cast<std::size_t>(rep_elt)];
    std::vector<int> map(static_cast<std::size_t>(n), -1);
    std::vector<bool> taken(static_cast<std::size_t>(n), false);
    for (int j = 0; j < n; ++j) {
      const ComplexMatrix conj = u * proj[static_cast<std::size_t>(j)] * u.adjoint();
      int image = -1;
      for (int i = 0; i < n; ++i) {
        ComplexMatrix d = conj - proj[static_cast<std::size_t>(i)];
        if (d.frobenius_norm() <= 1e-8) {
          image = i;
          break;
        }
      }
      if (image < 0)
        throw NotCovariant(
            "conjugation by coset representative " + std::to_string(rep_elt) +
            " does not permute the eigenbasis projections (index " +
            std::to_string(j) + ")");
      if (taken[static_cast<std::size_t>(image)])
        throw NotCovariant("induced map of representative " +
                           std::to_string(rep_elt) + " is not injective");
      taken[static_cast<std::size_t>(image)] = true;
      map[static_cast<std::size_t>(j)] = image;
    }
    out.maps.push_back(std::move(map));
  }
  return out;
}

GroupChannelSetup custom_setup(const FiniteGroup& s, const FiniteGroup& t,
                               CharacterSet chars, PermutationAction action) {
  if (action.dim != chars.dim)
    throw DimensionMismatch("action dimension differs from character rows");
  GroupChannelSetup setup;
  setup.family = "custom";
  setup.parameter = chars.dim;
  setup.s_group = s;
  setup.t_group = t;
  setup.characters = std::move(chars);
  setup.action = std::move(action);
  setup.rep = assemble_rep(s, t, build_v(setup.action),
                           build_w(t, setup.characters));
  return setup;
}

GroupChannelSetup pauli_setup() {
  FiniteGroup z2 = FiniteGroup::cyclic(2);
  CharacterSet chars;
  chars.dim = 2;
  chars.t_order = 2;
  chars.table = {{1.0, 1.0}, {1.0, -1.0}};
  PermutationAction action;
  action.group = z2;
  action.dim = 2;
  action.maps = {{0, 1}, {1, 0}};
  GroupChannelSetup setup = custom_setup(z2, z2, chars, action);
  setup.family = "pauli";
  setup.parameter = 2;
  return setup;
}

GroupChannelSetup heisenberg_weyl_setup(int n) {
  if (n < 2) throw ValidationError("heisenberg_weyl needs n >= 2");
  FiniteGroup zn = FiniteGroup::cyclic(n);
  CharacterSet chars;
  chars.dim = n;
  chars.t_order = n;
  chars.table.resize(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    auto& row = chars.table[static_cast<std::size_t>(j)];
    row.resize(static_cast<std::size_t>(n));
    for (int a = 0; a < n; ++a)
      row[static_cast<std::size_t>(a)] = unit_phase(2.0 * kPi * j * a / n);
  }
  PermutationAction action;
  action.group = zn;
  action.dim = n;
  action.maps.resize(static_cast<std::size_t>(n));
  for (int s = 0; s < n; ++s) {
    auto& p = action.maps[static_cast<std::size_t>(s)];
    p.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) p[static_cast<std::size_t>(j)] = (j + s) % n;
  }
  GroupChannelSetup setup = custom_setup(zn, zn, chars, action);
  setup.family = "heisenberg_weyl";
  setup.parameter = n;
  return setup;
}

GroupChannelSetup klein_z4_setup() {
  FiniteGroup k4 = FiniteGroup::direct_product(FiniteGroup::cyclic(2),
                                               FiniteGroup::cyclic(2));
  // index -> bits: j = 2*j1 + j0 with j = (j1, j0)
  const auto hi = [](int j) { return j >> 1 & 1; };
  const auto lo = [](int j) { return j & 1; };
  CharacterSet chars;
  chars.dim = 4;
  chars.t_order = 4;
  chars.table.resize(4);
  for (int j = 0; j < 4; ++j) {
    auto& row = chars.table[static_cast<std::size_t>(j)];
    row.resize(4);
    for (int a = 0; a < 4; ++a) {
      const int e = hi(j) * lo(a) + lo(j) * hi(a);
      row[static_cast<std::size_t>(a)] = e % 2 ? -1.0 : 1.0;
    }
  }
  PermutationAction action;
  action.group = k4;
  action.dim = 4;
  action.maps.resize(4);
  for (int s = 0; s < 4; ++s) {
    auto& p = action.maps[static_cast<std::size_t>(s)];
    p.resize(4);
    for (int j = 0; j < 4; ++j) p[static_cast<std::size_t>(j)] = j ^ s;
  }
  GroupChannelSetup setup = custom_setup(k4, k4, chars, action);
  setup.family = "klein_z4";
  setup.parameter = 4;
  return setup;
}

GroupChannelSetup dihedral_z2n_setup(int n) {
  if (n < 1) throw ValidationError("dihedral_z2n needs n >= 1");
  FiniteGroup a = FiniteGroup::direct_product(FiniteGroup::cyclic(n),
                                              FiniteGroup::cyclic(2));
  const int dim = 2 * n;
  // group element (a,b) and basis index share the encoding 2a+b
  CharacterSet chars;
  chars.dim = dim;
  chars.t_order = dim;
  chars.table.resize(static_cast<std::size_t>(dim));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < 2; ++v) {
      auto& row = chars.table[static_cast<std::size_t>(2 * u + v)];
      row.resize(static_cast<std::size_t>(dim));
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < 2; ++d) {
          const double sign = (v * d) % 2 ? -1.0 : 1.0;
          row[static_cast<std::size_t>(2 * c + d)] =
              sign * unit_phase(2.0 * kPi * u * c / n);
        }
    }
  PermutationAction action;
  action.group = a;
  action.dim = dim;
  action.maps.resize(static_cast<std::size_t>(dim));
  for (int c = 0; c < n; ++c)
    for (int d = 0; d < 2; ++d) {
      auto& p = action.maps[static_cast<std::size_t>(2 * c + d)];
      p.resize(static_cast<std::size_t>(dim));
      for (int j = 0; j < n; ++j)
        for (int b = 0; b < 2; ++b)
          p[static_cast<std::size_t>(2 * j + b)] = 2 * ((j + c) % n) + (b ^ d);
    }
  GroupChannelSetup setup = custom_setup(a, a, chars, action);
  setup.family = "dihedral_z2n";
  setup.parameter = n;
  return setup;
}

GroupChannelSetup trivial_setup(int n) {
  if (n < 1) throw ValidationError("trivial setup needs n >= 1");
  FiniteGroup z1 = FiniteGroup::cyclic(1);
  CharacterSet chars;
  chars.dim = n;
  chars.t_order = 1;
  chars.table.assign(static_cast<std::size_t>(n), {cplx(1.0)});
  PermutationAction action;
  action.group = z1;
  action.dim = n;
  std::vector<int> id(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) id[static_cast<std::size_t>(j)] = j;
  action.maps = {id};
  GroupChannelSetup setup = custom_setup(z1, z1, chars, action);
  setup.family = "trivial";
  setup.parameter = n;
  return setup;
}

}  // namespace covacap
