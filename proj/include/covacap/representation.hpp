#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "covacap/finite_group.hpp"
#include "covacap/numerics.hpp"

namespace covacap {

// One character of T per basis index: table[j][t] is the value of the j-th
// character at element t.  Validation checks unimodularity (1e-10),
// multiplicativity over the Cayley table of T (1e-12) and, when
// root_exponent > 0, that every value is a root_exponent-th root of unity.
struct CharacterSet {
  int dim = 0;      // number of basis indices (rows)
  int t_order = 0;  // |T| (columns)
  std::vector<std::vector<cplx>> table;
};

void validate_character_set(const FiniteGroup& t, const CharacterSet& chars,
                            int root_exponent = 0);

// Action of a finite group on basis indices {0..dim-1}: maps[s] is the image
// permutation of element s.  Validation checks the identity maps to the
// identity permutation and maps[g*h] = maps[g] o maps[h].
struct PermutationAction {
  FiniteGroup group;
  int dim = 0;
  std::vector<std::vector<int>> maps;
};

void validate_action(const PermutationAction& action);

using CocycleTable = std::vector<std::vector<cplx>>;

// Projective unitary representation: matrices[g] unitary (1e-10), with
// U_g U_h = cocycle[g][h] * U_{gh}.
struct ProjectiveRep {
  FiniteGroup group;
  int dim = 0;
  std::vector<ComplexMatrix> matrices;
  CocycleTable cocycle;
};

// Diagonal character matrices W_t = diag_j(table[j][t]).
std::vector<ComplexMatrix> build_w(const FiniteGroup& t,
                                   const CharacterSet& chars);

// Permutation matrices V_s |j> = |maps[s](j)>.
std::vector<ComplexMatrix> build_v(const PermutationAction& action);

// U_{(h,k)} = V_h W_k on the product group S x T with index h*|T|+k.
// Extracts and validates the cocycle; throws NotProjective with the first
// offending pair if the products do not close up to scalars (1e-9).
ProjectiveRep assemble_rep(const FiniteGroup& s, const FiniteGroup& t,
                           const std::vector<ComplexMatrix>& v,
                           const std::vector<ComplexMatrix>& w);

// As above but for an arbitrary matrix family indexed by a group.
CocycleTable extract_cocycle(const FiniteGroup& g,
                             const std::vector<ComplexMatrix>& mats);

struct CocycleIdentityWitness {
  int g = 0, h = 0, r = 0;
  cplx lhs, rhs;
};

// Checks omega(g,h) omega(gh,r) = omega(g,hr) omega(h,r) for all triples at
// tolerance 1e-10.
bool verify_cocycle_identity(const FiniteGroup& g, const CocycleTable& omega,
                             CocycleIdentityWitness* witness = nullptr);

// V_g = c(g) U_g; |c(g)| must be 1 within 1e-10 (NotUnimodular otherwise).
ProjectiveRep gauge_transform(const ProjectiveRep& rep,
                              std::span<const cplx> phases);

// True when every cocycle value satisfies omega^exponent = 1 within 1e-8.
bool cocycle_roots_check(const CocycleTable& omega, int exponent);

// Dimension of {X : X U_g = U_g X for all g}: dim^2 minus the rank of the
// stacked commutation system, with rank decided at relative singular-value
// threshold 1e-8.
int commutant_dimension(const ProjectiveRep& rep);

// True when {U_g} spans the full matrix algebra (rank of the vectorized
// family equals dim^2 at the same threshold).
bool spanning_check(const ProjectiveRep& rep);

// True when the restriction to T closes without cocycle phases:
// U_t U_s = U_{ts} within Frobenius 1e-10 for all t, s in T.
bool restriction_is_unitary_rep(const ProjectiveRep& rep, const Subgroup& t);

// Permutation of T-eigenbasis projections induced by coset representatives:
// maps[b] sends basis index j to the index of U_{rep_b} P_j U_{rep_b}^dagger.
// Throws NotCovariant when some conjugated projection is not a basis
// projection within 1e-8 (degenerate characters break this).
struct InducedAction {
  std::vector<int> coset_representatives;
  std::vector<std::vector<int>> maps;
};

InducedAction induced_action(const ProjectiveRep& rep,
                             const QuotientStructure& q,
                             const ComplexMatrix& eigenbasis);

// A fully assembled construction: acting group S, diagonal group T, their
// tables, and the representation of S x T.
struct GroupChannelSetup {
  std::string family;
  int parameter = 0;
  FiniteGroup s_group;
  FiniteGroup t_group;
  CharacterSet characters;
  PermutationAction action;
  ProjectiveRep rep;  // representation of s_group x t_group
};

// Qubit family: S = T = Z2, characters (-1)^{jt}, swap action.  Matrices are
// {I, Z, X, XZ} in index order.
GroupChannelSetup pauli_setup();

// Cyclic family on dimension n: shift action, characters omega_n^{jt}.
GroupChannelSetup heisenberg_weyl_setup(int n);

// Dimension-4 family with S = T = Z2 x Z2, regular action by XOR on the
// index set, and the Klein character table chi_j(t) = (-1)^{j0*t1 + j1*t0}.
GroupChannelSetup klein_z4_setup();

// Dimension-2n family with S = T = Z_n x Z2, index (a,b) -> 2a+b, regular
// action (generators: +2 shift and even/odd pair swap), characters
// chi_{2u+v}(a,b) = exp(2 pi i u a / n) * (-1)^{v b}.
GroupChannelSetup dihedral_z2n_setup(int n);

// Control construction: trivial characters and trivial action, so every
// matrix is the identity.  Used to exercise the reducible branch.
GroupChannelSetup trivial_setup(int n);

// Custom construction from explicit tables.
GroupChannelSetup custom_setup(const FiniteGroup& s, const FiniteGroup& t,
                               CharacterSet chars, PermutationAction action);

}  // namespace covacap
