#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "charkernel/charops.hpp"
#include "charkernel/chartab.hpp"
#include "charkernel/perm.hpp"

namespace charkernel {

/// All normal subgroups of a group, ordered by (order, element set).
/// members.front() is 1 and members.back() is G.
struct NormalLattice {
  PermGroup group;
  std::vector<Subgroup> members;

  std::size_t size() const { return members.size(); }
  std::optional<std::size_t> find(const Subgroup& N) const;
  /// members[i] ≤ members[j]
  bool leq(std::size_t i, std::size_t j) const { return members[i].is_subset_of(members[j]); }
  /// Indices of the minimal nontrivial members.
  std::vector<std::size_t> minimal() const;
  /// Largest member contained in `bound` satisfying pred. pred must hold for
  /// the trivial subgroup and be closed under joins of normal subgroups.
  template <class Pred>
  const Subgroup& largest(const Subgroup& bound, Pred pred) const;
};

/// Every normal subgroup is an intersection of character kernels, so the
/// kernels closed under pairwise intersection give the whole lattice.
NormalLattice normal_subgroups(const CharacterTable& table);

// Series and the properties read off them. Each takes a subgroup H of some
// ambient group and works inside H.
Subgroup derived_subgroup(const Subgroup& H);
std::vector<Subgroup> derived_series(const Subgroup& H);
/// nullopt when the derived series stalls above 1.
std::optional<unsigned> derived_length(const Subgroup& H);
std::vector<Subgroup> lower_central_series(const Subgroup& H);
/// nullopt when H is not nilpotent. The trivial group has class 0.
std::optional<unsigned> nilpotency_class(const Subgroup& H);
bool is_solvable(const Subgroup& H);
bool is_p_group(const Subgroup& H, std::uint64_t p);

/// O^p(H): generated by the p'-elements of H.
Subgroup p_residual(const Subgroup& H, std::uint64_t p);
/// O^{p'}(H): generated by the p-elements of H.
Subgroup p_prime_residual(const Subgroup& H, std::uint64_t p);
/// H has a normal subgroup of order |H|_{p'}.
bool is_p_nilpotent(const Subgroup& H, std::uint64_t p);
bool is_p_solvable(const Subgroup& H, std::uint64_t p);

struct RadicalReport {
  std::uint64_t prime = 0;
  Subgroup sol;
  Subgroup o_p;
  Subgroup o_p_prime;
  Subgroup o_p_prime_p;
  /// O_{p'}(Sol(G)) and O_{p',p}(Sol(G)).
  Subgroup sol_o_p_prime;
  Subgroup sol_o_p_prime_p;
  Subgroup socle;
  Subgroup abelian_part;     // A(G)
  Subgroup nonabelian_part;  // T(G)
  std::vector<Subgroup> minimal_normals;
};

RadicalReport radicals(const NormalLattice& lattice, std::uint64_t p);
Subgroup solvable_radical(const NormalLattice& lattice);
Subgroup socle(const NormalLattice& lattice);

/// Lattice steps of the upper p-series 1 ≤ O_{p'} ≤ O_{p',p} ≤ O_{p',p,p'} ≤ ...
std::vector<Subgroup> upper_p_series(const NormalLattice& lattice, std::uint64_t p);
/// Number of nontrivial p-factors in the upper p-series; nullopt if G is not p-solvable.
std::optional<unsigned> p_length(const NormalLattice& lattice, std::uint64_t p);

/// A subgroup of K of order |K|_{p'}. Throws PreconditionError unless K is p-solvable.
Subgroup hall_p_complement(const Subgroup& K, std::uint64_t p);
/// A maximal subgroup of N's ambient group containing N. Throws if N is the whole group.
Subgroup maximal_overgroup(const Subgroup& N);
/// G_γ for γ a class function of the normal subgroup H (G = H.ambient()).
Subgroup character_stabilizer(const Embedding& H, const ClassFunction& gamma);

template <class Pred>
const Subgroup& NormalLattice::largest(const Subgroup& bound, Pred pred) const {
  const Subgroup* best = nullptr;
  for (const auto& m : members) {
    if (m.is_subset_of(bound) && pred(m) && (!best || best->order() < m.order())) best = &m;
  }
  return *best;
}

}  // namespace charkernel
