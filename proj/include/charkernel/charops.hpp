#pragma once

#include <cstdint>
#include <vector>

#include "charkernel/chartab.hpp"
#include "charkernel/numtheory.hpp"
#include "charkernel/perm.hpp"

namespace charkernel {

/// A subgroup H ≤ G together with H as a group and its class fusion into G.
/// Restriction and induction both go through this.
struct Embedding {
  Subgroup subgroup;                   // H inside G
  PermGroup group;                     // H on its own; element i = subgroup.elements()[i]
  std::vector<std::size_t> fusion;     // H-class -> G-class
  std::vector<std::int64_t> local;     // G element -> H element, or -1

  const PermGroup& ambient() const { return subgroup.ambient(); }
  ElemIdx to_ambient(ElemIdx h) const { return subgroup.elements()[h]; }
  std::uint64_t index() const { return ambient().order() / subgroup.order(); }
};

Embedding embed(const Subgroup& H);
/// Embedding of a smaller subgroup given as a subgroup of the same ambient.
/// `outer` must contain `inner`; the result lives over outer.group.
Embedding embed_within(const Embedding& outer, const Subgroup& inner);

/// [χ, ψ] = (1/|G|) Σ_g χ(g) conj(ψ(g)). Throws if the result is not rational.
Rational inner_product(const ClassFunction& chi, const ClassFunction& psi);

ClassFunction restrict(const ClassFunction& chi, const Embedding& H);
/// θ^G(g) = (|G| / (|H| |C|)) Σ_{H-classes D ⊆ C} |D| θ(d), C the class of g.
ClassFunction induce(const ClassFunction& theta, const Embedding& H);
/// Pointwise product.
ClassFunction product(const ClassFunction& chi, const ClassFunction& psi);

/// {g : χ(g) = χ(1)}.
Subgroup kernel(const ClassFunction& chi);

struct Codegree {
  std::uint64_t value = 1;
  Factorization factors;

  std::uint64_t p_part(std::uint64_t p) const;
  unsigned p_exponent(std::uint64_t p) const;
};

/// |G : Ker χ| / χ(1) with its factorization.
Codegree codegree(const ClassFunction& chi);
Codegree codegree(const ClassFunction& chi, const Subgroup& ker);

/// Indices of the rows with p ∤ χ(1).
std::vector<std::size_t> irr_p_prime(const CharacterTable& table, std::uint64_t p);

/// Multiplicities [ψ, χ_i] for every row of the table.
std::vector<Rational> decompose(const ClassFunction& psi, const CharacterTable& table);

bool is_faithful(const ClassFunction& chi);
/// Ker χ ∩ socle = 1.
bool socle_faithfulness(const ClassFunction& chi, const Subgroup& socle);

}  // namespace charkernel
