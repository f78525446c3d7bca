#include "charkernel/charops.hpp"

#include "charkernel/errors.hpp"

namespace charkernel {

namespace {

void require_same_group(const ClassFunction& a, const ClassFunction& b) {
  if (!a.group().same_as(b.group())) throw StructuralError("class functions on different groups");
}

}  // namespace

Embedding embed(const Subgroup& H) {
  const PermGroup& G = H.ambient();
  PermGroup Hg = H.as_group();
  std::vector<std::int64_t> local(G.order(), -1);
  for (std::size_t i = 0; i < H.elements().size(); ++i) local[H.elements()[i]] = static_cast<std::int64_t>(i);
  std::vector<std::size_t> fusion;
  for (const auto& cls : Hg.classes()) fusion.push_back(G.class_of(H.elements()[cls.representative]));
  return Embedding{H, std::move(Hg), std::move(fusion), std::move(local)};
}

Embedding embed_within(const Embedding& outer, const Subgroup& inner) {
  if (!inner.is_subset_of(outer.subgroup)) throw StructuralError("embed_within: not a subgroup");
  std::vector<ElemIdx> members;
  for (ElemIdx g : inner.elements()) members.push_back(static_cast<ElemIdx>(outer.local[g]));
  return embed(Subgroup(outer.group, std::move(members), true));
}

Rational inner_product(const ClassFunction& chi, const ClassFunction& psi) {
  require_same_group(chi, psi);
  const PermGroup& G = chi.group();
  const auto& classes = G.classes();
  Cyclotomic acc;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (chi[k].is_zero() || psi[k].is_zero()) continue;
    acc += chi[k] * psi[k].conjugate() * Rational(static_cast<long>(classes[k].size()));
  }
  auto q = acc.as_rational();
  if (!q) throw StructuralError("inner product is not rational");
  return *q / Rational(static_cast<unsigned long>(G.order()));
}

ClassFunction restrict(const ClassFunction& chi, const Embedding& H) {
  if (!chi.group().same_as(H.ambient())) throw StructuralError("restrict: character of another group");
  std::vector<Cyclotomic> v;
  v.reserve(H.fusion.size());
  for (std::size_t c : H.fusion) v.push_back(chi[c]);
  return ClassFunction(H.group, std::move(v));
}

ClassFunction induce(const ClassFunction& theta, const Embedding& H) {
  if (!theta.group().same_as(H.group)) throw StructuralError("induce: class function not on H");
  const PermGroup& G = H.ambient();
  const auto& gcls = G.classes();
  const auto& hcls = H.group.classes();
  std::vector<Cyclotomic> v(gcls.size(), Cyclotomic(0));
  for (std::size_t d = 0; d < hcls.size(); ++d) {
    v[H.fusion[d]] += theta[d] * Rational(static_cast<long>(hcls[d].size()));
  }
  for (std::size_t c = 0; c < gcls.size(); ++c) {
    if (v[c].is_zero()) continue;
    Rational scale(static_cast<unsigned long>(G.order()),
                   static_cast<unsigned long>(H.group.order() * gcls[c].size()));
    scale.canonicalize();
    v[c] *= scale;
  }
  return ClassFunction(G, std::move(v));
}

ClassFunction product(const ClassFunction& chi, const ClassFunction& psi) {
  require_same_group(chi, psi);
  std::vector<Cyclotomic> v;
  v.reserve(chi.values().size());
  for (std::size_t k = 0; k < chi.values().size(); ++k) v.push_back(chi[k] * psi[k]);
  return ClassFunction(chi.group(), std::move(v));
}

Subgroup kernel(const ClassFunction& chi) {
  const PermGroup& G = chi.group();
  const auto& classes = G.classes();
  std::vector<ElemIdx> members;
  for (std::size_t k = 0; k < classes.size(); ++k) {
    if (chi[k] == chi[0]) members.insert(members.end(), classes[k].members.begin(), classes[k].members.end());
  }
  return Subgroup(G, std::move(members), true);
}

std::uint64_t Codegree::p_part(std::uint64_t p) const { return charkernel::p_part(value, p); }
unsigned Codegree::p_exponent(std::uint64_t p) const { return p_valuation(value, p); }

Codegree codegree(const ClassFunction& chi, const Subgroup& ker) {
  const std::uint64_t index = chi.group().order() / ker.order();
  const std::uint64_t deg = chi.degree().get_ui();
  if (deg == 0 || index % deg != 0) throw StructuralError("codegree is not an integer");
  Codegree c;
  c.value = index / deg;
  c.factors = factorize(c.value);
  return c;
}

Codegree codegree(const ClassFunction& chi) { return codegree(chi, kernel(chi)); }

std::vector<std::size_t> irr_p_prime(const CharacterTable& table, std::uint64_t p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < table.size(); ++i) {
    if (table.degree(i) % p != 0) out.push_back(i);
  }
  return out;
}

std::vector<Rational> decompose(const ClassFunction& psi, const CharacterTable& table) {
  std::vector<Rational> out;
  for (const auto& chi : table.irreducibles) out.push_back(inner_product(psi, chi));
  return out;
}

bool is_faithful(const ClassFunction& chi) { return kernel(chi).is_trivial(); }

bool socle_faithfulness(const ClassFunction& chi, const Subgroup& socle) {
  return kernel(chi).intersect(socle).is_trivial();
}

}  // namespace charkernel
