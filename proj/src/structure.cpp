#include "charkernel/structure.hpp"

#include <algorithm>
#include <set>

#include "charkernel/errors.hpp"
#include "charkernel/numtheory.hpp"

namespace charkernel {

namespace {

bool coprime_to(std::uint64_t n, std::uint64_t p) { return n % p != 0; }

// Subgroup generated by the elements of H accepted by keep.
template <class Keep>
Subgroup generated_by(const Subgroup& H, Keep keep) {
  Subgroup S = H.ambient().trivial();
  for (ElemIdx x : H.elements()) {
    if (!S.contains(x) && keep(x)) {
      const ElemIdx extra[] = {x};
      S = extend_subgroup(S, extra);
    }
  }
  return S;
}

bool order_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

}  // namespace

// ---------------------------------------------------------------------------
// Lattice

std::optional<std::size_t> NormalLattice::find(const Subgroup& N) const {
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (members[i] == N) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> NormalLattice::minimal() const {
  std::vector<std::size_t> out;
  for (std::size_t i = 1; i < members.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 1; j < members.size() && minimal; ++j) {
      if (j != i && members[j].is_proper_subset_of(members[i])) minimal = false;
    }
    if (minimal) out.push_back(i);
  }
  return out;
}

NormalLattice normal_subgroups(const CharacterTable& table) {
  const PermGroup& G = table.group;
  std::set<std::vector<std::uint64_t>> seen;
  std::vector<Subgroup> members;
  auto add = [&](Subgroup S) {
    if (seen.insert(S.bits()).second) members.push_back(std::move(S));
  };
  for (const auto& chi : table.irreducibles) add(kernel(chi));
  add(G.trivial());
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) add(members[i].intersect(members[j]));
  }
  std::sort(members.begin(), members.end(), order_less);
  return NormalLattice{G, std::move(members)};
}

// ---------------------------------------------------------------------------
// Series

Subgroup derived_subgroup(const Subgroup& H) {
  const PermGroup& G = H.ambient();
  const auto& gens = H.generators();
  std::vector<ElemIdx> comms;
  for (std::size_t i = 0; i < gens.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      ElemIdx c = G.commutator(gens[i], gens[j]);
      if (c != PermGroup::identity()) comms.push_back(c);
    }
  }
  return normal_closure(H, comms);
}

std::vector<Subgroup> derived_series(const Subgroup& H) {
  std::vector<Subgroup> series{H};
  while (!series.back().is_trivial()) {
    Subgroup next = derived_subgroup(series.back());
    if (next.order() == series.back().order()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::optional<unsigned> derived_length(const Subgroup& H) {
  auto series = derived_series(H);
  if (!series.back().is_trivial()) return std::nullopt;
  return static_cast<unsigned>(series.size() - 1);
}

std::vector<Subgroup> lower_central_series(const Subgroup& H) {
  const PermGroup& G = H.ambient();
  std::vector<Subgroup> series{H};
  while (!series.back().is_trivial()) {
    std::vector<ElemIdx> comms;
    for (ElemIdx x : series.back().generators()) {
      for (ElemIdx h : H.generators()) {
        ElemIdx c = G.commutator(x, h);
        if (c != PermGroup::identity()) comms.push_back(c);
      }
    }
    Subgroup next = normal_closure(H, comms);
    if (next.order() == series.back().order()) break;
    series.push_back(std::move(next));
  }
  return series;
}

std::optional<unsigned> nilpotency_class(const Subgroup& H) {
  auto series = lower_central_series(H);
  if (!series.back().is_trivial()) return std::nullopt;
  return static_cast<unsigned>(series.size() - 1);
}

bool is_solvable(const Subgroup& H) { return derived_length(H).has_value(); }

bool is_p_group(const Subgroup& H, std::uint64_t p) { return is_power_of(H.order(), p); }

Subgroup p_residual(const Subgroup& H, std::uint64_t p) {
  const PermGroup& G = H.ambient();
  return generated_by(H, [&](ElemIdx x) { return coprime_to(G.element_order(x), p); });
}

Subgroup p_prime_residual(const Subgroup& H, std::uint64_t p) {
  const PermGroup& G = H.ambient();
  return generated_by(H, [&](ElemIdx x) { return is_power_of(G.element_order(x), p); });
}

bool is_p_nilpotent(const Subgroup& H, std::uint64_t p) {
  return p_residual(H, p).order() == p_prime_part(H.order(), p);
}

bool is_p_solvable(const Subgroup& H, std::uint64_t p) {
  Subgroup X = H;
  while (!X.is_trivial()) {
    Subgroup Y = p_residual(p_prime_residual(X, p), p);
    if (Y.order() == X.order()) return false;
    X = std::move(Y);
  }
  return true;
}

// ---------------------------------------------------------------------------
// Radicals

Subgroup solvable_radical(const NormalLattice& lattice) {
  std::vector<bool> solvable;
  for (const auto& m : lattice.members) solvable.push_back(is_solvable(m));
  const Subgroup* best = &lattice.members.front();
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (solvable[i] && lattice.members[i].order() > best->order()) best = &lattice.members[i];
  }
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    if (solvable[i] && !lattice.members[i].is_subset_of(*best)) {
      throw InternalError("solvable radical does not contain every solvable normal subgroup");
    }
  }
  return *best;
}

Subgroup socle(const NormalLattice& lattice) {
  Subgroup S = lattice.group.trivial();
  for (std::size_t i : lattice.minimal()) S = join(S, lattice.members[i]);
  return S;
}

namespace {

// Largest member N with X ≤ N ≤ bound and |N : X| accepted by index_ok.
template <class IndexOk>
const Subgroup& largest_over(const NormalLattice& lattice, const Subgroup& X, const Subgroup& bound,
                             IndexOk index_ok) {
  return lattice.largest(bound, [&](const Subgroup& N) {
    return X.is_subset_of(N) && index_ok(N.order() / X.order());
  });
}

}  // namespace

RadicalReport radicals(const NormalLattice& lattice, std::uint64_t p) {
  const Subgroup G = lattice.group.whole();
  const Subgroup one = lattice.group.trivial();
  auto is_p_index = [p](std::uint64_t n) { return is_power_of(n, p); };
  auto is_p_prime_index = [p](std::uint64_t n) { return coprime_to(n, p); };

  RadicalReport r{p,
                  solvable_radical(lattice),
                  largest_over(lattice, one, G, is_p_index),
                  largest_over(lattice, one, G, is_p_prime_index),
                  one, one, one, one, one, one, {}};
  r.o_p_prime_p = largest_over(lattice, r.o_p_prime, G, is_p_index);
  r.sol_o_p_prime = largest_over(lattice, one, r.sol, is_p_prime_index);
  r.sol_o_p_prime_p = largest_over(lattice, r.sol_o_p_prime, r.sol, is_p_index);

  for (std::size_t i : lattice.minimal()) r.minimal_normals.push_back(lattice.members[i]);
  for (const auto& m : r.minimal_normals) {
    r.socle = join(r.socle, m);
    if (derived_subgroup(m).is_trivial()) {
      if (r.abelian_part.intersect(m).is_trivial()) r.abelian_part = join(r.abelian_part, m);
    } else {
      r.nonabelian_part = join(r.nonabelian_part, m);
    }
  }
  if (!r.abelian_part.intersect(r.nonabelian_part).is_trivial() ||
      r.abelian_part.order() * r.nonabelian_part.order() != r.socle.order()) {
    throw InternalError("socle does not split as A(G) x T(G)");
  }
  return r;
}

namespace {

struct UpperSeries {
  std::vector<Subgroup> terms;
  unsigned p_factors = 0;
};

UpperSeries upper_series(const NormalLattice& lattice, std::uint64_t p) {
  const Subgroup G = lattice.group.whole();
  UpperSeries s{{lattice.group.trivial()}, 0};
  while (!s.terms.back().is_whole()) {
    const Subgroup X = s.terms.back();
    const Subgroup& Y = largest_over(lattice, X, G, [p](std::uint64_t n) { return coprime_to(n, p); });
    const Subgroup& Z = largest_over(lattice, Y, G, [p](std::uint64_t n) { return is_power_of(n, p); });
    if (Z.order() == X.order()) break;
    if (Y.order() != X.order()) s.terms.push_back(Y);
    if (Z.order() != Y.order()) {
      s.terms.push_back(Z);
      ++s.p_factors;
    }
  }
  return s;
}

}  // namespace

std::vector<Subgroup> upper_p_series(const NormalLattice& lattice, std::uint64_t p) {
  return upper_series(lattice, p).terms;
}

std::optional<unsigned> p_length(const NormalLattice& lattice, std::uint64_t p) {
  auto s = upper_series(lattice, p);
  if (!s.terms.back().is_whole()) return std::nullopt;
  return s.p_factors;
}

// ---------------------------------------------------------------------------
// Searches

Subgroup hall_p_complement(const Subgroup& K, std::uint64_t p) {
  if (!is_p_solvable(K, p)) throw PreconditionError("hall_p_complement: K is not p-solvable");
  const std::uint64_t target = p_prime_part(K.order(), p);
  if (target == K.order()) return K;
  if (target == 1) return K.ambient().trivial();
  const PermGroup& G = K.ambient();
  Subgroup Q = sylow(K, prime_divisors(target).back());
  // A p'-subgroup of a p-solvable group lies in a Hall p'-subgroup, so one
  // pass that keeps every p'-preserving extension reaches full order.
  for (ElemIdx x : K.elements()) {
    if (Q.order() == target) break;
    if (Q.contains(x) || !coprime_to(G.element_order(x), p)) continue;
    const ElemIdx extra[] = {x};
    auto R = extend_subgroup_bounded(Q, extra, target);
    if (R && coprime_to(R->order(), p)) Q = std::move(*R);
  }
  if (Q.order() != target) throw InternalError("hall_p_complement: search fell short");
  return Q;
}

Subgroup maximal_overgroup(const Subgroup& N) {
  const PermGroup& G = N.ambient();
  if (N.is_whole()) throw PreconditionError("maximal_overgroup: N is the whole group");
  Subgroup H = N;
  // If <H, g> = G once, it stays G for every larger H, so one pass suffices.
  for (ElemIdx g = 0; g < G.order(); ++g) {
    if (H.contains(g)) continue;
    const ElemIdx extra[] = {g};
    auto R = extend_subgroup_bounded(H, extra, G.order() / 2);
    if (R) H = std::move(*R);
  }
  return H;
}

Subgroup character_stabilizer(const Embedding& H, const ClassFunction& gamma) {
  if (!gamma.group().same_as(H.group)) throw StructuralError("character_stabilizer: γ is not on H");
  if (!is_normal(H.subgroup)) throw PreconditionError("character_stabilizer: H is not normal");
  const PermGroup& G = H.ambient();
  const auto& hcls = H.group.classes();

  // Value ids so the inner loop compares integers.
  std::vector<std::size_t> value_id(hcls.size());
  for (std::size_t d = 0; d < hcls.size(); ++d) {
    value_id[d] = d;
    for (std::size_t e = 0; e < d; ++e) {
      if (gamma[e] == gamma[d]) {
        value_id[d] = value_id[e];
        break;
      }
    }
  }
  std::vector<ElemIdx> reps;
  for (const auto& c : hcls) reps.push_back(H.to_ambient(c.representative));

  std::vector<ElemIdx> members;
  for (ElemIdx g = 0; g < G.order(); ++g) {
    bool fixes = true;
    for (std::size_t d = 0; d < reps.size() && fixes; ++d) {
      const auto y = static_cast<ElemIdx>(H.local[G.conj(reps[d], g)]);
      fixes = value_id[H.group.class_of(y)] == value_id[d];
    }
    if (fixes) members.push_back(g);
  }
  return Subgroup(G, std::move(members), true);
}

}  // namespace charkernel
