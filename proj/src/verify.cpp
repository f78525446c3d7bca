#include "charkernel/verify.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "charkernel/groupspec.hpp"
#include "charkernel/numtheory.hpp"

namespace charkernel {

// ---------------------------------------------------------------------------
// Context

GroupContext::GroupContext(PermGroup group, std::string spec, TableOptions options)
    : group_(std::move(group)), spec_(std::move(spec)), options_(options) {}

const CharacterTable& GroupContext::table() const {
  std::call_once(table_once_, [this] {
    table_ = std::make_unique<CharacterTable>(character_table(group_, options_));
  });
  return *table_;
}

const NormalLattice& GroupContext::lattice() const {
  std::call_once(lattice_once_, [this] { lattice_ = std::make_unique<NormalLattice>(normal_subgroups(table())); });
  return *lattice_;
}

const RadicalReport& GroupContext::radicals(std::uint64_t p) const {
  std::lock_guard lock(radicals_mutex_);
  auto& slot = radicals_[p];
  if (!slot) slot = std::make_unique<RadicalReport>(charkernel::radicals(lattice(), p));
  return *slot;
}

const Subgroup& GroupContext::kernel(std::size_t row) const {
  std::call_once(kernels_once_, [this] {
    for (const auto& chi : table().irreducibles) {
      kernels_.push_back(charkernel::kernel(chi));
      codegrees_.push_back(charkernel::codegree(chi, kernels_.back()));
    }
  });
  return kernels_.at(row);
}

const Codegree& GroupContext::codegree(std::size_t row) const {
  kernel(row);
  return codegrees_.at(row);
}

unsigned GroupContext::max_codegree_exponent(std::uint64_t p) const {
  unsigned a = 0;
  for (std::size_t i = 0; i < table().size(); ++i) a = std::max(a, codegree(i).p_exponent(p));
  return a;
}

// ---------------------------------------------------------------------------
// Reports

const char* to_string(Status s) {
  switch (s) {
    case Status::Pass: return "pass";
    case Status::Fail: return "fail";
    case Status::NotApplicable: return "n/a";
    case Status::Error: return "error";
  }
  return "?";
}

Json VerificationReport::to_json(bool with_timing) const {
  Json j;
  j["spec"] = spec;
  j["order"] = order;
  j["prime"] = prime ? Json(*prime) : Json(nullptr);
  j["theorem"] = theorem;
  j["status"] = to_string(status);
  j["witnesses"] = witnesses;
  Json t = trace;
  if (!message.empty()) t["message"] = message;
  j["trace"] = std::move(t);
  if (with_timing) j["millis"] = millis;
  return j;
}

Json subgroup_json(const Subgroup& H) {
  return Json{{"order", H.order()}, {"generators", H.generator_strings()}};
}

namespace {

Json class_function_json(const ClassFunction& f) { return f.to_strings(); }

Json row_json(const GroupContext& ctx, std::size_t row) {
  return Json{{"row", row},
              {"degree", ctx.table().degree(row)},
              {"kernel_order", ctx.kernel(row).order()},
              {"codegree", ctx.codegree(row).value}};
}

VerificationReport start(const GroupContext& ctx, const std::string& id, std::optional<std::uint64_t> p) {
  VerificationReport r;
  r.spec = ctx.spec();
  r.order = ctx.group().order();
  r.prime = p;
  r.theorem = id;
  return r;
}

void fail(VerificationReport& r, const std::string& why) {
  if (r.status != Status::Fail) r.message = why;
  r.status = Status::Fail;
}

void not_applicable(VerificationReport& r, const std::string& why) {
  r.status = Status::NotApplicable;
  r.message = why;
}

void require_prime(std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
}

// Memo for per-kernel structural predicates within one check.
struct KernelFacts {
  bool solvable;
  bool p_nilpotent;
  bool p_solvable;
};

class KernelMemo {
 public:
  KernelMemo(const GroupContext& ctx, std::uint64_t p) : ctx_(ctx), p_(p) {}
  const KernelFacts& operator()(std::size_t row) {
    const Subgroup& K = ctx_.kernel(row);
    auto it = memo_.find(K.bits());
    if (it == memo_.end()) {
      it = memo_.emplace(K.bits(), KernelFacts{is_solvable(K), is_p_nilpotent(K, p_), is_p_solvable(K, p_)}).first;
    }
    return it->second;
  }

 private:
  const GroupContext& ctx_;
  std::uint64_t p_;
  std::map<std::vector<std::uint64_t>, KernelFacts> memo_;
};

}  // namespace

bool within_log2_plus_2(unsigned value, std::uint64_t a) {
  if (value <= 2) return true;
  if (value - 2 >= 64) return false;
  return (std::uint64_t{1} << (value - 2)) <= a;
}

bool within_2log2_plus_3(unsigned value, std::uint64_t a) {
  if (value <= 3) return true;
  if (value - 3 >= 64) return false;
  return (std::uint64_t{1} << (value - 3)) <= a * a;
}

// ---------------------------------------------------------------------------
// Constructive descent

TheoremBTrace::TheoremBTrace(const PermGroup& G)
    : K(G.trivial()), Q(G.trivial()), N(G.trivial()), NK(G.trivial()), H(G.trivial()), J(G.trivial()),
      theta(ClassFunction::zero(G)), induced(ClassFunction::zero(G)), delta(ClassFunction::zero(G)),
      L(G.trivial()) {}

Json TheoremBTrace::to_json() const {
  Json constituents = Json::array();
  for (auto [row, m] : delta_constituents) constituents.push_back(Json{{"row", row}, {"multiplicity", m}});
  Json steps = Json::array();
  for (const auto& c : checks) steps.push_back(Json{{"step", c.name}, {"ok", c.ok}});
  return Json{{"prime", prime},
              {"chi", Json{{"row", chi}, {"degree", chi_degree}}},
              {"K", subgroup_json(K)},
              {"Q", subgroup_json(Q)},
              {"N_G(Q)", subgroup_json(N)},
              {"N_K(Q)", subgroup_json(NK)},
              {"H", subgroup_json(H)},
              {"index_G_H", index_GH},
              {"J", subgroup_json(J)},
              {"theta", class_function_json(theta)},
              {"theta_induced", class_function_json(induced)},
              {"delta", class_function_json(delta)},
              {"delta_degree", delta_degree},
              {"delta_constituents", constituents},
              {"psi", Json{{"row", psi}, {"degree", psi_degree}, {"kernel", subgroup_json(L)}}},
              {"checks", steps}};
}

std::vector<std::size_t> theorem_B_applicable(const GroupContext& ctx, std::uint64_t p) {
  require_prime(p);
  KernelMemo facts(ctx, p);
  std::vector<std::size_t> out;
  for (std::size_t i : irr_p_prime(ctx.table(), p)) {
    const auto& f = facts(i);
    if (f.p_solvable && !f.p_nilpotent) out.push_back(i);
  }
  return out;
}

TheoremBTrace construct_theorem_B_witness(const GroupContext& ctx, std::uint64_t p, std::size_t chi_row) {
  require_prime(p);
  const PermGroup& G = ctx.group();
  const CharacterTable& T = ctx.table();
  if (chi_row >= T.size()) throw PreconditionError("no such table row");
  const ClassFunction& chi = T[chi_row];
  const std::uint64_t deg = T.degree(chi_row);
  if (deg % p == 0) throw PreconditionError("χ(1) is divisible by p");
  const Subgroup& K = ctx.kernel(chi_row);
  if (!is_p_solvable(K, p)) throw PreconditionError("Ker χ is not p-solvable");
  if (is_p_nilpotent(K, p)) throw PreconditionError("Ker χ is p-nilpotent");

  TheoremBTrace t(G);
  t.prime = p;
  t.chi = chi_row;
  t.chi_degree = deg;
  t.K = K;
  auto check = [&t](const std::string& step, bool ok) {
    t.checks.push_back({step, ok});
    if (!ok) throw ProofStepError(step);
  };

  t.Q = hall_p_complement(K, p);
  check("Q is a Hall p-complement of K", t.Q.is_subset_of(K) && t.Q.order() == p_prime_part(K.order(), p));
  t.N = normalizer(t.Q);
  t.NK = t.N.intersect(K);
  check("N_K(Q) < K", t.NK.order() < K.order());
  check("G = K N_G(Q)", K.order() * t.N.order() == G.order() * t.NK.order());
  const std::uint64_t index_GN = G.order() / t.N.order();
  check("|G:N_G(Q)| = |K:N_K(Q)|", index_GN == K.order() / t.NK.order());
  check("|G:N_G(Q)| is a power of p greater than 1", index_GN > 1 && is_power_of(index_GN, p));

  t.H = maximal_overgroup(t.N);
  t.index_GH = G.order() / t.H.order();
  check("N_G(Q) <= H", t.N.is_subset_of(t.H));
  check("|G:H| is a power of p greater than 1", t.index_GH > 1 && is_power_of(t.index_GH, p));

  const Embedding EH = embed(t.H);
  t.theta = restrict(chi, EH);
  check("[theta, theta] = 1", inner_product(t.theta, t.theta) == 1);
  {
    std::vector<ElemIdx> j;
    const Subgroup local = kernel(t.theta);
    for (ElemIdx h : local.elements()) j.push_back(EH.to_ambient(h));
    t.J = Subgroup(G, std::move(j), true);
  }
  check("Ker theta = H ∩ K", t.J == t.H.intersect(K));

  t.induced = induce(t.theta, EH);
  check("[theta^G, chi] = 1", inner_product(t.induced, chi) == 1);
  check("theta^G(1) = |G:H| chi(1)", t.induced.degree() == t.index_GH * deg);
  t.delta = t.induced - chi;

  bool is_character = true;
  bool avoids_K = true;
  for (std::size_t i = 0; i < T.size(); ++i) {
    const Rational m = inner_product(t.delta, T[i]);
    if (m < 0 || m.get_den() != 1) {
      is_character = false;
      continue;
    }
    if (m == 0) continue;
    t.delta_constituents.emplace_back(i, m.get_num().get_ui());
    if (K.is_subset_of(ctx.kernel(i))) avoids_K = false;
  }
  check("Delta is a character", is_character);
  check("no constituent of Delta has K in its kernel", avoids_K);
  t.delta_degree = t.delta.degree().get_ui();
  check("chi(1)(|G:H| - 1) = Delta(1)", deg * (t.index_GH - 1) == t.delta_degree);
  check("p does not divide Delta(1)", t.delta_degree % p != 0);

  bool found = false;
  for (auto [row, m] : t.delta_constituents) {
    if (T.degree(row) % p != 0 && !K.is_subset_of(ctx.kernel(row))) {
      t.psi = row;
      found = true;
      break;
    }
  }
  check("Delta has a p'-degree constituent psi with K not in Ker psi", found);
  t.psi_degree = T.degree(t.psi);
  t.L = ctx.kernel(t.psi);
  check("psi(1) > chi(1)", t.psi_degree > deg);
  check("p does not divide psi(1)", t.psi_degree % p != 0);
  check("Ker psi < K", t.L.is_proper_subset_of(K));
  return t;
}

// ---------------------------------------------------------------------------
// Checks

VerificationReport check_theorem_A(const GroupContext& ctx, std::uint64_t p) {
  require_prime(p);
  auto r = start(ctx, "A", p);
  const CharacterTable& T = ctx.table();
  const RadicalReport& R = ctx.radicals(p);
  const Subgroup& O = R.sol_o_p_prime_p;
  KernelMemo facts(ctx, p);

  const auto rows = irr_p_prime(T, p);
  std::map<std::size_t, std::vector<std::size_t>> witnesses_of;
  Json checked = Json::array();
  for (std::size_t i : rows) {
    const Subgroup& K = ctx.kernel(i);
    const auto& f = facts(i);
    const bool in_radical = K.is_subset_of(O);
    const bool hypothesis = !(f.solvable && f.p_nilpotent);
    if (hypothesis == in_radical) {
      fail(r, "row " + std::to_string(i) + ": 'not solvable or not p-nilpotent' disagrees with 'not in O_{p',p}(Sol)'");
    }
    if (in_radical) continue;

    std::vector<std::size_t> ws;
    for (std::size_t j : rows) {
      if (T.degree(j) > T.degree(i) && ctx.kernel(j).is_proper_subset_of(K)) ws.push_back(j);
    }
    Json entry{{"chi", row_json(ctx, i)}, {"kernel_solvable", f.solvable}, {"kernel_p_nilpotent", f.p_nilpotent},
               {"psi_candidates", ws}};
    if (ws.empty()) fail(r, "row " + std::to_string(i) + ": no p'-degree psi with smaller kernel and larger degree");
    if (f.p_solvable && !f.p_nilpotent) {
      const TheoremBTrace t = construct_theorem_B_witness(ctx, p, i);
      entry["constructive_psi"] = t.psi;
      if (std::find(ws.begin(), ws.end(), t.psi) == ws.end()) {
        fail(r, "row " + std::to_string(i) + ": constructive psi is not among the exhaustive witnesses");
      }
    }
    if (!ws.empty()) r.witnesses.push_back(Json{{"chi", i}, {"psi", ws.front()}});
    witnesses_of[i] = std::move(ws);
    checked.push_back(std::move(entry));
  }

  // Descent from the trivial character until the kernel lies in O_{p',p}(Sol(G)).
  Json descent = Json::array();
  std::size_t cur = 0;
  std::size_t steps = 0;
  while (true) {
    descent.push_back(row_json(ctx, cur));
    if (ctx.kernel(cur).is_subset_of(O)) break;
    auto it = witnesses_of.find(cur);
    if (it == witnesses_of.end() || it->second.empty() || ++steps > T.size()) {
      fail(r, "descent stalled at row " + std::to_string(cur));
      break;
    }
    cur = it->second.front();
  }
  const bool mu_ok = ctx.kernel(cur).is_subset_of(O) && T.degree(cur) % p != 0;
  if (!mu_ok) fail(r, "no p'-degree mu with Ker mu <= O_{p',p}(Sol(G))");

  r.trace = Json{{"sol", subgroup_json(R.sol)},
                 {"o_p_prime_p_of_sol", subgroup_json(O)},
                 {"p_prime_rows", rows.size()},
                 {"hypothesis_rows", checked},
                 {"descent", descent},
                 {"mu", row_json(ctx, cur)}};
  return r;
}

VerificationReport check_theorem_B(const GroupContext& ctx, std::uint64_t p) {
  auto r = start(ctx, "B", p);
  const auto rows = theorem_B_applicable(ctx, p);
  if (rows.empty()) {
    not_applicable(r, "no p'-degree character has a p-solvable, non-p-nilpotent kernel");
    return r;
  }
  Json runs = Json::array();
  for (std::size_t i : rows) {
    try {
      const TheoremBTrace t = construct_theorem_B_witness(ctx, p, i);
      r.witnesses.push_back(Json{{"chi", i}, {"psi", t.psi}, {"psi_degree", t.psi_degree}});
      runs.push_back(t.to_json());
    } catch (const ProofStepError& e) {
      fail(r, "row " + std::to_string(i) + ": " + e.what());
      runs.push_back(Json{{"chi", i}, {"failed_step", e.step()}});
    }
  }
  r.trace = Json{{"runs", runs}};
  return r;
}

VerificationReport check_corollary_B(const GroupContext& ctx, std::uint64_t p) {
  require_prime(p);
  auto r = start(ctx, "corB", p);
  const RadicalReport& R = ctx.radicals(p);
  if (!R.sol.is_trivial()) {
    not_applicable(r, "solvable radical has order " + std::to_string(R.sol.order()));
    return r;
  }
  for (std::size_t i : irr_p_prime(ctx.table(), p)) {
    if (ctx.kernel(i).is_trivial()) r.witnesses.push_back(row_json(ctx, i));
  }
  if (r.witnesses.empty()) fail(r, "no faithful p'-degree irreducible character");
  r.trace = Json{{"faithful_p_prime_count", r.witnesses.size()}};
  return r;
}

VerificationReport check_corollary_C(const GroupContext& ctx, std::uint64_t p) {
  require_prime(p);
  auto r = start(ctx, "corC", p);
  const RadicalReport& R = ctx.radicals(p);
  const unsigned a = ctx.max_codegree_exponent(p);
  const std::uint64_t index_p = p_part(ctx.group().order() / R.sol_o_p_prime_p.order(), p);
  const std::uint64_t bound = ipow(p, a);
  Json codegrees = Json::array();
  for (std::size_t i = 0; i < ctx.table().size(); ++i) codegrees.push_back(ctx.codegree(i).value);
  r.trace = Json{{"codegrees", codegrees},
                 {"a", a},
                 {"o_p_prime_p_of_sol", subgroup_json(R.sol_o_p_prime_p)},
                 {"index_p_part", index_p},
                 {"bound", bound}};
  r.witnesses.push_back(Json{{"a", a}, {"index_p_part", index_p}});
  if (index_p > bound) fail(r, "|G:O_{p',p}(Sol(G))|_p exceeds p^a");
  return r;
}

// ---------------------------------------------------------------------------
// Minimal normal subgroups

MinsimWitness::MinsimWitness(const PermGroup& G)
    : M(G.trivial()), gamma(ClassFunction::zero(G)), stabilizer(G.trivial()) {}

Json MinsimWitness::to_json() const {
  Json fs = Json::array();
  for (const auto& S : factors) fs.push_back(subgroup_json(S));
  return Json{{"M", subgroup_json(M)},
              {"factors", fs},
              {"alpha", Json{{"row", alpha}, {"degree", alpha_degree}}},
              {"gamma", class_function_json(gamma)},
              {"gamma_degree", gamma.degree().get_ui()},
              {"stabilizer", subgroup_json(stabilizer)},
              {"xi", Json{{"row", xi}, {"degree", xi_degree}}}};
}

namespace {

struct Factorized {
  std::vector<Subgroup> factors;   // S_1, ..., S_n
  std::vector<ElemIdx> conjugator; // x_i with S_i = x_i S_1 x_i^-1
};

Factorized simple_factors(const Embedding& EM) {
  const PermGroup& G = EM.ambient();
  const Subgroup& M = EM.subgroup;
  Subgroup S1 = M;
  for (const auto& cls : EM.group.classes()) {
    if (cls.representative == 0) continue;
    const ElemIdx x[] = {EM.to_ambient(cls.representative)};
    Subgroup C = normal_closure(M, x);
    if (C.order() < S1.order()) S1 = std::move(C);
  }
  Factorized f{{S1}, {PermGroup::identity()}};
  for (std::size_t head = 0; head < f.factors.size(); ++head) {
    for (ElemIdx g : G.generator_indices()) {
      std::vector<ElemIdx> img;
      for (ElemIdx s : f.factors[head].elements()) img.push_back(G.conj(s, g));
      Subgroup S(G, std::move(img), true);
      if (std::find(f.factors.begin(), f.factors.end(), S) == f.factors.end()) {
        f.factors.push_back(std::move(S));
        f.conjugator.push_back(G.mul(g, f.conjugator[head]));
      }
    }
  }
  std::uint64_t prod = 1;
  for (const auto& S : f.factors) prod *= S.order();
  if (prod != M.order()) throw InternalError("minimal normal subgroup is not the direct product of its factors");
  return f;
}

// Components (s_1, ..., s_n) of the M-class representatives.
std::vector<std::vector<ElemIdx>> components(const Embedding& EM, const Factorized& f) {
  const PermGroup& G = EM.ambient();
  std::map<ElemIdx, std::size_t> wanted;
  const auto& classes = EM.group.classes();
  for (std::size_t c = 0; c < classes.size(); ++c) wanted[EM.to_ambient(classes[c].representative)] = c;
  std::vector<std::vector<ElemIdx>> out(classes.size());
  std::vector<std::pair<ElemIdx, std::vector<ElemIdx>>> partial{{PermGroup::identity(), {}}};
  for (const auto& S : f.factors) {
    std::vector<std::pair<ElemIdx, std::vector<ElemIdx>>> next;
    next.reserve(partial.size() * S.order());
    for (const auto& [m, comps] : partial) {
      for (ElemIdx s : S.elements()) {
        auto c = comps;
        c.push_back(s);
        next.emplace_back(G.mul(m, s), std::move(c));
      }
    }
    partial = std::move(next);
  }
  for (auto& [m, comps] : partial) {
    auto it = wanted.find(m);
    if (it != wanted.end()) out[it->second] = std::move(comps);
  }
  return out;
}

}  // namespace

VerificationReport check_lemma_minsim(const GroupContext& ctx, std::uint64_t p) {
  require_prime(p);
  auto r = start(ctx, "minsim", p);
  const PermGroup& G = ctx.group();
  const RadicalReport& R = ctx.radicals(p);
  std::vector<Subgroup> targets;
  for (const auto& M : R.minimal_normals) {
    if (!derived_subgroup(M).is_trivial()) targets.push_back(M);
  }
  if (targets.empty()) {
    not_applicable(r, "no nonabelian minimal normal subgroup");
    return r;
  }

  // Tables of the stabilizers met so far.
  std::map<std::vector<std::uint64_t>, std::pair<Embedding, CharacterTable>> tables;
  auto stabilizer_table = [&](const Subgroup& S) -> const std::pair<Embedding, CharacterTable>& {
    auto it = tables.find(S.bits());
    if (it == tables.end()) {
      Embedding E = embed(S);
      CharacterTable T = S.is_whole() ? ctx.table() : character_table(E.group);
      it = tables.emplace(S.bits(), std::pair{std::move(E), std::move(T)}).first;
    }
    return it->second;
  };

  Json per_M = Json::array();
  for (const auto& M : targets) {
    const Embedding EM = embed(M);
    const Factorized f = simple_factors(EM);
    const auto comps = components(EM, f);
    const Embedding ES = embed(f.factors.front());
    const CharacterTable TS = character_table(ES.group);
    const std::size_t n = f.factors.size();

    Json tried = Json::array();
    std::optional<MinsimWitness> found;
    for (std::size_t a = 1; a < TS.size() && !found; ++a) {
      const std::uint64_t deg = ipow(TS.degree(a), static_cast<unsigned>(n));
      Json attempt{{"alpha", a}, {"gamma_degree", deg}};
      if (deg % p == 0) {
        attempt["rejected"] = "p divides gamma(1)";
        tried.push_back(std::move(attempt));
        continue;
      }
      std::vector<Cyclotomic> values;
      for (const auto& cs : comps) {
        Cyclotomic v(1);
        for (std::size_t i = 0; i < n; ++i) {
          const ElemIdx s1 = G.conj(cs[i], G.inv(f.conjugator[i]));
          v *= TS[a].at(static_cast<ElemIdx>(ES.local[s1]));
        }
        values.push_back(std::move(v));
      }
      ClassFunction gamma(EM.group, std::move(values));
      if (inner_product(gamma, gamma) != 1) throw InternalError("diagonal character is not irreducible");
      Subgroup stab = character_stabilizer(EM, gamma);
      const std::uint64_t index = G.order() / stab.order();
      attempt["stabilizer_index"] = index;
      if (index % p == 0) {
        attempt["rejected"] = "p divides |G:G_gamma|";
        tried.push_back(std::move(attempt));
        continue;
      }
      const auto& [EG, TG] = stabilizer_table(stab);
      for (std::size_t x = 0; x < TG.size() && !found; ++x) {
        if (TG.degree(x) != deg) continue;
        bool restricts = true;
        for (std::size_t c = 0; c < comps.size() && restricts; ++c) {
          const ElemIdx m = EM.to_ambient(EM.group.classes()[c].representative);
          const ElemIdx local = stab.is_whole() ? m : static_cast<ElemIdx>(EG.local[m]);
          restricts = TG[x].at(local) == gamma[c];
        }
        if (!restricts) continue;
        MinsimWitness w(G);
        w.M = M;
        w.factors = f.factors;
        w.alpha = a;
        w.alpha_degree = TS.degree(a);
        w.gamma = gamma;
        w.stabilizer = stab;
        w.xi = x;
        w.xi_degree = TG.degree(x);
        found = std::move(w);
      }
      if (!found) attempt["rejected"] = "no extension to G_gamma";
      tried.push_back(std::move(attempt));
    }
    Json entry{{"M", subgroup_json(M)}, {"factor_count", n}, {"factor_order", f.factors.front().order()},
               {"attempts", tried}};
    if (found) {
      r.witnesses.push_back(found->to_json());
    } else {
      fail(r, "no diagonal witness for a minimal normal subgroup of order " + std::to_string(M.order()));
    }
    per_M.push_back(std::move(entry));
  }
  r.trace = Json{{"nonabelian_minimal_normals", per_M}};
  return r;
}

// ---------------------------------------------------------------------------
// p-parts of codegrees

VerificationReport check_lemma_pgr(const GroupContext& ctx, std::uint64_t p) {
  require_prime(p);
  auto r = start(ctx, "pgr", p);
  const Subgroup G = ctx.group().whole();
  if (G.is_trivial() || !is_p_group(G, p)) {
    not_applicable(r, "not a nontrivial p-group");
    return r;
  }
  std::uint64_t max_cod = 1;
  Json codegrees = Json::array();
  for (std::size_t i = 0; i < ctx.table().size(); ++i) {
    max_cod = std::max(max_cod, ctx.codegree(i).value);
    codegrees.push_back(ctx.codegree(i).value);
  }
  if (!is_power_of(max_cod, p)) throw InternalError("codegree of a p-group is not a p-power");
  const unsigned a = p_valuation(max_cod, p);
  const unsigned dl = derived_length(G).value();
  const unsigned c = nilpotency_class(G).value();
  const bool abelian = ctx.group().is_abelian();

  Json checks = Json::array();
  auto check = [&](const std::string& what, bool ok) {
    checks.push_back(Json{{"check", what}, {"ok", ok}});
    if (!ok) fail(r, what);
  };
  check("dl <= log2(a) + 2", within_log2_plus_2(dl, a));
  if (a == 1) check("a = 1 implies abelian", abelian);
  if (a > 1) check("class <= 2a - 2", c <= 2 * a - 2);
  r.witnesses.push_back(Json{{"a", a}, {"dl", dl}, {"class", c}});
  r.trace = Json{{"codegrees", codegrees},
                 {"a", a},
                 {"derived_length", dl},
                 {"nilpotency_class", c},
                 {"abelian", abelian},
                 {"exponent", ctx.group().exponent()},
                 {"checks", checks}};
  return r;
}

VerificationReport check_corollary_dlP(const GroupContext& ctx, std::uint64_t p) {
  require_prime(p);
  auto r = start(ctx, "dlP", p);
  if (ctx.group().order() % p != 0) {
    not_applicable(r, "p does not divide |G|");
    return r;
  }
  const unsigned a = ctx.max_codegree_exponent(p);
  if (a == 0) {
    not_applicable(r, "a = 0: log2(a) undefined, outside the stated hypothesis");
    return r;
  }
  const Subgroup P = sylow(ctx.group(), p);
  const unsigned dl = derived_length(P).value();
  Json checks = Json::array();
  auto check = [&](const std::string& what, bool ok) {
    checks.push_back(Json{{"check", what}, {"ok", ok}});
    if (!ok) fail(r, what);
  };
  check("dl(P) <= 2 log2(a) + 3", within_2log2_plus_3(dl, a));
  const bool p_solvable = is_p_solvable(ctx.group().whole(), p);
  Json lp_json = nullptr;
  if (p_solvable) {
    const auto lp = p_length(ctx.lattice(), p);
    if (!lp) throw InternalError("p-solvable group without a p-length");
    lp_json = *lp;
    check("l_p <= 2 log2(a) + 3", within_2log2_plus_3(*lp, a));
    check("l_p <= dl(P)", *lp <= dl);
    check("l_p <= a", *lp <= a);
  }
  r.witnesses.push_back(Json{{"a", a}, {"dl_P", dl}, {"l_p", lp_json}});
  r.trace = Json{{"a", a},
                 {"sylow", subgroup_json(P)},
                 {"dl_P", dl},
                 {"p_solvable", p_solvable},
                 {"l_p", lp_json},
                 {"checks", checks}};
  return r;
}

VerificationReport check_section3_family(const GroupContext& ctx) {
  auto r = start(ctx, "sec3", std::nullopt);
  std::optional<GroupSpec> spec;
  try {
    spec = parse_spec(ctx.spec());
  } catch (const SpecError&) {
  }
  if (!spec || spec->factors.front().kind != SpecAtom::Kind::Frobenius ||
      std::any_of(spec->factors.begin(), spec->factors.end(),
                  [&](const SpecAtom& f) { return !(f == spec->factors.front()); })) {
    not_applicable(r, "not a direct power of one frob(q,p)");
    return r;
  }
  const std::uint64_t q = spec->factors.front().args[0];
  const std::uint64_t p = spec->factors.front().args[1];
  const auto n = static_cast<unsigned>(spec->factors.size());
  r.prime = p;

  std::uint64_t max_degree_p = 1, max_cod_p = 1;
  Json degrees = Json::array(), codegrees = Json::array();
  for (std::size_t i = 0; i < ctx.table().size(); ++i) {
    const std::uint64_t d = ctx.table().degree(i);
    degrees.push_back(d);
    codegrees.push_back(ctx.codegree(i).value);
    max_degree_p = std::max(max_degree_p, p_part(d, p));
    max_cod_p = std::max(max_cod_p, ctx.codegree(i).p_part(p));
  }
  r.witnesses.push_back(Json{{"max_degree_p_part", max_degree_p}, {"max_codegree_p_part", max_cod_p}});
  r.trace = Json{{"q", q}, {"p", p}, {"n", n}, {"degrees", degrees}, {"codegrees", codegrees}};
  if (max_degree_p != ipow(p, n)) fail(r, "largest p-part of a degree is not p^n");
  if (max_cod_p > p) fail(r, "a codegree has p-part larger than p");
  return r;
}

VerificationReport check_section3_family(std::uint64_t q, std::uint64_t p, unsigned n) {
  if (!is_prime(q) || !is_prime(p) || (q - 1) % p != 0) throw PreconditionError("need primes p, q with p | q-1");
  if (n == 0) throw PreconditionError("n must be positive");
  std::string spec;
  for (unsigned i = 0; i < n; ++i) {
    if (i) spec += 'x';
    spec += "frob(" + std::to_string(q) + "," + std::to_string(p) + ")";
  }
  GroupContext ctx(build(spec), spec);
  return check_section3_family(ctx);
}

VerificationReport check_degree_le_codegree(const GroupContext& ctx) {
  auto r = start(ctx, "codegree", std::nullopt);
  Json rows = Json::array();
  for (std::size_t i = 0; i < ctx.table().size(); ++i) {
    const std::uint64_t d = ctx.table().degree(i);
    const std::uint64_t c = ctx.codegree(i).value;
    rows.push_back(Json{{"row", i}, {"degree", d}, {"codegree", c}});
    if (d == c) r.witnesses.push_back(Json{{"row", i}, {"degree", d}, {"tight", true}});
    if (d > c) fail(r, "row " + std::to_string(i) + ": chi(1) > cod(chi)");
  }
  r.trace = Json{{"rows", rows}};
  return r;
}

// ---------------------------------------------------------------------------
// Dispatch

const std::vector<std::string>& theorem_ids() {
  static const std::vector<std::string> ids{"A", "B", "corB", "corC", "minsim", "pgr", "dlP", "sec3", "codegree"};
  return ids;
}

bool theorem_uses_prime(const std::string& id) { return id != "sec3" && id != "codegree"; }

VerificationReport run_check(const GroupContext& ctx, const std::string& id, std::optional<std::uint64_t> p) {
  const auto t0 = std::chrono::steady_clock::now();
  VerificationReport r;
  try {
    if (theorem_uses_prime(id) && !p) throw PreconditionError("theorem " + id + " needs a prime");
    if (id == "A") r = check_theorem_A(ctx, *p);
    else if (id == "B") r = check_theorem_B(ctx, *p);
    else if (id == "corB") r = check_corollary_B(ctx, *p);
    else if (id == "corC") r = check_corollary_C(ctx, *p);
    else if (id == "minsim") r = check_lemma_minsim(ctx, *p);
    else if (id == "pgr") r = check_lemma_pgr(ctx, *p);
    else if (id == "dlP") r = check_corollary_dlP(ctx, *p);
    else if (id == "sec3") r = check_section3_family(ctx);
    else if (id == "codegree") r = check_degree_le_codegree(ctx);
    else throw PreconditionError("unknown theorem id '" + id + "'");
  } catch (const InternalError& e) {
    r = start(ctx, id, theorem_uses_prime(id) ? p : std::nullopt);
    fail(r, e.what());
  } catch (const Error& e) {
    r = start(ctx, id, theorem_uses_prime(id) ? p : std::nullopt);
    r.status = Status::Error;
    r.message = e.what();
  }
  r.millis = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

}  // namespace charkernel
