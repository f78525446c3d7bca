// One PASS/FAIL line per acceptance criterion. Exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>

#include "charkernel/corpus.hpp"
#include "charkernel/numtheory.hpp"
#include "charkernel/structure.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace charkernel;
using charkernel::testkit::context;
using charkernel::testkit::default_specs;

namespace {

constexpr std::uint64_t kPrimesA[] = {2, 3, 5, 7, 11, 13};
constexpr std::uint64_t kPrimes[] = {2, 3, 5, 7};

struct Outcome {
  bool ok = true;
  std::ostringstream note;
  std::vector<std::string> problems;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
  void require_status(const VerificationReport& r, Status want) {
    require(r.status == want, r.spec + " " + r.theorem + (r.prime ? " p=" + std::to_string(*r.prime) : "") + ": " +
                                  to_string(r.status) + (r.message.empty() ? "" : " (" + r.message + ")"));
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string where(const VerificationReport& r) {
  return r.spec + (r.prime ? " p=" + std::to_string(*r.prime) : "");
}

// -------------------------------------------------------------------------

void table_soundness(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t groups = 0;
  for (const auto& spec : default_specs()) {
    const PermGroup G = build(spec);
    const CharacterTable T = character_table(G);
    ++groups;
    const auto orth = check_orthogonality(T);
    o.require(orth.rows && orth.columns, spec + ": orthogonality");
    o.require(orth.degree_sum, spec + ": sum of squared degrees");
    o.require(T.size() == G.class_count(), spec + ": rows != classes");
    Subgroup acc = G.whole();
    for (const auto& chi : T.irreducibles) acc = acc.intersect(kernel(chi));
    o.require(acc.is_trivial(), spec + ": kernels meet nontrivially");
  }
  const double secs = seconds_since(t0);
  o.require(secs < 60, "tables took " + std::to_string(secs) + " s");
  o.note << groups << " groups, build+tables " << std::fixed << std::setprecision(2) << secs << " s (limit 60 s)";
}

void theorem_a(Outcome& o) {
  std::size_t runs = 0, descents = 0;
  for (const auto& spec : default_specs()) {
    for (auto p : kPrimesA) {
      const auto r = check_theorem_A(context(spec), p);
      o.require_status(r, Status::Pass);
      ++runs;
      descents += r.witnesses.size();
    }
  }
  o.note << runs << " (group, prime) runs, " << descents << " descent witnesses, mu found in all";
}

void constructive_descent(Outcome& o) {
  std::size_t triples = 0;
  for (const auto& spec : default_specs()) {
    const auto& ctx = context(spec);
    for (auto p : kPrimesA) {
      for (std::size_t chi : theorem_B_applicable(ctx, p)) {
        ++triples;
        const std::string at = spec + " p=" + std::to_string(p) + " chi=" + std::to_string(chi);
        try {
          const auto t = construct_theorem_B_witness(ctx, p, chi);
          for (const auto& c : t.checks) o.require(c.ok, at + ": " + c.name);
          o.require(t.K.order() * t.N.order() / t.K.intersect(t.N).order() == ctx.group().order(), at + ": Frattini");
          o.require(t.chi_degree * (t.index_GH - 1) == t.delta_degree, at + ": degree identity");
          o.require(is_power_of(t.index_GH, p) && t.index_GH > 1, at + ": |G:H| not a p-power > 1");
          o.require(t.delta_degree % p != 0, at + ": p divides Delta(1)");
          o.require(t.psi_degree > t.chi_degree && t.psi_degree % p != 0, at + ": psi degree");
          o.require(t.L.is_proper_subset_of(t.K), at + ": Ker psi not below K");
        } catch (const Error& e) {
          o.require(false, at + ": " + e.what());
        }
      }
    }
  }
  // S4, p = 2, χ = sign.
  const auto& s4 = context("S4");
  const auto t = construct_theorem_B_witness(s4, 2, 1);
  o.require(t.psi_degree == 3 && t.L.is_trivial(), "S4 sign: psi is not a faithful degree-3 row");
  // S3 x C2: vacuous at p = 2, exercised at p = 3.
  const bool vacuous = theorem_B_applicable(context("S3xC2"), 2).empty();
  const std::size_t at3 = theorem_B_applicable(context("S3xC2"), 3).size();
  o.require(at3 > 0, "S3xC2 p=3 has no applicable row");
  o.note << triples << " applicable triples; S4 sign -> psi(1)=" << t.psi_degree << " faithful; S3xC2 p=2 "
         << (vacuous ? "has no applicable row (all subgroups 2-nilpotent)" : "applicable") << ", p=3 " << at3
         << " rows";
}

void corollary_b(Outcome& o) {
  const auto& a6 = context("A6");
  const auto& s5 = context("S5");
  std::size_t checked = 0;
  for (const auto* ctx : {&context("A5"), &s5, &a6, &context("PSL(2,7)")}) {
    for (auto p : prime_divisors(ctx->group().order())) {
      const auto r = check_corollary_B(*ctx, p);
      o.require_status(r, Status::Pass);
      bool faithful_p_prime = false;
      for (const auto& w : r.witnesses) {
        const std::size_t row = w["row"];
        faithful_p_prime |= ctx->kernel(row).is_trivial() && ctx->table().degree(row) % p != 0;
      }
      o.require(faithful_p_prime, where(r) + ": no faithful p'-degree witness");
      ++checked;
    }
  }
  o.note << checked << " (group, prime) pairs over A5, S5, A6, PSL(2,7)";
}

void corollary_c(Outcome& o) {
  std::size_t runs = 0;
  for (const auto& spec : default_specs()) {
    for (auto p : kPrimes) {
      o.require_status(check_corollary_C(context(spec), p), Status::Pass);
      ++runs;
    }
  }
  const auto s4 = check_corollary_C(context("S4"), 2);
  const unsigned a = s4.trace["a"];
  const std::uint64_t index = s4.trace["index_p_part"];
  o.require(a == 3 && index == 2, "S4 p=2: a or index 2-part wrong");
  o.note << runs << " runs; S4 p=2: a = " << a << ", index 2-part = " << index;
}

void frobenius_family(Outcome& o) {
  std::ostringstream parts;
  for (auto [q, p, max_n] : {std::tuple{3u, 2u, 4u}, {7u, 3u, 2u}}) {
    for (unsigned n = 1; n <= max_n; ++n) {
      const auto r = check_section3_family(q, p, n);
      o.require_status(r, Status::Pass);
      const std::uint64_t deg = r.witnesses.front()["max_degree_p_part"];
      const std::uint64_t cod = r.witnesses.front()["max_codegree_p_part"];
      o.require(deg == ipow(p, n), where(r) + ": max degree p-part " + std::to_string(deg));
      o.require(cod <= p, where(r) + ": codegree p-part " + std::to_string(cod));
      parts << " (" << q << "," << p << "," << n << "):" << deg << "/" << cod;
    }
  }
  o.note << "deg p-part/cod p-part" << parts.str();
}

void p_group_lemma(Outcome& o) {
  std::vector<std::pair<std::string, std::uint64_t>> groups;
  for (const auto& spec : default_specs()) {
    const auto& G = context(spec).group();
    const auto f = factorize(G.order());
    if (f.size() == 1) groups.emplace_back(spec, f.front().first);
  }
  std::size_t a_one = 0, a_more = 0, converse = 0;
  for (const auto& [spec, p] : groups) {
    const auto r = check_lemma_pgr(context(spec), p);
    o.require_status(r, Status::Pass);
    const unsigned a = r.trace["a"];
    const bool abelian = r.trace["abelian"];
    const std::uint64_t exponent = r.trace["exponent"];
    if (a == 1) {
      ++a_one;
      o.require(abelian, spec + ": a = 1 but not abelian");
    } else {
      ++a_more;
    }
    // The converse is only claimed for abelian groups of exponent p.
    if (abelian && exponent == p) {
      ++converse;
      o.require(a == 1, spec + ": abelian of exponent p with a != 1");
    }
  }
  o.note << groups.size() << " p-groups: " << a_one << " with a = 1 (all abelian), " << a_more
         << " with a > 1 (class and dl bounds), converse checked on " << converse << " of exponent p";
}

void sylow_derived_length(Outcome& o) {
  std::size_t runs = 0, p_solvable = 0, vacuous = 0;
  for (const auto& spec : default_specs()) {
    for (auto p : kPrimes) {
      const auto r = check_corollary_dlP(context(spec), p);
      if (context(spec).group().order() % p != 0) {
        o.require_status(r, Status::NotApplicable);
        continue;
      }
      if (r.status == Status::NotApplicable) {
        ++vacuous;
        continue;
      }
      o.require_status(r, Status::Pass);
      ++runs;
      if (r.trace["p_solvable"] == true) ++p_solvable;
    }
  }
  o.note << runs << " runs with p | |G|, " << p_solvable << " p-solvable (l_p bounds checked), " << vacuous
         << " with a = 0";
}

void minsim(Outcome& o) {
  std::size_t groups = 0;
  for (const auto& spec : default_specs()) {
    const auto& ctx = context(spec);
    if (ctx.radicals(2).nonabelian_part.is_trivial()) continue;
    ++groups;
    for (auto p : kPrimes) o.require_status(check_lemma_minsim(ctx, p), Status::Pass);
  }
  const auto& s5 = context("S5");
  const auto r = check_lemma_minsim(s5, 2);
  const auto& w = r.witnesses.front();
  const Embedding A5 = embed(s5.lattice().members[1]);
  bool restricts = false;
  for (std::size_t i = 0; i < s5.table().size(); ++i) {
    if (s5.table().degree(i) != 5) continue;
    restricts |= restrict(s5.table()[i], A5).to_strings() == w["gamma"].get<std::vector<std::string>>();
  }
  o.require(w["gamma_degree"] == 5 && restricts, "S5 p=2: witness is not a degree-5 row restricted to A5");
  o.note << groups << " groups with nonabelian socle; S5 p=2 gamma(1) = " << w["gamma_degree"].get<int>()
         << ", equals a degree-5 row of S5 on A5";
}

void cross_validation(Outcome& o) {
  std::size_t lattices = 0, halls = 0, sylows = 0;
  for (const auto& spec : default_specs()) {
    const auto& ctx = context(spec);
    const PermGroup& G = ctx.group();
    for (std::uint64_t p : kPrimesA) {
      o.require(sylow(G, p).order() == p_part(G.order(), p), spec + ": Sylow order");
      ++sylows;
    }
    if (G.order() > 200) continue;
    std::set<oracle::ElemSet> got;
    for (const auto& N : ctx.lattice().members) got.insert(oracle::as_set(N));
    o.require(got == oracle::normal_subgroups(G), spec + ": normal lattice differs from oracle");
    ++lattices;
    for (auto p : prime_divisors(G.order())) {
      for (const auto& K : ctx.lattice().members) {
        if (!is_p_solvable(K, p)) continue;
        o.require(hall_p_complement(K, p).order() == p_prime_part(K.order(), p), spec + ": Hall order");
        ++halls;
      }
    }
  }
  o.note << lattices << " lattices match the oracle, " << halls << " Hall complements, " << sylows
         << " Sylow subgroups exact";
}

void determinism(Outcome& o) {
  CorpusOptions first;
  first.jobs = 1;
  CorpusOptions second = first;
  second.jobs = 4;
  const std::string a = run_corpus(first).to_json(false).dump();
  const std::string b = run_corpus(second).to_json(false).dump();
  o.require(a == b, "corpus JSON differs between runs");
  o.note << "two full runs (1 and 4 workers), " << a.size() << " bytes each, " << (a == b ? "identical" : "differ");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"table engine soundness", table_soundness},
      {"kernel descent and radical bound", theorem_a},
      {"constructive descent traces", constructive_descent},
      {"faithful p'-degree character when Sol = 1", corollary_b},
      {"index bound from codegrees", corollary_c},
      {"Frobenius product family", frobenius_family},
      {"p-group codegree lemma", p_group_lemma},
      {"Sylow derived length and p-length", sylow_derived_length},
      {"diagonal character extends to its stabilizer", minsim},
      {"cross-validation against oracles", cross_validation},
      {"deterministic corpus reports", determinism},
  };
  bool all = true;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.ok = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    all &= o.ok;
    std::cout << (o.ok ? "PASS" : "FAIL") << "  " << std::setw(2) << i + 1 << "  " << criteria[i].first << ": "
              << o.note.str() << '\n';
    for (const auto& p : o.problems) std::cout << "        " << p << '\n';
    std::cout.flush();
  }
  return all ? 0 : 1;
}
