#include "charkernel/corpus.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <condition_variable>
#include <mutex>
#include <thread>

#include "charkernel/errors.hpp"
#include "charkernel/groupspec.hpp"
#include "charkernel/numtheory.hpp"
#include "charkernel/structure.hpp"

namespace charkernel {

const std::vector<CorpusEntry>& corpus_entries() {
  static const std::vector<CorpusEntry> entries = [] {
    std::vector<CorpusEntry> e;
    for (int n = 1; n <= 32; ++n) e.push_back({"C" + std::to_string(n)});
    for (const char* s : {"D8", "D16", "Q8", "Q16", "heis(3)", "S3", "S4", "S5", "A4", "A5", "SL(2,3)",
                          "GL(2,3)", "PSL(2,7)", "frob(3,2)", "frob(5,2)", "frob(7,3)", "frob(13,3)",
                          "frob(3,2)xfrob(3,2)", "frob(3,2)xfrob(3,2)xfrob(3,2)",
                          "frob(3,2)xfrob(3,2)xfrob(3,2)xfrob(3,2)", "frob(7,3)xfrob(7,3)", "S3xC2", "S4xC2",
                          "A5xC2", "A5xS3"}) {
      e.push_back({s});
    }
    for (const char* s : {"S6", "A6", "SL(2,5)", "wr2(A5)"}) e.push_back({s, true});
    return e;
  }();
  return entries;
}

namespace {

bool is_simple(const PermGroup& G) {
  if (G.order() == 1) return false;
  const Subgroup whole = G.whole();
  for (const auto& cls : G.classes()) {
    if (cls.representative == 0) continue;
    const ElemIdx x[] = {cls.representative};
    if (!normal_closure(whole, x).is_whole()) return false;
  }
  return true;
}

bool is_frobenius_power(std::string_view spec) {
  try {
    const GroupSpec s = parse_spec(spec);
    return s.factors.front().kind == SpecAtom::Kind::Frobenius &&
           std::all_of(s.factors.begin(), s.factors.end(), [&](const SpecAtom& a) { return a == s.factors.front(); });
  } catch (const SpecError&) {
    return false;
  }
}

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::string canonical_spec(std::string_view s) {
  try {
    return render(parse_spec(s));
  } catch (const SpecError&) {
    return std::string(s);
  }
}

bool compare(std::uint64_t lhs, const std::string& op, std::uint64_t rhs) {
  if (op == "<") return lhs < rhs;
  if (op == "<=") return lhs <= rhs;
  if (op == ">") return lhs > rhs;
  if (op == ">=") return lhs >= rhs;
  if (op == "!=") return lhs != rhs;
  return lhs == rhs;
}

}  // namespace

std::vector<std::string> group_tags(const PermGroup& G, std::string_view spec) {
  std::vector<std::string> tags;
  const Subgroup whole = G.whole();
  if (G.is_abelian()) tags.push_back("abelian");
  if (G.order() > 1 && factorize(G.order()).size() == 1) tags.push_back("p-group");
  if (nilpotency_class(whole)) tags.push_back("nilpotent");
  if (is_solvable(whole)) tags.push_back("solvable");
  if (is_simple(G)) tags.push_back("simple");
  if (is_frobenius_power(spec)) tags.push_back("frobenius-power");
  return tags;
}

// ---------------------------------------------------------------------------
// Filter

CorpusFilter CorpusFilter::parse(std::string_view text) {
  CorpusFilter f;
  std::vector<std::string> parts;
  std::string cur;
  int depth = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] == '(') ++depth;
    if (text[i] == ')') --depth;
    if (depth == 0 && (text[i] == ',' || (text[i] == '&' && i + 1 < text.size() && text[i + 1] == '&'))) {
      if (text[i] == '&') ++i;
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += text[i];
    }
  }
  parts.push_back(cur);

  std::size_t offset = 0;
  for (const auto& raw : parts) {
    const std::string clause = trim(raw);
    const std::size_t at = offset;
    offset += raw.size() + 1;
    if (clause.empty()) {
      if (parts.size() == 1) break;
      throw SpecError("empty filter clause", at);
    }
    std::size_t k = 0;
    while (k < clause.size() && std::isalpha(static_cast<unsigned char>(clause[k]))) ++k;
    Clause c;
    c.key = clause.substr(0, k);
    std::transform(c.key.begin(), c.key.end(), c.key.begin(), [](unsigned char ch) { return std::tolower(ch); });
    std::string rest = trim(std::string_view(clause).substr(k));
    for (const char* op : {"<=", ">=", "!=", "==", "<", ">", "="}) {
      if (rest.rfind(op, 0) == 0) {
        c.op = op;
        break;
      }
    }
    if (c.op.empty()) throw SpecError("expected a comparison in filter clause '" + clause + "'", at);
    c.value = trim(std::string_view(rest).substr(c.op.size()));
    if (c.op == "==") c.op = "=";
    if (c.value.empty()) throw SpecError("missing value in filter clause '" + clause + "'", at);
    if (c.key == "order" || c.key == "degree") {
      if (!std::all_of(c.value.begin(), c.value.end(), [](unsigned char ch) { return std::isdigit(ch); })) {
        throw SpecError("'" + c.key + "' needs a number", at);
      }
    } else if (c.key == "tag" || c.key == "spec") {
      if (c.op != "=" && c.op != "!=") throw SpecError("'" + c.key + "' supports only = and !=", at);
      if (c.key == "spec") c.value = canonical_spec(c.value);
    } else {
      throw SpecError("unknown filter key '" + c.key + "'", at);
    }
    f.clauses_.push_back(std::move(c));
  }
  return f;
}

bool CorpusFilter::needs_tags() const {
  return std::any_of(clauses_.begin(), clauses_.end(), [](const Clause& c) { return c.key == "tag"; });
}

std::optional<bool> CorpusFilter::pre_match(std::string_view spec, std::uint64_t order, std::size_t degree) const {
  const std::string canon = canonical_spec(spec);
  for (const auto& c : clauses_) {
    bool ok = true;
    if (c.key == "order") ok = compare(order, c.op, std::stoull(c.value));
    else if (c.key == "degree") ok = compare(degree, c.op, std::stoull(c.value));
    else if (c.key == "spec") ok = (canon == c.value) == (c.op == "=");
    if (!ok) return false;
  }
  if (needs_tags()) return std::nullopt;
  return true;
}

bool CorpusFilter::matches(std::string_view spec, std::uint64_t order, std::size_t degree,
                           const std::vector<std::string>& tags) const {
  if (pre_match(spec, order, degree) == false) return false;
  for (const auto& c : clauses_) {
    if (c.key != "tag") continue;
    const bool has = std::find(tags.begin(), tags.end(), c.value) != tags.end();
    if (has != (c.op == "=")) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Runner

Json CorpusResult::to_json(bool with_timing) const {
  Json reps = Json::array();
  for (const auto& r : reports) reps.push_back(r.to_json(with_timing));
  return Json{{"summary",
               Json{{"entries", entries},
                    {"reports", reports.size()},
                    {"pass", pass},
                    {"fail", fail},
                    {"n/a", not_applicable},
                    {"error", error}}},
              {"reports", std::move(reps)}};
}

std::vector<VerificationReport> verify_group(const GroupContext& ctx, const std::vector<std::string>& theorems,
                                             const std::vector<std::uint64_t>& primes, double time_budget) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto& ids = theorems.empty() ? theorem_ids() : theorems;
  std::vector<VerificationReport> out;
  auto run = [&](const std::string& id, std::optional<std::uint64_t> p) {
    const double spent = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_budget > 0 && spent > time_budget) {
      VerificationReport r;
      r.spec = ctx.spec();
      r.order = ctx.group().order();
      r.prime = p;
      r.theorem = id;
      r.status = Status::Error;
      r.message = "time budget exceeded";
      out.push_back(std::move(r));
      return;
    }
    out.push_back(run_check(ctx, id, p));
  };
  for (const auto& id : ids) {
    if (theorem_uses_prime(id)) {
      for (auto p : primes) run(id, p);
    } else {
      run(id, std::nullopt);
    }
  }
  return out;
}

namespace {

struct Job {
  std::string spec;
  std::vector<VerificationReport> reports;
  bool selected = true;
  bool done = false;
};

void run_job(Job& job, const CorpusOptions& options, const CorpusFilter& filter) {
  const auto& ids = options.theorems.empty() ? theorem_ids() : options.theorems;
  try {
    PermGroup G = build(job.spec, options.element_cap);
    if (filter.needs_tags()) {
      job.selected = filter.matches(job.spec, G.order(), G.degree(), group_tags(G, job.spec));
      if (!job.selected) return;
    }
    GroupContext ctx(std::move(G), job.spec, options.table);
    job.reports = verify_group(ctx, ids, options.primes, options.time_budget);
  } catch (const Error& e) {
    // The group itself could not be built: one error report per check.
    std::uint64_t order = 0;
    try {
      order = predicted_order(parse_spec(job.spec));
    } catch (const Error&) {
    }
    for (const auto& id : ids) {
      std::vector<std::optional<std::uint64_t>> ps;
      if (theorem_uses_prime(id)) {
        for (auto p : options.primes) ps.emplace_back(p);
      } else {
        ps.emplace_back(std::nullopt);
      }
      for (auto p : ps) {
        VerificationReport r;
        r.spec = job.spec;
        r.order = order;
        r.prime = p;
        r.theorem = id;
        r.status = Status::Error;
        r.message = e.what();
        job.reports.push_back(std::move(r));
      }
    }
  }
}

}  // namespace

CorpusResult run_corpus(const CorpusOptions& options,
                        const std::function<void(const std::vector<VerificationReport>&)>& on_entry) {
  const CorpusFilter filter = CorpusFilter::parse(options.filter);
  for (const auto& id : options.theorems) {
    if (std::find(theorem_ids().begin(), theorem_ids().end(), id) == theorem_ids().end()) {
      throw PreconditionError("unknown theorem id '" + id + "'");
    }
  }
  for (auto p : options.primes) {
    if (!is_prime(p)) throw PreconditionError(std::to_string(p) + " is not prime");
  }

  std::vector<Job> jobs;
  for (const auto& e : corpus_entries()) {
    if (e.gated && !options.extended) continue;
    const GroupSpec s = parse_spec(e.spec);
    if (filter.pre_match(e.spec, predicted_order(s), predicted_degree(s)) == false) continue;
    jobs.push_back(Job{e.spec, {}, true, false});
  }

  std::mutex mu;
  std::condition_variable cv;
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      run_job(jobs[i], options, filter);
      std::lock_guard lock(mu);
      jobs[i].done = true;
      cv.notify_all();
    }
  };
  const unsigned n_threads = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(jobs.size())));
  std::vector<std::thread> threads;
  if (n_threads > 1) {
    for (unsigned t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  }

  CorpusResult result;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    if (n_threads > 1) {
      std::unique_lock lock(mu);
      cv.wait(lock, [&] { return jobs[i].done; });
    } else {
      run_job(jobs[i], options, filter);
    }
    if (!jobs[i].selected) continue;
    ++result.entries;
    if (on_entry) on_entry(jobs[i].reports);
    for (auto& r : jobs[i].reports) {
      switch (r.status) {
        case Status::Pass: ++result.pass; break;
        case Status::Fail: ++result.fail; break;
        case Status::NotApplicable: ++result.not_applicable; break;
        case Status::Error: ++result.error; break;
      }
      result.reports.push_back(std::move(r));
    }
  }
  for (auto& t : threads) t.join();
  return result;
}

}  // namespace charkernel
