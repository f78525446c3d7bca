#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "charkernel/perm.hpp"
#include "charkernel/verify.hpp"

namespace charkernel {

struct CorpusEntry {
  std::string spec;
  /// Only run with --extended.
  bool gated = false;
};

/// Curated groups in run order; gated entries included.
const std::vector<CorpusEntry>& corpus_entries();

/// abelian, nilpotent, solvable, simple, p-group, frobenius-power
std::vector<std::string> group_tags(const PermGroup& G, std::string_view spec);

/// Conjunction of clauses separated by ',' or "&&":
///   order<=60   degree>10   tag=simple   spec=S4   tag!=abelian
class CorpusFilter {
 public:
  CorpusFilter() = default;
  static CorpusFilter parse(std::string_view text);

  /// Decides on spec, order and degree alone; nullopt if a tag clause is needed.
  std::optional<bool> pre_match(std::string_view spec, std::uint64_t order, std::size_t degree) const;
  bool matches(std::string_view spec, std::uint64_t order, std::size_t degree,
               const std::vector<std::string>& tags) const;
  bool needs_tags() const;

 private:
  struct Clause {
    std::string key;  // order, degree, tag, spec
    std::string op;   // < <= > >= = !=
    std::string value;
  };
  std::vector<Clause> clauses_;
};

struct CorpusOptions {
  std::string filter;
  std::vector<std::uint64_t> primes{2, 3, 5, 7};
  /// Empty = all theorem ids.
  std::vector<std::string> theorems;
  bool extended = false;
  std::size_t element_cap = default_element_cap();
  unsigned jobs = 1;
  /// Seconds per entry; 0 = unlimited. Checks started after the budget is
  /// spent are reported as errors.
  double time_budget = 0;
  TableOptions table;
};

struct CorpusResult {
  std::vector<VerificationReport> reports;  // entry order, then theorem, then prime
  std::size_t entries = 0;
  std::size_t pass = 0, fail = 0, not_applicable = 0, error = 0;

  bool ok() const { return fail == 0; }
  Json to_json(bool with_timing = true) const;
};

/// Runs every selected (entry, theorem, prime) check. Entries are processed
/// in parallel; output order does not depend on scheduling. on_entry is
/// called once per finished entry, in entry order, from the calling thread.
CorpusResult run_corpus(const CorpusOptions& options,
                        const std::function<void(const std::vector<VerificationReport>&)>& on_entry = {});

/// The checks of one group, in the same order run_corpus uses.
std::vector<VerificationReport> verify_group(const GroupContext& ctx, const std::vector<std::string>& theorems,
                                             const std::vector<std::uint64_t>& primes, double time_budget = 0);

}  // namespace charkernel
