#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "charkernel/charops.hpp"
#include "charkernel/errors.hpp"
#include "charkernel/chartab.hpp"
#include "charkernel/perm.hpp"
#include "charkernel/structure.hpp"

namespace charkernel {

using Json = nlohmann::ordered_json;

/// Everything the checks need about one group, computed on first use and
/// then shared. Safe to use from several threads.
class GroupContext {
 public:
  GroupContext(PermGroup group, std::string spec, TableOptions options = {});

  const PermGroup& group() const { return group_; }
  const std::string& spec() const { return spec_; }
  const CharacterTable& table() const;
  const NormalLattice& lattice() const;
  const RadicalReport& radicals(std::uint64_t p) const;
  const Subgroup& kernel(std::size_t row) const;
  const Codegree& codegree(std::size_t row) const;
  /// max over Irr(G) of the p-adic valuation of cod(χ).
  unsigned max_codegree_exponent(std::uint64_t p) const;

 private:
  PermGroup group_;
  std::string spec_;
  TableOptions options_;
  mutable std::once_flag table_once_, lattice_once_, kernels_once_;
  mutable std::unique_ptr<CharacterTable> table_;
  mutable std::unique_ptr<NormalLattice> lattice_;
  mutable std::vector<Subgroup> kernels_;
  mutable std::vector<Codegree> codegrees_;
  mutable std::mutex radicals_mutex_;
  mutable std::map<std::uint64_t, std::unique_ptr<RadicalReport>> radicals_;
};

enum class Status { Pass, Fail, NotApplicable, Error };
const char* to_string(Status s);

struct VerificationReport {
  std::string spec;
  std::uint64_t order = 0;
  std::optional<std::uint64_t> prime;
  std::string theorem;
  Status status = Status::Pass;
  /// Why the check failed, was skipped or errored. Empty on pass.
  std::string message;
  Json witnesses = Json::array();
  Json trace = Json::object();
  double millis = 0;

  Json to_json(bool with_timing = true) const;
};

/// One asserted identity of the constructive descent step.
struct StepCheck {
  std::string name;
  bool ok;
};

/// Thrown when an asserted step of the constructive descent does not hold.
class ProofStepError : public InternalError {
 public:
  explicit ProofStepError(const std::string& step)
      : InternalError("proof step failed: " + step), step_(step) {}
  const std::string& step() const noexcept { return step_; }

 private:
  std::string step_;
};

/// Audit record of the constructive descent from χ to ψ in the p-solvable case.
struct TheoremBTrace {
  explicit TheoremBTrace(const PermGroup& G);

  std::uint64_t prime = 0;
  std::size_t chi = 0;  // table row
  std::uint64_t chi_degree = 0;
  Subgroup K;            // Ker χ
  Subgroup Q;            // Hall p-complement of K
  Subgroup N;            // N_G(Q)
  Subgroup NK;           // N_K(Q)
  Subgroup H;            // maximal subgroup containing N
  Subgroup J;            // Ker θ
  std::uint64_t index_GH = 0;
  ClassFunction theta;   // χ restricted to H
  ClassFunction induced; // θ^G
  ClassFunction delta;   // θ^G - χ
  std::vector<std::pair<std::size_t, std::uint64_t>> delta_constituents;  // (row, multiplicity)
  std::uint64_t delta_degree = 0;
  std::size_t psi = 0;
  std::uint64_t psi_degree = 0;
  Subgroup L;            // Ker ψ
  std::vector<StepCheck> checks;

  Json to_json() const;
};

/// Runs the descent literally. Throws PreconditionError unless χ has p'-degree
/// and Ker χ is p-solvable but not p-nilpotent; throws ProofStepError if an
/// asserted step fails.
TheoremBTrace construct_theorem_B_witness(const GroupContext& ctx, std::uint64_t p, std::size_t chi);

/// Rows χ of p'-degree whose kernel is p-solvable and not p-nilpotent.
std::vector<std::size_t> theorem_B_applicable(const GroupContext& ctx, std::uint64_t p);

struct MinsimWitness {
  explicit MinsimWitness(const PermGroup& G);

  Subgroup M;
  std::vector<Subgroup> factors;  // simple direct factors S_i of M
  std::size_t alpha = 0;          // row of Irr(S_1)
  std::uint64_t alpha_degree = 0;
  ClassFunction gamma;            // on M
  Subgroup stabilizer;            // G_γ
  std::size_t xi = 0;             // row of Irr(G_γ) restricting to γ
  std::uint64_t xi_degree = 0;

  Json to_json() const;
};

VerificationReport check_theorem_A(const GroupContext& ctx, std::uint64_t p);
VerificationReport check_theorem_B(const GroupContext& ctx, std::uint64_t p);
VerificationReport check_corollary_B(const GroupContext& ctx, std::uint64_t p);
VerificationReport check_corollary_C(const GroupContext& ctx, std::uint64_t p);
VerificationReport check_lemma_minsim(const GroupContext& ctx, std::uint64_t p);
VerificationReport check_lemma_pgr(const GroupContext& ctx, std::uint64_t p);
VerificationReport check_corollary_dlP(const GroupContext& ctx, std::uint64_t p);
/// G must be a direct product of n copies of frob(q,p); n/a otherwise.
VerificationReport check_section3_family(const GroupContext& ctx);
VerificationReport check_section3_family(std::uint64_t q, std::uint64_t p, unsigned n);
VerificationReport check_degree_le_codegree(const GroupContext& ctx);

/// Theorem ids accepted by run_check, in canonical order.
const std::vector<std::string>& theorem_ids();
/// True for checks that take a prime.
bool theorem_uses_prime(const std::string& id);
/// Dispatches by id and wraps errors into an "error" report with timing.
VerificationReport run_check(const GroupContext& ctx, const std::string& id, std::optional<std::uint64_t> p);

/// Exact forms of the logarithmic bounds (a ≥ 1).
bool within_log2_plus_2(unsigned value, std::uint64_t a);     // value ≤ log2(a) + 2
bool within_2log2_plus_3(unsigned value, std::uint64_t a);    // value ≤ 2 log2(a) + 3

Json subgroup_json(const Subgroup& H);

}  // namespace charkernel
