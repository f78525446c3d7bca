#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "charkernel/perm.hpp"

namespace charkernel {

struct GroupSpec;

/// One factor of a product: C6, frob(7,3), SL(2,5), wr2(A5), ...
struct SpecAtom {
  enum class Kind { Cyclic, Dihedral, Quaternion, Symmetric, Alternating, Frobenius, Heisenberg, SL, GL, PSL, Wreath2 };
  Kind kind;
  std::vector<std::uint64_t> args;     // numeric arguments in source order
  std::shared_ptr<const GroupSpec> inner;  // wr2 only
};

/// spec := term { "x" term }
struct GroupSpec {
  std::vector<SpecAtom> factors;
};

/// Parses a spec. Names are case-insensitive and whitespace is ignored.
/// Throws SpecError carrying the offending position.
GroupSpec parse_spec(std::string_view text);
/// Canonical text, e.g. "S3xC2", "frob(7,3)", "wr2(A5)". parse(render(s)) == s.
std::string render(const GroupSpec& spec);
std::string render(const SpecAtom& atom);
/// Indented tree dump for `charkernel parse`.
std::string dump_ast(const GroupSpec& spec);

bool operator==(const GroupSpec& a, const GroupSpec& b);
bool operator==(const SpecAtom& a, const SpecAtom& b);

/// Closed-form order and permutation degree of the construction. Also
/// validates the arguments (throws SpecError).
std::uint64_t predicted_order(const GroupSpec& spec);
std::size_t predicted_degree(const GroupSpec& spec);

/// Builds the permutation group and checks its order against the prediction.
PermGroup build(const GroupSpec& spec, std::size_t element_cap = default_element_cap());
PermGroup build(std::string_view text, std::size_t element_cap = default_element_cap());

}  // namespace charkernel
