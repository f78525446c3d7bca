#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

#include "charkernel/corpus.hpp"
#include "charkernel/groupspec.hpp"
#include "charkernel/verify.hpp"

namespace charkernel::testkit {

/// Built once per process and shared between tests.
inline const GroupContext& context(const std::string& spec) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<GroupContext>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[spec];
  if (!slot) slot = std::make_unique<GroupContext>(build(spec), spec);
  return *slot;
}

inline const CharacterTable& table_of(const std::string& spec) { return context(spec).table(); }

inline std::vector<std::string> default_specs() {
  std::vector<std::string> out;
  for (const auto& e : corpus_entries()) {
    if (!e.gated) out.push_back(e.spec);
  }
  return out;
}

inline std::vector<std::string> specs_up_to(std::uint64_t order) {
  std::vector<std::string> out;
  for (const auto& s : default_specs()) {
    if (predicted_order(parse_spec(s)) <= order) out.push_back(s);
  }
  return out;
}

/// Rows of the table satisfying pred.
inline std::vector<std::size_t> rows_where(const CharacterTable& T,
                                           const std::function<bool(std::size_t)>& pred) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < T.size(); ++i) {
    if (pred(i)) out.push_back(i);
  }
  return out;
}

inline std::vector<std::uint64_t> degrees(const CharacterTable& T) {
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i < T.size(); ++i) out.push_back(T.degree(i));
  return out;
}

inline ElemIdx elem(const PermGroup& G, std::string_view cycles) {
  return G.index_of(Permutation::from_cycles(G.degree(), cycles));
}

inline Subgroup subgroup_of(const PermGroup& G, std::initializer_list<std::string_view> gens) {
  std::vector<ElemIdx> xs;
  for (auto g : gens) xs.push_back(elem(G, g));
  return generate_subgroup(G, xs);
}

}  // namespace charkernel::testkit
