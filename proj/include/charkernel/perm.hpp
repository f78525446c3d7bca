#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace charkernel {

using Point = std::uint16_t;
using ElemIdx = std::uint32_t;

/// Element cap used by generate() when none is given. Reads
/// CHARKERNEL_ELEMENT_CAP once; falls back to 20000.
std::size_t default_element_cap();

/// A permutation of {0, ..., n-1}. Rendered and parsed 1-based in cycle
/// notation. Composition is right-to-left: (p * q)(i) = p(q(i)).
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<Point> images);

  static Permutation identity(std::size_t degree);
  /// Parses "(1,2,3)(4,5)"; "()" is the identity. Points are 1-based.
  static Permutation from_cycles(std::size_t degree, std::string_view text);
  static Permutation from_cycles(std::size_t degree,
                                 const std::vector<std::vector<std::size_t>>& cycles);

  std::size_t degree() const { return images_.size(); }
  Point operator()(std::size_t i) const { return images_[i]; }
  std::span<const Point> images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;
  std::string to_string() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend std::strong_ordering operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Point> images_;
};

struct ConjugacyClass {
  ElemIdx representative;        // smallest element index in the class
  std::vector<ElemIdx> members;  // increasing
  std::size_t size() const { return members.size(); }
};

class Subgroup;

namespace detail {
struct GroupData;
struct GeneratorCache;
}

/// A finite permutation group with all of its elements enumerated.
///
/// Elements are stored sorted lexicographically by image vector, so the
/// identity is always index 0 and indices do not depend on the generators.
/// Copies share the same immutable state; lazily built caches (classes,
/// multiplication table) are guarded and safe to fill from several threads.
class PermGroup {
 public:
  static PermGroup generate(std::size_t degree, std::vector<Permutation> gens,
                            std::size_t element_cap = default_element_cap());
  /// Builds a group from an already closed element list (any order).
  static PermGroup from_elements(std::size_t degree, std::vector<Permutation> elements);

  std::size_t degree() const;
  std::uint64_t order() const;
  const std::vector<Permutation>& generators() const;
  std::vector<ElemIdx> generator_indices() const;

  Permutation element(ElemIdx i) const;
  std::span<const Point> images(ElemIdx i) const;
  std::optional<ElemIdx> find(std::span<const Point> images) const;
  ElemIdx index_of(const Permutation& p) const;

  static constexpr ElemIdx identity() { return 0; }
  ElemIdx mul(ElemIdx a, ElemIdx b) const;
  ElemIdx inv(ElemIdx a) const;
  /// g * x * g^-1
  ElemIdx conj(ElemIdx x, ElemIdx g) const;
  /// x^-1 y^-1 x y
  ElemIdx commutator(ElemIdx x, ElemIdx y) const;
  ElemIdx pow(ElemIdx a, long long e) const;
  unsigned element_order(ElemIdx a) const;
  /// Least common multiple of the element orders.
  std::uint64_t exponent() const;

  const std::vector<ConjugacyClass>& classes() const;
  std::size_t class_count() const { return classes().size(); }
  std::size_t class_of(ElemIdx a) const;

  Subgroup whole() const;
  Subgroup trivial() const;

  bool is_abelian() const;
  bool same_as(const PermGroup& other) const { return data_ == other.data_; }

 private:
  explicit PermGroup(std::shared_ptr<const detail::GroupData> data) : data_(std::move(data)) {}
  std::shared_ptr<const detail::GroupData> data_;
};

/// A subgroup of an ambient PermGroup held as an explicit element set.
class Subgroup {
 public:
  /// members must be closed under the ambient product; checked unless trusted.
  Subgroup(PermGroup ambient, std::vector<ElemIdx> members, bool trusted = false);

  const PermGroup& ambient() const { return ambient_; }
  std::uint64_t order() const { return members_.size(); }
  const std::vector<ElemIdx>& elements() const { return members_; }
  bool contains(ElemIdx a) const { return (bits_[a >> 6] >> (a & 63)) & 1u; }
  const std::vector<std::uint64_t>& bits() const { return bits_; }

  /// Greedy generating set: each generator is the smallest element outside
  /// the span of the previous ones. Deterministic.
  const std::vector<ElemIdx>& generators() const;

  bool is_trivial() const { return members_.size() == 1; }
  bool is_whole() const { return members_.size() == ambient_.order(); }
  bool is_subset_of(const Subgroup& other) const;
  bool is_proper_subset_of(const Subgroup& other) const {
    return order() < other.order() && is_subset_of(other);
  }
  Subgroup intersect(const Subgroup& other) const;

  /// The subgroup as a group in its own right. Its element i is elements()[i].
  PermGroup as_group() const;

  /// "(1,2)(3,4)" style generator strings.
  std::vector<std::string> generator_strings() const;

  friend bool operator==(const Subgroup& a, const Subgroup& b) {
    return a.ambient_.same_as(b.ambient_) && a.bits_ == b.bits_;
  }

 private:
  PermGroup ambient_;
  std::vector<ElemIdx> members_;
  std::vector<std::uint64_t> bits_;
  std::shared_ptr<detail::GeneratorCache> generators_;
};

Permutation multiply(const Permutation& p, const Permutation& q);

/// Smallest subgroup of G containing gens.
Subgroup generate_subgroup(const PermGroup& G, std::span<const ElemIdx> gens);
/// Subgroup generated by H and the extra elements.
Subgroup extend_subgroup(const Subgroup& H, std::span<const ElemIdx> extra);
/// Same, but gives up (nullopt) as soon as the result would exceed cap elements.
std::optional<Subgroup> extend_subgroup_bounded(const Subgroup& H, std::span<const ElemIdx> extra,
                                                std::uint64_t cap);
Subgroup join(const Subgroup& A, const Subgroup& B);
/// Smallest subgroup of H containing xs and normalized by H.
Subgroup normal_closure(const Subgroup& H, std::span<const ElemIdx> xs);

Subgroup centralizer(const PermGroup& G, ElemIdx g);
/// N_G(H) where G = H.ambient().
Subgroup normalizer(const Subgroup& H);
/// N_within(H) = N_G(H) ∩ within.
Subgroup normalizer(const Subgroup& within, const Subgroup& H);
Subgroup center(const PermGroup& G);
bool is_normal(const Subgroup& H);
/// H normal in K, both in the same ambient group, H ≤ K.
bool is_normal_in(const Subgroup& H, const Subgroup& K);
/// Largest normal subgroup of the ambient group contained in H.
Subgroup core(const Subgroup& H);

struct Quotient {
  PermGroup group;                    // acts on the cosets of N
  std::vector<ElemIdx> projection;    // ambient element -> quotient element
  Subgroup kernel;

  ElemIdx project(ElemIdx g) const { return projection[g]; }
  /// Preimage in the ambient group of a subgroup of the quotient.
  Subgroup preimage(const Subgroup& X) const;
  /// Image of a subgroup of the ambient group.
  Subgroup image(const Subgroup& H) const;
};

/// G/N realized as G acting on the cosets of N by left multiplication.
Quotient quotient(const PermGroup& G, const Subgroup& N);

/// A Sylow p-subgroup of H (trivial if p does not divide |H|).
Subgroup sylow(const Subgroup& H, std::uint64_t p);
Subgroup sylow(const PermGroup& G, std::uint64_t p);

/// Maps class i to the class of rep_i^s.
std::vector<std::size_t> power_map(const PermGroup& G, long long s);

}  // namespace charkernel
