#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "charkernel/cyclotomic.hpp"
#include "charkernel/perm.hpp"

namespace charkernel {

/// A function on the conjugacy classes of a group, one value per class in
/// the order of PermGroup::classes().
class ClassFunction {
 public:
  ClassFunction(PermGroup group, std::vector<Cyclotomic> values);

  static ClassFunction trivial(const PermGroup& G);
  static ClassFunction zero(const PermGroup& G);

  const PermGroup& group() const { return group_; }
  const std::vector<Cyclotomic>& values() const { return values_; }
  const Cyclotomic& operator[](std::size_t cls) const { return values_[cls]; }
  const Cyclotomic& at(ElemIdx g) const { return values_[group_.class_of(g)]; }

  /// Value at the identity as an integer; throws if it is not one.
  Integer degree() const;
  ClassFunction conjugate() const;
  std::vector<std::string> to_strings() const;

  ClassFunction& operator+=(const ClassFunction& o);
  ClassFunction& operator-=(const ClassFunction& o);
  friend ClassFunction operator+(ClassFunction a, const ClassFunction& b) { return a += b; }
  friend ClassFunction operator-(ClassFunction a, const ClassFunction& b) { return a -= b; }
  friend ClassFunction operator*(ClassFunction a, const Rational& q);
  friend bool operator==(const ClassFunction& a, const ClassFunction& b);

 private:
  PermGroup group_;
  std::vector<Cyclotomic> values_;
};

/// Burnside class multiplication coefficients
/// a(i, j, k) = #{(x, y) ∈ C_i × C_j : x y = z_k} for a fixed z_k ∈ C_k.
class ClassConstants {
 public:
  ClassConstants(std::size_t classes, std::vector<std::uint64_t> data)
      : r_(classes), data_(std::move(data)) {}
  std::size_t classes() const { return r_; }
  std::uint64_t operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * r_ + j) * r_ + k];
  }
  friend bool operator==(const ClassConstants&, const ClassConstants&) = default;

 private:
  std::size_t r_;
  std::vector<std::uint64_t> data_;
};

ClassConstants class_constants(const PermGroup& G);
/// Same, with z_k taken from `targets` (one element per class, in class order).
ClassConstants class_constants(const PermGroup& G, const std::vector<ElemIdx>& targets);

struct CharacterTable {
  PermGroup group;
  /// Trivial character first, then by (degree, lexicographic values).
  std::vector<ClassFunction> irreducibles;
  std::vector<std::uint64_t> class_sizes;
  std::vector<ElemIdx> representatives;
  std::vector<unsigned> element_orders;
  std::vector<std::size_t> inverse_class;
  /// Power maps for each prime dividing |G|.
  std::map<std::uint64_t, std::vector<std::size_t>> power_maps;
  std::uint64_t exponent = 1;
  /// The finite-field prime the table was computed over.
  std::uint64_t modulus = 0;

  std::size_t size() const { return irreducibles.size(); }
  const ClassFunction& operator[](std::size_t i) const { return irreducibles[i]; }
  std::uint64_t degree(std::size_t i) const;
};

struct TableOptions {
  std::size_t class_cap = 400;
  /// Retries with the next admissible prime after a failed split.
  unsigned max_attempts = 8;
  /// Start the prime search here instead of at the smallest admissible prime
  /// (0 = default). Used by tests to force a different field.
  std::uint64_t first_prime = 0;
};

/// Exact character table by the Dixon–Schneider method.
CharacterTable character_table(const PermGroup& G, const TableOptions& options = {});

/// Smallest prime ℓ ≡ 1 (mod exponent) with ℓ > 2·sqrt(order), at least `from`.
std::uint64_t dixon_prime(std::uint64_t order, std::uint64_t exponent, std::uint64_t from = 0);

struct OrthogonalityReport {
  bool rows = false;     // [χ_i, χ_j] = δ_ij
  bool columns = false;  // Σ_χ χ(g_i) conj χ(g_j) = δ_ij |C_G(g_i)|
  bool degree_sum = false;
  bool square = false;   // #rows = #classes
  bool ok() const { return rows && columns && degree_sum && square; }
};

/// Exact check of both orthogonality relations and Σ χ(1)² = |G|.
OrthogonalityReport check_orthogonality(const CharacterTable& table);

}  // namespace charkernel
