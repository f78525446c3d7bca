#include "charkernel/perm.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <deque>
#include <mutex>
#include <numeric>
#include <unordered_set>

#include "charkernel/errors.hpp"
#include "charkernel/numtheory.hpp"

namespace charkernel {

namespace {

constexpr ElemIdx kEmptySlot = 0xFFFFFFFFu;
// Groups up to this order get a full multiplication table on first use.
constexpr std::size_t kMulTableLimit = 2048;

std::uint64_t hash_images(std::span<const Point> images) {
  std::uint64_t h = 1469598103934665603ull;
  for (Point p : images) {
    h ^= p;
    h *= 1099511628211ull;
  }
  return h ^ (h >> 29);
}

struct PermHash {
  std::size_t operator()(const Permutation& p) const { return hash_images(p.images()); }
};

}  // namespace

std::size_t default_element_cap() {
  static const std::size_t cap = [] {
    if (const char* env = std::getenv("CHARKERNEL_ELEMENT_CAP")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(env, &end, 10);
      if (end != env && v > 0) return static_cast<std::size_t>(v);
    }
    return std::size_t{20000};
  }();
  return cap;
}

// ---------------------------------------------------------------------------
// Permutation

Permutation::Permutation(std::vector<Point> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (Point p : images_) {
    if (p >= images_.size() || seen[p]) {
      throw StructuralError("image vector is not a bijection");
    }
    seen[p] = true;
  }
}

Permutation Permutation::identity(std::size_t degree) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

Permutation Permutation::from_cycles(std::size_t degree,
                                     const std::vector<std::vector<std::size_t>>& cycles) {
  std::vector<Point> im(degree);
  std::iota(im.begin(), im.end(), Point{0});
  std::vector<bool> used(degree, false);
  for (const auto& cyc : cycles) {
    for (std::size_t k = 0; k < cyc.size(); ++k) {
      std::size_t a = cyc[k];
      std::size_t b = cyc[(k + 1) % cyc.size()];
      if (a < 1 || a > degree || b < 1 || b > degree) {
        throw StructuralError("cycle point out of range");
      }
      if (used[a - 1]) throw StructuralError("point repeated in cycles");
      used[a - 1] = true;
      im[a - 1] = static_cast<Point>(b - 1);
    }
  }
  return Permutation(std::move(im));
}

Permutation Permutation::from_cycles(std::size_t degree, std::string_view text) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw StructuralError("expected '(' in cycle notation");
    ++i;
    std::vector<std::size_t> cyc;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ')') {
        ++i;
        break;
      }
      if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) {
        throw StructuralError("expected point in cycle notation");
      }
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        ++i;
      }
      cyc.push_back(v);
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;
    }
    if (!cyc.empty()) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  return from_cycles(degree, cycles);
}

bool Permutation::is_identity() const {
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (images_[i] != i) return false;
  }
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<Point> im(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) im[images_[i]] = static_cast<Point>(i);
  Permutation p;
  p.images_ = std::move(im);
  return p;
}

std::string Permutation::to_string() const {
  std::string out;
  std::vector<bool> seen(images_.size(), false);
  for (std::size_t i = 0; i < images_.size(); ++i) {
    if (seen[i] || images_[i] == i) continue;
    out += '(';
    std::size_t j = i;
    bool first = true;
    while (!seen[j]) {
      seen[j] = true;
      if (!first) out += ',';
      out += std::to_string(j + 1);
      first = false;
      j = images_[j];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) throw StructuralError("degree mismatch in product");
  std::vector<Point> im(p.degree());
  for (std::size_t i = 0; i < im.size(); ++i) im[i] = p.images_[q.images_[i]];
  Permutation r;
  r.images_ = std::move(im);
  return r;
}

Permutation multiply(const Permutation& p, const Permutation& q) { return p * q; }

// ---------------------------------------------------------------------------
// Group storage

namespace detail {

struct GroupData {
  std::size_t degree = 0;
  std::size_t order = 0;
  std::vector<Permutation> gens;
  std::vector<Point> flat;  // order * degree images
  std::vector<ElemIdx> slots;
  std::uint64_t mask = 0;
  std::vector<ElemIdx> inverse;
  std::vector<std::uint32_t> orders;
  std::uint64_t exponent = 1;

  mutable std::once_flag table_once;
  mutable std::vector<std::uint16_t> table;

  mutable std::once_flag classes_once;
  mutable std::vector<ConjugacyClass> classes;
  mutable std::vector<std::uint32_t> class_of;

  std::span<const Point> images(ElemIdx i) const {
    return {flat.data() + static_cast<std::size_t>(i) * degree, degree};
  }

  std::optional<ElemIdx> find(std::span<const Point> im) const {
    std::uint64_t h = hash_images(im) & mask;
    for (;;) {
      ElemIdx s = slots[h];
      if (s == kEmptySlot) return std::nullopt;
      auto cand = images(s);
      if (std::equal(cand.begin(), cand.end(), im.begin())) return s;
      h = (h + 1) & mask;
    }
  }

  ElemIdx compose(ElemIdx a, ElemIdx b) const {
    thread_local std::vector<Point> buf;
    buf.resize(degree);
    auto pa = images(a);
    auto pb = images(b);
    for (std::size_t i = 0; i < degree; ++i) buf[i] = pa[pb[i]];
    auto r = find(buf);
    if (!r) throw InternalError("product left the group");
    return *r;
  }

  ElemIdx mul(ElemIdx a, ElemIdx b) const {
    if (order <= kMulTableLimit) {
      std::call_once(table_once, [this] {
        table.resize(order * order);
        for (std::size_t x = 0; x < order; ++x) {
          for (std::size_t y = 0; y < order; ++y) {
            table[x * order + y] =
                static_cast<std::uint16_t>(compose(static_cast<ElemIdx>(x), static_cast<ElemIdx>(y)));
          }
        }
      });
      return table[static_cast<std::size_t>(a) * order + b];
    }
    return compose(a, b);
  }

  void build_index() {
    std::size_t cap = 1;
    while (cap < 2 * order + 2) cap <<= 1;
    slots.assign(cap, kEmptySlot);
    mask = cap - 1;
    for (ElemIdx i = 0; i < order; ++i) {
      std::uint64_t h = hash_images(images(i)) & mask;
      while (slots[h] != kEmptySlot) h = (h + 1) & mask;
      slots[h] = i;
    }
  }

  void build_inverse_and_orders() {
    inverse.resize(order);
    std::vector<Point> buf(degree);
    for (ElemIdx i = 0; i < order; ++i) {
      auto im = images(i);
      for (std::size_t k = 0; k < degree; ++k) buf[im[k]] = static_cast<Point>(k);
      inverse[i] = *find(buf);
    }
    orders.assign(order, 0);
    exponent = 1;
    for (ElemIdx i = 0; i < order; ++i) {
      // Order = lcm of cycle lengths.
      auto im = images(i);
      std::vector<bool> seen(degree, false);
      std::uint64_t o = 1;
      for (std::size_t k = 0; k < degree; ++k) {
        if (seen[k]) continue;
        std::uint64_t len = 0;
        for (std::size_t j = k; !seen[j]; j = im[j]) {
          seen[j] = true;
          ++len;
        }
        o = std::lcm(o, len);
      }
      orders[i] = static_cast<std::uint32_t>(o);
      exponent = std::lcm(exponent, o);
    }
  }

  void build_classes() const {
    std::call_once(classes_once, [this] {
      constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
      class_of.assign(order, kUnset);
      std::vector<ElemIdx> gen_idx;
      for (const auto& g : gens) gen_idx.push_back(*find(g.images()));
      for (ElemIdx x = 0; x < order; ++x) {
        if (class_of[x] != kUnset) continue;
        auto id = static_cast<std::uint32_t>(classes.size());
        ConjugacyClass cls{x, {x}};
        class_of[x] = id;
        for (std::size_t head = 0; head < cls.members.size(); ++head) {
          ElemIdx y = cls.members[head];
          for (ElemIdx g : gen_idx) {
            ElemIdx z = mul(mul(g, y), inverse[g]);
            if (class_of[z] == kUnset) {
              class_of[z] = id;
              cls.members.push_back(z);
            }
          }
        }
        std::sort(cls.members.begin(), cls.members.end());
        classes.push_back(std::move(cls));
      }
    });
  }
};

struct GeneratorCache {
  std::once_flag once;
  std::vector<ElemIdx> gens;
};

}  // namespace detail

namespace {

std::shared_ptr<detail::GroupData> make_data(std::size_t degree,
                                             std::vector<Permutation> sorted_elements) {
  auto data = std::make_shared<detail::GroupData>();
  data->degree = degree;
  data->order = sorted_elements.size();
  data->flat.reserve(data->order * degree);
  for (const auto& p : sorted_elements) {
    data->flat.insert(data->flat.end(), p.images().begin(), p.images().end());
  }
  data->build_index();
  data->build_inverse_and_orders();
  return data;
}

}  // namespace

PermGroup PermGroup::generate(std::size_t degree, std::vector<Permutation> gens,
                              std::size_t element_cap) {
  if (degree == 0 || degree > 0xFFFF) throw StructuralError("unsupported degree");
  if (gens.empty()) throw PreconditionError("generate() needs at least one generator");
  for (const auto& g : gens) {
    if (g.degree() != degree) throw StructuralError("generator degree mismatch");
  }
  std::unordered_set<Permutation, PermHash> seen;
  std::vector<Permutation> order_list;
  auto id = Permutation::identity(degree);
  seen.insert(id);
  order_list.push_back(id);
  for (std::size_t head = 0; head < order_list.size(); ++head) {
    for (const auto& g : gens) {
      Permutation y = order_list[head] * g;
      if (seen.insert(y).second) {
        if (order_list.size() >= element_cap) {
          throw ResourceError("group closure exceeds element cap " + std::to_string(element_cap));
        }
        order_list.push_back(std::move(y));
      }
    }
  }
  std::sort(order_list.begin(), order_list.end());
  auto data = make_data(degree, std::move(order_list));
  data->gens = std::move(gens);
  return PermGroup(std::move(data));
}

PermGroup PermGroup::from_elements(std::size_t degree, std::vector<Permutation> elements) {
  if (elements.empty()) throw PreconditionError("empty element list");
  for (const auto& e : elements) {
    if (e.degree() != degree) throw StructuralError("element degree mismatch");
  }
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
  if (!elements.front().is_identity()) throw StructuralError("element list lacks the identity");
  auto data = make_data(degree, std::move(elements));
  // Greedy generators, checking closure on the way.
  std::vector<bool> in(data->order, false);
  std::vector<ElemIdx> members{0};
  in[0] = true;
  std::vector<ElemIdx> gen_idx;
  for (ElemIdx x = 0; x < data->order; ++x) {
    if (in[x]) continue;
    gen_idx.push_back(x);
    members.assign(1, 0);
    std::fill(in.begin(), in.end(), false);
    in[0] = true;
    for (std::size_t head = 0; head < members.size(); ++head) {
      for (ElemIdx g : gen_idx) {
        auto y = data->find([&] {
          thread_local std::vector<Point> buf;
          buf.resize(degree);
          auto a = data->images(members[head]);
          auto b = data->images(g);
          for (std::size_t i = 0; i < degree; ++i) buf[i] = a[b[i]];
          return std::span<const Point>(buf);
        }());
        if (!y) throw StructuralError("element list is not closed under composition");
        if (!in[*y]) {
          in[*y] = true;
          members.push_back(*y);
        }
      }
    }
  }
  for (ElemIdx g : gen_idx) {
    auto im = data->images(g);
    data->gens.emplace_back(std::vector<Point>(im.begin(), im.end()));
  }
  if (data->gens.empty()) data->gens.push_back(Permutation::identity(degree));
  return PermGroup(std::move(data));
}

std::size_t PermGroup::degree() const { return data_->degree; }
std::uint64_t PermGroup::order() const { return data_->order; }
const std::vector<Permutation>& PermGroup::generators() const { return data_->gens; }

std::vector<ElemIdx> PermGroup::generator_indices() const {
  std::vector<ElemIdx> out;
  for (const auto& g : data_->gens) out.push_back(index_of(g));
  return out;
}

Permutation PermGroup::element(ElemIdx i) const {
  auto im = data_->images(i);
  return Permutation(std::vector<Point>(im.begin(), im.end()));
}

std::span<const Point> PermGroup::images(ElemIdx i) const { return data_->images(i); }

std::optional<ElemIdx> PermGroup::find(std::span<const Point> images) const {
  if (images.size() != data_->degree) return std::nullopt;
  return data_->find(images);
}

ElemIdx PermGroup::index_of(const Permutation& p) const {
  if (p.degree() != data_->degree) throw StructuralError("degree mismatch");
  auto r = data_->find(p.images());
  if (!r) throw StructuralError("permutation " + p.to_string() + " is not in the group");
  return *r;
}

ElemIdx PermGroup::mul(ElemIdx a, ElemIdx b) const { return data_->mul(a, b); }
ElemIdx PermGroup::inv(ElemIdx a) const { return data_->inverse[a]; }
ElemIdx PermGroup::conj(ElemIdx x, ElemIdx g) const {
  return mul(mul(g, x), data_->inverse[g]);
}
ElemIdx PermGroup::commutator(ElemIdx x, ElemIdx y) const {
  return mul(mul(inv(x), inv(y)), mul(x, y));
}

ElemIdx PermGroup::pow(ElemIdx a, long long e) const {
  if (e < 0) {
    a = inv(a);
    e = -e;
  }
  e %= static_cast<long long>(data_->orders[a]);
  ElemIdx r = identity();
  ElemIdx base = a;
  while (e > 0) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

unsigned PermGroup::element_order(ElemIdx a) const { return data_->orders[a]; }
std::uint64_t PermGroup::exponent() const { return data_->exponent; }

const std::vector<ConjugacyClass>& PermGroup::classes() const {
  data_->build_classes();
  return data_->classes;
}

std::size_t PermGroup::class_of(ElemIdx a) const {
  data_->build_classes();
  return data_->class_of[a];
}

Subgroup PermGroup::whole() const {
  std::vector<ElemIdx> all(order());
  std::iota(all.begin(), all.end(), ElemIdx{0});
  return Subgroup(*this, std::move(all), true);
}

Subgroup PermGroup::trivial() const { return Subgroup(*this, {0}, true); }

bool PermGroup::is_abelian() const {
  auto gens = generator_indices();
  for (ElemIdx a : gens) {
    for (ElemIdx b : gens) {
      if (mul(a, b) != mul(b, a)) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Subgroup

namespace {

// BFS closure of `seed` (already closed, may be just {1}) under right
// multiplication by gens. Returns the member list in discovery order.
std::vector<ElemIdx> close_under(const PermGroup& G, std::vector<ElemIdx> seed,
                                 std::vector<bool>& in, std::span<const ElemIdx> gens) {
  for (std::size_t head = 0; head < seed.size(); ++head) {
    for (ElemIdx g : gens) {
      ElemIdx y = G.mul(seed[head], g);
      if (!in[y]) {
        in[y] = true;
        seed.push_back(y);
      }
    }
  }
  return seed;
}

std::vector<std::uint64_t> to_bits(std::size_t n, const std::vector<ElemIdx>& members) {
  std::vector<std::uint64_t> bits((n + 63) / 64, 0);
  for (ElemIdx m : members) bits[m >> 6] |= std::uint64_t{1} << (m & 63);
  return bits;
}

}  // namespace

Subgroup::Subgroup(PermGroup ambient, std::vector<ElemIdx> members, bool trusted)
    : ambient_(std::move(ambient)),
      members_(std::move(members)),
      generators_(std::make_shared<detail::GeneratorCache>()) {
  std::sort(members_.begin(), members_.end());
  members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
  if (members_.empty() || members_.front() != PermGroup::identity()) {
    throw StructuralError("subgroup must contain the identity");
  }
  if (members_.back() >= ambient_.order()) throw StructuralError("element index out of range");
  bits_ = to_bits(ambient_.order(), members_);
  if (!trusted) {
    const auto& gens = generators();
    std::vector<bool> in(ambient_.order(), false);
    in[0] = true;
    auto closure = close_under(ambient_, {0}, in, gens);
    if (closure.size() != members_.size()) throw StructuralError("element set is not a subgroup");
  }
}

const std::vector<ElemIdx>& Subgroup::generators() const {
  std::call_once(generators_->once, [this] {
    std::vector<bool> in(ambient_.order(), false);
    in[0] = true;
    std::vector<ElemIdx> span{0};
    auto& gens = generators_->gens;
    for (ElemIdx x : members_) {
      if (in[x]) continue;
      gens.push_back(x);
      span = close_under(ambient_, std::move(span), in, gens);
    }
  });
  return generators_->gens;
}

bool Subgroup::is_subset_of(const Subgroup& other) const {
  if (!ambient_.same_as(other.ambient_)) throw StructuralError("subgroups of different groups");
  for (std::size_t w = 0; w < bits_.size(); ++w) {
    if (bits_[w] & ~other.bits_[w]) return false;
  }
  return true;
}

Subgroup Subgroup::intersect(const Subgroup& other) const {
  if (!ambient_.same_as(other.ambient_)) throw StructuralError("subgroups of different groups");
  std::vector<ElemIdx> out;
  for (ElemIdx m : members_) {
    if (other.contains(m)) out.push_back(m);
  }
  return Subgroup(ambient_, std::move(out), true);
}

PermGroup Subgroup::as_group() const {
  std::vector<Permutation> elems;
  elems.reserve(members_.size());
  for (ElemIdx m : members_) elems.push_back(ambient_.element(m));
  return PermGroup::from_elements(ambient_.degree(), std::move(elems));
}

std::vector<std::string> Subgroup::generator_strings() const {
  std::vector<std::string> out;
  for (ElemIdx g : generators()) out.push_back(ambient_.element(g).to_string());
  if (out.empty()) out.push_back("()");
  return out;
}

// ---------------------------------------------------------------------------
// Subgroup constructions

Subgroup generate_subgroup(const PermGroup& G, std::span<const ElemIdx> gens) {
  std::vector<bool> in(G.order(), false);
  in[0] = true;
  auto members = close_under(G, {0}, in, gens);
  return Subgroup(G, std::move(members), true);
}

Subgroup extend_subgroup(const Subgroup& H, std::span<const ElemIdx> extra) {
  const PermGroup& G = H.ambient();
  std::vector<ElemIdx> gens = H.generators();
  bool grows = false;
  for (ElemIdx x : extra) {
    if (!H.contains(x)) grows = true;
    gens.push_back(x);
  }
  if (!grows) return H;
  std::vector<bool> in(G.order(), false);
  for (ElemIdx m : H.elements()) in[m] = true;
  auto members = close_under(G, H.elements(), in, gens);
  return Subgroup(G, std::move(members), true);
}

std::optional<Subgroup> extend_subgroup_bounded(const Subgroup& H, std::span<const ElemIdx> extra,
                                                std::uint64_t cap) {
  const PermGroup& G = H.ambient();
  std::vector<ElemIdx> gens = H.generators();
  gens.insert(gens.end(), extra.begin(), extra.end());
  std::vector<bool> in(G.order(), false);
  for (ElemIdx m : H.elements()) in[m] = true;
  std::vector<ElemIdx> members = H.elements();
  if (members.size() > cap) return std::nullopt;
  for (std::size_t head = 0; head < members.size(); ++head) {
    for (ElemIdx g : gens) {
      ElemIdx y = G.mul(members[head], g);
      if (in[y]) continue;
      in[y] = true;
      members.push_back(y);
      if (members.size() > cap) return std::nullopt;
    }
  }
  return Subgroup(G, std::move(members), true);
}

Subgroup join(const Subgroup& A, const Subgroup& B) {
  if (!A.ambient().same_as(B.ambient())) throw StructuralError("subgroups of different groups");
  return extend_subgroup(A, B.generators());
}

Subgroup normal_closure(const Subgroup& H, std::span<const ElemIdx> xs) {
  const PermGroup& G = H.ambient();
  for (ElemIdx x : xs) {
    if (!H.contains(x)) throw StructuralError("normal_closure: element outside H");
  }
  Subgroup S = generate_subgroup(G, xs);
  const auto& hgens = H.generators();
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<ElemIdx> missing;
    for (ElemIdx s : S.generators()) {
      for (ElemIdx h : hgens) {
        ElemIdx c = G.conj(s, h);
        if (!S.contains(c)) missing.push_back(c);
      }
    }
    if (!missing.empty()) {
      S = extend_subgroup(S, missing);
      changed = true;
    }
  }
  return S;
}

Subgroup centralizer(const PermGroup& G, ElemIdx g) {
  std::vector<ElemIdx> out;
  for (ElemIdx x = 0; x < G.order(); ++x) {
    if (G.mul(x, g) == G.mul(g, x)) out.push_back(x);
  }
  return Subgroup(G, std::move(out), true);
}

Subgroup normalizer(const Subgroup& within, const Subgroup& H) {
  const PermGroup& G = H.ambient();
  if (!within.ambient().same_as(G)) throw StructuralError("subgroups of different groups");
  const auto& hgens = H.generators();
  std::vector<ElemIdx> out;
  for (ElemIdx x : within.elements()) {
    bool ok = true;
    for (ElemIdx h : hgens) {
      if (!H.contains(G.conj(h, x))) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return Subgroup(G, std::move(out), true);
}

Subgroup normalizer(const Subgroup& H) { return normalizer(H.ambient().whole(), H); }

Subgroup center(const PermGroup& G) {
  auto gens = G.generator_indices();
  std::vector<ElemIdx> out;
  for (ElemIdx x = 0; x < G.order(); ++x) {
    bool ok = std::all_of(gens.begin(), gens.end(),
                          [&](ElemIdx g) { return G.mul(x, g) == G.mul(g, x); });
    if (ok) out.push_back(x);
  }
  return Subgroup(G, std::move(out), true);
}

bool is_normal_in(const Subgroup& H, const Subgroup& K) {
  const PermGroup& G = H.ambient();
  if (!K.ambient().same_as(G)) throw StructuralError("subgroups of different groups");
  for (ElemIdx k : K.generators()) {
    for (ElemIdx h : H.generators()) {
      if (!H.contains(G.conj(h, k))) return false;
    }
  }
  return true;
}

bool is_normal(const Subgroup& H) {
  const PermGroup& G = H.ambient();
  for (ElemIdx g : G.generator_indices()) {
    for (ElemIdx h : H.generators()) {
      if (!H.contains(G.conj(h, g))) return false;
    }
  }
  return true;
}

Subgroup core(const Subgroup& H) {
  const PermGroup& G = H.ambient();
  std::vector<ElemIdx> out;
  for (const auto& cls : G.classes()) {
    bool inside = std::all_of(cls.members.begin(), cls.members.end(),
                              [&](ElemIdx x) { return H.contains(x); });
    if (inside) out.insert(out.end(), cls.members.begin(), cls.members.end());
  }
  return Subgroup(G, std::move(out), true);
}

// ---------------------------------------------------------------------------
// Quotients

Subgroup Quotient::preimage(const Subgroup& X) const {
  if (!X.ambient().same_as(group)) throw StructuralError("preimage: subgroup of another group");
  std::vector<ElemIdx> out;
  for (ElemIdx g = 0; g < projection.size(); ++g) {
    if (X.contains(projection[g])) out.push_back(g);
  }
  return Subgroup(kernel.ambient(), std::move(out), true);
}

Subgroup Quotient::image(const Subgroup& H) const {
  if (!H.ambient().same_as(kernel.ambient())) throw StructuralError("image: foreign subgroup");
  std::vector<ElemIdx> gens;
  for (ElemIdx h : H.generators()) gens.push_back(projection[h]);
  return generate_subgroup(group, gens);
}

Quotient quotient(const PermGroup& G, const Subgroup& N) {
  if (!N.ambient().same_as(G)) throw StructuralError("quotient: N is not a subgroup of G");
  if (!is_normal(N)) throw PreconditionError("quotient: N is not normal in G");
  constexpr std::uint32_t kUnset = 0xFFFFFFFFu;
  std::vector<std::uint32_t> coset(G.order(), kUnset);
  std::vector<ElemIdx> reps;
  for (ElemIdx x = 0; x < G.order(); ++x) {
    if (coset[x] != kUnset) continue;
    auto id = static_cast<std::uint32_t>(reps.size());
    reps.push_back(x);
    for (ElemIdx n : N.elements()) coset[G.mul(n, x)] = id;
  }
  const std::size_t m = reps.size();
  auto action = [&](ElemIdx g) {
    std::vector<Point> im(m);
    for (std::size_t c = 0; c < m; ++c) im[c] = static_cast<Point>(coset[G.mul(g, reps[c])]);
    return Permutation(std::move(im));
  };
  std::vector<Permutation> gens;
  for (ElemIdx g : G.generator_indices()) gens.push_back(action(g));
  PermGroup Q = PermGroup::generate(m, std::move(gens), G.order() + 1);
  std::vector<ElemIdx> proj(G.order());
  for (ElemIdx g = 0; g < G.order(); ++g) proj[g] = Q.index_of(action(g));
  return Quotient{std::move(Q), std::move(proj), N};
}

// ---------------------------------------------------------------------------
// Sylow subgroups and power maps

Subgroup sylow(const Subgroup& H, std::uint64_t p) {
  const PermGroup& G = H.ambient();
  const std::uint64_t target = p_part(H.order(), p);
  if (target == 1) return G.trivial();
  auto is_p_element = [&](ElemIdx x) { return is_power_of(G.element_order(x), p); };
  ElemIdx seed = 0;
  unsigned best = 1;
  for (ElemIdx x : H.elements()) {
    unsigned o = G.element_order(x);
    if (o > best && is_power_of(o, p)) {
      best = o;
      seed = x;
    }
  }
  Subgroup P = generate_subgroup(G, std::span<const ElemIdx>(&seed, 1));
  while (P.order() < target) {
    Subgroup N = normalizer(H, P);
    bool grown = false;
    for (ElemIdx y : N.elements()) {
      if (!P.contains(y) && is_p_element(y)) {
        P = extend_subgroup(P, std::span<const ElemIdx>(&y, 1));
        grown = true;
        break;
      }
    }
    if (!grown) throw InternalError("sylow: no p-element in N(P) outside P");
  }
  if (P.order() != target) throw InternalError("sylow: overshoot");
  return P;
}

Subgroup sylow(const PermGroup& G, std::uint64_t p) { return sylow(G.whole(), p); }

std::vector<std::size_t> power_map(const PermGroup& G, long long s) {
  std::vector<std::size_t> out;
  for (const auto& cls : G.classes()) out.push_back(G.class_of(G.pow(cls.representative, s)));
  return out;
}

}  // namespace charkernel
