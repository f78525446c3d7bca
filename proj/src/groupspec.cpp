#include "charkernel/groupspec.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>
#include <sstream>

#include "charkernel/errors.hpp"
#include "charkernel/numtheory.hpp"

namespace charkernel {

using Kind = SpecAtom::Kind;

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  GroupSpec spec() {
    GroupSpec out;
    out.factors.push_back(term());
    while (peek() == 'x' || peek() == 'X') {
      ++pos_;
      out.factors.push_back(term());
    }
    return out;
  }

  void expect_end() {
    if (peek() != '\0') fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
  }

 private:
  char peek() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  [[noreturn]] void fail(const std::string& what) const { throw SpecError(what, pos_); }

  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  bool is_name_char(char c) const {
    return std::isalpha(static_cast<unsigned char>(c)) && c != 'x' && c != 'X';
  }

  std::uint64_t number() {
    peek();
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      v = v * 10 + static_cast<std::uint64_t>(text_[pos_] - '0');
      if (v > 1'000'000) fail("number too large");
      ++pos_;
    }
    if (pos_ == start) fail("expected a number");
    return v;
  }

  std::vector<std::uint64_t> numbers() {
    expect('(');
    std::vector<std::uint64_t> out{number()};
    while (peek() == ',') {
      ++pos_;
      out.push_back(number());
    }
    expect(')');
    return out;
  }

  SpecAtom term() {
    peek();
    const std::size_t start = pos_;
    std::string name;
    while (pos_ < text_.size() && is_name_char(text_[pos_])) {
      name += static_cast<char>(std::tolower(static_cast<unsigned char>(text_[pos_])));
      ++pos_;
    }
    if (name.empty()) fail("expected a group name");
    const bool has_digits = pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]));

    static const std::array<std::pair<const char*, Kind>, 5> lettered{{
        {"c", Kind::Cyclic}, {"d", Kind::Dihedral}, {"q", Kind::Quaternion},
        {"s", Kind::Symmetric}, {"a", Kind::Alternating}}};
    for (const auto& [key, kind] : lettered) {
      if (name == key) {
        if (!has_digits) fail("'" + name + "' needs a number");
        return SpecAtom{kind, {number()}, nullptr};
      }
    }
    if (name == "wr") {
      if (number() != 2) fail("only wr2 is supported");
      expect('(');
      auto inner = std::make_shared<const GroupSpec>(spec());
      expect(')');
      return SpecAtom{Kind::Wreath2, {}, std::move(inner)};
    }
    if (has_digits) fail("unexpected number after '" + name + "'");

    struct Fn {
      const char* name;
      Kind kind;
      std::size_t arity;
    };
    static const std::array<Fn, 5> functions{{{"frob", Kind::Frobenius, 2},
                                              {"heis", Kind::Heisenberg, 1},
                                              {"sl", Kind::SL, 2},
                                              {"gl", Kind::GL, 2},
                                              {"psl", Kind::PSL, 2}}};
    for (const auto& fn : functions) {
      if (name == fn.name) {
        auto args = numbers();
        if (args.size() != fn.arity) {
          pos_ = start;
          fail("'" + name + "' takes " + std::to_string(fn.arity) + " argument(s)");
        }
        return SpecAtom{fn.kind, std::move(args), nullptr};
      }
    }
    pos_ = start;
    fail("unknown group name '" + name + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

GroupSpec parse_spec(std::string_view text) {
  Parser p(text);
  GroupSpec s = p.spec();
  p.expect_end();
  return s;
}

// ---------------------------------------------------------------------------
// Rendering

std::string render(const SpecAtom& atom) {
  auto n = [&](std::size_t i) { return std::to_string(atom.args[i]); };
  switch (atom.kind) {
    case Kind::Cyclic: return "C" + n(0);
    case Kind::Dihedral: return "D" + n(0);
    case Kind::Quaternion: return "Q" + n(0);
    case Kind::Symmetric: return "S" + n(0);
    case Kind::Alternating: return "A" + n(0);
    case Kind::Frobenius: return "frob(" + n(0) + "," + n(1) + ")";
    case Kind::Heisenberg: return "heis(" + n(0) + ")";
    case Kind::SL: return "SL(" + n(0) + "," + n(1) + ")";
    case Kind::GL: return "GL(" + n(0) + "," + n(1) + ")";
    case Kind::PSL: return "PSL(" + n(0) + "," + n(1) + ")";
    case Kind::Wreath2: return "wr2(" + render(*atom.inner) + ")";
  }
  return {};
}

std::string render(const GroupSpec& spec) {
  std::string out;
  for (std::size_t i = 0; i < spec.factors.size(); ++i) {
    if (i) out += 'x';
    out += render(spec.factors[i]);
  }
  return out;
}

namespace {

const char* kind_name(Kind k) {
  switch (k) {
    case Kind::Cyclic: return "cyclic";
    case Kind::Dihedral: return "dihedral";
    case Kind::Quaternion: return "quaternion";
    case Kind::Symmetric: return "symmetric";
    case Kind::Alternating: return "alternating";
    case Kind::Frobenius: return "frobenius";
    case Kind::Heisenberg: return "heisenberg";
    case Kind::SL: return "special-linear";
    case Kind::GL: return "general-linear";
    case Kind::PSL: return "projective-special-linear";
    case Kind::Wreath2: return "wreath-c2";
  }
  return "?";
}

void dump(std::ostringstream& os, const GroupSpec& spec, int indent) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  os << pad << "product [" << render(spec) << "]\n";
  for (const auto& a : spec.factors) {
    os << pad << "  " << kind_name(a.kind);
    for (auto v : a.args) os << ' ' << v;
    os << '\n';
    if (a.inner) dump(os, *a.inner, indent + 2);
  }
}

}  // namespace

std::string dump_ast(const GroupSpec& spec) {
  std::ostringstream os;
  dump(os, spec, 0);
  return os.str();
}

bool operator==(const SpecAtom& a, const SpecAtom& b) {
  if (a.kind != b.kind || a.args != b.args) return false;
  if (!a.inner || !b.inner) return !a.inner && !b.inner;
  return *a.inner == *b.inner;
}

bool operator==(const GroupSpec& a, const GroupSpec& b) { return a.factors == b.factors; }

// ---------------------------------------------------------------------------
// Orders and degrees

namespace {

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r) || r > (std::uint64_t{1} << 62)) {
    throw SpecError("group order too large", 0);
  }
  return r;
}

bool small_field(std::uint64_t q) { return q == 2 || q == 3 || q == 4 || q == 5 || q == 7; }

void validate(const SpecAtom& a) {
  auto bad = [&](const std::string& why) { throw SpecError(render(a) + ": " + why, 0); };
  const auto& v = a.args;
  switch (a.kind) {
    case Kind::Cyclic:
      if (v[0] < 1) bad("order must be positive");
      break;
    case Kind::Dihedral:
      if (v[0] < 4 || v[0] % 2) bad("order must be even and at least 4");
      break;
    case Kind::Quaternion:
      if (v[0] < 8 || !is_power_of(v[0], 2)) bad("order must be a power of 2, at least 8");
      break;
    case Kind::Symmetric:
    case Kind::Alternating:
      if (v[0] < 1 || v[0] > 20) bad("degree must be between 1 and 20");
      break;
    case Kind::Frobenius:
      if (!is_prime(v[0]) || !is_prime(v[1])) bad("q and p must be prime");
      if ((v[0] - 1) % v[1] != 0) bad("p must divide q-1");
      break;
    case Kind::Heisenberg:
      if (!is_prime(v[0]) || v[0] > 37) bad("p must be a prime below 40");
      break;
    case Kind::SL:
    case Kind::GL:
    case Kind::PSL:
      if (v[0] != 2) bad("only dimension 2 is supported");
      if (!small_field(v[1])) bad("q must be one of 2, 3, 4, 5, 7");
      break;
    case Kind::Wreath2:
      break;
  }
}

std::uint64_t atom_order(const SpecAtom& a) {
  validate(a);
  const auto& v = a.args;
  switch (a.kind) {
    case Kind::Cyclic:
    case Kind::Dihedral:
    case Kind::Quaternion:
      return v[0];
    case Kind::Symmetric:
    case Kind::Alternating: {
      std::uint64_t f = 1;
      for (std::uint64_t i = 2; i <= v[0]; ++i) f = checked_mul(f, i);
      return a.kind == Kind::Alternating && v[0] >= 2 ? f / 2 : f;
    }
    case Kind::Frobenius: return v[0] * v[1];
    case Kind::Heisenberg: return v[0] * v[0] * v[0];
    case Kind::SL: return v[1] * (v[1] * v[1] - 1);
    case Kind::GL: return v[1] * (v[1] - 1) * (v[1] * v[1] - 1);
    case Kind::PSL: return v[1] * (v[1] * v[1] - 1) / (v[1] % 2 ? 2 : 1);
    case Kind::Wreath2: {
      const std::uint64_t n = predicted_order(*a.inner);
      return checked_mul(checked_mul(n, n), 2);
    }
  }
  return 0;
}

std::size_t atom_degree(const SpecAtom& a) {
  validate(a);
  const auto& v = a.args;
  switch (a.kind) {
    case Kind::Cyclic:
    case Kind::Quaternion:
    case Kind::Symmetric:
    case Kind::Alternating:
      return v[0];
    case Kind::Dihedral: return v[0] == 4 ? 4 : v[0] / 2;
    case Kind::Frobenius: return v[0];
    case Kind::Heisenberg: return v[0] * v[0] * v[0] - 1;
    case Kind::SL:
    case Kind::GL:
      return v[1] * v[1] - 1;
    case Kind::PSL: return v[1] + 1;
    case Kind::Wreath2: return 2 * predicted_degree(*a.inner);
  }
  return 0;
}

}  // namespace

std::uint64_t predicted_order(const GroupSpec& spec) {
  std::uint64_t n = 1;
  for (const auto& a : spec.factors) n = checked_mul(n, atom_order(a));
  return n;
}

std::size_t predicted_degree(const GroupSpec& spec) {
  std::size_t d = 0;
  for (const auto& a : spec.factors) d += atom_degree(a);
  if (d > std::numeric_limits<Point>::max()) throw SpecError("permutation degree too large", 0);
  return d;
}

// ---------------------------------------------------------------------------
// Constructions

namespace {

struct Action {
  std::size_t degree;
  std::vector<Permutation> gens;
};

template <class F>
Permutation from_map(std::size_t n, F f) {
  std::vector<Point> img(n);
  for (std::size_t i = 0; i < n; ++i) img[i] = static_cast<Point>(f(i));
  return Permutation(std::move(img));
}

Permutation cycle_of(std::size_t n, std::vector<std::size_t> points) {
  return Permutation::from_cycles(n, {std::move(points)});
}

// GF(q) for q in {2, 3, 4, 5, 7}. GF(4) = {0, 1, w, w+1} encoded as 0..3.
struct Field {
  std::uint64_t q;

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return q == 4 ? (a ^ b) : (a + b) % q; }
  std::uint64_t neg(std::uint64_t a) const { return q == 4 ? a : (q - a) % q; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const {
    if (q != 4) return a * b % q;
    static constexpr std::uint64_t table[4][4] = {{0, 0, 0, 0}, {0, 1, 2, 3}, {0, 2, 3, 1}, {0, 3, 1, 2}};
    return table[a][b];
  }
  std::uint64_t inv(std::uint64_t a) const {
    if (q != 4) return mod_inv(a, q);
    static constexpr std::uint64_t table[4] = {0, 1, 3, 2};
    return table[a];
  }
  std::uint64_t primitive() const {
    for (std::uint64_t g = 1; g < q; ++g) {
      std::uint64_t x = g;
      std::uint64_t k = 1;
      while (x != 1) {
        x = mul(x, g);
        ++k;
      }
      if (k == q - 1) return g;
    }
    return 1;
  }
};

using Matrix2 = std::array<std::uint64_t, 4>;  // row-major

Action linear_action(const SpecAtom& a) {
  const Field F{a.args[1]};
  const std::uint64_t q = F.q;
  std::vector<Matrix2> mats;
  // Elementary transvections over an additive basis of GF(q) generate SL(2,q).
  std::vector<std::uint64_t> basis = q == 4 ? std::vector<std::uint64_t>{1, 2} : std::vector<std::uint64_t>{1};
  for (auto t : basis) {
    mats.push_back({1, t, 0, 1});
    mats.push_back({1, 0, t, 1});
  }
  if (a.kind == Kind::GL) mats.push_back({F.primitive(), 0, 0, 1});

  auto apply = [&](const Matrix2& m, std::uint64_t x, std::uint64_t y) {
    return std::pair{F.add(F.mul(m[0], x), F.mul(m[1], y)), F.add(F.mul(m[2], x), F.mul(m[3], y))};
  };

  Action act;
  if (a.kind == Kind::PSL) {
    // Projective points (1, b) -> b and (0, 1) -> q.
    act.degree = q + 1;
    auto index = [&](std::uint64_t x, std::uint64_t y) {
      if (x == 0) return q;
      return F.mul(y, F.inv(x));
    };
    for (const auto& m : mats) {
      act.gens.push_back(from_map(act.degree, [&](std::size_t i) {
        auto [x, y] = i == q ? std::pair<std::uint64_t, std::uint64_t>{0, 1}
                             : std::pair<std::uint64_t, std::uint64_t>{1, i};
        auto [u, v] = apply(m, x, y);
        return index(u, v);
      }));
    }
  } else {
    // Nonzero vectors (x, y) -> x + q*y - 1.
    act.degree = q * q - 1;
    for (const auto& m : mats) {
      act.gens.push_back(from_map(act.degree, [&](std::size_t i) {
        auto [u, v] = apply(m, (i + 1) % q, (i + 1) / q);
        return u + q * v - 1;
      }));
    }
  }
  return act;
}

Action heisenberg(std::uint64_t p) {
  // Upper unitriangular 3x3 matrices on nonzero column vectors of F_p^3.
  const std::size_t n = p * p * p - 1;
  auto make = [&](std::uint64_t a, std::uint64_t b) {
    return from_map(n, [&](std::size_t i) {
      const std::uint64_t v = i + 1;
      const std::uint64_t x = v % p, y = v / p % p, z = v / (p * p);
      const std::uint64_t nx = (x + a * y) % p, ny = (y + b * z) % p;
      return nx + p * ny + p * p * z - 1;
    });
  };
  return {n, {make(1, 0), make(0, 1)}};
}

Action quaternion(std::uint64_t m) {
  // Left regular action on a^i b^j, indexed i + n*j with n = m/2.
  const std::uint64_t n = m / 2;
  auto left_a = from_map(m, [&](std::size_t e) { return (e % n + 1) % n + n * (e / n); });
  auto left_b = from_map(m, [&](std::size_t e) {
    const std::uint64_t i = e % n;
    return e / n == 0 ? (n - i) % n + n : (n - i + n / 2) % n;
  });
  return {m, {left_a, left_b}};
}

Action atom_action(const SpecAtom& a);

Action spec_action(const GroupSpec& s) {
  Action out{0, {}};
  std::vector<Action> parts;
  for (const auto& f : s.factors) {
    parts.push_back(atom_action(f));
    out.degree += parts.back().degree;
  }
  std::size_t offset = 0;
  for (const auto& part : parts) {
    for (const auto& g : part.gens) {
      out.gens.push_back(from_map(out.degree, [&](std::size_t i) {
        return i >= offset && i < offset + part.degree ? offset + g(i - offset) : i;
      }));
    }
    offset += part.degree;
  }
  return out;
}

Action atom_action(const SpecAtom& a) {
  validate(a);
  const auto& v = a.args;
  switch (a.kind) {
    case Kind::Cyclic: {
      const std::size_t n = v[0];
      return {n, {from_map(n, [&](std::size_t i) { return (i + 1) % n; })}};
    }
    case Kind::Dihedral: {
      if (v[0] == 4) return {4, {cycle_of(4, {1, 2}), cycle_of(4, {3, 4})}};
      const std::size_t n = v[0] / 2;
      return {n, {from_map(n, [&](std::size_t i) { return (i + 1) % n; }),
                  from_map(n, [&](std::size_t i) { return (n - i) % n; })}};
    }
    case Kind::Quaternion: return quaternion(v[0]);
    case Kind::Symmetric: {
      const std::size_t n = v[0];
      if (n < 2) return {n, {}};
      return {n, {from_map(n, [&](std::size_t i) { return (i + 1) % n; }), cycle_of(n, {1, 2})}};
    }
    case Kind::Alternating: {
      const std::size_t n = v[0];
      Action act{n, {}};
      for (std::size_t k = 3; k <= n; ++k) act.gens.push_back(cycle_of(n, {1, 2, k}));
      return act;
    }
    case Kind::Frobenius: {
      const std::uint64_t q = v[0], p = v[1];
      const Field F{q};
      const std::uint64_t r = mod_pow(F.primitive(), (q - 1) / p, q);
      return {q, {from_map(q, [&](std::size_t i) { return (i + 1) % q; }),
                  from_map(q, [&](std::size_t i) { return i * r % q; })}};
    }
    case Kind::Heisenberg: return heisenberg(v[0]);
    case Kind::SL:
    case Kind::GL:
    case Kind::PSL:
      return linear_action(a);
    case Kind::Wreath2: {
      Action base = spec_action(*a.inner);
      const std::size_t n = base.degree;
      Action act{2 * n, {}};
      for (const auto& g : base.gens) {
        act.gens.push_back(from_map(2 * n, [&](std::size_t i) { return i < n ? g(i) : i; }));
      }
      act.gens.push_back(from_map(2 * n, [&](std::size_t i) { return i < n ? i + n : i - n; }));
      return act;
    }
  }
  return {};
}

}  // namespace

PermGroup build(const GroupSpec& spec, std::size_t element_cap) {
  const std::uint64_t order = predicted_order(spec);
  const std::size_t degree = predicted_degree(spec);
  if (order > element_cap) {
    throw ResourceError(render(spec) + ": order " + std::to_string(order) + " exceeds the element cap " +
                        std::to_string(element_cap));
  }
  Action act = spec_action(spec);
  if (act.degree != degree) throw InternalError(render(spec) + ": degree differs from prediction");
  if (act.gens.empty()) act.gens.push_back(Permutation::identity(degree));
  PermGroup G = PermGroup::generate(degree, std::move(act.gens), element_cap);
  if (G.order() != order) {
    throw InternalError(render(spec) + ": built order " + std::to_string(G.order()) + ", predicted " +
                        std::to_string(order));
  }
  return G;
}

PermGroup build(std::string_view text, std::size_t element_cap) { return build(parse_spec(text), element_cap); }

}  // namespace charkernel
