#include "charkernel/chartab.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "charkernel/errors.hpp"
#include "charkernel/numtheory.hpp"

namespace charkernel {

// ---------------------------------------------------------------------------
// ClassFunction

ClassFunction::ClassFunction(PermGroup group, std::vector<Cyclotomic> values)
    : group_(std::move(group)), values_(std::move(values)) {
  if (values_.size() != group_.class_count()) {
    throw StructuralError("class function needs one value per conjugacy class");
  }
}

ClassFunction ClassFunction::trivial(const PermGroup& G) {
  return ClassFunction(G, std::vector<Cyclotomic>(G.class_count(), Cyclotomic(1)));
}

ClassFunction ClassFunction::zero(const PermGroup& G) {
  return ClassFunction(G, std::vector<Cyclotomic>(G.class_count(), Cyclotomic(0)));
}

Integer ClassFunction::degree() const {
  auto d = values_[0].as_integer();
  if (!d) throw StructuralError("value at the identity is not an integer");
  return *d;
}

ClassFunction ClassFunction::conjugate() const {
  std::vector<Cyclotomic> v;
  v.reserve(values_.size());
  for (const auto& x : values_) v.push_back(x.conjugate());
  return ClassFunction(group_, std::move(v));
}

std::vector<std::string> ClassFunction::to_strings() const {
  std::vector<std::string> out;
  for (const auto& x : values_) out.push_back(x.to_string());
  return out;
}

ClassFunction& ClassFunction::operator+=(const ClassFunction& o) {
  if (!group_.same_as(o.group_)) throw StructuralError("class functions on different groups");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
  return *this;
}

ClassFunction& ClassFunction::operator-=(const ClassFunction& o) {
  if (!group_.same_as(o.group_)) throw StructuralError("class functions on different groups");
  for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
  return *this;
}

ClassFunction operator*(ClassFunction a, const Rational& q) {
  for (auto& v : a.values_) v *= q;
  return a;
}

bool operator==(const ClassFunction& a, const ClassFunction& b) {
  return a.group_.same_as(b.group_) && a.values_ == b.values_;
}

std::uint64_t CharacterTable::degree(std::size_t i) const {
  return irreducibles[i].degree().get_ui();
}

// ---------------------------------------------------------------------------
// Class constants

ClassConstants class_constants(const PermGroup& G, const std::vector<ElemIdx>& targets) {
  const std::size_t r = G.class_count();
  if (targets.size() != r) throw StructuralError("one target element per class required");
  std::vector<std::uint64_t> data(r * r * r, 0);
  for (std::size_t k = 0; k < r; ++k) {
    if (G.class_of(targets[k]) != k) throw StructuralError("target element in wrong class");
    const ElemIdx z = targets[k];
    for (ElemIdx x = 0; x < G.order(); ++x) {
      ElemIdx y = G.mul(G.inv(x), z);
      ++data[(G.class_of(x) * r + G.class_of(y)) * r + k];
    }
  }
  return ClassConstants(r, std::move(data));
}

ClassConstants class_constants(const PermGroup& G) {
  std::vector<ElemIdx> reps;
  for (const auto& c : G.classes()) reps.push_back(c.representative);
  return class_constants(G, reps);
}

// ---------------------------------------------------------------------------
// Finite-field linear algebra

namespace {

using u64 = std::uint64_t;
using Vec = std::vector<u64>;
using Mat = std::vector<Vec>;

struct Fp {
  u64 p;
  u64 add(u64 a, u64 b) const { return (a + b) % p; }
  u64 sub(u64 a, u64 b) const { return (a + p - b) % p; }
  u64 mul(u64 a, u64 b) const { return mod_mul(a, b, p); }
  u64 inv(u64 a) const { return mod_inv(a, p); }
  u64 neg(u64 a) const { return a == 0 ? 0 : p - a; }
};

// Row-reduces `rows` in place to reduced echelon form; returns pivot columns.
std::vector<std::size_t> rref(const Fp& F, Mat& rows) {
  std::vector<std::size_t> pivots;
  if (rows.empty()) return pivots;
  const std::size_t ncols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < ncols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[rank], rows[piv]);
    u64 inv = F.inv(rows[rank][c]);
    for (auto& x : rows[rank]) x = F.mul(x, inv);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      u64 f = rows[i][c];
      for (std::size_t j = 0; j < ncols; ++j) {
        if (rows[rank][j] != 0) rows[i][j] = F.sub(rows[i][j], F.mul(f, rows[rank][j]));
      }
    }
    pivots.push_back(c);
    ++rank;
  }
  rows.resize(rank);
  return pivots;
}

// Basis of {x : M x = 0}.
Mat nullspace(const Fp& F, Mat M) {
  const std::size_t n = M.empty() ? 0 : M[0].size();
  auto pivots = rref(F, M);
  std::vector<bool> is_pivot(n, false);
  for (auto c : pivots) is_pivot[c] = true;
  Mat out;
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    Vec v(n, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = F.neg(M[r][free]);
    out.push_back(std::move(v));
  }
  return out;
}

// Characteristic polynomial via Hessenberg reduction, constant term first.
Vec charpoly(const Fp& F, Mat H) {
  const std::size_t n = H.size();
  for (std::size_t m = 1; m + 1 <= n; ++m) {
    std::size_t i = m;
    while (i < n && H[i][m - 1] == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      std::swap(H[i], H[m]);
      for (auto& row : H) std::swap(row[i], row[m]);
    }
    u64 t_inv = F.inv(H[m][m - 1]);
    for (i = m + 1; i < n; ++i) {
      u64 u = F.mul(H[i][m - 1], t_inv);
      if (u == 0) continue;
      for (std::size_t j = 0; j < n; ++j) H[i][j] = F.sub(H[i][j], F.mul(u, H[m][j]));
      for (std::size_t j = 0; j < n; ++j) H[j][m] = F.add(H[j][m], F.mul(u, H[j][i]));
    }
  }
  std::vector<Vec> p(n + 1);
  p[0] = {1};
  for (std::size_t m = 0; m < n; ++m) {
    // p[m+1] = (x - H[m][m]) p[m] - Σ_{i=1}^{m} (Π_{j=m-i+1}^{m} H[j][j-1]) H[m-i][m] p[m-i]
    Vec next(m + 2, 0);
    for (std::size_t k = 0; k <= m; ++k) {
      next[k + 1] = F.add(next[k + 1], p[m][k]);
      next[k] = F.sub(next[k], F.mul(H[m][m], p[m][k]));
    }
    u64 t = 1;
    for (std::size_t i = 1; i <= m; ++i) {
      t = F.mul(t, H[m - i + 1][m - i]);
      u64 c = F.mul(t, H[m - i][m]);
      if (c == 0) continue;
      for (std::size_t k = 0; k < p[m - i].size(); ++k) {
        next[k] = F.sub(next[k], F.mul(c, p[m - i][k]));
      }
    }
    p[m + 1] = std::move(next);
  }
  return p[n];
}

u64 eval_poly(const Fp& F, const Vec& poly, u64 x) {
  u64 acc = 0;
  for (std::size_t k = poly.size(); k-- > 0;) acc = F.add(F.mul(acc, x), poly[k]);
  return acc;
}

u64 primitive_root(u64 p) {
  auto factors = prime_divisors(p - 1);
  for (u64 g = 2; g < p; ++g) {
    bool ok = std::all_of(factors.begin(), factors.end(),
                          [&](u64 q) { return mod_pow(g, (p - 1) / q, p) != 1; });
    if (ok) return g;
  }
  return 1;  // p = 2
}

struct SplitFailure {
  std::string reason;
};

// Subspace of F_p^r held as rows in reduced echelon form.
struct Space {
  Mat basis;
  std::vector<std::size_t> pivots;
};

Space make_space(const Fp& F, Mat rows) {
  Space s;
  s.pivots = rref(F, rows);
  s.basis = std::move(rows);
  return s;
}

struct TableData {
  std::vector<ClassFunction> rows;
};

TableData dixon_attempt(const PermGroup& G, const ClassConstants& cc, u64 ell) {
  const Fp F{ell};
  const std::size_t r = G.class_count();
  const auto& classes = G.classes();
  const u64 n = G.order();
  const auto e = static_cast<unsigned>(G.exponent());

  std::vector<Space> spaces;
  {
    Mat id(r, Vec(r, 0));
    for (std::size_t i = 0; i < r; ++i) id[i][i] = 1;
    spaces.push_back(make_space(F, std::move(id)));
  }
  for (std::size_t j = 1; j < r && spaces.size() < r; ++j) {
    std::vector<Space> next;
    for (auto& sp : spaces) {
      const std::size_t d = sp.basis.size();
      if (d == 1) {
        next.push_back(std::move(sp));
        continue;
      }
      // X[a][c] = (A_j b_c)[pivot_a],  (A_j v)_i = Σ_k a(j, i, k) v_k
      Mat X(d, Vec(d, 0));
      for (std::size_t c = 0; c < d; ++c) {
        const Vec& b = sp.basis[c];
        for (std::size_t a = 0; a < d; ++a) {
          const std::size_t i = sp.pivots[a];
          u64 acc = 0;
          for (std::size_t k = 0; k < r; ++k) {
            if (b[k] != 0) acc = F.add(acc, F.mul(cc(j, i, k) % ell, b[k]));
          }
          X[a][c] = acc;
        }
      }
      Vec cp = charpoly(F, X);
      std::size_t found = 0;
      for (u64 lambda = 0; lambda < ell && found < d; ++lambda) {
        if (eval_poly(F, cp, lambda) != 0) continue;
        Mat Y = X;
        for (std::size_t a = 0; a < d; ++a) Y[a][a] = F.sub(Y[a][a], lambda);
        Mat coords = nullspace(F, Y);
        Mat vecs;
        for (const auto& c : coords) {
          Vec v(r, 0);
          for (std::size_t a = 0; a < d; ++a) {
            if (c[a] == 0) continue;
            for (std::size_t k = 0; k < r; ++k) v[k] = F.add(v[k], F.mul(c[a], sp.basis[a][k]));
          }
          vecs.push_back(std::move(v));
        }
        found += vecs.size();
        next.push_back(make_space(F, std::move(vecs)));
      }
      if (found != d) throw SplitFailure{"class matrix not diagonalizable over F_" + std::to_string(ell)};
    }
    spaces = std::move(next);
  }
  if (spaces.size() != r) throw SplitFailure{"common eigenspaces did not separate"};

  // Powers of each representative, as classes.
  std::vector<std::vector<std::size_t>> pow_class(r);
  for (std::size_t k = 0; k < r; ++k) {
    ElemIdx x = PermGroup::identity();
    const ElemIdx g = classes[k].representative;
    const unsigned o = G.element_order(g);
    for (unsigned s = 0; s < o; ++s) {
      pow_class[k].push_back(G.class_of(x));
      x = G.mul(x, g);
    }
  }
  std::vector<std::size_t> inv_class(r);
  for (std::size_t k = 0; k < r; ++k) inv_class[k] = G.class_of(G.inv(classes[k].representative));

  const u64 z = mod_pow(primitive_root(ell), (ell - 1) / e, ell);
  const u64 dmax = static_cast<u64>(std::sqrt(static_cast<double>(n))) + 1;
  u64 degree_sq_sum = 0;
  TableData out;
  for (auto& sp : spaces) {
    Vec w = sp.basis[0];
    if (w[0] == 0) throw SplitFailure{"eigenvector vanishes at the identity class"};
    u64 s0 = F.inv(w[0]);
    for (auto& x : w) x = F.mul(x, s0);
    // Σ_k ω_k ω_{k*} / |C_k| = |G| / χ(1)^2
    u64 s = 0;
    for (std::size_t k = 0; k < r; ++k) {
      s = F.add(s, F.mul(F.mul(w[k], w[inv_class[k]]), F.inv(classes[k].size() % ell)));
    }
    if (s == 0) throw SplitFailure{"degenerate norm"};
    const u64 dsq = F.mul(n % ell, F.inv(s));
    u64 degree = 0;
    for (u64 d = 1; d <= dmax && d * d <= n; ++d) {
      if (n % d == 0 && (d * d) % ell == dsq) {
        degree = d;
        break;
      }
    }
    if (degree == 0) throw SplitFailure{"no integral degree"};
    degree_sq_sum += degree * degree;
    Vec chi(r);
    for (std::size_t k = 0; k < r; ++k) {
      chi[k] = F.mul(F.mul(w[k], degree % ell), F.inv(classes[k].size() % ell));
    }
    std::vector<Cyclotomic> values;
    values.reserve(r);
    for (std::size_t k = 0; k < r; ++k) {
      const auto o = static_cast<unsigned>(pow_class[k].size());
      const u64 zo = mod_pow(z, e / o, ell);
      const u64 o_inv = F.inv(o % ell);
      std::vector<Rational> coeffs(e, Rational(0));
      u64 total = 0;
      for (unsigned t = 0; t < o; ++t) {
        // m_t = (1/o) Σ_s χ(g^s) zo^{-ts}
        u64 acc = 0;
        const u64 step = F.inv(mod_pow(zo, t, ell));
        u64 root = 1;
        for (unsigned s = 0; s < o; ++s) {
          acc = F.add(acc, F.mul(chi[pow_class[k][s]], root));
          root = F.mul(root, step);
        }
        u64 m = F.mul(acc, o_inv);
        if (m > degree) throw SplitFailure{"eigenvalue multiplicity out of range"};
        total += m;
        coeffs[static_cast<std::size_t>(t) * (e / o)] = static_cast<long>(m);
      }
      if (total != degree) throw SplitFailure{"multiplicities do not sum to the degree"};
      values.push_back(Cyclotomic::from_powers(e, coeffs));
    }
    out.rows.emplace_back(G, std::move(values));
  }
  if (degree_sq_sum != n) throw SplitFailure{"sum of squared degrees differs from |G|"};
  return out;
}

}  // namespace

std::uint64_t dixon_prime(std::uint64_t order, std::uint64_t exponent, std::uint64_t from) {
  std::uint64_t ell = exponent + 1;
  while (ell * ell <= 4 * order || ell < from || !is_prime(ell)) ell += exponent;
  return ell;
}

CharacterTable character_table(const PermGroup& G, const TableOptions& options) {
  const std::size_t r = G.class_count();
  if (r > options.class_cap) {
    throw ResourceError("class count " + std::to_string(r) + " exceeds class cap " +
                        std::to_string(options.class_cap));
  }
  CharacterTable table{G, {}, {}, {}, {}, {}, {}, G.exponent(), 0};
  for (const auto& c : G.classes()) {
    table.class_sizes.push_back(c.size());
    table.representatives.push_back(c.representative);
    table.element_orders.push_back(G.element_order(c.representative));
    table.inverse_class.push_back(G.class_of(G.inv(c.representative)));
  }
  for (auto p : prime_divisors(G.order())) table.power_maps[p] = power_map(G, static_cast<long long>(p));

  const ClassConstants cc = class_constants(G);
  std::uint64_t ell = dixon_prime(G.order(), G.exponent(), options.first_prime);
  std::string last_failure;
  for (unsigned attempt = 0; attempt < options.max_attempts; ++attempt) {
    try {
      TableData data = dixon_attempt(G, cc, ell);
      auto& rows = data.rows;
      const ClassFunction trivial = ClassFunction::trivial(G);
      std::sort(rows.begin(), rows.end(), [&](const ClassFunction& a, const ClassFunction& b) {
        bool ta = a == trivial;
        bool tb = b == trivial;
        if (ta != tb) return ta;
        auto da = a.degree();
        auto db = b.degree();
        if (da != db) return da < db;
        for (std::size_t k = 0; k < a.values().size(); ++k) {
          auto c = compare(a[k], b[k]);
          if (c != 0) return c < 0;
        }
        return false;
      });
      table.irreducibles = std::move(rows);
      table.modulus = ell;
      return table;
    } catch (const SplitFailure& f) {
      last_failure = f.reason;
      ell = dixon_prime(G.order(), G.exponent(), ell + 1);
    }
  }
  throw InternalError("character table construction failed: " + last_failure);
}

OrthogonalityReport check_orthogonality(const CharacterTable& table) {
  OrthogonalityReport rep;
  const PermGroup& G = table.group;
  const std::size_t r = G.class_count();
  rep.square = table.size() == r;
  Integer sum = 0;
  for (const auto& chi : table.irreducibles) sum += chi.degree() * chi.degree();
  rep.degree_sum = sum == Integer(static_cast<unsigned long>(G.order()));
  if (!rep.square) return rep;

  std::vector<ClassFunction> conj;
  for (const auto& chi : table.irreducibles) conj.push_back(chi.conjugate());
  rep.rows = true;
  for (std::size_t a = 0; a < r && rep.rows; ++a) {
    for (std::size_t b = a; b < r; ++b) {
      Cyclotomic acc;
      for (std::size_t k = 0; k < r; ++k) {
        acc += table[a][k] * conj[b][k] * Rational(static_cast<long>(table.class_sizes[k]));
      }
      if (!(acc == Cyclotomic(a == b ? static_cast<long long>(G.order()) : 0))) {
        rep.rows = false;
        break;
      }
    }
  }
  rep.columns = true;
  for (std::size_t i = 0; i < r && rep.columns; ++i) {
    for (std::size_t j = i; j < r; ++j) {
      Cyclotomic acc;
      for (std::size_t c = 0; c < r; ++c) acc += table[c][i] * conj[c][j];
      long long expect = i == j ? static_cast<long long>(G.order() / table.class_sizes[i]) : 0;
      if (!(acc == Cyclotomic(expect))) {
        rep.columns = false;
        break;
      }
    }
  }
  return rep;
}

}  // namespace charkernel
