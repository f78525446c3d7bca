#include "charkernel/cyclotomic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <numeric>

#include "charkernel/errors.hpp"
#include "charkernel/numtheory.hpp"

namespace charkernel {

namespace detail {

struct CycloField {
  unsigned e = 1;
  unsigned phi = 1;
  // power[k] = x^k mod Φ_e as φ integer coordinates, for k < max(e, 2φ - 1).
  std::vector<std::vector<long long>> power;
};

}  // namespace detail

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::vector<long long> poly_exact_div(std::vector<long long> num, const std::vector<long long>& den) {
  // den monic; num divisible by den.
  const std::size_t dn = den.size() - 1;
  std::vector<long long> q(num.size() - dn, 0);
  for (std::size_t i = num.size(); i-- > dn;) {
    long long c = num[i];
    q[i - dn] = c;
    for (std::size_t j = 0; j <= dn; ++j) num[i - dn + j] -= c * den[j];
  }
  return q;
}

const std::vector<long long>& cyclo_poly_locked(unsigned n,
                                                std::map<unsigned, std::vector<long long>>& cache) {
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<long long> p(n + 1, 0);
  p[0] = -1;
  p[n] = 1;
  for (unsigned d = 1; d < n; ++d) {
    if (n % d == 0) p = poly_exact_div(std::move(p), cyclo_poly_locked(d, cache));
  }
  return cache.emplace(n, std::move(p)).first->second;
}

std::map<unsigned, std::vector<long long>>& poly_cache() {
  static std::map<unsigned, std::vector<long long>> cache;
  return cache;
}

std::map<unsigned, std::unique_ptr<detail::CycloField>>& field_cache() {
  static std::map<unsigned, std::unique_ptr<detail::CycloField>> cache;
  return cache;
}

}  // namespace

const std::vector<long long>& cyclotomic_polynomial(unsigned n) {
  if (n == 0) throw PreconditionError("cyclotomic polynomial of order 0");
  std::lock_guard lock(registry_mutex());
  return cyclo_poly_locked(n, poly_cache());
}

std::string rational_to_string(const Rational& q) { return q.get_str(); }

const detail::CycloField* Cyclotomic::field_for(unsigned e) {
  if (e == 0) throw PreconditionError("conductor must be positive");
  std::lock_guard lock(registry_mutex());
  auto& cache = field_cache();
  auto it = cache.find(e);
  if (it != cache.end()) return it->second.get();
  const auto& phi_poly = cyclo_poly_locked(e, poly_cache());
  auto f = std::make_unique<detail::CycloField>();
  f->e = e;
  f->phi = static_cast<unsigned>(phi_poly.size() - 1);
  const unsigned limit = std::max<unsigned>(e, 2 * f->phi - 1);
  std::vector<long long> cur(f->phi, 0);
  cur[0] = 1;
  for (unsigned k = 0; k < limit; ++k) {
    f->power.push_back(cur);
    // multiply by x and reduce
    long long top = cur[f->phi - 1];
    for (unsigned i = f->phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0) {
      for (unsigned i = 0; i < f->phi; ++i) cur[i] -= top * phi_poly[i];
    }
  }
  return cache.emplace(e, std::move(f)).first->second.get();
}

Cyclotomic::Cyclotomic() : field_(field_for(1)), coeffs_(1, Rational(0)) {}
Cyclotomic::Cyclotomic(long long v) : field_(field_for(1)), coeffs_(1, Rational(static_cast<long>(v))) {}
Cyclotomic::Cyclotomic(const Rational& q) : field_(field_for(1)), coeffs_(1, q) {}

unsigned Cyclotomic::conductor() const { return field_->e; }

namespace {

void accumulate_power(const detail::CycloField& f, std::vector<Rational>& out, unsigned k,
                      const Rational& c) {
  const auto& row = f.power[k];
  for (unsigned i = 0; i < f.phi; ++i) {
    if (row[i] != 0) out[i] += c * static_cast<long>(row[i]);
  }
}

}  // namespace

Cyclotomic Cyclotomic::root_of_unity(unsigned e, long long k) {
  const auto* f = field_for(e);
  long long r = k % static_cast<long long>(e);
  if (r < 0) r += e;
  std::vector<Rational> c(f->phi, Rational(0));
  accumulate_power(*f, c, static_cast<unsigned>(r), Rational(1));
  return Cyclotomic(f, std::move(c));
}

Cyclotomic Cyclotomic::from_powers(unsigned e, std::span<const Rational> coeffs) {
  const auto* f = field_for(e);
  std::vector<Rational> c(f->phi, Rational(0));
  for (std::size_t t = 0; t < coeffs.size(); ++t) {
    if (coeffs[t] != 0) accumulate_power(*f, c, static_cast<unsigned>(t % e), coeffs[t]);
  }
  return Cyclotomic(f, std::move(c));
}

Cyclotomic Cyclotomic::embed(unsigned m) const {
  const unsigned e = field_->e;
  if (m == e) return *this;
  if (m % e != 0) throw PreconditionError("embed: target conductor is not a multiple");
  const auto* f = field_for(m);
  const unsigned step = m / e;
  std::vector<Rational> c(f->phi, Rational(0));
  for (unsigned i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) accumulate_power(*f, c, i * step, coeffs_[i]);
  }
  return Cyclotomic(f, std::move(c));
}

Cyclotomic Cyclotomic::galois(long long a) const {
  const auto e = static_cast<long long>(field_->e);
  long long r = a % e;
  if (r < 0) r += e;
  if (std::gcd(r, e) != 1 && e > 1) throw PreconditionError("galois: exponent not a unit");
  std::vector<Rational> c(field_->phi, Rational(0));
  for (unsigned i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) {
      accumulate_power(*field_, c, static_cast<unsigned>((i * r) % e), coeffs_[i]);
    }
  }
  return Cyclotomic(field_, std::move(c));
}

bool Cyclotomic::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

std::optional<Rational> Cyclotomic::as_rational() const {
  for (std::size_t i = 1; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return std::nullopt;
  }
  return coeffs_[0];
}

std::optional<Integer> Cyclotomic::as_integer() const {
  auto q = as_rational();
  if (!q || q->get_den() != 1) return std::nullopt;
  return Integer(q->get_num());
}

std::complex<double> Cyclotomic::evaluate() const {
  std::complex<double> z = 0;
  const double two_pi = 2.0 * std::numbers::pi;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    double ang = two_pi * static_cast<double>(i) / field_->e;
    z += coeffs_[i].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return z;
}

std::string Cyclotomic::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0) continue;
    if (!out.empty()) out += " + ";
    out += rational_to_string(coeffs_[i]);
    if (i > 0) out += "*z(" + std::to_string(field_->e) + ")^" + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

Rational parse_rational(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw StructuralError("empty rational in cyclotomic string");
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch)) && ch != '-' && ch != '/') {
      throw StructuralError("bad rational '" + std::string(s) + "'");
    }
  }
  Rational q;
  if (q.set_str(std::string(s), 10) != 0) throw StructuralError("bad rational '" + std::string(s) + "'");
  q.canonicalize();
  return q;
}

unsigned long parse_uint(std::string_view s) {
  s = trim(s);
  if (s.empty()) throw StructuralError("expected integer in cyclotomic string");
  unsigned long v = 0;
  for (char ch : s) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) throw StructuralError("expected integer");
    v = v * 10 + static_cast<unsigned long>(ch - '0');
  }
  return v;
}

}  // namespace

Cyclotomic Cyclotomic::parse(std::string_view text) {
  struct Term {
    Rational coeff;
    unsigned e;
    unsigned long k;
  };
  std::vector<Term> terms;
  unsigned conductor = 1;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= text.size(); ++i) {
    if (i < text.size() && text[i] != '+') continue;
    std::string_view t = trim(text.substr(start, i - start));
    start = i + 1;
    if (t.empty()) throw StructuralError("empty term in cyclotomic string");
    auto zpos = t.find("z(");
    if (zpos == std::string_view::npos) {
      terms.push_back({parse_rational(t), 1, 0});
      continue;
    }
    std::string_view head = trim(t.substr(0, zpos));
    Rational c(1);
    if (head == "-") {
      c = -1;
    } else if (!head.empty()) {
      if (head.back() != '*') throw StructuralError("expected '*' before z(e)");
      c = parse_rational(head.substr(0, head.size() - 1));
    }
    auto close = t.find(')', zpos);
    if (close == std::string_view::npos) throw StructuralError("unclosed z(");
    auto e = static_cast<unsigned>(parse_uint(t.substr(zpos + 2, close - zpos - 2)));
    if (e == 0) throw StructuralError("conductor must be positive");
    std::string_view rest = trim(t.substr(close + 1));
    unsigned long k = 1;
    if (!rest.empty()) {
      if (rest.front() != '^') throw StructuralError("expected '^' after z(e)");
      k = parse_uint(rest.substr(1));
    }
    terms.push_back({c, e, k});
    conductor = std::lcm(conductor, e);
  }
  std::vector<Rational> powers(conductor, Rational(0));
  for (const auto& t : terms) {
    unsigned long idx = (t.k % t.e) * (conductor / t.e);
    powers[idx] += t.coeff;
  }
  return from_powers(conductor, powers);
}

void Cyclotomic::unify(Cyclotomic& other) {
  if (field_ == other.field_) return;
  unsigned m = std::lcm(field_->e, other.field_->e);
  if (field_->e != m) *this = embed(m);
  if (other.field_->e != m) other = other.embed(m);
}

Cyclotomic& Cyclotomic::operator+=(const Cyclotomic& o) {
  if (field_ == o.field_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  Cyclotomic b = o;
  unify(b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += b.coeffs_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator-=(const Cyclotomic& o) {
  if (field_ == o.field_) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  Cyclotomic b = o;
  unify(b);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= b.coeffs_[i];
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Cyclotomic& o) {
  Cyclotomic b = o;
  unify(b);
  const auto& f = *field_;
  std::vector<Rational> prod(2 * f.phi - 1, Rational(0));
  for (unsigned i = 0; i < f.phi; ++i) {
    if (coeffs_[i] == 0) continue;
    for (unsigned j = 0; j < f.phi; ++j) {
      if (b.coeffs_[j] != 0) prod[i + j] += coeffs_[i] * b.coeffs_[j];
    }
  }
  std::vector<Rational> c(f.phi, Rational(0));
  for (unsigned k = 0; k < prod.size(); ++k) {
    if (prod[k] == 0) continue;
    if (k < f.phi) {
      c[k] += prod[k];
    } else {
      accumulate_power(f, c, k, prod[k]);
    }
  }
  coeffs_ = std::move(c);
  return *this;
}

Cyclotomic& Cyclotomic::operator*=(const Rational& q) {
  for (auto& c : coeffs_) c *= q;
  return *this;
}

Cyclotomic Cyclotomic::operator-() const {
  Cyclotomic r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

bool operator==(const Cyclotomic& a, const Cyclotomic& b) {
  if (a.field_ == b.field_) return a.coeffs_ == b.coeffs_;
  Cyclotomic x = a;
  Cyclotomic y = b;
  x.unify(y);
  return x.coeffs_ == y.coeffs_;
}

std::strong_ordering compare(const Cyclotomic& a, const Cyclotomic& b) {
  Cyclotomic x = a;
  Cyclotomic y = b;
  x.unify(y);
  for (std::size_t i = 0; i < x.coeffs_.size(); ++i) {
    int c = cmp(x.coeffs_[i], y.coeffs_[i]);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

}  // namespace charkernel
