#include "hvc/polynomial.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <unordered_map>

namespace hvc {

std::string to_string(const Rational& q) { return q.get_str(); }

namespace {

constexpr unsigned kMaxExponent = 255;

Monomial::Factor pack(std::uint32_t key, unsigned exponent) {
  if (exponent > kMaxExponent) throw std::overflow_error("monomial exponent exceeds 255");
  return (key << 8) | exponent;
}

}  // namespace

// ---------------------------------------------------------------- Monomial

Monomial Monomial::var(const JetCoord& x, unsigned exponent) {
  Monomial m;
  if (exponent == 0) return m;
  m.f_.push_back(pack(x.key(), exponent));
  m.degree_ = static_cast<std::uint16_t>(exponent);
  return m;
}

unsigned Monomial::exponent(const JetCoord& x) const {
  auto key = x.key();
  for (auto f : f_)
    if ((f >> 8) == key) return f & 0xff;
  return 0;
}

unsigned Monomial::max_order() const {
  unsigned r = 0;
  for (auto f : f_) r = std::max(r, ((f >> 8) >> 8) & 0xff);
  return r;
}

Monomial operator*(const Monomial& a, const Monomial& b) {
  Monomial m;
  m.f_.reserve(a.f_.size() + b.f_.size());
  std::size_t i = 0, j = 0;
  while (i < a.f_.size() && j < b.f_.size()) {
    auto ka = a.f_[i] >> 8, kb = b.f_[j] >> 8;
    if (ka < kb) {
      m.f_.push_back(a.f_[i++]);
    } else if (kb < ka) {
      m.f_.push_back(b.f_[j++]);
    } else {
      m.f_.push_back(pack(ka, (a.f_[i] & 0xff) + (b.f_[j] & 0xff)));
      ++i, ++j;
    }
  }
  for (; i < a.f_.size(); ++i) m.f_.push_back(a.f_[i]);
  for (; j < b.f_.size(); ++j) m.f_.push_back(b.f_[j]);
  unsigned deg = unsigned{a.degree_} + b.degree_;
  if (deg > 0xffff) throw std::overflow_error("monomial degree overflow");
  m.degree_ = static_cast<std::uint16_t>(deg);
  return m;
}

Monomial Monomial::lowered(std::size_t k) const {
  Monomial m = *this;
  if ((m.f_[k] & 0xff) == 1)
    m.f_.erase(m.f_.begin() + static_cast<std::ptrdiff_t>(k));
  else
    --m.f_[k];
  --m.degree_;
  return m;
}

bool Monomial::divides(const Monomial& other) const {
  std::size_t j = 0;
  for (auto f : f_) {
    auto key = f >> 8;
    while (j < other.f_.size() && (other.f_[j] >> 8) < key) ++j;
    if (j == other.f_.size() || (other.f_[j] >> 8) != key || (other.f_[j] & 0xff) < (f & 0xff)) return false;
  }
  return true;
}

Monomial Monomial::quotient(const Monomial& divisor) const {
  Monomial m;
  std::size_t j = 0;
  for (auto f : f_) {
    auto key = f >> 8;
    unsigned e = f & 0xff;
    if (j < divisor.f_.size() && (divisor.f_[j] >> 8) == key) {
      e -= divisor.f_[j] & 0xff;
      ++j;
    }
    if (e > 0) m.f_.push_back(pack(key, e));
  }
  m.degree_ = static_cast<std::uint16_t>(degree_ - divisor.degree_);
  return m;
}

std::strong_ordering grlex(const Monomial& a, const Monomial& b) {
  if (auto c = a.degree_ <=> b.degree_; c != 0) return c;
  std::size_t n = std::min(a.f_.size(), b.f_.size());
  for (std::size_t k = 0; k < n; ++k) {
    auto ka = a.f_[k] >> 8, kb = b.f_[k] >> 8;
    if (ka != kb) return ka < kb ? std::strong_ordering::greater : std::strong_ordering::less;
    auto ea = a.f_[k] & 0xff, eb = b.f_[k] & 0xff;
    if (ea != eb) return ea <=> eb;
  }
  return a.f_.size() <=> b.f_.size();
}

std::size_t Monomial::hash() const {
  std::size_t h = 0xcbf29ce484222325ull;
  for (auto f : f_) h = (h ^ f) * 0x100000001b3ull;
  return h;
}

// -------------------------------------------------------------- Polynomial

namespace {

// Merge two descending term lists, scaling b by sign.
std::vector<Term> merge_terms(const std::vector<Term>& a, const std::vector<Term>& b, bool subtract) {
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = grlex(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(a[i++]);
    } else if (c < 0) {
      out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
      ++j;
    } else {
      Rational s = subtract ? Rational(a[i].coeff - b[j].coeff) : Rational(a[i].coeff + b[j].coeff);
      if (s != 0) out.push_back(Term{a[i].mono, std::move(s)});
      ++i, ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(subtract ? Term{b[j].mono, -b[j].coeff} : b[j]);
  return out;
}

std::vector<Term> merge_move(std::vector<Term>&& a, std::vector<Term>&& b) {
  if (a.empty()) return std::move(b);
  if (b.empty()) return std::move(a);
  std::vector<Term> out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    auto c = grlex(a[i].mono, b[j].mono);
    if (c > 0) {
      out.push_back(std::move(a[i++]));
    } else if (c < 0) {
      out.push_back(std::move(b[j++]));
    } else {
      a[i].coeff += b[j].coeff;
      if (a[i].coeff != 0) out.push_back(std::move(a[i]));
      ++i, ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(std::move(a[i]));
  for (; j < b.size(); ++j) out.push_back(std::move(b[j]));
  return out;
}

std::vector<Term> merge_all(std::vector<std::vector<Term>> rows) {
  if (rows.empty()) return {};
  while (rows.size() > 1) {
    std::vector<std::vector<Term>> next;
    next.reserve((rows.size() + 1) / 2);
    for (std::size_t k = 0; k + 1 < rows.size(); k += 2)
      next.push_back(merge_move(std::move(rows[k]), std::move(rows[k + 1])));
    if (rows.size() % 2) next.push_back(std::move(rows.back()));
    rows = std::move(next);
  }
  return std::move(rows.front());
}

}  // namespace

Polynomial::Polynomial(const Rational& c) {
  if (c != 0) terms_.push_back(Term{Monomial(), c});
}

Polynomial Polynomial::variable(const JetCoord& x) { return term(Monomial::var(x), 1); }

Polynomial Polynomial::term(Monomial m, Rational c) {
  Polynomial p;
  if (c != 0) p.terms_.push_back(Term{std::move(m), std::move(c)});
  return p;
}

Polynomial Polynomial::from_terms(std::vector<Term> terms) {
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return grlex(a.mono, b.mono) > 0; });
  Polynomial p;
  for (auto& t : terms) {
    if (!p.terms_.empty() && p.terms_.back().mono == t.mono) {
      p.terms_.back().coeff += t.coeff;
      if (p.terms_.back().coeff == 0) p.terms_.pop_back();
    } else if (t.coeff != 0) {
      p.terms_.push_back(std::move(t));
    }
  }
  return p;
}

Rational Polynomial::constant_value() const {
  if (terms_.empty()) return 0;
  if (!is_constant()) throw std::logic_error("polynomial is not constant");
  return terms_[0].coeff;
}

unsigned Polynomial::degree() const { return terms_.empty() ? 0 : terms_.front().mono.degree(); }

unsigned Polynomial::max_order() const {
  unsigned r = 0;
  for (auto& t : terms_) r = std::max(r, t.mono.max_order());
  return r;
}

std::vector<JetCoord> Polynomial::coordinates() const {
  std::vector<std::uint32_t> keys;
  for (auto& t : terms_)
    for (std::size_t k = 0; k < t.mono.size(); ++k) keys.push_back(t.mono.key(k));
  std::sort(keys.begin(), keys.end());
  keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
  std::vector<JetCoord> out;
  out.reserve(keys.size());
  for (auto k : keys) out.push_back(JetCoord::from_key(k));
  return out;
}

bool Polynomial::depends_on(const JetCoord& x) const {
  for (auto& t : terms_)
    if (t.mono.exponent(x) > 0) return true;
  return false;
}

Polynomial Polynomial::operator-() const {
  Polynomial p = *this;
  for (auto& t : p.terms_) t.coeff = -t.coeff;
  return p;
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  Polynomial p;
  p.terms_ = merge_terms(a.terms_, b.terms_, false);
  return p;
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) return a;
  Polynomial p;
  p.terms_ = merge_terms(a.terms_, b.terms_, true);
  return p;
}

Polynomial Polynomial::times_term(const Monomial& m, const Rational& c) const {
  Polynomial p;
  if (c == 0) return p;
  p.terms_.reserve(terms_.size());
  for (auto& t : terms_) p.terms_.push_back(Term{t.mono * m, t.coeff * c});
  return p;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  const Polynomial& small = a.size() <= b.size() ? a : b;
  const Polynomial& large = a.size() <= b.size() ? b : a;
  if (small.size() == 1) return large.times_term(small.terms_[0].mono, small.terms_[0].coeff);
  std::vector<std::vector<Term>> rows;
  rows.reserve(small.size());
  for (auto& t : small.terms_) rows.push_back(large.times_term(t.mono, t.coeff).terms_);
  Polynomial p;
  p.terms_ = merge_all(std::move(rows));
  return p;
}

Polynomial Polynomial::scaled(const Rational& c) const { return times_term(Monomial(), c); }

Polynomial Polynomial::pow(unsigned n) const {
  Polynomial result(1), base = *this;
  while (n) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

Polynomial Polynomial::partial(const JetCoord& x) const {
  Polynomial p;
  auto key = x.key();
  for (auto& t : terms_) {
    for (std::size_t k = 0; k < t.mono.size(); ++k) {
      if (t.mono.key(k) != key) continue;
      p.terms_.push_back(Term{t.mono.lowered(k), t.coeff * t.mono.exponent_at(k)});
      break;
    }
  }
  return p;
}

Polynomial Polynomial::derivation(const std::function<const Polynomial*(const JetCoord&)>& component) const {
  // Bucket the partial derivatives per coordinate; each bucket stays sorted.
  std::map<std::uint32_t, std::vector<Term>> buckets;
  for (auto& t : terms_)
    for (std::size_t k = 0; k < t.mono.size(); ++k)
      buckets[t.mono.key(k)].push_back(Term{t.mono.lowered(k), t.coeff * t.mono.exponent_at(k)});
  std::vector<std::vector<Term>> rows;
  for (auto& [key, bucket] : buckets) {
    const Polynomial* comp = component(JetCoord::from_key(key));
    if (comp == nullptr || comp->is_zero()) continue;
    Polynomial partial;
    partial.terms_ = std::move(bucket);
    rows.push_back((partial * *comp).terms_);
  }
  Polynomial p;
  p.terms_ = merge_all(std::move(rows));
  return p;
}

std::optional<Polynomial> Polynomial::divide_exact(const Polynomial& other) const {
  if (other.is_zero()) throw std::domain_error("division by the zero polynomial");
  std::vector<Term> quotient;
  Polynomial rem = *this;
  const Term& lead = other.leading();
  while (!rem.is_zero()) {
    const Term& r = rem.leading();
    if (!lead.mono.divides(r.mono)) return std::nullopt;
    Term q{r.mono.quotient(lead.mono), r.coeff / lead.coeff};
    rem -= other.times_term(q.mono, q.coeff);
    quotient.push_back(std::move(q));
  }
  Polynomial p;
  p.terms_ = std::move(quotient);  // produced in decreasing order
  return p;
}

Rational Polynomial::content() const {
  if (terms_.empty()) return 0;
  mpz_class g = 0, l = 1;
  for (auto& t : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), t.coeff.get_num_mpz_t());
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), t.coeff.get_den_mpz_t());
  }
  Rational c(g, l);
  c.canonicalize();
  if (terms_.front().coeff < 0) c = -c;
  return c;
}

Rational Polynomial::evaluate(const std::function<Rational(const JetCoord&)>& value) const {
  std::unordered_map<std::uint32_t, Rational> cache;
  Rational total = 0;
  for (auto& t : terms_) {
    Rational v = t.coeff;
    for (std::size_t k = 0; k < t.mono.size(); ++k) {
      auto key = t.mono.key(k);
      auto it = cache.find(key);
      if (it == cache.end()) it = cache.emplace(key, value(JetCoord::from_key(key))).first;
      Rational pw;
      mpz_pow_ui(pw.get_num_mpz_t(), it->second.get_num_mpz_t(), t.mono.exponent_at(k));
      mpz_pow_ui(pw.get_den_mpz_t(), it->second.get_den_mpz_t(), t.mono.exponent_at(k));
      v *= pw;
    }
    total += v;
  }
  return total;
}

bool operator==(const Polynomial& a, const Polynomial& b) {
  if (a.terms_.size() != b.terms_.size()) return false;
  for (std::size_t k = 0; k < a.terms_.size(); ++k)
    if (!(a.terms_[k].mono == b.terms_[k].mono) || a.terms_[k].coeff != b.terms_[k].coeff) return false;
  return true;
}

std::strong_ordering compare(const Polynomial& a, const Polynomial& b) {
  std::size_t n = std::min(a.terms_.size(), b.terms_.size());
  for (std::size_t k = 0; k < n; ++k) {
    if (auto c = grlex(a.terms_[k].mono, b.terms_[k].mono); c != 0) return c;
    int s = cmp(a.terms_[k].coeff, b.terms_[k].coeff);
    if (s != 0) return s < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  return a.terms_.size() <=> b.terms_.size();
}

namespace {

std::string plain_monomial(const Monomial& m) {
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!s.empty()) s += '*';
    s += m.coord(k).str();
    if (m.exponent_at(k) > 1) s += '^' + std::to_string(m.exponent_at(k));
  }
  return s;
}

std::string latex_monomial(const Monomial& m) {
  std::string s;
  for (std::size_t k = 0; k < m.size(); ++k) {
    if (!s.empty()) s += ' ';
    if (m.exponent_at(k) > 1)
      s += '{' + m.coord(k).latex() + "}^{" + std::to_string(m.exponent_at(k)) + '}';
    else
      s += m.coord(k).latex();
  }
  return s;
}

std::string latex_rational(const Rational& q) {
  if (q.get_den() == 1) return q.get_num().get_str();
  return "\\frac{" + q.get_num().get_str() + "}{" + q.get_den().get_str() + "}";
}

}  // namespace

std::string Polynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& t : terms_) {
    Rational mag = abs(t.coeff);
    bool neg = t.coeff < 0;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    if (t.mono.is_one()) {
      s += mag.get_str();
    } else if (mag == 1) {
      s += plain_monomial(t.mono);
    } else {
      s += mag.get_str() + "*" + plain_monomial(t.mono);
    }
  }
  return s;
}

std::string Polynomial::latex() const {
  if (terms_.empty()) return "0";
  std::string s;
  bool first = true;
  for (auto& t : terms_) {
    Rational mag = abs(t.coeff);
    bool neg = t.coeff < 0;
    if (first)
      s += neg ? "-" : "";
    else
      s += neg ? " - " : " + ";
    first = false;
    if (t.mono.is_one())
      s += latex_rational(mag);
    else if (mag == 1)
      s += latex_monomial(t.mono);
    else
      s += latex_rational(mag) + " " + latex_monomial(t.mono);
  }
  return s;
}

Polynomial sum(std::vector<Polynomial> parts) {
  std::vector<std::vector<Term>> rows;
  rows.reserve(parts.size());
  for (auto& p : parts)
    if (!p.is_zero()) rows.push_back(std::move(p.terms_));
  Polynomial out;
  out.terms_ = merge_all(std::move(rows));
  return out;
}

}  // namespace hvc
