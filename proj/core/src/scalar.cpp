#include "hvc/scalar.hpp"

#include <algorithm>
#include <memory>
#include <mutex>
#include <unordered_map>

#include "hvc/errors.hpp"

namespace hvc {

namespace {

std::mutex& registry_mutex() {
  static std::mutex m;
  return m;
}

std::size_t poly_hash(const Polynomial& p) {
  std::size_t h = p.size();
  for (auto& t : p.terms()) {
    h = h * 1000003u ^ t.mono.hash();
    h = h * 1000003u ^ std::hash<std::string>{}(t.coeff.get_str());
  }
  return h;
}

bool before(const Scalar::Factor& a, const Scalar::Factor& b) {
  return a.base != b.base && compare(a.base->poly(), b.base->poly()) < 0;
}

}  // namespace

const DenominatorBase* DenominatorBase::intern(const Polynomial& primitive) {
  static std::unordered_map<std::size_t, std::vector<std::unique_ptr<DenominatorBase>>> registry;
  std::lock_guard lock(registry_mutex());
  auto& bucket = registry[poly_hash(primitive)];
  for (auto& b : bucket)
    if (b->poly_ == primitive) return b.get();
  bucket.push_back(std::make_unique<DenominatorBase>(primitive));
  return bucket.back().get();
}

Polynomial DenominatorBase::power(unsigned n) const {
  if (n == 0) return Polynomial(1);
  std::lock_guard lock(registry_mutex());
  while (powers_.size() < n) powers_.push_back(powers_.empty() ? poly_ : powers_.back() * poly_);
  return powers_[n - 1];
}

// ---------------------------------------------------------------- Scalar

void Scalar::normalize() {
  if (num_.is_zero()) {
    den_.clear();
    return;
  }
  std::erase_if(den_, [](const Factor& f) { return f.exponent == 0; });
}

Polynomial Scalar::den() const {
  Polynomial d(1);
  for (auto& f : den_) d *= f.base->power(f.exponent);
  return d;
}

unsigned Scalar::max_order() const {
  unsigned r = num_.max_order();
  for (auto& f : den_) r = std::max(r, f.base->poly().max_order());
  return r;
}

std::vector<JetCoord> Scalar::coordinates() const {
  auto out = num_.coordinates();
  for (auto& f : den_) {
    auto more = f.base->poly().coordinates();
    out.insert(out.end(), more.begin(), more.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Scalar Scalar::operator-() const { return Scalar(-num_, den_); }

Scalar Scalar::scaled(const Rational& c) const {
  Scalar s(num_.scaled(c), den_);
  s.normalize();
  return s;
}

namespace {

bool same_denominator(const std::vector<Scalar::Factor>& a, const std::vector<Scalar::Factor>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t k = 0; k < a.size(); ++k)
    if (a[k].base != b[k].base || a[k].exponent != b[k].exponent) return false;
  return true;
}

}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (same_denominator(a.den_, b.den_)) {
    Scalar s(a.num_ + b.num_, a.den_);
    s.normalize();
    return s;
  }
  std::vector<Scalar::Factor> den;
  Polynomial mult_a(1), mult_b(1);
  std::size_t i = 0, j = 0;
  while (i < a.den_.size() || j < b.den_.size()) {
    if (j == b.den_.size() || (i < a.den_.size() && before(a.den_[i], b.den_[j]))) {
      den.push_back(a.den_[i]);
      mult_b *= a.den_[i].base->power(a.den_[i].exponent);
      ++i;
    } else if (i == a.den_.size() || before(b.den_[j], a.den_[i])) {
      den.push_back(b.den_[j]);
      mult_a *= b.den_[j].base->power(b.den_[j].exponent);
      ++j;
    } else {
      unsigned ea = a.den_[i].exponent, eb = b.den_[j].exponent, e = std::max(ea, eb);
      den.push_back({a.den_[i].base, e});
      if (e > ea) mult_a *= a.den_[i].base->power(e - ea);
      if (e > eb) mult_b *= b.den_[j].base->power(e - eb);
      ++i, ++j;
    }
  }
  Scalar s(a.num_ * mult_a + b.num_ * mult_b, std::move(den));
  s.normalize();
  return s;
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  if (a.is_zero() || b.is_zero()) return Scalar();
  std::vector<Scalar::Factor> den;
  std::size_t i = 0, j = 0;
  while (i < a.den_.size() || j < b.den_.size()) {
    if (j == b.den_.size() || (i < a.den_.size() && before(a.den_[i], b.den_[j]))) {
      den.push_back(a.den_[i++]);
    } else if (i == a.den_.size() || before(b.den_[j], a.den_[i])) {
      den.push_back(b.den_[j++]);
    } else {
      den.push_back({a.den_[i].base, a.den_[i].exponent + b.den_[j].exponent});
      ++i, ++j;
    }
  }
  return Scalar(a.num_ * b.num_, std::move(den));
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DomainError("division by the zero scalar");
  Rational c = num_.content();
  Polynomial primitive = num_.scaled(1 / c);
  Polynomial top = den().scaled(1 / c);
  if (primitive.is_constant()) return Scalar(top);  // primitive == 1
  return Scalar(std::move(top), {Factor{DenominatorBase::intern(primitive), 1}});
}

Scalar operator/(const Scalar& a, const Scalar& b) {
  if (b.is_zero()) throw DomainError("division by the zero scalar");
  if (a.is_zero()) return Scalar();
  return a * b.inverse();
}

Scalar Scalar::pow(long n) const {
  if (n < 0) return inverse().pow(-n);
  if (n == 0) return Scalar(1);
  auto den = den_;
  for (auto& f : den) f.exponent *= static_cast<unsigned>(n);
  return Scalar(num_.pow(static_cast<unsigned>(n)), std::move(den));
}

namespace {

// Quotient rule for a derivation D acting on num / prod base^e.
template <class Derive>
Scalar apply_derivation(const Polynomial& num, const std::vector<Scalar::Factor>& den, Derive&& derive,
                        auto make) {
  Polynomial dnum = derive(num);
  std::vector<std::size_t> moving;
  std::vector<Polynomial> dbase;
  for (std::size_t k = 0; k < den.size(); ++k) {
    Polynomial db = derive(den[k].base->poly());
    if (!db.is_zero()) {
      moving.push_back(k);
      dbase.push_back(std::move(db));
    }
  }
  if (moving.empty()) return make(std::move(dnum), den);
  // D(N/B) = (D(N) P - N sum_k e_k D(b_k) P/b_k) / (B P), P = prod of moving bases.
  Polynomial inner;
  Polynomial all(1);
  for (std::size_t m = 0; m < moving.size(); ++m) {
    Polynomial others(1);
    for (std::size_t q = 0; q < moving.size(); ++q)
      if (q != m) others *= den[moving[q]].base->poly();
    inner += (dbase[m] * others).scaled(den[moving[m]].exponent);
    all *= den[moving[m]].base->poly();
  }
  auto new_den = den;
  for (auto k : moving) new_den[k].exponent += 1;
  return make(dnum * all - num * inner, std::move(new_den));
}

}  // namespace

Scalar Scalar::partial(const JetCoord& x) const {
  return apply_derivation(
      num_, den_, [&](const Polynomial& p) { return p.partial(x); },
      [](Polynomial n, std::vector<Factor> d) {
        Scalar s(std::move(n), std::move(d));
        s.normalize();
        return s;
      });
}

Scalar Scalar::derivation(const std::function<const Polynomial*(const JetCoord&)>& component) const {
  return apply_derivation(
      num_, den_, [&](const Polynomial& p) { return p.derivation(component); },
      [](Polynomial n, std::vector<Factor> d) {
        Scalar s(std::move(n), std::move(d));
        s.normalize();
        return s;
      });
}

Scalar Scalar::cancelled() const {
  Polynomial num = num_;
  auto den = den_;
  for (auto& f : den) {
    while (f.exponent > 0) {
      auto q = num.divide_exact(f.base->poly());
      if (!q) break;
      num = std::move(*q);
      --f.exponent;
    }
  }
  Scalar s(std::move(num), std::move(den));
  s.normalize();
  return s;
}

Rational Scalar::evaluate(const std::function<Rational(const JetCoord&)>& value) const {
  Rational d = 1;
  for (auto& f : den_) {
    Rational b = f.base->poly().evaluate(value);
    if (b == 0) throw DomainError("denominator vanishes at the evaluation point");
    for (unsigned e = 0; e < f.exponent; ++e) d *= b;
  }
  return num_.evaluate(value) / d;
}

Rational Scalar::evaluate(const std::map<JetCoord, Rational>& assignment) const {
  return evaluate([&](const JetCoord& x) -> Rational {
    auto it = assignment.find(x);
    if (it == assignment.end()) throw DomainError("no value assigned to " + x.str());
    return it->second;
  });
}

namespace {

// A bare coordinate can follow '/' unparenthesised; anything else cannot.
bool is_bare_coordinate(const Polynomial& p) {
  return p.size() == 1 && p.leading().coeff == 1 && p.leading().mono.size() == 1 &&
         p.leading().mono.exponent_at(0) == 1;
}

}  // namespace

std::string Scalar::str() const {
  if (den_.empty()) return num_.str();
  std::string s = num_.size() > 1 ? "(" + num_.str() + ")" : num_.str();
  for (auto& f : den_) {
    const Polynomial& b = f.base->poly();
    s += "/";
    s += is_bare_coordinate(b) ? b.str() : "(" + b.str() + ")";
    if (f.exponent > 1) s += "^" + std::to_string(f.exponent);
  }
  return s;
}

std::string Scalar::latex() const {
  if (den_.empty()) return num_.latex();
  std::string d;
  for (auto& f : den_) {
    if (!d.empty()) d += " ";
    bool paren = f.base->poly().size() > 1 && (den_.size() > 1 || f.exponent > 1);
    d += paren ? "\\left(" + f.base->poly().latex() + "\\right)" : f.base->poly().latex();
    if (f.exponent > 1) d += "^{" + std::to_string(f.exponent) + "}";
  }
  return "\\frac{" + num_.latex() + "}{" + d + "}";
}

bool is_zero(const Scalar& f) { return f.is_zero(); }

bool scalar_equals(const Scalar& a, const Scalar& b) {
  if (a.den_factors().size() == b.den_factors().size()) {
    bool same = true;
    for (std::size_t k = 0; k < a.den_factors().size() && same; ++k)
      same = a.den_factors()[k].base == b.den_factors()[k].base &&
             a.den_factors()[k].exponent == b.den_factors()[k].exponent;
    if (same) return a.num() == b.num();
  }
  return (a - b).is_zero();
}

}  // namespace hvc
