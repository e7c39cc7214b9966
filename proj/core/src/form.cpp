#include "hvc/form.hpp"

#include <algorithm>
#include <json.hpp>

#include "hvc/errors.hpp"

namespace hvc {

std::optional<std::pair<WedgeMonomial, int>> WedgeMonomial::canonical(Storage keys) {
  int sign = 1;
  // Insertion sort; each transposition flips the sign.
  for (std::size_t a = 1; a < keys.size(); ++a) {
    for (std::size_t b = a; b > 0 && keys[b - 1] >= keys[b]; --b) {
      if (keys[b - 1] == keys[b]) return std::nullopt;
      std::swap(keys[b - 1], keys[b]);
      sign = -sign;
    }
  }
  WedgeMonomial m;
  m.keys_ = std::move(keys);
  return std::make_pair(std::move(m), sign);
}

std::optional<std::pair<WedgeMonomial, int>> WedgeMonomial::canonical(const std::vector<JetCoord>& covectors) {
  Storage keys;
  for (auto& c : covectors) keys.push_back(c.key());
  return canonical(std::move(keys));
}

unsigned WedgeMonomial::max_order() const {
  unsigned r = 0;
  for (auto k : keys_) r = std::max(r, (k >> 8) & 0xffu);
  return r;
}

WedgeMonomial WedgeMonomial::without(std::size_t k) const {
  WedgeMonomial m = *this;
  m.keys_.erase(m.keys_.begin() + static_cast<std::ptrdiff_t>(k));
  return m;
}

// ------------------------------------------------------------------ Form

Form::Form(const Scalar& f) : degree_(0) {
  if (!f.is_zero()) terms_.emplace(WedgeMonomial(), f);
}

Form Form::covector(const JetCoord& x) { return basis({x}); }

Form Form::basis(const std::vector<JetCoord>& covectors, const Scalar& coeff) {
  Form f(static_cast<unsigned>(covectors.size()));
  if (auto c = WedgeMonomial::canonical(covectors)) f.add_term(c->first, coeff.scaled(c->second));
  return f;
}

Scalar Form::coefficient(const WedgeMonomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Scalar() : it->second;
}

Scalar Form::coefficient(const std::vector<JetCoord>& covectors) const {
  auto c = WedgeMonomial::canonical(covectors);
  if (!c) return Scalar();
  return coefficient(c->first).scaled(c->second);
}

Scalar Form::scalar() const {
  if (degree_ != 0) throw DegreeMismatch("scalar() requires a 0-form");
  return coefficient(WedgeMonomial());
}

void Form::add_term(const WedgeMonomial& m, const Scalar& coeff) {
  if (m.degree() != degree_) throw DegreeMismatch("term degree does not match form degree");
  if (coeff.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(m, coeff);
  if (!inserted) {
    it->second += coeff;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Form Form::operator-() const {
  Form f = *this;
  for (auto& [m, c] : f.terms_) c = -c;
  return f;
}

Form& Form::operator+=(const Form& b) {
  if (b.is_zero()) return *this;
  if (is_zero()) return *this = b;
  if (b.degree_ != degree_) throw DegreeMismatch("adding forms of different degrees");
  for (auto& [m, c] : b.terms_) add_term(m, c);
  return *this;
}

Form& Form::operator-=(const Form& b) { return *this += -b; }

Form operator+(const Form& a, const Form& b) {
  Form f = a;
  f += b;
  return f;
}

Form operator-(const Form& a, const Form& b) {
  Form f = a;
  f -= b;
  return f;
}

Form Form::scaled(const Scalar& c) const {
  Form f(degree_);
  if (c.is_zero()) return f;
  for (auto& [m, coeff] : terms_) f.terms_.emplace(m, coeff * c);
  return f;
}

Form Form::scaled(const Rational& c) const {
  Form f(degree_);
  if (c == 0) return f;
  for (auto& [m, coeff] : terms_) f.terms_.emplace(m, coeff.scaled(c));
  return f;
}

OrderProfile Form::order_profile() const {
  OrderProfile p;
  for (auto& [m, c] : terms_) {
    p.covector_order = std::max(p.covector_order, m.max_order());
    p.coefficient_order = std::max(p.coefficient_order, c.max_order());
  }
  return p;
}

std::vector<JetCoord> Form::coordinates() const {
  std::vector<JetCoord> out;
  for (auto& [m, c] : terms_) {
    for (std::size_t k = 0; k < m.degree(); ++k) out.push_back(m.covector(k));
    auto cs = c.coordinates();
    out.insert(out.end(), cs.begin(), cs.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

unsigned Form::max_order() const {
  auto p = order_profile();
  return std::max(p.covector_order, p.coefficient_order);
}

unsigned Form::max_field() const {
  unsigned r = 0;
  for (auto& x : coordinates()) r = std::max(r, x.field());
  return r;
}

namespace {

std::string wedge_plain(const WedgeMonomial& m) {
  std::string s;
  for (std::size_t k = 0; k < m.degree(); ++k) {
    if (k) s += '^';
    s += "d" + m.covector(k).str();
  }
  return s;
}

std::string wedge_latex(const WedgeMonomial& m) {
  std::string s;
  for (std::size_t k = 0; k < m.degree(); ++k) {
    if (k) s += "\\wedge ";
    s += "d" + m.covector(k).latex();
  }
  return s;
}

// Pulls a leading minus sign out of single-term numerators.
std::pair<bool, Scalar> split_sign(const Scalar& c) {
  if (c.num().size() == 1 && c.num().leading().coeff < 0) return {true, -c};
  return {false, c};
}

bool is_one(const Scalar& c) { return c.is_constant() && c.num().constant_value() == 1; }

}  // namespace

std::string Form::str() const {
  if (terms_.empty()) return "0";
  if (degree_ == 0) return terms_.begin()->second.str();
  std::string s;
  bool first = true;
  for (auto& [m, c] : terms_) {
    auto [neg, mag] = split_sign(c);
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (!is_one(mag)) {
      bool paren = mag.num().size() > 1 || !mag.is_polynomial();
      s += paren ? "(" + mag.str() + ")*" : mag.str() + "*";
    }
    s += wedge_plain(m);
  }
  return s;
}

std::string Form::latex() const {
  if (terms_.empty()) return "0";
  if (degree_ == 0) return terms_.begin()->second.latex();
  std::string s;
  bool first = true;
  for (auto& [m, c] : terms_) {
    auto [neg, mag] = split_sign(c);
    s += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    if (is_one(mag)) {
      if (neg) s += "\\,";
    } else {
      bool paren = mag.num().size() > 1 && mag.is_polynomial();
      s += paren ? "\\left(" + mag.latex() + "\\right)\\," : mag.latex() + "\\,";
    }
    s += wedge_latex(m);
  }
  return s;
}

std::string Form::json() const {
  nlohmann::json j;
  j["degree"] = degree_;
  j["terms"] = nlohmann::json::array();
  for (auto& [m, c] : terms_) {
    nlohmann::json t;
    t["wedge"] = nlohmann::json::array();
    for (std::size_t k = 0; k < m.degree(); ++k) t["wedge"].push_back(m.covector(k).str());
    t["coeff_num"] = c.num().str();
    std::string den;
    for (auto& f : c.den_factors()) {
      if (!den.empty()) den += "*";
      den += "(" + f.base->poly().str() + ")";
      if (f.exponent > 1) den += "^" + std::to_string(f.exponent);
    }
    t["coeff_den"] = den.empty() ? "1" : den;
    j["terms"].push_back(std::move(t));
  }
  return j.dump();
}

Form wedge(const Form& a, const Form& b) {
  Form f(a.degree() + b.degree());
  for (auto& [ma, ca] : a.terms()) {
    for (auto& [mb, cb] : b.terms()) {
      WedgeMonomial::Storage keys(ma.keys().begin(), ma.keys().end());
      keys.insert(keys.end(), mb.keys().begin(), mb.keys().end());
      auto c = WedgeMonomial::canonical(std::move(keys));
      if (!c) continue;
      f.add_term(c->first, (ca * cb).scaled(c->second));
    }
  }
  return f;
}

Form exterior_d(const Form& a) {
  Form f(a.degree() + 1);
  for (auto& [m, c] : a.terms()) {
    for (auto& x : c.coordinates()) {
      WedgeMonomial::Storage keys{x.key()};
      keys.insert(keys.end(), m.keys().begin(), m.keys().end());
      auto w = WedgeMonomial::canonical(std::move(keys));
      if (!w) continue;
      f.add_term(w->first, c.partial(x).scaled(w->second));
    }
  }
  return f;
}

bool form_equals(const Form& a, const Form& b) {
  if (a.degree() != b.degree() && !(a.is_zero() && b.is_zero()))
    throw DegreeMismatch("comparing forms of different degrees");
  auto ia = a.terms().begin(), ib = b.terms().begin();
  while (ia != a.terms().end() || ib != b.terms().end()) {
    if (ib == b.terms().end() || (ia != a.terms().end() && ia->first < ib->first)) {
      if (!ia->second.is_zero()) return false;
      ++ia;
    } else if (ia == a.terms().end() || ib->first < ia->first) {
      if (!ib->second.is_zero()) return false;
      ++ib;
    } else {
      if (!scalar_equals(ia->second, ib->second)) return false;
      ++ia, ++ib;
    }
  }
  return true;
}

}  // namespace hvc
