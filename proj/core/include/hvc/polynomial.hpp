#pragma once

#include <gmpxx.h>

#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hvc/jet_index.hpp"

namespace hvc {

using Rational = mpq_class;

// num/den in lowest terms; mpq_class(num, den) leaves the fraction as given.
inline Rational ratio(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q);

// Power product of jet coordinates.  Each factor is packed as
// (JetCoord::key() << 8 | exponent), kept sorted by key.
class Monomial {
 public:
  using Factor = std::uint32_t;
  using Storage = boost::container::small_vector<Factor, 8>;

  Monomial() = default;
  static Monomial var(const JetCoord& x, unsigned exponent = 1);

  unsigned degree() const { return degree_; }
  bool is_one() const { return f_.empty(); }
  std::size_t size() const { return f_.size(); }
  JetCoord coord(std::size_t k) const { return JetCoord::from_key(f_[k] >> 8); }
  std::uint32_t key(std::size_t k) const { return f_[k] >> 8; }
  unsigned exponent_at(std::size_t k) const { return f_[k] & 0xff; }
  unsigned exponent(const JetCoord& x) const;
  unsigned max_order() const;

  friend Monomial operator*(const Monomial& a, const Monomial& b);
  // Lowers the exponent of the k-th factor by one.
  Monomial lowered(std::size_t k) const;
  bool divides(const Monomial& other) const;
  Monomial quotient(const Monomial& divisor) const;  // requires divides()

  // Graded lexicographic; among equal degrees the smaller coordinate ranks higher.
  friend std::strong_ordering grlex(const Monomial& a, const Monomial& b);
  friend bool operator==(const Monomial& a, const Monomial& b) { return a.f_ == b.f_; }

  std::size_t hash() const;
  const Storage& factors() const { return f_; }

 private:
  Storage f_;
  std::uint16_t degree_ = 0;
};

struct Term {
  Monomial mono;
  Rational coeff;
};

// Sparse polynomial over Q.  Terms are sorted by decreasing grlex order and
// carry nonzero coefficients; the zero polynomial has no terms.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(const Rational& c);  // NOLINT: constants convert implicitly
  Polynomial(long c) : Polynomial(Rational(c)) {}  // NOLINT
  static Polynomial variable(const JetCoord& x);
  static Polynomial term(Monomial m, Rational c);
  // Sorts and merges arbitrary terms.
  static Polynomial from_terms(std::vector<Term> terms);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const { return terms_.empty() || (terms_.size() == 1 && terms_[0].mono.is_one()); }
  Rational constant_value() const;  // requires is_constant()
  std::size_t size() const { return terms_.size(); }
  const std::vector<Term>& terms() const { return terms_; }
  const Term& leading() const { return terms_.front(); }
  unsigned degree() const;
  unsigned max_order() const;
  std::vector<JetCoord> coordinates() const;
  bool depends_on(const JetCoord& x) const;

  Polynomial operator-() const;
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial& operator+=(const Polynomial& b) { return *this = *this + b; }
  Polynomial& operator-=(const Polynomial& b) { return *this = *this - b; }
  Polynomial& operator*=(const Polynomial& b) { return *this = *this * b; }
  Polynomial scaled(const Rational& c) const;
  Polynomial times_term(const Monomial& m, const Rational& c) const;
  Polynomial pow(unsigned n) const;

  Polynomial partial(const JetCoord& x) const;
  // Sum over coordinates x of component(x) * d/dx; component returns nullptr for zero.
  Polynomial derivation(const std::function<const Polynomial*(const JetCoord&)>& component) const;

  // Exact quotient when other divides this; empty otherwise.
  std::optional<Polynomial> divide_exact(const Polynomial& other) const;

  // Gcd of numerators over lcm of denominators, signed so that leading()/content is positive.
  Rational content() const;

  Rational evaluate(const std::function<Rational(const JetCoord&)>& value) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);
  friend std::strong_ordering compare(const Polynomial& a, const Polynomial& b);

  std::string str() const;
  std::string latex() const;

  friend Polynomial sum(std::vector<Polynomial> parts);

 private:
  std::vector<Term> terms_;
};

// Sum of many sorted polynomials by pairwise merging.
Polynomial sum(std::vector<Polynomial> parts);

}  // namespace hvc
