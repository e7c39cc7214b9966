#pragma once

#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hvc/polynomial.hpp"

namespace hvc {

// A primitive, non-constant polynomial with positive leading coefficient,
// interned so that equal bases share one address for the program lifetime.
class DenominatorBase {
 public:
  static const DenominatorBase* intern(const Polynomial& primitive);

  const Polynomial& poly() const { return poly_; }
  // base^n, memoised.
  Polynomial power(unsigned n) const;

  explicit DenominatorBase(Polynomial p) : poly_(std::move(p)) {}

 private:
  Polynomial poly_;
  mutable std::vector<Polynomial> powers_;  // guarded by the registry mutex
};

// Rational function num / prod(base^exponent) over Q in jet coordinates.
// The denominator is kept factored over interned bases; numerator and
// denominator are not reduced against each other.  Equality and zero
// tests are exact.
class Scalar {
 public:
  struct Factor {
    const DenominatorBase* base;
    unsigned exponent;
  };

  Scalar() = default;
  Scalar(const Rational& c) : num_(c) {}  // NOLINT
  Scalar(long c) : num_(c) {}             // NOLINT
  Scalar(Polynomial p) : num_(std::move(p)) {}  // NOLINT
  static Scalar coord(const JetCoord& x) { return Scalar(Polynomial::variable(x)); }

  const Polynomial& num() const { return num_; }
  const std::vector<Factor>& den_factors() const { return den_; }
  Polynomial den() const;  // expanded product

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.empty(); }
  bool is_constant() const { return den_.empty() && num_.is_constant(); }
  unsigned max_order() const;
  std::vector<JetCoord> coordinates() const;

  Scalar operator-() const;
  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar scaled(const Rational& c) const;
  Scalar inverse() const;
  Scalar pow(long n) const;

  Scalar partial(const JetCoord& x) const;
  // Applies the derivation sum_x component(x) d/dx with polynomial components.
  Scalar derivation(const std::function<const Polynomial*(const JetCoord&)>& component) const;

  // Removes denominator factors that divide the numerator exactly.
  Scalar cancelled() const;

  Rational evaluate(const std::function<Rational(const JetCoord&)>& value) const;
  Rational evaluate(const std::map<JetCoord, Rational>& assignment) const;

  std::string str() const;
  std::string latex() const;

 private:
  Scalar(Polynomial num, std::vector<Factor> den) : num_(std::move(num)), den_(std::move(den)) {}
  void normalize();

  Polynomial num_;
  std::vector<Factor> den_;  // sorted by base polynomial; exponents > 0
};

bool is_zero(const Scalar& f);
bool scalar_equals(const Scalar& a, const Scalar& b);
inline Scalar partial(const Scalar& f, const JetCoord& x) { return f.partial(x); }
inline unsigned max_order(const Scalar& f) { return f.max_order(); }

}  // namespace hvc
