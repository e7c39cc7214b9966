#pragma once

#include <boost/container/small_vector.hpp>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hvc/scalar.hpp"

namespace hvc {

// du^{a1}_{I1} ^ ... ^ du^{ar}_{Ir} with strictly increasing covectors.
class WedgeMonomial {
 public:
  using Storage = boost::container::small_vector<std::uint32_t, 4>;

  WedgeMonomial() = default;
  // Sorts the covectors; returns the permutation sign, or nothing when a
  // covector repeats.
  static std::optional<std::pair<WedgeMonomial, int>> canonical(const std::vector<JetCoord>& covectors);
  static std::optional<std::pair<WedgeMonomial, int>> canonical(Storage keys);

  unsigned degree() const { return static_cast<unsigned>(keys_.size()); }
  JetCoord covector(std::size_t k) const { return JetCoord::from_key(keys_[k]); }
  std::uint32_t key(std::size_t k) const { return keys_[k]; }
  const Storage& keys() const { return keys_; }
  unsigned max_order() const;
  // The monomial with the k-th covector removed.
  WedgeMonomial without(std::size_t k) const;

  friend auto operator<=>(const WedgeMonomial& a, const WedgeMonomial& b) {
    return std::lexicographical_compare_three_way(a.keys_.begin(), a.keys_.end(), b.keys_.begin(), b.keys_.end());
  }
  friend bool operator==(const WedgeMonomial& a, const WedgeMonomial& b) { return a.keys_ == b.keys_; }

 private:
  Storage keys_;
};

struct OrderProfile {
  unsigned covector_order = 0;
  unsigned coefficient_order = 0;
  friend bool operator==(const OrderProfile&, const OrderProfile&) = default;
};

// Exterior form of fixed degree with Scalar coefficients.  Degree-0 forms
// are functions: a single term on the empty wedge monomial.
class Form {
 public:
  using TermMap = std::map<WedgeMonomial, Scalar>;

  explicit Form(unsigned degree = 0) : degree_(degree) {}
  Form(const Scalar& f);  // NOLINT: functions are 0-forms
  static Form covector(const JetCoord& x);
  // coeff * du_{x1} ^ ... ^ du_{xr}, covectors in any order.
  static Form basis(const std::vector<JetCoord>& covectors, const Scalar& coeff = Scalar(1));

  unsigned degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  Scalar coefficient(const WedgeMonomial& m) const;
  Scalar coefficient(const std::vector<JetCoord>& covectors) const;
  // The scalar value of a 0-form.
  Scalar scalar() const;

  // Accumulates coeff * m.
  void add_term(const WedgeMonomial& m, const Scalar& coeff);

  Form operator-() const;
  friend Form operator+(const Form& a, const Form& b);
  friend Form operator-(const Form& a, const Form& b);
  Form& operator+=(const Form& b);
  Form& operator-=(const Form& b);
  Form scaled(const Scalar& c) const;
  Form scaled(const Rational& c) const;

  OrderProfile order_profile() const;
  std::vector<JetCoord> coordinates() const;  // coefficients and covectors
  unsigned max_order() const;
  unsigned max_field() const;

  std::string str() const;
  std::string latex() const;
  std::string json() const;

 private:
  unsigned degree_;
  TermMap terms_;
};

Form wedge(const Form& a, const Form& b);
Form exterior_d(const Form& a);
inline Form exterior_d(const Scalar& f) { return exterior_d(Form(f)); }
bool form_equals(const Form& a, const Form& b);
inline OrderProfile order_profile(const Form& a) { return a.order_profile(); }

}  // namespace hvc
