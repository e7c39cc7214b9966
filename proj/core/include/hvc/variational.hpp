#pragma once

#include <array>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "hvc/operators.hpp"

namespace hvc {

// A function of jet order <= 2; n_fields counts the dependent variables.
class Lagrangian {
 public:
  // n_fields = 0 infers the count from the largest field index in value.
  explicit Lagrangian(Scalar value, unsigned n_fields = 0);

  const Scalar& value() const { return value_; }
  unsigned n_fields() const { return n_fields_; }

 private:
  Scalar value_;
  unsigned n_fields_;
};

struct HomogeneityReport {
  std::map<std::pair<int, int>, Scalar> first_order_defects;              // (i,j) -> d^i_j L - delta L
  std::map<std::tuple<int, int, int>, Scalar> second_order_defects;      // (i,k,j) -> d^{ik}_j L
  bool homogeneous = true;
};

HomogeneityReport check_homogeneity(const Lagrangian& L);

std::array<Form, 2> hilbert_forms(const Lagrangian& L);
Form euler_lagrange(const Lagrangian& L);
// (dL/du^a - d_i dL/du^a_i + sum_{i<=j} d_ij dL/du^a_ij) du^a.
Form euler_lagrange_coordinates(const Lagrangian& L);
bool is_null(const Lagrangian& L);
Form fundamental_form(const Lagrangian& L);

// lambda(I) d/du^a_I with lambda(I) = prod_v count_v(I)!.
Scalar normalized_partial(const Scalar& f, const JetCoord& x);

// The quantities every identity check draws on, computed once.
struct Analysis {
  explicit Analysis(Lagrangian L);

  Lagrangian lagrangian;
  HomogeneityReport homogeneity;
  Form dL;
  std::array<Form, 2> theta;   // Hilbert forms
  std::array<Form, 2> dtheta;
  Form epsilon;
  Form Theta;
  Form dTheta;
};

struct NullityReport {
  bool precondition_met = false;  // L homogeneous
  bool closed = false;            // dTheta == 0
  bool null = false;              // epsilon == 0
  bool consistent = false;        // closed == null
  Form dTheta;
  Form epsilon;
  std::string diagnostic;
};

NullityReport nullity_closedness_check(const Analysis& a);
NullityReport nullity_closedness_check(const Lagrangian& L);

struct NamedForm {
  std::string name;
  Form form;
};

struct ProjectabilityReport {
  std::vector<NamedForm> horizontality_defects;        // S^{pqr} Theta
  std::vector<NamedForm> frame_projectable_defects;    // lie along d/du^a_{lpqrs}
  std::vector<NamedForm> contact_obstructions;         // i^I_l Theta, d^I_l Theta
  std::vector<NamedForm> closed_form_mismatches;       // d^{pqr}_s Theta minus the closed form
  Form mixed_hessian_form;                             // sum d2L/du^b_11 du^a_12 du^b ^ du^a
  OrderProfile theta_profile;
  bool horizontal = false;
  bool frame_projectable = false;
  bool contact_projectable = false;
  bool closed_form_consistent = false;
  bool horizontal_and_projectable = false;
};

ProjectabilityReport projectability(const Analysis& a);

// d^{pqr}_s Theta expressed through S^{...} dtheta^m.
Form third_order_lie_closed_form(const Analysis& a, const MultiIndex& pqr, int s);

// Polynomial in the parameters t1, t2.
class ParamPolynomial {
 public:
  ParamPolynomial() = default;
  ParamPolynomial(const Rational& c);  // NOLINT
  static ParamPolynomial t(int i);

  friend ParamPolynomial operator+(const ParamPolynomial& a, const ParamPolynomial& b);
  friend ParamPolynomial operator-(const ParamPolynomial& a, const ParamPolynomial& b);
  friend ParamPolynomial operator*(const ParamPolynomial& a, const ParamPolynomial& b);
  ParamPolynomial operator-() const;
  ParamPolynomial pow(unsigned n) const;

  ParamPolynomial derivative(int i) const;
  ParamPolynomial derivative(const MultiIndex& I) const;
  Rational evaluate(const Rational& t1, const Rational& t2) const;
  bool is_zero() const { return terms_.empty(); }
  std::string str() const;

 private:
  std::map<std::pair<unsigned, unsigned>, Rational> terms_;
};

// Pull-back of w along the prolongation of phi, evaluated at (t1, t2).
// Degree 0 yields {value}, degree 1 {c1, c2}, degree 2 {c12} for dt1^dt2.
std::vector<Rational> prolong_pullback(const std::vector<ParamPolynomial>& phi, const Form& w, const Rational& t1,
                                       const Rational& t2);
Rational lagrangian_on_prolongation(const std::vector<ParamPolynomial>& phi, const Lagrangian& L, const Rational& t1,
                                    const Rational& t2);

Lagrangian determinant_fixture(unsigned alpha, unsigned beta);
// L = d1F1 d2F2 - d2F1 d1F2 with F1 = D23/D12, F2 = D34/D12 on R^4.
Lagrangian section4_fixture();
// i2 i1 (dF1 ^ dF2), built literally from the 2-form.
Scalar section4_by_contraction();

}  // namespace hvc
