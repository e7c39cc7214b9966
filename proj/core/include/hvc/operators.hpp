#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hvc/form.hpp"

namespace hvc {

// Formal vector field sum X^x d/dx.  Fields flagged along_projection (the
// total derivatives) have components one jet order above the coordinate
// they act on.
class VectorField {
 public:
  explicit VectorField(bool along_projection = false) : along_projection_(along_projection) {}

  bool along_projection() const { return along_projection_; }
  const std::map<JetCoord, Scalar>& components() const { return components_; }
  // nullptr when the component vanishes.
  const Scalar* component(const JetCoord& x) const;
  void set(const JetCoord& x, const Scalar& value);
  bool is_polynomial() const;

 private:
  std::map<JetCoord, Scalar> components_;
  bool along_projection_;
};

// Polynomial-component field evaluated on demand; used for the infinite
// families T_i, Delta^I_j and the coordinate fields, so truncation order
// always matches the operand.
class LazyField {
 public:
  using Generator = std::function<std::optional<Polynomial>(const JetCoord&)>;
  explicit LazyField(Generator g) : generate_(std::move(g)) {}
  const Polynomial* component(const JetCoord& x) const;

 private:
  Generator generate_;
  mutable std::map<std::uint32_t, std::optional<Polynomial>> cache_;
};

LazyField total_lazy(int i);
LazyField delta_lazy(const MultiIndex& I, int j);
LazyField coord_lazy(unsigned field, const MultiIndex& I, const Rational& weight = 1);

enum class FieldMode { contract, lie };

VectorField total_field(int i, unsigned order, unsigned n_fields);
VectorField s_on_field(int j, const VectorField& X);
VectorField delta_field(const MultiIndex& I, int j, unsigned order, unsigned n_fields);
VectorField coord_field(unsigned field, const MultiIndex& I);

Form contract(const Form& w, const VectorField& X);
Form contract(const Form& w, const LazyField& X);
Form lie(const Form& w, const VectorField& X);
Form lie(const Form& w, const LazyField& X);
// Cartan's formula i_X d + d i_X, kept as an independent route.
Form lie_cartan(const Form& w, const VectorField& X);

Form d_total(int i, const Form& w);                 // d_i
Form d_total(const MultiIndex& J, const Form& w);   // d_J, iterated
Form i_total(int i, const Form& w);                 // i_i
Form s_vertical(int j, const Form& w);
Form s_iterated(const MultiIndex& I, const Form& w);
// The symmetric tensor S^I extended to forms as a derivation: each covector
// du_K goes to lambda(K)/lambda(K-I) du_{K-I}.  Agrees with s_iterated on
// 1-forms only.
Form s_derivation(const MultiIndex& I, const Form& w);
Form delta_ops(const MultiIndex& I, int j, const Form& w, FieldMode mode);
Form coord_field_ops(unsigned field, const MultiIndex& I, const Form& w, FieldMode mode);

// Formal Q-linear combination of compositions of S^j, d_j, i_j and d.
// Each composition is written left to right and applied right to left.
class OperatorExpr {
 public:
  enum class Kind { vertical, total, contract_total, exterior };
  struct Op {
    Kind kind;
    int index;  // 1 or 2; unused for exterior
    friend auto operator<=>(const Op&, const Op&) = default;
  };
  struct Term {
    Rational coeff;
    std::vector<Op> ops;
  };

  OperatorExpr() = default;
  static Op S(int j) { return {Kind::vertical, j}; }
  static Op D(int j) { return {Kind::total, j}; }
  static Op I(int j) { return {Kind::contract_total, j}; }
  static Op Ext() { return {Kind::exterior, 0}; }

  // Adds coeff * ops; commuting runs of S^j and of d_j are sorted and equal
  // compositions merged.
  OperatorExpr& add(const Rational& coeff, std::vector<Op> ops);
  // coeff * d_J S^J S^i summed over all ordered J of the given length.
  OperatorExpr& add_homotopy_term(const Rational& coeff, unsigned length, int i);

  const std::vector<Term>& terms() const { return terms_; }
  Form apply(const Form& w) const;
  std::string str() const;

 private:
  std::vector<Term> terms_;
};

OperatorExpr p1_operator(int i);
OperatorExpr p2_operator(int i);
OperatorExpr q2_operator(int i);
OperatorExpr q1_operator(int i);

Form p1_apply(int i, const Form& w);
Form p2_apply(int i, const Form& w);
Form q2_apply(int i, const Form& w);
Form q1_apply(int i, const Form& w);

}  // namespace hvc
