#include "hvc/operators.hpp"

#include <algorithm>
#include <stdexcept>

namespace hvc {

namespace {

void check_index(int i) {
  if (i != 1 && i != 2) throw std::invalid_argument("direction index must be 1 or 2");
}

std::uint64_t falling_weight(const MultiIndex& M, const MultiIndex& K) {
  // prod_v count_v(M)! / count_v(K)!
  std::uint64_t w = 1;
  for (int v = 1; v <= 2; ++v)
    for (unsigned c = K.count(v) + 1; c <= M.count(v); ++c) w *= c;
  return w;
}

// Replaces covector k of m by x and returns the canonical monomial with its sign.
std::optional<std::pair<WedgeMonomial, int>> replace_covector(const WedgeMonomial& m, std::size_t k,
                                                              std::uint32_t key) {
  WedgeMonomial::Storage keys(m.keys().begin(), m.keys().end());
  keys[k] = key;
  return WedgeMonomial::canonical(std::move(keys));
}

Rational sign_of(std::size_t k) { return (k % 2) ? -1 : 1; }

}  // namespace

// ------------------------------------------------------------ VectorField

const Scalar* VectorField::component(const JetCoord& x) const {
  auto it = components_.find(x);
  return it == components_.end() ? nullptr : &it->second;
}

void VectorField::set(const JetCoord& x, const Scalar& value) {
  if (value.is_zero())
    components_.erase(x);
  else
    components_[x] = value;
}

bool VectorField::is_polynomial() const {
  return std::all_of(components_.begin(), components_.end(), [](auto& kv) { return kv.second.is_polynomial(); });
}

const Polynomial* LazyField::component(const JetCoord& x) const {
  auto [it, inserted] = cache_.try_emplace(x.key());
  if (inserted) it->second = generate_(x);
  return it->second ? &*it->second : nullptr;
}

LazyField total_lazy(int i) {
  check_index(i);
  return LazyField([i](const JetCoord& x) -> std::optional<Polynomial> {
    return Polynomial::variable(JetCoord(x.field(), insert(x.index(), i)));
  });
}

LazyField delta_lazy(const MultiIndex& I, int j) {
  check_index(j);
  return LazyField([I, j](const JetCoord& x) -> std::optional<Polynomial> {
    auto rest = difference(x.index(), I);
    if (!rest) return std::nullopt;
    auto target = JetCoord(x.field(), insert(*rest, j));
    return Polynomial::term(Monomial::var(target), Rational(falling_weight(x.index(), *rest)));
  });
}

LazyField coord_lazy(unsigned field, const MultiIndex& I, const Rational& weight) {
  JetCoord target(field, I);
  return LazyField([target, weight](const JetCoord& x) -> std::optional<Polynomial> {
    if (x == target) return Polynomial(weight);
    return std::nullopt;
  });
}

VectorField total_field(int i, unsigned order, unsigned n_fields) {
  check_index(i);
  VectorField X(true);
  for (unsigned a = 1; a <= n_fields; ++a)
    for (auto& I : enumerate(order)) X.set(JetCoord(a, I), Scalar::coord(JetCoord(a, insert(I, i))));
  return X;
}

VectorField s_on_field(int j, const VectorField& X) {
  check_index(j);
  VectorField Y(false);
  for (auto& [x, c] : X.components()) {
    JetCoord target(x.field(), insert(x.index(), j));
    Y.set(target, c.scaled(x.index().count(j) + 1));
  }
  return Y;
}

VectorField delta_field(const MultiIndex& I, int j, unsigned order, unsigned n_fields) {
  VectorField X = total_field(j, order, n_fields);
  for (int e : I.entries()) X = s_on_field(e, X);
  return X;
}

VectorField coord_field(unsigned field, const MultiIndex& I) {
  VectorField X(false);
  X.set(JetCoord(field, I), Scalar(1));
  return X;
}

// ------------------------------------------------------- contract and lie

Form contract(const Form& w, const LazyField& X) {
  if (w.degree() == 0) return Form(0);
  Form out(w.degree() - 1);
  for (auto& [m, c] : w.terms()) {
    for (std::size_t k = 0; k < m.degree(); ++k) {
      const Polynomial* comp = X.component(m.covector(k));
      if (comp == nullptr) continue;
      out.add_term(m.without(k), (c * Scalar(*comp)).scaled(sign_of(k)));
    }
  }
  return out;
}

Form contract(const Form& w, const VectorField& X) {
  if (w.degree() == 0) return Form(0);
  Form out(w.degree() - 1);
  for (auto& [m, c] : w.terms()) {
    for (std::size_t k = 0; k < m.degree(); ++k) {
      const Scalar* comp = X.component(m.covector(k));
      if (comp == nullptr) continue;
      out.add_term(m.without(k), (c * *comp).scaled(sign_of(k)));
    }
  }
  return out;
}

Form lie(const Form& w, const LazyField& X) {
  Form out(w.degree());
  auto component = [&X](const JetCoord& x) { return X.component(x); };
  for (auto& [m, c] : w.terms()) {
    out.add_term(m, c.derivation(component));
    for (std::size_t k = 0; k < m.degree(); ++k) {
      const Polynomial* comp = X.component(m.covector(k));
      if (comp == nullptr) continue;
      for (auto& y : comp->coordinates()) {
        auto r = replace_covector(m, k, y.key());
        if (!r) continue;
        out.add_term(r->first, (c * Scalar(comp->partial(y))).scaled(r->second));
      }
    }
  }
  return out;
}

Form lie(const Form& w, const VectorField& X) {
  if (X.is_polynomial()) {
    LazyField lazy([&X](const JetCoord& x) -> std::optional<Polynomial> {
      const Scalar* c = X.component(x);
      if (c == nullptr) return std::nullopt;
      return c->num();
    });
    return lie(w, lazy);
  }
  Form out(w.degree());
  for (auto& [m, c] : w.terms()) {
    Scalar xc;
    for (auto& x : c.coordinates())
      if (const Scalar* comp = X.component(x)) xc += *comp * c.partial(x);
    out.add_term(m, xc);
    for (std::size_t k = 0; k < m.degree(); ++k) {
      const Scalar* comp = X.component(m.covector(k));
      if (comp == nullptr) continue;
      for (auto& y : comp->coordinates()) {
        auto r = replace_covector(m, k, y.key());
        if (!r) continue;
        out.add_term(r->first, (c * comp->partial(y)).scaled(r->second));
      }
    }
  }
  return out;
}

Form lie_cartan(const Form& w, const VectorField& X) {
  return contract(exterior_d(w), X) + exterior_d(contract(w, X));
}

Form d_total(int i, const Form& w) { return lie(w, total_lazy(i)); }

Form d_total(const MultiIndex& J, const Form& w) {
  Form out = w;
  for (int e : J.entries()) out = d_total(e, out);
  return out;
}

Form i_total(int i, const Form& w) { return contract(w, total_lazy(i)); }

Form s_vertical(int j, const Form& w) {
  check_index(j);
  Form out(w.degree());
  for (auto& [m, c] : w.terms()) {
    for (std::size_t k = 0; k < m.degree(); ++k) {
      JetCoord x = m.covector(k);
      auto lowered = remove(x.index(), j);
      if (!lowered) continue;
      auto r = replace_covector(m, k, JetCoord(x.field(), *lowered).key());
      if (!r) continue;
      out.add_term(r->first, c.scaled(Rational(static_cast<long>(x.index().count(j)) * r->second)));
    }
  }
  return out;
}

Form s_iterated(const MultiIndex& I, const Form& w) {
  Form out = w;
  for (int e : I.entries()) {
    if (out.is_zero()) break;
    out = s_vertical(e, out);
  }
  return out;
}

Form s_derivation(const MultiIndex& I, const Form& w) {
  for (int e : I.entries()) check_index(e);
  if (I.order() == 0) return w;
  Form out(w.degree());
  for (auto& [m, c] : w.terms()) {
    for (std::size_t k = 0; k < m.degree(); ++k) {
      JetCoord x = m.covector(k);
      auto rest = difference(x.index(), I);
      if (!rest) continue;
      auto r = replace_covector(m, k, JetCoord(x.field(), *rest).key());
      if (!r) continue;
      out.add_term(r->first, c.scaled(Rational(static_cast<long>(falling_weight(x.index(), *rest)) * r->second)));
    }
  }
  return out;
}

Form delta_ops(const MultiIndex& I, int j, const Form& w, FieldMode mode) {
  auto X = delta_lazy(I, j);
  return mode == FieldMode::contract ? contract(w, X) : lie(w, X);
}

Form coord_field_ops(unsigned field, const MultiIndex& I, const Form& w, FieldMode mode) {
  auto X = coord_lazy(field, I);
  return mode == FieldMode::contract ? contract(w, X) : lie(w, X);
}

// ----------------------------------------------------------- OperatorExpr

OperatorExpr& OperatorExpr::add(const Rational& coeff, std::vector<Op> ops) {
  for (std::size_t a = 0; a < ops.size();) {
    std::size_t b = a;
    while (b < ops.size() && ops[b].kind == ops[a].kind) ++b;
    if (ops[a].kind == Kind::vertical || ops[a].kind == Kind::total)
      std::sort(ops.begin() + static_cast<std::ptrdiff_t>(a), ops.begin() + static_cast<std::ptrdiff_t>(b));
    a = b;
  }
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (it->ops == ops) {
      it->coeff += coeff;
      if (it->coeff == 0) terms_.erase(it);
      return *this;
    }
  }
  if (coeff != 0) terms_.push_back(Term{coeff, std::move(ops)});
  return *this;
}

OperatorExpr& OperatorExpr::add_homotopy_term(const Rational& coeff, unsigned length, int i) {
  check_index(i);
  for (unsigned mask = 0; mask < (1u << length); ++mask) {
    std::vector<Op> ops;
    for (unsigned b = 0; b < length; ++b) ops.push_back(D((mask >> b) & 1 ? 2 : 1));
    for (unsigned b = 0; b < length; ++b) ops.push_back(S((mask >> b) & 1 ? 2 : 1));
    ops.push_back(S(i));
    add(coeff, std::move(ops));
  }
  return *this;
}

namespace {

Form apply_op(const OperatorExpr::Op& op, const Form& w) {
  switch (op.kind) {
    case OperatorExpr::Kind::vertical:
      return s_vertical(op.index, w);
    case OperatorExpr::Kind::total:
      return d_total(op.index, w);
    case OperatorExpr::Kind::contract_total:
      return i_total(op.index, w);
    case OperatorExpr::Kind::exterior:
      return exterior_d(w);
  }
  throw std::logic_error("unknown operator kind");
}

unsigned result_degree(const std::vector<OperatorExpr::Op>& ops, unsigned degree) {
  for (auto& op : ops) {
    if (op.kind == OperatorExpr::Kind::contract_total) degree = degree ? degree - 1 : 0;
    if (op.kind == OperatorExpr::Kind::exterior) ++degree;
  }
  return degree;
}

}  // namespace

Form OperatorExpr::apply(const Form& w) const {
  // Results keyed by the suffix of operators already applied.
  std::map<std::vector<Op>, Form> memo;
  std::function<Form(const std::vector<Op>&, std::size_t)> eval = [&](const std::vector<Op>& ops,
                                                                      std::size_t from) -> Form {
    if (from == ops.size()) return w;
    std::vector<Op> suffix(ops.begin() + static_cast<std::ptrdiff_t>(from), ops.end());
    if (auto it = memo.find(suffix); it != memo.end()) return it->second;
    Form inner = eval(ops, from + 1);
    Form out = inner.is_zero() ? Form(result_degree(suffix, w.degree())) : apply_op(ops[from], inner);
    memo.emplace(std::move(suffix), out);
    return out;
  };
  Form total(result_degree(terms_.empty() ? std::vector<Op>{} : terms_.front().ops, w.degree()));
  for (auto& t : terms_) total += eval(t.ops, 0).scaled(t.coeff);
  return total;
}

std::string OperatorExpr::str() const {
  std::string s;
  for (auto& t : terms_) {
    s += s.empty() ? (t.coeff < 0 ? "-" : "") : (t.coeff < 0 ? " - " : " + ");
    s += Rational(abs(t.coeff)).get_str();
    for (auto& op : t.ops) {
      switch (op.kind) {
        case Kind::vertical: s += " S^" + std::to_string(op.index); break;
        case Kind::total: s += " d_" + std::to_string(op.index); break;
        case Kind::contract_total: s += " i_" + std::to_string(op.index); break;
        case Kind::exterior: s += " d"; break;
      }
    }
  }
  return s.empty() ? "0" : s;
}

OperatorExpr p1_operator(int i) {
  OperatorExpr e;
  e.add_homotopy_term(Rational(1, 4), 0, i);
  e.add_homotopy_term(Rational(-1, 24), 1, i);
  e.add_homotopy_term(Rational(1, 192), 2, i);
  return e;
}

OperatorExpr p2_operator(int i) {
  OperatorExpr e;
  e.add_homotopy_term(Rational(1), 0, i);
  e.add_homotopy_term(Rational(-1, 2), 1, i);
  return e;
}

OperatorExpr q2_operator(int i) {
  OperatorExpr e;
  e.add_homotopy_term(Rational(1, 2), 0, i);
  e.add_homotopy_term(Rational(-1, 8), 1, i);
  e.add_homotopy_term(Rational(1, 48), 2, i);
  e.add_homotopy_term(Rational(-1, 384), 3, i);
  return e;
}

OperatorExpr q1_operator(int i) {
  OperatorExpr e;
  e.add_homotopy_term(Rational(1, 6), 0, i);
  e.add_homotopy_term(Rational(-1, 54), 1, i);
  e.add_homotopy_term(Rational(1, 648), 2, i);
  e.add_homotopy_term(Rational(-1, 9720), 3, i);
  e.add_homotopy_term(Rational(1, 174960), 4, i);
  return e;
}

Form p1_apply(int i, const Form& w) { return p1_operator(i).apply(w); }
Form p2_apply(int i, const Form& w) { return p2_operator(i).apply(w); }
Form q2_apply(int i, const Form& w) { return q2_operator(i).apply(w); }
Form q1_apply(int i, const Form& w) { return q1_operator(i).apply(w); }

}  // namespace hvc
