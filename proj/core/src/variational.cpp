#include "hvc/variational.hpp"

#include <algorithm>
#include <stdexcept>

#include "hvc/errors.hpp"

namespace hvc {

namespace {

int kron(int a, int b) { return a == b ? 1 : 0; }

MultiIndex mi(std::initializer_list<int> entries) { return MultiIndex::from_entries(std::vector<int>(entries)); }

Scalar det(unsigned a, unsigned b) {
  return Scalar::coord(u(a, {1})) * Scalar::coord(u(b, {2})) - Scalar::coord(u(a, {2})) * Scalar::coord(u(b, {1}));
}

std::string index_name(const MultiIndex& I) { return I.digits(); }

}  // namespace

Lagrangian::Lagrangian(Scalar value, unsigned n_fields) : value_(std::move(value)), n_fields_(n_fields) {
  if (value_.max_order() > 2) throw DomainError("a Lagrangian must have jet order at most 2");
  unsigned inferred = 1;
  for (auto& x : value_.coordinates()) inferred = std::max(inferred, x.field());
  n_fields_ = std::max(n_fields_, inferred);
}

HomogeneityReport check_homogeneity(const Lagrangian& L) {
  HomogeneityReport r;
  Form f(L.value());
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      Scalar defect = delta_ops(mi({i}), j, f, FieldMode::lie).scalar() - L.value().scaled(kron(i, j));
      r.homogeneous = r.homogeneous && defect.is_zero();
      r.first_order_defects.emplace(std::make_pair(i, j), std::move(defect));
    }
  }
  for (int i = 1; i <= 2; ++i) {
    for (int k = i; k <= 2; ++k) {
      for (int j = 1; j <= 2; ++j) {
        Scalar defect = delta_ops(mi({i, k}), j, f, FieldMode::lie).scalar();
        r.homogeneous = r.homogeneous && defect.is_zero();
        r.second_order_defects.emplace(std::make_tuple(i, k, j), std::move(defect));
      }
    }
  }
  return r;
}

std::array<Form, 2> hilbert_forms(const Lagrangian& L) {
  Form dL = exterior_d(L.value());
  return {p2_apply(1, dL), p2_apply(2, dL)};
}

Form euler_lagrange(const Lagrangian& L) {
  auto theta = hilbert_forms(L);
  return exterior_d(L.value()) - d_total(1, theta[0]) - d_total(2, theta[1]);
}

Form euler_lagrange_coordinates(const Lagrangian& L) {
  Form out(1);
  const Scalar& f = L.value();
  for (unsigned a = 1; a <= L.n_fields(); ++a) {
    Form c(f.partial(u(a)));
    for (int i = 1; i <= 2; ++i) c -= d_total(i, Form(f.partial(u(a, {i}))));
    for (int i = 1; i <= 2; ++i)
      for (int j = i; j <= 2; ++j) c += d_total(mi({i, j}), Form(f.partial(u(a, {i, j}))));
    out += Form::basis({u(a)}, c.scalar());
  }
  return out;
}

bool is_null(const Lagrangian& L) { return euler_lagrange(L).is_zero(); }

Form fundamental_form(const Lagrangian& L) {
  auto theta = hilbert_forms(L);
  return p1_apply(2, exterior_d(theta[0])) - p1_apply(1, exterior_d(theta[1]));
}

Scalar normalized_partial(const Scalar& f, const JetCoord& x) {
  return f.partial(x).scaled(Rational(factorial_weight(x.index())));
}

Analysis::Analysis(Lagrangian L)
    : lagrangian(std::move(L)), homogeneity(check_homogeneity(lagrangian)), dL(exterior_d(lagrangian.value())) {
  theta = {p2_apply(1, dL), p2_apply(2, dL)};
  dtheta = {exterior_d(theta[0]), exterior_d(theta[1])};
  epsilon = dL - d_total(1, theta[0]) - d_total(2, theta[1]);
  Theta = p1_apply(2, dtheta[0]) - p1_apply(1, dtheta[1]);
  dTheta = exterior_d(Theta);
}

NullityReport nullity_closedness_check(const Analysis& a) {
  NullityReport r;
  r.precondition_met = a.homogeneity.homogeneous;
  r.dTheta = a.dTheta;
  r.epsilon = a.epsilon;
  r.closed = a.dTheta.is_zero();
  r.null = a.epsilon.is_zero();
  r.consistent = r.closed == r.null;
  if (!r.precondition_met)
    r.diagnostic = "precondition violated: L is not homogeneous";
  else if (!r.consistent)
    r.diagnostic = r.closed ? "dTheta vanishes but epsilon does not" : "epsilon vanishes but dTheta does not";
  return r;
}

NullityReport nullity_closedness_check(const Lagrangian& L) { return nullity_closedness_check(Analysis(L)); }

Form third_order_lie_closed_form(const Analysis& a, const MultiIndex& pqr, int s) {
  auto e = pqr.entries();
  if (e.size() != 3) throw std::invalid_argument("third_order_lie_closed_form expects a third-order index");
  const int p = e[0], q = e[1], r = e[2];
  auto S = [](std::initializer_list<int> I, const Form& w) { return s_iterated(mi(I), w); };
  // Contribution of d^{pqr}_s P^i dtheta^m.
  auto part = [&](int i, int m) {
    const Form& dm = a.dtheta[m - 1];
    Form out = S({p, q, r}, dm).scaled(Rational(kron(i, s))) + S({i, q, r}, dm).scaled(Rational(kron(p, s))) +
               S({i, p, r}, dm).scaled(Rational(kron(q, s))) + S({i, p, q}, dm).scaled(Rational(kron(r, s)));
    out = out.scaled(Rational(5, 96));
    if (m == s) {
      Form tail = S({i, p, q}, a.dtheta[r - 1]) + S({i, p, r}, a.dtheta[q - 1]) + S({i, q, r}, a.dtheta[p - 1]);
      out += tail.scaled(Rational(1, 96));
    }
    return out;
  };
  return part(2, 1) - part(1, 2);
}

ProjectabilityReport projectability(const Analysis& a) {
  ProjectabilityReport r;
  const Form& T = a.Theta;
  r.theta_profile = T.order_profile();

  r.horizontal = true;
  for (auto& I : enumerate_exact(3)) {
    Form f = s_iterated(I, T);
    r.horizontal = r.horizontal && f.is_zero();
    r.horizontality_defects.push_back({"S^" + index_name(I) + " Theta", std::move(f)});
  }

  r.frame_projectable = true;
  for (unsigned al = 1; al <= a.lagrangian.n_fields(); ++al) {
    for (auto& I : enumerate_exact(5)) {
      Form f = coord_field_ops(al, I, T, FieldMode::lie);
      r.frame_projectable = r.frame_projectable && f.is_zero();
      r.frame_projectable_defects.push_back({"d/du" + std::to_string(al) + "_" + index_name(I) + " Theta", std::move(f)});
    }
  }

  r.contact_projectable = true;
  r.closed_form_consistent = true;
  for (unsigned order = 1; order <= 4; ++order) {
    for (auto& I : enumerate_exact(order)) {
      for (int l = 1; l <= 2; ++l) {
        Form c = delta_ops(I, l, T, FieldMode::contract);
        Form d = delta_ops(I, l, T, FieldMode::lie);
        if (order == 3) {
          Form mismatch = d - third_order_lie_closed_form(a, I, l);
          r.closed_form_consistent = r.closed_form_consistent && mismatch.is_zero();
          r.closed_form_mismatches.push_back({"d^" + index_name(I) + "_" + std::to_string(l) + " Theta", std::move(mismatch)});
        }
        r.contact_projectable = r.contact_projectable && c.is_zero() && d.is_zero();
        r.contact_obstructions.push_back({"i^" + index_name(I) + "_" + std::to_string(l) + " Theta", std::move(c)});
        r.contact_obstructions.push_back({"d^" + index_name(I) + "_" + std::to_string(l) + " Theta", std::move(d)});
      }
    }
  }

  r.mixed_hessian_form = Form(2);
  const Scalar& L = a.lagrangian.value();
  for (unsigned b = 1; b <= a.lagrangian.n_fields(); ++b) {
    Scalar first = normalized_partial(L, u(b, {1, 1}));
    if (first.is_zero()) continue;
    for (unsigned al = 1; al <= a.lagrangian.n_fields(); ++al) {
      if (al == b) continue;
      r.mixed_hessian_form += Form::basis({u(b), u(al)}, normalized_partial(first, u(al, {1, 2})));
    }
  }

  r.horizontal_and_projectable = r.horizontal && r.frame_projectable && r.theta_profile.covector_order <= 2;
  return r;
}

// ------------------------------------------------------------- pull-back

ParamPolynomial::ParamPolynomial(const Rational& c) {
  if (c != 0) terms_[{0, 0}] = c;
}

ParamPolynomial ParamPolynomial::t(int i) {
  ParamPolynomial p;
  p.terms_[i == 1 ? std::make_pair(1u, 0u) : std::make_pair(0u, 1u)] = 1;
  return p;
}

ParamPolynomial operator+(const ParamPolynomial& a, const ParamPolynomial& b) {
  ParamPolynomial r = a;
  for (auto& [e, c] : b.terms_) {
    Rational& slot = r.terms_[e];
    slot += c;
    if (slot == 0) r.terms_.erase(e);
  }
  return r;
}

ParamPolynomial ParamPolynomial::operator-() const {
  ParamPolynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

ParamPolynomial operator-(const ParamPolynomial& a, const ParamPolynomial& b) { return a + (-b); }

ParamPolynomial operator*(const ParamPolynomial& a, const ParamPolynomial& b) {
  ParamPolynomial r;
  for (auto& [ea, ca] : a.terms_) {
    for (auto& [eb, cb] : b.terms_) {
      auto e = std::make_pair(ea.first + eb.first, ea.second + eb.second);
      Rational& slot = r.terms_[e];
      slot += ca * cb;
      if (slot == 0) r.terms_.erase(e);
    }
  }
  return r;
}

ParamPolynomial ParamPolynomial::pow(unsigned n) const {
  ParamPolynomial r(1);
  for (unsigned k = 0; k < n; ++k) r = r * *this;
  return r;
}

ParamPolynomial ParamPolynomial::derivative(int i) const {
  ParamPolynomial r;
  for (auto& [e, c] : terms_) {
    unsigned k = i == 1 ? e.first : e.second;
    if (k == 0) continue;
    auto f = i == 1 ? std::make_pair(e.first - 1, e.second) : std::make_pair(e.first, e.second - 1);
    r.terms_[f] = c * k;
  }
  return r;
}

ParamPolynomial ParamPolynomial::derivative(const MultiIndex& I) const {
  ParamPolynomial r = *this;
  for (int e : I.entries()) r = r.derivative(e);
  return r;
}

Rational ParamPolynomial::evaluate(const Rational& t1, const Rational& t2) const {
  Rational total = 0;
  for (auto& [e, c] : terms_) {
    Rational v = c;
    for (unsigned k = 0; k < e.first; ++k) v *= t1;
    for (unsigned k = 0; k < e.second; ++k) v *= t2;
    total += v;
  }
  return total;
}

std::string ParamPolynomial::str() const {
  if (terms_.empty()) return "0";
  std::string s;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    auto [e, c] = *it;
    bool neg = c < 0;
    Rational a = neg ? Rational(-c) : c;
    s += s.empty() ? (neg ? "-" : "") : (neg ? " - " : " + ");
    std::string mono;
    auto factor = [&mono](const char* name, unsigned k) {
      if (k == 0) return;
      if (!mono.empty()) mono += "*";
      mono += name;
      if (k > 1) mono += "^" + std::to_string(k);
    };
    factor("t1", e.first);
    factor("t2", e.second);
    if (mono.empty())
      s += to_string(a);
    else
      s += (a == 1 ? "" : to_string(a) + "*") + mono;
  }
  return s;
}

namespace {

struct PullbackEvaluator {
  const std::vector<ParamPolynomial>& phi;
  Rational t1, t2;
  std::map<std::pair<std::uint32_t, int>, Rational> cache;  // (coordinate key, extra direction or 0)

  Rational value(const JetCoord& x, int extra = 0) {
    auto key = std::make_pair(x.key(), extra);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
    if (x.field() < 1 || x.field() > phi.size())
      throw DomainError("the map does not define field " + std::to_string(x.field()));
    MultiIndex I = extra ? insert(x.index(), extra) : x.index();
    Rational v = phi[x.field() - 1].derivative(I).evaluate(t1, t2);
    cache.emplace(key, v);
    return v;
  }
};

}  // namespace

std::vector<Rational> prolong_pullback(const std::vector<ParamPolynomial>& phi, const Form& w, const Rational& t1,
                                       const Rational& t2) {
  PullbackEvaluator ev{phi, t1, t2, {}};
  auto coeff = [&ev](const Scalar& c) { return c.evaluate([&ev](const JetCoord& x) { return ev.value(x); }); };
  switch (w.degree()) {
    case 0:
      return {w.is_zero() ? Rational(0) : coeff(w.scalar())};
    case 1: {
      Rational c1 = 0, c2 = 0;
      for (auto& [m, c] : w.terms()) {
        Rational v = coeff(c);
        c1 += v * ev.value(m.covector(0), 1);
        c2 += v * ev.value(m.covector(0), 2);
      }
      return {c1, c2};
    }
    case 2: {
      Rational c12 = 0;
      for (auto& [m, c] : w.terms()) {
        JetCoord A = m.covector(0), B = m.covector(1);
        c12 += coeff(c) * (ev.value(A, 1) * ev.value(B, 2) - ev.value(A, 2) * ev.value(B, 1));
      }
      return {c12};
    }
    default:
      return {Rational(0)};
  }
}

Rational lagrangian_on_prolongation(const std::vector<ParamPolynomial>& phi, const Lagrangian& L, const Rational& t1,
                                    const Rational& t2) {
  return prolong_pullback(phi, Form(L.value()), t1, t2).front();
}

// -------------------------------------------------------------- fixtures

Lagrangian determinant_fixture(unsigned alpha, unsigned beta) {
  if (alpha == beta) throw std::invalid_argument("determinant fixture needs two distinct fields");
  if (alpha == 0 || beta == 0) throw std::invalid_argument("field indices start at 1");
  return Lagrangian(det(alpha, beta));
}

namespace {

std::pair<Scalar, Scalar> section4_functions() {
  Scalar inv = det(1, 2).inverse();
  return {det(2, 3) * inv, det(3, 4) * inv};
}

Scalar section4_closed_form() {
  auto [F1, F2] = section4_functions();
  Form f1(F1), f2(F2);
  Scalar d1F1 = d_total(1, f1).scalar(), d2F1 = d_total(2, f1).scalar();
  Scalar d1F2 = d_total(1, f2).scalar(), d2F2 = d_total(2, f2).scalar();
  return d1F1 * d2F2 - d2F1 * d1F2;
}

}  // namespace

Scalar section4_by_contraction() {
  auto [F1, F2] = section4_functions();
  Form w = wedge(exterior_d(F1), exterior_d(F2));
  return i_total(2, i_total(1, w)).scalar();
}

Lagrangian section4_fixture() {
  static const Scalar value = [] {
    Scalar closed = section4_closed_form();
    if (!scalar_equals(closed, section4_by_contraction()))
      throw std::logic_error("section 4 fixture: closed form disagrees with the contraction");
    return closed;
  }();
  return Lagrangian(value, 4);
}

}  // namespace hvc
