#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hvc/cli/suite.hpp"
#include "support.hpp"

using namespace hvc;
using hvc::test::c;
using hvc::test::D;
using hvc::test::du;
using hvc::test::mi;
using hvc::test::same;

namespace {

int kron(int a, int b) { return a == b ? 1 : 0; }

Form random_form(std::mt19937_64& rng, unsigned max_degree = 3, unsigned max_order = 3) {
  cli::RandomFormSpec spec;
  spec.max_degree = max_degree;
  spec.max_order = max_order;
  spec.max_fields = 2;
  return cli::random_form(rng, spec);
}

// dtheta^m for the determinant fixture, written out by hand:
// theta^1 = u2_2 du1 - u1_2 du2, theta^2 = u1_1 du2 - u2_1 du1.
Form dtheta_det(int m) {
  if (m == 1) return wedge(du(2, {2}), du(1)) - wedge(du(1, {2}), du(2));
  return wedge(du(1, {1}), du(2)) - wedge(du(2, {1}), du(1));
}

}  // namespace

TEST_CASE("contraction with total derivatives") {
  CHECK(scalar_equals(contract(du(1, {2}), total_lazy(1)).scalar(), c(1, {1, 2})));
  CHECK(contract(Form(D(1, 2)), total_lazy(1)).is_zero());
  Form w = wedge(du(1), du(2));
  CHECK(same(contract(w, total_lazy(2)), du(2).scaled(c(1, {2})) - du(1).scaled(c(2, {2}))));
  CHECK(same(i_total(2, w), contract(w, total_field(2, 0, 2))));
}

TEST_CASE("total derivatives of functions") {
  Scalar expected = c(2, {2}) * c(1, {1, 1}) + c(1, {1}) * c(2, {1, 2}) - c(2, {1}) * c(1, {1, 2}) -
                    c(1, {2}) * c(2, {1, 1});
  CHECK(scalar_equals(d_total(1, Form(D(1, 2))).scalar(), expected));
  CHECK(scalar_equals(d_total(2, Form(c(1, {1}))).scalar(), c(1, {1, 2})));
  CHECK(same(d_total(mi({1, 2}), Form(c(1))), Form(c(1, {1, 2}))));
}

TEST_CASE("total derivative commutes with d") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 15; ++k) {
    Form w = random_form(rng, 2);
    for (int i = 1; i <= 2; ++i) CHECK(same(d_total(i, exterior_d(w)), exterior_d(d_total(i, w))));
  }
}

TEST_CASE("vertical endomorphism on basis covectors") {
  CHECK(same(s_vertical(1, du(1, {1})), du(1)));
  CHECK(same(s_vertical(1, du(1, {1, 1})), du(1, {1}).scaled(Rational(2))));
  CHECK(s_vertical(2, du(1, {1, 1})).is_zero());
  CHECK(s_vertical(1, Form(c(1, {1}))).is_zero());
}

TEST_CASE("vertical weights are forced by d_j S^i = S^i d_j - r delta^i_j") {
  // On du_K the rule gives w(K+j, i) = w(K, i) + delta^i_j with w(empty, i) = 0.
  std::map<std::pair<MultiIndex, int>, long> weight;
  for (int i = 1; i <= 2; ++i) weight[{MultiIndex(), i}] = 0;
  for (unsigned n = 0; n < 4; ++n)
    for (auto& K : enumerate_exact(n))
      for (int j = 1; j <= 2; ++j)
        for (int i = 1; i <= 2; ++i) weight[{insert(K, j), i}] = weight[{K, i}] + kron(i, j);
  for (auto& [key, w] : weight) {
    auto [K, i] = key;
    Form expected(1);
    if (auto lower = remove(K, i)) expected = Form::covector(JetCoord(2, *lower)).scaled(Rational(w));
    CHECK(same(s_vertical(i, Form::covector(JetCoord(2, K))), expected));
  }
}

TEST_CASE("iterated vertical endomorphisms") {
  CHECK(same(s_iterated(mi({1, 2}), du(1, {1, 2})), du(1)));
  CHECK(same(s_iterated(mi({1, 1}), du(1, {1, 1})), du(1).scaled(Rational(2))));
  Form w = wedge(du(1, {1}), du(2, {2}));
  CHECK(same(s_iterated(mi({}), w), w));
}

TEST_CASE("derivation and composition readings of S^J agree exactly on 1-forms") {
  std::mt19937_64 rng(9);
  for (int k = 0; k < 30; ++k) {
    Form w = random_form(rng, 3);
    for (unsigned s = 1; s <= 3; ++s)
      for (auto& J : enumerate_exact(s)) {
        if (w.degree() <= 1) CHECK(same(s_iterated(J, w), s_derivation(J, w)));
      }
  }
  // S^1 S^2 (du1_1 ^ du2_2) = S^1 (du1_1 ^ du2) = du1 ^ du2, while neither
  // covector alone contains the index 12.
  Form w = wedge(du(1, {1}), du(2, {2}));
  CHECK(s_derivation(mi({1, 2}), w).is_zero());
  CHECK(same(s_iterated(mi({1, 2}), w), wedge(du(1), du(2))));
}

TEST_CASE("d^J_j S^i identity holds with S^J as a derivation, not as a composition") {
  // On r-forms with r >= 2 and |J| >= 2 the composition picks up cross terms.
  bool composition_fails = false;
  for (auto& K : enumerate(3))
    for (auto& M : enumerate(3)) {
      Form w = wedge(Form::covector(JetCoord(1, K)), Form::covector(JetCoord(2, M))).scaled(c(1, {1}));
      for (unsigned s = 1; s <= 2; ++s)
        for (auto& J : enumerate_exact(s))
          for (int i = 1; i <= 2; ++i)
            for (int j = 1; j <= 2; ++j) {
              Form lhs = delta_ops(J, j, s_vertical(i, w), FieldMode::lie);
              Form base = s_vertical(i, delta_ops(J, j, w, FieldMode::lie));
              CHECK(same(lhs, base - s_derivation(J, w).scaled(Rational(kron(i, j)))));
              if (!same(lhs, base - s_iterated(J, w).scaled(Rational(kron(i, j))))) composition_fails = true;
            }
    }
  CHECK(composition_fails);
}

TEST_CASE("fundamental fields: closed form matches iterated s_on_field") {
  std::mt19937_64 rng(4);
  for (int k = 0; k < 10; ++k) {
    Form w = random_form(rng, 2, 3);
    for (unsigned s = 0; s <= 3; ++s)
      for (auto& I : enumerate_exact(s))
        for (int j = 1; j <= 2; ++j) {
          VectorField X = delta_field(I, j, 4, 2);
          CHECK(same(delta_ops(I, j, w, FieldMode::contract), contract(w, X)));
          CHECK(same(delta_ops(I, j, w, FieldMode::lie), lie(w, X)));
        }
  }
}

TEST_CASE("fundamental fields on the determinant") {
  CHECK(same(delta_ops(mi({1}), 1, Form(D(1, 2)), FieldMode::lie), Form(D(1, 2))));
  CHECK(delta_ops(mi({2}), 1, Form(D(1, 2)), FieldMode::lie).is_zero());
  CHECK(delta_ops(mi({1, 1}), 1, Form(D(1, 2)), FieldMode::lie).is_zero());
  // d^{}_j is d_j
  CHECK(same(delta_ops(mi({}), 2, Form(D(1, 2)), FieldMode::lie), d_total(2, Form(D(1, 2)))));
}

TEST_CASE("Lie derivative agrees with Cartan's formula") {
  std::mt19937_64 rng(8);
  VectorField X(false);
  X.set(u(1, {1}), c(2, {2}) * c(1));
  X.set(u(2), c(1, {1, 2}) + Scalar(3));
  X.set(u(1, {2, 2}), c(2, {1}).pow(2));
  for (int k = 0; k < 20; ++k) {
    Form w = random_form(rng, 3, 2);
    CHECK(same(lie(w, X), lie_cartan(w, X)));
  }
  VectorField T = total_field(1, 3, 2);
  for (int k = 0; k < 10; ++k) {
    Form w = random_form(rng, 2, 2);
    CHECK(same(lie(w, T), d_total(1, w)));
    CHECK(same(lie_cartan(w, T), d_total(1, w)));
  }
}

TEST_CASE("coordinate fields") {
  Form theta_det = wedge(du(1), du(2)).scaled(Rational(-1));
  CHECK(coord_field_ops(1, mi({1, 1, 1, 1, 1}), theta_det, FieldMode::lie).is_zero());
  CHECK(scalar_equals(coord_field_ops(1, mi({1}), du(1, {1}), FieldMode::contract).scalar(), Scalar(1)));
  Form w = du(2).scaled(c(1, {1, 1, 1}));
  CHECK(same(coord_field_ops(1, mi({1, 1, 1}), w, FieldMode::lie), du(2)));
}

TEST_CASE("coordinate fields commute with S^p") {
  std::mt19937_64 rng(12);
  for (int k = 0; k < 10; ++k) {
    Form w = random_form(rng, 2, 3);
    for (unsigned s = 3; s <= 5; ++s)
      for (auto& I : enumerate_exact(s))
        for (int p = 1; p <= 2; ++p)
          CHECK(same(coord_field_ops(1, I, s_vertical(p, w), FieldMode::lie),
                     s_vertical(p, coord_field_ops(1, I, w, FieldMode::lie))));
  }
}

TEST_CASE("factorial-weighted coordinate fields satisfy the exchange rule with d_q") {
  // lambda(I) d/du_I d_q f = sum_r delta^{i_r}_q lambda(I - i_r) d/du_{I - i_r} f for f of order < |I|.
  auto weighted = [](const MultiIndex& I, const Form& w) {
    return lie(w, coord_lazy(1, I, Rational(static_cast<long>(factorial_weight(I)))));
  };
  std::mt19937_64 rng(14);
  for (unsigned s = 4; s <= 5; ++s) {
    for (int k = 0; k < 5; ++k) {
      Form w = random_form(rng, 1, s - 1);
      for (auto& I : enumerate_exact(s))
        for (int q = 1; q <= 2; ++q) {
          Form rhs(w.degree());
          for (int e : I.entries())
            if (e == q) rhs += weighted(*remove(I, e), w);
          CHECK(same(weighted(I, d_total(q, w)), rhs));
        }
    }
  }
}

TEST_CASE("operator expressions merge commuting compositions") {
  OperatorExpr e;
  e.add(1, {OperatorExpr::D(1), OperatorExpr::D(2), OperatorExpr::S(2), OperatorExpr::S(1)});
  e.add(1, {OperatorExpr::D(2), OperatorExpr::D(1), OperatorExpr::S(1), OperatorExpr::S(2)});
  CHECK(e.terms().size() == 1);
  CHECK(e.terms()[0].coeff == 2);
  Form w = wedge(du(1, {1, 2}), du(2, {2})).scaled(c(1));
  CHECK(same(e.apply(w), d_total(1, d_total(2, s_vertical(1, s_vertical(2, w)))).scaled(Rational(2))));
}

TEST_CASE("P and Q operators on the determinant fixture") {
  CHECK(same(p1_apply(2, dtheta_det(1)), wedge(du(1), du(2)).scaled(Rational(-1, 2))));
  CHECK(same(p1_apply(1, dtheta_det(2)), wedge(du(1), du(2)).scaled(Rational(1, 2))));
  Form dL = exterior_d(D(1, 2));
  CHECK(same(p2_apply(1, dL), du(1).scaled(c(2, {2})) - du(2).scaled(c(1, {2}))));
  CHECK(same(p2_apply(2, dL), du(2).scaled(c(1, {1})) - du(1).scaled(c(2, {1}))));
  for (int i = 1; i <= 2; ++i) {
    CHECK(p1_apply(i, Form(2)).is_zero());
    CHECK(p2_apply(i, Form(1)).is_zero());
    CHECK(q1_apply(i, Form(3)).is_zero());
    CHECK(q2_apply(i, Form(3)).is_zero());
  }
  Form dt1 = dtheta_det(1);
  CHECK(same(q2_apply(1, d_total(2, dt1)), d_total(2, p1_apply(1, dt1))));
  CHECK(same(q2_apply(1, d_total(1, dt1)) + d_total(2, p1_apply(2, dt1)), dt1));
}

TEST_CASE("displayed operator coefficients") {
  // Each summed index term d_J S^J S^i carries the displayed coefficient;
  // merged rearrangements of J carry it times multiplicity(J).
  auto check = [](const OperatorExpr& e, std::vector<Rational> displayed) {
    for (auto& t : e.terms()) {
      std::vector<int> totals;
      for (auto& op : t.ops)
        if (op.kind == OperatorExpr::Kind::total) totals.push_back(op.index);
      MultiIndex J = MultiIndex::from_entries(totals);
      REQUIRE(J.order() < displayed.size());
      CHECK(t.coeff == displayed[J.order()] * Rational(static_cast<long>(multiplicity(J))));
    }
  };
  for (int i = 1; i <= 2; ++i) {
    check(p1_operator(i), {Rational(1, 4), Rational(-1, 24), Rational(1, 192)});
    check(p2_operator(i), {Rational(1), Rational(-1, 2)});
    check(q2_operator(i), {Rational(1, 2), Rational(-1, 8), Rational(1, 48), Rational(-1, 384)});
    check(q1_operator(i), {Rational(1, 6), Rational(-1, 54), Rational(1, 648), Rational(-1, 9720), Rational(1, 174960)});
    CHECK(q1_operator(i).terms().size() == 1 + 2 + 3 + 4 + 5);
  }
}
