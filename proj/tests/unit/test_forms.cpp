#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hvc/cli/suite.hpp"
#include "hvc/errors.hpp"
#include "support.hpp"

using namespace hvc;
using hvc::test::c;
using hvc::test::D;
using hvc::test::du;
using hvc::test::same;

namespace {
Scalar F(int k) { return k == 1 ? D(2, 3) / D(1, 2) : D(3, 4) / D(1, 2); }
}  // namespace

TEST_CASE("wedge is antisymmetric and canonical") {
  CHECK(wedge(du(1), du(1)).is_zero());
  CHECK(same(wedge(du(2), du(1)), -wedge(du(1), du(2))));
  CHECK(form_equals(wedge(du(1), du(2)), -wedge(du(2), du(1))));
  Form w = wedge(du(2), du(1));
  REQUIRE(w.size() == 1);
  CHECK(w.terms().begin()->first.covector(0) == u(1));
  CHECK(scalar_equals(w.terms().begin()->second, Scalar(-1)));
}

TEST_CASE("wedge is associative and graded commutative") {
  std::mt19937_64 rng(3);
  cli::RandomFormSpec spec;
  spec.max_degree = 2;
  spec.max_fields = 2;
  spec.max_order = 2;
  for (int k = 0; k < 20; ++k) {
    Form a = cli::random_form(rng, spec), b = cli::random_form(rng, spec), e = cli::random_form(rng, spec);
    CHECK(same(wedge(wedge(a, b), e), wedge(a, wedge(b, e))));
    Form ba = wedge(b, a);
    CHECK(same(wedge(a, b), (a.degree() * b.degree()) % 2 ? -ba : ba));
  }
}

TEST_CASE("dF1 ^ dF2 has rational coefficients over powers of D12") {
  Form w = wedge(exterior_d(F(1)), exterior_d(F(2)));
  CHECK(w.degree() == 2);
  CHECK_FALSE(w.is_zero());
  bool rational = false;
  for (auto& [m, coeff] : w.terms()) {
    if (!coeff.is_polynomial()) rational = true;
    for (auto& f : coeff.den_factors()) CHECK(f.base->poly() == D(1, 2).num());
  }
  CHECK(rational);
  CHECK(exterior_d(w).is_zero());
}

TEST_CASE("linear operations") {
  Form theta = du(1).scaled(c(2, {2})) - du(2).scaled(c(1, {2}));
  CHECK((theta - theta).is_zero());
  Form s = wedge(du(1), du(2)).scaled(D(1, 2));
  CHECK(scalar_equals(s.coefficient({u(1), u(2)}), D(1, 2)));
  CHECK_THROWS_AS(du(1) + wedge(du(1), du(2)), DegreeMismatch);
}

TEST_CASE("exterior derivative") {
  CHECK(same(exterior_d(c(1)), du(1)));
  Form expected = du(1, {1}).scaled(c(2, {2})) + du(2, {2}).scaled(c(1, {1})) - du(1, {2}).scaled(c(2, {1})) -
                  du(2, {1}).scaled(c(1, {2}));
  CHECK(same(exterior_d(D(1, 2)), expected));
  CHECK(exterior_d(exterior_d(F(1))).is_zero());
  CHECK(exterior_d(Scalar(5)).is_zero());
}

TEST_CASE("d is an antiderivation and squares to zero") {
  std::mt19937_64 rng(5);
  cli::RandomFormSpec spec;
  spec.max_degree = 2;
  for (int k = 0; k < 20; ++k) {
    Form a = cli::random_form(rng, spec), b = cli::random_form(rng, spec);
    Form lhs = exterior_d(wedge(a, b));
    Form rhs = wedge(exterior_d(a), b) + (a.degree() % 2 ? -wedge(a, exterior_d(b)) : wedge(a, exterior_d(b)));
    CHECK(same(lhs, rhs));
    CHECK(exterior_d(exterior_d(a)).is_zero());
  }
}

TEST_CASE("dtheta for the determinant computed two ways") {
  Scalar L = D(1, 2);
  Form via_forms = exterior_d(du(1).scaled(partial(L, u(1, {1}))) + du(2).scaled(partial(L, u(2, {1}))));
  Form via_coeffs = wedge(exterior_d(partial(L, u(1, {1}))), du(1)) + wedge(exterior_d(partial(L, u(2, {1}))), du(2));
  CHECK(form_equals(via_forms, via_coeffs));
  Form theta1 = du(1).scaled(c(2, {2})) - du(2).scaled(c(1, {2}));
  Form theta2 = du(2).scaled(c(1, {1})) - du(1).scaled(c(2, {1}));
  CHECK_FALSE(form_equals(theta1, theta2));
}

TEST_CASE("order profiles") {
  CHECK(wedge(du(1), du(2)).order_profile() == OrderProfile{0, 0});
  Form theta1 = du(1).scaled(c(2, {2})) - du(2).scaled(c(1, {2}));
  CHECK(theta1.order_profile() == OrderProfile{0, 1});
  CHECK(exterior_d(section4_fixture().value()).order_profile() == OrderProfile{2, 2});
}

TEST_CASE("basis construction sorts covectors with sign") {
  CHECK(same(Form::basis({u(2), u(1, {1})}), -Form::basis({u(1, {1}), u(2)})));
  CHECK(Form::basis({u(2), u(2)}).is_zero());
  CHECK(scalar_equals(Form(D(1, 2)).scalar(), D(1, 2)));
}
