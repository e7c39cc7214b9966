#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "hvc/errors.hpp"
#include "support.hpp"

using namespace hvc;
using hvc::test::c;
using hvc::test::D;
using hvc::test::du;
using hvc::test::mi;
using hvc::test::same;

namespace {

const Analysis& section4() {
  static const Analysis a(section4_fixture());
  return a;
}

// A homogeneous Lagrangian that is not null.
Lagrangian non_null_sample() { return Lagrangian(c(3) * D(1, 2), 3); }

Scalar section4_literal() {
  Scalar F1 = D(2, 3) / D(1, 2), F2 = D(3, 4) / D(1, 2);
  auto T = [](int i, const Scalar& f) { return d_total(i, Form(f)).scalar(); };
  return T(1, F1) * T(2, F2) - T(2, F1) * T(1, F2);
}

Scalar maple_value() { return c(2, {2}) * c(3, {2}) * D(3, 4) * 4 / D(1, 2).pow(3); }

}  // namespace

TEST_CASE("Lagrangians are at most second order") {
  CHECK_THROWS_AS(Lagrangian(c(1, {1, 1, 2})), DomainError);
  CHECK(Lagrangian(D(3, 4)).n_fields() == 4);
  CHECK(Lagrangian(Scalar(2)).n_fields() == 1);
  CHECK(Lagrangian(c(1), 3).n_fields() == 3);
}

TEST_CASE("fixtures") {
  CHECK(same(determinant_fixture(1, 2).value(), D(1, 2)));
  CHECK(same(determinant_fixture(2, 3).value(), D(2, 3)));
  CHECK(same(determinant_fixture(3, 4).value(), D(3, 4)));
  CHECK_THROWS(determinant_fixture(2, 2));
  CHECK_THROWS(determinant_fixture(0, 1));
  CHECK(same(section4_fixture().value(), section4_literal()));
  CHECK(same(section4_by_contraction(), section4_literal()));
  CHECK(section4_fixture().n_fields() == 4);
}

TEST_CASE("homogeneity") {
  CHECK(check_homogeneity(determinant_fixture(1, 2)).homogeneous);
  CHECK(section4().homogeneity.homogeneous);
  CHECK(check_homogeneity(non_null_sample()).homogeneous);
  auto r = check_homogeneity(Lagrangian(c(1, {1}) + Scalar(1)));
  CHECK_FALSE(r.homogeneous);
  // d^1_1 L = u1_1, so the defect d^1_1 L - L is -1.
  REQUIRE(r.first_order_defects.count({1, 1}));
  CHECK(same(r.first_order_defects.at({1, 1}), Scalar(-1)));
  CHECK(same(delta_ops(mi({1}), 1, Form(c(1, {1}) + Scalar(1)), FieldMode::lie).scalar(), c(1, {1})));
}

TEST_CASE("Hilbert forms") {
  auto det = hilbert_forms(determinant_fixture(1, 2));
  CHECK(same(det[0], du(1).scaled(c(2, {2})) - du(2).scaled(c(1, {2}))));
  CHECK(same(det[1], du(2).scaled(c(1, {1})) - du(1).scaled(c(2, {1}))));
  CHECK(det[0].order_profile() == OrderProfile{0, 1});
  auto zero = hilbert_forms(Lagrangian(Scalar(Rational(5, 2))));
  CHECK(zero[0].is_zero());
  CHECK(zero[1].is_zero());
  // Half trace: L = 1/2 i_i theta^i for homogeneous L.
  auto& a = section4();
  Scalar half_trace = (i_total(1, a.theta[0]).scalar() + i_total(2, a.theta[1]).scalar()).scaled(Rational(1, 2));
  CHECK(same(half_trace, a.lagrangian.value()));
}

TEST_CASE("Euler-Lagrange forms") {
  CHECK(euler_lagrange(determinant_fixture(1, 2)).is_zero());
  CHECK(section4().epsilon.is_zero());
  CHECK(is_null(determinant_fixture(1, 2)));
  CHECK(is_null(section4_fixture()));
  CHECK_FALSE(is_null(non_null_sample()));
  Form eps = euler_lagrange(non_null_sample());
  CHECK(same(eps, euler_lagrange_coordinates(non_null_sample())));
  // L = u3 D12: the u3 equation is D12, the others are total divergences.
  CHECK(same(eps.coefficient({u(3)}), D(1, 2)));
  CHECK_NOTHROW(euler_lagrange(Lagrangian(c(1, {1, 1}) * c(1))));
}

TEST_CASE("fundamental form of the determinant") {
  Form Theta = fundamental_form(determinant_fixture(1, 2));
  CHECK(same(Theta, wedge(du(1), du(2)).scaled(Rational(-1))));
  CHECK(fundamental_form(Lagrangian(Scalar(3))).is_zero());
  auto report = nullity_closedness_check(determinant_fixture(1, 2));
  CHECK(report.precondition_met);
  CHECK(report.closed);
  CHECK(report.null);
  CHECK(report.consistent);
}

TEST_CASE("fundamental form of the R^4 fixture") {
  auto& a = section4();
  CHECK(same(i_total(2, a.Theta), a.theta[0]));
  CHECK(same(i_total(1, a.Theta), -a.theta[1]));
  CHECK(same(i_total(1, i_total(2, a.Theta)).scalar(), a.lagrangian.value()));
  CHECK(a.dTheta.is_zero());
  bool rational = false;
  for (auto& [m, coeff] : a.Theta.terms()) rational |= !coeff.is_polynomial();
  CHECK(rational);
  auto report = nullity_closedness_check(a);
  CHECK(report.closed);
  CHECK(report.null);
  CHECK(report.consistent);
}

TEST_CASE("non-null homogeneous sample has a non-closed fundamental form") {
  auto report = nullity_closedness_check(non_null_sample());
  CHECK(report.precondition_met);
  CHECK_FALSE(report.closed);
  CHECK_FALSE(report.null);
  CHECK(report.consistent);
}

TEST_CASE("nullity check requires homogeneity") {
  auto report = nullity_closedness_check(Lagrangian(c(1, {1}) * c(1, {1})));
  CHECK_FALSE(report.precondition_met);
  CHECK_FALSE(report.diagnostic.empty());
}

TEST_CASE("normalized second partials reproduce the R^4 mixed value") {
  const Scalar& L = section4().lagrangian.value();
  auto mixed = [&](auto&& second) {
    return second(L, u(1, {1, 1}), u(2, {1, 2})) - second(L, u(2, {1, 1}), u(1, {1, 2}));
  };
  auto normalized = [](const Scalar& f, const JetCoord& x, const JetCoord& y) {
    return normalized_partial(normalized_partial(f, x), y);
  };
  auto plain = [](const Scalar& f, const JetCoord& x, const JetCoord& y) { return partial(partial(f, x), y); };
  CHECK(same(mixed(normalized), maple_value()));
  CHECK(same(mixed(plain).scaled(Rational(2)), maple_value()));
  CHECK(same(normalized_partial(c(1, {1, 1}).pow(2), u(1, {1, 1})), c(1, {1, 1}) * 4));
  CHECK(same(normalized_partial(c(1, {1, 2}).pow(2), u(1, {1, 2})), c(1, {1, 2}) * 2));
}

TEST_CASE("projectability of the determinant fixture") {
  auto r = projectability(Analysis(determinant_fixture(1, 2)));
  CHECK(r.horizontal);
  CHECK(r.frame_projectable);
  CHECK(r.contact_projectable);
  CHECK(r.closed_form_consistent);
  CHECK(r.horizontal_and_projectable);
  CHECK(r.mixed_hessian_form.is_zero());
}

TEST_CASE("projectability of the R^4 fixture") {
  auto r = projectability(section4());
  CHECK(r.horizontal);
  CHECK(r.frame_projectable);
  CHECK(r.horizontal_and_projectable);
  CHECK(r.theta_profile.covector_order <= 2);
  CHECK(r.closed_form_consistent);
  CHECK(same(r.mixed_hessian_form.coefficient({u(1), u(2)}), maple_value()));
}

TEST_CASE("parameter polynomials") {
  auto t1 = ParamPolynomial::t(1), t2 = ParamPolynomial::t(2);
  ParamPolynomial p = t1 * t1 * t2 + ParamPolynomial(Rational(3)) - t2.pow(3);
  CHECK(p.evaluate(2, 1) == 4 + 3 - 1);
  CHECK(p.derivative(1).evaluate(2, 1) == 4);
  CHECK(p.derivative(mi({1, 2})).evaluate(5, 7) == 10);
  CHECK((p - p).is_zero());
  CHECK((-t1 + t1).is_zero());
}

TEST_CASE("pull-back along prolonged maps") {
  auto t1 = ParamPolynomial::t(1), t2 = ParamPolynomial::t(2);
  std::vector<ParamPolynomial> identity{t1, t2};
  auto coeff = prolong_pullback(identity, wedge(du(1), du(2)), Rational(3, 2), Rational(-1, 5));
  REQUIRE(coeff.size() == 1);
  CHECK(coeff[0] == 1);
  auto one = prolong_pullback(identity, du(1).scaled(c(2)), 2, 7);
  REQUIRE(one.size() == 2);
  CHECK(one[0] == 7);
  CHECK(one[1] == 0);

  // phi = (t1 + t2^2, t2): D12 = 1 and L = D12 along j^1 phi.
  std::vector<ParamPolynomial> phi{t1 + t2 * t2, t2};
  for (auto [a, b] : std::vector<std::pair<long, long>>{{0, 0}, {1, 2}, {-3, 5}}) {
    CHECK(lagrangian_on_prolongation(phi, determinant_fixture(1, 2), a, b) == 1);
    CHECK(prolong_pullback(phi, fundamental_form(determinant_fixture(1, 2)), a, b)[0] == -1);
    CHECK(prolong_pullback(phi, du(1, {2}), a, b)[1] == 2);  // u1_2 = 2 t2
  }
  CHECK_THROWS_AS(prolong_pullback({t1}, du(2), 0, 0), DomainError);
}

TEST_CASE("the pull-back of Theta is i2 i1 Theta, which is -L") {
  auto& a = section4();
  auto t1 = ParamPolynomial::t(1), t2 = ParamPolynomial::t(2);
  std::vector<ParamPolynomial> phi{t1, t2, t1 * t1 + t1 * t2, t2.pow(3)};
  Rational x(1, 3), y(2, 1);
  Rational L = lagrangian_on_prolongation(phi, a.lagrangian, x, y);
  CHECK(L != 0);
  CHECK(prolong_pullback(phi, a.Theta, x, y)[0] == -L);
  CHECK(same(i_total(2, i_total(1, a.Theta)).scalar(), -a.lagrangian.value()));
}
