#include "hvc/cli/app.hpp"

#include <CLI11.hpp>
#include <iostream>

#include "hvc/cli/parse.hpp"
#include "hvc/cli/render.hpp"
#include "hvc/cli/suite.hpp"
#include "hvc/errors.hpp"

namespace hvc::cli {

namespace {

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct Context {
  std::ostream& out;
  std::ostream& err;
  Style style;
};

std::string yes_no(bool b) { return b ? "yes" : "no"; }

int homogeneity_cmd(const Context& cx, const Lagrangian& L) {
  auto r = check_homogeneity(L);
  if (cx.style == Style::json) {
    nlohmann::json j;
    j["homogeneous"] = r.homogeneous;
    for (auto& [ij, s] : r.first_order_defects)
      j["first_order"]["d^" + std::to_string(ij.first) + "_" + std::to_string(ij.second)] = scalar_json(s);
    for (auto& [ikj, s] : r.second_order_defects)
      j["second_order"]["d^" + std::to_string(std::get<0>(ikj)) + std::to_string(std::get<1>(ikj)) + "_" +
                        std::to_string(std::get<2>(ikj))] = scalar_json(s);
    cx.out << j.dump(2) << "\n";
  } else {
    for (auto& [ij, s] : r.first_order_defects) {
      auto [i, j] = ij;
      cx.out << "d^" << i << "_" << j << " L" << (i == j ? " - L" : "") << " = " << render(s, cx.style) << "\n";
    }
    for (auto& [ikj, s] : r.second_order_defects)
      cx.out << "d^" << std::get<0>(ikj) << std::get<1>(ikj) << "_" << std::get<2>(ikj) << " L = " << render(s, cx.style)
             << "\n";
    cx.out << "homogeneous: " << yes_no(r.homogeneous) << "\n";
  }
  return r.homogeneous ? kOk : kCheckFailed;
}

void warn_if_not_homogeneous(const Context& cx, const Lagrangian& L) {
  if (!check_homogeneity(L).homogeneous)
    cx.err << "warning: L is not homogeneous; the identities relating these forms need not hold\n";
}

int hilbert_cmd(const Context& cx, const Lagrangian& L) {
  warn_if_not_homogeneous(cx, L);
  auto th = hilbert_forms(L);
  if (cx.style == Style::json) {
    cx.out << nlohmann::json{{"theta1", form_json(th[0])}, {"theta2", form_json(th[1])}}.dump(2) << "\n";
  } else {
    cx.out << "theta^1 = " << render(th[0], cx.style) << "\n";
    cx.out << "theta^2 = " << render(th[1], cx.style) << "\n";
  }
  return kOk;
}

int euler_lagrange_cmd(const Context& cx, const Lagrangian& L) {
  bool homogeneous = check_homogeneity(L).homogeneous;
  if (!homogeneous) warn_if_not_homogeneous(cx, L);
  Form eps = euler_lagrange(L);
  std::optional<bool> agrees;
  if (homogeneous) agrees = (eps - euler_lagrange_coordinates(L)).is_zero();
  if (cx.style == Style::json) {
    nlohmann::json j{{"epsilon", form_json(eps)}, {"null", eps.is_zero()}};
    if (agrees) j["coordinate_form_agrees"] = *agrees;
    cx.out << j.dump(2) << "\n";
  } else {
    cx.out << "epsilon = " << render(eps, cx.style) << "\n";
    cx.out << "null: " << yes_no(eps.is_zero()) << "\n";
    if (agrees) cx.out << "coordinate form agrees: " << yes_no(*agrees) << "\n";
  }
  return agrees.value_or(true) ? kOk : kCheckFailed;
}

int fundamental_cmd(const Context& cx, const Lagrangian& L) {
  warn_if_not_homogeneous(cx, L);
  Form T = fundamental_form(L);
  auto p = T.order_profile();
  if (cx.style == Style::json) {
    cx.out << nlohmann::json{{"Theta", form_json(T)},
                             {"covector_order", p.covector_order},
                             {"coefficient_order", p.coefficient_order}}
                  .dump(2)
           << "\n";
  } else {
    cx.out << "Theta = " << render(T, cx.style) << "\n";
    cx.out << "order profile: covectors " << p.covector_order << ", coefficients " << p.coefficient_order << "\n";
  }
  return kOk;
}

int obstructions_cmd(const Context& cx, const Lagrangian& L) {
  Analysis a(L);
  if (!a.homogeneity.homogeneous) {
    cx.err << "error: obstructions require a homogeneous Lagrangian\n";
    return kCheckFailed;
  }
  auto r = projectability(a);
  auto group = [&](const char* title, const std::vector<NamedForm>& forms) {
    nlohmann::json j = nlohmann::json::object();
    std::size_t nonzero = 0;
    for (auto& f : forms) {
      if (f.form.is_zero()) continue;
      ++nonzero;
      if (cx.style == Style::json)
        j[f.name] = form_json(f.form);
      else
        cx.out << "  " << f.name << " = " << render(f.form, cx.style) << "\n";
    }
    if (cx.style != Style::json) cx.out << title << ": " << nonzero << " of " << forms.size() << " nonzero\n";
    return j;
  };
  if (cx.style == Style::json) {
    nlohmann::json j;
    j["horizontality_defects"] = group("", r.horizontality_defects);
    j["frame_projectable_defects"] = group("", r.frame_projectable_defects);
    j["contact_obstructions"] = group("", r.contact_obstructions);
    j["closed_form_mismatches"] = group("", r.closed_form_mismatches);
    j["mixed_hessian_form"] = form_json(r.mixed_hessian_form);
    j["horizontal"] = r.horizontal;
    j["frame_projectable"] = r.frame_projectable;
    j["contact_projectable"] = r.contact_projectable;
    j["closed_form_consistent"] = r.closed_form_consistent;
    cx.out << j.dump(2) << "\n";
  } else {
    group("S^{pqr} Theta", r.horizontality_defects);
    group("Lie derivatives along d/du^a_{lpqrs}", r.frame_projectable_defects);
    group("contact obstructions i^I_l Theta, d^I_l Theta", r.contact_obstructions);
    group("d^{pqr}_s Theta minus closed form", r.closed_form_mismatches);
    cx.out << "mixed Hessian form = " << render(r.mixed_hessian_form, cx.style) << "\n";
    cx.out << "horizontal over second order: " << yes_no(r.horizontal) << "\n";
    cx.out << "projectable to fourth order: " << yes_no(r.frame_projectable) << "\n";
    cx.out << "projectable to contact elements: " << yes_no(r.contact_projectable) << "\n";
    cx.out << "closed form consistent: " << yes_no(r.closed_form_consistent) << "\n";
  }
  return r.horizontal_and_projectable && r.closed_form_consistent ? kOk : kCheckFailed;
}

int paper_example_cmd(const Context& cx) {
  PaperExample ex = paper_example();
  if (cx.style == Style::json) {
    cx.out << nlohmann::json{{"weighted_mixed_partial", scalar_json(ex.normalized_mixed.cancelled())},
                             {"plain_mixed_partial", scalar_json(ex.plain_mixed.cancelled())},
                             {"expected", scalar_json(ex.expected)},
                             {"homogeneous", ex.homogeneity.homogeneous},
                             {"matches", ex.matches}}
                  .dump(2)
           << "\n";
  } else {
    cx.out << "L = i2 i1 (dF1 ^ dF2), F1 = D23/D12, F2 = D34/D12 on R^4\n";
    cx.out << "homogeneous (d^i_j L = delta^i_j L, d^ij_k L = 0): " << yes_no(ex.homogeneity.homogeneous) << "\n";
    cx.out << "weighted mixed partial = " << render(ex.normalized_mixed.cancelled(), cx.style) << "\n";
    cx.out << "plain mixed partial    = " << render(ex.plain_mixed.cancelled(), cx.style) << "\n";
    cx.out << "expected               = " << render(ex.expected, cx.style) << "\n";
    cx.out << "matches: " << yes_no(ex.matches) << "\n";
  }
  return ex.matches ? kOk : kCheckFailed;
}

int pullback_cmd(const Context& cx, const Lagrangian& L, const std::vector<ParamPolynomial>& phi,
                 const std::pair<Rational, Rational>& t) {
  if (phi.size() < L.n_fields())
    throw ParseError("the map has " + std::to_string(phi.size()) + " components but L uses " +
                         std::to_string(L.n_fields()) + " fields",
                     0);
  Form T = fundamental_form(L);
  Rational theta = prolong_pullback(phi, T, t.first, t.second).front();
  Rational value = lagrangian_on_prolongation(phi, L, t.first, t.second);
  bool agree = theta == value;
  if (cx.style == Style::json) {
    cx.out << nlohmann::json{{"theta_pullback", hvc::to_string(theta)}, {"lagrangian", hvc::to_string(value)}, {"agree", agree}}.dump(2)
           << "\n";
  } else {
    cx.out << "pullback of Theta (dt1^dt2 coefficient) = " << hvc::to_string(theta) << "\n";
    cx.out << "L on the prolongation = " << hvc::to_string(value) << "\n";
    cx.out << "agree: " << yes_no(agree) << "\n";
  }
  return agree ? kOk : kCheckFailed;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact homogeneous variational calculus in two independent variables", "hvc"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string style_name;
  app.add_option("--style", style_name, "Output style: plain, latex or json (default from HVC_STYLE)")
      ->check(CLI::IsMember({"plain", "latex", "json"}));

  std::string lagrangian;
  auto with_L = [&](const char* name, const char* help) {
    auto* sub = app.add_subcommand(name, help);
    sub->add_option("L", lagrangian, "det:<a>,<b>, paper-s4 or an expression")->required();
    return sub;
  };
  auto* homogeneity = with_L("homogeneity", "Check d^i_j L = delta^i_j L and d^ik_j L = 0");
  auto* hilbert = with_L("hilbert", "Print the Hilbert forms");
  auto* el = with_L("euler-lagrange", "Print the Euler-Lagrange form");
  auto* fundamental = with_L("fundamental", "Print the fundamental form Theta");
  auto* obstructions = with_L("obstructions", "Projectability diagnostics for Theta");

  auto* verify = with_L("verify", "Run the identity suite");
  std::string suite_level = "core";
  std::uint64_t seed = SuiteOptions{}.seed;
  unsigned cases = SuiteOptions{}.cases;
  bool as_json = false;
  verify->add_option("--suite", suite_level, "core or extended")->check(CLI::IsMember({"core", "extended"}));
  verify->add_option("--seed", seed, "Seed for the randomized identities");
  verify->add_option("--cases", cases, "Number of random forms")->check(CLI::Range(1u, 100000u));
  verify->add_flag("--json", as_json, "Emit the report as JSON");

  auto* paper = app.add_subcommand("paper-example", "Reproduce the R^4 mixed partial derivative");

  auto* pullback = with_L("pullback", "Compare the pull-back of Theta with L along a prolonged map");
  std::string map_text, at_text;
  pullback->add_option("--map", map_text, "Polynomials in t1, t2 separated by ';'")->required();
  pullback->add_option("--at", at_text, "Evaluation point <t1>,<t2>")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  Context cx{out, err, style_name.empty() ? default_style() : *style_from_string(style_name)};
  try {
    if (*paper) return paper_example_cmd(cx);
    Lagrangian L = parse_lagrangian(lagrangian);
    if (*homogeneity) return homogeneity_cmd(cx, L);
    if (*hilbert) return hilbert_cmd(cx, L);
    if (*el) return euler_lagrange_cmd(cx, L);
    if (*fundamental) return fundamental_cmd(cx, L);
    if (*obstructions) return obstructions_cmd(cx, L);
    if (*verify) {
      SuiteOptions opt;
      opt.level = suite_level == "extended" ? Level::extended : Level::core;
      opt.seed = seed;
      opt.cases = cases;
      opt.expect_witness = lagrangian == "paper-s4";
      SuiteReport report = run_suite(L, lagrangian, opt);
      if (as_json || cx.style == Style::json)
        out << report.json().dump(2) << "\n";
      else
        out << report.text();
      return report.passed() ? kOk : kCheckFailed;
    }
    if (*pullback) {
      std::vector<ParamPolynomial> phi;
      std::pair<Rational, Rational> t;
      try {
        phi = parse_map(map_text);
      } catch (const ParseError& e) {
        err << "error: --map: " << e.what() << "\n";
        return kUsage;
      }
      try {
        t = parse_point(at_text);
      } catch (const ParseError& e) {
        err << "error: --at: " << e.what() << "\n";
        return kUsage;
      }
      return pullback_cmd(cx, L, phi, t);
    }
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}

}  // namespace hvc::cli
