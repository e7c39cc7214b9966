#include "hvc/cli/suite.hpp"

#include <chrono>
#include <functional>
#include <map>
#include <sstream>


namespace hvc::cli {

namespace {

using Clock = std::chrono::steady_clock;

MultiIndex mi(std::initializer_list<int> e) { return MultiIndex::from_entries(std::vector<int>(e)); }
int kron(int a, int b) { return a == b ? 1 : 0; }
bool same(const Form& a, const Form& b) { return (a - b).is_zero(); }

std::string clip(std::string s, std::size_t n = 600) {
  if (s.size() > n) s = s.substr(0, n) + " ...";
  return s;
}

Form dlie(const MultiIndex& I, int j, const Form& w) { return delta_ops(I, j, w, FieldMode::lie); }
Form icon(const MultiIndex& I, int j, const Form& w) { return delta_ops(I, j, w, FieldMode::contract); }

// A check passes with an empty description; a non-empty one describes the
// first failing instance.  info() passes with a summary attached.
struct Outcome {
  Outcome(std::string failure) : ok(failure.empty()), detail(std::move(failure)) {}  // NOLINT
  static Outcome info(std::string summary) {
    Outcome o{""};
    o.detail = std::move(summary);
    return o;
  }
  bool ok;
  std::string detail;
};
using Check = std::function<Outcome()>;

struct Entry {
  std::string name;
  std::string anchor;
  bool needs_homogeneity;
  Check run;
};

std::string first_nonzero(const std::vector<NamedForm>& forms) {
  for (auto& f : forms)
    if (!f.form.is_zero()) return f.name + " = " + clip(f.form.str());
  return {};
}

std::string nonzero_names(const std::vector<NamedForm>& forms) {
  std::string s;
  for (auto& f : forms)
    if (!f.form.is_zero()) s += (s.empty() ? "" : ", ") + f.name;
  return s;
}

// Evaluates a nonzero form at a pseudo-random rational point to confirm the
// exact verdict numerically.
bool nonzero_at_random_point(const Form& w, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int attempt = 0; attempt < 8; ++attempt) {
    std::map<std::uint32_t, Rational> values;
    auto value = [&](const JetCoord& x) {
      auto [it, inserted] = values.try_emplace(x.key());
      if (inserted) it->second = ratio(static_cast<long>(rng() % 19) - 9, static_cast<long>(rng() % 7) + 1);
      return it->second;
    };
    try {
      for (auto& [m, c] : w.terms())
        if (c.evaluate(value) != 0) return true;
    } catch (const std::domain_error&) {
      continue;  // hit a pole; draw another point
    }
  }
  return false;
}

}  // namespace

std::string to_string(Status s) {
  switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    default: return "skipped";
  }
}

bool SuiteReport::passed() const {
  for (auto& c : checks)
    if (c.status == Status::fail) return false;
  return true;
}

nlohmann::json SuiteReport::json() const {
  nlohmann::json j;
  j["level"] = level;
  j["lagrangian"] = lagrangian;
  j["homogeneous"] = homogeneous;
  j["seed"] = seed;
  j["setup_ms"] = setup_ms;
  j["status"] = passed() ? "pass" : "fail";
  j["checks"] = nlohmann::json::array();
  for (auto& c : checks)
    j["checks"].push_back({{"name", c.name}, {"anchor", c.anchor}, {"status", to_string(c.status)}, {"ms", c.ms}, {"detail", c.detail}});
  return j;
}

std::string SuiteReport::text() const {
  std::ostringstream os;
  os << "suite " << level << " for " << lagrangian << (homogeneous ? " (homogeneous)" : " (not homogeneous)")
     << ", seed " << seed << ", setup " << static_cast<long>(setup_ms) << " ms\n";
  for (auto& c : checks) {
    os << "[" << to_string(c.status) << "] " << c.name << " (" << static_cast<long>(c.ms) << " ms)";
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
  }
  os << (passed() ? "all checks passed" : "some checks failed") << "\n";
  return os.str();
}

// ---------------------------------------------------------- random forms

Form random_form(std::mt19937_64& rng, const RandomFormSpec& spec) {
  auto below = [&rng](unsigned n) { return static_cast<unsigned>(rng() % n); };
  unsigned n = 1 + below(spec.max_fields);
  auto coordinate = [&] {
    unsigned order = below(spec.max_order + 1);
    unsigned twos = below(order + 1);
    return JetCoord(1 + below(n), MultiIndex(order - twos, twos));
  };
  auto coefficient = [&] {
    Polynomial p;
    unsigned terms = 1 + below(3);
    for (unsigned t = 0; t < terms; ++t) {
      long c = static_cast<long>(below(2 * spec.height)) - spec.height;
      if (c >= 0) ++c;
      Polynomial m{Rational(c)};
      unsigned factors = below(3);
      for (unsigned f = 0; f < factors; ++f) m *= Polynomial::variable(coordinate());
      p += m;
    }
    return Scalar(p);
  };
  unsigned degree = below(spec.max_degree + 1);
  Form w(degree);
  unsigned terms = 1 + below(3);
  for (unsigned t = 0; t < terms; ++t) {
    std::vector<JetCoord> covectors;
    for (unsigned k = 0; k < degree; ++k) covectors.push_back(coordinate());
    w += Form::basis(covectors, coefficient());
  }
  return w;
}

std::optional<std::string> commutation_identities(const Form& w, TensorAction action) {
  auto S = [action](const MultiIndex& J, const Form& f) {
    return action == TensorAction::derivation ? s_derivation(J, f) : s_iterated(J, f);
  };
  const long r = w.degree();
  auto fail = [](const std::string& what) { return std::optional<std::string>(what); };
  for (int i = 1; i <= 2; ++i) {
    for (int j = 1; j <= 2; ++j) {
      std::string ij = " (i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
      if (!same(i_total(i, d_total(j, w)), d_total(j, i_total(i, w)))) return fail("i_i d_j = d_j i_i" + ij);
      if (!same(d_total(j, s_vertical(i, w)), s_vertical(i, d_total(j, w)) - w.scaled(Rational(r * kron(i, j)))))
        return fail("d_j S^i = S^i d_j - r delta^i_j" + ij);
      if (!same(s_vertical(i, s_vertical(j, w)), s_vertical(j, s_vertical(i, w)))) return fail("S^i S^j = S^j S^i" + ij);
      if (!same(d_total(i, d_total(j, w)), d_total(j, d_total(i, w)))) return fail("d_i d_j = d_j d_i" + ij);
      for (unsigned s = 1; s <= 3; ++s) {
        for (auto& J : enumerate_exact(s)) {
          std::string tag = " (J=" + J.digits() + ", i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
          if (!same(dlie(J, j, s_vertical(i, w)), s_vertical(i, dlie(J, j, w)) - S(J, w).scaled(Rational(kron(i, j)))))
            return fail("d^J_j S^i = S^i d^J_j - delta^i_j S^J" + tag);
          if (!same(icon(J, j, s_vertical(i, w)), s_vertical(i, icon(J, j, w)) + icon(insert(J, i), j, w)))
            return fail("i^J_j S^i = S^i i^J_j + i^{iJ}_j" + tag);
        }
      }
      for (unsigned s = 1; s <= 3; ++s) {
        for (auto& I : enumerate_exact(s)) {
          std::string tag = " (I=" + I.digits() + ", i=" + std::to_string(i) + ", j=" + std::to_string(j) + ")";
          Form rhs = d_total(j, dlie(I, i, w));
          if (auto lower = remove(I, j))
            rhs += (lower->empty() ? d_total(i, w) : dlie(*lower, i, w)).scaled(Rational(I.count(j)));
          if (!same(dlie(I, i, d_total(j, w)), rhs)) return fail("d^I_i d_j = d_j d^I_i + sum_r delta^{i_r}_j d^{I-i_r}_i" + tag);
        }
      }
    }
  }
  return std::nullopt;
}

CheckRecord commutation_suite(std::uint64_t seed, unsigned cases, int height, TensorAction action) {
  CheckRecord rec{action == TensorAction::derivation ? "operator commutation identities"
                                                     : "commutation identities, S^J as composition",
                  "i_i d_j = d_j i_i; d_j S^i = S^i d_j - r delta; d^J_j S^i = S^i d^J_j - delta S^J; "
                  "i^J_j S^i = S^i i^J_j + i^{iJ}_j; d^I_i d_j = d_j d^I_i + sum delta d^{I-r}_i; S, d commute",
                  Status::pass, 0, {}};
  auto t0 = Clock::now();
  std::mt19937_64 rng(seed);
  RandomFormSpec spec;
  spec.height = height;
  unsigned failures = 0;
  std::map<unsigned, unsigned> failing_degrees;
  std::string first;
  for (unsigned c = 0; c < cases; ++c) {
    Form w = random_form(rng, spec);
    if (auto failure = commutation_identities(w, action)) {
      if (failures++ == 0) first = "case " + std::to_string(c) + ": " + *failure + " on " + clip(w.str());
      ++failing_degrees[w.degree()];
    }
  }
  std::string setup = std::to_string(cases) + " random forms, seed " + std::to_string(seed) + ", height " +
                      std::to_string(height);
  if (failures == 0) {
    rec.detail = setup;
  } else {
    rec.status = Status::fail;
    std::string by_degree;
    for (auto [deg, n] : failing_degrees)
      by_degree += (by_degree.empty() ? "" : ", ") + std::to_string(n) + " of degree " + std::to_string(deg);
    rec.detail = std::to_string(failures) + "/" + std::to_string(cases) + " forms fail (" + by_degree + "); first " + first;
  }
  rec.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  return rec;
}

// ---------------------------------------------------------------- suite

SuiteReport run_suite(const Lagrangian& L, const std::string& label, const SuiteOptions& options) {
  SuiteReport report;
  report.level = options.level == Level::core ? "core" : "extended";
  report.lagrangian = label;
  report.seed = options.seed;

  auto t0 = Clock::now();
  Analysis a(L);
  report.setup_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
  report.homogeneous = a.homogeneity.homogeneous;
  const Scalar& f = L.value();
  std::optional<ProjectabilityReport> proj;
  auto projection = [&]() -> const ProjectabilityReport& {
    if (!proj) proj = projectability(a);
    return *proj;
  };

  std::vector<Entry> entries;
  entries.push_back({"half trace of the Hilbert forms", "L = 1/2 i_i theta^i", true, [&]() -> std::string {
                       Form lhs = (i_total(1, a.theta[0]) + i_total(2, a.theta[1])).scaled(Rational(1, 2));
                       return same(lhs, Form(f)) ? "" : "1/2 i_i theta^i - L = " + clip((lhs - Form(f)).str());
                     }});
  entries.push_back({"fundamental contractions of the Hilbert forms", "i^I_l theta^m = 0 for 1 <= |I| <= 3", true,
                     [&]() -> std::string {
                       for (unsigned s = 1; s <= 3; ++s)
                         for (auto& I : enumerate_exact(s))
                           for (int l = 1; l <= 2; ++l)
                             for (int m = 1; m <= 2; ++m)
                               if (Form c = icon(I, l, a.theta[m - 1]); !c.is_zero())
                                 return "i^" + I.digits() + "_" + std::to_string(l) + " theta^" + std::to_string(m) +
                                        " = " + clip(c.str());
                       return "";
                     }});
  entries.push_back({"total contractions of the Hilbert forms", "i_l theta^m = delta^m_l L", true, [&]() -> std::string {
                       for (int l = 1; l <= 2; ++l)
                         for (int m = 1; m <= 2; ++m)
                           if (!same(i_total(l, a.theta[m - 1]), Form(f.scaled(Rational(kron(l, m))))))
                             return "i_" + std::to_string(l) + " theta^" + std::to_string(m);
                       return "";
                     }});
  entries.push_back({"higher fundamental Lie derivatives of the Hilbert forms", "d^{ij}_l theta^m = d^{ijk}_l theta^m = 0",
                     true, [&]() -> std::string {
                       for (unsigned s = 2; s <= 3; ++s)
                         for (auto& I : enumerate_exact(s))
                           for (int l = 1; l <= 2; ++l)
                             for (int m = 1; m <= 2; ++m)
                               if (Form c = dlie(I, l, a.theta[m - 1]); !c.is_zero())
                                 return "d^" + I.digits() + "_" + std::to_string(l) + " theta^" + std::to_string(m) +
                                        " = " + clip(c.str());
                       return "";
                     }});
  entries.push_back({"first fundamental Lie derivatives of the Hilbert forms",
                     "d^i_l theta^m = delta^i_l theta^m - delta^m_l theta^i", true, [&]() -> std::string {
                       for (int i = 1; i <= 2; ++i)
                         for (int l = 1; l <= 2; ++l)
                           for (int m = 1; m <= 2; ++m) {
                             Form rhs = a.theta[m - 1].scaled(Rational(kron(i, l))) - a.theta[i - 1].scaled(Rational(kron(m, l)));
                             if (!same(dlie(mi({i}), l, a.theta[m - 1]), rhs))
                               return "i=" + std::to_string(i) + ", l=" + std::to_string(l) + ", m=" + std::to_string(m);
                           }
                       return "";
                     }});
  entries.push_back({"vertical endomorphisms on the Hilbert forms", "S^i theta^m = 1/2 S^{im} dL = S^m theta^i", false,
                     [&]() -> std::string {
                       for (int i = 1; i <= 2; ++i)
                         for (int m = 1; m <= 2; ++m) {
                           Form lhs = s_vertical(i, a.theta[m - 1]);
                           if (!same(lhs, s_iterated(mi({i, m}), a.dL).scaled(Rational(1, 2))) ||
                               !same(lhs, s_vertical(m, a.theta[i - 1])))
                             return "i=" + std::to_string(i) + ", m=" + std::to_string(m);
                         }
                       return "";
                     }});
  entries.push_back({"trace identity for the Hilbert forms", "S^i d_i theta^m - S^m d_i theta^i = theta^m", false,
                     [&]() -> std::string {
                       Form div = d_total(1, a.theta[0]) + d_total(2, a.theta[1]);
                       for (int m = 1; m <= 2; ++m) {
                         const Form& t = a.theta[m - 1];
                         Form lhs = s_vertical(1, d_total(1, t)) + s_vertical(2, d_total(2, t)) - s_vertical(m, div);
                         if (!same(lhs, t)) return "m=" + std::to_string(m) + ": defect " + clip((lhs - t).str());
                       }
                       return "";
                     }});
  entries.push_back({"fourth vertical contractions of dtheta", "S^{ijkl} dtheta^m = 0", false, [&]() -> std::string {
                       for (auto& I : enumerate_exact(4))
                         for (int m = 1; m <= 2; ++m)
                           if (Form c = s_iterated(I, a.dtheta[m - 1]); !c.is_zero())
                             return "S^" + I.digits() + " dtheta^" + std::to_string(m) + " = " + clip(c.str());
                       return "";
                     }});
  entries.push_back({"Hilbert forms from the fundamental form", "i_2 Theta = theta^1, i_1 Theta = -theta^2", true,
                     [&]() -> std::string {
                       if (!same(i_total(2, a.Theta), a.theta[0])) return "i_2 Theta - theta^1 = " + clip((i_total(2, a.Theta) - a.theta[0]).str());
                       if (!same(i_total(1, a.Theta), -a.theta[1])) return "i_1 Theta + theta^2 = " + clip((i_total(1, a.Theta) + a.theta[1]).str());
                       return "";
                     }});
  entries.push_back({"double contraction of the fundamental form", "i_1 i_2 Theta = L", true, [&]() -> std::string {
                       Form lhs = i_total(1, i_total(2, a.Theta));
                       return same(lhs, Form(f)) ? "" : "i_1 i_2 Theta - L = " + clip((lhs - Form(f)).str());
                     }});
  entries.push_back({"horizontality and frame projectability of Theta",
                     "S^{pqr} Theta = 0; d/du^a_{lpqrs} Theta = 0; covector order <= 2; coefficient order <= 4", false,
                     [&]() -> std::string {
                       auto& p = projection();
                       if (auto s = first_nonzero(p.horizontality_defects); !s.empty()) return s;
                       if (auto s = first_nonzero(p.frame_projectable_defects); !s.empty()) return s;
                       if (p.theta_profile.covector_order > 2 || p.theta_profile.coefficient_order > 4)
                         return "order profile (" + std::to_string(p.theta_profile.covector_order) + ", " +
                                std::to_string(p.theta_profile.coefficient_order) + ")";
                       return "";
                     }});
  entries.push_back({"closedness of Theta iff null Lagrangian", "dTheta = 0 <=> epsilon = 0", true, [&]() -> std::string {
                       auto n = nullity_closedness_check(a);
                       return n.consistent ? "" : n.diagnostic;
                     }});
  entries.push_back({"Euler-Lagrange form in coordinates",
                     "dL - d_i theta^i = (dL/du^a - d_i dL/du^a_i + sum_{i<=j} d_ij dL/du^a_ij) du^a", true,
                     [&]() -> std::string {
                       Form c = euler_lagrange_coordinates(L);
                       return same(a.epsilon, c) ? "" : "difference " + clip((a.epsilon - c).str());
                     }});

  if (options.level == Level::extended) {
    entries.push_back({"Q2 and P1 exchange identities on dtheta",
                       "(Q2^1 d_2 - d_2 P1^1) dtheta^m = 0; (Q2^2 d_1 - d_1 P1^2) dtheta^m = 0; "
                       "(Q2^1 d_1 + d_2 P1^2) dtheta^m = dtheta^m; (Q2^2 d_2 + d_1 P1^1) dtheta^m = dtheta^m",
                       false, [&]() -> std::string {
                         for (int m = 1; m <= 2; ++m) {
                           const Form& w = a.dtheta[m - 1];
                           std::string tag = " on dtheta^" + std::to_string(m);
                           if (!same(q2_apply(1, d_total(2, w)), d_total(2, p1_apply(1, w)))) return "first identity" + tag;
                           if (!same(q2_apply(2, d_total(1, w)), d_total(1, p1_apply(2, w)))) return "second identity" + tag;
                           if (!same(q2_apply(1, d_total(1, w)) + d_total(2, p1_apply(2, w)), w)) return "third identity" + tag;
                           if (!same(q2_apply(2, d_total(2, w)) + d_total(1, p1_apply(1, w)), w)) return "fourth identity" + tag;
                         }
                         return "";
                       }});
    entries.push_back({"Q1 reproduces dTheta", "Q1^i d_i dTheta = dTheta", false, [&]() -> std::string {
                         Form lhs = q1_apply(1, d_total(1, a.dTheta)) + q1_apply(2, d_total(2, a.dTheta));
                         return same(lhs, a.dTheta) ? "" : "defect " + clip((lhs - a.dTheta).str());
                       }});
    entries.push_back({"third-order fundamental Lie derivatives of Theta",
                       "d^{pqr}_s Theta = 5/96 (...) dtheta^1 + 1/96 (...) - 5/96 (...) dtheta^2 - 1/96 (...)", true,
                       [&]() -> std::string { return first_nonzero(projection().closed_form_mismatches); }});
    entries.push_back({"mixed Hessian obstruction form", "sum d2L/du^b_11 du^a_12 du^b ^ du^a (weighted derivatives)",
                       false, [&]() {
                         Scalar c12 = projection().mixed_hessian_form.coefficient({u(1), u(2)});
                         return Outcome::info("du1^du2 component " + clip(c12.cancelled().str()));
                       }});
    entries.push_back({"contact projectability obstructions", "i^I_l Theta, d^I_l Theta for 1 <= |I| <= 4", false,
                       [&]() {
                         std::string names = nonzero_names(projection().contact_obstructions);
                         return Outcome::info(names.empty() ? "all vanish" : "nonzero: " + names);
                       }});
    if (options.expect_witness) {
      entries.push_back({"non-projectability witness", "d^111_1 Theta = 3/16 S^112 dtheta^1 - 5/24 S^111 dtheta^2 != 0", true,
                         [&]() -> Outcome {
                           Form w = dlie(mi({1, 1, 1}), 1, a.Theta);
                           if (w.is_zero()) {
                             Form s1 = s_iterated(mi({1, 1, 2}), a.dtheta[0]);
                             Form s2 = s_iterated(mi({1, 1, 1}), a.dtheta[1]);
                             return std::string("d^111_1 Theta vanishes identically (S^112 dtheta^1 ") +
                                    (s1.is_zero() ? "= 0" : "!= 0") + ", S^111 dtheta^2 " + (s2.is_zero() ? "= 0" : "!= 0") + ")";
                           }
                           if (!nonzero_at_random_point(w, options.seed)) return std::string("no nonzero value found at sample points");
                           return Outcome::info("d^111_1 Theta certified nonzero");
                         }});
    }
  }

  report.checks.push_back(commutation_suite(options.seed, options.cases, options.height));
  for (auto& e : entries) {
    CheckRecord rec{e.name, e.anchor, Status::pass, 0, {}};
    if (e.needs_homogeneity && !a.homogeneity.homogeneous) {
      rec.status = Status::skipped;
      rec.detail = "requires a homogeneous Lagrangian";
    } else {
      auto t = Clock::now();
      Outcome o = e.run();
      rec.ms = std::chrono::duration<double, std::milli>(Clock::now() - t).count();
      rec.status = o.ok ? Status::pass : Status::fail;
      rec.detail = std::move(o.detail);
    }
    report.checks.push_back(std::move(rec));
  }
  return report;
}

// ------------------------------------------------ R^4 mixed partial example

PaperExample paper_example() {
  Lagrangian L = section4_fixture();
  const Scalar& f = L.value();
  auto c = [](unsigned a, std::initializer_list<int> e) { return Scalar::coord(u(a, e)); };
  Scalar D12 = c(1, {1}) * c(2, {2}) - c(1, {2}) * c(2, {1});
  Scalar D34 = c(3, {1}) * c(4, {2}) - c(3, {2}) * c(4, {1});
  PaperExample ex{L, check_homogeneity(L), {}, {}, {}, false};
  ex.plain_mixed = f.partial(u(1, {1, 1})).partial(u(2, {1, 2})) - f.partial(u(2, {1, 1})).partial(u(1, {1, 2}));
  ex.normalized_mixed = normalized_partial(normalized_partial(f, u(1, {1, 1})), u(2, {1, 2})) -
                        normalized_partial(normalized_partial(f, u(2, {1, 1})), u(1, {1, 2}));
  ex.expected = Scalar(4) * c(2, {2}) * c(3, {2}) * D34 / D12.pow(3);
  ex.matches = scalar_equals(ex.normalized_mixed, ex.expected) && ex.homogeneity.homogeneous;
  return ex;
}

}  // namespace hvc::cli
