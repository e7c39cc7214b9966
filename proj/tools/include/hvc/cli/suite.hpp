#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "hvc/variational.hpp"

namespace hvc::cli {

enum class Status { pass, fail, skipped };
std::string to_string(Status s);

struct CheckRecord {
  std::string name;
  std::string anchor;  // the identity being checked
  Status status = Status::pass;
  double ms = 0;
  std::string detail;  // counterexample or summary
};

enum class Level { core, extended };

struct SuiteOptions {
  Level level = Level::core;
  std::uint64_t seed = 20261016;
  unsigned cases = 100;
  int height = 9;
  // Require d^111_1 Theta != 0, as claimed for the R^4 fixture.
  bool expect_witness = false;
};

struct SuiteReport {
  std::string level;
  std::string lagrangian;
  bool homogeneous = false;
  std::uint64_t seed = 0;
  double setup_ms = 0;  // computing the forms shared by all checks
  std::vector<CheckRecord> checks;

  bool passed() const;
  nlohmann::json json() const;
  std::string text() const;
};

SuiteReport run_suite(const Lagrangian& L, const std::string& label, const SuiteOptions& options);

// Randomized operator identities.  Returns the first failure, if any.
struct RandomFormSpec {
  unsigned max_degree = 3;
  unsigned max_order = 3;
  unsigned max_fields = 3;
  int height = 9;
};
Form random_form(std::mt19937_64& rng, const RandomFormSpec& spec);
// How S^J = S^{j1..js} acts in d^J_j S^i = S^i d^J_j - delta^i_j S^J: as the
// derivation extension of the iterated tensor, or as the composition of the
// single S^j.  The two agree on 1-forms.
enum class TensorAction { derivation, composition };
std::optional<std::string> commutation_identities(const Form& w, TensorAction action = TensorAction::derivation);
CheckRecord commutation_suite(std::uint64_t seed, unsigned cases, int height,
                              TensorAction action = TensorAction::derivation);

struct PaperExample {
  Lagrangian lagrangian;
  HomogeneityReport homogeneity;
  Scalar plain_mixed;       // d2L/du1_11 du2_12 - d2L/du2_11 du1_12
  Scalar normalized_mixed;  // the same with factorial-weighted derivatives
  Scalar expected;          // 4 u2_2 u3_2 D34 / D12^3
  bool matches = false;
};
PaperExample paper_example();

}  // namespace hvc::cli
