#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "hvc/errors.hpp"
#include "support.hpp"

using namespace hvc;
using hvc::test::mi;

TEST_CASE("multiplicity counts distinct rearrangements") {
  CHECK(multiplicity(mi({})) == 1);
  CHECK(multiplicity(mi({1, 2})) == 2);
  CHECK(multiplicity(mi({1, 1, 2})) == 3);
  CHECK(multiplicity(mi({1, 1, 2, 2})) == 6);
}

TEST_CASE("multiplicity agrees with brute-force permutation count") {
  for (unsigned n = 0; n <= 6; ++n) {
    for (auto& I : enumerate_exact(n)) {
      auto e = I.entries();
      std::uint64_t perms = 0;
      do ++perms;
      while (std::next_permutation(e.begin(), e.end()));
      CHECK(multiplicity(I) == perms);
      std::uint64_t fact = 1;
      for (unsigned k = 2; k <= n; ++k) fact *= k;
      CHECK(factorial_weight(I) * multiplicity(I) == fact);
    }
  }
}

TEST_CASE("insert keeps entries sorted") {
  CHECK(insert(mi({1, 2}), 1) == mi({1, 1, 2}));
  CHECK(insert(mi({}), 2) == mi({2}));
  CHECK(insert(mi({2, 2}), 1) == mi({1, 2, 2}));
  CHECK(insert(mi({2, 2}), 1).entries() == std::vector<int>{1, 2, 2});
}

TEST_CASE("remove signals absence as a value") {
  CHECK(remove(mi({1, 1, 2}), 1) == mi({1, 2}));
  CHECK_FALSE(remove(mi({2}), 1).has_value());
  REQUIRE(remove(mi({1}), 1).has_value());
  CHECK(remove(mi({1}), 1)->empty());
}

TEST_CASE("enumerate lists canonical order with the triangular count") {
  CHECK(enumerate(0) == std::vector<MultiIndex>{mi({})});
  CHECK(enumerate(1) == std::vector<MultiIndex>{mi({}), mi({1}), mi({2})});
  CHECK(enumerate(2) == std::vector<MultiIndex>{mi({}), mi({1}), mi({2}), mi({1, 1}), mi({1, 2}), mi({2, 2})});
  for (unsigned k = 0; k <= 8; ++k) {
    auto all = enumerate(k);
    CHECK(all.size() == (k + 1) * (k + 2) / 2);
    CHECK(std::is_sorted(all.begin(), all.end()));
    CHECK(enumerate_exact(k).size() == k + 1);
  }
}

TEST_CASE("from_entries sorts and rejects other directions") {
  CHECK(mi({2, 1}) == mi({1, 2}));
  CHECK_THROWS(MultiIndex::from_entries({3}));
}

TEST_CASE("difference and join are inverse") {
  for (auto& I : enumerate(4))
    for (auto& J : enumerate(3)) {
      auto K = join(I, J);
      REQUIRE(difference(K, J).has_value());
      CHECK(*difference(K, J) == I);
    }
  CHECK_FALSE(difference(mi({1, 1}), mi({2})).has_value());
}

TEST_CASE("jet coordinates parse, print and pack keys monotonically") {
  CHECK(parse_jet_coord("u1_21") == u(1, {1, 2}));
  CHECK(parse_jet_coord("u3").order() == 0);
  CHECK(u(2, {1, 1, 2}).str() == "u2_112");
  CHECK(u(3, {1, 2}).latex() == "u^{3}_{12}");
  CHECK_THROWS_AS(parse_jet_coord("u1_3"), ParseError);
  CHECK_THROWS_AS(parse_jet_coord("v1"), ParseError);

  std::vector<JetCoord> xs;
  for (unsigned a = 1; a <= 3; ++a)
    for (auto& I : enumerate(4)) xs.emplace_back(a, I);
  for (std::size_t k = 0; k + 1 < xs.size(); ++k) CHECK(xs[k] < xs[k + 1]);
  for (auto& x : xs) CHECK(JetCoord::from_key(x.key()) == x);
}
