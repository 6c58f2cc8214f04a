#include <random>

#include "doctest.h"

#include "fixtures.h"
#include "iim/cascade.h"
#include "iim/exact.h"
#include "iim/generators.h"
#include "iim/restricted.h"
#include "oracle.h"

using namespace iim;
using fixtures::set_of;

TEST_CASE("enh exact worked example") {
  const System s = fixtures::table1();
  EnhInstance inst{&s, set_of(s, {"a2", "a3"}), 1, std::nullopt};
  SolveReport r = solve_enh_exact(inst);
  CHECK(r.plan == set_of(s, {"a2"}));
  CHECK(r.protected_count == 5);
  CHECK(r.failed_with_plan == 2);
  CHECK(r.baseline_failed == 7);
  CHECK(r.method == "exact");

  inst.budget = 2;
  r = solve_enh_exact(inst);
  CHECK(r.plan == set_of(s, {"a2", "a3"}));
  CHECK(r.protected_count == 7);
  CHECK(r.failed_with_plan == 0);
}

TEST_CASE("enh exact decision threshold") {
  const System s = fixtures::table1();
  EnhInstance inst{&s, set_of(s, {"a2", "a3"}), 1, std::size_t{2}};
  CHECK(solve_enh_exact(inst).meets_threshold == true);
  inst.decision_threshold = 1;
  CHECK(solve_enh_exact(inst).meets_threshold == false);
  inst.decision_threshold.reset();
  CHECK(!solve_enh_exact(inst).meets_threshold.has_value());
}

TEST_CASE("enh exact zero budget") {
  const System s = fixtures::table1();
  const SolveReport r =
      solve_enh_exact({&s, set_of(s, {"a2", "a3"}), 0, std::nullopt});
  CHECK(r.plan.none());
  CHECK(r.protected_count == 0);
}

TEST_CASE("teh exact worked examples") {
  const System s = fixtures::table1();
  const EntitySet seed = set_of(s, {"a2", "a3"});
  SolveReport r = solve_teh_exact({&s, seed, set_of(s, {"b4"})});
  CHECK(r.plan == set_of(s, {"a3"}));

  r = solve_teh_exact({&s, seed, s.empty_set()});
  CHECK(r.plan.none());

  r = solve_teh_exact({&s, seed, set_of(s, {"a1", "b4"})});
  CHECK(r.plan.count() == 2);
  CHECK(r.plan == set_of(s, {"a1", "a3"}));
  CHECK(!final_failed(s, seed, r.plan).test(s.id("a1").index));
  CHECK(!final_failed(s, seed, r.plan).test(s.id("b4").index));
  // No single hardening keeps both.
  for (const auto& l : s.labels()) {
    const EntitySet f = final_failed(s, seed, set_of(s, {l}));
    CHECK((f.test(s.id("a1").index) || f.test(s.id("b4").index)));
  }
}

TEST_CASE("teh exact drops protect members that never fail") {
  const System s = fixtures::table1();
  const SolveReport r =
      solve_teh_exact({&s, set_of(s, {"a3"}), set_of(s, {"a1", "b4"})});
  CHECK(r.plan == set_of(s, {"a3"}));
  REQUIRE(r.notes.size() == 1);
  CHECK(r.notes[0] == "protect-dropped:a1");
}

TEST_CASE("search cap") {
  const System s = gen_random(IdrClass::kGeneral, 40, 3);
  EntitySet seed = s.empty_set();
  for (std::size_t i = 0; i < s.size(); i += 4) seed.set(i);
  REQUIRE(kill_set(s, seed).count() >= 12);
  CHECK_THROWS_AS(solve_enh_exact({&s, seed, 5, std::nullopt}, 100),
                  SearchSpaceExceeded);
  CHECK_THROWS_AS(solve_teh_exact({&s, seed, kill_set(s, seed)}, 100),
                  SearchSpaceExceeded);
}

TEST_CASE("binomial") {
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(10, 0) == 1);
  CHECK(binomial(3, 4) == 0);
  CHECK(binomial(60, 30) == 118264581564861424ULL);
  CHECK(binomial(200, 100) == UINT64_MAX);
}

TEST_CASE("k most vulnerable") {
  const System s = fixtures::table1();
  // a1, a2 and b2 each kill five entities; the label order picks a1.
  VulnerableSet v = k_most_vulnerable(s, 1);
  CHECK(v.entities == set_of(s, {"a1"}));
  CHECK(v.killed == 5);
  CHECK(!v.greedy_fallback);
  const auto model = oracle::from_system(s);
  for (const auto& l : s.labels()) {
    CHECK(oracle::final_failed(model, {l}).size() <= 5);
  }
  v = k_most_vulnerable(s, s.size());
  CHECK(v.entities == s.full_set());
  CHECK(v.killed == 7);
}

TEST_CASE("k most vulnerable greedy fallback never beats exhaustive") {
  for (std::uint64_t seed = 1; seed <= 30; ++seed) {
    const System s = gen_random(IdrClass::kGeneral, 10, seed);
    const VulnerableSet exact = k_most_vulnerable(s, 2);
    const VulnerableSet greedy = k_most_vulnerable(s, 2, 1);
    CHECK(greedy.greedy_fallback);
    CHECK(greedy.entities.count() == 2);
    CHECK(greedy.killed == kill_set(s, greedy.entities).count());
    CHECK(greedy.killed <= exact.killed);
    const auto model = oracle::from_system(s);
    std::size_t best = 0;
    oracle::subsets(s.labels(), 2, [&](const oracle::Labels& pair) {
      best = std::max(best, oracle::final_failed(model, pair).size());
    });
    CHECK(exact.killed == best);
  }
}

TEST_CASE("exact solvers agree with brute-force enumeration") {
  static const IdrClass classes[] = {IdrClass::kCaseI, IdrClass::kCaseII,
                                     IdrClass::kGeneral};
  for (std::uint64_t i = 0; i < 90; ++i) {
    std::mt19937_64 rng(1000 + i);
    const System s = gen_random(classes[i % 3], 4 + i % 7, 1000 + i);
    const auto model = oracle::from_system(s);
    const oracle::Labels seed = oracle::pick(s.labels(), 1 + rng() % 3, rng);
    const EntitySet seed_set = oracle::to_set(s, seed);
    const std::size_t k = 1 + rng() % 3;
    const SolveReport enh = solve_enh_exact({&s, seed_set, k, std::nullopt});
    CHECK(enh.protected_count == oracle::best_enh(model, seed, k));
    CHECK(enh.plan.count() <= std::max(k, seed.size()));
    CHECK(enh.failed_with_plan ==
          oracle::final_failed(model, seed, oracle::to_labels(s, enh.plan))
              .size());

    const oracle::Labels killed = oracle::final_failed(model, seed);
    const oracle::Labels protect = oracle::pick(
        std::vector<std::string>(killed.begin(), killed.end()),
        1 + rng() % 3, rng);
    const SolveReport teh =
        solve_teh_exact({&s, seed_set, oracle::to_set(s, protect)});
    CHECK(teh.plan.count() == oracle::best_teh(model, seed, protect));
    CHECK(teh.plan.count() <= seed.size());
    CHECK(oracle::keeps(model, seed, oracle::to_labels(s, teh.plan), protect));
  }
}
