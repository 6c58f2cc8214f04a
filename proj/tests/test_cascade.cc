#include <random>

#include "doctest.h"

#include "fixtures.h"
#include "iim/cascade.h"
#include "iim/generators.h"
#include "iim/restricted.h"
#include "oracle.h"

using namespace iim;
using fixtures::set_of;

TEST_CASE("table 1 cascade step by step") {
  const System s = fixtures::table1();
  const auto trace =
      cascade(s, set_of(s, {"a2", "a3"}), s.empty_set());
  REQUIRE(trace.fixed_point_time() == 3);
  CHECK(trace.steps[0] == set_of(s, {"a2", "a3"}));
  CHECK(trace.steps[1] == set_of(s, {"a2", "a3", "b2", "b3", "b4"}));
  CHECK(trace.steps[2] == set_of(s, {"a1", "a2", "a3", "b2", "b3", "b4"}));
  CHECK(trace.steps[3] == s.full_set());
  const std::vector<int> times = trace.first_failure_times();
  CHECK(times == std::vector<int>{2, 0, 0, 3, 1, 1, 1});
  CHECK(trace.at(10) == s.full_set());
}

TEST_CASE("table 1 hardened cascades") {
  const System s = fixtures::table1();
  const EntitySet seed = set_of(s, {"a2", "a3"});
  CHECK(final_failed(s, seed, set_of(s, {"a1"})) ==
        set_of(s, {"a2", "a3", "b2", "b3", "b4"}));
  CHECK(final_failed(s, seed, set_of(s, {"a2"})) == set_of(s, {"a3", "b4"}));
  CHECK(final_failed(s, seed, set_of(s, {"a3"})) ==
        set_of(s, {"a1", "a2", "b1", "b2", "b3"}));
  CHECK(cascade(s, seed, set_of(s, {"a2"})).final_failed() ==
        set_of(s, {"a3", "b4"}));
}

TEST_CASE("no initial failure") {
  const System s = fixtures::table1();
  const auto trace = cascade(s, s.empty_set(), set_of(s, {"b1"}));
  CHECK(trace.fixed_point_time() == 0);
  CHECK(trace.steps[0].none());
  CHECK(kill_set(s, s.empty_set()).none());
}

TEST_CASE("kill sets and protection sets on table 1") {
  const System s = fixtures::table1();
  const EntitySet seed = set_of(s, {"a2", "a3"});
  CHECK(kill_set(s, seed) == s.full_set());
  CHECK(kill_set(s, set_of(s, {"b1"})) == set_of(s, {"b1"}));
  CHECK(protection_set(s, s.id("a1"), seed) == set_of(s, {"a1", "b1"}));
  CHECK(protection_set(s, s.id("a2"), seed) ==
        set_of(s, {"a1", "a2", "b1", "b2", "b3"}));
  CHECK(protection_set(s, s.id("a3"), seed) == set_of(s, {"a3", "b4"}));
  CHECK(protection_set(s, s.id("b1"), seed) == set_of(s, {"b1"}));
  CHECK(protection_set(s, s.id("b2"), seed) == set_of(s, {"a1", "b1", "b2"}));
  // Not killed: nothing to protect.
  CHECK(protection_set(s, s.id("a1"), set_of(s, {"a3"})).none());
}

TEST_CASE("prune_system") {
  const System s = fixtures::table1();
  SUBCASE("everything fails") {
    const auto r = prune_system(s, set_of(s, {"a2", "a3"}));
    CHECK(r.never_failing.none());
    CHECK(format_system(r.system) == format_system(s));
  }
  SUBCASE("nothing fails") {
    const auto r = prune_system(s, s.empty_set());
    CHECK(r.never_failing == s.full_set());
    CHECK(r.system.idrs().empty());
    CHECK(r.system.size() == s.size());
  }
  SUBCASE("seed a3") {
    const auto r = prune_system(s, set_of(s, {"a3"}));
    CHECK(r.never_failing == set_of(s, {"a1", "a2", "b1", "b2", "b3"}));
    REQUIRE(r.system.idrs().size() == 2);
    CHECK(format_idr(r.system, r.system.idrs()[0]) == "a3 <- b4");
    CHECK(format_idr(r.system, r.system.idrs()[1]) == "b4 <- a3");
  }
}

TEST_CASE("remove_entities drops vacuous conjuncts to a fixpoint") {
  const System s = parse_system("x <- y z + w\ny <- q\nz <- p\n");
  const auto r = remove_entities(s, set_of(s, {"q", "p"}));
  // y and z lose their only minterm member, so they can't fail either, and
  // x's first minterm becomes empty.
  CHECK(r.never_failing == set_of(s, {"q", "p", "y", "z", "x"}));
  CHECK(r.system.idrs().empty());
}

namespace {

struct RandomCase {
  System system;
  EntitySet seed;
  EntitySet hardened;
};

RandomCase random_case(std::uint64_t i) {
  static const IdrClass classes[] = {IdrClass::kCaseI, IdrClass::kCaseII,
                                     IdrClass::kGeneral};
  std::mt19937_64 rng(i);
  const std::size_t n = 2 + i % 14;
  RandomCase c{gen_random(classes[i % 3], n, i), {}, {}};
  c.seed = oracle::to_set(c.system,
                          oracle::pick(c.system.labels(), 1 + rng() % 3, rng));
  c.hardened = oracle::to_set(c.system,
                              oracle::pick(c.system.labels(), rng() % 3, rng));
  return c;
}

}  // namespace

TEST_CASE("cascade agrees with the reference semantics") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const RandomCase c = random_case(i);
    const auto model = oracle::from_system(c.system);
    const auto ref = oracle::steps(model, oracle::to_labels(c.system, c.seed),
                                   oracle::to_labels(c.system, c.hardened));
    const auto trace = cascade(c.system, c.seed, c.hardened);
    REQUIRE(trace.steps.size() == ref.size());
    for (std::size_t t = 0; t < ref.size(); ++t) {
      CHECK(oracle::to_labels(c.system, trace.steps[t]) == ref[t]);
    }
    CHECK(final_failed(c.system, c.seed, c.hardened) == trace.final_failed());
  }
}

TEST_CASE("cascade invariants") {
  for (std::uint64_t i = 0; i < 300; ++i) {
    const RandomCase c = random_case(i);
    const auto trace = cascade(c.system, c.seed, c.hardened);
    CHECK(trace.fixed_point_time() + 1 <= std::max<std::size_t>(c.system.size(), 1));
    for (std::size_t t = 0; t + 1 < trace.steps.size(); ++t) {
      CHECK(trace.steps[t].is_subset_of(trace.steps[t + 1]));
      CHECK(trace.steps[t] != trace.steps[t + 1]);
    }
    CHECK(!trace.final_failed().intersects(c.hardened));
    // More hardening never fails more entities.
    EntitySet more = c.hardened;
    more.set(i % c.system.size());
    CHECK(final_failed(c.system, c.seed, more)
              .is_subset_of(trace.final_failed()));
    // Kill sets are monotone in the seed.
    EntitySet bigger = c.seed;
    bigger.set((i * 7) % c.system.size());
    CHECK(kill_set(c.system, c.seed).is_subset_of(kill_set(c.system, bigger)));
  }
}

TEST_CASE("pruned systems are cascade equivalent on the kill set") {
  for (std::uint64_t i = 0; i < 200; ++i) {
    const RandomCase c = random_case(i);
    const auto r = prune_system(c.system, c.seed);
    CHECK(r.never_failing == ~kill_set(c.system, c.seed));
    CHECK(kill_set(r.system, c.seed) == kill_set(c.system, c.seed));
    const EntitySet h = c.hardened;
    CHECK(final_failed(r.system, c.seed, h) ==
          final_failed(c.system, c.seed, h));
  }
}

TEST_CASE("protection sets match the reference semantics") {
  for (std::uint64_t i = 0; i < 150; ++i) {
    const RandomCase c = random_case(i);
    const auto model = oracle::from_system(c.system);
    const auto seed = oracle::to_labels(c.system, c.seed);
    for (const auto& l : c.system.labels()) {
      const oracle::Labels killed = oracle::final_failed(model, seed);
      const oracle::Labels expect =
          killed.count(l) ? oracle::protection(model, seed, {l})
                          : oracle::Labels{};
      CHECK(oracle::to_labels(c.system,
                              protection_set(c.system, c.system.id(l),
                                             c.seed)) == expect);
    }
  }
}
