#include "doctest.h"

#include "fixtures.h"
#include "iim/generators.h"
#include "iim/restricted.h"
#include "iim/system.h"

using namespace iim;

TEST_CASE("parse table 1") {
  const System s = fixtures::table1();
  CHECK(s.size() == 7);
  CHECK(s.idrs().size() == 7);
  CHECK(s.labels() ==
        std::vector<std::string>{"a1", "a2", "a3", "b1", "b2", "b3", "b4"});
  const Idr* b3 = s.idr_for(s.id("b3"));
  REQUIRE(b3 != nullptr);
  REQUIRE(b3->minterms.size() == 2);
  CHECK(b3->minterms[0].members.size() == 1);
  CHECK(b3->minterms[1].members.size() == 2);
  CHECK(format_idr(s, *b3) == "b3 <- a2 + a1 a3");
  CHECK(s.minterm_count() == 9);
}

TEST_CASE("parse without declarations orders entities by first mention") {
  const System s = parse_system("b <- a c\nc <- d\n");
  CHECK(s.labels() == std::vector<std::string>{"b", "a", "c", "d"});
  CHECK(!s.has_idr(s.id("a")));
  CHECK(s.has_idr(s.id("c")));
}

TEST_CASE("empty and comment-only files") {
  CHECK(parse_system("").size() == 0);
  const System s = parse_system("# nothing here\n\n   # still nothing\n");
  CHECK(s.size() == 0);
  CHECK(s.idrs().empty());
}

TEST_CASE("parse errors carry line numbers") {
  auto line_of = [](const char* text) {
    try {
      parse_system(text);
    } catch (const ParseError& e) {
      return e.line();
    }
    return -1;
  };
  CHECK(line_of("a1 <- a1") == 1);
  CHECK(line_of("x <- y\nx <- z") == 2);
  CHECK(line_of("a <- b +\n") == 1);
  CHECK(line_of("a <-\n") == 1);
  CHECK(line_of("\n\n1bad <- c") == 3);
  CHECK(line_of("a <- b b") == 1);
  CHECK(line_of("a <- b <- c") == 1);
}

TEST_CASE("add_idr validation") {
  System s;
  auto a = s.add_entity("a");
  auto b = s.add_entity("b");
  CHECK(s.add_entity("a") == a);
  CHECK_THROWS_AS(s.add_entity("not valid"), InvalidSystem);
  CHECK_THROWS_AS(s.add_idr(Idr{a, {}}), InvalidSystem);
  CHECK_THROWS_AS(s.add_idr(Idr{a, {Minterm{}}}), InvalidSystem);
  CHECK_THROWS_AS(s.add_idr(Idr{a, {Minterm{{a}}}}), InvalidSystem);
  CHECK_THROWS_AS(s.add_idr(Idr{a, {Minterm{{EntityId{9}}}}}), InvalidSystem);
  s.add_idr(Idr{a, {Minterm{{b}}}});
  CHECK_THROWS_AS(s.add_idr(Idr{a, {Minterm{{b}}}}), InvalidSystem);
  CHECK_THROWS_AS(s.id("zz"), std::out_of_range);
}

TEST_CASE("occurrences index every minterm membership") {
  const System s = fixtures::table1();
  CHECK(s.occurrences(s.id("a1")).size() == 3);
  CHECK(s.occurrences(s.id("b1")).empty());
  CHECK(s.occurrences(s.id("b2")).size() == 2);
}

TEST_CASE("format then parse is a fixpoint") {
  const System t1 = fixtures::table1();
  CHECK(format_system(parse_system(format_system(t1))) == format_system(t1));
  for (auto cls : {IdrClass::kCaseI, IdrClass::kCaseII, IdrClass::kGeneral}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      const System s = gen_random(cls, 5 + seed, seed);
      const std::string text = format_system(s);
      const System back = parse_system(text);
      CHECK(back.labels() == s.labels());
      CHECK(format_system(back) == text);
    }
  }
}

TEST_CASE("sorted labels") {
  const System s = fixtures::table1();
  EntitySet set = fixtures::set_of(s, {"b4", "a2", "b1"});
  CHECK(s.sorted_labels(set) == std::vector<std::string>{"a2", "b1", "b4"});
}
