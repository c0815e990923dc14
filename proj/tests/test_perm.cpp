#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "blockhh/errors.hpp"
#include "blockhh/perm.hpp"

using namespace blockhh;

TEST_CASE("identity basics") {
  Permutation id = Permutation::identity(5);
  CHECK(id.degree() == 5);
  CHECK(id.is_identity());
  CHECK(id.order() == 1);
  CHECK(id.cycle_string() == "()");
  for (Point i = 0; i < 5; ++i) CHECK(id.apply(i) == i);
}

TEST_CASE("cycle parsing and printing") {
  Permutation g = Permutation::from_cycles(5, "(1,2,3)(4,5)");
  CHECK(g.apply(0) == 1);
  CHECK(g.apply(1) == 2);
  CHECK(g.apply(2) == 0);
  CHECK(g.apply(3) == 4);
  CHECK(g.apply(4) == 3);
  CHECK(g.cycle_string() == "(1,2,3)(4,5)");
  CHECK(g.order() == 6);

  Permutation h = Permutation::from_cycles(6, " ( 2 , 4 ) ");
  CHECK(h.apply(1) == 3);
  CHECK(h.apply(3) == 1);
  CHECK(h.apply(0) == 0);

  CHECK(Permutation::from_cycles(4, "") == Permutation::identity(4));
  CHECK(Permutation::from_cycles(4, "()") == Permutation::identity(4));
}

TEST_CASE("cycle parsing rejects malformed input") {
  CHECK_THROWS_AS(Permutation::from_cycles(5, "(1,2"), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles(5, "(0,1)"), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles(5, "(1,6)"), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles(5, "(1,1)"), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles(5, "(1,2)(2,3)"), ParseError);
  CHECK_THROWS_AS(Permutation::from_cycles(5, "(1,x)"), ParseError);
}

TEST_CASE("composition applies right factor first") {
  Permutation a = Permutation::from_cycles(3, "(1,2)");
  Permutation b = Permutation::from_cycles(3, "(2,3)");
  CHECK(a * b == Permutation::from_cycles(3, "(1,2,3)"));
  CHECK(b * a == Permutation::from_cycles(3, "(1,3,2)"));
}

TEST_CASE("inverse and conjugation") {
  Permutation g = Permutation::from_cycles(7, "(1,2,3,4)(5,6)");
  CHECK(g * g.inverse() == Permutation::identity(7));
  CHECK(g.inverse() * g == Permutation::identity(7));

  Permutation c = Permutation::from_cycles(7, "(1,5)");
  Permutation conj = g.conjugate_by(c);
  CHECK(conj == c * g * c.inverse());
  CHECK(conj.order() == g.order());
  // Conjugation relabels the moved points.
  CHECK(conj == Permutation::from_cycles(7, "(5,2,3,4)(1,6)"));
}

TEST_CASE("powers including negative exponents") {
  Permutation g = Permutation::from_cycles(6, "(1,2,3,4,5,6)");
  CHECK(g.power(0) == Permutation::identity(6));
  CHECK(g.power(6) == Permutation::identity(6));
  CHECK(g.power(2) == g * g);
  CHECK(g.power(-1) == g.inverse());
  CHECK(g.power(-7) == g.inverse());
  CHECK(g.power(601) == g);
}

TEST_CASE("order is the lcm of cycle lengths") {
  CHECK(Permutation::from_cycles(12, "(1,2,3)(4,5,6,7)(8,9)").order() == 12);
  CHECK(Permutation::from_cycles(11, "(1,2,3,4,5,6,7,8,9,10,11)").order() == 11);
}

TEST_CASE("one-based image constructor") {
  Permutation g = Permutation::from_one_based({2, 3, 1});
  CHECK(g == Permutation::from_cycles(3, "(1,2,3)"));
  CHECK(g.one_based_images() == std::vector<int>{2, 3, 1});
}

TEST_CASE("image vector constructor validates") {
  CHECK_THROWS_AS(Permutation(std::vector<Point>{0, 0, 1}), InvalidStructure);
  CHECK_THROWS_AS(Permutation(std::vector<Point>{3, 0, 1}), InvalidStructure);
  Permutation g(std::vector<Point>{2, 0, 1});
  CHECK(g.apply(0) == 2);
}

TEST_CASE("lexicographic comparison on image vectors") {
  Permutation id = Permutation::identity(4);
  Permutation g = Permutation::from_cycles(4, "(3,4)");
  Permutation h = Permutation::from_cycles(4, "(1,2)");
  CHECK(id < g);
  CHECK(g < h);
  CHECK_FALSE(h < g);
}

TEST_CASE("raw compose and invert helpers") {
  Permutation a = Permutation::from_cycles(5, "(1,2,3)");
  Permutation b = Permutation::from_cycles(5, "(3,4,5)");
  std::vector<Point> dst(5), inv(5);
  compose_into(dst.data(), a.images().data(), b.images().data(), 5);
  CHECK(Permutation(dst) == a * b);
  invert_into(inv.data(), a.images().data(), 5);
  CHECK(Permutation(inv) == a.inverse());
}
