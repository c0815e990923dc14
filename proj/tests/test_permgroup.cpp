#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstring>

#include "blockhh/errors.hpp"
#include "blockhh/permgroup.hpp"

using namespace blockhh;

namespace {

PermGroup make_s3() {
  return PermGroup(3, {Permutation::from_cycles(3, "(1,2)"), Permutation::from_cycles(3, "(1,2,3)")},
                   "S3");
}

PermGroup make_s4() {
  return PermGroup(4, {Permutation::from_cycles(4, "(1,2)"), Permutation::from_cycles(4, "(1,2,3,4)")},
                   "S4");
}

PermGroup make_a4() {
  return PermGroup(4,
                   {Permutation::from_cycles(4, "(1,2)(3,4)"), Permutation::from_cycles(4, "(1,2,3)")},
                   "A4");
}

PermGroup make_a5() {
  return PermGroup(5,
                   {Permutation::from_cycles(5, "(1,2)(3,4)"), Permutation::from_cycles(5, "(1,2,3,4,5)")},
                   "A5");
}

PermGroup make_c6() {
  return PermGroup(6, {Permutation::from_cycles(6, "(1,2,3,4,5,6)")}, "C6");
}

PermGroup make_d8() {
  return PermGroup(4, {Permutation::from_cycles(4, "(1,2,3,4)"), Permutation::from_cycles(4, "(1,3)")},
                   "D8");
}

PermGroup make_m11() {
  return PermGroup(11,
                   {Permutation::from_cycles(11, "(1,2,3,4,5,6,7,8,9,10,11)"),
                    Permutation::from_cycles(11, "(3,7,11,8)(4,10,5,6)")},
                   "M11");
}

}  // namespace

TEST_CASE("orders via the stabilizer chain") {
  CHECK(PermGroup(4, {}).order() == 1);
  CHECK(make_s3().order() == 6);
  CHECK(make_s4().order() == 24);
  CHECK(make_a4().order() == 12);
  CHECK(make_a5().order() == 60);
  CHECK(make_c6().order() == 6);
  CHECK(make_m11().order() == 7920);
}

TEST_CASE("membership tests sift through the chain") {
  PermGroup a4 = make_a4();
  CHECK(a4.contains(Permutation::from_cycles(4, "(1,3)(2,4)")));
  CHECK(a4.contains(Permutation::identity(4)));
  CHECK_FALSE(a4.contains(Permutation::from_cycles(4, "(1,2)")));
  CHECK_FALSE(a4.contains(Permutation::identity(5)));
}

TEST_CASE("element table is sorted deterministic and complete") {
  PermGroup s4 = make_s4();
  const ElementTable& T = s4.elements();
  REQUIRE(T.size() == 24);
  CHECK(T.identity_index() == 0);
  for (std::uint32_t i = 0; i + 1 < T.size(); ++i)
    CHECK(std::memcmp(T.at(i), T.at(i + 1), T.degree()) < 0);
  for (std::uint32_t i = 0; i < T.size(); ++i) {
    CHECK(T.index_of(T.perm(i)) == i);
    CHECK(T.mul(i, T.inverse(i)) == T.identity_index());
  }
}

TEST_CASE("two element group enumerates to two rows") {
  PermGroup c2(2, {Permutation::from_cycles(2, "(1,2)")});
  CHECK(c2.elements().size() == 2);
}

TEST_CASE("enumeration refuses to exceed the cap") {
  PermGroup m11 = make_m11();
  CHECK_THROWS_AS(m11.elements(1000), CapExceeded);
  CHECK(m11.elements(10000).size() == 7920);
}

TEST_CASE("table arithmetic agrees with permutation arithmetic") {
  PermGroup s4 = make_s4();
  const ElementTable& T = s4.elements();
  for (std::uint32_t a : {3u, 11u, 17u})
    for (std::uint32_t b : {2u, 9u, 23u}) {
      CHECK(T.perm(T.mul(a, b)) == T.perm(a) * T.perm(b));
      CHECK(T.perm(T.conj(a, b)) == T.perm(b).conjugate_by(T.perm(a)));
    }
  for (std::uint32_t a = 0; a < T.size(); ++a) {
    CHECK(T.element_order(a) == T.perm(a).order());
    CHECK(T.perm(T.power(a, 3)) == T.perm(a).power(3));
  }
}

TEST_CASE("conjugacy classes partition the group") {
  PermGroup s3 = make_s3();
  const ClassTable& C = s3.conjugacy_classes();
  REQUIRE(C.count() == 3);
  std::vector<std::uint64_t> sizes = C.sizes;
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<std::uint64_t>{1, 2, 3});

  PermGroup c3(3, {Permutation::from_cycles(3, "(1,2,3)")});
  CHECK(c3.conjugacy_classes().count() == 3);

  PermGroup s4 = make_s4();
  CHECK(s4.conjugacy_classes().count() == 5);
  PermGroup m11 = make_m11();
  CHECK(m11.conjugacy_classes(10000).count() == 10);
}

TEST_CASE("class representatives are least and sizes sum to the order") {
  for (const PermGroup& g : {make_s4(), make_a5(), make_m11()}) {
    const ClassTable& C = g.conjugacy_classes(10000);
    const ElementTable& T = g.elements(10000);
    std::uint64_t total = 0;
    for (std::size_t c = 0; c < C.count(); ++c) {
      total += C.sizes[c];
      CHECK(g.order() % C.sizes[c] == 0);
      // The representative index is minimal in its class.
      for (std::uint32_t i = 0; i < C.rep_index[c]; ++i) CHECK(C.class_of[i] != c);
    }
    CHECK(total == g.order());
    CHECK(C.class_of[T.identity_index()] == 0);
  }
}

TEST_CASE("centralizer orders multiply against class sizes") {
  for (const PermGroup& g : {make_s4(), make_a5()}) {
    const ClassTable& C = g.conjugacy_classes();
    for (std::size_t c = 0; c < C.count(); ++c) {
      SubgroupHandle z = g.centralizer_of_index(C.rep_index[c]);
      CHECK(z.order() * C.sizes[c] == g.order());
    }
  }
}

TEST_CASE("centralizer of the identity is everything") {
  PermGroup s3 = make_s3();
  CHECK(s3.centralizer(Permutation::identity(3)).order() == 6);
  PermGroup c6 = make_c6();
  CHECK(c6.centralizer(Permutation::from_cycles(6, "(1,2,3,4,5,6)")).order() == 6);
}

TEST_CASE("centralizer of a transposition in the symmetric group on four points") {
  PermGroup s4 = make_s4();
  SubgroupHandle z = s4.centralizer(Permutation::from_cycles(4, "(1,2)"));
  CHECK(z.order() == 4);
  CHECK(z.contains(Permutation::from_cycles(4, "(3,4)")));
  CHECK(z.contains(Permutation::from_cycles(4, "(1,2)(3,4)")));
}

TEST_CASE("centralizer rejects outsiders") {
  PermGroup a4 = make_a4();
  CHECK_THROWS_AS(a4.centralizer(Permutation::from_cycles(4, "(1,2)")), NotAMember);
}

TEST_CASE("normalizer grows from the subgroup to the whole group") {
  PermGroup s4 = make_s4();
  CHECK(s4.normalizer(s4.full_handle()).order() == 24);

  PermGroup s3 = make_s3();
  SubgroupHandle c2 = s3.subgroup_generated({Permutation::from_cycles(3, "(1,2)")});
  CHECK(s3.normalizer(c2).order() == 2);
  SubgroupHandle c3 = s3.subgroup_generated({Permutation::from_cycles(3, "(1,2,3)")});
  CHECK(s3.normalizer(c3).order() == 6);

  SubgroupHandle v4 = s4.subgroup_generated({Permutation::from_cycles(4, "(1,2)(3,4)"),
                                             Permutation::from_cycles(4, "(1,3)(2,4)")});
  CHECK(s4.normalizer(v4).order() == 24);
  CHECK(v4.is_normal_in_parent());
}

TEST_CASE("sylow subgroups have the exact p part") {
  PermGroup s4 = make_s4();
  SubgroupHandle syl2 = s4.sylow(2);
  CHECK(syl2.order() == 8);
  CHECK(syl2.is_p_group(2));
  CHECK_FALSE(syl2.is_normal_in_parent());
  CHECK(s4.sylow(3).order() == 3);

  PermGroup a5 = make_a5();
  SubgroupHandle k4 = a5.sylow(2);
  CHECK(k4.order() == 4);
  for (std::size_t i = 0; i < 4; ++i) CHECK(k4.member_perm(i).order() <= 2);

  CHECK(make_c6().sylow(5).order() == 1);
}

TEST_CASE("sylow two subgroup of the smallest mathieu group is semidihedral") {
  PermGroup m11 = make_m11();
  SubgroupHandle s = m11.sylow(2, 10000);
  REQUIRE(s.order() == 16);
  std::uint64_t exponent = 1;
  std::size_t involutions = 0;
  const ElementTable& T = m11.elements(10000);
  for (std::uint32_t idx : s.members()) {
    std::uint64_t o = T.element_order(idx);
    exponent = std::max(exponent, o);
    if (o == 2) ++involutions;
  }
  CHECK(exponent == 8);
  CHECK(involutions == 5);
}

TEST_CASE("sylow three subgroup of the smallest mathieu group is elementary abelian of rank 2") {
  PermGroup m11 = make_m11();
  SubgroupHandle s = m11.sylow(3, 10000);
  REQUIRE(s.order() == 9);
  for (std::size_t i = 0; i < 9; ++i) CHECK(s.member_perm(i).power(3).is_identity());
  CHECK(m11.frattini_rank(s, 3) == 2);
}

TEST_CASE("p subgroup classes of a cyclic p group count one per order") {
  PermGroup c8(8, {Permutation::from_cycles(8, "(1,2,3,4,5,6,7,8)")});
  auto classes = c8.p_subgroup_classes(2);
  REQUIRE(classes.size() == 4);
  CHECK(classes[0].order() == 1);
  CHECK(classes[1].order() == 2);
  CHECK(classes[2].order() == 4);
  CHECK(classes[3].order() == 8);
}

TEST_CASE("p subgroup classes for the symmetric group on four points") {
  PermGroup s4 = make_s4();
  auto classes = s4.p_subgroup_classes(2);
  std::vector<std::uint64_t> orders;
  for (const auto& h : classes) orders.push_back(h.order());
  CHECK(orders == std::vector<std::uint64_t>{1, 2, 2, 4, 4, 4, 8});
  auto classes3 = s4.p_subgroup_classes(3);
  CHECK(classes3.size() == 2);
}

TEST_CASE("p subgroup classes degenerate to the trivial class when p is coprime") {
  PermGroup s3 = make_s3();
  auto classes = s3.p_subgroup_classes(5);
  REQUIRE(classes.size() == 1);
  CHECK(classes[0].order() == 1);
}

TEST_CASE("every p subgroup class embeds in a conjugate of the sylow subgroup") {
  PermGroup a5 = make_a5();
  SubgroupHandle syl = a5.sylow(2);
  const ElementTable& T = a5.elements();
  for (const auto& h : a5.p_subgroup_classes(2)) {
    bool embedded = false;
    for (std::uint32_t g = 0; g < T.size() && !embedded; ++g)
      embedded = h.conjugated(g).is_subgroup_of(syl);
    CHECK(embedded);
  }
}

TEST_CASE("characteristic subgroup data for the symmetric group on four points") {
  PermGroup s4 = make_s4();
  CharacteristicPData d2 = s4.characteristic_p_data(2);
  CHECK(d2.o_p.order() == 4);
  CHECK(d2.o_p.is_normal_in_parent());
  CHECK(d2.o_upper_p.order() == 12);
  CHECK(d2.commutator.order() == 12);
  CHECK_FALSE(d2.frattini_rank.has_value());

  CharacteristicPData d3 = s4.characteristic_p_data(3);
  CHECK(d3.o_p.order() == 1);
  CHECK(d3.o_upper_p.order() == 24);
}

TEST_CASE("characteristic subgroup data for the smallest symmetric and alternating cases") {
  PermGroup s3 = make_s3();
  CHECK(s3.characteristic_p_data(3).o_upper_p.order() == 6);
  CHECK(s3.characteristic_p_data(2).o_upper_p.order() == 3);
  CHECK(s3.characteristic_p_data(2).commutator.order() == 3);
  CHECK(s3.characteristic_p_data(3).o_p.order() == 3);

  PermGroup a4 = make_a4();
  CHECK(a4.characteristic_p_data(2).commutator.order() == 4);
  CHECK(a4.characteristic_p_data(2).o_p.order() == 4);
  CHECK(a4.characteristic_p_data(3).o_upper_p.order() == 4);
}

TEST_CASE("o upper p is the least normal subgroup with p power index") {
  for (const PermGroup& g : {make_s3(), make_s4(), make_a4(), make_d8(), make_c6(), make_a5()}) {
    for (std::uint32_t p : {2u, 3u}) {
      SubgroupHandle k = g.characteristic_p_data(p).o_upper_p;
      CHECK(k.is_normal_in_parent());
      std::uint64_t index = g.order() / k.order();
      while (index % p == 0) index /= p;
      CHECK(index == 1);
      // Minimality: every p'-element already lies inside.
      const ElementTable& T = g.elements();
      for (std::uint32_t i = 0; i < T.size(); ++i)
        if (T.element_order(i) % p != 0) CHECK(k.contains_index(i));
    }
  }
}

TEST_CASE("frattini rank distinguishes elementary abelian from cyclic") {
  PermGroup e8(6, {Permutation::from_cycles(6, "(1,2)"), Permutation::from_cycles(6, "(3,4)"),
                   Permutation::from_cycles(6, "(5,6)")});
  CHECK(e8.characteristic_p_data(2).frattini_rank == 3);

  PermGroup c8(8, {Permutation::from_cycles(8, "(1,2,3,4,5,6,7,8)")});
  CHECK(c8.characteristic_p_data(2).frattini_rank == 1);

  PermGroup d8 = make_d8();
  CHECK(d8.characteristic_p_data(2).frattini_rank == 2);

  PermGroup s4 = make_s4();
  CHECK_THROWS_AS(s4.frattini_rank(s4.full_handle(), 2), FrattiniRankOnNonPGroup);
}

TEST_CASE("subgroup conjugacy finds witnesses and rejects impossible pairs") {
  PermGroup s3 = make_s3();
  SubgroupHandle h1 = s3.subgroup_generated({Permutation::from_cycles(3, "(1,2)")});
  SubgroupHandle h2 = s3.subgroup_generated({Permutation::from_cycles(3, "(1,3)")});
  auto w = s3.is_conjugate_subgroup(h1, h2);
  REQUIRE(w.has_value());
  const ElementTable& T = s3.elements();
  SubgroupHandle moved = h1.conjugated(T.index_of(*w));
  CHECK(moved.same_set(h2));
  CHECK(s3.is_conjugate_subgroup(h1, h1).value().is_identity());

  PermGroup s4 = make_s4();
  SubgroupHandle a = s4.subgroup_generated({Permutation::from_cycles(4, "(1,2)")});
  SubgroupHandle b = s4.subgroup_generated({Permutation::from_cycles(4, "(1,2)(3,4)")});
  CHECK_FALSE(s4.is_conjugate_subgroup(a, b).has_value());
  SubgroupHandle c3 = s4.subgroup_generated({Permutation::from_cycles(4, "(1,2,3)")});
  CHECK_FALSE(s4.is_conjugate_subgroup(a, c3).has_value());
}

TEST_CASE("distinct sylow subgroups are conjugate") {
  PermGroup s4 = make_s4();
  SubgroupHandle p1 = s4.sylow(3);
  const ElementTable& T = s4.elements();
  SubgroupHandle p2 = p1.conjugated(T.index_of(Permutation::from_cycles(4, "(1,4)")));
  if (!p1.same_set(p2)) {
    auto w = s4.is_conjugate_subgroup(p1, p2);
    CHECK(w.has_value());
  }
}

TEST_CASE("subgroup handles validate membership closure") {
  PermGroup s3 = make_s3();
  const ElementTable& T = s3.elements();
  std::vector<std::uint32_t> good{T.identity_index(), T.index_of(Permutation::from_cycles(3, "(1,2)"))};
  CHECK(s3.subgroup_from_indices(good).order() == 2);
  std::vector<std::uint32_t> bad{T.identity_index(), T.index_of(Permutation::from_cycles(3, "(1,2,3)"))};
  CHECK_THROWS_AS(s3.subgroup_from_indices(bad), NotASubgroup);
  CHECK_THROWS_AS(s3.subgroup_from_indices({T.index_of(Permutation::from_cycles(3, "(1,2)"))}),
                  NotASubgroup);
}

TEST_CASE("promoted subgroups enumerate standalone") {
  PermGroup s4 = make_s4();
  PermGroup d8 = s4.sylow(2).as_group("sylow2");
  CHECK(d8.order() == 8);
  CHECK(d8.elements().size() == 8);
  CHECK(d8.conjugacy_classes().count() == 5);
}

TEST_CASE("handles from different parents are rejected") {
  PermGroup s4 = make_s4();
  PermGroup a4 = make_a4();
  SubgroupHandle h = a4.full_handle();
  CHECK_THROWS_AS(s4.normalizer(h), NotASubgroup);
}

TEST_CASE("intersection and conjugation of handles stay consistent") {
  PermGroup s4 = make_s4();
  SubgroupHandle d8 = s4.sylow(2);
  SubgroupHandle a4 = s4.characteristic_p_data(2).o_upper_p;
  SubgroupHandle meet = d8.intersect(a4);
  CHECK(meet.order() == 4);
  CHECK(meet.is_subgroup_of(d8));
  CHECK(meet.is_subgroup_of(a4));
  const ElementTable& T = s4.elements();
  SubgroupHandle conj = d8.conjugated(T.index_of(Permutation::from_cycles(4, "(1,2,3)")));
  CHECK(conj.order() == 8);
}

TEST_CASE("normal closure reaches the derived subgroup") {
  PermGroup a5 = make_a5();
  const ElementTable& T = a5.elements();
  Permutation c = Permutation::from_cycles(5, "(1,2,3)");
  SubgroupHandle n = a5.normal_closure({T.index_of(c)});
  CHECK(n.order() == 60);
}
