#include <doctest.h>

#include <random>

#include "neretin/perm_group.hpp"
#include "oracles.hpp"

using namespace neretin;
using perm::PermGroup;
using perm::Permutation;

TEST_CASE("composition applies the right factor first") {
  auto p = Permutation::from_cycles(3, "(0 1)");
  auto q = Permutation::from_cycles(3, "(1 2)");
  CHECK((p * q) == Permutation::from_cycles(3, "(0 1 2)"));
  CHECK((Permutation::identity(3) * Permutation::from_cycles(3, "(0 2)")) ==
        Permutation::from_cycles(3, "(0 2)"));
  auto c = Permutation::cycle(4, {0, 1, 2, 3});
  CHECK((c * c.inverse()).is_identity());
}

TEST_CASE("inverse examples") {
  CHECK(Permutation::from_cycles(3, "(0 1 2)").inverse() ==
        Permutation::from_cycles(3, "(0 2 1)"));
  CHECK(Permutation::identity(5).inverse().is_identity());
  auto invol = Permutation::from_cycles(4, "(0 1)(2 3)");
  CHECK(invol.inverse() == invol);
}

TEST_CASE("cycle string round trip") {
  auto p = Permutation::from_cycles(6, "(0 3 5)(1 2)");
  CHECK(Permutation::from_cycles(6, p.cycle_string()) == p);
  CHECK(Permutation::identity(4).cycle_string() == "()");
}

TEST_CASE("algebra on random permutations") {
  std::mt19937_64 rng(7);
  std::vector<unsigned> img(9);
  auto rand_perm = [&] {
    std::iota(img.begin(), img.end(), 0u);
    std::shuffle(img.begin(), img.end(), rng);
    return Permutation(img);
  };
  for (int i = 0; i < 1000; ++i) {
    auto p = rand_perm(), q = rand_perm(), r = rand_perm();
    CHECK((p * q) * r == p * (q * r));
    CHECK((p * p.inverse()).is_identity());
  }
}

TEST_CASE("bsgs order on stated examples") {
  PermGroup s4(4, {Permutation::from_cycles(4, "(0 1)"), Permutation::from_cycles(4, "(0 1 2 3)")});
  CHECK(s4.order() == 24);
  PermGroup a5(5,
               {Permutation::from_cycles(5, "(0 1 2)"), Permutation::from_cycles(5, "(0 1 2 3 4)")});
  CHECK(a5.order() == 60);
  PermGroup c2(4, {Permutation::from_cycles(4, "(0 1)(2 3)")});
  CHECK(c2.order() == 2);
}

TEST_CASE("membership is sound and complete on small groups") {
  PermGroup a4 = PermGroup::alternating(4);
  auto elements = oracles::closure_elements(4, a4.generators(), 100);
  CHECK(elements.size() == 12);
  int members = 0;
  // scan all of Sym(4)
  std::vector<unsigned> img{0, 1, 2, 3};
  std::sort(img.begin(), img.end());
  do {
    Permutation p{std::vector<unsigned>(img.begin(), img.end())};
    bool in_closure =
        std::find(elements.begin(), elements.end(), p) != elements.end();
    CHECK(a4.contains(p) == in_closure);
    if (a4.contains(p)) ++members;
  } while (std::next_permutation(img.begin(), img.end()));
  CHECK(members == 12);
}

TEST_CASE("bsgs order matches closure enumeration on random generator pairs") {
  std::mt19937_64 rng(11);
  for (unsigned degree = 4; degree <= 7; ++degree) {
    std::vector<unsigned> img(degree);
    auto rand_perm = [&] {
      std::iota(img.begin(), img.end(), 0u);
      std::shuffle(img.begin(), img.end(), rng);
      return Permutation(img);
    };
    for (int trial = 0; trial < 25; ++trial) {
      std::vector<Permutation> gens{rand_perm(), rand_perm()};
      auto elements = oracles::closure_elements(degree, gens, 5040);
      if (elements.empty()) continue;  // closure larger than the oracle cap
      PermGroup g(degree, gens);
      CHECK(g.order() == elements.size());
      for (const auto& e : elements) CHECK(g.contains(e));
    }
  }
}

TEST_CASE("every generator passes membership and the order multiplies out") {
  PermGroup g(6, {Permutation::from_cycles(6, "(0 1 2 3 4 5)"),
                  Permutation::from_cycles(6, "(0 1)")});
  for (const auto& s : g.generators()) CHECK(g.contains(s));
  BigInt product = 1;
  for (const auto& lvl : g.chain()) product *= static_cast<unsigned>(lvl.orbit.size());
  CHECK(product == g.order());
  CHECK(g.order() == 720);
}

TEST_CASE("orbits on tuples") {
  PermGroup c4(4, {Permutation::from_cycles(4, "(0 1 2 3)")});
  auto one = perm::orbits_on_tuples(c4, 1);
  REQUIRE(one.size() == 1);
  CHECK(one[0].size == 4);

  auto two = perm::orbits_on_tuples(PermGroup::symmetric(3), 2);
  REQUIRE(two.size() == 1);
  CHECK(two[0].size == 6);

  PermGroup c2(4, {Permutation::from_cycles(4, "(0 1)(2 3)")});
  auto parts = perm::orbits_on_tuples(c2, 1);
  CHECK(parts.size() == 2);

  CHECK_THROWS_AS(perm::orbits_on_tuples(c4, 5), Error);
}

TEST_CASE("transitivity degree via tuple orbits") {
  // the full symmetric group is n-transitive, the alternating group (n-2)-transitive
  PermGroup s5 = PermGroup::symmetric(5);
  CHECK(perm::orbits_on_tuples(s5, 3).size() == 1);
  PermGroup a5 = PermGroup::alternating(5);
  CHECK(perm::orbits_on_tuples(a5, 3).size() == 1);
  CHECK(perm::orbits_on_tuples(a5, 4).size() == 2);
}

TEST_CASE("uniform random elements land in the group") {
  PermGroup g(5, {Permutation::from_cycles(5, "(0 1 2 3 4)"), Permutation::from_cycles(5, "(0 1)")});
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) CHECK(g.contains(g.random_element(rng)));
}

TEST_CASE("element enumeration respects the cap") {
  PermGroup s6 = PermGroup::symmetric(6);
  CHECK_THROWS_AS(s6.elements(100), Error);
  CHECK(s6.elements(1000).size() == 720);
}
