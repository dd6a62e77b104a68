#include <doctest.h>

#include <numeric>

#include "neretin/backtrack.hpp"
#include "neretin/blocks.hpp"
#include "neretin/subgroup_enum.hpp"
#include "neretin/sym_factor.hpp"
#include "oracles.hpp"

using namespace neretin;
using perm::FactorizationVerdict;
using perm::PermGroup;
using perm::Permutation;

TEST_CASE("primes in interval") {
  CHECK(perm::primes_in_interval(Rational(7), Rational(14)) ==
        std::vector<unsigned>{7, 11, 13});
  CHECK(perm::primes_in_interval(Rational(1), Rational(2)) == std::vector<unsigned>{2});
  CHECK(perm::primes_in_interval(Rational(4), Rational(8)) == std::vector<unsigned>{5, 7});
  CHECK(perm::primes_in_interval(Rational(9, 2), Rational(9)) == std::vector<unsigned>{5, 7});
  CHECK_THROWS_AS(perm::primes_in_interval(Rational(5), Rational(2)), Error);
}

TEST_CASE("prime counts match a sieve up to 200") {
  auto prime = oracles::sieve(200);
  for (unsigned n = 1; n <= 200; ++n) {
    unsigned expect = 0;
    for (unsigned p = 2; p <= n; ++p)
      if (prime[p] && 2 * p >= n) ++expect;
    CHECK(perm::primes_in_interval(Rational(n, 2), Rational(n)).size() == expect);
  }
}

TEST_CASE("alternating content on a point set") {
  // Sym({1,2,3}) inside degree 4
  PermGroup b1(4, {Permutation::from_cycles(4, "(1 2 3)"), Permutation::from_cycles(4, "(1 2)")});
  CHECK(perm::contains_alt_on(b1, {1, 2, 3}));

  PermGroup b2(4, {Permutation::from_cycles(4, "(1 2 3)")});
  CHECK(perm::contains_alt_on(b2, {1, 2, 3}));

  PermGroup b3(4, {Permutation::from_cycles(4, "(1 2)")});
  CHECK_FALSE(perm::contains_alt_on(b3, {1, 2, 3}));

  CHECK_THROWS_AS(perm::contains_alt_on(b1, {1, 2}), Error);
}

TEST_CASE("prime cycle detection through powers") {
  // (0 1 2 3 4)(5 6 7) has order 15; its cube is a pure 5-cycle
  PermGroup g(8, {Permutation::from_cycles(8, "(0 1 2 3 4)(5 6 7)")});
  auto w = perm::find_prime_cycle(g, 5);
  REQUIRE(w.has_value());
  CHECK(w->p == 5);
  auto cycles = w->element.cycles();
  REQUIRE(cycles.size() == 1);
  CHECK(cycles[0].size() == 5);
  CHECK(g.contains(w->element));
}

TEST_CASE("jordan criterion on stated examples") {
  auto rep6 = perm::jordan_check(PermGroup::symmetric(6));
  CHECK(rep6.primitive);
  CHECK(rep6.jordan_applies);
  REQUIRE(rep6.prime_cycle_witness.has_value());
  CHECK(rep6.prime_cycle_witness->p <= 3);
  CHECK(rep6.contains_alt);

  PermGroup s5(5, {Permutation::from_cycles(5, "(0 1 2 3 4)"), Permutation::from_cycles(5, "(0 1)")});
  CHECK(s5.order() == 120);
  auto rep5 = perm::jordan_check(s5);
  CHECK(rep5.jordan_applies);
  CHECK(rep5.contains_alt);

  CHECK_THROWS_AS(perm::jordan_check(PermGroup::trivial(4)), Error);
}

TEST_CASE("jordan scan over every subgroup of Sym(5)") {
  for (const auto& h : perm::enumerate_subgroups_small(5)) {
    if (!h.is_transitive()) continue;
    auto rep = perm::jordan_check(h);
    if (rep.jordan_applies) CHECK(rep.contains_alt);
  }
}

TEST_CASE("factorization classification on stated examples") {
  CHECK(perm::classify_factorization(PermGroup::alternating(4)).tag ==
        FactorizationVerdict::Tag::ContainsAlt);

  PermGroup stab0(4, {Permutation::from_cycles(4, "(1 2 3)"), Permutation::from_cycles(4, "(1 2)")});
  auto v = perm::classify_factorization(stab0);
  CHECK(v.tag == FactorizationVerdict::Tag::FixesPointWithAltComplement);
  CHECK(v.point == 0u);

  PermGroup c2(4, {Permutation::from_cycles(4, "(0 1)(2 3)")});
  CHECK(perm::classify_factorization(c2).tag == FactorizationVerdict::Tag::Neither);
}

TEST_CASE("smallest fixed point breaks ties") {
  // the trivial group at degree 2 fixes both points; both complements are
  // below size 3, so the smallest fixed point wins
  auto v2 = perm::classify_factorization(PermGroup::trivial(2));
  CHECK(v2.tag == FactorizationVerdict::Tag::FixesPointWithAltComplement);
  CHECK(v2.point == 0u);

  // one nontrivial fixed point with a vacuous complement condition
  PermGroup swap(3, {Permutation::from_cycles(3, "(1 2)")});
  auto v3 = perm::classify_factorization(swap);
  CHECK(v3.tag == FactorizationVerdict::Tag::FixesPointWithAltComplement);
  CHECK(v3.point == 0u);

  // a deeper fixed point: Alt on the complement must genuinely be present
  PermGroup fix2(4, {Permutation::from_cycles(4, "(0 1 3)")});
  auto v4 = perm::classify_factorization(fix2);
  CHECK(v4.tag == FactorizationVerdict::Tag::FixesPointWithAltComplement);
  CHECK(v4.point == 2u);
}

TEST_CASE("omega witness for large alternating groups") {
  PermGroup a14 = PermGroup::alternating(14);
  auto w = perm::alt_omega_witness(a14);
  CHECK(w.p == 11);
  CHECK(w.q == 13);
  CHECK(2 * w.omega.size() >= 14 + 8);
  CHECK(a14.contains(w.p_cycle));
  CHECK(a14.contains(w.q_cycle));
  CHECK(w.p_cycle.cycles().size() == 1);
  CHECK(w.p_cycle.cycles()[0].size() == 11);
  CHECK(w.q_cycle.cycles()[0].size() == 13);
}

TEST_CASE("omega witness stays inside an invariant subset") {
  // Sym({0..12}) inside degree 14
  std::vector<unsigned> thirteen(13);
  std::iota(thirteen.begin(), thirteen.end(), 0u);
  PermGroup b(14, {Permutation::cycle(14, thirteen), Permutation::transposition(14, 0, 1)});
  auto w = perm::alt_omega_witness(b);
  CHECK(w.omega.size() >= 11);
  for (unsigned x : w.omega) CHECK(x <= 12);
}

TEST_CASE("omega witness reports failure for the trivial group") {
  CHECK_THROWS_AS(perm::alt_omega_witness(PermGroup::trivial(14)), Error);
}

TEST_CASE("factorization verdict is decisive at applicable degrees") {
  // wreath-type A (transitive, imprimitive) at degree 14 where [n/2, n] holds
  // three primes; structured B completing the product
  const unsigned n = 14;
  std::vector<Permutation> wreath;
  // blocks {0..6} and {7..13}: full symmetric inside the first block,
  // the block swap, and a 7-cycle inside the first block
  wreath.push_back(Permutation::from_cycles(n, "(0 1)"));
  wreath.push_back(Permutation::from_cycles(n, "(0 1 2 3 4 5 6)"));
  wreath.push_back(
      Permutation::from_cycles(n, "(0 7)(1 8)(2 9)(3 10)(4 11)(5 12)(6 13)"));
  PermGroup a(n, wreath);
  CHECK(a.is_transitive());
  CHECK_FALSE(perm::minimal_blocks(a).empty());

  // B = stabilizer of 13 containing Sym({0..12})
  std::vector<unsigned> thirteen(13);
  std::iota(thirteen.begin(), thirteen.end(), 0u);
  PermGroup b_stab(n, {Permutation::cycle(n, thirteen), Permutation::transposition(n, 0, 1)});
  CHECK(perm::product_covers(a, b_stab));
  auto v1 = perm::classify_factorization(b_stab);
  CHECK(v1.tag == FactorizationVerdict::Tag::FixesPointWithAltComplement);
  CHECK(v1.point == 13u);

  PermGroup b_alt = PermGroup::alternating(n);
  CHECK(perm::product_covers(a, b_alt));
  CHECK(perm::classify_factorization(b_alt).tag == FactorizationVerdict::Tag::ContainsAlt);
}
