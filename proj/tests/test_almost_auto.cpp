#include <doctest.h>

#include <random>

#include "neretin/almost_auto.hpp"
#include "neretin/json_io.hpp"
#include "neretin/verify.hpp"
#include "oracles.hpp"

using namespace neretin;
using aa::AlmostAuto;
using aa::TailMachine;
using tree::Address;
using tree::Clopen;
using tree::LeafSet;
using tree::Signature;

namespace {

const Signature sig22(2, 2);

// the leaf exchange {0,10,11} -> {00,01,1} with 0->00, 10->01, 11->1
AlmostAuto shift_element() {
  LeafSet dom = io::leafset_parse("{0,10,11}", sig22);
  LeafSet ran = io::leafset_parse("{00,01,1}", sig22);
  return AlmostAuto::prefix_exchange(dom, ran, {0, 1, 2});
}

AlmostAuto root_swap() { return AlmostAuto::root_permutation(sig22, {1, 0}); }

// odometer tail under leaf 0, identity under leaf 1
AlmostAuto odometer_on_zero() {
  TailMachine odo = oracles::odometer(2);
  return AlmostAuto::make(LeafSet::base(sig22), LeafSet::base(sig22), {0, 1}, {1, 0}, odo);
}

} // namespace

TEST_CASE("identity and involution composition") {
  AlmostAuto s = root_swap();
  CHECK(aa::is_identity(aa::compose(s, s)));
  CHECK_FALSE(aa::is_identity(s));
  CHECK(aa::is_identity(AlmostAuto::identity(sig22)));
}

TEST_CASE("composition rewrites prefixes") {
  AlmostAuto g = shift_element();
  AlmostAuto gg = aa::compose(g, g);
  auto [img, state] = aa::apply_to_prefix(gg, Address({0}));
  CHECK(img == Address({0, 0, 0}));
  CHECK(state == gg.machine().identity);
}

TEST_CASE("inverse swaps the tree pair") {
  AlmostAuto g = shift_element();
  AlmostAuto inv = aa::inverse(g);
  CHECK(io::leafset_str(inv.dom()) == "{00,01,1}");
  CHECK(io::leafset_str(inv.ran()) == "{0,10,11}");
  CHECK(aa::is_identity(aa::compose(g, inv)));
  CHECK(aa::is_identity(aa::compose(inv, g)));
}

TEST_CASE("inverse of a tail action is the inverse automaton") {
  AlmostAuto g = odometer_on_zero();
  AlmostAuto inv = aa::inverse(g);
  CHECK(aa::is_identity(aa::compose(g, inv)));
  // check on all depth-6 prefixes below 0
  for (int bits = 0; bits < 32; ++bits) {
    std::vector<int> digits{0};
    for (int i = 0; i < 5; ++i) digits.push_back((bits >> i) & 1);
    Address w(digits);
    auto [mid, s1] = aa::apply_to_prefix(g, w);
    auto [back, s2] = aa::apply_to_prefix(inv, mid);
    CHECK(back == w);
  }
}

TEST_CASE("equality is representative independent") {
  AlmostAuto g = shift_element();
  AlmostAuto expanded = aa::refine_dom_to(g, g.dom().expanded(Address({1, 0})));
  CHECK(aa::equal(g, expanded));
  CHECK_FALSE(aa::equal(AlmostAuto::identity(sig22), root_swap()));

  // two presentations of the same element built by expanding different leaves
  AlmostAuto a = aa::refine_dom_to(g, g.dom().expanded(Address({0})));
  AlmostAuto b = aa::refine_dom_to(g, g.dom().expanded(Address({1, 1})));
  CHECK(aa::equal(a, b));
}

TEST_CASE("canonical form collapses consistent sibling families") {
  // {00,01,1} -> {10,11,0} with 00->10, 01->11, 1->0 reduces to the root swap
  LeafSet dom = io::leafset_parse("{00,01,1}", sig22);
  LeafSet ran = io::leafset_parse("{0,10,11}", sig22);
  // images: 00->10, 01->11, 1->0 ; ran order is {0,10,11}
  AlmostAuto g = AlmostAuto::prefix_exchange(dom, ran, {1, 2, 0});
  AlmostAuto canon = aa::canonical_form(g);
  CHECK(canon.dom().size() == 2);
  CHECK(aa::equal(canon, root_swap()));
  CHECK(aa::equal(canon, g));

  // idempotence
  AlmostAuto canon2 = aa::canonical_form(canon);
  CHECK(canon2.dom() == canon.dom());
  CHECK(canon2.ran() == canon.ran());
  CHECK(canon2.image() == canon.image());
  CHECK(canon2.machine() == canon.machine());

  // identity presented on ball_3 reduces to the base leaf set
  AlmostAuto padded = aa::refine_dom_to(AlmostAuto::identity(sig22), LeafSet::ball(sig22, 3));
  CHECK(aa::canonical_form(padded).dom() == LeafSet::base(sig22));
}

TEST_CASE("canonical form is reachable only against existing machine states") {
  // the odometer element on ball_2 collapses back using the odometer state
  AlmostAuto g = odometer_on_zero();
  AlmostAuto deep = aa::refine_dom_to(g, LeafSet::ball(sig22, 3));
  AlmostAuto canon = aa::canonical_form(deep);
  CHECK(aa::equal(canon, g));
  CHECK(canon.dom().size() == 2);
}

TEST_CASE("apply to prefix") {
  AlmostAuto s = root_swap();
  auto [img, state] = aa::apply_to_prefix(s, Address({0, 1}));
  CHECK(img == Address({1, 1}));
  CHECK(state == s.machine().identity);

  AlmostAuto g = shift_element();
  CHECK(aa::apply_to_prefix(g, Address({0})).first == Address({0, 0}));
  CHECK_THROWS_AS(aa::apply_to_prefix(g, Address({1})), Error);  // stops above {10,11}
}

TEST_CASE("support examples") {
  CHECK(aa::support(root_swap()).covers_cylinder(Address::root()));

  // swap of 00 and 01 is supported inside cylinder 0
  AlmostAuto inner = AlmostAuto::cylinder_swap(sig22, Address({0, 0}), Address({0, 1}));
  Clopen zero = Clopen::from_cylinders(sig22, {Address({0})});
  CHECK(zero.contains(aa::support(inner)));
  CHECK_FALSE(aa::support(inner).covers_cylinder(Address({1})));

  // the odometer moves every end of its cylinder
  AlmostAuto odo = odometer_on_zero();
  auto supp = aa::support(odo);
  CHECK(supp.covers_cylinder(Address({0})));
  CHECK_FALSE(supp.covers_cylinder(Address({1})));

  CHECK(aa::support(AlmostAuto::identity(sig22)).empty());
}

TEST_CASE("support is inverse invariant and subadditive") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 100; ++i) {
    AlmostAuto g = verify::random_almost_auto(rng, sig22, 5, i % 2 == 0);
    auto s = aa::support(g);
    auto si = aa::support(aa::inverse(g));
    CHECK(s.contains(si));
    CHECK(si.contains(s));
  }
  // disjoint supports: support(gh) inside the union
  AlmostAuto left = AlmostAuto::cylinder_swap(sig22, Address({0, 0}), Address({0, 1}));
  AlmostAuto right = AlmostAuto::cylinder_swap(sig22, Address({1, 0}), Address({1, 1}));
  auto u = aa::support(left).united(aa::support(right));
  CHECK(u.contains(aa::support(aa::compose(left, right))));
}

TEST_CASE("level preservation") {
  CHECK(aa::is_level_preserving(root_swap()));
  CHECK(aa::is_level_preserving(odometer_on_zero()));
  CHECK_FALSE(aa::is_level_preserving(shift_element()));
  AlmostAuto depth2 = AlmostAuto::cylinder_swap(sig22, Address({0, 0}), Address({1, 1}));
  CHECK(aa::is_level_preserving(depth2));
}

TEST_CASE("rigid stabilizer membership") {
  Clopen zero = Clopen::from_cylinders(sig22, {Address({0})});
  CHECK(aa::rist_member(AlmostAuto::identity(sig22), zero));
  CHECK_FALSE(aa::rist_member(root_swap(), zero));
  AlmostAuto inner = AlmostAuto::cylinder_swap(sig22, Address({0, 0}), Address({0, 1}));
  CHECK(aa::rist_member(inner, zero));
}

TEST_CASE("disjointly supported elements commute") {
  std::mt19937_64 rng(29);
  auto random_swap_inside = [&](int root) {
    // a swap of two disjoint cylinders below the given root child
    std::uniform_int_distribution<int> bit(0, 1);
    std::vector<int> a{root, bit(rng)}, b;
    while (true) {
      b = {root, bit(rng), bit(rng)};
      Address aa_(a), bb(b);
      if (!aa_.comparable(bb)) break;
    }
    return AlmostAuto::cylinder_swap(sig22, Address(a), Address(b));
  };
  for (int i = 0; i < 100; ++i) {
    AlmostAuto g = random_swap_inside(0);
    AlmostAuto h = random_swap_inside(1);
    CHECK(aa::equal(aa::compose(g, h), aa::compose(h, g)));
  }
}

TEST_CASE("rist relabeling round trips") {
  Clopen alpha = Clopen::from_cylinders(sig22, {Address({0}), Address({1, 0})});
  auto rel = aa::relabel_rist(alpha);
  CHECK(rel.target_k == 2);
  CHECK_FALSE(rel.nonstandard);
  CHECK(rel.to_target(Address({0, 1})) == Address({0, 1}));
  CHECK(rel.to_target(Address({1, 0, 1})) == Address({1, 1}));
  CHECK(rel.to_source(Address({1})) == Address({1, 0}));

  // transport a swap supported in alpha and bring it back
  AlmostAuto inner = AlmostAuto::cylinder_swap(sig22, Address({0, 0}), Address({1, 0, 1}));
  CHECK(aa::rist_member(inner, alpha));
  AlmostAuto moved = rel.transport(inner);
  CHECK(moved.sig() == rel.target_sig());
  AlmostAuto back = rel.transport_back(moved);
  CHECK(aa::equal(back, inner));

  // address round trip on depth-4 prefixes
  for (int bits = 0; bits < 8; ++bits) {
    std::vector<int> digits{0};
    for (int i = 0; i < 3; ++i) digits.push_back((bits >> i) & 1);
    Address w(digits);
    CHECK(rel.to_source(rel.to_target(w)) == w);
  }

  // whole boundary: identity relabeling
  auto whole = aa::relabel_rist(Clopen::whole(sig22));
  CHECK(whole.target_k == 2);
  CHECK(whole.to_target(Address({1, 0})) == Address({1, 0}));

  // single cylinder: flagged below the usual signature bound
  auto single = aa::relabel_rist(Clopen::from_cylinders(sig22, {Address({0})}));
  CHECK(single.nonstandard);
  CHECK(single.target_k == 1);
  CHECK_THROWS_AS(single.target_sig(), Error);

  CHECK_THROWS_AS(aa::relabel_rist(Clopen(sig22)), Error);
}

TEST_CASE("order preserving leaf exchanges") {
  CHECK(aa::in_thompson_f(AlmostAuto::identity(sig22)));
  CHECK(aa::in_thompson_f(shift_element()));
  CHECK_FALSE(aa::in_thompson_f(root_swap()));
  CHECK_FALSE(aa::in_thompson_f(odometer_on_zero()));
}

TEST_CASE("group axioms on random elements") {
  std::mt19937_64 rng(31);
  AlmostAuto e = AlmostAuto::identity(sig22);
  for (int i = 0; i < 200; ++i) {
    AlmostAuto g = verify::random_almost_auto(rng, sig22, 5, i % 2 == 0);
    AlmostAuto h = verify::random_almost_auto(rng, sig22, 5, i % 3 == 0);
    AlmostAuto k = verify::random_almost_auto(rng, sig22, 4, false);
    CHECK(aa::equal(aa::compose(aa::compose(g, h), k), aa::compose(g, aa::compose(h, k))));
    CHECK(aa::equal(aa::compose(e, g), g));
    CHECK(aa::is_identity(aa::compose(aa::inverse(g), g)));
  }
}

TEST_CASE("equality is an equivalence relation on random samples") {
  std::mt19937_64 rng(37);
  for (int i = 0; i < 100; ++i) {
    AlmostAuto g = verify::random_almost_auto(rng, sig22, 4, true);
    CHECK(aa::equal(g, g));
    AlmostAuto g2 = aa::refine_dom_to(g, g.dom().expanded(g.dom().leaf(0)));
    AlmostAuto g3 = aa::canonical_form(g);
    CHECK(aa::equal(g2, g));
    CHECK(aa::equal(g, g2));
    CHECK((aa::equal(g, g2) && aa::equal(g2, g3) ? aa::equal(g, g3) : true));
  }
}

TEST_CASE("canonical form preserves the boundary map") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 100; ++i) {
    AlmostAuto g = verify::random_almost_auto(rng, sig22, 5, true);
    AlmostAuto c = aa::canonical_form(g);
    CHECK(aa::equal(g, c));
    AlmostAuto cc = aa::canonical_form(c);
    CHECK(cc.dom() == c.dom());
    CHECK(cc.image() == c.image());
    CHECK(cc.tails() == c.tails());
  }
}

TEST_CASE("element json round trip is bit exact") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 50; ++i) {
    AlmostAuto g =
        aa::canonical_form(verify::random_almost_auto(rng, sig22, 4, i % 2 == 0));
    auto j = io::element_to_json(g);
    AlmostAuto parsed = io::element_from_json(j);
    CHECK(io::element_to_json(parsed).dump() == j.dump());
    CHECK(aa::equal(parsed, g));
  }
}

TEST_CASE("signature mismatch is refused") {
  AlmostAuto a = AlmostAuto::identity(sig22);
  AlmostAuto b = AlmostAuto::identity(Signature(2, 3));
  CHECK_THROWS_AS(aa::compose(a, b), Error);
  CHECK_THROWS_AS(aa::equal(a, b), Error);
}
