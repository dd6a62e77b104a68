#include <doctest.h>

#include <random>

#include "neretin/backtrack.hpp"
#include "neretin/blocks.hpp"
#include "neretin/level.hpp"
#include "neretin/verify.hpp"

using namespace neretin;
using aa::AlmostAuto;
using level::LevelContext;
using perm::PermGroup;
using perm::Permutation;
using tree::Address;
using tree::Signature;

namespace {
const Signature sig22(2, 2);
}

TEST_CASE("level quotient of the root swap at level 2") {
  LevelContext ctx = LevelContext::make(sig22, 2);
  AlmostAuto s = AlmostAuto::root_permutation(sig22, {1, 0});
  CHECK(level::level_quotient(s, ctx).cycle_string() == "(0 2)(1 3)");
  CHECK(level::level_quotient(AlmostAuto::identity(sig22), ctx).is_identity());
}

TEST_CASE("depth changing elements are rejected") {
  LevelContext ctx = LevelContext::make(sig22, 2);
  AlmostAuto shift = AlmostAuto::prefix_exchange(io::leafset_parse("{0,10,11}", sig22),
                                                 io::leafset_parse("{00,01,1}", sig22),
                                                 {0, 1, 2});
  CHECK_THROWS_AS(level::level_quotient(shift, ctx), Error);
  // a level-preserving element needing depth 3 does not live at level 2
  AlmostAuto deep = AlmostAuto::cylinder_swap(sig22, Address({0, 0, 0}), Address({0, 0, 1}));
  CHECK_THROWS_AS(level::level_quotient(deep, ctx), Error);
}

TEST_CASE("symmetric level generators surject") {
  LevelContext ctx2 = LevelContext::make(sig22, 2);
  std::vector<Permutation> images;
  for (const auto& e : level::gens_sym_level(ctx2))
    images.push_back(level::level_quotient(e, ctx2));
  CHECK(PermGroup(4, images).order() == 24);

  LevelContext ctx1 = LevelContext::make(Signature(2, 3), 1);
  std::vector<Permutation> img1;
  for (const auto& e : level::gens_sym_level(ctx1))
    img1.push_back(level::level_quotient(e, ctx1));
  CHECK(PermGroup(3, img1).order() == 6);
}

TEST_CASE("quotient is a homomorphism on random words") {
  std::mt19937_64 rng(47);
  LevelContext ctx = LevelContext::make(sig22, 3);
  auto gens = level::gens_sym_level(ctx);
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
  for (int i = 0; i < 100; ++i) {
    AlmostAuto g = gens[pick(rng)], h = gens[pick(rng)];
    CHECK(level::level_quotient(aa::compose(g, h), ctx) ==
          level::level_quotient(g, ctx) * level::level_quotient(h, ctx));
  }
}

TEST_CASE("ball automorphism image orders") {
  LevelContext ctx2 = LevelContext::make(sig22, 2);
  std::vector<Permutation> images;
  for (const auto& e : level::gens_aut_ball(ctx2))
    images.push_back(level::level_quotient(e, ctx2));
  PermGroup w2(4, images);
  CHECK(w2.order() == 8);  // 2 * 2^2
  CHECK(w2.is_transitive());

  LevelContext ctx1 = LevelContext::make(Signature(2, 3), 1);
  std::vector<Permutation> img1;
  for (const auto& e : level::gens_aut_ball(ctx1))
    img1.push_back(level::level_quotient(e, ctx1));
  CHECK(PermGroup(3, img1).order() == 6);  // k!

  // transitive on leaves at every level up to 4
  for (int n = 1; n <= 4; ++n) {
    LevelContext ctx = LevelContext::make(sig22, n);
    std::vector<Permutation> img;
    for (const auto& e : level::gens_aut_ball(ctx))
      img.push_back(level::level_quotient(e, ctx));
    CHECK(PermGroup(ctx.leaf_count(), img).is_transitive());
  }
}

TEST_CASE("lower ball image is transitive and imprimitive with cylinder blocks") {
  LevelContext ctx = LevelContext::make(sig22, 2);
  PermGroup a(4, level::gens_ball_image(ctx, 1));
  CHECK(a.order() == 8);
  CHECK(a.is_transitive());
  auto systems = perm::minimal_blocks(a);
  REQUIRE_FALSE(systems.empty());
  bool found = false;
  for (const auto& s : systems)
    if (s.blocks == std::vector<std::vector<unsigned>>{{0, 1}, {2, 3}}) found = true;
  CHECK(found);

  for (int n0 = 1; n0 <= 3; ++n0)
    for (int n = n0 + 1; n <= 4; ++n) {
      LevelContext c = LevelContext::make(sig22, n);
      PermGroup g(c.leaf_count(), level::gens_ball_image(c, n0));
      CHECK(g.is_transitive());
      CHECK_FALSE(perm::minimal_blocks(g).empty());
    }

  CHECK_THROWS_AS(level::gens_ball_image(ctx, 2), Error);
}

TEST_CASE("lower ball image covers with a point stabilizer") {
  LevelContext ctx = LevelContext::make(sig22, 3);
  PermGroup a(8, level::gens_ball_image(ctx, 1));
  PermGroup stab(8, level::gens_end_stabilizer(Address({0, 0, 0}), ctx));
  CHECK(perm::product_covers(a, stab));
}

TEST_CASE("root factor product") {
  LevelContext ctx = LevelContext::make(sig22, 2);
  auto gens = level::gens_root_factors(ctx);
  PermGroup p(4, gens);
  CHECK(p.order() == 4);  // Sym(2) x Sym(2) on {00,01} x {10,11}

  // generators from different blocks commute
  for (const auto& x : gens)
    for (const auto& y : gens) {
      bool disjoint = true;
      for (unsigned pt : x.moved_points())
        for (unsigned qt : y.moved_points())
          if (pt == qt) disjoint = false;
      if (disjoint) CHECK(x * y == y * x);
    }

  // its normalizer in Sym(4) is the block-preserving wreath extension
  CHECK(perm::normalizer(PermGroup::symmetric(4), p).order() == 8);

  CHECK_THROWS_AS(level::gens_root_factors(LevelContext::make(sig22, 1)), Error);

  // order is the per-block wreath order to the k-th power
  LevelContext ctx3 = LevelContext::make(sig22, 3);
  PermGroup p3(8, level::gens_root_factors(ctx3));
  CHECK(p3.order() == 64);  // (2 * 2^2)^2
}

TEST_CASE("end stabilizer image") {
  LevelContext ctx = LevelContext::make(sig22, 2);
  PermGroup stab(4, level::gens_end_stabilizer(Address({0, 0}), ctx));
  CHECK(stab.order() == 6);  // 3!
  auto v = perm::classify_factorization(stab);
  CHECK(v.tag == perm::FactorizationVerdict::Tag::FixesPointWithAltComplement);
  CHECK(v.point == 0u);  // index of leaf 00
  CHECK_THROWS_AS(level::gens_end_stabilizer(Address({0}), ctx), Error);
}

TEST_CASE("kernel of the quotient stabilizes every cylinder") {
  std::mt19937_64 rng(53);
  LevelContext ctx = LevelContext::make(sig22, 3);
  for (int i = 0; i < 50; ++i) {
    AlmostAuto g = verify::random_level_preserving(rng, ctx, i % 2 == 0);
    bool trivial_quotient = level::level_quotient(g, ctx).is_identity();
    bool stabilizes_all = true;
    for (unsigned l = 0; l < ctx.leaf_count(); ++l) {
      auto [img, state] = aa::apply_to_prefix(g, ctx.address(l));
      if (!(img == ctx.address(l))) stabilizes_all = false;
    }
    CHECK(trivial_quotient == stabilizes_all);
  }
}

TEST_CASE("certifier verdicts") {
  // dense pattern
  std::vector<level::LevelGens> dense;
  for (int n = 2; n <= 4; ++n) {
    LevelContext c = LevelContext::make(sig22, n);
    std::vector<Permutation> sym;
    for (const auto& e : level::gens_sym_level(c)) sym.push_back(level::level_quotient(e, c));
    dense.push_back({n, sym});
  }
  auto cert = level::certify_cocompact(sig22, dense);
  CHECK(cert.kind == level::CocompactCertificate::Kind::Dense);

  // end stabilizer pattern along the spine 0, 00, 000
  std::vector<level::LevelGens> stab;
  for (int n = 1; n <= 3; ++n) {
    LevelContext c = LevelContext::make(sig22, n);
    stab.push_back({n, level::gens_end_stabilizer(
                           Address(std::vector<int>(static_cast<std::size_t>(n), 0)), c)});
  }
  auto cert2 = level::certify_cocompact(sig22, stab);
  CHECK(cert2.kind == level::CocompactCertificate::Kind::EndStabilizer);
  REQUIRE(cert2.chain.size() == 3);
  CHECK(cert2.chain[0] == Address({0}));
  CHECK(cert2.chain[1] == Address({0, 0}));
  CHECK(cert2.chain[2] == Address({0, 0, 0}));

  // a trivial level is inconclusive
  auto cert3 = level::certify_cocompact(sig22, {{2, {}}});
  CHECK(cert3.kind == level::CocompactCertificate::Kind::Inconclusive);
  CHECK(cert3.failing_level == 2);
  CHECK(cert3.reason == "Neither");

  // chain breaks are reported at the breaking level
  std::vector<level::LevelGens> broken;
  {
    LevelContext c2 = LevelContext::make(sig22, 2);
    LevelContext c3 = LevelContext::make(sig22, 3);
    broken.push_back({2, level::gens_end_stabilizer(Address({0, 0}), c2)});
    broken.push_back({3, level::gens_end_stabilizer(Address({1, 0, 0}), c3)});
  }
  auto cert4 = level::certify_cocompact(sig22, broken);
  CHECK(cert4.kind == level::CocompactCertificate::Kind::Inconclusive);
  CHECK(cert4.failing_level == 3);

  // degree mismatches are refused
  CHECK_THROWS_AS(
      level::certify_cocompact(sig22, {{2, {Permutation::identity(5)}}}), Error);
  // gaps in the level range are refused
  CHECK_THROWS_AS(level::certify_cocompact(
                      sig22, {{2, {Permutation::identity(4)}}, {4, {Permutation::identity(16)}}}),
                  Error);
}
