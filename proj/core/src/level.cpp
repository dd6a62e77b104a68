#include "neretin/level.hpp"

#include <algorithm>
#include <numeric>

namespace neretin::level {

using aa::AlmostAuto;
using perm::Permutation;
using tree::Address;
using tree::LeafSet;
using tree::Signature;

LevelContext LevelContext::make(const Signature& sig, int n, const Config& cfg) {
  if (n < 1) fail(Errc::bad_levels, "level must be >= 1");
  return LevelContext{sig, n, LeafSet::ball(sig, n, cfg)};
}

int LevelContext::index_of(const Address& a) const { return ball.index_of(a); }

Permutation level_quotient(const AlmostAuto& g, const LevelContext& ctx, const Config& cfg) {
  if (!aa::is_level_preserving(g))
    fail(Errc::not_in_level_subgroup, "element changes cylinder depths");
  AlmostAuto canon = aa::canonical_form(g, cfg);
  if (canon.dom().max_depth() > ctx.n)
    fail(Errc::not_in_level_subgroup,
         "element needs depth " + std::to_string(canon.dom().max_depth()) +
             " > level " + std::to_string(ctx.n));
  std::vector<unsigned> images(ctx.leaf_count());
  for (unsigned i = 0; i < ctx.leaf_count(); ++i) {
    auto [img, state] = aa::apply_to_prefix(canon, ctx.address(i));
    images[i] = static_cast<unsigned>(ctx.index_of(img));
  }
  return Permutation(std::move(images));
}

std::vector<AlmostAuto> gens_sym_level(const LevelContext& ctx) {
  const unsigned kn = ctx.leaf_count();
  std::vector<int> swap_img(kn), cycle_img(kn);
  std::iota(swap_img.begin(), swap_img.end(), 0);
  if (kn >= 2) std::swap(swap_img[0], swap_img[1]);
  for (unsigned i = 0; i < kn; ++i) cycle_img[i] = static_cast<int>((i + 1) % kn);
  std::vector<AlmostAuto> out;
  out.push_back(AlmostAuto::prefix_exchange(ctx.ball, ctx.ball, std::move(swap_img)));
  if (kn > 2)
    out.push_back(AlmostAuto::prefix_exchange(ctx.ball, ctx.ball, std::move(cycle_img)));
  return out;
}

namespace {

std::vector<int> swap01(int size) {
  std::vector<int> pi(size);
  std::iota(pi.begin(), pi.end(), 0);
  if (size >= 2) std::swap(pi[0], pi[1]);
  return pi;
}

std::vector<int> full_cycle(int size) {
  std::vector<int> pi(size);
  for (int i = 0; i < size; ++i) pi[i] = (i + 1) % size;
  return pi;
}

// first vertex of depth j in lexicographic order: 0, 00, 000, ...
Address spine_vertex(int j) { return Address(std::vector<int>(static_cast<std::size_t>(j), 0)); }

} // namespace

std::vector<AlmostAuto> gens_aut_ball(const LevelContext& ctx, const Config& cfg) {
  const Signature& sig = ctx.sig;
  std::vector<AlmostAuto> out;
  out.push_back(AlmostAuto::root_permutation(sig, swap01(sig.k)));
  if (sig.k > 2) out.push_back(AlmostAuto::root_permutation(sig, full_cycle(sig.k)));
  for (int j = 1; j < ctx.n; ++j) {
    Address v = spine_vertex(j);
    out.push_back(AlmostAuto::child_permutation(sig, v, swap01(sig.d), cfg));
    if (sig.d > 2) out.push_back(AlmostAuto::child_permutation(sig, v, full_cycle(sig.d), cfg));
  }
  return out;
}

std::vector<Permutation> gens_ball_image(const LevelContext& ctx, int n0, const Config& cfg) {
  if (n0 < 1 || n0 >= ctx.n) fail(Errc::bad_levels, "need 1 <= n0 < n");
  std::vector<AlmostAuto> elems = gens_sym_level(LevelContext::make(ctx.sig, n0, cfg));
  for (int j = n0; j < ctx.n; ++j) {
    Address v = spine_vertex(j);
    elems.push_back(AlmostAuto::child_permutation(ctx.sig, v, swap01(ctx.sig.d), cfg));
    if (ctx.sig.d > 2)
      elems.push_back(AlmostAuto::child_permutation(ctx.sig, v, full_cycle(ctx.sig.d), cfg));
  }
  std::vector<Permutation> out;
  out.reserve(elems.size());
  for (const auto& e : elems) out.push_back(level_quotient(e, ctx, cfg));
  return out;
}

std::vector<Permutation> gens_root_factors(const LevelContext& ctx, const Config& cfg) {
  if (ctx.n < 2) fail(Errc::bad_levels, "the root factors act below depth 1; need n >= 2");
  std::vector<Permutation> out;
  for (int c = 0; c < ctx.sig.k; ++c) {
    for (int j = 1; j < ctx.n; ++j) {
      // first vertex of depth j inside the c-th root subtree
      std::vector<int> digits{c};
      digits.insert(digits.end(), static_cast<std::size_t>(j - 1), 0);
      Address v{std::move(digits)};
      out.push_back(level_quotient(
          AlmostAuto::child_permutation(ctx.sig, v, swap01(ctx.sig.d), cfg), ctx, cfg));
      if (ctx.sig.d > 2)
        out.push_back(level_quotient(
            AlmostAuto::child_permutation(ctx.sig, v, full_cycle(ctx.sig.d), cfg), ctx, cfg));
    }
  }
  return out;
}

std::vector<Permutation> gens_end_stabilizer(const Address& xi_prefix, const LevelContext& ctx) {
  if (xi_prefix.depth() != ctx.n)
    fail(Errc::bad_levels, "the fixed prefix must have depth equal to the level");
  int fixed = ctx.index_of(xi_prefix);
  if (fixed < 0) fail(Errc::bad_prefix, "prefix is not a depth-n leaf");
  const unsigned kn = ctx.leaf_count();
  std::vector<unsigned> others;
  for (unsigned i = 0; i < kn; ++i)
    if (static_cast<int>(i) != fixed) others.push_back(i);

  std::vector<Permutation> out;
  if (others.size() >= 2)
    out.push_back(Permutation::transposition(kn, others[0], others[1]));
  if (others.size() >= 3) out.push_back(Permutation::cycle(kn, others));
  return out;
}

std::string CocompactCertificate::kind_name() const {
  switch (kind) {
    case Kind::Dense: return "Dense";
    case Kind::EndStabilizer: return "EndStabilizer";
    case Kind::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CocompactCertificate certify_cocompact(const Signature& sig, const std::vector<LevelGens>& input,
                                       const Config& cfg) {
  if (input.empty()) fail(Errc::bad_input, "no levels to certify");
  for (std::size_t i = 1; i < input.size(); ++i)
    if (input[i].n != input[i - 1].n + 1)
      fail(Errc::bad_levels, "levels must form a contiguous ascending range");

  CocompactCertificate cert;
  cert.sig = sig;

  using Tag = perm::FactorizationVerdict::Tag;
  std::vector<LevelContext> ctxs;
  for (const auto& lg : input) {
    LevelContext ctx = LevelContext::make(sig, lg.n, cfg);
    for (const auto& g : lg.generators)
      if (g.degree() != ctx.leaf_count())
        fail(Errc::degree_mismatch, "level " + std::to_string(lg.n) + " generators have degree " +
                                        std::to_string(g.degree()) + ", expected " +
                                        std::to_string(ctx.leaf_count()));
    perm::PermGroup group(ctx.leaf_count(), lg.generators);
    cert.levels.push_back({lg.n, ctx.leaf_count(), perm::classify_factorization(group, cfg)});
    ctxs.push_back(std::move(ctx));
  }

  const Tag first = cert.levels.front().verdict.tag;
  if (first == Tag::Neither) {
    cert.kind = CocompactCertificate::Kind::Inconclusive;
    cert.failing_level = cert.levels.front().n;
    cert.reason = "Neither";
    return cert;
  }

  if (first == Tag::ContainsAlt) {
    for (const auto& e : cert.levels)
      if (e.verdict.tag != Tag::ContainsAlt) {
        cert.kind = CocompactCertificate::Kind::Inconclusive;
        cert.failing_level = e.n;
        cert.reason = "expected ContainsAlt, got " + e.verdict.name();
        return cert;
      }
    cert.kind = CocompactCertificate::Kind::Dense;
    return cert;
  }

  // point-stabilizer pattern: fixed leaves must form a child-consistent chain
  for (std::size_t i = 0; i < cert.levels.size(); ++i) {
    const auto& e = cert.levels[i];
    if (e.verdict.tag != Tag::FixesPointWithAltComplement) {
      cert.kind = CocompactCertificate::Kind::Inconclusive;
      cert.failing_level = e.n;
      cert.reason = "expected FixesPointWithAltComplement, got " + e.verdict.name();
      cert.chain.clear();
      return cert;
    }
    Address leaf = ctxs[i].address(*e.verdict.point);
    if (!cert.chain.empty() && !cert.chain.back().is_strict_prefix_of(leaf)) {
      cert.kind = CocompactCertificate::Kind::Inconclusive;
      cert.failing_level = e.n;
      cert.reason = "fixed leaf is not a child of the previous one";
      cert.chain.clear();
      return cert;
    }
    cert.chain.push_back(leaf);
  }
  cert.kind = CocompactCertificate::Kind::EndStabilizer;
  return cert;
}

} // namespace neretin::level
