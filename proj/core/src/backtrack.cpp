#include "neretin/backtrack.hpp"

#include <algorithm>
#include <optional>

namespace neretin::perm {

namespace {

bool contains_all(const PermGroup& big, const std::vector<Permutation>& gens) {
  return std::all_of(gens.begin(), gens.end(),
                     [&](const Permutation& g) { return big.contains(g); });
}

// Collects search hits incrementally, rebuilding a BSGS only when a hit
// enlarges the group found so far.
class HitSet {
public:
  explicit HitSet(unsigned degree) : group_(PermGroup::trivial(degree)) {}

  void add(const Permutation& g) {
    if (group_.contains(g)) return;
    gens_.push_back(g);
    group_ = PermGroup(g.degree(), gens_);
  }

  PermGroup take() { return std::move(group_); }

private:
  std::vector<Permutation> gens_;
  PermGroup group_;
};

} // namespace

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

PermGroup subgroup_intersection(const PermGroup& a, const PermGroup& b, const Config& cfg) {
  if (a.degree() != b.degree()) fail(Errc::degree_mismatch, "intersection at unequal degrees");
  const unsigned n = a.degree();

  if (contains_all(b, a.generators())) return a;
  if (contains_all(a, b.generators())) return b;

  // Rebase B so its chain starts with A's base; then a partial assignment of
  // base images can be checked for extendability inside B level by level.
  const auto base = a.base();
  PermGroup b2(n, b.generators(), base);

  HitSet hits(n);
  std::uint64_t nodes = 0;

  std::function<void(std::size_t, const Permutation&, const Permutation&)> dfs =
      [&](std::size_t level, const Permutation& u, const Permutation& v) {
        if (++nodes > cfg.node_budget)
          fail(Errc::resource_exhausted, "intersection backtrack exceeded node budget");
        if (level == a.chain().size()) {
          if (!u.is_identity() && b.contains(u)) hits.add(u);
          return;
        }
        const auto& lvl = a.chain()[level];
        const auto& blvl = b2.chain()[level];  // same base point, forced
        const Permutation vinv = v.inverse();
        for (const auto& t : lvl.transversal) {
          Permutation u2 = u * t;
          unsigned gamma = u2(lvl.base_point);
          int pos = blvl.orbit_pos[vinv(gamma)];
          if (pos < 0) continue;  // no element of B matches these base images
          dfs(level + 1, u2, v * blvl.transversal[pos]);
        }
      };
  dfs(0, Permutation::identity(n), Permutation::identity(n));
  return hits.take();
}

PermGroup normalizer(const PermGroup& g, const PermGroup& h, const Config& cfg) {
  if (g.degree() != h.degree()) fail(Errc::degree_mismatch, "normalizer at unequal degrees");
  if (!contains_all(g, h.generators()))
    fail(Errc::not_subgroup, "normalizer argument is not a subgroup");
  const unsigned n = g.degree();

  // H-orbit sizes: a normalizing element permutes H-orbits, so base images must
  // preserve orbit size.
  std::vector<std::size_t> orbit_size(n, 0);
  for (const auto& orb : h.orbits())
    for (unsigned x : orb) orbit_size[x] = orb.size();

  HitSet hits(n);
  for (const auto& s : h.generators()) hits.add(s);  // H normalizes itself

  std::uint64_t nodes = 0;
  std::function<void(std::size_t, const Permutation&)> dfs = [&](std::size_t level,
                                                                 const Permutation& u) {
    if (++nodes > cfg.node_budget)
      fail(Errc::resource_exhausted, "normalizer backtrack exceeded node budget");
    if (level == g.chain().size()) {
      for (const auto& s : h.generators())
        if (!h.contains(conjugate(u, s))) return;
      if (!u.is_identity()) hits.add(u);
      return;
    }
    const auto& lvl = g.chain()[level];
    for (const auto& t : lvl.transversal) {
      Permutation u2 = u * t;
      if (orbit_size[u2(lvl.base_point)] != orbit_size[lvl.base_point]) continue;
      dfs(level + 1, u2);
    }
  };
  dfs(0, Permutation::identity(n));
  return hits.take();
}

bool product_covers(const PermGroup& a, const PermGroup& b, const Config& cfg) {
  if (a.degree() != b.degree()) fail(Errc::degree_mismatch, "product test at unequal degrees");
  PermGroup meet = subgroup_intersection(a, b, cfg);
  return a.order() * b.order() == meet.order() * factorial(a.degree());
}

} // namespace neretin::perm
