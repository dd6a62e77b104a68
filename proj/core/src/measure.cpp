#include "neretin/measure.hpp"

#include <algorithm>
#include <map>

namespace neretin::measure {

using aa::AlmostAuto;
using level::LevelContext;
using perm::Permutation;
using tree::Address;
using tree::Clopen;
using tree::LeafSet;
using tree::Signature;

CylinderMeasure CylinderMeasure::make(LeafSet support, std::vector<Rational> mass) {
  if (support.size() != mass.size()) fail(Errc::bad_input, "one mass per support leaf");
  Rational total(0);
  for (const auto& m : mass) {
    if (m < 0) fail(Errc::bad_input, "masses must be nonnegative");
    total += m;
  }
  if (total != 1) fail(Errc::bad_input, "masses must sum to exactly 1");
  return CylinderMeasure{std::move(support), std::move(mass)};
}

CylinderMeasure CylinderMeasure::uniform(const LevelContext& ctx) {
  std::vector<Rational> mass(ctx.ball.size(),
                             tree::cylinder_mass(ctx.sig, ctx.ball.leaf(0)));
  return make(ctx.ball, std::move(mass));
}

bool CylinderMeasure::operator==(const CylinderMeasure& other) const {
  return support == other.support && mass == other.mass;
}

CylinderMeasure refine_measure(const CylinderMeasure& mu, const LeafSet& target,
                               const Config& cfg) {
  LeafSet fine = common_refinement(mu.support, target);
  std::vector<Address> leaves;
  std::vector<Rational> mass;
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    const Address& leaf = mu.support.leaf(i);
    // descendants of this leaf in the refinement split its mass uniformly
    std::vector<std::pair<Address, Rational>> stack{{leaf, mu.mass[i]}};
    while (!stack.empty()) {
      auto [a, m] = std::move(stack.back());
      stack.pop_back();
      if (fine.index_of(a) >= 0) {
        leaves.push_back(a);
        mass.push_back(m);
        continue;
      }
      if (a.depth() >= cfg.depth_limit)
        fail(Errc::depth_limit, "measure refinement exceeded the depth limit");
      Rational share = m / mu.sig().d;
      for (int c = 0; c < mu.sig().d; ++c) stack.push_back({a.child(c), share});
    }
  }
  // sort by leaf address
  std::vector<std::size_t> idx(leaves.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t x, std::size_t y) { return leaves[x] < leaves[y]; });
  std::vector<Address> sorted_leaves;
  std::vector<Rational> sorted_mass;
  for (std::size_t i : idx) {
    sorted_leaves.push_back(leaves[i]);
    sorted_mass.push_back(mass[i]);
  }
  return CylinderMeasure::make(LeafSet::from_leaves(mu.sig(), std::move(sorted_leaves)),
                               std::move(sorted_mass));
}

CylinderMeasure pushforward(const AlmostAuto& g, const CylinderMeasure& mu, const Config& cfg) {
  if (!(g.sig() == mu.sig())) fail(Errc::signature_mismatch, "measure on the wrong tree");
  AlmostAuto canon = aa::canonical_form(g, cfg);
  CylinderMeasure fine = refine_measure(mu, canon.dom(), cfg);

  std::vector<std::pair<Address, Rational>> moved;
  moved.reserve(fine.support.size());
  for (std::size_t i = 0; i < fine.support.size(); ++i) {
    auto [img, state] = aa::apply_to_prefix(canon, fine.support.leaf(i));
    moved.push_back({std::move(img), fine.mass[i]});
  }
  std::sort(moved.begin(), moved.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Address> leaves;
  std::vector<Rational> mass;
  for (auto& [a, m] : moved) {
    leaves.push_back(std::move(a));
    mass.push_back(std::move(m));
  }
  return CylinderMeasure::make(LeafSet::from_leaves(mu.sig(), std::move(leaves)),
                               std::move(mass));
}

Rational mass_in(const CylinderMeasure& mu, const Clopen& alpha) {
  if (!(mu.sig() == alpha.sig())) fail(Errc::signature_mismatch, "clopen on the wrong tree");
  Rational total(0);
  for (std::size_t i = 0; i < mu.support.size(); ++i) {
    const Address& leaf = mu.support.leaf(i);
    bool covered = false;
    for (const auto& c : alpha.cylinders()) {
      if (c.is_prefix_of(leaf)) {
        covered = true;
        break;
      }
    }
    if (covered) {
      total += mu.mass[i];
      continue;
    }
    for (const auto& c : alpha.cylinders())
      if (leaf.is_strict_prefix_of(c)) {
        Rational part = mu.mass[i];
        for (int j = leaf.depth(); j < c.depth(); ++j) part /= mu.sig().d;
        total += part;
      }
  }
  return total;
}

Contractor contractor_toward(const Address& xi_prefix, const Signature& sig,
                             const Config& cfg) {
  if (xi_prefix.depth() < 1) fail(Errc::bad_prefix, "target prefix must have depth >= 1");
  if (!xi_prefix.valid_for(sig)) fail(Errc::bad_prefix, "prefix invalid for the signature");
  const int a = xi_prefix[0];

  // spine below the first symbol, following xi then zeros
  std::vector<Address> spine{Address({a})};
  for (int t = 1; t < sig.k; ++t) {
    int s = t < xi_prefix.depth() ? xi_prefix[t] : 0;
    spine.push_back(spine.back().child(s));
  }
  if (spine.back().depth() > cfg.depth_limit)
    fail(Errc::depth_limit, "contractor spine exceeds the depth limit");

  // domain: the target root child plus the children of every other root child
  std::vector<Address> dom_leaves{Address({a})};
  std::vector<Address> other_children;
  for (int c = 0; c < sig.k; ++c) {
    if (c == a) continue;
    for (int i = 0; i < sig.d; ++i) {
      dom_leaves.push_back(Address({c, i}));
      if (i + 1 < sig.d) other_children.push_back(Address({c, i}));
    }
  }

  // range: the off-spine slots and the deepest spine vertex, plus the other
  // root children
  std::vector<Address> slots;
  for (int t = 0; t + 1 < static_cast<int>(spine.size()); ++t) {
    int taken = spine[static_cast<std::size_t>(t + 1)].digits().back();
    for (int i = 0; i < sig.d; ++i)
      if (i != taken) slots.push_back(spine[static_cast<std::size_t>(t)].child(i));
  }
  std::vector<Address> ran_leaves = slots;
  ran_leaves.push_back(spine.back());
  for (int c = 0; c < sig.k; ++c)
    if (c != a) ran_leaves.push_back(Address({c}));

  // pair the leaves: a -> deepest spine vertex; the first d-1 children of each
  // other root child fill the slots in order; the last child returns to its root
  std::map<Address, Address> map;
  map[Address({a})] = spine.back();
  std::sort(slots.begin(), slots.end());
  std::sort(other_children.begin(), other_children.end());
  for (std::size_t i = 0; i < other_children.size(); ++i) map[other_children[i]] = slots[i];
  for (int c = 0; c < sig.k; ++c)
    if (c != a) map[Address({c, sig.d - 1})] = Address({c});

  LeafSet dom = LeafSet::from_leaves(sig, dom_leaves);
  LeafSet ran = LeafSet::from_leaves(sig, ran_leaves);
  std::vector<int> image(dom.size());
  for (std::size_t i = 0; i < dom.size(); ++i)
    image[i] = ran.index_of(map.at(dom.leaf(i)));

  return Contractor{AlmostAuto::prefix_exchange(dom, ran, std::move(image)),
                    Rational(1, sig.d)};
}

ProximalityTrace proximality_run(const AlmostAuto& g, const CylinderMeasure& mu0,
                                 const std::vector<Address>& chain, int steps,
                                 const Config& cfg) {
  if (!(g.sig() == mu0.sig())) fail(Errc::signature_mismatch, "measure on the wrong tree");
  if (chain.empty()) fail(Errc::bad_prefix, "empty target chain");
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!chain[i - 1].is_strict_prefix_of(chain[i]))
      fail(Errc::bad_prefix, "chain prefixes must be nested");
  Clopen target = Clopen::from_cylinders(g.sig(), {chain.back()});

  ProximalityTrace trace;
  trace.chain = chain;
  CylinderMeasure mu = mu0;
  for (int s = 0; s < steps; ++s) {
    mu = pushforward(g, mu, cfg);
    trace.mass_in_target.push_back(mass_in(mu, target));
  }
  return trace;
}

std::vector<CylinderMeasure> invariant_measures(const std::vector<Permutation>& gens,
                                                const LevelContext& ctx) {
  for (const auto& g : gens)
    if (g.degree() != ctx.leaf_count())
      fail(Errc::degree_mismatch, "generators must act on the depth-n leaves");
  auto orbits = perm::point_orbits(ctx.leaf_count(), gens);
  std::vector<CylinderMeasure> out;
  for (const auto& orb : orbits) {
    std::vector<Rational> mass(ctx.leaf_count(), Rational(0));
    for (unsigned x : orb) mass[x] = Rational(1, static_cast<unsigned>(orb.size()));
    out.push_back(CylinderMeasure::make(ctx.ball, std::move(mass)));
  }
  return out;
}

namespace {

bool end_inside(const Address& prefix, const Clopen& set) { return set.contains_end(prefix); }

} // namespace

Displacement displace_points(const std::vector<Address>& points,
                             const std::vector<Clopen>& targets, const Config& cfg) {
  if (points.empty() || points.size() != targets.size())
    fail(Errc::bad_input, "need one target per point");
  const Signature sig = targets.front().sig();
  for (const auto& t : targets) {
    if (t.empty()) fail(Errc::empty_clopen, "targets must be nonempty");
    if (!(t.sig() == sig)) fail(Errc::signature_mismatch, "targets on different trees");
  }
  for (std::size_t i = 0; i < targets.size(); ++i)
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (!targets[i].disjoint_from(targets[j]))
        fail(Errc::targets_not_disjoint, "target sets overlap");
  for (const auto& p : points) {
    if (p.is_root() || !p.valid_for(sig)) fail(Errc::bad_prefix, "point prefix invalid");
    for (const auto& t : targets)
      if (end_inside(p, t))
        fail(Errc::point_inside_target, "a point lies inside a target set");
  }

  // beta_i: the shallowest cylinder around the end x_i·000... disjoint from
  // every target, from the other points, and from the earlier betas
  std::vector<Address> betas;
  for (std::size_t i = 0; i < points.size(); ++i) {
    Address beta = Address({points[i][0]});
    auto extend = [&](const Address& b) {
      int at = b.depth();
      int next = at < points[i].depth() ? points[i][at] : 0;
      return b.child(next);
    };
    auto acceptable = [&](const Address& b) {
      for (const auto& t : targets)
        for (const auto& c : t.cylinders())
          if (b.comparable(c)) return false;
      for (const auto& earlier : betas)
        if (b.comparable(earlier)) return false;
      for (std::size_t j = 0; j < points.size(); ++j) {
        if (j == i) continue;
        // the other ends must stay outside beta_i
        Address pj = points[j];
        if (b.is_prefix_of(pj)) return false;
        if (pj.is_strict_prefix_of(b)) {
          bool zeros = true;
          for (int t = pj.depth(); t < b.depth(); ++t)
            if (b[t] != 0) zeros = false;
          if (zeros) return false;
        }
      }
      return true;
    };
    while (!acceptable(beta)) {
      if (beta.depth() >= cfg.depth_limit)
        fail(Errc::depth_limit, "no disjoint neighbourhood within the depth cap");
      beta = extend(beta);
    }
    betas.push_back(beta);
  }

  // g_i swaps beta_i with a cylinder inside alpha_i
  Displacement result{AlmostAuto::identity(sig), {}, {}};
  AlmostAuto g = AlmostAuto::identity(sig);
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Address& w = targets[i].cylinders().front();
    AlmostAuto swap = AlmostAuto::cylinder_swap(sig, betas[i], w, cfg);
    // support containment, re-checked on the constructed piece
    Clopen allowed = targets[i].united(Clopen::from_cylinders(sig, {betas[i]}));
    if (!aa::rist_member(swap, allowed))
      fail(Errc::bad_input, "constructed swap escapes its allowed support");
    g = compose(g, swap, cfg);
    result.neighbourhoods.push_back(Clopen::from_cylinders(sig, {betas[i]}));
  }

  // target landing, re-checked by evaluation
  for (std::size_t i = 0; i < points.size(); ++i) {
    Address deep = points[i];
    while (deep.depth() < g.dom().max_depth()) deep = deep.child(0);
    auto [img, state] = aa::apply_to_prefix(g, deep);
    bool inside = std::any_of(
        targets[i].cylinders().begin(), targets[i].cylinders().end(),
        [&](const Address& c) { return c.is_prefix_of(img); });
    if (!inside) fail(Errc::bad_input, "displacement failed to land a point in its target");
    result.landed.push_back(img);
  }
  result.element = std::move(g);
  return result;
}

std::vector<Address> least_end_chain(const Clopen& alpha, const Config& cfg) {
  if (alpha.empty()) fail(Errc::empty_clopen, "the empty set has no least end");
  Address least = alpha.is_whole() ? Address({0}) : alpha.cylinders().front();
  std::vector<Address> chain{least};
  while (chain.back().depth() < cfg.depth_limit) chain.push_back(chain.back().child(0));
  return chain;
}

} // namespace neretin::measure
