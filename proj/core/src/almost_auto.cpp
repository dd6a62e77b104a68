#include "neretin/almost_auto.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

namespace neretin::aa {

using tree::Address;
using tree::Clopen;
using tree::LeafSet;
using tree::Signature;

namespace {

struct Triple {
  Address dom;
  Address ran;
  int state;
};

std::vector<Triple> triples_of(const AlmostAuto& g) {
  std::vector<Triple> out;
  out.reserve(g.dom().size());
  for (std::size_t i = 0; i < g.dom().size(); ++i)
    out.push_back({g.dom().leaf(i), g.image_of_leaf(i), g.tails()[i]});
  return out;
}

AlmostAuto from_triples(const Signature& sig, std::vector<Triple> tri, TailMachine machine) {
  std::sort(tri.begin(), tri.end(),
            [](const Triple& a, const Triple& b) { return a.dom < b.dom; });
  std::vector<Address> dom_leaves, ran_leaves;
  dom_leaves.reserve(tri.size());
  ran_leaves.reserve(tri.size());
  for (const auto& t : tri) {
    dom_leaves.push_back(t.dom);
    ran_leaves.push_back(t.ran);
  }
  std::sort(ran_leaves.begin(), ran_leaves.end());
  LeafSet dom = LeafSet::from_leaves(sig, dom_leaves);
  LeafSet ran = LeafSet::from_leaves(sig, ran_leaves);
  std::vector<int> image(tri.size()), tails(tri.size());
  for (std::size_t i = 0; i < tri.size(); ++i) {
    image[i] = ran.index_of(tri[i].ran);
    tails[i] = tri[i].state;
  }
  return AlmostAuto::make(std::move(dom), std::move(ran), std::move(image), std::move(tails),
                          std::move(machine));
}

// Elementary expansion until `stop` accepts a triple. The move replaces
// (l, r, q) by the d triples (l·i, r·out[q][i], next[q][i]).
std::vector<Triple> expand_until(const AlmostAuto& g,
                                 const std::function<bool(const Triple&)>& stop,
                                 const Config& cfg) {
  const TailMachine& m = g.machine();
  std::vector<Triple> out;
  std::vector<Triple> stack = triples_of(g);
  while (!stack.empty()) {
    Triple t = std::move(stack.back());
    stack.pop_back();
    if (stop(t)) {
      out.push_back(std::move(t));
      continue;
    }
    if (t.dom.depth() >= cfg.depth_limit || t.ran.depth() >= cfg.depth_limit)
      fail(Errc::depth_limit, "refinement exceeded the depth limit");
    for (int i = 0; i < m.alphabet; ++i)
      stack.push_back({t.dom.child(i), t.ran.child(m.out[t.state][i]), m.next[t.state][i]});
  }
  return out;
}

// Restrict the machine to states reachable from the used tail states plus the
// identity, relabeled in visit order (identity first, then tails in leaf
// order, then transitions letter by letter).
void tidy_machine(std::vector<Triple>& tri, TailMachine& m) {
  std::vector<int> order;
  std::vector<int> newid(m.num_states(), -1);
  auto visit = [&](int q) {
    if (newid[q] < 0) {
      newid[q] = static_cast<int>(order.size());
      order.push_back(q);
    }
  };
  visit(m.identity);
  std::vector<const Triple*> sorted;
  for (const auto& t : tri) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(),
            [](const Triple* a, const Triple* b) { return a->dom < b->dom; });
  for (const Triple* t : sorted) visit(t->state);
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int letter = 0; letter < m.alphabet; ++letter) visit(m.next[order[i]][letter]);

  TailMachine r;
  r.alphabet = m.alphabet;
  r.identity = 0;
  r.next.assign(order.size(), std::vector<int>(m.alphabet));
  r.out.assign(order.size(), std::vector<int>(m.alphabet));
  r.names.resize(order.size());
  for (std::size_t q = 0; q < order.size(); ++q) {
    for (int i = 0; i < m.alphabet; ++i) {
      r.next[q][i] = newid[m.next[order[q]][i]];
      r.out[q][i] = m.out[order[q]][i];
    }
    r.names[q] = "q" + std::to_string(q);
  }
  for (auto& t : tri) t.state = newid[t.state];
  m = std::move(r);
}

} // namespace

AlmostAuto AlmostAuto::identity(const Signature& sig) {
  LeafSet base = LeafSet::base(sig);
  std::vector<int> image(base.size()), tails(base.size(), 0);
  std::iota(image.begin(), image.end(), 0);
  return AlmostAuto(sig, base, base, std::move(image), std::move(tails),
                    TailMachine::identity_machine(sig.d));
}

AlmostAuto AlmostAuto::prefix_exchange(LeafSet dom, LeafSet ran, std::vector<int> image) {
  Signature sig = dom.sig();
  std::vector<int> tails(dom.size(), 0);
  return make(std::move(dom), std::move(ran), std::move(image), std::move(tails),
              TailMachine::identity_machine(sig.d));
}

AlmostAuto AlmostAuto::make(LeafSet dom, LeafSet ran, std::vector<int> image,
                            std::vector<int> tails, TailMachine machine) {
  if (!(dom.sig() == ran.sig()))
    fail(Errc::signature_mismatch, "domain and range have different signatures");
  if (dom.size() != ran.size() || image.size() != dom.size() || tails.size() != dom.size())
    fail(Errc::bad_input, "leaf data sizes disagree");
  machine.validate();
  if (machine.alphabet != dom.sig().d)
    fail(Errc::bad_input, "machine alphabet does not match the signature");
  std::vector<bool> hit(ran.size(), false);
  for (int ix : image) {
    if (ix < 0 || static_cast<std::size_t>(ix) >= ran.size() || hit[ix])
      fail(Errc::bad_input, "leaf map is not a bijection");
    hit[ix] = true;
  }
  for (int q : tails)
    if (q < 0 || q >= machine.num_states()) fail(Errc::bad_input, "tail state out of range");
  return AlmostAuto(dom.sig(), std::move(dom), std::move(ran), std::move(image),
                    std::move(tails), std::move(machine));
}

AlmostAuto AlmostAuto::cylinder_swap(const Signature& sig, const Address& a, const Address& b,
                                     const Config& cfg) {
  if (a.comparable(b)) fail(Errc::bad_input, "swap requires disjoint cylinders");
  LeafSet dom = complete_around(sig, {a, b}, cfg);
  std::vector<int> image(dom.size());
  std::iota(image.begin(), image.end(), 0);
  std::swap(image[dom.index_of(a)], image[dom.index_of(b)]);
  return prefix_exchange(dom, dom, std::move(image));
}

AlmostAuto AlmostAuto::root_permutation(const Signature& sig, const std::vector<int>& pi) {
  if (static_cast<int>(pi.size()) != sig.k)
    fail(Errc::bad_input, "root permutation must have k entries");
  LeafSet base = LeafSet::base(sig);
  std::vector<int> image(pi.begin(), pi.end());
  return prefix_exchange(base, base, std::move(image));
}

AlmostAuto AlmostAuto::child_permutation(const Signature& sig, const Address& v,
                                         const std::vector<int>& pi, const Config& cfg) {
  if (v.is_root()) fail(Errc::bad_input, "use root_permutation at the root");
  if (static_cast<int>(pi.size()) != sig.d)
    fail(Errc::bad_input, "child permutation must have d entries");
  LeafSet dom = complete_around(sig, {v}, cfg).expanded(v, cfg);
  std::vector<int> image(dom.size());
  std::iota(image.begin(), image.end(), 0);
  int first = dom.index_of(v.child(0));
  for (int i = 0; i < sig.d; ++i) image[first + i] = first + pi[i];
  return prefix_exchange(dom, dom, std::move(image));
}

LeafSet complete_around(const Signature& sig, const std::vector<Address>& targets,
                        const Config& cfg) {
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i].is_root() || !targets[i].valid_for(sig))
      fail(Errc::bad_input, "target must be a non-root vertex of the tree");
    for (std::size_t j = i + 1; j < targets.size(); ++j)
      if (targets[i].comparable(targets[j]))
        fail(Errc::bad_input, "targets must be pairwise incomparable");
  }
  LeafSet cur = LeafSet::base(sig);
  bool grew = true;
  while (grew) {
    grew = false;
    for (const auto& leaf : cur.leaves()) {
      bool above = std::any_of(targets.begin(), targets.end(), [&](const Address& t) {
        return leaf.is_strict_prefix_of(t);
      });
      if (above) {
        cur = cur.expanded(leaf, cfg);
        grew = true;
        break;
      }
    }
  }
  return cur;
}

AlmostAuto refine_dom_to(const AlmostAuto& g, const LeafSet& target, const Config& cfg) {
  auto tri = expand_until(
      g, [&](const Triple& t) { return target.index_of(t.dom) >= 0; }, cfg);
  return from_triples(g.sig(), std::move(tri), g.machine());
}

AlmostAuto refine_ran_to(const AlmostAuto& g, const LeafSet& target, const Config& cfg) {
  auto tri = expand_until(
      g, [&](const Triple& t) { return target.index_of(t.ran) >= 0; }, cfg);
  return from_triples(g.sig(), std::move(tri), g.machine());
}

AlmostAuto compose(const AlmostAuto& g, const AlmostAuto& h, const Config& cfg) {
  if (!(g.sig() == h.sig())) fail(Errc::signature_mismatch, "composing across signatures");
  LeafSet mid = common_refinement(h.ran(), g.dom());
  AlmostAuto h2 = refine_ran_to(h, mid, cfg);
  AlmostAuto g2 = refine_dom_to(g, mid, cfg);

  const TailMachine& A = g2.machine();
  const TailMachine& B = h2.machine();

  // product machine over reachable state pairs; pair (a, b) first feeds the
  // letter through b, then through a
  std::map<std::pair<int, int>, int> pair_id;
  std::vector<std::pair<int, int>> pairs;
  auto intern = [&](int a, int b) {
    auto [it, fresh] = pair_id.try_emplace({a, b}, static_cast<int>(pairs.size()));
    if (fresh) pairs.push_back({a, b});
    return it->second;
  };
  intern(A.identity, B.identity);

  std::vector<Triple> tri;
  tri.reserve(h2.dom().size());
  for (std::size_t i = 0; i < h2.dom().size(); ++i) {
    const Address& r = h2.image_of_leaf(i);
    int j = g2.dom().index_of(r);
    tri.push_back({h2.dom().leaf(i), g2.image_of_leaf(static_cast<std::size_t>(j)),
                   intern(g2.tails()[static_cast<std::size_t>(j)], h2.tails()[i])});
  }

  TailMachine prod;
  prod.alphabet = g.sig().d;
  prod.identity = 0;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    auto [a, b] = pairs[p];
    std::vector<int> nrow(prod.alphabet), orow(prod.alphabet);
    for (int i = 0; i < prod.alphabet; ++i) {
      int mid_letter = B.out[b][i];
      orow[i] = A.out[a][mid_letter];
      nrow[i] = intern(A.next[a][mid_letter], B.next[b][i]);
    }
    prod.next.push_back(std::move(nrow));
    prod.out.push_back(std::move(orow));
  }
  prod.names.resize(pairs.size());
  for (std::size_t p = 0; p < pairs.size(); ++p) prod.names[p] = "q" + std::to_string(p);

  // keep the representation small: merge equal-behavior states and drop
  // unreachable ones
  auto minz = machine_minimize(prod);
  for (auto& t : tri) t.state = minz.relabel[t.state];
  TailMachine m = std::move(minz.machine);
  tidy_machine(tri, m);
  return from_triples(g.sig(), std::move(tri), std::move(m));
}

AlmostAuto inverse(const AlmostAuto& g) {
  std::vector<Triple> tri;
  tri.reserve(g.dom().size());
  for (std::size_t i = 0; i < g.dom().size(); ++i)
    tri.push_back({g.image_of_leaf(i), g.dom().leaf(i), g.tails()[i]});
  return from_triples(g.sig(), std::move(tri), inverse_machine(g.machine()));
}

bool is_identity(const AlmostAuto& g) {
  auto idq = identity_equivalent(g.machine());
  for (std::size_t i = 0; i < g.dom().size(); ++i) {
    if (!(g.dom().leaf(i) == g.image_of_leaf(i))) return false;
    if (!idq[static_cast<std::size_t>(g.tails()[i])]) return false;
  }
  return true;
}

bool equal(const AlmostAuto& g, const AlmostAuto& h, const Config& cfg) {
  if (!(g.sig() == h.sig())) fail(Errc::signature_mismatch, "comparing across signatures");
  return is_identity(compose(g, inverse(h), cfg));
}

AlmostAuto canonical_form(const AlmostAuto& g, const Config& cfg) {
  (void)cfg;
  auto minz = machine_minimize(g.machine());
  TailMachine m = std::move(minz.machine);
  auto tri = triples_of(g);
  for (auto& t : tri) t.state = minz.relabel[t.state];

  // Collapse sibling families v·0..v·(d-1) whose images and states agree with
  // one machine state below a common parent; deepest families first.
  const int d = g.sig().d;
  bool changed = true;
  while (changed) {
    changed = false;
    std::sort(tri.begin(), tri.end(), [](const Triple& a, const Triple& b) {
      if (a.dom.depth() != b.dom.depth()) return a.dom.depth() > b.dom.depth();
      return a.dom < b.dom;
    });
    for (std::size_t i = 0; i + static_cast<std::size_t>(d) <= tri.size() && !changed; ++i) {
      if (tri[i].dom.depth() < 2) break;  // root children never collapse
      if (tri[i].dom.digits().back() != 0) continue;
      Address parent = tri[i].dom.parent();
      bool family = true;
      for (int s = 0; s < d; ++s)
        if (!(tri[i + static_cast<std::size_t>(s)].dom == parent.child(s))) family = false;
      if (!family) continue;
      if (tri[i].ran.is_root()) continue;
      Address target = tri[i].ran.parent();
      if (target.is_root()) continue;  // range leaves must stay below the root
      for (int q = 0; q < m.num_states() && !changed; ++q) {
        bool ok = true;
        for (int s = 0; s < d && ok; ++s) {
          const Triple& t = tri[i + static_cast<std::size_t>(s)];
          if (!(t.ran == target.child(m.out[q][s])) || t.state != m.next[q][s]) ok = false;
        }
        if (!ok) continue;
        tri.erase(tri.begin() + static_cast<std::ptrdiff_t>(i),
                  tri.begin() + static_cast<std::ptrdiff_t>(i) + d);
        tri.push_back({parent, target, q});
        changed = true;
      }
    }
  }

  tidy_machine(tri, m);
  return from_triples(g.sig(), std::move(tri), std::move(m));
}

std::pair<Address, int> apply_to_prefix(const AlmostAuto& g, const Address& w) {
  if (!w.valid_for(g.sig())) fail(Errc::bad_input, "address invalid for the signature");
  int i = g.dom().index_of_prefix_leaf(w);
  if (i < 0) fail(Errc::prefix_too_short, "address stops above the domain leaves");
  const Address& leaf = g.dom().leaf(static_cast<std::size_t>(i));
  auto [word, state] = g.machine().run(g.tails()[static_cast<std::size_t>(i)],
                                       w.suffix(leaf.depth()));
  return {g.image_of_leaf(static_cast<std::size_t>(i)).extended(word), state};
}

Clopen support(const AlmostAuto& g) {
  const TailMachine& m = g.machine();
  auto idq = identity_equivalent(m);

  // moved suffix cylinders below a live state; a live state revisited along a
  // letter-fixing path pins a boundary point of the moved set, so the whole
  // cylinder at the revisit enters the closure
  std::vector<std::vector<int>> words;
  std::vector<int> prefix;
  std::vector<int> path;
  std::function<void(int)> rec = [&](int q) {
    for (int i = 0; i < m.alphabet; ++i) {
      if (m.out[q][i] != i) {
        prefix.push_back(i);
        words.push_back(prefix);
        prefix.pop_back();
        continue;
      }
      int q2 = m.next[q][i];
      if (idq[static_cast<std::size_t>(q2)]) continue;
      prefix.push_back(i);
      if (std::find(path.begin(), path.end(), q2) != path.end()) {
        words.push_back(prefix);
      } else {
        path.push_back(q2);
        rec(q2);
        path.pop_back();
      }
      prefix.pop_back();
    }
  };

  std::vector<Address> cylinders;
  for (std::size_t i = 0; i < g.dom().size(); ++i) {
    const Address& leaf = g.dom().leaf(i);
    const Address& img = g.image_of_leaf(i);
    if (!(leaf == img)) {
      cylinders.push_back(leaf);
      continue;
    }
    int q = g.tails()[i];
    if (idq[static_cast<std::size_t>(q)]) continue;
    words.clear();
    prefix.clear();
    path.assign(1, q);
    rec(q);
    for (const auto& w : words) cylinders.push_back(leaf.extended(w));
  }
  return Clopen::from_cylinders(g.sig(), std::move(cylinders));
}

bool is_level_preserving(const AlmostAuto& g) {
  for (std::size_t i = 0; i < g.dom().size(); ++i)
    if (g.dom().leaf(i).depth() != g.image_of_leaf(i).depth()) return false;
  return true;
}

bool rist_member(const AlmostAuto& g, const Clopen& alpha) {
  if (!(g.sig() == alpha.sig())) fail(Errc::signature_mismatch, "clopen of wrong signature");
  return alpha.contains(support(g));
}

bool in_thompson_f(const AlmostAuto& g) {
  auto idq = identity_equivalent(g.machine());
  for (int q : g.tails())
    if (!idq[static_cast<std::size_t>(q)]) return false;
  for (std::size_t i = 1; i < g.image().size(); ++i)
    if (g.image()[i] <= g.image()[i - 1]) return false;
  return true;
}

tree::Signature RistRelabeling::target_sig() const {
  if (nonstandard)
    fail(Errc::bad_input, "target tree has a single root child; no valid signature");
  return Signature(target_d, target_k);
}

Address RistRelabeling::to_target(const Address& a) const {
  for (std::size_t i = 0; i < cylinders.size(); ++i)
    if (cylinders[i].is_prefix_of(a)) {
      std::vector<int> digits{static_cast<int>(i)};
      auto suffix = a.suffix(cylinders[i].depth());
      digits.insert(digits.end(), suffix.begin(), suffix.end());
      return Address(std::move(digits));
    }
  fail(Errc::bad_input, "address lies outside the relabeled clopen set");
}

Address RistRelabeling::to_source(const Address& a) const {
  if (a.is_root()) fail(Errc::bad_input, "the target root has no source address");
  std::size_t i = static_cast<std::size_t>(a[0]);
  if (i >= cylinders.size()) fail(Errc::bad_input, "target root child out of range");
  return cylinders[i].extended(a.suffix(1));
}

RistRelabeling relabel_rist(const Clopen& alpha) {
  if (alpha.empty()) fail(Errc::empty_clopen, "cannot relabel the empty set");
  RistRelabeling rel;
  rel.source_sig = alpha.sig();
  rel.target_d = alpha.sig().d;
  if (alpha.is_whole()) {
    for (int i = 0; i < alpha.sig().k; ++i) rel.cylinders.push_back(Address({i}));
  } else {
    rel.cylinders = alpha.cylinders();
  }
  rel.target_k = static_cast<int>(rel.cylinders.size());
  rel.nonstandard = rel.target_k < 2;
  return rel;
}

AlmostAuto RistRelabeling::transport(const AlmostAuto& g, const Config& cfg) const {
  Signature target = target_sig();
  Clopen alpha = Clopen::from_cylinders(source_sig, cylinders);
  if (!rist_member(g, alpha))
    fail(Errc::bad_input, "element is not supported inside the clopen set");

  // split until every domain leaf and its image are inside one cylinder or
  // disjoint from the set
  auto inside_or_outside = [&](const Address& a) {
    for (const auto& c : cylinders)
      if (c.is_prefix_of(a)) return true;
    return std::none_of(cylinders.begin(), cylinders.end(),
                        [&](const Address& c) { return a.is_strict_prefix_of(c); });
  };
  const TailMachine& m = g.machine();
  std::vector<Triple> src;
  {
    std::vector<Triple> stack = triples_of(g);
    while (!stack.empty()) {
      Triple t = std::move(stack.back());
      stack.pop_back();
      if (inside_or_outside(t.dom) && inside_or_outside(t.ran)) {
        src.push_back(std::move(t));
        continue;
      }
      if (t.dom.depth() >= cfg.depth_limit)
        fail(Errc::depth_limit, "splitting exceeded the depth limit");
      for (int i = 0; i < m.alphabet; ++i)
        stack.push_back({t.dom.child(i), t.ran.child(m.out[t.state][i]), m.next[t.state][i]});
    }
  }

  std::vector<Triple> tri;
  for (const auto& t : src) {
    bool inside = std::any_of(cylinders.begin(), cylinders.end(),
                              [&](const Address& c) { return c.is_prefix_of(t.dom); });
    if (!inside) continue;  // identity outside the set
    tri.push_back({to_target(t.dom), to_target(t.ran), t.state});
  }
  return from_triples(target, std::move(tri), g.machine());
}

AlmostAuto RistRelabeling::transport_back(const AlmostAuto& g, const Config& cfg) const {
  if (!(g.sig() == target_sig()))
    fail(Errc::signature_mismatch, "element does not live on the target tree");

  std::vector<Triple> tri;
  for (std::size_t i = 0; i < g.dom().size(); ++i)
    tri.push_back({to_source(g.dom().leaf(i)), to_source(g.image_of_leaf(i)), g.tails()[i]});

  // identity on the complement of the clopen set
  LeafSet around = complete_around(source_sig, cylinders, cfg);
  for (const auto& leaf : around.leaves()) {
    bool in_set = std::any_of(cylinders.begin(), cylinders.end(),
                              [&](const Address& c) { return c.is_prefix_of(leaf); });
    if (!in_set) tri.push_back({leaf, leaf, g.machine().identity});
  }
  return from_triples(source_sig, std::move(tri), g.machine());
}

} // namespace neretin::aa
