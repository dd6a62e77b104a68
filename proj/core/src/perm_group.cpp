#include "neretin/perm_group.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace neretin::perm {

PermGroup::PermGroup(unsigned degree, std::vector<Permutation> generators,
                     std::vector<unsigned> forced_base)
    : degree_(degree) {
  for (const auto& g : generators) {
    if (g.degree() != degree_) fail(Errc::degree_mismatch, "generator of wrong degree");
    if (!g.is_identity()) gens_.push_back(g);
  }
  schreier_sims(std::move(forced_base));
}

PermGroup PermGroup::symmetric(unsigned degree) {
  std::vector<Permutation> gens;
  if (degree >= 2) gens.push_back(Permutation::transposition(degree, 0, 1));
  if (degree >= 3) {
    std::vector<unsigned> all(degree);
    std::iota(all.begin(), all.end(), 0u);
    gens.push_back(Permutation::cycle(degree, all));
  }
  return PermGroup(degree, std::move(gens));
}

PermGroup PermGroup::alternating(unsigned degree) {
  std::vector<Permutation> gens;
  for (unsigned x = 2; x < degree; ++x)
    gens.push_back(Permutation::cycle(degree, {0, 1, x}));
  return PermGroup(degree, std::move(gens));
}

void PermGroup::recompute_orbit(ChainLevel& lvl) const {
  lvl.orbit.clear();
  lvl.orbit_pos.assign(degree_, -1);
  lvl.transversal.clear();
  lvl.orbit.push_back(lvl.base_point);
  lvl.orbit_pos[lvl.base_point] = 0;
  lvl.transversal.push_back(Permutation::identity(degree_));
  for (std::size_t i = 0; i < lvl.orbit.size(); ++i) {
    unsigned pt = lvl.orbit[i];
    for (const auto& s : lvl.gens) {
      unsigned img = s(pt);
      if (lvl.orbit_pos[img] < 0) {
        lvl.orbit_pos[img] = static_cast<int>(lvl.orbit.size());
        lvl.orbit.push_back(img);
        lvl.transversal.push_back(s * lvl.transversal[i]);
      }
    }
  }
}

std::pair<Permutation, std::size_t> PermGroup::strip(Permutation g, std::size_t from) const {
  for (std::size_t i = from; i < chain_.size(); ++i) {
    unsigned img = g(chain_[i].base_point);
    int pos = chain_[i].orbit_pos[img];
    if (pos < 0) return {std::move(g), i};
    g = chain_[i].transversal[pos].inverse() * g;
  }
  return {std::move(g), chain_.size()};
}

void PermGroup::schreier_sims(std::vector<unsigned> forced_base) {
  chain_.clear();
  for (unsigned b : forced_base) {
    if (b >= degree_) fail(Errc::bad_input, "base point out of range");
    ChainLevel lvl;
    lvl.base_point = b;
    chain_.push_back(std::move(lvl));
  }

  // Distribute each generator to every level it stabilizes into.
  for (const auto& g : gens_) {
    std::size_t j = 0;
    while (j < chain_.size() && g(chain_[j].base_point) == chain_[j].base_point) ++j;
    if (j == chain_.size()) {
      if (g.is_identity()) continue;
      ChainLevel lvl;
      lvl.base_point = g.moved_points().front();
      chain_.push_back(std::move(lvl));
    }
    for (std::size_t l = 0; l <= j && l < chain_.size(); ++l) chain_[l].gens.push_back(g);
  }

  for (auto& lvl : chain_) recompute_orbit(lvl);

  // Bottom-up verification: every Schreier generator of level i must sift to
  // the identity through the lower levels; failures extend the chain.
  if (!chain_.empty()) {
    std::size_t i = chain_.size() - 1;
    while (true) {
      bool complete = true;
      for (std::size_t oi = 0; oi < chain_[i].orbit.size() && complete; ++oi) {
        for (const auto& g : chain_[i].gens) {
          unsigned pt = chain_[i].orbit[oi];
          int ipos = chain_[i].orbit_pos[g(pt)];
          Permutation schreier =
              chain_[i].transversal[ipos].inverse() * g * chain_[i].transversal[oi];
          if (schreier.is_identity()) continue;
          auto [residue, j] = strip(std::move(schreier), i + 1);
          if (residue.is_identity()) continue;
          if (j == chain_.size()) {
            ChainLevel lvl;
            lvl.base_point = residue.moved_points().front();
            chain_.push_back(std::move(lvl));
          }
          for (std::size_t l = i + 1; l <= j; ++l) {
            chain_[l].gens.push_back(residue);
            recompute_orbit(chain_[l]);
          }
          i = j;
          complete = false;
          break;
        }
      }
      if (complete) {
        if (i == 0) break;
        --i;
      }
    }
  }

  order_ = 1;
  for (const auto& lvl : chain_) order_ *= static_cast<unsigned>(lvl.orbit.size());
}

std::vector<Permutation> PermGroup::strong_generators() const {
  std::vector<Permutation> out;
  for (const auto& lvl : chain_)
    for (const auto& g : lvl.gens)
      if (std::find(out.begin(), out.end(), g) == out.end()) out.push_back(g);
  return out;
}

std::vector<unsigned> PermGroup::base() const {
  std::vector<unsigned> b;
  b.reserve(chain_.size());
  for (const auto& lvl : chain_) b.push_back(lvl.base_point);
  return b;
}

bool PermGroup::contains(const Permutation& g) const {
  if (g.degree() != degree_) fail(Errc::degree_mismatch, "membership test at wrong degree");
  auto [residue, level] = strip(g, 0);
  return level == chain_.size() && residue.is_identity();
}

std::vector<unsigned> PermGroup::orbit_of(unsigned point) const {
  auto parts = point_orbits(degree_, gens_);
  for (auto& p : parts)
    if (std::find(p.begin(), p.end(), point) != p.end()) return p;
  return {point};
}

std::vector<std::vector<unsigned>> PermGroup::orbits() const {
  return point_orbits(degree_, gens_);
}

bool PermGroup::is_transitive() const { return orbits().size() == 1; }

Permutation PermGroup::random_element(std::mt19937_64& rng) const {
  Permutation g = Permutation::identity(degree_);
  for (const auto& lvl : chain_) {
    std::uniform_int_distribution<std::size_t> pick(0, lvl.transversal.size() - 1);
    g = g * lvl.transversal[pick(rng)];
  }
  return g;
}

void PermGroup::for_each_element(const std::function<bool(const Permutation&)>& visit,
                                 std::uint64_t cap) const {
  if (order_ > cap) fail(Errc::resource_exhausted, "group too large to enumerate");
  bool stop = false;
  std::function<void(std::size_t, const Permutation&)> rec =
      [&](std::size_t level, const Permutation& partial) {
        if (stop) return;
        if (level == chain_.size()) {
          if (!visit(partial)) stop = true;
          return;
        }
        for (const auto& t : chain_[level].transversal) {
          rec(level + 1, partial * t);
          if (stop) return;
        }
      };
  rec(0, Permutation::identity(degree_));
}

std::vector<Permutation> PermGroup::elements(std::uint64_t cap) const {
  std::vector<Permutation> out;
  for_each_element(
      [&](const Permutation& g) {
        out.push_back(g);
        return true;
      },
      cap);
  return out;
}

std::vector<std::vector<unsigned>> point_orbits(unsigned degree,
                                                const std::vector<Permutation>& gens) {
  std::vector<int> id(degree, -1);
  std::vector<std::vector<unsigned>> orbits;
  for (unsigned start = 0; start < degree; ++start) {
    if (id[start] >= 0) continue;
    int oid = static_cast<int>(orbits.size());
    orbits.push_back({start});
    id[start] = oid;
    for (std::size_t i = 0; i < orbits[oid].size(); ++i) {
      unsigned pt = orbits[oid][i];
      for (const auto& g : gens) {
        unsigned img = g(pt);
        if (id[img] < 0) {
          id[img] = oid;
          orbits[oid].push_back(img);
        }
      }
    }
    std::sort(orbits[oid].begin(), orbits[oid].end());
  }
  return orbits;
}

std::vector<TupleOrbit> orbits_on_tuples(const PermGroup& g, unsigned t) {
  if (t == 0 || t > g.degree())
    fail(Errc::tuple_arity_too_large, "tuple arity must be in [1, degree]");
  std::uint64_t total = 1;
  for (unsigned i = 0; i < t; ++i) {
    total *= (g.degree() - i);
    if (total > 10000000ull)
      fail(Errc::resource_exhausted, "too many distinct tuples to enumerate");
  }

  const auto gens = g.generators();
  std::map<std::vector<unsigned>, bool> seen;
  std::vector<TupleOrbit> out;

  // enumerate all t-tuples of distinct points in lexicographic order
  std::vector<unsigned> tup(t, 0);
  std::function<void(unsigned)> next = [&](unsigned pos) {
    if (pos == t) {
      if (seen.count(tup)) return;
      // BFS over the orbit of this representative
      TupleOrbit orb;
      orb.representative = tup;
      std::vector<std::vector<unsigned>> queue{tup};
      seen[tup] = true;
      for (std::size_t i = 0; i < queue.size(); ++i) {
        for (const auto& s : gens) {
          std::vector<unsigned> img(t);
          for (unsigned j = 0; j < t; ++j) img[j] = s(queue[i][j]);
          if (!seen.count(img)) {
            seen[img] = true;
            queue.push_back(img);
          }
        }
      }
      orb.size = queue.size();
      out.push_back(std::move(orb));
      return;
    }
    for (unsigned v = 0; v < g.degree(); ++v) {
      bool dup = false;
      for (unsigned j = 0; j < pos; ++j)
        if (tup[j] == v) dup = true;
      if (dup) continue;
      tup[pos] = v;
      next(pos + 1);
    }
  };
  next(0);
  return out;
}

} // namespace neretin::perm
