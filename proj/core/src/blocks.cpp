#include "neretin/blocks.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace neretin::perm {

namespace {

struct UnionFind {
  std::vector<unsigned> parent;
  explicit UnionFind(unsigned n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  unsigned find(unsigned x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  bool unite(unsigned a, unsigned b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (a > b) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::vector<std::vector<unsigned>> classes_of(UnionFind& uf, unsigned n) {
  std::vector<std::vector<unsigned>> by_root(n);
  for (unsigned x = 0; x < n; ++x) by_root[uf.find(x)].push_back(x);
  std::vector<std::vector<unsigned>> out;
  for (auto& c : by_root)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

// true iff p refines q (every cell of p inside a cell of q)
bool refines(const std::vector<std::vector<unsigned>>& p,
             const std::vector<std::vector<unsigned>>& q, unsigned n) {
  std::vector<int> qcell(n, -1);
  for (std::size_t i = 0; i < q.size(); ++i)
    for (unsigned x : q[i]) qcell[x] = static_cast<int>(i);
  for (const auto& cell : p) {
    int target = qcell[cell.front()];
    for (unsigned x : cell)
      if (qcell[x] != target) return false;
  }
  return true;
}

} // namespace

std::vector<std::vector<unsigned>> finest_congruence(const PermGroup& g, unsigned a, unsigned b) {
  const unsigned n = g.degree();
  UnionFind uf(n);
  std::vector<std::pair<unsigned, unsigned>> queue{{a, b}};
  uf.unite(a, b);
  while (!queue.empty()) {
    auto [x, y] = queue.back();
    queue.pop_back();
    for (const auto& s : g.generators()) {
      unsigned sx = s(x), sy = s(y);
      if (uf.unite(sx, sy)) queue.push_back({sx, sy});
    }
  }
  return classes_of(uf, n);
}

std::vector<BlockSystem> minimal_blocks(const PermGroup& g) {
  if (!g.is_transitive()) fail(Errc::not_transitive, "block systems need a transitive group");
  const unsigned n = g.degree();

  std::vector<std::vector<std::vector<unsigned>>> candidates;
  for (unsigned b = 1; b < n; ++b) {
    auto part = finest_congruence(g, 0, b);
    if (part.size() <= 1) continue;  // merged everything: no proper system through (0, b)
    if (std::find(candidates.begin(), candidates.end(), part) == candidates.end())
      candidates.push_back(std::move(part));
  }

  // Every minimal nontrivial system is the finest congruence through some pair
  // (0, b), so the minimal candidates under refinement are exactly the answer.
  std::vector<BlockSystem> out;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    bool minimal = true;
    for (std::size_t j = 0; j < candidates.size() && minimal; ++j)
      if (i != j && refines(candidates[j], candidates[i], n)) minimal = false;
    if (minimal) {
      BlockSystem bs;
      bs.degree = n;
      bs.blocks = candidates[i];
      out.push_back(std::move(bs));
    }
  }
  std::sort(out.begin(), out.end(),
            [](const BlockSystem& x, const BlockSystem& y) { return x.blocks < y.blocks; });
  return out;
}

bool is_primitive(const PermGroup& g) { return minimal_blocks(g).empty(); }

} // namespace neretin::perm
