#include "neretin/subgroup_enum.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <unordered_set>

namespace neretin::perm {

namespace {

// Dense multiplication table over all n! elements, degree <= 6.
struct SymTable {
  unsigned degree;
  std::vector<std::vector<unsigned>> perms;  // index -> image table
  std::vector<std::vector<std::uint16_t>> mul;
  std::uint16_t id_index = 0;

  explicit SymTable(unsigned n) : degree(n) {
    std::vector<unsigned> p(n);
    std::iota(p.begin(), p.end(), 0u);
    do {
      perms.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    std::sort(perms.begin(), perms.end());
    // identity sorts first
    id_index = 0;

    std::uint64_t total = perms.size();
    mul.assign(total, std::vector<std::uint16_t>(total));
    auto index_of = [&](const std::vector<unsigned>& q) {
      return static_cast<std::uint16_t>(
          std::lower_bound(perms.begin(), perms.end(), q) - perms.begin());
    };
    std::vector<unsigned> r(n);
    for (std::uint64_t a = 0; a < total; ++a)
      for (std::uint64_t b = 0; b < total; ++b) {
        for (unsigned x = 0; x < n; ++x) r[x] = perms[a][perms[b][x]];
        mul[a][b] = index_of(r);
      }
  }
};

struct VecHash {
  std::size_t operator()(const std::vector<std::uint16_t>& v) const {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= x;
      h *= 1099511628211ull;
    }
    return h;
  }
};

// Closure of a generator list (as element indices) under the table.
std::vector<std::uint16_t> close_over(const SymTable& tab,
                                      const std::vector<std::uint16_t>& gens) {
  std::vector<bool> in(tab.perms.size(), false);
  std::vector<std::uint16_t> list{tab.id_index};
  in[tab.id_index] = true;
  for (std::size_t i = 0; i < list.size(); ++i)
    for (auto g : gens) {
      std::uint16_t prod = tab.mul[list[i]][g];
      if (!in[prod]) {
        in[prod] = true;
        list.push_back(prod);
      }
    }
  std::sort(list.begin(), list.end());
  return list;
}

} // namespace

std::vector<PermGroup> enumerate_subgroups_small(unsigned n, unsigned hard_cap) {
  if (n == 0 || n > hard_cap)
    fail(Errc::degree_too_large, "subgroup enumeration capped at degree " +
                                     std::to_string(hard_cap));
  SymTable tab(n);
  const std::size_t total = tab.perms.size();

  struct Node {
    std::vector<std::uint16_t> elements;  // sorted
    std::vector<std::uint16_t> gens;
  };

  std::unordered_set<std::vector<std::uint16_t>, VecHash> seen;
  std::vector<Node> nodes;

  nodes.push_back({{tab.id_index}, {}});
  seen.insert(nodes[0].elements);

  for (std::size_t i = 0; i < nodes.size(); ++i) {
    // Extending by g and by any element of the coset H·g (or g·H) yields the
    // same subgroup, so one representative per marked coset suffices.
    std::vector<bool> covered(total, false);
    for (auto h : nodes[i].elements) covered[h] = true;
    const Node node = nodes[i];  // nodes may reallocate below
    for (std::uint16_t g = 0; g < total; ++g) {
      if (covered[g]) continue;
      for (auto h : node.elements) {
        covered[tab.mul[h][g]] = true;
        covered[tab.mul[g][h]] = true;
      }
      auto gens = node.gens;
      gens.push_back(g);
      auto closure = close_over(tab, gens);
      if (seen.insert(closure).second) nodes.push_back({std::move(closure), std::move(gens)});
    }
  }

  std::sort(nodes.begin(), nodes.end(), [](const Node& a, const Node& b) {
    if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
    return a.elements < b.elements;
  });

  std::vector<PermGroup> out;
  out.reserve(nodes.size());
  for (const auto& node : nodes) {
    std::vector<Permutation> gens;
    for (auto gi : node.gens) gens.emplace_back(tab.perms[gi]);
    out.emplace_back(n, std::move(gens));
  }
  return out;
}

} // namespace neretin::perm
