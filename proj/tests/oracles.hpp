// Test-only oracles, independent of the implementation paths they check:
// brute-force closure enumeration, set-partition enumeration, explicit
// product listing, a prime sieve, and hand-built tail machines.

#ifndef NERETIN_TESTS_ORACLES_HPP
#define NERETIN_TESTS_ORACLES_HPP

#include <algorithm>
#include <set>
#include <vector>

#include "neretin/mealy.hpp"
#include "neretin/perm.hpp"

namespace oracles {

using neretin::perm::Permutation;

// Elements of <gens> by breadth-first closure; empty result when the closure
// exceeds cap (the caller must treat that as 'cannot verify').
inline std::vector<Permutation> closure_elements(unsigned degree,
                                                 const std::vector<Permutation>& gens,
                                                 std::size_t cap) {
  std::set<std::vector<unsigned>> seen;
  std::vector<Permutation> list{Permutation::identity(degree)};
  seen.insert(list[0].images());
  for (std::size_t i = 0; i < list.size(); ++i) {
    for (const auto& g : gens) {
      Permutation p = list[i] * g;
      if (seen.insert(p.images()).second) {
        if (list.size() >= cap) return {};
        list.push_back(std::move(p));
      }
    }
  }
  return list;
}

// All set partitions of {0..n-1} (restricted-growth strings).
inline std::vector<std::vector<std::vector<unsigned>>> all_partitions(unsigned n) {
  std::vector<std::vector<std::vector<unsigned>>> out;
  if (n == 0) return out;
  std::vector<unsigned> assign(n, 0);
  auto rec = [&](auto&& self, unsigned x, unsigned used) -> void {
    if (x == n) {
      std::vector<std::vector<unsigned>> part(used);
      for (unsigned y = 0; y < n; ++y) part[assign[y]].push_back(y);
      out.push_back(std::move(part));
      return;
    }
    for (unsigned c = 0; c <= used; ++c) {
      assign[x] = c;
      self(self, x + 1, std::max(used, c + 1));
    }
  };
  rec(rec, 1, 1);
  return out;
}

// Whether a partition is invariant under every generator (cells map onto cells).
inline bool partition_invariant(const std::vector<std::vector<unsigned>>& part,
                                const std::vector<Permutation>& gens, unsigned n) {
  std::vector<int> cell(n, -1);
  for (std::size_t c = 0; c < part.size(); ++c)
    for (unsigned x : part[c]) cell[x] = static_cast<int>(c);
  for (const auto& g : gens)
    for (const auto& cl : part) {
      int target = cell[g(cl[0])];
      for (unsigned x : cl)
        if (cell[g(x)] != target) return false;
    }
  return true;
}

// |AB| by explicit listing of all pairwise products.
inline std::size_t product_set_size(const std::vector<Permutation>& a,
                                    const std::vector<Permutation>& b) {
  std::set<std::vector<unsigned>> seen;
  for (const auto& x : a)
    for (const auto& y : b) seen.insert((x * y).images());
  return seen.size();
}

inline std::vector<bool> sieve(unsigned limit) {
  std::vector<bool> prime(limit + 1, true);
  if (limit >= 0) prime[0] = false;
  if (limit >= 1) prime[1] = false;
  for (unsigned p = 2; p * p <= limit; ++p)
    if (prime[p])
      for (unsigned q = p * p; q <= limit; q += p) prime[q] = false;
  return prime;
}

// The d-ary adding machine: one live state that increments the first letter
// and carries on the top letter.
inline neretin::aa::TailMachine odometer(int d) {
  neretin::aa::TailMachine m;
  m.alphabet = d;
  m.identity = 0;
  m.next.assign(2, std::vector<int>(d));
  m.out.assign(2, std::vector<int>(d));
  for (int i = 0; i < d; ++i) {
    m.next[0][i] = 0;
    m.out[0][i] = i;
    m.out[1][i] = (i + 1) % d;
    m.next[1][i] = (i == d - 1) ? 1 : 0;
  }
  m.names = {"e", "a"};
  m.validate();
  return m;
}

} // namespace oracles

#endif
