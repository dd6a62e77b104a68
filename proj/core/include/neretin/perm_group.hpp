#ifndef NERETIN_PERM_GROUP_HPP
#define NERETIN_PERM_GROUP_HPP

#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "neretin/common.hpp"
#include "neretin/perm.hpp"

namespace neretin::perm {

/// One level of a stabilizer chain: the fundamental orbit of the base point
/// under the level generators, with an explicit transversal.
struct ChainLevel {
  unsigned base_point = 0;
  std::vector<Permutation> gens;
  std::vector<unsigned> orbit;            // discovery order, orbit[0] == base_point
  std::vector<int> orbit_pos;             // point -> index into orbit, -1 outside
  std::vector<Permutation> transversal;   // transversal[i](base_point) == orbit[i]
};

/// A finite permutation group held as generators plus a base and strong
/// generating set. Built once by the deterministic Schreier-Sims procedure;
/// immutable afterwards, safe for concurrent read-only queries.
class PermGroup {
public:
  /// bsgs_build. The optional base prefix forces the initial base points
  /// (used to align chains for backtrack intersection).
  explicit PermGroup(unsigned degree, std::vector<Permutation> generators = {},
                     std::vector<unsigned> forced_base = {});

  static PermGroup trivial(unsigned degree) { return PermGroup(degree); }
  static PermGroup symmetric(unsigned degree);
  static PermGroup alternating(unsigned degree);

  unsigned degree() const { return degree_; }
  const std::vector<Permutation>& generators() const { return gens_; }
  std::vector<Permutation> strong_generators() const;
  const std::vector<ChainLevel>& chain() const { return chain_; }
  std::vector<unsigned> base() const;

  const BigInt& order() const { return order_; }
  bool is_trivial() const { return order_ == 1; }

  /// Sound and complete membership test (sifting through the chain).
  bool contains(const Permutation& g) const;

  std::vector<unsigned> orbit_of(unsigned point) const;
  std::vector<std::vector<unsigned>> orbits() const;
  bool is_transitive() const;

  /// Uniformly random element (independent draws from each transversal).
  Permutation random_element(std::mt19937_64& rng) const;

  /// Visits every element exactly once; the callback returns false to stop.
  /// Throws Errc::resource_exhausted when the order exceeds `cap`.
  void for_each_element(const std::function<bool(const Permutation&)>& visit,
                        std::uint64_t cap) const;

  std::vector<Permutation> elements(std::uint64_t cap) const;

private:
  void schreier_sims(std::vector<unsigned> forced_base);
  void recompute_orbit(ChainLevel& lvl) const;
  // Sifts g through levels [from, end); returns the residue and the level reached.
  std::pair<Permutation, std::size_t> strip(Permutation g, std::size_t from) const;

  unsigned degree_;
  std::vector<Permutation> gens_;
  std::vector<ChainLevel> chain_;
  BigInt order_ = 1;
};

/// Orbit of ⟨gens⟩ on points, as a partition {orbit id per point, orbit list}.
std::vector<std::vector<unsigned>> point_orbits(unsigned degree,
                                                const std::vector<Permutation>& gens);

struct TupleOrbit {
  std::vector<unsigned> representative;
  std::uint64_t size = 0;
};

/// Orbits on t-tuples of distinct points. The action is t-transitive iff the
/// result has exactly one orbit.
std::vector<TupleOrbit> orbits_on_tuples(const PermGroup& g, unsigned t);

} // namespace neretin::perm

#endif
