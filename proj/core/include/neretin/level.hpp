#ifndef NERETIN_LEVEL_HPP
#define NERETIN_LEVEL_HPP

#include <string>
#include <vector>

#include "neretin/almost_auto.hpp"
#include "neretin/sym_factor.hpp"

namespace neretin::level {

/// Depth-n leaves of the tree indexed lexicographically: the finite quotient
/// where level-preserving elements become permutations of k_n = k·d^(n-1)
/// points.
struct LevelContext {
  tree::Signature sig;
  int n = 1;
  tree::LeafSet ball;

  static LevelContext make(const tree::Signature& sig, int n,
                           const Config& cfg = default_config());

  unsigned leaf_count() const { return static_cast<unsigned>(ball.size()); }
  int index_of(const tree::Address& a) const;
  const tree::Address& address(unsigned i) const { return ball.leaf(i); }
};

/// The permutation of depth-n cylinders induced by a level-preserving element
/// whose canonical domain depth is at most n. Multiplicative in the element.
perm::Permutation level_quotient(const aa::AlmostAuto& g, const LevelContext& ctx,
                                 const Config& cfg = default_config());

/// Two leaf exchanges (adjacent transposition and full cycle of the depth-n
/// cylinders) whose quotient images generate the full symmetric group.
std::vector<aa::AlmostAuto> gens_sym_level(const LevelContext& ctx);

/// Generators of the rooted-tree automorphism group as seen at level n: the
/// root Sym(k) plus one Sym(d) at the first vertex of each depth below n.
std::vector<aa::AlmostAuto> gens_aut_ball(const LevelContext& ctx,
                                          const Config& cfg = default_config());

/// Level-n image of the ball-n0 subgroup: the full symmetric group on the
/// depth-n0 cylinders composed with the iterated wreath inside each of them.
/// Transitive, and imprimitive with the depth-n0 cylinders as blocks.
std::vector<perm::Permutation> gens_ball_image(const LevelContext& ctx, int n0,
                                               const Config& cfg = default_config());

/// Level-n image of the product, over the k root subtrees, of their
/// depth-preserving automorphism groups; the factors commute.
std::vector<perm::Permutation> gens_root_factors(const LevelContext& ctx,
                                                 const Config& cfg = default_config());

/// Generators of the full stabilizer in Sym(k_n) of one depth-n leaf.
std::vector<perm::Permutation> gens_end_stabilizer(const tree::Address& xi_prefix,
                                                   const LevelContext& ctx);

struct LevelGens {
  int n = 1;
  std::vector<perm::Permutation> generators;
};

struct LevelEntry {
  int n = 1;
  unsigned k_n = 0;
  perm::FactorizationVerdict verdict;
};

/// Per-level classification outcome across a contiguous level range:
/// full alternating content at every level certifies density; a consistent
/// chain of fixed leaves certifies an end stabilizer; anything else reports
/// the first failing level.
struct CocompactCertificate {
  enum class Kind { Dense, EndStabilizer, Inconclusive };
  tree::Signature sig;
  std::vector<LevelEntry> levels;
  Kind kind = Kind::Inconclusive;
  std::vector<tree::Address> chain;  // EndStabilizer: fixed leaf per level
  int failing_level = -1;            // Inconclusive
  std::string reason;

  std::string kind_name() const;
};

CocompactCertificate certify_cocompact(const tree::Signature& sig,
                                       const std::vector<LevelGens>& input,
                                       const Config& cfg = default_config());

} // namespace neretin::level

#endif
