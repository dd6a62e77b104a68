#ifndef NERETIN_MEASURE_HPP
#define NERETIN_MEASURE_HPP

#include <vector>

#include "neretin/level.hpp"

namespace neretin::measure {

/// An exact probability measure given by rational masses on a complete
/// antichain of cylinders.
struct CylinderMeasure {
  tree::LeafSet support;
  std::vector<Rational> mass;  // aligned with support leaves; sums to 1

  static CylinderMeasure uniform(const level::LevelContext& ctx);
  static CylinderMeasure make(tree::LeafSet support, std::vector<Rational> mass);

  const tree::Signature& sig() const { return support.sig(); }
  bool operator==(const CylinderMeasure& other) const;
};

/// Transports mass through an almost automorphism; total mass is preserved
/// exactly.
CylinderMeasure pushforward(const aa::AlmostAuto& g, const CylinderMeasure& mu,
                            const Config& cfg = default_config());

/// Exact mass mu(alpha).
Rational mass_in(const CylinderMeasure& mu, const tree::Clopen& alpha);

/// Refines mu so its support contains the given leaf set's cut of each branch
/// (mass splits uniformly over children).
CylinderMeasure refine_measure(const CylinderMeasure& mu, const tree::LeafSet& target,
                               const Config& cfg = default_config());

/// A leaf exchange whose iterates drive mass into the cylinder at the first
/// symbol of xi, together with the per-step decay factor of the outside mass
/// (1/d for the uniform measure).
struct Contractor {
  aa::AlmostAuto element;
  Rational outside_decay;
};

Contractor contractor_toward(const tree::Address& xi_prefix, const tree::Signature& sig,
                             const Config& cfg = default_config());

struct ProximalityTrace {
  std::vector<tree::Address> chain;    // nested target prefixes
  std::vector<Rational> mass_in_target;  // after each pushforward step
};

/// Iterates g on mu0 and records the mass inside the deepest chain prefix
/// after each step.
ProximalityTrace proximality_run(const aa::AlmostAuto& g, const CylinderMeasure& mu0,
                                 const std::vector<tree::Address>& chain, int steps,
                                 const Config& cfg = default_config());

/// The extreme invariant measures of a permutation action on depth-n leaves:
/// one orbit-uniform measure per orbit.
std::vector<CylinderMeasure> invariant_measures(const std::vector<perm::Permutation>& gens,
                                                const level::LevelContext& ctx);

struct Displacement {
  aa::AlmostAuto element;
  std::vector<tree::Clopen> neighbourhoods;  // beta_i around each point
  std::vector<tree::Address> landed;         // image prefix of each point
};

/// For ends x_i (prefix·000...) and pairwise disjoint clopen targets alpha_i,
/// builds a product of cylinder swaps, the i-th supported in alpha_i ∪ beta_i,
/// moving each x_i into alpha_i. The postconditions are re-verified by
/// evaluation before returning.
Displacement displace_points(const std::vector<tree::Address>& points,
                             const std::vector<tree::Clopen>& targets,
                             const Config& cfg = default_config());

/// The lexicographically least end of a nonempty clopen set, as a prefix
/// chain down to the depth cap. Every order-preserving leaf exchange
/// stabilizing the set fixes this end.
std::vector<tree::Address> least_end_chain(const tree::Clopen& alpha,
                                           const Config& cfg = default_config());

} // namespace neretin::measure

#endif
