#ifndef NERETIN_SYM_FACTOR_HPP
#define NERETIN_SYM_FACTOR_HPP

#include <optional>
#include <string>
#include <vector>

#include "neretin/perm_group.hpp"

namespace neretin::perm {

/// Outcome of the symmetric-group factorization dichotomy: a factor either
/// contains the full alternating group, or fixes a point and contains the
/// alternating group on the rest, or neither.
struct FactorizationVerdict {
  enum class Tag { ContainsAlt, FixesPointWithAltComplement, Neither };
  Tag tag = Tag::Neither;
  std::optional<unsigned> point;  // set for FixesPointWithAltComplement

  bool operator==(const FactorizationVerdict&) const = default;
  std::string name() const;
};

/// All primes p with lo <= p <= hi, ascending. Bounds are exact rationals.
std::vector<unsigned> primes_in_interval(const Rational& lo, const Rational& hi);

/// Whether the group contains Alt(omega) for a point set of size >= 3,
/// decided by membership of the 3-cycles (a b x) over fixed a, b.
bool contains_alt_on(const PermGroup& g, const std::vector<unsigned>& omega);

/// A group element acting as a single cycle of prime length `p`, fixing
/// everything else.
struct PrimeCycleWitness {
  unsigned p = 0;
  Permutation element;
};

/// Searches for an element acting as a single p-cycle with p prime and
/// p <= max_p. Scans strong generators, then seeded random elements within
/// cfg.witness_budget, then every element when the order is below
/// cfg.exhaustive_cap (making the search exact for small groups).
std::optional<PrimeCycleWitness> find_prime_cycle(const PermGroup& g, unsigned max_p,
                                                  const Config& cfg = default_config());

/// Like find_prime_cycle but for one exact prime length.
std::optional<Permutation> find_cycle_of_prime_length(const PermGroup& g, unsigned p,
                                                      const Config& cfg = default_config());

struct JordanReport {
  bool primitive = false;
  std::optional<PrimeCycleWitness> prime_cycle_witness;  // p <= degree - 3
  bool jordan_applies = false;
  bool contains_alt = false;
};

/// Checks a transitive group against the classical criterion: a primitive
/// group containing a prime cycle of order p <= degree-3 contains the full
/// alternating group.
JordanReport jordan_check(const PermGroup& g, const Config& cfg = default_config());

/// The dichotomy verdict for one factor. Ties between fixed points are broken
/// by the smallest one.
FactorizationVerdict classify_factorization(const PermGroup& b,
                                            const Config& cfg = default_config());

struct AltOmegaWitness {
  std::vector<unsigned> omega;  // union of the two supports, sorted
  Permutation p_cycle;
  Permutation q_cycle;
  unsigned p = 0, q = 0;
};

/// Finds elements acting as a p-cycle and a q-cycle for primes
/// p < q in [(n+1)/2, n] such that the union of supports has size >= n/2 + 4
/// and the group contains the alternating group on it.
/// Throws Errc::no_witness when the search budget is exhausted.
AltOmegaWitness alt_omega_witness(const PermGroup& b, const Config& cfg = default_config());

} // namespace neretin::perm

#endif
