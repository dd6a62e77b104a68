#ifndef NERETIN_BACKTRACK_HPP
#define NERETIN_BACKTRACK_HPP

#include "neretin/perm_group.hpp"

namespace neretin::perm {

/// Exact intersection of two groups of the same degree, found by a backtrack
/// over A's stabilizer chain pruned by base images in B's rebased chain.
PermGroup subgroup_intersection(const PermGroup& a, const PermGroup& b,
                                const Config& cfg = default_config());

/// Normalizer N_G(H) by backtrack over G's chain. Requires H <= G.
PermGroup normalizer(const PermGroup& g, const PermGroup& h,
                     const Config& cfg = default_config());

/// Whether Sym(n) = AB as a product set, i.e. |A|·|B| = |A∩B|·n!.
bool product_covers(const PermGroup& a, const PermGroup& b,
                    const Config& cfg = default_config());

BigInt factorial(unsigned n);

} // namespace neretin::perm

#endif
