#ifndef NERETIN_SUBGROUP_ENUM_HPP
#define NERETIN_SUBGROUP_ENUM_HPP

#include "neretin/perm_group.hpp"

namespace neretin::perm {

/// Every subgroup of Sym(n), each exactly once, for n up to the hard cap.
/// Grown by closure: each known subgroup is extended by one coset
/// representative at a time until no new subgroup appears.
/// Results sorted by (order, sorted element list).
std::vector<PermGroup> enumerate_subgroups_small(unsigned n, unsigned hard_cap = 6);

} // namespace neretin::perm

#endif
