#ifndef NERETIN_BLOCKS_HPP
#define NERETIN_BLOCKS_HPP

#include <vector>

#include "neretin/perm_group.hpp"

namespace neretin::perm {

/// A group-invariant partition of {0,...,n-1} into equal-size cells.
struct BlockSystem {
  unsigned degree = 0;
  std::vector<std::vector<unsigned>> blocks;  // cells sorted, ordered by least element

  std::size_t block_size() const { return blocks.empty() ? 0 : blocks.front().size(); }
  bool operator==(const BlockSystem&) const = default;
};

/// All minimal nontrivial block systems of a transitive group; empty iff the
/// group is primitive. Throws Errc::not_transitive otherwise.
std::vector<BlockSystem> minimal_blocks(const PermGroup& g);

bool is_primitive(const PermGroup& g);

/// Finest G-congruence identifying the two seed points (Atkinson's algorithm).
/// Returns the partition as sorted cells; a single cell means no proper system
/// separates the seeds.
std::vector<std::vector<unsigned>> finest_congruence(const PermGroup& g, unsigned a, unsigned b);

} // namespace neretin::perm

#endif
