#ifndef NERETIN_ALMOST_AUTO_HPP
#define NERETIN_ALMOST_AUTO_HPP

#include <utility>
#include <vector>

#include "neretin/mealy.hpp"
#include "neretin/tree.hpp"

namespace neretin::aa {

/// A computable almost automorphism of the tree boundary: a tree-pair diagram
/// (domain leaves, range leaves, leaf bijection) with a finite-state tail
/// action under each domain leaf. Immutable; all operations are pure.
class AlmostAuto {
public:
  static AlmostAuto identity(const tree::Signature& sig);

  /// Leaf exchange with trivial tails. `image[i]` is the range-leaf index of
  /// domain leaf i (both in lexicographic order).
  static AlmostAuto prefix_exchange(tree::LeafSet dom, tree::LeafSet ran,
                                    std::vector<int> image);

  static AlmostAuto make(tree::LeafSet dom, tree::LeafSet ran, std::vector<int> image,
                         std::vector<int> tails, TailMachine machine);

  /// Swaps the two disjoint cylinders (possibly of different depths), fixing
  /// everything else.
  static AlmostAuto cylinder_swap(const tree::Signature& sig, const tree::Address& a,
                                  const tree::Address& b,
                                  const Config& cfg = default_config());

  /// Permutes the k root subtrees by pi.
  static AlmostAuto root_permutation(const tree::Signature& sig, const std::vector<int>& pi);

  /// Permutes the d children of vertex v by pi, fixing everything else.
  static AlmostAuto child_permutation(const tree::Signature& sig, const tree::Address& v,
                                      const std::vector<int>& pi,
                                      const Config& cfg = default_config());

  const tree::Signature& sig() const { return sig_; }
  const tree::LeafSet& dom() const { return dom_; }
  const tree::LeafSet& ran() const { return ran_; }
  const std::vector<int>& image() const { return image_; }
  const std::vector<int>& tails() const { return tail_; }
  const TailMachine& machine() const { return machine_; }

  const tree::Address& image_of_leaf(std::size_t i) const {
    return ran_.leaf(static_cast<std::size_t>(image_[i]));
  }

private:
  AlmostAuto(tree::Signature sig, tree::LeafSet dom, tree::LeafSet ran,
             std::vector<int> image, std::vector<int> tails, TailMachine machine)
      : sig_(sig), dom_(std::move(dom)), ran_(std::move(ran)), image_(std::move(image)),
        tail_(std::move(tails)), machine_(std::move(machine)) {}

  tree::Signature sig_;
  tree::LeafSet dom_;
  tree::LeafSet ran_;
  std::vector<int> image_;
  std::vector<int> tail_;
  TailMachine machine_;
};

/// x -> g(h(x)); h applied first.
AlmostAuto compose(const AlmostAuto& g, const AlmostAuto& h,
                   const Config& cfg = default_config());

AlmostAuto inverse(const AlmostAuto& g);

/// Whether g acts trivially on every end.
bool is_identity(const AlmostAuto& g);

/// Equality as boundary maps (representative-independent).
bool equal(const AlmostAuto& g, const AlmostAuto& h, const Config& cfg = default_config());

/// Normal form: machine minimized, then sibling leaf families collapsed
/// against existing machine states to exhaustion (deepest first), then the
/// machine restricted to reachable states and relabeled canonically.
AlmostAuto canonical_form(const AlmostAuto& g, const Config& cfg = default_config());

/// Image of the cylinder at w: the transformed prefix plus the machine state
/// governing the rest. Requires w to reach a domain leaf.
std::pair<tree::Address, int> apply_to_prefix(const AlmostAuto& g, const tree::Address& w);

/// Closure of the set of moved ends, as a clopen set.
tree::Clopen support(const AlmostAuto& g);

/// Whether every domain leaf maps to a range leaf of equal depth; equivalently
/// g preserves the uniform boundary measure.
bool is_level_preserving(const AlmostAuto& g);

/// Whether g fixes the complement of alpha pointwise, i.e. support(g) ⊆ alpha.
bool rist_member(const AlmostAuto& g, const tree::Clopen& alpha);

/// Whether g is an order-preserving leaf exchange with trivial tails.
bool in_thompson_f(const AlmostAuto& g);

/// Expands g until every domain leaf lies in the refinement target; the
/// target must refine g's domain.
AlmostAuto refine_dom_to(const AlmostAuto& g, const tree::LeafSet& target,
                         const Config& cfg = default_config());

/// Expands g until every range leaf lies in the refinement target; the target
/// must refine g's range.
AlmostAuto refine_ran_to(const AlmostAuto& g, const tree::LeafSet& target,
                         const Config& cfg = default_config());

/// Complete leaf set in which every given address appears as a leaf.
/// The addresses must be pairwise incomparable.
tree::LeafSet complete_around(const tree::Signature& sig,
                              const std::vector<tree::Address>& targets,
                              const Config& cfg = default_config());

/// Identification of the rigid stabilizer of a clopen set with the almost
/// automorphisms of the tree whose root children are the set's cylinders.
struct RistRelabeling {
  tree::Signature source_sig;
  int target_d = 2;
  int target_k = 0;
  bool nonstandard = false;  // target k = 1, below the usual k >= 2 bound
  std::vector<tree::Address> cylinders;  // i-th cylinder maps to root child i

  tree::Signature target_sig() const;

  tree::Address to_target(const tree::Address& a) const;
  tree::Address to_source(const tree::Address& a) const;

  AlmostAuto transport(const AlmostAuto& g, const Config& cfg = default_config()) const;
  AlmostAuto transport_back(const AlmostAuto& g, const Config& cfg = default_config()) const;
};

RistRelabeling relabel_rist(const tree::Clopen& alpha);

} // namespace neretin::aa

#endif
