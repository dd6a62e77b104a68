#ifndef NERETIN_TREE_HPP
#define NERETIN_TREE_HPP

#include <string>
#include <vector>

#include "neretin/common.hpp"

namespace neretin::tree {

/// The branching data of the quasi-regular rooted tree: the root has k
/// children, every other vertex has d.
struct Signature {
  int d = 2;
  int k = 2;

  Signature() = default;
  Signature(int d_, int k_);
  bool operator==(const Signature&) const = default;
  std::string str() const;
};

/// A vertex position: first symbol in {0,...,k-1}, the rest in {0,...,d-1}.
/// The empty sequence is the root.
class Address {
public:
  Address() = default;
  explicit Address(std::vector<int> digits) : digits_(std::move(digits)) {}

  static Address root() { return Address(); }
  /// Parses "013" (digits) or "0,1,3" (comma form for d or k > 10). "" is the root.
  static Address parse(const std::string& text, const Signature& sig);

  int depth() const { return static_cast<int>(digits_.size()); }
  bool is_root() const { return digits_.empty(); }
  int operator[](int i) const { return digits_[static_cast<std::size_t>(i)]; }
  const std::vector<int>& digits() const { return digits_; }

  Address child(int symbol) const;
  Address parent() const;
  /// Suffix starting at position `from`.
  std::vector<int> suffix(int from) const;
  Address extended(const std::vector<int>& word) const;

  bool is_prefix_of(const Address& other) const;  // proper or equal
  bool is_strict_prefix_of(const Address& other) const;
  bool comparable(const Address& other) const {
    return is_prefix_of(other) || other.is_prefix_of(*this);
  }

  bool valid_for(const Signature& sig) const;
  std::string str(const Signature& sig) const;

  friend bool operator==(const Address& a, const Address& b) { return a.digits_ == b.digits_; }
  friend bool operator!=(const Address& a, const Address& b) { return !(a == b); }
  friend bool operator<(const Address& a, const Address& b) { return a.digits_ < b.digits_; }

private:
  std::vector<int> digits_;
};

/// Exact mass of the cylinder at a vertex under the uniform measure:
/// 1 at the root, (1/k)·d^{-(depth-1)} otherwise.
Rational cylinder_mass(const Signature& sig, const Address& v);

/// A complete antichain of addresses: pairwise prefix-free with cylinder
/// masses summing to 1. Leaves are kept in lexicographic order.
class LeafSet {
public:
  static LeafSet base(const Signature& sig);  // the k root children
  static LeafSet from_leaves(const Signature& sig, std::vector<Address> leaves);
  static LeafSet ball(const Signature& sig, int n, const Config& cfg = default_config());

  const Signature& sig() const { return sig_; }
  const std::vector<Address>& leaves() const { return leaves_; }
  std::size_t size() const { return leaves_.size(); }
  const Address& leaf(std::size_t i) const { return leaves_[i]; }

  int index_of(const Address& a) const;  // -1 when absent
  /// Index of the leaf that is a prefix of `a` (or equals it); -1 when `a`
  /// stops strictly above the antichain.
  int index_of_prefix_leaf(const Address& a) const;
  int max_depth() const;

  LeafSet expanded(const Address& v, const Config& cfg = default_config()) const;

  bool operator==(const LeafSet& other) const {
    return sig_ == other.sig_ && leaves_ == other.leaves_;
  }

private:
  LeafSet(Signature sig, std::vector<Address> leaves)
      : sig_(sig), leaves_(std::move(leaves)) {}

  Signature sig_;
  std::vector<Address> leaves_;
};

/// Coarsest leaf set refining both arguments: along each branch, the deeper of
/// the two prefixes.
LeafSet common_refinement(const LeafSet& a, const LeafSet& b);

/// A finite union of cylinders: pairwise prefix-free and sorted (nested input
/// cylinders are absorbed into their containing one). The empty set is a
/// valid value; {root} denotes the whole boundary.
class Clopen {
public:
  Clopen() = default;
  explicit Clopen(const Signature& sig) : sig_(sig) {}

  static Clopen whole(const Signature& sig);
  /// Builds the union of arbitrary cylinders (absorbing nested ones).
  static Clopen from_cylinders(const Signature& sig, std::vector<Address> cylinders);

  const Signature& sig() const { return sig_; }
  const std::vector<Address>& cylinders() const { return cyls_; }
  bool empty() const { return cyls_.empty(); }
  bool is_whole() const { return cyls_.size() == 1 && cyls_[0].is_root(); }

  /// Whether Cyl(a) is contained in this set.
  bool covers_cylinder(const Address& a) const;
  /// Whether the end a·000... lies in this set.
  bool contains_end(const Address& prefix) const;
  bool contains(const Clopen& other) const;
  bool disjoint_from(const Clopen& other) const;

  Clopen united(const Clopen& other) const;

  bool operator==(const Clopen& other) const {
    return sig_ == other.sig_ && cyls_ == other.cyls_;
  }

private:
  Signature sig_;
  std::vector<Address> cyls_;
};

} // namespace neretin::tree

#endif
