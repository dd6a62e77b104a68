#ifndef NERETIN_PERM_HPP
#define NERETIN_PERM_HPP

#include <string>
#include <vector>

#include "neretin/common.hpp"

namespace neretin::perm {

/// A permutation of {0,...,n-1}, stored by its image table.
/// Composition is a left action: (p * q)(x) = p(q(x)), q applied first.
class Permutation {
public:
  explicit Permutation(unsigned degree);               // identity
  explicit Permutation(std::vector<unsigned> images);  // validates bijection

  static Permutation identity(unsigned degree) { return Permutation(degree); }
  static Permutation transposition(unsigned degree, unsigned a, unsigned b);
  static Permutation cycle(unsigned degree, const std::vector<unsigned>& points);

  /// Parses cycle notation, e.g. "(0 1 2)(3 4)". "()" and "id" denote the identity.
  static Permutation from_cycles(unsigned degree, const std::string& text);

  unsigned degree() const { return static_cast<unsigned>(images_.size()); }
  unsigned operator()(unsigned x) const { return images_[x]; }
  const std::vector<unsigned>& images() const { return images_; }

  bool is_identity() const;
  Permutation inverse() const;

  /// Nontrivial cycles, each rotated to start at its least point, sorted by that point.
  std::vector<std::vector<unsigned>> cycles() const;
  std::vector<unsigned> moved_points() const;
  std::string cycle_string() const;

  friend Permutation operator*(const Permutation& p, const Permutation& q);
  friend bool operator==(const Permutation& a, const Permutation& b) {
    return a.images_ == b.images_;
  }
  friend bool operator!=(const Permutation& a, const Permutation& b) { return !(a == b); }
  friend bool operator<(const Permutation& a, const Permutation& b) {
    return a.images_ < b.images_;
  }

private:
  std::vector<unsigned> images_;
};

/// Conjugate g h g^{-1}.
Permutation conjugate(const Permutation& g, const Permutation& h);

} // namespace neretin::perm

#endif
