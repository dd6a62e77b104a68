#include "neretin/tree.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace neretin::tree {

Signature::Signature(int d_, int k_) : d(d_), k(k_) {
  if (d < 2 || k < 2) fail(Errc::bad_input, "signature requires d >= 2 and k >= 2");
}

std::string Signature::str() const {
  return std::to_string(d) + "," + std::to_string(k);
}

Address Address::parse(const std::string& text, const Signature& sig) {
  std::vector<int> digits;
  if (text.find(',') != std::string::npos) {
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) digits.push_back(std::stoi(item));
  } else {
    for (char c : text) {
      if (std::isspace(static_cast<unsigned char>(c))) continue;
      if (!std::isdigit(static_cast<unsigned char>(c)))
        fail(Errc::bad_input, "bad address character in '" + text + "'");
      digits.push_back(c - '0');
    }
  }
  Address a(std::move(digits));
  if (!a.valid_for(sig)) fail(Errc::bad_input, "address '" + text + "' invalid for signature");
  return a;
}

Address Address::child(int symbol) const {
  auto d = digits_;
  d.push_back(symbol);
  return Address(std::move(d));
}

Address Address::parent() const {
  if (is_root()) fail(Errc::bad_input, "root has no parent");
  auto d = digits_;
  d.pop_back();
  return Address(std::move(d));
}

std::vector<int> Address::suffix(int from) const {
  return std::vector<int>(digits_.begin() + from, digits_.end());
}

Address Address::extended(const std::vector<int>& word) const {
  auto d = digits_;
  d.insert(d.end(), word.begin(), word.end());
  return Address(std::move(d));
}

bool Address::is_prefix_of(const Address& other) const {
  if (depth() > other.depth()) return false;
  return std::equal(digits_.begin(), digits_.end(), other.digits_.begin());
}

bool Address::is_strict_prefix_of(const Address& other) const {
  return depth() < other.depth() && is_prefix_of(other);
}

bool Address::valid_for(const Signature& sig) const {
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    int bound = i == 0 ? sig.k : sig.d;
    if (digits_[i] < 0 || digits_[i] >= bound) return false;
  }
  return true;
}

std::string Address::str(const Signature& sig) const {
  const bool compact = sig.d <= 10 && sig.k <= 10;
  std::string out;
  for (std::size_t i = 0; i < digits_.size(); ++i) {
    if (compact) {
      out += static_cast<char>('0' + digits_[i]);
    } else {
      if (i) out += ',';
      out += std::to_string(digits_[i]);
    }
  }
  return out;
}

Rational cylinder_mass(const Signature& sig, const Address& v) {
  if (v.is_root()) return Rational(1);
  Rational m(1, sig.k);
  for (int i = 1; i < v.depth(); ++i) m /= sig.d;
  return m;
}

LeafSet LeafSet::base(const Signature& sig) {
  std::vector<Address> leaves;
  for (int i = 0; i < sig.k; ++i) leaves.push_back(Address({i}));
  return LeafSet(sig, std::move(leaves));
}

LeafSet LeafSet::from_leaves(const Signature& sig, std::vector<Address> leaves) {
  std::sort(leaves.begin(), leaves.end());
  Rational total(0);
  for (std::size_t i = 0; i < leaves.size(); ++i) {
    if (leaves[i].is_root() || !leaves[i].valid_for(sig))
      fail(Errc::bad_input, "leaf invalid for signature");
    if (i + 1 < leaves.size() && leaves[i].is_prefix_of(leaves[i + 1]))
      fail(Errc::bad_input, "leaves are not prefix-free");
    total += cylinder_mass(sig, leaves[i]);
  }
  if (total != 1) fail(Errc::bad_input, "leaf masses do not sum to 1: antichain incomplete");
  return LeafSet(sig, std::move(leaves));
}

LeafSet LeafSet::ball(const Signature& sig, int n, const Config& cfg) {
  if (n < 1) fail(Errc::bad_input, "ball level must be >= 1");
  if (n > cfg.depth_limit) fail(Errc::depth_limit, "ball level exceeds the depth limit");
  std::vector<Address> frontier;
  for (int i = 0; i < sig.k; ++i) frontier.push_back(Address({i}));
  for (int depth = 1; depth < n; ++depth) {
    std::vector<Address> next;
    next.reserve(frontier.size() * static_cast<std::size_t>(sig.d));
    for (const auto& v : frontier)
      for (int i = 0; i < sig.d; ++i) next.push_back(v.child(i));
    frontier = std::move(next);
  }
  return LeafSet(sig, std::move(frontier));
}

int LeafSet::index_of(const Address& a) const {
  auto it = std::lower_bound(leaves_.begin(), leaves_.end(), a);
  if (it != leaves_.end() && *it == a) return static_cast<int>(it - leaves_.begin());
  return -1;
}

int LeafSet::index_of_prefix_leaf(const Address& a) const {
  // the covering leaf, if any, is the last leaf <= a in lex order
  auto it = std::upper_bound(leaves_.begin(), leaves_.end(), a);
  if (it == leaves_.begin()) return -1;
  --it;
  if (it->is_prefix_of(a)) return static_cast<int>(it - leaves_.begin());
  return -1;
}

int LeafSet::max_depth() const {
  int m = 0;
  for (const auto& l : leaves_) m = std::max(m, l.depth());
  return m;
}

LeafSet LeafSet::expanded(const Address& v, const Config& cfg) const {
  int idx = index_of(v);
  if (idx < 0) fail(Errc::leaf_not_present, "cannot expand a leaf that is not present");
  if (v.depth() + 1 > cfg.depth_limit) fail(Errc::depth_limit, "expansion exceeds depth limit");
  std::vector<Address> leaves = leaves_;
  leaves.erase(leaves.begin() + idx);
  for (int i = 0; i < sig_.d; ++i) leaves.push_back(v.child(i));
  std::sort(leaves.begin(), leaves.end());
  return LeafSet(sig_, std::move(leaves));
}

LeafSet common_refinement(const LeafSet& a, const LeafSet& b) {
  if (!(a.sig() == b.sig())) fail(Errc::signature_mismatch, "refining across signatures");
  std::vector<Address> leaves;
  for (const auto& v : a.leaves())
    if (b.index_of_prefix_leaf(v) >= 0) leaves.push_back(v);
  for (const auto& w : b.leaves()) {
    int i = a.index_of_prefix_leaf(w);
    if (i >= 0 && a.leaf(static_cast<std::size_t>(i)).is_strict_prefix_of(w))
      leaves.push_back(w);
  }
  std::sort(leaves.begin(), leaves.end());
  return LeafSet::from_leaves(a.sig(), std::move(leaves));
}

Clopen Clopen::whole(const Signature& sig) {
  Clopen c(sig);
  c.cyls_ = {Address::root()};
  return c;
}

Clopen Clopen::from_cylinders(const Signature& sig, std::vector<Address> cylinders) {
  for (const auto& a : cylinders)
    if (!a.valid_for(sig)) fail(Errc::bad_input, "cylinder invalid for signature");
  std::sort(cylinders.begin(), cylinders.end());
  cylinders.erase(std::unique(cylinders.begin(), cylinders.end()), cylinders.end());

  // absorb cylinders nested under an earlier one (sorted order puts prefixes first)
  std::vector<Address> kept;
  for (const auto& a : cylinders) {
    bool absorbed = false;
    for (const auto& k : kept)
      if (k.is_prefix_of(a)) absorbed = true;
    if (!absorbed) kept.push_back(a);
  }
  Clopen c(sig);
  c.cyls_ = std::move(kept);
  return c;
}

bool Clopen::covers_cylinder(const Address& a) const {
  for (const auto& c : cyls_)
    if (c.is_prefix_of(a)) return true;
  // Cyl(a) may still be covered piecewise by deeper members
  bool splits = false;
  for (const auto& c : cyls_)
    if (a.is_strict_prefix_of(c)) splits = true;
  if (!splits) return false;
  int fanout = a.is_root() ? sig_.k : sig_.d;
  for (int s = 0; s < fanout; ++s)
    if (!covers_cylinder(a.child(s))) return false;
  return true;
}

bool Clopen::contains_end(const Address& prefix) const {
  for (const auto& c : cyls_) {
    if (c.is_prefix_of(prefix)) return true;
    // the end continues with zeros beyond its prefix
    if (prefix.is_strict_prefix_of(c)) {
      bool zeros = true;
      for (int i = prefix.depth(); i < c.depth(); ++i)
        if (c[i] != 0) zeros = false;
      if (zeros) return true;
    }
  }
  return false;
}

bool Clopen::contains(const Clopen& other) const {
  for (const auto& c : other.cyls_)
    if (!covers_cylinder(c)) return false;
  return true;
}

bool Clopen::disjoint_from(const Clopen& other) const {
  for (const auto& a : cyls_)
    for (const auto& b : other.cyls_)
      if (a.comparable(b)) return false;
  return true;
}

Clopen Clopen::united(const Clopen& other) const {
  if (!(sig_ == other.sig_)) fail(Errc::signature_mismatch, "union across signatures");
  auto all = cyls_;
  all.insert(all.end(), other.cyls_.begin(), other.cyls_.end());
  return from_cylinders(sig_, std::move(all));
}

} // namespace neretin::tree
