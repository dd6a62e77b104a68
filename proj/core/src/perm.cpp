#include "neretin/perm.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

namespace neretin::perm {

Permutation::Permutation(unsigned degree) : images_(degree) {
  std::iota(images_.begin(), images_.end(), 0u);
}

Permutation::Permutation(std::vector<unsigned> images) : images_(std::move(images)) {
  std::vector<bool> seen(images_.size(), false);
  for (unsigned v : images_) {
    if (v >= images_.size() || seen[v])
      fail(Errc::bad_input, "image table is not a bijection");
    seen[v] = true;
  }
}

Permutation Permutation::transposition(unsigned degree, unsigned a, unsigned b) {
  if (a >= degree || b >= degree) fail(Errc::bad_input, "transposition point out of range");
  Permutation p(degree);
  std::swap(p.images_[a], p.images_[b]);
  return p;
}

Permutation Permutation::cycle(unsigned degree, const std::vector<unsigned>& points) {
  Permutation p(degree);
  if (points.size() < 2) return p;
  for (std::size_t i = 0; i < points.size(); ++i) {
    unsigned from = points[i];
    unsigned to = points[(i + 1) % points.size()];
    if (from >= degree || to >= degree) fail(Errc::bad_input, "cycle point out of range");
    p.images_[from] = to;
  }
  // re-validate: repeated points would break bijectivity
  return Permutation(p.images_);
}

Permutation Permutation::from_cycles(unsigned degree, const std::string& text) {
  Permutation p(degree);
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  std::string trimmed = text.substr(i);
  while (!trimmed.empty() && std::isspace(static_cast<unsigned char>(trimmed.back())))
    trimmed.pop_back();
  if (trimmed.empty() || trimmed == "id" || trimmed == "e" || trimmed == "()") return p;
  while (i < text.size()) {
    skip_ws();
    if (i >= text.size()) break;
    if (text[i] != '(') fail(Errc::bad_input, "expected '(' in cycle notation: " + text);
    ++i;
    std::vector<unsigned> pts;
    while (true) {
      skip_ws();
      if (i >= text.size()) fail(Errc::bad_input, "unterminated cycle: " + text);
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        fail(Errc::bad_input, "expected point or ')' in cycle notation: " + text);
      unsigned v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<unsigned>(text[i] - '0');
        ++i;
      }
      pts.push_back(v);
      skip_ws();
      if (i < text.size() && text[i] == ',') ++i;  // tolerate comma separators
    }
    // right-to-left product: "(a..)(b..)" applies the rightmost cycle first
    p = p * cycle(degree, pts);
  }
  return p;
}

bool Permutation::is_identity() const {
  for (unsigned x = 0; x < degree(); ++x)
    if (images_[x] != x) return false;
  return true;
}

Permutation Permutation::inverse() const {
  std::vector<unsigned> inv(images_.size());
  for (unsigned x = 0; x < degree(); ++x) inv[images_[x]] = x;
  Permutation p(degree());
  p.images_ = std::move(inv);
  return p;
}

std::vector<std::vector<unsigned>> Permutation::cycles() const {
  std::vector<std::vector<unsigned>> out;
  std::vector<bool> seen(degree(), false);
  for (unsigned x = 0; x < degree(); ++x) {
    if (seen[x] || images_[x] == x) {
      seen[x] = true;
      continue;
    }
    std::vector<unsigned> cyc;
    unsigned y = x;
    while (!seen[y]) {
      seen[y] = true;
      cyc.push_back(y);
      y = images_[y];
    }
    out.push_back(std::move(cyc));
  }
  return out;
}

std::vector<unsigned> Permutation::moved_points() const {
  std::vector<unsigned> out;
  for (unsigned x = 0; x < degree(); ++x)
    if (images_[x] != x) out.push_back(x);
  return out;
}

std::string Permutation::cycle_string() const {
  auto cs = cycles();
  if (cs.empty()) return "()";
  std::ostringstream os;
  for (const auto& c : cs) {
    os << '(';
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (i) os << ' ';
      os << c[i];
    }
    os << ')';
  }
  return os.str();
}

Permutation operator*(const Permutation& p, const Permutation& q) {
  if (p.degree() != q.degree()) fail(Errc::degree_mismatch, "composing unequal degrees");
  Permutation r(p.degree());
  for (unsigned x = 0; x < p.degree(); ++x) r.images_[x] = p.images_[q.images_[x]];
  return r;
}

Permutation conjugate(const Permutation& g, const Permutation& h) {
  return g * h * g.inverse();
}

} // namespace neretin::perm
