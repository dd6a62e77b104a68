#include "neretin/sym_factor.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "neretin/blocks.hpp"

namespace neretin::perm {

namespace {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Smallest integer >= r and largest integer <= r.
long long ceil_of(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);  // positive by canonicalization
  BigInt q = num / den;
  if (q * den < num) q += 1;
  return q.convert_to<long long>();
}

long long floor_of(const Rational& r) {
  BigInt num = boost::multiprecision::numerator(r);
  BigInt den = boost::multiprecision::denominator(r);
  BigInt q = num / den;
  if (q * den > num) q -= 1;
  return q.convert_to<long long>();
}

Permutation power(Permutation g, std::uint64_t e) {
  Permutation acc = Permutation::identity(g.degree());
  while (e) {
    if (e & 1) acc = acc * g;
    g = g * g;
    e >>= 1;
  }
  return acc;
}

// If some power of g is a single p-cycle for a prime p <= max_p, return it.
// This happens exactly when g has one cycle of length p and no other cycle of
// length divisible by p; raising g to the lcm of the other lengths kills them
// and keeps the p-cycle.
std::optional<PrimeCycleWitness> extract_prime_cycle(const Permutation& g, unsigned max_p,
                                                     std::optional<unsigned> exact_p) {
  auto cycles = g.cycles();
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    std::uint64_t p = cycles[i].size();
    if (!is_prime(p) || p > max_p) continue;
    if (exact_p && p != *exact_p) continue;
    std::uint64_t m = 1;
    bool clean = true;
    for (std::size_t j = 0; j < cycles.size(); ++j) {
      if (j == i) continue;
      std::uint64_t len = cycles[j].size();
      if (len % p == 0) {
        clean = false;
        break;
      }
      m = std::lcm(m, len);
    }
    if (!clean) continue;
    Permutation w = power(g, m);
    auto wc = w.cycles();
    if (wc.size() != 1 || wc[0].size() != p) continue;  // never expected; keeps hits genuine
    return PrimeCycleWitness{static_cast<unsigned>(p), std::move(w)};
  }
  return std::nullopt;
}

} // namespace

std::string FactorizationVerdict::name() const {
  switch (tag) {
    case Tag::ContainsAlt: return "ContainsAlt";
    case Tag::FixesPointWithAltComplement: return "FixesPointWithAltComplement";
    case Tag::Neither: return "Neither";
  }
  return "Neither";
}

std::vector<unsigned> primes_in_interval(const Rational& lo, const Rational& hi) {
  if (lo < 0 || hi < lo) fail(Errc::bad_input, "interval bounds must satisfy 0 <= lo <= hi");
  std::vector<unsigned> out;
  long long from = std::max(2ll, ceil_of(lo));
  long long to = floor_of(hi);
  for (long long p = from; p <= to; ++p)
    if (is_prime(static_cast<std::uint64_t>(p))) out.push_back(static_cast<unsigned>(p));
  return out;
}

bool contains_alt_on(const PermGroup& g, const std::vector<unsigned>& omega) {
  if (omega.size() < 3) fail(Errc::omega_too_small, "point set must have size >= 3");
  std::vector<unsigned> pts = omega;
  std::sort(pts.begin(), pts.end());
  for (unsigned x : pts)
    if (x >= g.degree()) fail(Errc::bad_input, "point outside the domain");
  unsigned a = pts[0], b = pts[1];
  for (std::size_t i = 2; i < pts.size(); ++i)
    if (!g.contains(Permutation::cycle(g.degree(), {a, b, pts[i]}))) return false;
  return true;
}

std::optional<PrimeCycleWitness> find_prime_cycle(const PermGroup& g, unsigned max_p,
                                                  const Config& cfg) {
  if (max_p < 2) return std::nullopt;

  auto try_elem = [&](const Permutation& e) { return extract_prime_cycle(e, max_p, {}); };

  for (const auto& s : g.strong_generators())
    if (auto w = try_elem(s)) return w;

  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cfg.witness_budget; ++i)
    if (auto w = try_elem(g.random_element(rng))) return w;

  if (g.order() <= cfg.exhaustive_cap) {
    std::optional<PrimeCycleWitness> hit;
    g.for_each_element(
        [&](const Permutation& e) {
          auto cs = e.cycles();
          if (cs.size() == 1 && is_prime(cs[0].size()) && cs[0].size() <= max_p) {
            hit = PrimeCycleWitness{static_cast<unsigned>(cs[0].size()), e};
            return false;
          }
          return true;
        },
        cfg.exhaustive_cap);
    return hit;
  }
  return std::nullopt;
}

std::optional<Permutation> find_cycle_of_prime_length(const PermGroup& g, unsigned p,
                                                      const Config& cfg) {
  auto try_elem = [&](const Permutation& e) -> std::optional<Permutation> {
    if (auto w = extract_prime_cycle(e, p, p)) return w->element;
    return std::nullopt;
  };

  for (const auto& s : g.strong_generators())
    if (auto w = try_elem(s)) return w;

  std::mt19937_64 rng(cfg.seed);
  for (int i = 0; i < cfg.witness_budget; ++i)
    if (auto w = try_elem(g.random_element(rng))) return w;

  if (g.order() <= cfg.exhaustive_cap) {
    std::optional<Permutation> hit;
    g.for_each_element(
        [&](const Permutation& e) {
          auto cs = e.cycles();
          if (cs.size() == 1 && cs[0].size() == p) {
            hit = e;
            return false;
          }
          return true;
        },
        cfg.exhaustive_cap);
    return hit;
  }
  return std::nullopt;
}

JordanReport jordan_check(const PermGroup& g, const Config& cfg) {
  if (!g.is_transitive()) fail(Errc::not_transitive, "criterion applies to transitive groups");
  JordanReport rep;
  rep.primitive = is_primitive(g);
  const unsigned n = g.degree();
  if (n >= 5) rep.prime_cycle_witness = find_prime_cycle(g, n - 3, cfg);
  rep.jordan_applies = rep.primitive && rep.prime_cycle_witness.has_value();

  std::vector<unsigned> all(n);
  std::iota(all.begin(), all.end(), 0u);
  rep.contains_alt = n < 3 ? g.is_transitive() : contains_alt_on(g, all);
  return rep;
}

FactorizationVerdict classify_factorization(const PermGroup& b, const Config& cfg) {
  (void)cfg;
  const unsigned n = b.degree();
  FactorizationVerdict v;

  // Below degree 3 the alternating group is trivial and the dichotomy
  // degenerates; a transitive factor counts as the full-content case.
  std::vector<unsigned> all(n);
  std::iota(all.begin(), all.end(), 0u);
  bool full_content = n < 3 ? b.is_transitive() : contains_alt_on(b, all);
  if (full_content) {
    v.tag = FactorizationVerdict::Tag::ContainsAlt;
    return v;
  }

  for (unsigned x = 0; x < n; ++x) {
    bool fixed = std::all_of(b.generators().begin(), b.generators().end(),
                             [&](const Permutation& s) { return s(x) == x; });
    if (!fixed) continue;
    std::vector<unsigned> rest;
    for (unsigned y = 0; y < n; ++y)
      if (y != x) rest.push_back(y);
    if (rest.size() < 3 || contains_alt_on(b, rest)) {
      v.tag = FactorizationVerdict::Tag::FixesPointWithAltComplement;
      v.point = x;
      return v;
    }
  }
  return v;
}

AltOmegaWitness alt_omega_witness(const PermGroup& b, const Config& cfg) {
  const unsigned n = b.degree();
  auto primes = primes_in_interval(Rational(n + 1, 2), Rational(n));
  if (primes.size() < 2)
    fail(Errc::bad_input, "[(n+1)/2, n] must contain two primes");

  // cache per-prime searches: a prime can appear in several (p, q) pairs
  std::vector<std::optional<Permutation>> cycles(primes.size());
  std::vector<bool> searched(primes.size(), false);
  auto cycle_for = [&](std::size_t i) -> const std::optional<Permutation>& {
    if (!searched[i]) {
      cycles[i] = find_cycle_of_prime_length(b, primes[i], cfg);
      searched[i] = true;
    }
    return cycles[i];
  };

  for (std::size_t qi = primes.size(); qi-- > 1;) {
    for (std::size_t pi = 0; pi < qi; ++pi) {
      const auto& pc = cycle_for(pi);
      const auto& qc = cycle_for(qi);
      if (!pc || !qc) continue;
      std::set<unsigned> omega_set;
      for (unsigned x : pc->moved_points()) omega_set.insert(x);
      for (unsigned x : qc->moved_points()) omega_set.insert(x);
      std::vector<unsigned> omega(omega_set.begin(), omega_set.end());
      if (2 * omega.size() < n + 8) continue;  // |Omega| >= n/2 + 4, exactly
      if (!contains_alt_on(b, omega)) continue;
      return AltOmegaWitness{std::move(omega), *pc, *qc, primes[pi], primes[qi]};
    }
  }
  fail(Errc::no_witness, "no p-cycle/q-cycle pair found within the search budget");
}

} // namespace neretin::perm
