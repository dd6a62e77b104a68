#ifndef NERETIN_COMMON_HPP
#define NERETIN_COMMON_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace neretin {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Errc {
  degree_mismatch,
  not_transitive,
  not_subgroup,
  tuple_arity_too_large,
  omega_too_small,
  no_witness,
  degree_too_large,
  signature_mismatch,
  leaf_not_present,
  depth_limit,
  prefix_too_short,
  empty_clopen,
  not_in_level_subgroup,
  bad_levels,
  bad_prefix,
  targets_not_disjoint,
  point_inside_target,
  resource_exhausted,
  bad_input,
};

const char* errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

/// Shared limits for search and refinement loops. Exceeding a limit raises
/// Errc::depth_limit or Errc::resource_exhausted, never a silently wrong answer.
struct Config {
  int depth_limit = 32;
  std::uint64_t seed = 0;
  int witness_budget = 10000;            // random elements tried per witness search
  std::uint64_t exhaustive_cap = 1000000; // full element scans allowed below this order
  std::uint64_t node_budget = 20000000;   // backtrack search node cap
};

inline const Config& default_config() {
  static const Config cfg{};
  return cfg;
}

} // namespace neretin

#endif
