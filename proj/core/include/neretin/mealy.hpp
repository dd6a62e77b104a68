#ifndef NERETIN_MEALY_HPP
#define NERETIN_MEALY_HPP

#include <string>
#include <vector>

#include "neretin/common.hpp"

namespace neretin::aa {

/// An invertible letter-to-letter transducer over {0,...,d-1}: each state's
/// output row is a permutation of the alphabet. State 'identity' has exact
/// identity rows and governs fixed tails.
struct TailMachine {
  int alphabet = 2;
  std::vector<std::vector<int>> next;  // [state][letter] -> state
  std::vector<std::vector<int>> out;   // [state][letter] -> letter
  int identity = 0;
  std::vector<std::string> names;     // optional; autogenerated when empty

  int num_states() const { return static_cast<int>(next.size()); }

  static TailMachine identity_machine(int d);

  void validate() const;

  /// Runs the transducer on a word: returns the output word and final state.
  std::pair<std::vector<int>, int> run(int state, const std::vector<int>& word) const;

  bool operator==(const TailMachine& other) const {
    return alphabet == other.alphabet && next == other.next && out == other.out &&
           identity == other.identity;
  }
};

/// Behavioral equivalence classes by partition refinement; class ids are
/// 0-based, ordered by least member state.
std::vector<int> behavior_classes(const TailMachine& m);

/// True for states equivalent to the identity state.
std::vector<bool> identity_equivalent(const TailMachine& m);

struct MinimizedMachine {
  TailMachine machine;
  std::vector<int> relabel;  // old state -> new state
};

/// Quotient by behavioral equivalence: the least machine with the same
/// per-state behaviors. Keeps one state per class, ordered by least member.
MinimizedMachine machine_minimize(const TailMachine& m);

/// The inverse transducer on the same state set: state q of the result
/// undoes what state q of the input does.
TailMachine inverse_machine(const TailMachine& m);

} // namespace neretin::aa

#endif
