#include "neretin/mealy.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace neretin::aa {

TailMachine TailMachine::identity_machine(int d) {
  TailMachine m;
  m.alphabet = d;
  m.next = {std::vector<int>(d, 0)};
  m.out.resize(1);
  m.out[0].resize(d);
  std::iota(m.out[0].begin(), m.out[0].end(), 0);
  m.identity = 0;
  m.names = {"q0"};
  return m;
}

void TailMachine::validate() const {
  if (alphabet < 2) fail(Errc::bad_input, "machine alphabet must have size >= 2");
  const int n = num_states();
  if (n == 0 || static_cast<int>(out.size()) != n)
    fail(Errc::bad_input, "machine tables are inconsistent");
  if (identity < 0 || identity >= n) fail(Errc::bad_input, "identity state out of range");
  for (int q = 0; q < n; ++q) {
    if (static_cast<int>(next[q].size()) != alphabet ||
        static_cast<int>(out[q].size()) != alphabet)
      fail(Errc::bad_input, "machine row of wrong width");
    std::vector<bool> seen(alphabet, false);
    for (int i = 0; i < alphabet; ++i) {
      if (next[q][i] < 0 || next[q][i] >= n) fail(Errc::bad_input, "transition out of range");
      int o = out[q][i];
      if (o < 0 || o >= alphabet || seen[o])
        fail(Errc::bad_input, "output row is not a permutation: machine not invertible");
      seen[o] = true;
    }
  }
  for (int i = 0; i < alphabet; ++i)
    if (out[identity][i] != i || next[identity][i] != identity)
      fail(Errc::bad_input, "identity state must fix letters and loop to itself");
}

std::pair<std::vector<int>, int> TailMachine::run(int state, const std::vector<int>& word) const {
  std::vector<int> result;
  result.reserve(word.size());
  for (int letter : word) {
    result.push_back(out[state][letter]);
    state = next[state][letter];
  }
  return {std::move(result), state};
}

std::vector<int> behavior_classes(const TailMachine& m) {
  const int n = m.num_states();
  std::vector<int> cls(n);
  {
    // initial partition: by output row
    std::map<std::vector<int>, int> key;
    for (int q = 0; q < n; ++q) {
      auto [it, fresh] = key.try_emplace(m.out[q], static_cast<int>(key.size()));
      cls[q] = it->second;
    }
  }
  while (true) {
    std::map<std::vector<int>, int> key;
    std::vector<int> refined(n);
    for (int q = 0; q < n; ++q) {
      std::vector<int> sig{cls[q]};
      for (int i = 0; i < m.alphabet; ++i) sig.push_back(cls[m.next[q][i]]);
      auto [it, fresh] = key.try_emplace(std::move(sig), static_cast<int>(key.size()));
      refined[q] = it->second;
    }
    if (refined == cls) break;
    cls = std::move(refined);
  }
  // renumber classes by least member state
  std::vector<int> first(n, -1);
  std::vector<int> order;
  for (int q = 0; q < n; ++q)
    if (first[cls[q]] < 0) {
      first[cls[q]] = static_cast<int>(order.size());
      order.push_back(cls[q]);
    }
  for (int q = 0; q < n; ++q) cls[q] = first[cls[q]];
  return cls;
}

std::vector<bool> identity_equivalent(const TailMachine& m) {
  auto cls = behavior_classes(m);
  std::vector<bool> out(m.num_states());
  for (int q = 0; q < m.num_states(); ++q) out[q] = cls[q] == cls[m.identity];
  return out;
}

MinimizedMachine machine_minimize(const TailMachine& m) {
  auto cls = behavior_classes(m);
  int num = *std::max_element(cls.begin(), cls.end()) + 1;

  TailMachine q;
  q.alphabet = m.alphabet;
  q.next.assign(num, std::vector<int>(m.alphabet));
  q.out.assign(num, std::vector<int>(m.alphabet));
  std::vector<bool> done(num, false);
  for (int s = 0; s < m.num_states(); ++s) {
    int c = cls[s];
    if (done[c]) continue;
    done[c] = true;
    for (int i = 0; i < m.alphabet; ++i) {
      q.next[c][i] = cls[m.next[s][i]];
      q.out[c][i] = m.out[s][i];
    }
  }
  q.identity = cls[m.identity];
  q.names.resize(num);
  for (int c = 0; c < num; ++c) q.names[c] = "q" + std::to_string(c);
  return {std::move(q), std::move(cls)};
}

TailMachine inverse_machine(const TailMachine& m) {
  TailMachine inv;
  inv.alphabet = m.alphabet;
  inv.identity = m.identity;
  inv.next.assign(m.num_states(), std::vector<int>(m.alphabet));
  inv.out.assign(m.num_states(), std::vector<int>(m.alphabet));
  for (int q = 0; q < m.num_states(); ++q)
    for (int i = 0; i < m.alphabet; ++i) {
      int j = m.out[q][i];       // q sends i to j, so the inverse sends j to i
      inv.out[q][j] = i;
      inv.next[q][j] = m.next[q][i];
    }
  inv.names = m.names;
  return inv;
}

} // namespace neretin::aa
