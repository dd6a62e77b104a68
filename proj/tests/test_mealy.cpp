#include <doctest.h>

#include "neretin/mealy.hpp"
#include "oracles.hpp"

using namespace neretin;
using aa::TailMachine;

TEST_CASE("identity machine validates and runs") {
  TailMachine m = TailMachine::identity_machine(3);
  m.validate();
  auto [word, state] = m.run(0, {2, 1, 0});
  CHECK(word == std::vector<int>{2, 1, 0});
  CHECK(state == 0);
}

TEST_CASE("validation rejects non-invertible rows") {
  TailMachine m = TailMachine::identity_machine(2);
  m.next.push_back({0, 0});
  m.out.push_back({0, 0});  // constant output row
  m.names.push_back("bad");
  CHECK_THROWS_AS(m.validate(), Error);
}

TEST_CASE("duplicate identity states merge to one") {
  TailMachine m;
  m.alphabet = 2;
  m.identity = 0;
  m.next = {{0, 0}, {1, 1}, {2, 2}};
  m.out = {{0, 1}, {0, 1}, {0, 1}};
  m.names = {"e", "e1", "e2"};
  auto minz = aa::machine_minimize(m);
  CHECK(minz.machine.num_states() == 1);
  CHECK(minz.relabel == std::vector<int>{0, 0, 0});
}

TEST_CASE("the adding machine does not minimize further") {
  TailMachine odo = oracles::odometer(2);
  auto minz = aa::machine_minimize(odo);
  CHECK(minz.machine.num_states() == 2);
  auto idq = aa::identity_equivalent(odo);
  CHECK(idq[0]);
  CHECK_FALSE(idq[1]);
}

TEST_CASE("states with identical rows merge") {
  TailMachine m;
  m.alphabet = 2;
  m.identity = 0;
  // states 1 and 2 both swap and drop to the identity
  m.next = {{0, 0}, {0, 0}, {0, 0}};
  m.out = {{0, 1}, {1, 0}, {1, 0}};
  m.names = {"e", "s1", "s2"};
  auto minz = aa::machine_minimize(m);
  CHECK(minz.machine.num_states() == 2);
  CHECK(minz.relabel[1] == minz.relabel[2]);
}

TEST_CASE("inverse machine undoes the word transformation") {
  TailMachine odo = oracles::odometer(2);
  TailMachine inv = aa::inverse_machine(odo);
  // every word of length <= 6 round-trips through state 1
  for (int len = 0; len <= 6; ++len) {
    for (int bits = 0; bits < (1 << len); ++bits) {
      std::vector<int> w(static_cast<std::size_t>(len));
      for (int i = 0; i < len; ++i) w[static_cast<std::size_t>(i)] = (bits >> i) & 1;
      auto [mid, s1] = odo.run(1, w);
      auto [back, s2] = inv.run(1, mid);
      CHECK(back == w);
    }
  }
}

TEST_CASE("the binary odometer acts as +1 with carry") {
  TailMachine odo = oracles::odometer(2);
  // 110... reads as 3 in least-significant-first binary; +1 gives 001
  auto [w, s] = odo.run(1, {1, 1, 0});
  CHECK(w == std::vector<int>{0, 0, 1});
  // carry past the end leaves the live state
  auto [w2, s2] = odo.run(1, {1, 1, 1});
  CHECK(w2 == std::vector<int>{0, 0, 0});
  CHECK(s2 == 1);
}
