#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "qtur/rng.hpp"

using namespace qtur;

// Known-answer vectors of the Random123 reference implementation.
TEST_CASE("philox known answers") {
  using Block = std::array<std::uint32_t, 4>;
  CHECK(philox4x32_10({0, 0, 0, 0}, {0, 0}) == Block{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8});
  CHECK(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}) ==
        Block{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd});
  CHECK(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}) ==
        Block{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1});
}

TEST_CASE("streams are reproducible and distinct") {
  CounterRng a(42, 3);
  CounterRng b(42, 3);
  CounterRng c(42, 4);
  CounterRng d(43, 3);
  std::set<std::uint64_t> seen;
  for (int k = 0; k < 1000; ++k) {
    const std::uint64_t x = a.next_u64();
    CHECK(x == b.next_u64());
    CHECK(x != c.next_u64());
    CHECK(x != d.next_u64());
    seen.insert(x);
  }
  CHECK(seen.size() == 1000);
  CHECK(a.draws() == 1000);
}

TEST_CASE("uniform draws lie in the open unit interval with the right moments") {
  CounterRng r(7, 0);
  const int n = 200000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int k = 0; k < n; ++k) {
    const double u = r.uniform();
    REQUIRE(u > 0.0);
    REQUIRE(u < 1.0);
    sum += u;
    sum2 += u * u;
  }
  const double mean = sum / n;
  CHECK(std::abs(mean - 0.5) < 4.0 * std::sqrt(1.0 / 12.0 / n));
  CHECK(std::abs(sum2 / n - mean * mean - 1.0 / 12.0) < 2e-3);
  CounterRng s(7, 0);
  CHECK(s.uniform(2.0, 4.0) > 2.0);
}
