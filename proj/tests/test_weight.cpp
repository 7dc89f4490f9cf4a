#include <doctest.h>

#include <random>
#include <vector>

#include "resim/weight.hpp"

using namespace resim;

namespace {

TimeWeight tw(double v) { return TimeWeight{v}; }

std::vector<TimeWeight> random_weights(std::mt19937_64& rng, std::size_t n) {
  std::vector<TimeWeight> ws;
  for (std::size_t i = 0; i < n; ++i)
    ws.push_back(tw(0.25 * static_cast<double>(rng() % 64)));
  return ws;
}

}  // namespace

TEST_CASE("fold_weights on the scalar time domain") {
  std::vector<TimeWeight> empty;
  CHECK(fold_weights<TimeWeight>(empty).value == 0.0);

  std::vector<TimeWeight> ws{tw(3), tw(5)};
  CHECK(fold_weights<TimeWeight>(ws).value == 8.0);

  std::vector<TimeWeight> with_omega{tw(2), TimeWeight::omega()};
  CHECK(fold_weights<TimeWeight>(with_omega).is_omega());
}

TEST_CASE("fold splits across concatenation") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 200; ++round) {
    auto ws1 = random_weights(rng, rng() % 6);
    auto ws2 = random_weights(rng, rng() % 6);
    std::vector<TimeWeight> all = ws1;
    all.insert(all.end(), ws2.begin(), ws2.end());
    TimeWeight split =
        combine(fold_weights<TimeWeight>(ws1), fold_weights<TimeWeight>(ws2));
    CHECK(eq(fold_weights<TimeWeight>(all), split));
  }
}

TEST_CASE("time weight monoid laws") {
  std::mt19937_64 rng(11);
  for (int round = 0; round < 200; ++round) {
    TimeWeight x = tw(0.25 * static_cast<double>(rng() % 64));
    TimeWeight y = tw(0.25 * static_cast<double>(rng() % 64));
    TimeWeight z = tw(0.25 * static_cast<double>(rng() % 64));

    CHECK(eq(combine(TimeWeight::zero(), x), x));
    CHECK(eq(combine(x, TimeWeight::zero()), x));
    // monotone and expansive
    if (leq(x, y)) CHECK(leq(combine(x, z), combine(y, z)));
    CHECK(leq(x, combine(x, y)));
    CHECK(leq(y, combine(x, y)));
    // omega absorbs and dominates
    CHECK(combine(x, TimeWeight::omega()).is_omega());
    CHECK(combine(TimeWeight::omega(), x).is_omega());
    CHECK(leq(x, TimeWeight::omega()));
    // semiring bits: identity and distribution over combine
    CHECK(eq(times(TimeWeight::one(), x), x));
    CHECK(eq(times(x, combine(y, z)), combine(times(x, y), times(x, z))));
  }
}

TEST_CASE("product order on composite weights") {
  CHECK(leq(TimeEnergyWeight{1, 2}, TimeEnergyWeight{1, 3}));
  CHECK(!leq(TimeEnergyWeight{1, 4}, TimeEnergyWeight{2, 3}));

  std::mt19937_64 rng(13);
  auto draw = [&] {
    return TimeEnergyWeight{0.5 * static_cast<double>(rng() % 8),
                            0.5 * static_cast<double>(rng() % 8)};
  };
  for (int round = 0; round < 300; ++round) {
    TimeEnergyWeight a = draw(), b = draw(), c = draw();
    CHECK(leq(a, a));
    if (leq(a, b) && leq(b, a)) CHECK(eq(a, b));
    if (leq(a, b) && leq(b, c)) CHECK(leq(a, c));
    // componentwise combine stays monotone
    if (leq(a, b)) CHECK(leq(combine(a, c), combine(b, c)));
    CHECK(eq(combine(a, TimeEnergyWeight::zero()), a));
  }
}
