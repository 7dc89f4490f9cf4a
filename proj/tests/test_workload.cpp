#include <doctest.h>

#include <random>

#include "resim/errors.hpp"
#include "resim/serialize.hpp"
#include "resim/workload.hpp"
#include "testutil.hpp"

using namespace resim;

TEST_CASE("deadlines are running sums of budgets") {
  CHECK(deadlines(test::w1()) == std::vector<double>{4, 8});
  CHECK(deadlines(WorkloadSpec{}).empty());
  CHECK(deadlines(test::w2()) == std::vector<double>{8, 16});
}

TEST_CASE("negative budgets are rejected") {
  CHECK_THROWS_AS(WorkloadSpec({{"f", -1.0}}), InputError);
  CHECK_THROWS_AS(WorkloadSpec({{"", 1.0}}), InputError);
}

TEST_CASE("spec transition system is a cumulative path") {
  WeightedTS ts = build_spec_ts(test::w1());
  REQUIRE(ts.num_states() == 3);
  CHECK(ts.observation(0).time == 0.0);
  CHECK(ts.observation(1).time == 4.0);
  CHECK(ts.observation(2).time == 8.0);
  CHECK(ts.deterministic());
  CHECK(is_cumulative(ts, ObsProjection::time));

  WeightedTS empty = build_spec_ts(WorkloadSpec{});
  CHECK(empty.num_states() == 1);
  CHECK(empty.observation(0).time == 0.0);

  WeightedTS w2 = build_spec_ts(test::w2());
  CHECK(w2.observation(1).time == 8.0);
  CHECK(w2.observation(2).time == 16.0);
}

TEST_CASE("zero budgets keep separate states") {
  WeightedTS ts = build_spec_ts(WorkloadSpec({{"f", 0.0}, {"f", 0.0}}));
  CHECK(ts.num_states() == 3);
  CHECK(is_cumulative(ts, ObsProjection::time));
}

TEST_CASE("prefix") {
  auto s = test::w1();
  CHECK(prefix(s, 1).items().size() == 1);
  CHECK(prefix(s, 0).empty());
  CHECK(prefix(s, 2) == s);
  CHECK_THROWS_AS(prefix(s, 3), InputError);
}

TEST_CASE("concat_shifted shifts the tail deadlines") {
  auto s = concat_shifted(test::w1(), test::w1());
  CHECK(deadlines(s) == std::vector<double>{4, 8, 12, 16});
  CHECK(concat_shifted(WorkloadSpec{}, test::w2()) == test::w2());
  CHECK(concat_shifted(test::w2(), WorkloadSpec{}) == test::w2());
}

TEST_CASE("concat deadlines decompose") {
  std::mt19937_64 rng(17);
  for (int round = 0; round < 100; ++round) {
    auto a = test::random_instance(rng, {.max_actions = 8}).spec;
    auto b = test::random_instance(rng, {.max_actions = 8}).spec;
    auto both = deadlines(concat_shifted(a, b));
    auto da = deadlines(a);
    auto db = deadlines(b);
    double dm = da.empty() ? 0.0 : da.back();
    REQUIRE(both.size() == da.size() + db.size());
    for (std::size_t i = 0; i < da.size(); ++i) CHECK(approx_eq(both[i], da[i]));
    for (std::size_t j = 0; j < db.size(); ++j)
      CHECK(approx_eq(both[da.size() + j], db[j] + dm));
  }
}

TEST_CASE("prefix commutes with the spec TS") {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 50; ++round) {
    auto spec = test::random_instance(rng, {.max_actions = 10}).spec;
    std::size_t k = spec.empty() ? 0 : rng() % (spec.size() + 1);
    WeightedTS full = build_spec_ts(spec);
    WeightedTS cut = build_spec_ts(prefix(spec, k));
    REQUIRE(cut.num_states() == static_cast<int>(k) + 1);
    for (StateId q = 0; q <= static_cast<StateId>(k); ++q)
      CHECK(approx_eq(full.observation(q).time, cut.observation(q).time));
  }
}

TEST_CASE("parse_workload json") {
  auto spec = parse_workload(
      R"({"items":[{"label":"f","budget":4},{"label":"f","budget":4}]})",
      TextFormat::json);
  CHECK(spec == test::w1());
  CHECK(parse_workload(R"({"items":[]})", TextFormat::json).empty());
  CHECK_THROWS_AS(parse_workload(R"({"items":[{"label":"f","budget":-1}]})",
                                 TextFormat::json),
                  InputError);
  CHECK_THROWS_AS(parse_workload(R"({"items":[{"budget":1}]})", TextFormat::json),
                  InputError);
  CHECK_THROWS_AS(parse_workload("not json", TextFormat::json), InputError);
}

TEST_CASE("parse_workload csv") {
  auto spec = parse_workload("index,label,budget\n0,f,4\n1,f,4\n", TextFormat::csv);
  CHECK(spec == test::w1());
  CHECK_THROWS_AS(parse_workload("bogus header\n", TextFormat::csv), InputError);
  CHECK_THROWS_AS(parse_workload("index,label,budget\n0,f,x\n", TextFormat::csv),
                  InputError);
}

TEST_CASE("workload serialization round-trips") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 30; ++round) {
    auto spec = gen_synthetic(round % 2 == 0 ? GenProfile::uniform : GenProfile::bursty,
                              rng() % 20, rng(), {});
    CHECK(parse_workload(workload_to_json(spec), TextFormat::json) == spec);
    CHECK(parse_workload(workload_to_csv(spec), TextFormat::csv) == spec);
  }
}

TEST_CASE("gen_synthetic determinism and bounds") {
  GenParams params{.min_budget = 1.0, .max_budget = 2.0};
  auto a = gen_synthetic(GenProfile::uniform, 40, 99, params);
  auto b = gen_synthetic(GenProfile::uniform, 40, 99, params);
  CHECK(a == b);
  for (const WorkItem& it : a.items()) {
    CHECK(it.budget >= 1.0);
    CHECK(it.budget <= 2.0);
  }

  CHECK(gen_synthetic(GenProfile::uniform, 0, 1, params).empty());

  GenParams flat{.min_budget = 4.0, .max_budget = 4.0};
  auto c = gen_synthetic(GenProfile::uniform, 3, 5, flat);
  REQUIRE(c.size() == 3);
  for (const WorkItem& it : c.items()) CHECK(it.budget == 4.0);

  auto d = gen_synthetic(GenProfile::bursty, 50, 7, params);
  for (const WorkItem& it : d.items()) {
    CHECK(it.budget >= 1.0);
    CHECK(it.budget <= 2.0);
  }

  CHECK_THROWS_AS(gen_synthetic(GenProfile::uniform, 1, 1,
                                GenParams{.min_budget = 3.0, .max_budget = 2.0}),
                  InputError);
  CHECK_THROWS_AS(gen_synthetic(GenProfile::uniform, 1, 1,
                                GenParams{.min_budget = -1.0, .max_budget = 2.0}),
                  InputError);
}
