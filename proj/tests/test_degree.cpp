#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "posskc/degree.hpp"
#include "posskc/error.hpp"
#include "posskc/bench.hpp"

using namespace posskc;

TEST_CASE("parse scales by 10^9") {
  CHECK(parse_degree("0.7").scaled() == 700000000u);
  CHECK(parse_degree("1").scaled() == 1000000000u);
  CHECK(parse_degree("0").is_zero());
  CHECK(parse_degree("1.0").is_one());
  CHECK(parse_degree("0.000000001").scaled() == 1u);
  CHECK_THROWS_AS(parse_degree(".5"), InputError);  // leading digit required
}

TEST_CASE("parse rejects bad literals") {
  CHECK_THROWS_AS(parse_degree("0.1234567891"), InputError);  // 10 digits
  CHECK_THROWS_AS(parse_degree("1.5"), InputError);
  CHECK_THROWS_AS(parse_degree("-0.1"), InputError);
  CHECK_THROWS_AS(parse_degree(""), InputError);
  CHECK_THROWS_AS(parse_degree("0.x"), InputError);
  CHECK_THROWS_AS(parse_degree("2"), InputError);
}

TEST_CASE("canonical text") {
  CHECK(parse_degree("0.70").str() == "0.7");
  CHECK(parse_degree("1.000").str() == "1");
  CHECK(parse_degree("0.0").str() == "0");
  CHECK(parse_degree("0.123456789").str() == "0.123456789");
  std::ostringstream os;
  os << parse_degree("0.25");
  CHECK(os.str() == "0.25");
}

TEST_CASE("min_condition") {
  CHECK(min_condition(parse_degree("0.4"), parse_degree("0.7")) == parse_degree("0.4"));
  CHECK(min_condition(parse_degree("0.7"), parse_degree("0.7")) == Degree::one());
  CHECK(min_condition(Degree::zero(), parse_degree("0.5")) == Degree::zero());
  CHECK(min_condition(Degree::zero(), Degree::zero()) == Degree::one());
  CHECK_THROWS_AS(min_condition(parse_degree("0.8"), parse_degree("0.3")), std::logic_error);
}

TEST_CASE("complement") {
  CHECK(complement(parse_degree("0.7")) == parse_degree("0.3"));
  CHECK(complement(Degree::one()) == Degree::zero());
  CHECK(complement(parse_degree("0.6")) == parse_degree("0.4"));
}

TEST_CASE("algebraic laws on random degrees") {
  bench::SplitMix64 rng(7);
  auto draw = [&] { return Degree::from_scaled(static_cast<std::uint32_t>(rng.below(Degree::kScale + 1))); };
  for (int i = 0; i < 2000; ++i) {
    const Degree a = draw(), b = draw(), c = draw();
    CHECK(complement(complement(a)) == a);
    CHECK(min(a, b) == min(b, a));
    CHECK(max(a, b) == max(b, a));
    CHECK(min(min(a, b), c) == min(a, min(b, c)));
    CHECK(max(max(a, b), c) == max(a, max(b, c)));
    CHECK(min(a, a) == a);
    CHECK(max(a, a) == a);
    CHECK(min(a, Degree::one()) == a);
    CHECK(max(a, Degree::zero()) == a);
    CHECK(min_condition(a, a) == Degree::one());
    const Degree lo = min(a, b), hi = max(a, b);
    const Degree r = min_condition(lo, hi);
    CHECK(r <= Degree::one());
    if (lo < hi) CHECK(r == lo);
    CHECK(Degree::parse(a.str()) == a);
  }
}

TEST_CASE("from_scaled range") {
  CHECK_THROWS_AS(Degree::from_scaled(Degree::kScale + 1), std::out_of_range);
}
