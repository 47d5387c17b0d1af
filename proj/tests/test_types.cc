#include <doctest.h>

#include "pageval/types.h"

using namespace pageval;

TEST_SUITE("types") {

TEST_CASE("error counts arithmetic") {
  ErrorCounts c{};
  c.ins = 2;
  c.del = 1;
  c.sub = 3;
  c.cor = 10;
  c.gtLen = 14;
  c.hypLen = 15;
  CHECK(c.distance() == 6);
  CHECK(errorRate(c) == doctest::Approx(6.0 / 14.0));
  CHECK(precision(c) == doctest::Approx(10.0 / 15.0));
  CHECK(recall(c) == doctest::Approx(10.0 / 14.0));
}

TEST_CASE("rates can exceed one") {
  ErrorCounts c{};
  c.ins = 5;
  c.gtLen = 2;
  c.hypLen = 7;
  CHECK(errorRate(c) == doctest::Approx(2.5));
}

TEST_CASE("zero denominators throw") {
  ErrorCounts c{};
  CHECK_THROWS_AS(errorRate(c), EvalError);
  CHECK_THROWS_AS(precision(c), EvalError);
  CHECK_THROWS_AS(recall(c), EvalError);
}

TEST_CASE("aggregate sums fields, so rates are ratios of sums") {
  ErrorCounts a{};
  a.ins = 1;
  a.cor = 4;
  a.gtLen = 5;
  a.hypLen = 5;
  ErrorCounts b{};
  b.del = 2;
  b.cor = 1;
  b.gtLen = 3;
  b.hypLen = 1;
  ErrorCounts total = aggregate({a, b});
  CHECK(total.ins == 1);
  CHECK(total.del == 2);
  CHECK(total.cor == 5);
  CHECK(total.gtLen == 8);
  CHECK(total.hypLen == 6);
  // Not the mean of per-page rates: (1+2)/(5+3).
  CHECK(errorRate(total) == doctest::Approx(3.0 / 8.0));
}

TEST_CASE("default config") {
  MeasureConfig cfg;
  CHECK(cfg.level == Level::Character);
  CHECK(cfg.readingOrder);
  CHECK_FALSE(cfg.geometry);
  CHECK_FALSE(cfg.segmentation);
  CHECK(cfg.tokenizer == "space");
  CHECK(cfg.toleranceFraction == doctest::Approx(0.25));
  CHECK(cfg.toleranceCap == doctest::Approx(30.0));
}

TEST_CASE("exceptions are distinguishable") {
  CHECK_THROWS_AS(throw ConfigError("x"), std::runtime_error);
  CHECK_THROWS_AS(throw ParseError("x"), std::runtime_error);
  CHECK_THROWS_AS(throw EvalError("x"), std::runtime_error);
}
}
