#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <tuple>
#include <vector>

#include "mlcc/rng.hpp"
#include "mlcc/subset_pool.hpp"

using namespace mlcc;

namespace {

LabelMatrix matrix_from(const std::vector<LabelVector>& rows) {
  LabelMatrix out(static_cast<Index>(rows.size()), static_cast<Index>(rows[0].size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      out(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
    }
  }
  return out;
}

// Independent reference: pick the minimum of (distance, -count, first_index)
// by explicit tuple comparison over the whole pool.
LabelVector reference_correct(std::span<const int> prediction,
                              const LabelSubsetPool& pool) {
  std::tuple<int, std::int64_t, std::size_t> best{INT32_MAX, 0, 0};
  std::size_t best_index = 0;
  for (std::size_t i = 0; i < pool.subsets.size(); ++i) {
    int distance = 0;
    for (std::size_t j = 0; j < prediction.size(); ++j) {
      distance += (prediction[j] != pool.subsets[i][j]);
    }
    const std::tuple<int, std::int64_t, std::size_t> key{distance, -pool.counts[i], i};
    if (key < best) {
      best = key;
      best_index = i;
    }
  }
  return pool.subsets[best_index];
}

}  // namespace

TEST_CASE("pool construction") {
  SUBCASE("distinct rows with counts in first-occurrence order") {
    const LabelSubsetPool pool =
        build_subset_pool(matrix_from({{0, 1}, {0, 1}, {1, 0}}));
    REQUIRE(pool.size() == 2);
    CHECK(pool.subsets[0] == LabelVector{0, 1});
    CHECK(pool.counts[0] == 2);
    CHECK(pool.subsets[1] == LabelVector{1, 0});
    CHECK(pool.counts[1] == 1);
    CHECK(pool.observation_rate() == 0.5);
  }

  SUBCASE("all rows identical") {
    const LabelSubsetPool pool =
        build_subset_pool(matrix_from({{1, 1, 0}, {1, 1, 0}, {1, 1, 0}, {1, 1, 0}}));
    REQUIRE(pool.size() == 1);
    CHECK(pool.counts[0] == 4);
  }

  SUBCASE("counts sum to the number of rows") {
    Rng rng = make_rng(3);
    std::vector<LabelVector> rows;
    for (int i = 0; i < 200; ++i) {
      LabelVector row(5);
      for (int& v : row) v = static_cast<int>(uniform_below(rng, 2));
      rows.push_back(row);
    }
    const LabelSubsetPool pool = build_subset_pool(matrix_from(rows));
    std::int64_t total = 0;
    for (std::int64_t c : pool.counts) {
      CHECK(c >= 1);
      total += c;
    }
    CHECK(total == 200);
  }
}

TEST_CASE("subset correction") {
  SUBCASE("prediction already in the pool is returned unchanged") {
    const LabelSubsetPool pool = build_subset_pool(matrix_from({{0, 1}, {1, 0}}));
    CHECK(subset_correct(LabelVector{1, 0}, pool) == LabelVector{1, 0});
  }

  SUBCASE("closest element wins") {
    LabelSubsetPool pool;
    pool.label_count = 3;
    pool.subsets = {{1, 0, 0}, {0, 1, 1}};
    pool.counts = {5, 3};
    CHECK(subset_correct(LabelVector{1, 1, 0}, pool) == LabelVector{1, 0, 0});
  }

  SUBCASE("distance tie broken by frequency, remaining tie by first occurrence") {
    LabelSubsetPool pool;
    pool.label_count = 2;
    pool.subsets = {{1, 0}, {0, 1}};
    pool.counts = {2, 2};
    // both at distance 1, equal counts: first occurrence wins
    CHECK(subset_correct(LabelVector{1, 1}, pool) == LabelVector{1, 0});

    pool.counts = {2, 4};
    CHECK(subset_correct(LabelVector{1, 1}, pool) == LabelVector{0, 1});
  }

  SUBCASE("errors") {
    const LabelSubsetPool empty;
    CHECK_THROWS(subset_correct(LabelVector{0, 1}, empty));
    const LabelSubsetPool pool = build_subset_pool(matrix_from({{0, 1}}));
    CHECK_THROWS(subset_correct(LabelVector{0, 1, 1}, pool));
  }
}

TEST_CASE("corrected predictions always come from the pool") {
  Rng rng = make_rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t m = 1 + uniform_below(rng, 10);
    const std::size_t n = 1 + uniform_below(rng, 30);
    std::vector<LabelVector> rows;
    for (std::size_t i = 0; i < n; ++i) {
      LabelVector row(m);
      for (int& v : row) v = static_cast<int>(uniform_below(rng, 2));
      rows.push_back(row);
    }
    const LabelSubsetPool pool = build_subset_pool(matrix_from(rows));
    LabelVector prediction(m);
    for (int& v : prediction) v = static_cast<int>(uniform_below(rng, 2));
    CHECK(pool_contains(pool, subset_correct(prediction, pool)));
  }
}

TEST_CASE("matches the exhaustive reference with the full tie cascade") {
  Rng rng = make_rng(29);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t m = 1 + uniform_below(rng, 12);
    const std::size_t n = 1 + uniform_below(rng, 60);
    std::vector<LabelVector> rows;
    for (std::size_t i = 0; i < n; ++i) {
      LabelVector row(m);
      for (int& v : row) v = static_cast<int>(uniform_below(rng, 2));
      rows.push_back(row);
    }
    const LabelSubsetPool pool = build_subset_pool(matrix_from(rows));
    LabelVector prediction(m);
    for (int& v : prediction) v = static_cast<int>(uniform_below(rng, 2));
    CHECK(subset_correct(prediction, pool) == reference_correct(prediction, pool));
  }
}
