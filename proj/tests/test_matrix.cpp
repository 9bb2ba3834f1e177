#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "pcm/pcm.hpp"

using namespace pcm;
using namespace pcm::testing;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected pcm::Error";
  return ErrorCode::BadConfig;
}

}  // namespace

TEST(Validate, AcceptsReciprocalGrids) {
  const PCMatrix a = triad3();
  EXPECT_EQ(a.size(), 3u);
  EXPECT_DOUBLE_EQ(a.at(0, 2), 12.0);
  EXPECT_EQ(a.at(2, 0), 1.0 / 12.0);

  const PCMatrix c = incomplete4();
  EXPECT_FALSE(c.defined(2, 3));
  EXPECT_FALSE(c.defined(3, 2));
}

TEST(Validate, LowerTriangleIsExactReciprocal) {
  // 0.1 and 10 agree within the tolerance; the stored lower cell is 1/0.1.
  const PCMatrix m = validate({{1.0, 0.1, 1.0}, {10.0 * (1 + 1e-14), 1.0, 1.0}, {1.0, 1.0, 1.0}});
  EXPECT_EQ(m.at(1, 0), 1.0 / 0.1);
}

TEST(Validate, Errors) {
  EXPECT_EQ(code_of([] { validate({{1.0, 2.0, 1.0}, {0.5, 1.0}, {1.0, 1.0, 1.0}}); }),
            ErrorCode::NonSquare);
  EXPECT_EQ(code_of([] { validate({{1.0, 2.0}, {0.5, 1.0}}); }), ErrorCode::BadSize);
  EXPECT_EQ(code_of([] { validate({{2.0, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}); }),
            ErrorCode::BadDiagonal);
  EXPECT_EQ(code_of([] { validate({{missing, 1.0, 1.0}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}); }),
            ErrorCode::BadDiagonal);
  EXPECT_EQ(code_of([] { validate({{1.0, -1.0, 1.0}, {-1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}); }),
            ErrorCode::NonPositiveEntry);
  EXPECT_EQ(code_of([] { validate({{1.0, 1.0, missing}, {1.0, 1.0, 1.0}, {1.0, 1.0, 1.0}}); }),
            ErrorCode::ReciprocityViolation);

  try {
    validate({{1.0, 2.0, 1.0}, {3.0, 1.0, 1.0}, {1.0, 1.0, 1.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ReciprocityViolation);
    EXPECT_EQ(e.row(), 0u);
    EXPECT_EQ(e.col(), 1u);
  }
}

TEST(Validate, ScaleIsOnlyAFlag) {
  EXPECT_TRUE(triad3().exceeds_scale());
  EXPECT_FALSE(incomplete4().exceeds_scale());
}

TEST(Completeness, IsComplete) {
  EXPECT_TRUE(is_complete(triad3()));
  EXPECT_FALSE(is_complete(incomplete4()));
  EXPECT_FALSE(is_complete(no_triads7()));
}

TEST(Completeness, DefinedPairs) {
  EXPECT_EQ(defined_pairs(uniform(7)).size(), 21u);
  EXPECT_EQ(defined_pairs(no_triads7()).size(), 11u);
  const auto p = defined_pairs(incomplete4());
  ASSERT_EQ(p.size(), 5u);
  EXPECT_EQ(p.back(), (Pair{1, 3}));
}

TEST(Triads, Enumeration) {
  EXPECT_EQ(list_triads(uniform(7)).size(), 35u);
  EXPECT_TRUE(list_triads(no_triads7()).empty());

  const auto t = list_triads(incomplete4());
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ((std::array{t[0].i, t[0].k, t[0].j}), (std::array<std::size_t, 3>{0, 1, 2}));
  EXPECT_EQ((std::array{t[1].i, t[1].k, t[1].j}), (std::array<std::size_t, 3>{0, 1, 3}));
  EXPECT_DOUBLE_EQ(list_triads(triad3())[0].ratio(), 0.5);
}

TEST(Triads, CompleteCountAndTreeEmpty) {
  Rng rng(11);
  for (std::size_t n = 3; n <= 9; ++n) {
    EXPECT_EQ(list_triads(random_complete(n, rng)).size(), n * (n - 1) * (n - 2) / 6);
    EXPECT_TRUE(list_triads(path_tree(n, rng)).empty());
  }
}

TEST(Properties, TransposedReciprocalIsTheSameMatrix) {
  Rng rng(5);
  for (int rep = 0; rep < 50; ++rep) {
    const std::size_t n = 3 + rng.below(6);
    PCMatrix m = random_incomplete(random_complete(n, rng), rng.below(max_removable(n) + 1), rng);
    Grid g(n, std::vector<Cell>(n));
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        Cell c = m(j, i);
        g[i][j] = c ? Cell(1.0 / *c) : missing;
      }
    }
    const PCMatrix t = validate(g);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        ASSERT_EQ(t.defined(i, j), m.defined(i, j));
        if (m.defined(i, j)) {
          EXPECT_NEAR(t.at(i, j) / m.at(i, j), 1.0, 1e-14);
        }
      }
    }
  }
}

TEST(Permuted, RelabelsCells) {
  const std::vector<std::size_t> perm{2, 0, 1};
  const PCMatrix p = triad3().permuted(perm);
  EXPECT_EQ(p.at(2, 0), triad3().at(0, 1));
  EXPECT_EQ(p.at(2, 1), triad3().at(0, 2));
}

TEST(WithoutPair, DropsBothOrientations) {
  const PCMatrix m = uniform(4).without_pair(1, 3);
  EXPECT_FALSE(m.defined(1, 3));
  EXPECT_FALSE(m.defined(3, 1));
  EXPECT_EQ(defined_pairs(m).size(), 5u);
}
