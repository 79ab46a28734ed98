#include <map>
#include <random>

#include "gtest/gtest.h"
#include "klein/emptiness.hpp"
#include "test_support.hpp"

namespace klein {
namespace {

using testing::brutePolygonPoints2;
using testing::randomAffine;
using testing::randomPoint;

PointList const kUnitTet{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
PointList const kWBase{{3, 0, 2}, {3, 1, 1}, {3, 2, 3}};
PointList const kVBase{{2, -2, 1}, {2, -1, -1}, {2, 1, 2}};
PointList const kM11Base{{2, -1, 0}, {2, -2, 1}, {2, -1, 2}, {2, 0, 1}};
LatticePoint const kOrigin{0, 0, 0};

TEST(IsEmptyPolyhedron, Examples) {
  EXPECT_TRUE(isEmptyPolyhedron(kUnitTet));
  EXPECT_TRUE(isEmptyPolyhedron({{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {2, 5, 7}}));
  EXPECT_FALSE(isEmptyPolyhedron({{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {2, 4, 6}}));
}

TEST(IsEmptyPolyhedron, RejectsNonConvexPosition) {
  EXPECT_THROW(isEmptyPolyhedron({{0, 0, 0}, {2, 0, 0}, {1, 0, 0}}), DegenerateError);
  EXPECT_THROW(isEmptyPolyhedron({{0, 0, 0}, {0, 0, 0}, {1, 0, 0}}), DegenerateError);
}

TEST(IsCompletelyEmpty, Examples) {
  EXPECT_TRUE(isCompletelyEmpty(MarkedPyramid(kOrigin, kWBase)));
  EXPECT_TRUE(isCompletelyEmpty(MarkedPyramid(kOrigin, kM11Base)));
  MarkedPyramid tall({0, 0, 2}, PointList{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}});
  EXPECT_FALSE(isCompletelyEmpty(tall));
  auto bad = completeEmptinessViolation(tall);
  ASSERT_TRUE(bad.has_value());
  EXPECT_EQ((*bad)[2], 1);
}

TEST(IsCompletelyEmpty, WIsNotEmptyButCompletelyEmpty) {
  PointList w{kOrigin};
  w.insert(w.end(), kWBase.begin(), kWBase.end());
  EXPECT_FALSE(isEmptyPolyhedron(w));
  EXPECT_TRUE(isCompletelyEmpty(MarkedPyramid(kOrigin, kWBase)));
}

TEST(MarkedPyramid, ApexInBasePlaneRejected) {
  EXPECT_THROW(MarkedPyramid({3, 5, 5}, kWBase), NotAPyramidError);
}

TEST(StoryCount, Examples) {
  EXPECT_EQ(storyCount(MarkedPyramid(kOrigin, kWBase)).r, 3);
  EXPECT_EQ(storyCount(MarkedPyramid(kOrigin, kVBase)).r, 2);
  EXPECT_EQ(storyCount(MarkedPyramid(kOrigin, PointList{{1, 4, -5}, {4, 4, -5}, {1, 5, -5}})).r, 5);
  EXPECT_EQ(storyCount(MarkedPyramid(kOrigin, kM11Base)).r, 2);
}

TEST(Emptiness, InvariantUnderUnimodularMaps) {
  std::mt19937_64 rng(61);
  std::vector<PointList> tets{kUnitTet,
                              {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {2, 5, 7}},
                              {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {2, 4, 6}}};
  for (auto const& t : tets) {
    bool expected = isEmptyPolyhedron(t);
    for (int k = 0; k < 100; ++k)
      ASSERT_EQ(isEmptyPolyhedron(applyMap(randomAffine(3, rng), t)), expected);
  }
  std::vector<std::pair<LatticePoint, PointList>> pyramids{
      {kOrigin, kWBase}, {kOrigin, kM11Base}, {kOrigin, kVBase}, {{0, 0, 2}, {{0, 0, 0}, {2, 0, 0}, {0, 2, 0}}}};
  for (auto const& [apex, base] : pyramids) {
    MarkedPyramid p(apex, base);
    bool expected = isCompletelyEmpty(p);
    auto r = storyCount(p).r;
    for (int k = 0; k < 100; ++k) {
      auto t = randomAffine(3, rng);
      MarkedPyramid q(t(apex), applyMap(t, base));
      ASSERT_EQ(isCompletelyEmpty(q), expected);
      ASSERT_EQ(storyCount(q).r, r);
    }
  }
}

TEST(Emptiness, SingleStoryPyramidsAreCompletelyEmpty) {
  std::mt19937_64 rng(62);
  int checked = 0;
  while (checked < 60) {
    PointList base;
    for (int i = 0; i < 6; ++i) {
      auto p = randomPoint(2, rng, -3, 3);
      base.push_back({p[0].convert_to<long long>(), p[1].convert_to<long long>(), 1});
    }
    std::optional<ConvexLatticePolygon> poly;
    try {
      poly = ConvexLatticePolygon::hullOf(base);
    } catch (DegenerateError const&) {
      continue;
    }
    auto t = randomAffine(3, rng);
    MarkedPyramid p(t(kOrigin), applyMap(t, poly->vertices()));
    ASSERT_EQ(storyCount(p).r, 1);
    ASSERT_TRUE(isCompletelyEmpty(p));
    ++checked;
  }
}

TEST(Emptiness, UnitParallelogramInBaseForcesSingleStory) {
  // Every triangle with vertices in [-1,2]^2 lifted to height r in 1..3.
  PointList grid;
  for (int x = -1; x <= 2; ++x)
    for (int y = -1; y <= 2; ++y) grid.push_back({x, y});
  int withUnit = 0;
  for (int r = 1; r <= 3; ++r)
    for (std::size_t i = 0; i < grid.size(); ++i)
      for (std::size_t j = i + 1; j < grid.size(); ++j)
        for (std::size_t k = j + 1; k < grid.size(); ++k) {
          PointList tri;
          for (auto idx : {i, j, k})
            tri.push_back({grid[idx][0].convert_to<long long>(), grid[idx][1].convert_to<long long>(), r});
          if (rank(PointList{tri[1] - tri[0], tri[2] - tri[0]}) != 2) continue;
          MarkedPyramid p(kOrigin, tri);
          std::optional<ParallelogramWitness> w;
          try {
            w = findContainedParallelogram(p.base());
          } catch (NotEnoughPointsError const&) {
            continue;
          }
          if (w->kind != ParallelogramKind::Unit) continue;
          ++withUnit;
          if (isCompletelyEmpty(p)) ASSERT_EQ(storyCount(p).r, 1) << tri[0] << tri[1] << tri[2];
        }
  EXPECT_GT(withUnit, 0);
}

// Sections of a parallelepiped by lattice planes parallel to a face: the
// classes modulo the face's edges number the sublattice index, and each class
// meets the section in 1, 2 or 4 points.
TEST(Emptiness, ParallelepipedSectionsSplitIntoClasses) {
  std::mt19937_64 rng(63);
  int checked = 0;
  while (checked < 12) {
    LatticePoint a = randomPoint(3, rng, -2, 2);
    LatticePoint e1 = randomPoint(3, rng, -2, 2), e2 = randomPoint(3, rng, -2, 2),
                 e3 = randomPoint(3, rng, -2, 2);
    if (determinant(IntegerMatrix::fromColumns({e1, e2, e3})) == 0) continue;
    ++checked;
    PointList box;
    for (int s = 0; s < 2; ++s)
      for (int t = 0; t < 2; ++t)
        for (int u = 0; u < 2; ++u) box.push_back(a + Integer(s) * e1 + Integer(t) * e2 + Integer(u) * e3);
    IntegerPlane face(a, {e1, e2});
    auto f = primitiveFunctional(face);
    LatticeChart faceChart = LatticeChart::ofPlane(face);
    auto local = faceChart.coordinates(PointList{a + e1, a + e2});
    Integer index = abs(local[0][0] * local[1][1] - local[0][1] * local[1][0]);
    // Each section point q has q - a = s e1 + t e2 + u e3; classes are the
    // fractional parts of (s, t) measured by Cramer's rule over the rationals.
    auto det3 = [](LatticePoint const& x, LatticePoint const& y, LatticePoint const& z) {
      return determinant(IntegerMatrix::fromColumns({x, y, z}));
    };
    Integer d = det3(e1, e2, e3);
    std::map<Integer, std::map<std::pair<Rational, Rational>, int>> classes;
    for (auto const& q : latticePointsInHull(box)) {
      LatticePoint v = q - a;
      Rational s = Rational(det3(v, e2, e3)) / d, t = Rational(det3(e1, v, e3)) / d;
      std::pair<Rational, Rational> key{s - Rational(floorOf(s)), t - Rational(floorOf(t))};
      ++classes[f(q)][key];
    }
    for (auto const& [level, byClass] : classes) {
      ASSERT_EQ(byClass.size(), index) << "level " << level;
      for (auto const& [key, count] : byClass) ASSERT_TRUE(count == 1 || count == 2 || count == 4);
    }
  }
}

TEST(FindContainedParallelogram, Examples) {
  auto unit = findContainedParallelogram(ConvexLatticePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  EXPECT_EQ(unit.kind, ParallelogramKind::Unit);
  EXPECT_EQ(sortedUnique(unit.vertices), sortedUnique({{0, 0}, {1, 0}, {1, 1}, {0, 1}}));

  PointList diamond{{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  auto d = findContainedParallelogram(ConvexLatticePolygon(diamond));
  EXPECT_EQ(d.kind, ParallelogramKind::Diamond);
  EXPECT_EQ(sortedUnique(d.vertices), sortedUnique(diamond));

  auto beta = findContainedParallelogram(ConvexLatticePolygon({{3, 0}, {0, 1}, {-2, 0}, {0, -1}}));
  EXPECT_EQ(beta.kind, ParallelogramKind::Diamond);
  EXPECT_EQ(sortedUnique(beta.vertices), sortedUnique(diamond));
}

TEST(FindContainedParallelogram, NotEnoughPoints) {
  EXPECT_THROW(findContainedParallelogram(ConvexLatticePolygon({{0, 0}, {1, 0}, {0, 1}})),
               NotEnoughPointsError);
  EXPECT_THROW(findContainedParallelogram(ConvexLatticePolygon({{0, 0}, {5, 0}, {0, 1}})),
               NotEnoughPointsError);
}

TEST(FindContainedParallelogram, WitnessesAreValidOnRandomPolygons) {
  std::mt19937_64 rng(64);
  std::uniform_int_distribution<int> count(3, 7);
  int checked = 0;
  while (checked < 100) {
    PointList pts;
    for (int i = count(rng); i > 0; --i) pts.push_back(randomPoint(2, rng, -4, 4));
    std::optional<ConvexLatticePolygon> poly;
    try {
      poly = ConvexLatticePolygon::hullOf(pts);
    } catch (DegenerateError const&) {
      continue;
    }
    ParallelogramWitness w{ParallelogramKind::Unit, {}};
    try {
      w = findContainedParallelogram(*poly);
    } catch (NotEnoughPointsError const&) {
      continue;
    }
    ++checked;
    auto host = brutePolygonPoints2(poly->vertices());
    for (auto const& v : w.vertices)
      ASSERT_NE(std::find(host.begin(), host.end(), v), host.end());
    ASSERT_EQ(w.vertices[0] + w.vertices[2], w.vertices[1] + w.vertices[3]);
    auto inside = brutePolygonPoints2(w.vertices);
    if (w.kind == ParallelogramKind::Unit) {
      ASSERT_EQ(inside.size(), 4u);
    } else {
      ASSERT_EQ(inside.size(), 5u);
    }
  }
}

TEST(BruteForceAffineEquivalent, Examples) {
  auto self = bruteForceAffineEquivalent(kUnitTet, kUnitTet);
  ASSERT_TRUE(self.has_value());
  EXPECT_EQ(sortedUnique(applyMap(*self, kUnitTet)), sortedUnique(kUnitTet));

  PointList p27{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {2, 5, 7}};
  PointList p37{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {3, 4, 7}};
  auto unmarked = bruteForceAffineEquivalent(p27, p37);
  ASSERT_TRUE(unmarked.has_value());
  EXPECT_EQ(sortedUnique(applyMap(*unmarked, p27)), sortedUnique(p37));
  EXPECT_FALSE(bruteForceAffineEquivalent(p27, p37, /*marked=*/true).has_value());
}

TEST(BruteForceAffineEquivalent, MarkedPinsApex) {
  PointList p27{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {2, 5, 7}};
  PointList p57{{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {5, 2, 7}};
  auto w = bruteForceAffineEquivalent(p27, p57, true);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ((*w)(p27[0]), p57[0]);
}

TEST(BruteForceAffineEquivalent, PolygonsInsideHigherDimensions) {
  PointList a{{2, -1, 0, 1}, {2, -2, 1, 1}, {2, -1, 2, 1}, {2, 0, 1, 1}};
  PointList b{{1, 0, 0, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}, {0, -1, 0, 0}};
  auto w = bruteForceAffineEquivalent(a, b);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ(sortedUnique(applyMap(*w, a)), sortedUnique(b));
  PointList square{{0, 0, 0, 0}, {1, 0, 0, 0}, {1, 1, 0, 0}, {0, 1, 0, 0}};
  EXPECT_FALSE(bruteForceAffineEquivalent(a, square).has_value());
}

TEST(BruteForceAffineEquivalent, SymmetricAndReflexiveUnderRandomMaps) {
  std::mt19937_64 rng(65);
  std::vector<PointList> fixtures{kUnitTet,
                                  {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {2, 5, 7}},
                                  {kOrigin, kWBase[0], kWBase[1], kWBase[2]},
                                  {kOrigin, kM11Base[0], kM11Base[1], kM11Base[2], kM11Base[3]}};
  for (auto const& f : fixtures)
    for (int k = 0; k < 20; ++k) {
      auto t = randomAffine(3, rng);
      PointList g = applyMap(t, f);
      for (bool marked : {false, true}) {
        auto fw = bruteForceAffineEquivalent(f, g, marked);
        auto bw = bruteForceAffineEquivalent(g, f, marked);
        ASSERT_TRUE(fw && bw);
        ASSERT_EQ(sortedUnique(applyMap(*fw, f)), sortedUnique(g));
        ASSERT_EQ(sortedUnique(applyMap(*bw, g)), sortedUnique(f));
        if (marked) ASSERT_EQ((*fw)(f[0]), g[0]);
      }
    }
}

TEST(PolygonNormalForm, AgreesWithBruteForceEquivalence) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> c(-3, 3);
  std::vector<PointList> polys;
  while (polys.size() < 40) {
    PointList pts;
    for (int i = 0; i < 4; ++i) pts.push_back(LatticePoint{c(rng), c(rng)});
    if (LatticeChart::ofAffineHull(pts).rank() != 2) continue;
    polys.push_back(extremePoints(pts));
  }
  for (std::size_t i = 0; i < polys.size(); ++i)
    for (std::size_t j = i; j < polys.size(); ++j) {
      bool same = polygonNormalForm(ConvexLatticePolygon(polys[i])) ==
                  polygonNormalForm(ConvexLatticePolygon(polys[j]));
      ASSERT_EQ(same, bruteForceAffineEquivalent(polys[i], polys[j]).has_value()) << i << " " << j;
    }
}

}  // namespace
}  // namespace klein
