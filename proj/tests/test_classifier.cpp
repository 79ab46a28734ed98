#include <random>
#include <set>

#include "gtest/gtest.h"
#include "klein/classifier.hpp"
#include "test_support.hpp"

namespace klein {
namespace {

using testing::randomAffine;
using testing::randomUnimodular;

LatticePoint const kOrigin{0, 0, 0};

std::vector<CanonicalForm> formGrid(int maxAB, int maxR) {
  std::vector<CanonicalForm> out{CanonicalForm::v(), CanonicalForm::w()};
  for (int a = 1; a <= maxAB; ++a)
    for (int b = a; b <= maxAB; ++b) out.push_back(CanonicalForm::m(a, b));
  for (int b = 1; b <= maxAB; ++b) out.push_back(CanonicalForm::u(b));
  for (int a = 1; a <= maxAB; ++a)
    for (int r = 2; r <= maxR; ++r)
      for (int xi = 1; 2 * xi <= r; ++xi)
        if (std::gcd(xi, r) == 1) out.push_back(CanonicalForm::t(a, r, xi));
  return out;
}

// U(1) and T(2,2,1) name the same class; the classifier reports T.
CanonicalForm reported(CanonicalForm const& f) {
  if (f.tag == FormTag::U && f.b == 1) return CanonicalForm::t(2, 2, 1);
  return f;
}

MarkedPyramid pyramidOf(CanonicalForm const& f) {
  auto c = canonicalVertices(f);
  return MarkedPyramid(c.apex, c.base);
}

PointList pTet(long long r, long long xi) { return {{0, 0, 0}, {0, 1, 0}, {1, 0, 0}, {xi, r - xi, r}}; }

TEST(CanonicalVertices, Examples) {
  auto w = canonicalVertices(CanonicalForm::w());
  EXPECT_EQ(w.apex, kOrigin);
  EXPECT_EQ(w.base, (PointList{{3, 0, 2}, {3, 1, 1}, {3, 2, 3}}));
  EXPECT_EQ(canonicalVertices(CanonicalForm::m(1, 1)).base,
            (PointList{{2, -1, 0}, {2, -2, 1}, {2, -1, 2}, {2, 0, 1}}));
  EXPECT_EQ(canonicalVertices(CanonicalForm::p(2, 1)).base, (PointList{{0, 1, 0}, {1, 0, 0}, {1, 1, 2}}));
}

TEST(CanonicalVertices, ParameterChecks) {
  EXPECT_THROW(CanonicalForm::p(6, 2), ParameterError);
  EXPECT_THROW(CanonicalForm::p(7, 4), ParameterError);
  EXPECT_THROW(CanonicalForm::t(0, 5, 1), ParameterError);
  EXPECT_THROW(CanonicalForm::m(2, 1), ParameterError);
  EXPECT_THROW(CanonicalForm::u(0), ParameterError);
  EXPECT_NO_THROW(CanonicalForm::t(3, 1, 0));
  EXPECT_NO_THROW(CanonicalForm::p(1, 0));
}

TEST(CanonicalVertices, StoryCountsMatchTheForm) {
  for (auto const& f : formGrid(4, 9)) {
    auto p = pyramidOf(f);
    EXPECT_EQ(storyCount(p).r, f.stories()) << f.str();
    EXPECT_TRUE(isCompletelyEmpty(p)) << f.str();
  }
}

TEST(ClassifyEmptyTetrahedron, Examples) {
  PointList unit{{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (std::size_t apex = 0; apex < 4; ++apex)
    EXPECT_EQ(classifyEmptyTetrahedron(unit, apex).form, CanonicalForm::p(1, 0));

  auto marked = classifyEmptyTetrahedron(pTet(7, 2), 0);
  EXPECT_EQ(marked.form, CanonicalForm::p(7, 2));
  EXPECT_EQ(marked.r, 7);

  auto u27 = classifyEmptyTetrahedron(pTet(7, 2), std::nullopt);
  auto u37 = classifyEmptyTetrahedron(pTet(7, 3), std::nullopt);
  EXPECT_EQ(u27.form, u37.form);
  EXPECT_TRUE(bruteForceAffineEquivalent(pTet(7, 2), pTet(7, 3)).has_value());
}

TEST(ClassifyEmptyTetrahedron, Errors) {
  EXPECT_THROW(classifyEmptyTetrahedron(pTet(6, 2), 0), NotEmptyError);
  EXPECT_THROW(classifyEmptyTetrahedron({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0}}, 0), DegenerateError);
}

TEST(ClassifyEmptyTetrahedron, WitnessesVerifyOnRandomImages) {
  std::mt19937_64 rng(71);
  for (long long r = 2; r <= 9; ++r)
    for (long long xi = 1; 2 * xi <= r; ++xi) {
      if (std::gcd(xi, r) != 1) continue;
      for (int k = 0; k < 5; ++k) {
        auto t = randomAffine(3, rng);
        auto img = applyMap(t, pTet(r, xi));
        auto res = classifyEmptyTetrahedron(img, 0);
        ASSERT_EQ(res.form, CanonicalForm::p(r, xi));
        ASSERT_EQ(res.witness(img[0]), kOrigin);
        ASSERT_EQ(sortedUnique(applyMap(res.witness, img)), sortedUnique(pTet(r, xi)));
      }
    }
}

TEST(WhiteInvariant, Examples) {
  auto inv = [](long long r, long long xi) {
    auto v = pTet(r, xi);
    return whiteInvariant(MarkedPyramid(v[0], PointList{v[1], v[2], v[3]})).values;
  };
  EXPECT_EQ(inv(7, 2), (std::array<Integer, 3>{1, 2, 5}));
  EXPECT_EQ(inv(2, 1), (std::array<Integer, 3>{1, 1, 1}));
  EXPECT_EQ(inv(5, 2), (std::array<Integer, 3>{1, 2, 3}));
  auto unit = pTet(1, 0);
  EXPECT_THROW(whiteInvariant(MarkedPyramid(unit[0], PointList{unit[1], unit[2], unit[3]})),
               SingleStoryError);
  auto full = pTet(6, 2);
  EXPECT_THROW(whiteInvariant(MarkedPyramid(full[0], PointList{full[1], full[2], full[3]})),
               NotEmptyError);
}

TEST(WhiteInvariant, AllSmallPyramids) {
  for (long long r = 2; r <= 12; ++r)
    for (long long xi = 1; 2 * xi <= r; ++xi) {
      if (std::gcd(xi, r) != 1) continue;
      auto v = pTet(r, xi);
      std::array<Integer, 3> expected{1, xi, r - xi};
      std::sort(expected.begin(), expected.end());
      EXPECT_EQ(whiteInvariant(MarkedPyramid(v[0], PointList{v[1], v[2], v[3]})).values, expected);
    }
}

TEST(EmptyTetrahedra, MarkedAndUnmarkedEquivalenceAgreeWithBruteForce) {
  for (long long r = 2; r <= 12; ++r) {
    std::vector<long long> xs;
    for (long long xi = 1; 2 * xi <= r; ++xi)
      if (std::gcd(xi, r) == 1) xs.push_back(xi);
    for (auto xi : xs)
      for (auto nu : xs) {
        bool orbit = false;
        for (long long s : {xi, r - xi})
          for (long long t : {nu, r - nu})
            if ((s * t) % r == 1 || s == t) orbit = true;
        bool unmarked = bruteForceAffineEquivalent(pTet(r, xi), pTet(r, nu)).has_value();
        ASSERT_EQ(unmarked, orbit) << r << " " << xi << " " << nu;
        ASSERT_EQ(bruteForceAffineEquivalent(pTet(r, xi), pTet(r, nu), true).has_value(), xi == nu);
        auto cx = classifyEmptyTetrahedron(pTet(r, xi), std::nullopt).form;
        auto cn = classifyEmptyTetrahedron(pTet(r, nu), std::nullopt).form;
        ASSERT_EQ(cx == cn, orbit);
      }
  }
}

TEST(EmptyTetrahedra, MirrorParameterIsMarkedEquivalent) {
  for (long long r = 2; r <= 12; ++r)
    for (long long xi = 1; xi < r; ++xi) {
      if (std::gcd(xi, r) != 1) continue;
      ASSERT_TRUE(bruteForceAffineEquivalent(pTet(r, xi), pTet(r, r - xi), true).has_value());
    }
}

TEST(ClassifyMarkedPyramid, Examples) {
  auto w = classifyMarkedPyramid(MarkedPyramid(kOrigin, PointList{{3, 0, 2}, {3, 1, 1}, {3, 2, 3}}));
  EXPECT_EQ(w.form, CanonicalForm::w());
  EXPECT_EQ(w.r, 3);

  auto t = classifyMarkedPyramid(MarkedPyramid(kOrigin, PointList{{1, 4, -5}, {4, 4, -5}, {1, 5, -5}}));
  EXPECT_EQ(t.form, CanonicalForm::t(3, 5, 1));
  EXPECT_EQ(t.witness, IntegerAffineMap::identity(3));

  std::mt19937_64 rng(72);
  auto v = canonicalVertices(CanonicalForm::v());
  auto map = randomAffine(3, rng);
  auto res = classifyMarkedPyramid(MarkedPyramid(map(v.apex), applyMap(map, v.base)));
  EXPECT_EQ(res.form, CanonicalForm::v());
}

TEST(ClassifyMarkedPyramid, NotCompletelyEmpty) {
  MarkedPyramid tall({0, 0, 2}, PointList{{0, 0, 0}, {2, 0, 0}, {0, 2, 0}});
  try {
    classifyMarkedPyramid(tall);
    FAIL() << "expected NotCompletelyEmptyError";
  } catch (NotCompletelyEmptyError const& e) {
    EXPECT_EQ(e.point()[2], 1);
  }
}

TEST(ClassifyMarkedPyramid, SingleStory) {
  MarkedPyramid p({0, 0, 0}, PointList{{0, 0, 1}, {3, 0, 1}, {3, 2, 1}, {0, 2, 1}});
  auto res = classifyMarkedPyramid(p);
  EXPECT_EQ(res.form.tag, FormTag::SingleStory);
  EXPECT_EQ(res.r, 1);
  std::mt19937_64 rng(73);
  auto t = randomAffine(3, rng);
  auto img = classifyMarkedPyramid(MarkedPyramid(t(p.apex()), applyMap(t, p.base().vertices())));
  EXPECT_EQ(img.form, res.form);
}

TEST(ClassifyMarkedPyramid, Idempotent) {
  for (auto const& f : formGrid(6, 12)) {
    auto res = classifyMarkedPyramid(pyramidOf(f));
    ASSERT_EQ(res.form, reported(f)) << f.str();
  }
}

TEST(ClassifyMarkedPyramid, InvariantUnderUnimodularMaps) {
  std::mt19937_64 rng(74);
  std::vector<CanonicalForm> fixtures{CanonicalForm::w(),        CanonicalForm::v(),
                                      CanonicalForm::m(1, 1),    CanonicalForm::m(2, 3),
                                      CanonicalForm::u(1),       CanonicalForm::u(3),
                                      CanonicalForm::t(2, 2, 1), CanonicalForm::t(2, 5, 2)};
  for (auto const& f : fixtures) {
    auto c = canonicalVertices(f);
    for (int k = 0; k < 100; ++k) {
      auto t = randomAffine(3, rng);
      MarkedPyramid p(t(c.apex), applyMap(t, c.base));
      auto res = classifyMarkedPyramid(p);
      ASSERT_EQ(res.form, reported(f));
      auto target = canonicalVertices(res.form);
      ASSERT_EQ(res.witness(p.apex()), target.apex);
      ASSERT_EQ(sortedUnique(applyMap(res.witness, p.base().vertices())), sortedUnique(target.base));
    }
  }
}

TEST(ClassifyMarkedPyramid, ListEntriesArePairwiseNonEquivalent) {
  auto grid = formGrid(3, 6);
  std::erase(grid, CanonicalForm::u(1));
  for (std::size_t i = 0; i < grid.size(); ++i)
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      auto a = canonicalVertices(grid[i]).all();
      auto b = canonicalVertices(grid[j]).all();
      ASSERT_FALSE(bruteForceAffineEquivalent(a, b, true).has_value())
          << grid[i].str() << " ~ " << grid[j].str();
    }
}

TEST(ClassifyMarkedPyramid, UOneCoincidesWithT) {
  auto w = bruteForceAffineEquivalent(canonicalVertices(CanonicalForm::u(1)).all(),
                                      canonicalVertices(CanonicalForm::t(2, 2, 1)).all(), true);
  ASSERT_TRUE(w.has_value());
  EXPECT_EQ((*w)(kOrigin), kOrigin);
}

TEST(ClassifyMarkedPyramid, StripMatrixSendsPOntoT) {
  for (long long r = 2; r <= 12; ++r)
    for (long long xi = 1; 2 * xi <= r; ++xi) {
      if (std::gcd(xi, r) != 1) continue;
      IntegerMatrix m{{xi + 1, xi, -xi}, {r - 1, r - 1, 2 - r}, {-r, -r, r - 1}};
      ASSERT_EQ(abs(determinant(m)), 1);
      auto img = applyMap(IntegerAffineMap(m), pTet(r, xi));
      ASSERT_EQ(sortedUnique(img), sortedUnique(canonicalVertices(CanonicalForm::t(1, r, xi)).all()));
    }
}

TEST(ClassifyBasePolygon, Examples) {
  // V's base in the coordinates (y, z) of its plane x = 2.
  EXPECT_EQ(classifyBasePolygon(ConvexLatticePolygon({{-2, 1}, {-1, -1}, {1, 2}}), 2).kind,
            BetaKind::TriangleV);
  auto t = classifyBasePolygon(ConvexLatticePolygon({{0, 0}, {5, 0}, {0, 1}}), 4);
  EXPECT_EQ(t.kind, BetaKind::TriangleT);
  EXPECT_EQ(t.a, 5);
  EXPECT_THROW(classifyBasePolygon(ConvexLatticePolygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}}), 2),
               NotInListError);
  EXPECT_THROW(classifyBasePolygon(ConvexLatticePolygon({{-2, 1}, {-1, -1}, {1, 2}}), 4),
               NotInListError);
}

TEST(ClassifyBasePolygon, PyramidModeCoversEveryForm) {
  for (auto const& f : formGrid(4, 8)) {
    auto entry = classifyBasePolygon(pyramidOf(f));
    ASSERT_EQ(entry, betaEntryOf(reported(f))) << f.str();
    ConvexLatticePolygon base(canonicalVertices(f).base);
    ASSERT_EQ(classifyBasePolygon(base, f.stories()), entry) << f.str();
  }
}

TEST(ClassifyFace, Examples) {
  ConvexLatticePolygon m11({{2, -1, 0}, {2, -2, 1}, {2, -1, 2}, {2, 0, 1}});
  auto res = classifyFace(m11, 3);
  EXPECT_EQ(res.form, CanonicalForm::m(1, 1));
  EXPECT_EQ(res.r, 2);
  EXPECT_THROW(classifyFace(m11, 2), QuadrangleInDimTwoError);
  ConvexLatticePolygon w({{3, 0, 2}, {3, 1, 1}, {3, 2, 3}});
  auto wf = classifyFace(w, 2);
  EXPECT_EQ(wf.form, CanonicalForm::w());
  EXPECT_EQ(wf.r, 3);
}

TEST(ClassifyFace, QuadrangleInFourSpace) {
  std::mt19937_64 rng(75);
  for (int k = 0; k < 10; ++k) {
    auto u = randomUnimodular(4, rng);
    PointList face;
    for (auto const& v : canonicalVertices(CanonicalForm::m(1, 1)).base)
      face.push_back(u * LatticePoint(std::vector<Integer>{v[0], v[1], v[2], 0}));
    auto res = classifyFace(ConvexLatticePolygon(face), 3);
    ASSERT_EQ(res.form, CanonicalForm::m(1, 1));
    ASSERT_EQ(res.r, 2);
    ASSERT_EQ(res.witness.translation(), LatticePoint::zero(3));
  }
}

TEST(ClassifyFace, OriginInPlaneRejected) {
  EXPECT_THROW(classifyFace(ConvexLatticePolygon({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}}), 2),
               NotAPyramidError);
}

}  // namespace
}  // namespace klein
