#pragma once

// Lattice primitives on top of the exact linear algebra: convex lattice
// polygons, integer volume, lattice point enumeration and affine images.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "klein/core.hpp"
#include "klein/normal_form.hpp"
#include "klein/plane.hpp"
#include "klein/polyhedron.hpp"

namespace klein {

namespace detail {

inline Integer cross2(LatticePoint const& o, LatticePoint const& a, LatticePoint const& b) {
  return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0]);
}

// Indices of the strict convex hull vertices of 2D points, counterclockwise,
// starting at the lexicographically smallest point.
inline std::vector<std::size_t> hull2d(PointList const& pts) {
  std::vector<std::size_t> idx(pts.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) { return pts[a] < pts[b]; });
  idx.erase(std::unique(idx.begin(), idx.end(),
                        [&](std::size_t a, std::size_t b) { return pts[a] == pts[b]; }),
            idx.end());
  if (idx.size() < 3) return idx;
  std::vector<std::size_t> h(2 * idx.size());
  std::size_t k = 0;
  for (std::size_t i = 0; i < idx.size(); ++i) {
    while (k >= 2 && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= 0) --k;
    h[k++] = idx[i];
  }
  for (std::size_t i = idx.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross2(pts[h[k - 2]], pts[h[k - 1]], pts[idx[i]]) <= 0) --k;
    h[k++] = idx[i];
  }
  h.resize(k - 1);
  return h;
}

}  // namespace detail

// Convex polygon with lattice vertices in a 2-plane of Z^n. Vertices are kept
// in canonical cyclic order: lexicographically lowest vertex first, then
// counterclockwise in the induced lattice basis of the plane.
class ConvexLatticePolygon {
 public:
  // The vertices must be in strictly convex position (no three collinear).
  explicit ConvexLatticePolygon(PointList vertices) {
    PointList sorted = sortedUnique(vertices);
    if (sorted.size() != vertices.size())
      throw DegenerateError("polygon has repeated vertices");
    init(std::move(sorted), /*strict=*/true);
  }

  // Convex hull of an arbitrary coplanar point set of affine rank 2.
  static ConvexLatticePolygon hullOf(PointList const& pts) {
    ConvexLatticePolygon p;
    p.init(sortedUnique(pts), /*strict=*/false);
    return p;
  }

  PointList const& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  LatticeChart const& chart() const { return chart_; }
  // Vertices in chart coordinates, same order as vertices().
  PointList const& localVertices() const { return local_; }
  IntegerPlane plane() const {
    return IntegerPlane(chart_.origin(), chart_.basis());
  }

  friend bool operator==(ConvexLatticePolygon const& a, ConvexLatticePolygon const& b) {
    return a.vertices_ == b.vertices_;
  }

 private:
  ConvexLatticePolygon() = default;

  void init(PointList sorted, bool strict) {
    if (sorted.size() < 3) throw DegenerateError("polygon needs at least three vertices");
    chart_ = LatticeChart::ofAffineHull(sorted);
    if (chart_.rank() != 2)
      throw DegenerateError(chart_.rank() < 2 ? "polygon vertices are collinear"
                                              : "polygon vertices are not coplanar");
    PointList local = chart_.coordinates(sorted);
    auto order = detail::hull2d(local);
    if (strict && order.size() != sorted.size())
      throw DegenerateError("polygon vertices are not in strictly convex position");
    std::size_t start = 0;
    for (std::size_t i = 1; i < order.size(); ++i)
      if (sorted[order[i]] < sorted[order[start]]) start = i;
    for (std::size_t i = 0; i < order.size(); ++i) {
      std::size_t j = order[(start + i) % order.size()];
      vertices_.push_back(sorted[j]);
      local_.push_back(local[j]);
    }
  }

  PointList vertices_;
  PointList local_;
  LatticeChart chart_{LatticePoint::zero(1), {}};
};

// Twice the Euclidean area measured in the plane's induced lattice, i.e. the
// area in units of the minimal lattice triangle.
inline Integer integerVolume(ConvexLatticePolygon const& poly) {
  auto const& v = poly.localVertices();
  Integer s = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    auto const& a = v[i];
    auto const& b = v[(i + 1) % v.size()];
    s += a[0] * b[1] - a[1] * b[0];
  }
  return abs(s);
}

// Integer volume of a full-dimensional lattice simplex: |det| of its edges.
inline Integer simplexVolume(PointList const& simplex) {
  PointList edges;
  for (std::size_t i = 1; i < simplex.size(); ++i) edges.push_back(simplex[i] - simplex[0]);
  return abs(determinant(IntegerMatrix::fromColumns(edges)));
}

namespace detail {

// Lattice points of a full-dimensional simplex in Z^k. Every such point other
// than the vertices v0 + e_i lies in the half-open parallelepiped spanned by
// the edges e_i at v0, whose lattice points are the reductions of the coset
// representatives read off the Hermite form of the edge lattice.
inline PointList simplexPoints(PointList const& s) {
  std::size_t const k = s.size() - 1;
  PointList edges;
  for (std::size_t i = 1; i <= k; ++i) edges.push_back(s[i] - s[0]);
  if (k >= 2 && determinant(IntegerMatrix::fromColumns(edges)) < 0) std::swap(edges[0], edges[1]);
  IntegerMatrix E = IntegerMatrix::fromColumns(edges);
  Integer det = determinant(E);
  if (det == 0) throw DegenerateError("simplex is degenerate");
  // adj(E) = det * E^-1, so E^-1 x = adj x / det.
  IntegerMatrix adj(k, k);
  {
    auto inv = *inverse(toRational(E));
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) adj(i, j) = toInteger(inv(i, j) * det);
  }
  auto hnf = hermiteNormalForm(E.transposed());
  PointList out;
  for (std::size_t i = 0; i < k; ++i) out.push_back(s[0] + edges[i]);
  out.push_back(s[0]);
  LatticePoint x(k);
  std::function<void(std::size_t)> walk = [&](std::size_t axis) {
    if (axis == k) {
      LatticePoint num = adj * x;
      LatticePoint p = x;
      Integer sum = 0;
      for (std::size_t i = 0; i < k; ++i) {
        Integer q = floorDiv(num[i], det);
        if (q != 0) p -= q * edges[i];
        sum += num[i] - q * det;
      }
      if (sum <= det && !p.isZero()) out.push_back(s[0] + p);
      return;
    }
    for (x[axis] = 0; x[axis] < hnf.H(axis, axis); ++x[axis]) walk(axis + 1);
  };
  walk(0);
  return out;
}

inline void fanTriangles(PointList const& ccw, std::function<void(PointList const&)> const& emit) {
  for (std::size_t i = 1; i + 1 < ccw.size(); ++i) emit({ccw[0], ccw[i], ccw[i + 1]});
}

inline PointList boxScan(PointList const& local, std::vector<Facet> const& facets) {
  std::size_t const k = local[0].dim();
  LatticePoint lo = local[0], hi = local[0];
  for (auto const& p : local)
    for (std::size_t i = 0; i < k; ++i) {
      if (p[i] < lo[i]) lo[i] = p[i];
      if (p[i] > hi[i]) hi[i] = p[i];
    }
  PointList out;
  LatticePoint cur = lo;
  std::function<void(std::size_t)> scan = [&](std::size_t axis) {
    if (axis == k) {
      for (auto const& f : facets)
        if (dot(f.normal, cur) < f.offset) return;
      out.push_back(cur);
      return;
    }
    for (cur[axis] = lo[axis]; cur[axis] <= hi[axis]; ++cur[axis]) scan(axis + 1);
  };
  scan(0);
  return out;
}

}  // namespace detail

// Every lattice point of the closed convex hull, sorted lexicographically.
// Hulls of dimension 2 and 3 are triangulated and each simplex enumerated
// through its parallelepiped; higher dimensions use a bounding-box scan in the
// affine hull's lattice chart with exact closed half-space tests.
inline PointList latticePointsInHull(PointList const& vertices) {
  if (vertices.empty()) throw DimensionError("hull of an empty vertex list");
  LatticeChart chart = LatticeChart::ofAffineHull(vertices);
  std::size_t const k = chart.rank();
  if (k == 0) return {vertices[0]};
  PointList local = chart.coordinates(vertices);
  PointList found;
  if (k == 1) {
    Integer lo = local[0][0], hi = local[0][0];
    for (auto const& p : local) {
      if (p[0] < lo) lo = p[0];
      if (p[0] > hi) hi = p[0];
    }
    for (Integer t = lo; t <= hi; ++t) found.push_back(LatticePoint(std::vector<Integer>{t}));
  } else if (k == 2) {
    auto order = detail::hull2d(local);
    PointList ccw;
    for (auto i : order) ccw.push_back(local[i]);
    detail::fanTriangles(ccw, [&](PointList const& t) {
      auto pts = detail::simplexPoints(t);
      found.insert(found.end(), pts.begin(), pts.end());
    });
  } else if (k == 3) {
    LatticePoint apex = *std::min_element(local.begin(), local.end());
    for (auto const& f : facetsOf(local)) {
      if (dot(f.normal, apex) == f.offset) continue;
      PointList face;
      for (auto i : f.tightPoints) face.push_back(local[i]);
      LatticeChart faceChart = LatticeChart::ofAffineHull(face);
      PointList faceLocal = faceChart.coordinates(face);
      auto order = detail::hull2d(faceLocal);
      PointList ccw;
      for (auto i : order) ccw.push_back(face[i]);
      detail::fanTriangles(ccw, [&](PointList const& t) {
        auto pts = detail::simplexPoints({apex, t[0], t[1], t[2]});
        found.insert(found.end(), pts.begin(), pts.end());
      });
    }
  } else {
    found = detail::boxScan(local, facetsOf(local));
  }
  PointList out;
  out.reserve(found.size());
  for (auto const& c : sortedUnique(found)) out.push_back(chart.lift(c));
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

// x, y with x a + y b = gcd(a, b) >= 0.
inline std::pair<Integer, Integer> bezout(Integer a, Integer b) {
  Integer x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    Integer q = floorDiv(a, b);
    Integer t = a - q * b;
    a = b;
    b = t;
    t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) return {-x0, -y0};
  return {x0, y0};
}

}  // namespace detail

// Canonical representative of a convex lattice polygon in Z^2 (vertices in
// cyclic order) under integer-affine maps. Each choice of starting vertex and
// direction is normalized so that the first edge runs along the positive
// x-axis from the origin and the last vertex has 0 <= x < y; the
// lexicographically smallest vertex list wins.
inline PointList polygonNormalForm(PointList const& cyclic) {
  std::size_t const m = cyclic.size();
  std::optional<PointList> best;
  for (std::size_t i = 0; i < m; ++i)
    for (int dir : {1, -1}) {
      auto at = [&](std::size_t step) {
        std::size_t idx = dir > 0 ? (i + step) % m : (i + m - step % m) % m;
        return cyclic[idx] - cyclic[i];
      };
      LatticePoint e = at(1).primitive();
      auto [x, y] = detail::bezout(e[0], e[1]);
      IntegerMatrix u{{0, 0}, {0, 0}};
      u(0, 0) = x;
      u(0, 1) = y;
      u(1, 0) = -e[1];
      u(1, 1) = e[0];
      LatticePoint last = u * at(m - 1);
      if (last[1] < 0) {
        u(1, 0) = -u(1, 0);
        u(1, 1) = -u(1, 1);
        last = u * at(m - 1);
      }
      Integer k = -floorDiv(last[0], last[1]);
      PointList cand;
      cand.reserve(m);
      for (std::size_t s = 0; s < m; ++s) {
        LatticePoint p = u * at(s);
        p[0] += k * p[1];
        cand.push_back(p);
      }
      if (!best || cand < *best) best = std::move(cand);
    }
  return *best;
}

inline PointList polygonNormalForm(ConvexLatticePolygon const& poly) {
  return polygonNormalForm(poly.localVertices());
}

inline PointList applyMap(IntegerAffineMap const& t, PointList const& pts) {
  PointList out;
  out.reserve(pts.size());
  for (auto const& p : pts) {
    if (p.dim() != t.dim()) throw DimensionError("applyMap: dimension mismatch");
    out.push_back(t(p));
  }
  return out;
}

}  // namespace klein
