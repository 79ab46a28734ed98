#pragma once

// Emptiness predicates, story counts, contained parallelograms and the
// brute-force integer-affine equivalence oracle.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "klein/core.hpp"
#include "klein/lattice.hpp"
#include "klein/normal_form.hpp"
#include "klein/plane.hpp"
#include "klein/polyhedron.hpp"

namespace klein {

class MarkedPyramid {
 public:
  MarkedPyramid(LatticePoint apex, ConvexLatticePolygon base)
      : apex_(std::move(apex)), base_(std::move(base)) {
    if (apex_.dim() != base_.chart().ambientDim())
      throw DimensionError("apex and base dimensions differ");
    if (base_.chart().contains(apex_))
      throw NotAPyramidError("apex " + apex_.str() + " lies in the base plane");
  }
  MarkedPyramid(LatticePoint apex, PointList const& base)
      : MarkedPyramid(std::move(apex), ConvexLatticePolygon(base)) {}

  LatticePoint const& apex() const { return apex_; }
  ConvexLatticePolygon const& base() const { return base_; }
  std::size_t ambientDim() const { return apex_.dim(); }
  // Apex first, then the base vertices in canonical order.
  PointList vertices() const {
    PointList v{apex_};
    v.insert(v.end(), base_.vertices().begin(), base_.vertices().end());
    return v;
  }

 private:
  LatticePoint apex_;
  ConvexLatticePolygon base_;
};

struct StoryCount {
  Integer r;
  bool isMultistory() const { return r >= 2; }
};

inline StoryCount storyCount(MarkedPyramid const& p) {
  return {integerDistance(p.apex(), p.base().plane())};
}

// Points of `pts` that are not in the convex hull of the others.
inline PointList extremePoints(PointList const& pts) {
  PointList u = sortedUnique(pts);
  if (u.size() <= 2) return u;
  PointList out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    PointList others;
    for (std::size_t j = 0; j < u.size(); ++j)
      if (j != i) others.push_back(u[j]);
    if (!hrepOf(others).contains(u[i])) out.push_back(u[i]);
  }
  return out;
}

inline bool isEmptyPolyhedron(PointList const& vertices) {
  PointList u = sortedUnique(vertices);
  if (u.size() != vertices.size()) throw DegenerateError("repeated vertices");
  if (extremePoints(u).size() != u.size())
    throw DegenerateError("vertices are not in convex position");
  return latticePointsInHull(u) == u;
}

// First lattice point of the solid pyramid that is neither the apex nor in
// the base plane.
inline std::optional<LatticePoint> completeEmptinessViolation(MarkedPyramid const& p) {
  for (auto const& q : latticePointsInHull(p.vertices())) {
    if (q == p.apex() || p.base().chart().contains(q)) continue;
    return q;
  }
  return std::nullopt;
}

class NotCompletelyEmptyError : public NotEmptyError {
 public:
  explicit NotCompletelyEmptyError(LatticePoint point)
      : NotEmptyError("pyramid contains the lattice point " + point.str()),
        point_(std::move(point)) {}
  LatticePoint const& point() const { return point_; }

 private:
  LatticePoint point_;
};

inline bool isCompletelyEmpty(MarkedPyramid const& p) {
  return !completeEmptinessViolation(p).has_value();
}

enum class ParallelogramKind { Unit, Diamond };

struct ParallelogramWitness {
  ParallelogramKind kind;
  PointList vertices;  // cyclic order
};

namespace detail {

inline bool inConvexPolygon2(PointList const& ccw, LatticePoint const& p) {
  for (std::size_t i = 0; i < ccw.size(); ++i)
    if (cross2(ccw[i], ccw[(i + 1) % ccw.size()], p) < 0) return false;
  return true;
}

inline std::optional<PointList> convexQuadrangle(PointList const& sorted) {
  std::size_t const m = sorted.size();
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = i + 1; j < m; ++j)
      for (std::size_t k = j + 1; k < m; ++k)
        for (std::size_t l = k + 1; l < m; ++l) {
          PointList q{sorted[i], sorted[j], sorted[k], sorted[l]};
          auto h = hull2d(q);
          if (h.size() != 4) continue;
          PointList out;
          for (auto idx : h) out.push_back(q[idx]);
          return out;
        }
  return std::nullopt;
}

// A lattice parallelogram inside the ccw quadrangle q: a corner
// parallelogram when one fits, else the first one among its lattice points.
inline PointList parallelogramIn(PointList const& q) {
  for (std::size_t c = 0; c < 4; ++c) {
    auto const& v = q[c];
    auto const& next = q[(c + 1) % 4];
    auto const& prev = q[(c + 3) % 4];
    LatticePoint far = next + prev - v;
    if (inConvexPolygon2(q, far)) return {v, next, far, prev};
  }
  PointList pts = latticePointsInHull(q);
  for (auto const& a : pts)
    for (auto const& b : pts)
      for (auto const& c : pts) {
        if (cross2(a, b, c) <= 0) continue;
        LatticePoint d = a + c - b;
        if (inConvexPolygon2(q, d)) return {a, b, c, d};
      }
  throw InternalError("convex lattice quadrangle without a lattice parallelogram");
}

}  // namespace detail

// Follows the shrinking iteration: a parallelogram with extra lattice points
// is replaced by one spanned by a diagonal and a centrally symmetric pair.
inline ParallelogramWitness findContainedParallelogram(ConvexLatticePolygon const& poly) {
  auto const& chart = poly.chart();
  PointList local = latticePointsInHull(poly.localVertices());
  auto quad = detail::convexQuadrangle(local);
  if (!quad) throw NotEnoughPointsError("polygon has no convex lattice quadrangle");
  PointList par = detail::parallelogramIn(*quad);
  for (;;) {
    PointList pts = latticePointsInHull(par);
    LatticePoint twiceCenter = par[0] + par[2];
    std::optional<LatticePoint> other;
    bool hasCenter = false;
    for (auto const& p : pts) {
      if (std::find(par.begin(), par.end(), p) != par.end()) continue;
      if (Integer(2) * p == twiceCenter) {
        hasCenter = true;
      } else if (!other) {
        other = p;
      }
    }
    if (!other) {
      ParallelogramWitness w{hasCenter ? ParallelogramKind::Diamond : ParallelogramKind::Unit, {}};
      for (auto const& p : par) w.vertices.push_back(chart.lift(p));
      return w;
    }
    LatticePoint o = *other;
    LatticePoint o2 = twiceCenter - o;
    if (detail::cross2(par[0], par[2], o) != 0) {
      par = {par[0], o, par[2], o2};
    } else {
      par = {par[1], o, par[3], o2};
    }
    if (detail::cross2(par[0], par[1], par[2]) < 0) std::swap(par[1], par[3]);
  }
}

namespace detail {

// Ambient unimodular map that acts as `local` between the two charts.
inline IntegerAffineMap liftChartMap(LatticeChart const& from, LatticeChart const& to,
                                     IntegerAffineMap const& local) {
  std::size_t const n = from.ambientDim();
  std::size_t const d = from.rank();
  IntegerMatrix block = IntegerMatrix::identity(n);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) block(i, j) = local.linear()(i, j);
  IntegerMatrix toInvT = unimodularInverse(to.transform()).transposed();
  IntegerMatrix lin = toInvT * block * from.transform().transposed();
  LatticePoint shift = LatticePoint::zero(n);
  for (std::size_t i = 0; i < d; ++i) shift[i] = local.translation()[i];
  LatticePoint t = to.origin() + toInvT * shift - lin * from.origin();
  return IntegerAffineMap(lin, t);
}

}  // namespace detail

namespace detail {

// Unimodular affine map of Z^d sending the full-dimensional vertex set `va`
// onto `vb`, with va[pin->first] going to vb[pin->second] when pinned.
inline std::optional<IntegerAffineMap> matchVertices(
    PointList const& va, PointList const& vb,
    std::optional<std::pair<std::size_t, std::size_t>> pin = std::nullopt) {
  if (va.size() != vb.size() || va.empty()) return std::nullopt;
  std::size_t const m = va.size();
  std::size_t const d = va[0].dim();
  std::size_t const apexA = pin ? pin->first : 0;

  std::vector<std::size_t> frame{apexA};
  PointList frameDirs;
  for (std::size_t i = 0; i < m && frame.size() < d + 1; ++i) {
    if (i == apexA) continue;
    frameDirs.push_back(va[i] - va[apexA]);
    if (rank(frameDirs) == frameDirs.size()) {
      frame.push_back(i);
    } else {
      frameDirs.pop_back();
    }
  }
  if (frame.size() != d + 1) throw DimensionError("vertex set is not full-dimensional");
  RationalMatrix aInv = *inverse(toRational(IntegerMatrix::fromColumns(frameDirs)));
  PointList sortedB = sortedUnique(vb);

  std::vector<std::size_t> image(d + 1);
  std::vector<bool> used(m, false);
  std::optional<IntegerAffineMap> found;
  auto tryImage = [&]() {
    PointList imageDirs;
    for (std::size_t i = 1; i <= d; ++i) imageDirs.push_back(vb[image[i]] - vb[image[0]]);
    auto lin = toIntegerMatrix(IntegerMatrix::fromColumns(imageDirs) * aInv);
    if (!lin || abs(determinant(*lin)) != 1) return;
    IntegerAffineMap t(*lin, vb[image[0]] - *lin * va[frame[0]]);
    PointList mapped;
    mapped.reserve(m);
    for (auto const& p : va) mapped.push_back(t(p));
    if (sortedUnique(mapped) == sortedB) found = t;
  };
  std::function<void(std::size_t)> assign = [&](std::size_t k) {
    if (k == d + 1) {
      tryImage();
      return;
    }
    for (std::size_t j = 0; j < m && !found; ++j) {
      if (used[j]) continue;
      if (pin && ((k == 0) != (j == pin->second))) continue;
      used[j] = true;
      image[k] = j;
      assign(k + 1);
      used[j] = false;
    }
  };
  assign(0);
  return found;
}

}  // namespace detail

// Searches for a unimodular affine map sending conv(a) onto conv(b). With
// `marked`, a[0] and b[0] are apexes and must correspond.
inline std::optional<IntegerAffineMap> bruteForceAffineEquivalent(PointList const& a,
                                                                  PointList const& b,
                                                                  bool marked = false) {
  if (a.empty() || b.empty()) throw DimensionError("empty configuration");
  if (a[0].dim() != b[0].dim()) throw DimensionError("configurations in different dimensions");
  LatticeChart ca = LatticeChart::ofAffineHull(a);
  LatticeChart cb = LatticeChart::ofAffineHull(b);
  if (ca.rank() != cb.rank()) return std::nullopt;
  if (ca.rank() > 3) throw DimensionError("configurations above dimension 3");
  if (ca.rank() == 0) return IntegerAffineMap::translation(b[0] - a[0]);

  PointList va = ca.coordinates(extremePoints(a));
  PointList vb = cb.coordinates(extremePoints(b));
  if (va.size() != vb.size()) return std::nullopt;
  std::optional<std::pair<std::size_t, std::size_t>> pin;
  if (marked) {
    auto ia = std::find(va.begin(), va.end(), ca.coordinates(a[0]));
    auto ib = std::find(vb.begin(), vb.end(), cb.coordinates(b[0]));
    if ((ia == va.end()) != (ib == vb.end())) return std::nullopt;
    if (ia == va.end()) throw DimensionError("marked point is not a vertex");
    pin = {static_cast<std::size_t>(ia - va.begin()), static_cast<std::size_t>(ib - vb.begin())};
  }
  auto local = detail::matchVertices(va, vb, pin);
  if (!local) return std::nullopt;
  return detail::liftChartMap(ca, cb, *local);
}

}  // namespace klein
