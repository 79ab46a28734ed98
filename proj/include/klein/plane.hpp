#pragma once

// Integer planes, their induced lattices, primitive functionals and integer
// distances.

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "klein/core.hpp"
#include "klein/normal_form.hpp"

namespace klein {

// Affine plane basePoint + span(directions). Directions must be independent.
class IntegerPlane {
 public:
  IntegerPlane(LatticePoint base, PointList directions)
      : base_(std::move(base)), directions_(std::move(directions)) {
    for (auto const& d : directions_)
      if (d.dim() != base_.dim()) throw DimensionError("plane direction dimension");
    if (klein::rank(directions_) != directions_.size())
      throw RankError("plane directions are linearly dependent");
  }

  // Plane through the given points; they must be affinely independent.
  static IntegerPlane through(PointList const& pts) {
    if (pts.empty()) throw RankError("plane through no points");
    PointList dirs;
    for (std::size_t i = 1; i < pts.size(); ++i) dirs.push_back(pts[i] - pts[0]);
    return IntegerPlane(pts[0], std::move(dirs));
  }

  LatticePoint const& basePoint() const { return base_; }
  PointList const& directions() const { return directions_; }
  std::size_t rank() const { return directions_.size(); }
  std::size_t ambientDim() const { return base_.dim(); }

 private:
  LatticePoint base_;
  PointList directions_;
};

// Coordinates on the lattice (affine span - origin) ∩ Z^n of a set of
// vectors. `basis()` is a lattice basis of that saturated sublattice and
// `coordinates` is the bijection onto Z^rank.
class LatticeChart {
 public:
  LatticeChart(LatticePoint origin, PointList const& generators)
      : origin_(std::move(origin)) {
    std::size_t const n = origin_.dim();
    if (generators.empty()) {
      Q_ = IntegerMatrix::identity(n);
      rank_ = 0;
      return;
    }
    auto snf = smithNormalForm(IntegerMatrix::fromRows(generators));
    Q_ = std::move(snf.V);
    rank_ = 0;
    for (std::size_t i = 0; i < std::min(snf.S.rows(), snf.S.cols()); ++i)
      if (snf.S(i, i) != 0) ++rank_;
    IntegerMatrix Qinv = unimodularInverse(Q_);
    for (std::size_t i = 0; i < rank_; ++i) basis_.push_back(row(Qinv, i));
  }

  // Chart of the affine hull of a point set, anchored at its first point.
  static LatticeChart ofAffineHull(PointList const& pts) {
    if (pts.empty()) throw RankError("affine hull of an empty set");
    PointList gens;
    for (std::size_t i = 1; i < pts.size(); ++i) gens.push_back(pts[i] - pts[0]);
    return LatticeChart(pts[0], gens);
  }
  static LatticeChart ofPlane(IntegerPlane const& plane) {
    return LatticeChart(plane.basePoint(), plane.directions());
  }

  std::size_t rank() const { return rank_; }
  std::size_t ambientDim() const { return origin_.dim(); }
  LatticePoint const& origin() const { return origin_; }
  PointList const& basis() const { return basis_; }
  // Unimodular Q: row vector v maps to v * Q; first `rank` entries are chart
  // coordinates, the rest vanish exactly on the chart's span.
  IntegerMatrix const& transform() const { return Q_; }

  bool contains(LatticePoint const& p) const {
    LatticePoint full = fullCoordinates(p - origin_);
    for (std::size_t j = rank_; j < full.dim(); ++j)
      if (full[j] != 0) return false;
    return true;
  }

  std::optional<LatticePoint> tryCoordinates(LatticePoint const& p) const {
    LatticePoint full = fullCoordinates(p - origin_);
    for (std::size_t j = rank_; j < full.dim(); ++j)
      if (full[j] != 0) return std::nullopt;
    LatticePoint c(rank_);
    for (std::size_t j = 0; j < rank_; ++j) c[j] = full[j];
    return c;
  }

  LatticePoint coordinates(LatticePoint const& p) const {
    auto c = tryCoordinates(p);
    if (!c) throw DimensionError("point " + p.str() + " is not in the chart's span");
    return *c;
  }
  PointList coordinates(PointList const& pts) const {
    PointList out;
    out.reserve(pts.size());
    for (auto const& p : pts) out.push_back(coordinates(p));
    return out;
  }

  LatticePoint lift(LatticePoint const& c) const {
    if (c.dim() != rank_) throw DimensionError("chart coordinate dimension");
    LatticePoint p = origin_;
    for (std::size_t i = 0; i < rank_; ++i) p += c[i] * basis_[i];
    return p;
  }

 private:
  LatticePoint fullCoordinates(LatticePoint const& v) const {
    LatticePoint out(Q_.cols());
    for (std::size_t j = 0; j < Q_.cols(); ++j)
      for (std::size_t i = 0; i < Q_.rows(); ++i) out[j] += v[i] * Q_(i, j);
    return out;
  }

  LatticePoint origin_;
  IntegerMatrix Q_;
  std::size_t rank_ = 0;
  PointList basis_;
};

inline PointList inducedPlaneLattice(IntegerPlane const& plane) {
  return LatticeChart::ofPlane(plane).basis();
}

// f(x) = coefficients · x - offset
struct PrimitiveFunctional {
  LatticePoint coefficients;
  Integer offset;

  Integer operator()(LatticePoint const& p) const {
    return dot(coefficients, p) - offset;
  }
  friend bool operator==(PrimitiveFunctional const&, PrimitiveFunctional const&) = default;
};

namespace detail {

inline void normalizeSign(PrimitiveFunctional& f) {
  for (std::size_t i = 0; i < f.coefficients.dim(); ++i) {
    if (f.coefficients[i] == 0) continue;
    if (f.coefficients[i] < 0) {
      f.coefficients = -f.coefficients;
      f.offset = -f.offset;
    }
    return;
  }
}

}  // namespace detail

// Functional vanishing on `plane`, primitive on the lattice of `span`.
// `plane` must have codimension one inside `span`.
inline PrimitiveFunctional primitiveFunctional(IntegerPlane const& plane,
                                               LatticeChart const& span) {
  if (span.rank() != plane.rank() + 1)
    throw RankError("plane must have codimension one in its span");
  if (!span.contains(plane.basePoint()))
    throw DimensionError("plane is not contained in the span");
  PointList local;
  for (auto const& d : plane.directions()) local.push_back(span.coordinates(span.origin() + d));
  // Primitive normal of the local directions inside Z^k.
  std::size_t const k = span.rank();
  LatticePoint u(k);
  if (local.empty()) {
    u[0] = 1;
  } else {
    LatticeChart localChart(LatticePoint::zero(k), local);
    u = column(localChart.transform(), k - 1);
  }
  // Lift u to an ambient integer covector c with c · basis_i = u_i.
  LatticePoint w = LatticePoint::zero(span.ambientDim());
  for (std::size_t i = 0; i < k; ++i) w[i] = u[i];
  PrimitiveFunctional f{span.transform() * w, 0};
  f.offset = dot(f.coefficients, plane.basePoint());
  detail::normalizeSign(f);
  return f;
}

// Codimension-one plane in its ambient space.
inline PrimitiveFunctional primitiveFunctional(IntegerPlane const& plane) {
  if (plane.rank() + 1 != plane.ambientDim())
    throw RankError("plane must be a hyperplane of the ambient space");
  return primitiveFunctional(plane, LatticeChart(LatticePoint::zero(plane.ambientDim()),
                                                 [&] {
                                                   PointList e;
                                                   for (std::size_t i = 0; i < plane.ambientDim(); ++i)
                                                     e.push_back(LatticePoint::unit(plane.ambientDim(), i));
                                                   return e;
                                                 }()));
}

inline Integer integerDistance(LatticePoint const& p, IntegerPlane const& plane,
                               LatticeChart const& span) {
  if (!span.contains(p)) throw DimensionError("point is not in the span");
  return abs(primitiveFunctional(plane, span)(p));
}

// Distance measured inside the joint span of the plane and the point.
inline Integer integerDistance(LatticePoint const& p, IntegerPlane const& plane) {
  PointList gens = plane.directions();
  gens.push_back(p - plane.basePoint());
  LatticeChart span(plane.basePoint(), gens);
  if (span.rank() == plane.rank()) return 0;
  return integerDistance(p, plane, span);
}

}  // namespace klein
