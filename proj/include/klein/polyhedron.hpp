#pragma once

// Exact facet enumeration for polyhedra given by points and recession rays.
//
// The polyhedron conv(points) + cone(rays) is homogenized into the cone
// generated by (p, 1) and (r, 0); its facets are the extreme rays of the dual
// cone, computed with the double description method in exact integers.

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <tuple>
#include <utility>
#include <vector>

#include "klein/core.hpp"
#include "klein/plane.hpp"

namespace klein {

// normal · x >= offset, with equality exactly on the tight generators.
struct Facet {
  LatticePoint normal;
  Integer offset;
  std::vector<std::size_t> tightPoints;
  std::vector<std::size_t> tightRays;

  bool isCompact() const { return tightRays.empty(); }
};

namespace detail {

class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(std::size_t n) : words_((n + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  bool test(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }
  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  Bitset operator&(Bitset const& o) const {
    Bitset r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] &= o.words_[i];
    return r;
  }
  bool contains(Bitset const& sub) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if ((sub.words_[i] & ~words_[i]) != 0) return false;
    return true;
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct DdRay {
  LatticePoint y;
  Bitset tight;
};

}  // namespace detail

// Facets of conv(points) + cone(rays). The generators must affinely span the
// whole ambient space, otherwise RankError.
inline std::vector<Facet> facetsOf(PointList const& points, PointList const& rays = {}) {
  using detail::Bitset;
  using detail::DdRay;
  if (points.empty()) throw RankError("polyhedron without points");
  std::size_t const d = points[0].dim();
  std::size_t const D = d + 1;
  std::vector<LatticePoint> gens;
  gens.reserve(points.size() + rays.size());
  for (auto const& p : points) {
    if (p.dim() != d) throw DimensionError("generator dimension mismatch");
    LatticePoint g(D);
    for (std::size_t i = 0; i < d; ++i) g[i] = p[i];
    g[d] = 1;
    gens.push_back(std::move(g));
  }
  for (auto const& r : rays) {
    if (r.dim() != d) throw DimensionError("generator dimension mismatch");
    LatticePoint g(D);
    for (std::size_t i = 0; i < d; ++i) g[i] = r[i];
    gens.push_back(std::move(g));
  }
  std::size_t const G = gens.size();

  // Pick D independent generators greedily.
  std::vector<std::size_t> initial;
  std::vector<bool> used(G, false);
  {
    PointList chosen;
    for (std::size_t j = 0; j < G && initial.size() < D; ++j) {
      chosen.push_back(gens[j]);
      if (rank(chosen) == chosen.size()) {
        initial.push_back(j);
        used[j] = true;
      } else {
        chosen.pop_back();
      }
    }
  }
  if (initial.size() < D) throw RankError("generators are not full-dimensional");

  std::vector<DdRay> current;
  {
    PointList rowsG;
    for (auto j : initial) rowsG.push_back(gens[j]);
    auto inv = inverse(toRational(IntegerMatrix::fromRows(rowsG)));
    for (std::size_t k = 0; k < D; ++k) {
      // Column k of the inverse, cleared of denominators.
      Integer lcm = 1;
      for (std::size_t i = 0; i < D; ++i) {
        Integer den = boost::multiprecision::denominator((*inv)(i, k));
        lcm = lcm / gcd(lcm, den) * den;
      }
      LatticePoint y(D);
      for (std::size_t i = 0; i < D; ++i)
        y[i] = boost::multiprecision::numerator(Rational((*inv)(i, k) * lcm));
      DdRay ray{y.primitive(), Bitset(G)};
      for (std::size_t m = 0; m < D; ++m)
        if (m != k) ray.tight.set(initial[m]);
      current.push_back(std::move(ray));
    }
  }

  for (std::size_t j = 0; j < G; ++j) {
    if (used[j]) continue;
    std::vector<Integer> s(current.size());
    std::vector<std::size_t> pos, neg;
    std::vector<DdRay> next;
    next.reserve(current.size());
    for (std::size_t k = 0; k < current.size(); ++k) {
      s[k] = dot(current[k].y, gens[j]);
      if (s[k] > 0) pos.push_back(k);
      else if (s[k] < 0) neg.push_back(k);
    }
    if (neg.empty()) {
      for (std::size_t k = 0; k < current.size(); ++k)
        if (s[k] == 0) current[k].tight.set(j);
      continue;
    }
    for (std::size_t k = 0; k < current.size(); ++k) {
      if (s[k] < 0) continue;
      DdRay r = current[k];
      if (s[k] == 0) r.tight.set(j);
      next.push_back(std::move(r));
    }
    for (auto p : pos) {
      for (auto n : neg) {
        Bitset common = current[p].tight & current[n].tight;
        if (common.count() + 2 < D) continue;
        bool adjacent = true;
        for (std::size_t k = 0; k < current.size() && adjacent; ++k) {
          if (k == p || k == n) continue;
          if (current[k].tight.contains(common)) adjacent = false;
        }
        if (!adjacent) continue;
        LatticePoint y = s[p] * current[n].y - s[n] * current[p].y;
        common.set(j);
        next.push_back({y.primitive(), std::move(common)});
      }
    }
    current = std::move(next);
  }

  std::vector<Facet> facets;
  for (auto const& ray : current) {
    Facet f;
    f.normal = LatticePoint(d);
    for (std::size_t i = 0; i < d; ++i) f.normal[i] = ray.y[i];
    if (f.normal.isZero()) continue;  // the face at infinity
    f.offset = -ray.y[d];
    for (std::size_t i = 0; i < points.size(); ++i)
      if (dot(f.normal, points[i]) == f.offset) f.tightPoints.push_back(i);
    for (std::size_t i = 0; i < rays.size(); ++i)
      if (dot(f.normal, rays[i]) == 0) f.tightRays.push_back(i);
    facets.push_back(std::move(f));
  }
  std::sort(facets.begin(), facets.end(), [](Facet const& a, Facet const& b) {
    return std::tie(a.tightPoints, a.tightRays) < std::tie(b.tightPoints, b.tightRays);
  });
  return facets;
}

// Half-space description of a polytope that may be lower dimensional: the
// affine hull chart plus the facets of the point set inside that chart.
struct PolytopeHRep {
  LatticeChart chart;
  std::vector<Facet> facets;  // in chart coordinates

  bool contains(LatticePoint const& p) const {
    auto c = chart.tryCoordinates(p);
    if (!c) return false;
    for (auto const& f : facets)
      if (dot(f.normal, *c) < f.offset) return false;
    return true;
  }
};

inline PolytopeHRep hrepOf(PointList const& pts) {
  LatticeChart chart = LatticeChart::ofAffineHull(pts);
  PolytopeHRep h{chart, {}};
  if (chart.rank() == 0) return h;
  h.facets = facetsOf(chart.coordinates(pts));
  return h;
}

}  // namespace klein
