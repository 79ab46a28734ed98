#pragma once

// Sails of rational simplicial cones, their compact faces, and the
// realization of list faces as faces of sails.
//
// Every lattice point of a simplicial cone is a lattice point of the
// half-open fundamental parallelepiped plus a nonnegative integer combination
// of the rays. The sail polyhedron is therefore conv(S) + cone(rays) with S the
// nonzero parallelepiped points together with the rays.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <functional>
#include <iterator>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "klein/classifier.hpp"
#include "klein/core.hpp"
#include "klein/lattice.hpp"
#include "klein/normal_form.hpp"
#include "klein/plane.hpp"
#include "klein/polyhedron.hpp"

namespace klein {

namespace detail {

// Primitive generator of the kernel of m, which must have rank cols - 1.
inline LatticePoint kernelVector(IntegerMatrix const& m) {
  auto h = hermiteNormalForm(m.transposed());
  std::optional<LatticePoint> out;
  for (std::size_t i = 0; i < h.H.rows(); ++i) {
    bool zero = true;
    for (std::size_t j = 0; j < h.H.cols(); ++j) zero = zero && h.H(i, j) == 0;
    if (!zero) continue;
    if (out) throw DegenerateError("kernel has dimension above one");
    out = row(h.U, i).primitive();
  }
  if (!out) throw DegenerateError("kernel is trivial");
  return *out;
}

}  // namespace detail

class SimplicialCone {
 public:
  explicit SimplicialCone(PointList rays, std::vector<int> orthantSigns = {})
      : rays_(std::move(rays)), signs_(std::move(orthantSigns)) {
    if (rays_.empty()) throw DimensionError("cone without rays");
    std::size_t const d = rays_[0].dim();
    if (rays_.size() != d) throw DimensionError("a simplicial cone in Z^d has d rays");
    for (auto const& r : rays_) {
      if (r.dim() != d) throw DimensionError("rays of different dimensions");
      if (r.isZero() || r.primitive() != r) throw ParameterError("ray " + r.str() + " is not primitive");
    }
    IntegerMatrix E = IntegerMatrix::fromColumns(rays_);
    det_ = abs(determinant(E));
    if (det_ == 0) throw DegenerateError("rays are linearly dependent");
    auto inv = *inverse(toRational(E));
    adj_ = IntegerMatrix(d, d);
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) adj_(i, j) = toInteger(inv(i, j) * det_);
  }

  PointList const& rays() const { return rays_; }
  std::vector<int> const& orthantSigns() const { return signs_; }
  std::size_t dim() const { return rays_.size(); }

  // Cone coordinates scaled by |det|: x = sum lambda_i r_i with lambda = num / |det|.
  LatticePoint scaledCoordinates(LatticePoint const& x) const { return adj_ * x; }
  Integer const& index() const { return det_; }
  bool contains(LatticePoint const& x) const {
    auto num = scaledCoordinates(x);
    for (std::size_t i = 0; i < num.dim(); ++i)
      if (num[i] < 0) return false;
    return true;
  }

  friend bool operator==(SimplicialCone const& a, SimplicialCone const& b) {
    return a.rays_ == b.rays_ && a.signs_ == b.signs_;
  }

 private:
  PointList rays_;
  std::vector<int> signs_;
  IntegerMatrix adj_;
  Integer det_;
};

class FractionSpec {
 public:
  enum class Kind { Matrix, Hyperplanes, Rays };

  static FractionSpec fromMatrix(IntegerMatrix m) {
    if (m.rows() != m.cols() || m.rows() < 2) throw DimensionError("operator must be square of size >= 2");
    FractionSpec s;
    s.kind_ = Kind::Matrix;
    s.matrix_ = std::move(m);
    return s;
  }
  // Integer normals of hyperplanes through the origin.
  static FractionSpec fromHyperplanes(PointList normals) {
    if (normals.size() < 2) throw DimensionError("need at least two hyperplanes");
    for (auto const& h : normals)
      if (h.dim() != normals.size()) throw DimensionError("n+1 hyperplanes in R^(n+1) are required");
    if (determinant(IntegerMatrix::fromRows(normals)) == 0)
      throw DegenerateError("hyperplanes are not in general position");
    FractionSpec s;
    s.kind_ = Kind::Hyperplanes;
    for (auto& h : normals) h = h.primitive();
    s.vectors_ = std::move(normals);
    return s;
  }
  static FractionSpec fromRays(PointList rays) {
    SimplicialCone check(rays);
    FractionSpec s;
    s.kind_ = Kind::Rays;
    s.vectors_ = std::move(rays);
    return s;
  }

  Kind kind() const { return kind_; }
  IntegerMatrix const& matrix() const { return matrix_; }
  PointList const& hyperplanes() const { return vectors_; }
  PointList const& rays() const { return vectors_; }
  std::size_t dim() const { return kind_ == Kind::Matrix ? matrix_.rows() : vectors_.size(); }

  friend bool operator==(FractionSpec const& a, FractionSpec const& b) {
    return a.kind_ == b.kind_ && a.vectors_ == b.vectors_ &&
           (a.kind_ != Kind::Matrix || a.matrix_ == b.matrix_);
  }

 private:
  Kind kind_ = Kind::Rays;
  IntegerMatrix matrix_;
  PointList vectors_;
};

// Coefficients c_0 .. c_n of det(x I - m), c_n = 1.
inline std::vector<Integer> characteristicPolynomial(IntegerMatrix const& m) {
  std::size_t const n = m.rows();
  std::vector<Integer> c(n + 1);
  c[n] = 1;
  IntegerMatrix M(n, n);
  for (std::size_t k = 1; k <= n; ++k) {
    IntegerMatrix next = m * M;
    for (std::size_t i = 0; i < n; ++i) next(i, i) += c[n - k + 1];
    M = next;
    IntegerMatrix am = m * M;
    Integer tr = 0;
    for (std::size_t i = 0; i < n; ++i) tr += am(i, i);
    c[n - k] = -tr / Integer(k);
  }
  return c;
}

// Distinct integer roots of a monic integer polynomial when it splits.
inline std::vector<Integer> splitRoots(std::vector<Integer> c) {
  std::vector<Integer> roots;
  auto deflate = [&](Integer const& x) {
    std::vector<Integer> q(c.size() - 1);
    Integer acc = 0;
    for (std::size_t i = c.size(); i-- > 1;) {
      acc = acc * x + c[i];
      q[i - 1] = acc;
    }
    c = std::move(q);
  };
  auto value = [&](Integer const& x) {
    Integer acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * x + c[i];
    return acc;
  };
  while (c.size() > 1 && c[0] == 0) {
    roots.push_back(0);
    deflate(0);
  }
  if (c.size() > 1) {
    Integer c0 = abs(c[0]);
    if (c0 > Integer(1000000000000LL)) throw ParameterError("constant term too large for the root search");
    std::vector<Integer> divisors;
    for (Integer d = 1; d * d <= c0; ++d)
      if (c0 % d == 0) {
        divisors.push_back(d);
        if (d * d != c0) divisors.push_back(c0 / d);
      }
    std::sort(divisors.begin(), divisors.end());
    for (auto const& d : divisors)
      for (Integer x : {Integer(d), Integer(-d)})
        while (c.size() > 1 && value(x) == 0) {
          roots.push_back(x);
          deflate(x);
        }
  }
  if (c.size() > 1) throw IrrationalSpectrumError("characteristic polynomial does not split over Q");
  std::sort(roots.begin(), roots.end());
  if (std::adjacent_find(roots.begin(), roots.end()) != roots.end())
    throw IrrationalSpectrumError("characteristic polynomial has a repeated root");
  return roots;
}

inline std::vector<SimplicialCone> conesFromSpec(FractionSpec const& spec) {
  std::size_t const d = spec.dim();
  PointList base;
  PointList normals;
  switch (spec.kind()) {
    case FractionSpec::Kind::Rays: return {SimplicialCone(spec.rays())};
    case FractionSpec::Kind::Matrix: {
      for (auto const& lambda : splitRoots(characteristicPolynomial(spec.matrix()))) {
        IntegerMatrix shifted = spec.matrix();
        for (std::size_t i = 0; i < d; ++i) shifted(i, i) -= lambda;
        base.push_back(detail::kernelVector(shifted));
      }
      break;
    }
    case FractionSpec::Kind::Hyperplanes: {
      normals = spec.hyperplanes();
      for (std::size_t i = 0; i < d; ++i) {
        PointList others;
        for (std::size_t j = 0; j < d; ++j)
          if (j != i) others.push_back(normals[j]);
        LatticePoint v = detail::kernelVector(IntegerMatrix::fromRows(others));
        if (dot(normals[i], v) < 0) v = Integer(-1) * v;
        base.push_back(v);
      }
      break;
    }
  }
  std::vector<SimplicialCone> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << d); ++mask) {
    PointList rays;
    std::vector<int> signs;
    for (std::size_t i = 0; i < d; ++i) {
      int s = (mask >> i) & 1 ? -1 : 1;
      signs.push_back(s);
      rays.push_back(Integer(s) * base[i]);
    }
    out.emplace_back(std::move(rays), std::move(signs));
  }
  return out;
}

// A face given by the generators of the sail polyhedron it contains.
struct SailFaceRecord {
  std::size_t dim = 0;
  std::vector<std::size_t> vertices;  // indices into Sail::vertices
  std::vector<std::size_t> rays;      // indices into the cone rays; empty for compact faces
  std::vector<std::size_t> subfaces;  // indices into faces of dimension dim - 1
};

struct Sail {
  SimplicialCone cone;
  PointList vertices;
  std::vector<Facet> facets;                         // over `vertices` and the cone rays
  std::vector<std::vector<SailFaceRecord>> faces;    // faces[k]: all faces of dimension k
  Integer bound = 0;
  bool certified = false;

  std::vector<SailFaceRecord const*> compactFaces(std::size_t k) const {
    std::vector<SailFaceRecord const*> out;
    if (k < faces.size())
      for (auto const& f : faces[k])
        if (f.rays.empty()) out.push_back(&f);
    return out;
  }
};

struct SailOptions {
  Integer cap = 4096;                  // on the coordinate bound
  std::size_t maxCandidates = 4000000;  // on the parallelepiped size
};

namespace detail {

// Lattice points sum t_i r_i with t in [0, 1)^d, with their scaled cone
// coordinates.
inline std::vector<std::pair<LatticePoint, LatticePoint>> parallelepipedPoints(
    SimplicialCone const& cone) {
  std::size_t const d = cone.dim();
  Integer const& n = cone.index();
  auto hnf = hermiteNormalForm(IntegerMatrix::fromRows(cone.rays()));
  std::vector<std::pair<LatticePoint, LatticePoint>> out;
  LatticePoint x(d);
  std::function<void(std::size_t)> walk = [&](std::size_t axis) {
    if (axis == d) {
      LatticePoint num = cone.scaledCoordinates(x);
      LatticePoint p = x;
      for (std::size_t i = 0; i < d; ++i) {
        Integer q = floorDiv(num[i], n);
        if (q != 0) {
          p -= q * cone.rays()[i];
          num[i] -= q * n;
        }
      }
      out.emplace_back(std::move(p), std::move(num));
      return;
    }
    for (x[axis] = 0; x[axis] < hnf.H(axis, axis); ++x[axis]) walk(axis + 1);
  };
  walk(0);
  std::sort(out.begin(), out.end());
  return out;
}

inline Integer maxNorm(LatticePoint const& p) {
  Integer m = 0;
  for (std::size_t i = 0; i < p.dim(); ++i) m = std::max(m, abs(p[i]));
  return m;
}

// Points not of the form q + (cone element) for another candidate q.
inline PointList minimalPoints(std::vector<std::pair<LatticePoint, LatticePoint>> cands) {
  auto total = [](LatticePoint const& num) {
    Integer s = 0;
    for (std::size_t i = 0; i < num.dim(); ++i) s += num[i];
    return s;
  };
  std::vector<std::pair<Integer, std::size_t>> order;
  for (std::size_t i = 0; i < cands.size(); ++i) order.emplace_back(total(cands[i].second), i);
  std::sort(order.begin(), order.end());
  std::vector<std::size_t> kept;
  for (auto const& [s, i] : order) {
    bool dominated = false;
    for (auto j : kept) {
      bool ge = true;
      for (std::size_t t = 0; t < cands[i].second.dim() && ge; ++t)
        ge = cands[i].second[t] >= cands[j].second[t];
      if (ge) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(i);
  }
  PointList out;
  for (auto i : kept) out.push_back(cands[i].first);
  std::sort(out.begin(), out.end());
  return out;
}

inline std::size_t faceDimension(PointList const& pts, PointList const& rays) {
  PointList gens;
  for (auto const& p : pts) {
    LatticePoint h(p.dim() + 1);
    for (std::size_t i = 0; i < p.dim(); ++i) h[i] = p[i];
    h[p.dim()] = 1;
    gens.push_back(h);
  }
  for (auto const& r : rays) {
    LatticePoint h(r.dim() + 1);
    for (std::size_t i = 0; i < r.dim(); ++i) h[i] = r[i];
    gens.push_back(h);
  }
  return rank(gens) - 1;
}

}  // namespace detail

inline Sail computeSail(SimplicialCone const& cone, SailOptions const& opt = {}) {
  if (cone.index() > Integer(opt.maxCandidates))
    throw BudgetExceededError("fundamental parallelepiped has " + cone.index().str() + " points");
  auto all = detail::parallelepipedPoints(cone);
  std::size_t const d = cone.dim();
  Integer B = 0;
  for (auto const& r : cone.rays()) B = std::max(B, detail::maxNorm(r));
  B *= 4;

  for (;; B *= 2) {
    if (B > opt.cap) throw BudgetExceededError("coordinate bound exceeded the cap before certification");
    std::vector<std::pair<LatticePoint, LatticePoint>> cands;
    for (auto const& c : all)
      if (!c.first.isZero() && detail::maxNorm(c.first) <= B) cands.push_back(c);
    for (std::size_t i = 0; i < d; ++i) {
      LatticePoint num(d);
      num[i] = cone.index();
      cands.emplace_back(cone.rays()[i], num);
    }
    PointList pts = detail::minimalPoints(cands);
    auto facets = facetsOf(pts, cone.rays());

    // Every nonzero parallelepiped point must satisfy every facet inequality.
    bool certified = true;
    for (auto const& c : all) {
      if (c.first.isZero()) continue;
      for (auto const& f : facets)
        if (dot(f.normal, c.first) < f.offset) {
          certified = false;
          break;
        }
      if (!certified) break;
    }
    if (!certified) continue;

    // Face lattice by intersecting facets.
    using Key = std::pair<std::vector<std::size_t>, std::vector<std::size_t>>;
    std::set<Key> seen;
    std::vector<Key> queue;
    for (auto const& f : facets) {
      Key k{f.tightPoints, f.tightRays};
      if (seen.insert(k).second) queue.push_back(k);
    }
    for (std::size_t q = 0; q < queue.size(); ++q)
      for (auto const& f : facets) {
        Key k;
        std::set_intersection(queue[q].first.begin(), queue[q].first.end(), f.tightPoints.begin(),
                              f.tightPoints.end(), std::back_inserter(k.first));
        std::set_intersection(queue[q].second.begin(), queue[q].second.end(), f.tightRays.begin(),
                              f.tightRays.end(), std::back_inserter(k.second));
        if (k.first.empty()) continue;
        if (seen.insert(k).second) queue.push_back(k);
      }

    // Vertices are the points forming a face on their own.
    std::vector<std::size_t> vertexOf(pts.size(), SIZE_MAX);
    Sail s{cone, {}, {}, {}, B, true};
    for (auto const& k : seen)
      if (k.first.size() == 1 && k.second.empty()) {
        vertexOf[k.first[0]] = s.vertices.size();
        s.vertices.push_back(pts[k.first[0]]);
      }
    auto remap = [&](std::vector<std::size_t> const& idx) {
      std::vector<std::size_t> out;
      for (auto i : idx)
        if (vertexOf[i] != SIZE_MAX) out.push_back(vertexOf[i]);
      return out;
    };
    for (auto const& f : facets) s.facets.push_back({f.normal, f.offset, remap(f.tightPoints), f.tightRays});
    s.faces.assign(d, {});
    for (auto const& k : seen) {
      PointList fp, fr;
      for (auto i : k.first) fp.push_back(pts[i]);
      for (auto i : k.second) fr.push_back(cone.rays()[i]);
      std::size_t dim = detail::faceDimension(fp, fr);
      s.faces[dim].push_back({dim, remap(k.first), k.second, {}});
    }
    for (auto& layer : s.faces) std::sort(layer.begin(), layer.end(), [](auto const& a, auto const& b) {
        return std::tie(a.vertices, a.rays) < std::tie(b.vertices, b.rays);
      });
    auto contains = [](SailFaceRecord const& big, SailFaceRecord const& small) {
      return std::includes(big.vertices.begin(), big.vertices.end(), small.vertices.begin(),
                           small.vertices.end()) &&
             std::includes(big.rays.begin(), big.rays.end(), small.rays.begin(), small.rays.end());
    };
    for (std::size_t k = 1; k < d; ++k)
      for (auto& f : s.faces[k])
        for (std::size_t j = 0; j < s.faces[k - 1].size(); ++j)
          if (contains(f, s.faces[k - 1][j])) f.subfaces.push_back(j);
    return s;
  }
}

// Sails of several cones; each worker takes every t-th cone and the results
// keep the input order.
inline std::vector<Sail> computeSails(std::vector<SimplicialCone> const& cones, unsigned workers = 1,
                                      SailOptions const& opt = {}) {
  if (!workers) workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::optional<Sail>> out(cones.size());
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < workers; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < cones.size(); i += workers) out[i] = computeSail(cones[i], opt);
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto const& e : errors)
    if (e) std::rethrow_exception(e);
  std::vector<Sail> sails;
  for (auto& s : out) sails.push_back(std::move(*s));
  return sails;
}

struct SailFace {
  ConvexLatticePolygon polygon;
  Integer distance;                  // integer distance to the origin in the 3D span
  FaceClassification classification;  // SingleStory at distance one
};

inline std::vector<SailFace> extractTwoFaces(Sail const& sail) {
  if (!sail.certified) throw InternalError("sail is not certified");
  std::size_t const n = sail.cone.dim() - 1;
  std::vector<SailFace> out;
  for (auto const* f : sail.compactFaces(2)) {
    PointList vs;
    for (auto i : f->vertices) vs.push_back(sail.vertices[i]);
    ConvexLatticePolygon poly(vs);
    auto cls = classifyFace(poly, n);
    out.push_back({poly, cls.r, std::move(cls)});
  }
  return out;
}

struct Realization {
  FractionSpec spec;
  std::vector<int> orthantSigns;  // the orthant hosting the face
  Integer epsilonDenominator;     // dilation by 1 + 1/k
};

namespace detail {

// Lattice points of {x : h_i . x >= 0, f . x <= r} for the simplicial cone
// with these rays, found by scanning the bounding box of its vertices.
inline PointList truncatedConePoints(PointList const& rays, LatticePoint const& f, Integer const& r) {
  std::size_t const d = rays.size();
  PointList normals;
  for (std::size_t i = 0; i < d; ++i) {
    PointList others;
    for (std::size_t j = 0; j < d; ++j)
      if (j != i) others.push_back(rays[j]);
    LatticePoint h = kernelVector(IntegerMatrix::fromRows(others));
    if (dot(h, rays[i]) < 0) h = Integer(-1) * h;
    normals.push_back(h);
  }
  LatticePoint lo(d), hi(d);
  for (auto const& ray : rays) {
    Rational t = Rational(r) / Rational(dot(f, ray));
    for (std::size_t i = 0; i < d; ++i) {
      Rational c = t * Rational(ray[i]);
      lo[i] = std::min(lo[i], floorOf(c));
      hi[i] = std::max(hi[i], -floorOf(-c));
    }
  }
  PointList out;
  LatticePoint x = lo;
  std::function<void(std::size_t)> walk = [&](std::size_t axis) {
    if (axis == d) {
      if (dot(f, x) > r) return;
      for (auto const& h : normals)
        if (dot(h, x) < 0) return;
      out.push_back(x);
      return;
    }
    for (x[axis] = lo[axis]; x[axis] <= hi[axis]; ++x[axis]) walk(axis + 1);
  };
  walk(0);
  return out;
}

inline LatticePoint pad(LatticePoint const& p, std::size_t dim) {
  LatticePoint q(dim);
  for (std::size_t i = 0; i < p.dim(); ++i) q[i] = p[i];
  return q;
}

// Rays of a cone whose section by the span of the base is the cone over the
// base dilated about its centroid by 1 + 1/k. Triangles stay in Z^3;
// quadrangles are lifted to Z^4 with alternating last coordinates.
inline std::optional<PointList> dilatedCone(PointList const& base, Integer const& k, LatticePoint const& f,
                                            Integer const& r) {
  std::size_t const m = base.size();
  LatticePoint sum(3);
  for (auto const& a : base) sum += a;
  PointList N;
  for (auto const& a : base) N.push_back(Integer(m) * (k + 1) * a - sum);
  if (m == 3) {
    PointList rays;
    for (auto const& v : N) rays.push_back(v.primitive());
    return rays;
  }
  // Linear dependency with alternating signs along the cycle.
  LatticePoint beta = kernelVector(IntegerMatrix::fromColumns(N));
  PointList P(4);
  LatticePoint total(3);
  for (std::size_t i = 0; i < 4; ++i) total += abs(beta[i]) * N[i];
  P[0] = Integer(4) * (abs(beta[0]) * N[0] + abs(beta[3]) * N[3]) - total;
  for (std::size_t i = 1; i < 4; ++i) P[i] = Integer(8) * abs(beta[i - 1]) * N[i - 1] - P[i - 1];
  Integer g = 0;
  for (auto const& p : P)
    for (std::size_t i = 0; i < 3; ++i) g = gcd(g, p[i]);
  Integer lowest = -1;
  for (auto& p : P) {
    for (std::size_t i = 0; i < 3; ++i) p[i] /= g;
    Integer level = dot(f, p);
    if (level <= 0) return std::nullopt;
    if (lowest < 0 || level < lowest) lowest = level;
  }
  // The truncation at level r stays inside |w| < 1.
  Integer w = (lowest - 1) / r;
  if (w < 1) {
    for (auto& p : P) p = Integer(r + 1) * p;
    w = 1;
  }
  PointList rays;
  for (std::size_t i = 0; i < 4; ++i) {
    LatticePoint R = pad(P[i], 4);
    R[3] = i % 2 ? -w : w;
    rays.push_back(R.primitive());
  }
  if (determinant(IntegerMatrix::fromColumns(rays)) == 0) return std::nullopt;
  return rays;
}

}  // namespace detail

struct RealizeOptions {
  Integer maxDenominator = 64;
};

// Hyperplanes of an n-dimensional continued fraction that has the base of the
// canonical pyramid of `form` as a face, hosted by the returned orthant.
inline Realization realizeFace(CanonicalForm const& form, std::size_t n, RealizeOptions const& opt = {}) {
  if (form.tag == FormTag::P) throw ParameterError("P forms are not face list entries");
  if (n < 2) throw DimensionError("faces need n >= 2");
  auto c = canonicalVertices(form);
  std::size_t const m = c.base.size();
  if (m == 4 && n == 2)
    throw DimensionError("quadrangular face " + form.str() + " is not realizable for n = 2");
  if (m + 1 > n + 2) throw DimensionError("polygon has more than n + 1 vertices");
  MarkedPyramid pyr(c.apex, c.base);
  auto fn = primitiveFunctional(pyr.base().plane());
  LatticePoint f = fn.coefficients;
  Integer r = fn.offset;
  if (r < 0) {
    f = Integer(-1) * f;
    r = -r;
  }
  std::size_t const baseDim = m == 3 ? 3 : 4;
  LatticePoint fPad = detail::pad(f, baseDim);
  PointList expected{LatticePoint::zero(baseDim)};
  for (auto const& p : latticePointsInHull(c.base)) expected.push_back(detail::pad(p, baseDim));
  expected = sortedUnique(expected);

  for (Integer k = 2; k <= opt.maxDenominator; ++k) {
    auto rays = detail::dilatedCone(c.base, k, f, r);
    if (!rays) continue;
    if (sortedUnique(detail::truncatedConePoints(*rays, fPad, r)) != expected) continue;
    // Extra unit rays: any point using them has f >= r + 1 once the extra
    // coordinates carry weight r + 1, so the test above still decides.
    PointList full;
    for (auto const& ray : *rays) full.push_back(detail::pad(ray, n + 1));
    for (std::size_t i = baseDim; i < n + 1; ++i) full.push_back(LatticePoint::unit(n + 1, i));
    PointList normals;
    for (std::size_t i = 0; i < full.size(); ++i) {
      PointList others;
      for (std::size_t j = 0; j < full.size(); ++j)
        if (j != i) others.push_back(full[j]);
      LatticePoint h = detail::kernelVector(IntegerMatrix::fromRows(others));
      if (dot(h, full[i]) < 0) h = Integer(-1) * h;
      normals.push_back(h);
    }
    return {FractionSpec::fromHyperplanes(normals), std::vector<int>(n + 1, 1), k};
  }
  throw EpsilonSearchError("no admissible dilation up to 1/" + opt.maxDenominator.str());
}

inline SimplicialCone hostCone(Realization const& r) {
  for (auto& cone : conesFromSpec(r.spec))
    if (cone.orthantSigns() == r.orthantSigns) return cone;
  throw InternalError("realization orthant missing");
}

}  // namespace klein
