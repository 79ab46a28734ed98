#pragma once

// Canonical forms of completely empty marked pyramids and empty tetrahedra,
// and the face lists derived from them. Every classification carries a
// witness map that is re-verified before it is returned.

#include <algorithm>
#include <array>
#include <cstddef>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "klein/core.hpp"
#include "klein/emptiness.hpp"
#include "klein/lattice.hpp"
#include "klein/plane.hpp"

namespace klein {

enum class FormTag { M, T, U, V, W, P, SingleStory };

inline std::string tagName(FormTag t) {
  switch (t) {
    case FormTag::M: return "M";
    case FormTag::T: return "T";
    case FormTag::U: return "U";
    case FormTag::V: return "V";
    case FormTag::W: return "W";
    case FormTag::P: return "P";
    case FormTag::SingleStory: return "SingleStory";
  }
  return "?";
}

inline std::optional<FormTag> tagFromName(std::string const& s) {
  for (auto t : {FormTag::M, FormTag::T, FormTag::U, FormTag::V, FormTag::W, FormTag::P,
                 FormTag::SingleStory})
    if (tagName(t) == s) return t;
  return std::nullopt;
}

// Parameters not used by a tag stay zero. SingleStory carries the normal form
// of its base polygon.
struct CanonicalForm {
  FormTag tag = FormTag::SingleStory;
  Integer a = 0, b = 0, r = 0, xi = 0;
  PointList base;

  static CanonicalForm m(Integer a, Integer b) { return checked({FormTag::M, a, b, 0, 0, {}}); }
  static CanonicalForm t(Integer a, Integer r, Integer xi) {
    return checked({FormTag::T, a, 0, r, xi, {}});
  }
  static CanonicalForm u(Integer b) { return checked({FormTag::U, 0, b, 0, 0, {}}); }
  static CanonicalForm v() { return {FormTag::V, 0, 0, 0, 0, {}}; }
  static CanonicalForm w() { return {FormTag::W, 0, 0, 0, 0, {}}; }
  static CanonicalForm p(Integer r, Integer xi) { return checked({FormTag::P, 0, 0, r, xi, {}}); }
  static CanonicalForm singleStory(PointList normalForm) {
    return {FormTag::SingleStory, 0, 0, 0, 0, std::move(normalForm)};
  }

  // Integer distance from apex to base.
  Integer stories() const {
    switch (tag) {
      case FormTag::M:
      case FormTag::U:
      case FormTag::V: return 2;
      case FormTag::W: return 3;
      case FormTag::T:
      case FormTag::P: return r;
      case FormTag::SingleStory: return 1;
    }
    return 0;
  }

  std::string str() const {
    std::ostringstream os;
    os << tagName(tag);
    switch (tag) {
      case FormTag::M: os << "(a=" << a << ",b=" << b << ")"; break;
      case FormTag::T: os << "(a=" << a << ",r=" << r << ",xi=" << xi << ")"; break;
      case FormTag::U: os << "(b=" << b << ")"; break;
      case FormTag::P: os << "(r=" << r << ",xi=" << xi << ")"; break;
      case FormTag::SingleStory:
        os << "(";
        for (std::size_t i = 0; i < base.size(); ++i) os << (i ? "," : "") << base[i];
        os << ")";
        break;
      default: break;
    }
    return os.str();
  }

  friend bool operator==(CanonicalForm const&, CanonicalForm const&) = default;
  friend bool operator<(CanonicalForm const& x, CanonicalForm const& y) {
    return std::tie(x.tag, x.a, x.b, x.r, x.xi, x.base) <
           std::tie(y.tag, y.a, y.b, y.r, y.xi, y.base);
  }

 private:
  static CanonicalForm checked(CanonicalForm f) {
    auto fail = [&] { throw ParameterError("invalid parameters for " + f.str()); };
    switch (f.tag) {
      case FormTag::M:
        if (f.a < 1 || f.b < f.a) fail();
        break;
      case FormTag::T:
        if (f.a < 1) fail();
        if (f.r == 1 && f.xi == 0) break;
        if (f.r < 2 || f.xi <= 0 || 2 * f.xi > f.r || gcd(f.xi, f.r) != 1) fail();
        break;
      case FormTag::U:
        if (f.b < 1) fail();
        break;
      case FormTag::P:
        if (f.r == 1 && f.xi == 0) break;
        if (f.r < 2 || f.xi <= 0 || 2 * f.xi > f.r || gcd(f.xi, f.r) != 1) fail();
        break;
      default: break;
    }
    return f;
  }
};

inline std::ostream& operator<<(std::ostream& os, CanonicalForm const& f) { return os << f.str(); }

struct CanonicalPyramid {
  LatticePoint apex;
  PointList base;

  PointList all() const {
    PointList v{apex};
    v.insert(v.end(), base.begin(), base.end());
    return v;
  }
};

inline CanonicalPyramid canonicalVertices(CanonicalForm const& f) {
  auto pt = [](Integer x, Integer y, Integer z) {
    return LatticePoint(std::vector<Integer>{std::move(x), std::move(y), std::move(z)});
  };
  CanonicalPyramid c{LatticePoint::zero(3), {}};
  Integer const& a = f.a;
  Integer const& b = f.b;
  Integer const& r = f.r;
  Integer const& xi = f.xi;
  switch (f.tag) {
    case FormTag::M:
      c.base = {pt(2, -1, 0), pt(2, -a - 1, 1), pt(2, -1, 2), pt(2, b - 1, 1)};
      break;
    case FormTag::T:
      c.base = {pt(xi, r - 1, -r), pt(a + xi, r - 1, -r), pt(xi, r, -r)};
      break;
    case FormTag::U:
      c.base = {pt(2, 1, b - 1), pt(2, 2, -1), pt(2, 0, -1)};
      break;
    case FormTag::V:
      c.base = {pt(2, -2, 1), pt(2, -1, -1), pt(2, 1, 2)};
      break;
    case FormTag::W:
      c.base = {pt(3, 0, 2), pt(3, 1, 1), pt(3, 2, 3)};
      break;
    case FormTag::P:
      c.base = {pt(0, 1, 0), pt(1, 0, 0), pt(xi, r - xi, r)};
      break;
    case FormTag::SingleStory:
      if (f.base.size() < 3) throw ParameterError("single-story form without a base polygon");
      for (auto const& q : f.base) {
        if (q.dim() != 2) throw ParameterError("single-story base must be planar");
        c.base.push_back(pt(q[0], q[1], 1));
      }
      break;
  }
  return c;
}

// U(1) and T(2,2,1) are the same marked pyramid; the classifier reports T.
inline CanonicalForm reportedForm(CanonicalForm const& f) {
  if (f.tag == FormTag::U && f.b == 1) return CanonicalForm::t(2, 2, 1);
  return f;
}

struct ClassificationResult {
  CanonicalForm form;
  IntegerAffineMap witness;  // input vertices onto canonicalVertices(form)
  Integer r;
};

namespace detail {

inline std::vector<Integer> coprimeHalf(Integer const& r) {
  std::vector<Integer> out;
  for (Integer xi = 1; 2 * xi <= r; ++xi)
    if (gcd(xi, r) == 1) out.push_back(xi);
  return out;
}

inline void verifyWitness(IntegerAffineMap const& w, PointList const& input,
                          CanonicalPyramid const& target, bool marked) {
  PointList image;
  for (auto const& p : input) image.push_back(w(p));
  bool ok = sortedUnique(image) == sortedUnique(target.all());
  if (marked) ok = ok && image[0] == target.apex;
  if (!ok) throw InternalError("classification witness failed verification");
}

inline std::optional<IntegerAffineMap> witnessFor(PointList const& input, CanonicalForm const& f,
                                                  bool marked) {
  auto target = canonicalVertices(f);
  auto pin = marked ? std::optional(std::pair<std::size_t, std::size_t>{0, 0}) : std::nullopt;
  auto w = matchVertices(input, target.all(), pin);
  if (w) verifyWitness(*w, input, target, marked);
  return w;
}

}  // namespace detail

struct WhiteInvariant {
  std::array<Integer, 3> values;  // ascending
  friend bool operator==(WhiteInvariant const&, WhiteInvariant const&) = default;
};

// Distances from the node K to the three face planes of the trihedral angle
// at the apex. K is the lattice point of the parallelepiped spanned by the
// apex edges whose distances contain a 1 and add up to r + 1.
inline WhiteInvariant whiteInvariant(MarkedPyramid const& p) {
  if (p.ambientDim() != 3 || p.base().size() != 3)
    throw DimensionError("white invariant needs a triangular pyramid in Z^3");
  if (!isEmptyPolyhedron(p.vertices())) throw NotEmptyError("tetrahedron is not empty");
  Integer r = storyCount(p).r;
  if (r == 1) throw SingleStoryError("white invariant is undefined for r = 1");
  PointList edges;
  for (auto const& v : p.base().vertices()) edges.push_back(v - p.apex());
  IntegerMatrix E = IntegerMatrix::fromColumns(edges);
  Integer det = determinant(E);
  Integer const n = abs(det);
  auto inv = *inverse(toRational(E));
  IntegerMatrix adj(3, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) adj(i, j) = toInteger(inv(i, j) * n);
  auto hnf = hermiteNormalForm(E.transposed());
  for (Integer x = 0; x < hnf.H(0, 0); ++x)
    for (Integer y = 0; y < hnf.H(1, 1); ++y)
      for (Integer z = 0; z < hnf.H(2, 2); ++z) {
        LatticePoint num = adj * LatticePoint(std::vector<Integer>{x, y, z});
        std::array<Integer, 3> d;
        Integer sum = 0;
        bool hasOne = false;
        for (std::size_t i = 0; i < 3; ++i) {
          Integer q = floorDiv(num[i], n);
          d[i] = (num[i] - q * n) * r / n;
          sum += d[i];
          hasOne = hasOne || d[i] == 1;
        }
        if (hasOne && sum == r + 1) {
          std::sort(d.begin(), d.end());
          return {d};
        }
      }
  throw InternalError("empty tetrahedron without the distinguished node");
}

// Smallest representative of {±xi^{±1} mod r} folded into (0, r/2].
inline Integer unmarkedXi(Integer const& r, Integer const& xi) {
  Integer inv = modInverse(xi, r);
  Integer best = r;
  for (Integer t : {Integer(xi % r), Integer((r - xi) % r), inv, Integer((r - inv) % r)}) {
    Integer f = std::min(t, Integer(r - t));
    if (f > 0 && f < best) best = f;
  }
  return best;
}

inline ClassificationResult classifyEmptyTetrahedron(PointList const& vertices,
                                                     std::optional<std::size_t> apexIndex) {
  if (vertices.size() != 4) throw DimensionError("a tetrahedron has four vertices");
  for (auto const& v : vertices)
    if (v.dim() != 3) throw DimensionError("tetrahedron must lie in Z^3");
  if (simplexVolume(vertices) == 0) throw DegenerateError("tetrahedron is flat");
  if (!isEmptyPolyhedron(vertices)) throw NotEmptyError("tetrahedron is not empty");
  std::size_t const apex = apexIndex.value_or(0);
  if (apex >= 4) throw DimensionError("apex index out of range");
  PointList ordered{vertices[apex]};
  for (std::size_t i = 0; i < 4; ++i)
    if (i != apex) ordered.push_back(vertices[i]);
  MarkedPyramid pyr(ordered[0], PointList{ordered[1], ordered[2], ordered[3]});
  Integer r = storyCount(pyr).r;
  CanonicalForm form = CanonicalForm::p(1, 0);
  if (r > 1) {
    auto white = whiteInvariant(pyr);
    Integer xi = white.values[1];
    form = CanonicalForm::p(r, apexIndex ? xi : unmarkedXi(r, xi));
  }
  auto w = detail::witnessFor(ordered, form, apexIndex.has_value());
  if (!w) throw InternalError("no witness for " + form.str());
  // The witness was found for the reordered list; the vertex set is the same.
  return {form, *w, r};
}

inline ClassificationResult classifyMarkedPyramid(MarkedPyramid const& p) {
  if (p.ambientDim() != 3) throw DimensionError("marked pyramids are classified in Z^3");
  if (auto bad = completeEmptinessViolation(p)) throw NotCompletelyEmptyError(*bad);
  Integer r = storyCount(p).r;
  PointList input = p.vertices();
  std::vector<CanonicalForm> candidates;
  Integer vol = integerVolume(p.base());
  std::size_t const k = p.base().size();
  if (r == 1) {
    candidates.push_back(CanonicalForm::singleStory(polygonNormalForm(p.base())));
  } else if (k == 4) {
    if (r == 2 && vol % 2 == 0)
      for (Integer a = 1; 2 * a <= vol / 2; ++a) candidates.push_back(CanonicalForm::m(a, vol / 2 - a));
  } else if (k == 3) {
    for (auto const& xi : detail::coprimeHalf(r)) candidates.push_back(CanonicalForm::t(vol, r, xi));
    if (r == 2 && vol % 2 == 0) candidates.push_back(CanonicalForm::u(vol / 2));
    if (r == 2 && vol == 7) candidates.push_back(CanonicalForm::v());
    if (r == 3 && vol == 3) candidates.push_back(CanonicalForm::w());
  }
  for (auto const& f : candidates)
    if (auto w = detail::witnessFor(input, f, true)) return {f, *w, r};
  throw NotInListError("completely empty pyramid with r = " + r.str() + " matches no list entry");
}

// Entries of the face lists up to integer-affine equivalence in the plane.
enum class BetaKind { Quadrangle, TriangleV, TriangleU, TriangleT, TriangleW };

struct BetaEntry {
  BetaKind kind;
  Integer a = 0, b = 0;

  PointList vertices() const {
    auto pt = [](Integer x, Integer y) { return LatticePoint(std::vector<Integer>{x, y}); };
    switch (kind) {
      case BetaKind::Quadrangle: return {pt(-1, 0), pt(-a - 1, 1), pt(-1, 2), pt(b - 1, 1)};
      case BetaKind::TriangleV: return {pt(-1, 0), pt(0, -2), pt(2, 1)};
      case BetaKind::TriangleU: return {pt(0, -1), pt(0, 1), pt(b, 0)};
      case BetaKind::TriangleT: return {pt(0, 0), pt(a, 0), pt(0, 1)};
      case BetaKind::TriangleW: return {pt(-1, -1), pt(1, 0), pt(0, 1)};
    }
    return {};
  }

  std::string str() const {
    std::ostringstream os;
    switch (kind) {
      case BetaKind::Quadrangle: os << "quadrangle(a=" << a << ",b=" << b << ")"; break;
      case BetaKind::TriangleV: os << "triangle-V"; break;
      case BetaKind::TriangleU: os << "triangle-U(b=" << b << ")"; break;
      case BetaKind::TriangleT: os << "triangle-T(a=" << a << ")"; break;
      case BetaKind::TriangleW: os << "triangle-W"; break;
    }
    return os.str();
  }

  friend bool operator==(BetaEntry const&, BetaEntry const&) = default;
};

inline std::ostream& operator<<(std::ostream& os, BetaEntry const& e) { return os << e.str(); }

inline BetaEntry betaEntryOf(CanonicalForm const& f) {
  switch (f.tag) {
    case FormTag::M: return {BetaKind::Quadrangle, f.a, f.b};
    case FormTag::T: return {BetaKind::TriangleT, f.a, 0};
    case FormTag::U: return {BetaKind::TriangleU, 0, f.b};
    case FormTag::V: return {BetaKind::TriangleV, 0, 0};
    case FormTag::W: return {BetaKind::TriangleW, 0, 0};
    default: break;
  }
  throw NotInListError(f.str() + " has no multistory face entry");
}

// Standalone mode: 2D normal form comparison against the list for r.
inline BetaEntry classifyBasePolygon(ConvexLatticePolygon const& poly, Integer const& r) {
  if (r < 2) throw NotInListError("face lists start at r = 2");
  Integer vol = integerVolume(poly);
  std::vector<BetaEntry> candidates;
  if (poly.size() == 4 && r == 2 && vol % 2 == 0)
    for (Integer a = 1; 2 * a <= vol / 2; ++a)
      candidates.push_back({BetaKind::Quadrangle, a, vol / 2 - a});
  if (poly.size() == 3) {
    candidates.push_back({BetaKind::TriangleT, vol, 0});
    if (r == 2 && vol % 2 == 0) candidates.push_back({BetaKind::TriangleU, 0, vol / 2});
    if (r == 2 && vol == 7) candidates.push_back({BetaKind::TriangleV, 0, 0});
    if (r == 3 && vol == 3) candidates.push_back({BetaKind::TriangleW, 0, 0});
  }
  PointList nf = polygonNormalForm(poly);
  for (auto const& c : candidates)
    if (polygonNormalForm(c.vertices()) == nf) return c;
  throw NotInListError("polygon matches no entry of the face list for r = " + r.str());
}

// Pyramid mode: the full marked classification decides the entry.
inline BetaEntry classifyBasePolygon(MarkedPyramid const& p) {
  return betaEntryOf(classifyMarkedPyramid(p).form);
}

struct FaceClassification {
  CanonicalForm form;
  Integer r;
  LatticeChart chart;        // lattice of span(origin, face) with coordinates in Z^3
  IntegerAffineMap witness;  // linear; chart coordinates onto the canonical pyramid
};

// `face` lies in Z^(n+1) (or is given in Z^3); it is classified through the marked pyramid with
// apex at the origin inside the lattice of its 3D span.
inline FaceClassification classifyFace(ConvexLatticePolygon const& face, std::size_t n) {
  std::size_t const dim = face.chart().ambientDim();
  if (dim != n + 1 && dim != 3) throw DimensionError("face must lie in Z^(n+1)");
  LatticePoint origin = LatticePoint::zero(dim);
  if (face.chart().contains(origin)) throw NotAPyramidError("origin lies in the face plane");
  LatticeChart chart(origin, face.vertices());
  MarkedPyramid pyr(LatticePoint::zero(3), chart.coordinates(face.vertices()));
  auto res = classifyMarkedPyramid(pyr);
  if (n == 2 && res.form.tag == FormTag::M)
    throw QuadrangleInDimTwoError("quadrangular face " + res.form.str() +
                                  " cannot occur in a two-dimensional continued fraction");
  return {res.form, res.r, chart, res.witness};
}

}  // namespace klein
