#pragma once

// JSON forms of the domain types. Integers travel as decimal strings; plain
// JSON integers are accepted on input.

#include <cstddef>
#include <regex>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "klein/classifier.hpp"
#include "klein/core.hpp"
#include "klein/sail.hpp"

namespace klein {

using Json = nlohmann::ordered_json;

class SchemaError : public Error {
 public:
  using Error::Error;
};

namespace json {

inline Json integer(Integer const& x) { return x.str(); }

inline Integer toInteger(Json const& j) {
  if (j.is_number_integer()) return Integer(j.get<long long>());
  if (j.is_string()) {
    static std::regex const digits("-?[0-9]+");
    auto const& s = j.get_ref<std::string const&>();
    if (!std::regex_match(s, digits)) throw SchemaError("not a decimal integer: \"" + s + "\"");
    return Integer(s);
  }
  throw SchemaError("expected an integer, got " + j.dump());
}

inline Json point(LatticePoint const& p) {
  Json a = Json::array();
  for (std::size_t i = 0; i < p.dim(); ++i) a.push_back(integer(p[i]));
  return a;
}

inline LatticePoint toPoint(Json const& j) {
  if (!j.is_array() || j.empty()) throw SchemaError("expected a nonempty coordinate array, got " + j.dump());
  std::vector<Integer> c;
  for (auto const& x : j) c.push_back(toInteger(x));
  return LatticePoint(std::move(c));
}

inline Json points(PointList const& ps) {
  Json a = Json::array();
  for (auto const& p : ps) a.push_back(point(p));
  return a;
}

inline PointList toPoints(Json const& j, std::size_t dim = 0) {
  if (!j.is_array()) throw SchemaError("expected an array of points, got " + j.dump());
  PointList out;
  for (auto const& x : j) {
    out.push_back(toPoint(x));
    if (dim == 0) dim = out.back().dim();
    if (out.back().dim() != dim) throw SchemaError("points of different dimensions");
  }
  return out;
}

inline Json matrix(IntegerMatrix const& m) {
  Json a = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(point(row(m, i)));
  return a;
}

inline IntegerMatrix toMatrix(Json const& j) {
  PointList rows = toPoints(j);
  if (rows.empty()) throw SchemaError("empty matrix");
  return IntegerMatrix::fromRows(rows);
}

inline Json integers(std::vector<int> const& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(x);
  return a;
}

inline Json indices(std::vector<std::size_t> const& v) {
  Json a = Json::array();
  for (auto x : v) a.push_back(x);
  return a;
}

inline Json const& field(Json const& j, char const* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline Json form(CanonicalForm const& f) {
  Json p = Json::object();
  switch (f.tag) {
    case FormTag::M:
      p["a"] = integer(f.a);
      p["b"] = integer(f.b);
      break;
    case FormTag::T:
      p["a"] = integer(f.a);
      p["r"] = integer(f.r);
      p["xi"] = integer(f.xi);
      break;
    case FormTag::U: p["b"] = integer(f.b); break;
    case FormTag::P:
      p["r"] = integer(f.r);
      p["xi"] = integer(f.xi);
      break;
    case FormTag::SingleStory: p["base"] = points(f.base); break;
    default: break;
  }
  return Json{{"tag", tagName(f.tag)}, {"params", p}};
}

inline CanonicalForm toForm(Json const& j) {
  auto const& tagJ = field(j, "tag");
  if (!tagJ.is_string()) throw SchemaError("form tag must be a string");
  auto tag = tagFromName(tagJ.get<std::string>());
  if (!tag) throw SchemaError("unknown form tag " + tagJ.dump());
  Json const empty = Json::object();
  Json const& p = j.contains("params") ? j.at("params") : empty;
  auto get = [&](char const* k) { return toInteger(field(p, k)); };
  try {
    switch (*tag) {
      case FormTag::M: return CanonicalForm::m(get("a"), get("b"));
      case FormTag::T: return CanonicalForm::t(get("a"), get("r"), get("xi"));
      case FormTag::U: return CanonicalForm::u(get("b"));
      case FormTag::V: return CanonicalForm::v();
      case FormTag::W: return CanonicalForm::w();
      case FormTag::P: return CanonicalForm::p(get("r"), get("xi"));
      case FormTag::SingleStory: return CanonicalForm::singleStory(toPoints(field(p, "base"), 2));
    }
  } catch (ParameterError const& e) {
    throw SchemaError(e.what());
  }
  throw SchemaError("unknown form tag");
}

inline Json affineMap(IntegerAffineMap const& m) {
  return Json{{"linear", matrix(m.linear())}, {"translation", point(m.translation())}};
}

inline IntegerAffineMap toAffineMap(Json const& j) {
  try {
    return IntegerAffineMap(toMatrix(field(j, "linear")), toPoint(field(j, "translation")));
  } catch (ParameterError const& e) {
    throw SchemaError(e.what());
  } catch (DimensionError const& e) {
    throw SchemaError(e.what());
  }
}

inline Json classification(ClassificationResult const& c) {
  return Json{{"form", form(c.form)}, {"storyCount", integer(c.r)}, {"witness", affineMap(c.witness)}};
}

inline ClassificationResult toClassification(Json const& j) {
  return {toForm(field(j, "form")), toAffineMap(field(j, "witness")), toInteger(field(j, "storyCount"))};
}

inline std::string betaKindName(BetaKind k) {
  switch (k) {
    case BetaKind::Quadrangle: return "quadrangle";
    case BetaKind::TriangleV: return "triangle-V";
    case BetaKind::TriangleU: return "triangle-U";
    case BetaKind::TriangleT: return "triangle-T";
    case BetaKind::TriangleW: return "triangle-W";
  }
  return "?";
}

inline Json beta(BetaEntry const& e) {
  return Json{{"kind", betaKindName(e.kind)}, {"a", integer(e.a)}, {"b", integer(e.b)}};
}

inline BetaEntry toBeta(Json const& j) {
  auto name = field(j, "kind");
  for (auto k : {BetaKind::Quadrangle, BetaKind::TriangleV, BetaKind::TriangleU, BetaKind::TriangleT,
                 BetaKind::TriangleW})
    if (name == betaKindName(k)) return {k, toInteger(field(j, "a")), toInteger(field(j, "b"))};
  throw SchemaError("unknown face entry " + name.dump());
}

inline Json spec(FractionSpec const& s) {
  switch (s.kind()) {
    case FractionSpec::Kind::Matrix: return Json{{"matrix", matrix(s.matrix())}};
    case FractionSpec::Kind::Hyperplanes: return Json{{"hyperplanes", points(s.hyperplanes())}};
    case FractionSpec::Kind::Rays: return Json{{"rays", points(s.rays())}};
  }
  return {};
}

inline FractionSpec toSpec(Json const& j) {
  if (!j.is_object()) throw SchemaError("fraction spec must be an object");
  int kinds = j.contains("matrix") + j.contains("hyperplanes") + j.contains("rays");
  if (kinds != 1) throw SchemaError("fraction spec needs exactly one of matrix, hyperplanes, rays");
  try {
    if (j.contains("matrix")) return FractionSpec::fromMatrix(toMatrix(j.at("matrix")));
    if (j.contains("hyperplanes")) return FractionSpec::fromHyperplanes(toPoints(j.at("hyperplanes")));
    return FractionSpec::fromRays(toPoints(j.at("rays")));
  } catch (DimensionError const& e) {
    throw SchemaError(e.what());
  } catch (DegenerateError const& e) {
    throw SchemaError(e.what());
  } catch (ParameterError const& e) {
    throw SchemaError(e.what());
  }
}

inline Json sailFace(SailFace const& f) {
  return Json{{"vertices", points(f.polygon.vertices())},
              {"distance", integer(f.distance)},
              {"form", form(f.classification.form)}};
}

inline Json sail(Sail const& s) {
  Json faces = Json::array();
  for (auto const& layer : s.faces) {
    Json l = Json::array();
    for (auto const& f : layer)
      l.push_back(Json{{"vertices", indices(f.vertices)}, {"rays", indices(f.rays)}});
    faces.push_back(l);
  }
  return Json{{"rays", points(s.cone.rays())},
              {"orthant", integers(s.cone.orthantSigns())},
              {"certified", s.certified},
              {"bound", integer(s.bound)},
              {"vertices", points(s.vertices)},
              {"faces", faces}};
}

}  // namespace json
}  // namespace klein
