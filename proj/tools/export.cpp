#include "export.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <sstream>

namespace klein::cli {
namespace {

constexpr double kPanel = 240.0;
constexpr double kMargin = 20.0;
constexpr long long kMaxDots = 4000;

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

double toDouble(Integer const& x) { return x.convert_to<double>(); }

struct Frame {
  double x0, y0, x1, y1;  // lattice bounding box
  double ox, oy;          // panel offset
  double scale;

  Frame(PointList const& pts, double offset) : ox(offset), oy(0) {
    x0 = x1 = toDouble(pts[0][0]);
    y0 = y1 = toDouble(pts[0][1]);
    for (auto const& p : pts) {
      x0 = std::min(x0, toDouble(p[0]));
      x1 = std::max(x1, toDouble(p[0]));
      y0 = std::min(y0, toDouble(p[1]));
      y1 = std::max(y1, toDouble(p[1]));
    }
    double span = std::max({x1 - x0, y1 - y0, 1.0});
    scale = (kPanel - 2 * kMargin) / span;
  }
  double sx(double x) const { return ox + kMargin + (x - x0) * scale; }
  double sy(double y) const { return oy + kPanel - kMargin - (y - y0) * scale; }
};

void dots(std::ostringstream& os, Frame const& f) {
  long long nx = static_cast<long long>(f.x1 - f.x0) + 1, ny = static_cast<long long>(f.y1 - f.y0) + 1;
  if (nx * ny > kMaxDots) return;
  for (double x = f.x0; x <= f.x1; x += 1)
    for (double y = f.y0; y <= f.y1; y += 1)
      os << "<circle cx=\"" << num(f.sx(x)) << "\" cy=\"" << num(f.sy(y)) << "\" r=\"1.5\" fill=\"#999\"/>\n";
}

void polyline(std::ostringstream& os, Frame const& f, PointList const& pts, bool closed) {
  os << "<" << (closed ? "polygon" : "polyline") << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << (i ? " " : "") << num(f.sx(toDouble(pts[i][0]))) << "," << num(f.sy(toDouble(pts[i][1])));
  os << "\" fill=\"" << (closed ? "#cde" : "none") << "\" stroke=\"#124\" stroke-width=\"1.5\"/>\n";
  for (auto const& p : pts)
    os << "<circle cx=\"" << num(f.sx(toDouble(p[0]))) << "\" cy=\"" << num(f.sy(toDouble(p[1])))
       << "\" r=\"3\" fill=\"#124\"/>\n";
}

Integer cross2(LatticePoint const& a, LatticePoint const& b) { return a[0] * b[1] - a[1] * b[0]; }

}  // namespace

std::string toOff(std::vector<Sail> const& sails) {
  PointList vertices;
  std::vector<std::vector<std::size_t>> faces;
  for (auto const& s : sails) {
    if (s.cone.dim() != 3) throw DimensionError("OFF export needs sails in Z^3");
    std::size_t const offset = vertices.size();
    std::map<LatticePoint, std::size_t> index;
    for (std::size_t i = 0; i < s.vertices.size(); ++i) {
      index[s.vertices[i]] = offset + i;
      vertices.push_back(s.vertices[i]);
    }
    for (auto const* f : s.compactFaces(2)) {
      PointList vs;
      for (auto i : f->vertices) vs.push_back(s.vertices[i]);
      ConvexLatticePolygon poly(vs);
      std::vector<std::size_t> cyc;
      for (auto const& v : poly.vertices()) cyc.push_back(index.at(v));
      faces.push_back(cyc);
    }
  }
  std::ostringstream os;
  os << "OFF\n" << vertices.size() << " " << faces.size() << " 0\n";
  for (auto const& v : vertices) os << v[0] << " " << v[1] << " " << v[2] << "\n";
  for (auto const& f : faces) {
    os << f.size();
    for (auto i : f) os << " " << i;
    os << "\n";
  }
  return os.str();
}

std::string toSvg(std::vector<Sail> const& sails) {
  std::ostringstream body;
  std::size_t panels = 0;
  for (auto const& s : sails) {
    if (s.cone.dim() == 2) {
      PointList vs = s.vertices;
      Integer orient = cross2(s.cone.rays()[0], s.cone.rays()[1]);
      std::sort(vs.begin(), vs.end(), [&](auto const& a, auto const& b) { return cross2(a, b) * orient > 0; });
      PointList box = vs;
      box.push_back(LatticePoint::zero(2));
      Frame f(box, panels * kPanel);
      dots(body, f);
      Integer reach = 1;
      for (auto const& v : vs) reach = std::max(reach, detail::maxNorm(v));
      for (auto const& r : s.cone.rays()) {
        Integer n = detail::maxNorm(r);
        LatticePoint far = Integer((reach + n - 1) / n) * r;
        body << "<line x1=\"" << num(f.sx(0)) << "\" y1=\"" << num(f.sy(0)) << "\" x2=\""
             << num(f.sx(toDouble(far[0]))) << "\" y2=\"" << num(f.sy(toDouble(far[1])))
             << "\" stroke=\"#a33\" stroke-dasharray=\"4 3\"/>\n";
      }
      polyline(body, f, vs, false);
      ++panels;
      continue;
    }
    for (auto const* face : s.compactFaces(2)) {
      PointList vs;
      for (auto i : face->vertices) vs.push_back(s.vertices[i]);
      ConvexLatticePolygon poly(vs);
      Frame f(poly.localVertices(), panels * kPanel);
      dots(body, f);
      polyline(body, f, poly.localVertices(), true);
      ++panels;
    }
  }
  std::ostringstream os;
  double width = std::max<std::size_t>(panels, 1) * kPanel;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(kPanel)
     << "\" viewBox=\"0 0 " << num(width) << " " << num(kPanel) << "\">\n"
     << body.str() << "</svg>\n";
  return os.str();
}

}  // namespace klein::cli
