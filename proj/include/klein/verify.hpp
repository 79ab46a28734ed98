#pragma once

// Property checks over the canonical lists. Each check stops at the first
// violation, scanning parameters in increasing order, and reports it.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "klein/classifier.hpp"
#include "klein/emptiness.hpp"
#include "klein/enumerate.hpp"
#include "klein/random.hpp"

namespace klein {

using VertexSource = std::function<CanonicalPyramid(CanonicalForm const&)>;

struct VerifyOptions {
  int maxR = 8;
  int maxA = 4;
  int maxB = 4;
  int bound = 3;
  std::uint64_t seed = 1;
  int mapsPerForm = 10;
  unsigned workers = 0;
  VertexSource vertices = canonicalVertices;
};

struct CheckResult {
  std::string name;
  std::size_t cases = 0;
  bool passed = true;
  std::string counterexample;
};

struct VerifyReport {
  std::vector<CheckResult> checks;
  bool passed() const {
    return std::all_of(checks.begin(), checks.end(), [](auto const& c) { return c.passed; });
  }
};

// Multistory list entries with a, b and r in range.
inline std::vector<CanonicalForm> listForms(int maxA, int maxB, int maxR) {
  std::vector<CanonicalForm> out;
  if (maxR >= 2) {
    out.push_back(CanonicalForm::v());
    for (int a = 1; a <= maxA; ++a)
      for (int b = a; b <= maxB; ++b) out.push_back(CanonicalForm::m(a, b));
    for (int b = 1; b <= maxB; ++b) out.push_back(CanonicalForm::u(b));
  }
  if (maxR >= 3) out.push_back(CanonicalForm::w());
  for (int r = 2; r <= maxR; ++r)
    for (int xi = 1; 2 * xi <= r; ++xi)
      if (std::gcd(xi, r) == 1)
        for (int a = 1; a <= maxA; ++a) out.push_back(CanonicalForm::t(a, r, xi));
  return out;
}

inline PointList emptyTetrahedron(Integer const& r, Integer const& xi) {
  auto pt = [](Integer x, Integer y, Integer z) { return LatticePoint(std::vector<Integer>{x, y, z}); };
  return {pt(0, 0, 0), pt(0, 1, 0), pt(1, 0, 0), pt(xi, r - xi, r)};
}

inline IntegerMatrix stripMatrix(Integer const& r, Integer const& xi) {
  auto row = [](Integer a, Integer b, Integer c) { return LatticePoint(std::vector<Integer>{a, b, c}); };
  return IntegerMatrix::fromRows({row(xi + 1, xi, -xi), row(r - 1, r - 1, 2 - r), row(-r, -r, r - 1)});
}

// Units of Z/r, ascending.
inline std::vector<Integer> unitsMod(Integer const& r) {
  std::vector<Integer> out;
  for (Integer u = 1; u < r || (r == 1 && u == 1); ++u)
    if (gcd(u, r) == 1) out.push_back(u);
  return out;
}

// Story counts r in [1, maxR] for which marked and unmarked classification
// of every empty tetrahedron agree.
inline std::vector<int> coincidenceSet(int maxR) {
  std::vector<int> out;
  for (int r = 1; r <= maxR; ++r) {
    bool all = true;
    for (auto const& xi : unitsMod(r)) {
      auto v = emptyTetrahedron(r, xi);
      if (classifyEmptyTetrahedron(v, 0).form != classifyEmptyTetrahedron(v, std::nullopt).form) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(r);
  }
  return out;
}

namespace detail {

inline std::string str(PointList const& ps) {
  std::string s = "[";
  for (std::size_t i = 0; i < ps.size(); ++i) s += (i ? ", " : "") + ps[i].str();
  return s + "]";
}

// Closed tetrahedron membership: the four cones over the facets fill it exactly.
inline bool inClosedTetrahedron(PointList const& t, LatticePoint const& p) {
  Integer total = 0;
  for (std::size_t i = 0; i < 4; ++i) {
    PointList s = t;
    s[i] = p;
    total += abs(determinant(IntegerMatrix::fromColumns({s[1] - s[0], s[2] - s[0], s[3] - s[0]})));
  }
  return total == abs(determinant(IntegerMatrix::fromColumns({t[1] - t[0], t[2] - t[0], t[3] - t[0]})));
}

inline std::size_t boxScanCount(PointList const& t) {
  LatticePoint lo = t[0], hi = t[0];
  for (auto const& p : t)
    for (std::size_t i = 0; i < 3; ++i) {
      lo[i] = std::min(lo[i], p[i]);
      hi[i] = std::max(hi[i], p[i]);
    }
  std::size_t n = 0;
  for (Integer x = lo[0]; x <= hi[0]; ++x)
    for (Integer y = lo[1]; y <= hi[1]; ++y)
      for (Integer z = lo[2]; z <= hi[2]; ++z)
        n += inClosedTetrahedron(t, LatticePoint(std::vector<Integer>{x, y, z}));
  return n;
}

inline bool sameUnmarkedOrbit(Integer const& r, Integer const& xi, Integer const& nu) {
  for (Integer s : {xi, Integer(r - xi)})
    if (s == nu || (s * nu) % r == 1) return true;
  return false;
}

}  // namespace detail

inline CheckResult checkIdempotence(VerifyOptions const& opt) {
  CheckResult c{"idempotence"};
  for (auto const& f : listForms(opt.maxA, opt.maxB, opt.maxR)) {
    ++c.cases;
    try {
      auto v = opt.vertices(f);
      auto res = classifyMarkedPyramid(MarkedPyramid(v.apex, v.base));
      if (res.form != reportedForm(f)) {
        c.passed = false;
        c.counterexample = f.str() + " with vertices " + detail::str(v.all()) + " classifies as " + res.form.str();
      }
    } catch (Error const& e) {
      c.passed = false;
      c.counterexample = f.str() + ": " + e.what();
    }
    if (!c.passed) break;
  }
  return c;
}

inline CheckResult checkInvariance(VerifyOptions const& opt) {
  CheckResult c{"invariance"};
  std::mt19937_64 rng(opt.seed);
  for (auto const& f : listForms(opt.maxA, opt.maxB, opt.maxR)) {
    auto base = canonicalVertices(f);
    for (int k = 0; k < opt.mapsPerForm && c.passed; ++k) {
      ++c.cases;
      auto t = randomAffine(3, rng);
      PointList image = applyMap(t, base.all());
      try {
        auto res = classifyMarkedPyramid(MarkedPyramid(image[0], PointList(image.begin() + 1, image.end())));
        auto target = canonicalVertices(res.form);
        bool ok = res.form == reportedForm(f) && res.witness(image[0]) == target.apex &&
                  sortedUnique(applyMap(res.witness, image)) == sortedUnique(target.all());
        if (!ok) {
          c.passed = false;
          c.counterexample = f.str() + " mapped to " + detail::str(image) + " classifies as " + res.form.str();
        }
      } catch (Error const& e) {
        c.passed = false;
        c.counterexample = f.str() + " mapped to " + detail::str(image) + ": " + e.what();
      }
    }
    if (!c.passed) break;
  }
  return c;
}

inline CheckResult checkExhaustiveAgreement(VerifyOptions const& opt) {
  CheckResult c{"exhaustive-agreement"};
  if (opt.bound < 1) return c;
  auto e = enumerateCompletelyEmptyPyramids({opt.bound, opt.workers});
  c.cases = e.orbits.size();
  std::set<CanonicalForm> forms;
  for (auto const& o : e.orbits) {
    try {
      auto res = classifyMarkedPyramid(MarkedPyramid(LatticePoint::zero(3), o.base));
      forms.insert(res.form);
    } catch (Error const& err) {
      c.passed = false;
      c.counterexample = "apex (0, 0, 0), base " + detail::str(o.base) + ": " + err.what();
      return c;
    }
  }
  // Distinct forms must be distinct marked classes.
  std::vector<CanonicalForm> fs(forms.begin(), forms.end());
  for (std::size_t i = 0; i < fs.size(); ++i)
    for (std::size_t j = i + 1; j < fs.size(); ++j)
      if (bruteForceAffineEquivalent(canonicalVertices(fs[i]).all(), canonicalVertices(fs[j]).all(), true)) {
        c.passed = false;
        c.counterexample = fs[i].str() + " and " + fs[j].str() + " are equivalent";
        return c;
      }
  return c;
}

inline CheckResult checkWhiteInvariant(VerifyOptions const& opt) {
  CheckResult c{"white-invariant"};
  for (int r = 2; r <= opt.maxR && c.passed; ++r) {
    auto units = unitsMod(r);
    for (auto const& xi : units) {
      ++c.cases;
      auto t = emptyTetrahedron(r, xi);
      std::string name = "P(r=" + std::to_string(r) + ",xi=" + xi.str() + ")";
      if (detail::boxScanCount(t) != 4) {
        c.passed = false;
        c.counterexample = name + " is not empty";
        break;
      }
      std::array<Integer, 3> want{1, xi, r - xi};
      std::sort(want.begin(), want.end());
      auto got = whiteInvariant(MarkedPyramid(t[0], PointList(t.begin() + 1, t.end()))).values;
      if (got != want) {
        c.passed = false;
        c.counterexample = name + " has invariant {" + got[0].str() + ", " + got[1].str() + ", " + got[2].str() + "}";
        break;
      }
    }
    // Marked classes are xi in (0, r/2]; unmarked classes are the orbits of xi -> ±xi^{±1}.
    std::vector<CanonicalForm> marked, unmarked;
    for (auto const& xi : units) {
      marked.push_back(classifyEmptyTetrahedron(emptyTetrahedron(r, xi), 0).form);
      unmarked.push_back(classifyEmptyTetrahedron(emptyTetrahedron(r, xi), std::nullopt).form);
    }
    for (std::size_t i = 0; i < units.size() && c.passed; ++i)
      for (std::size_t j = 0; j < units.size() && c.passed; ++j) {
        auto const& xi = units[i];
        auto const& nu = units[j];
        bool markedSame = nu == xi || nu == r - xi;
        if ((marked[i] == marked[j]) != markedSame ||
            (unmarked[i] == unmarked[j]) != detail::sameUnmarkedOrbit(r, xi, nu)) {
          c.passed = false;
          c.counterexample = "r=" + std::to_string(r) + ", xi=" + xi.str() + ", nu=" + nu.str() + ": marked " +
                             marked[i].str() + " / " + marked[j].str() + ", unmarked " + unmarked[i].str() +
                             " / " + unmarked[j].str();
        }
      }
  }
  return c;
}

inline CheckResult checkStripMatrix(VerifyOptions const& opt) {
  CheckResult c{"strip-matrix"};
  for (int r = 2; r <= opt.maxR; ++r)
    for (int xi = 1; 2 * xi <= r; ++xi) {
      if (std::gcd(xi, r) != 1) continue;
      ++c.cases;
      auto m = stripMatrix(r, xi);
      auto img = applyMap(IntegerAffineMap(m), emptyTetrahedron(r, xi));
      auto target = opt.vertices(CanonicalForm::t(1, r, xi)).all();
      if (abs(determinant(m)) != 1 || sortedUnique(img) != sortedUnique(target)) {
        c.passed = false;
        c.counterexample = "r=" + std::to_string(r) + ", xi=" + std::to_string(xi) + ": image " +
                           detail::str(img) + ", expected " + detail::str(target);
        return c;
      }
    }
  return c;
}

inline CheckResult checkCoincidence(VerifyOptions const& opt) {
  CheckResult c{"marked-unmarked-coincidence"};
  auto got = coincidenceSet(opt.maxR);
  for (int r = 1; r <= opt.maxR; ++r) {
    ++c.cases;
    bool predicted = true;
    for (auto const& u : unitsMod(r)) {
      Integer s = (u * u) % r;
      if (r > 2 && s != 1 && s != r - 1) predicted = false;
    }
    bool found = std::find(got.begin(), got.end(), r) != got.end();
    if (found != predicted) {
      c.passed = false;
      c.counterexample = "r=" + std::to_string(r) + ": classifications " + (found ? "coincide" : "differ") +
                         ", unit squares say " + (predicted ? "coincide" : "differ");
      return c;
    }
  }
  return c;
}

inline VerifyReport runVerifyLists(VerifyOptions const& opt) {
  if (opt.maxR < 1 || opt.maxA < 1 || opt.maxB < 1 || opt.bound < 0 || opt.bound > 64 || opt.mapsPerForm < 0)
    throw ParameterError("verify-lists parameters out of range");
  VerifyReport rep;
  rep.checks.push_back(checkIdempotence(opt));
  rep.checks.push_back(checkInvariance(opt));
  rep.checks.push_back(checkExhaustiveAgreement(opt));
  rep.checks.push_back(checkWhiteInvariant(opt));
  rep.checks.push_back(checkStripMatrix(opt));
  rep.checks.push_back(checkCoincidence(opt));
  return rep;
}

}  // namespace klein
