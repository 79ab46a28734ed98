#pragma once

// Exhaustive enumeration of completely empty multistory marked pyramids with
// apex at the origin and base vertices in the cube [-B, B]^3.
//
// The search runs in 64-bit integers (coordinates are bounded by B, so all
// products stay small) and is then certified with the exact classifier.
// Pyramids are grouped into orbits of the 48 signed coordinate permutations,
// which fix the origin and the cube; one exact classification per orbit is
// transported to the other members by the symmetry.

#include <algorithm>
#include <array>
#include <cstdint>
#include <exception>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "klein/classifier.hpp"
#include "klein/core.hpp"

namespace klein {

class EnumerationCapError : public Error {
 public:
  using Error::Error;
};

namespace detail {

using Vec64 = std::array<std::int64_t, 3>;

inline Vec64 cross64(Vec64 const& a, Vec64 const& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline std::int64_t dot64(Vec64 const& a, Vec64 const& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Vec64 sub64(Vec64 const& a, Vec64 const& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline std::int64_t content64(Vec64 const& a) {
  return std::gcd(std::gcd(std::abs(a[0]), std::abs(a[1])), std::abs(a[2]));
}

// Diagonal of the lower triangular Hermite form of the lattice spanned by the
// columns; the box prod [0, d_i) is a set of coset representatives.
inline Vec64 hermiteDiagonal64(std::array<Vec64, 3> c) {
  Vec64 d{};
  for (int row = 0; row < 3; ++row) {
    for (;;) {
      int best = -1;
      for (int j = row; j < 3; ++j)
        if (c[j][row] != 0 && (best < 0 || std::abs(c[j][row]) < std::abs(c[best][row]))) best = j;
      if (best < 0) return {0, 0, 0};
      std::swap(c[row], c[best]);
      bool cleared = true;
      for (int j = row + 1; j < 3; ++j) {
        if (c[j][row] == 0) continue;
        std::int64_t q = c[j][row] / c[row][row];
        for (int t = 0; t < 3; ++t) c[j][t] -= q * c[row][t];
        if (c[j][row] != 0) cleared = false;
      }
      if (cleared) break;
    }
    d[row] = std::abs(c[row][row]);
  }
  return d;
}

// Story count of the pyramid over the triangle abc when it is completely
// empty and multistory, else 0.
inline std::int64_t completelyEmptyStories64(Vec64 const& a, Vec64 const& b, Vec64 const& c) {
  std::int64_t const det = dot64(a, cross64(b, c));
  if (det == 0) return 0;
  std::int64_t const r = std::abs(det) / content64(cross64(sub64(b, a), sub64(c, a)));
  if (r < 2) return 0;
  std::int64_t const n = std::abs(det);
  std::int64_t const sign = det > 0 ? 1 : -1;
  std::array<Vec64, 3> adj{cross64(b, c), cross64(c, a), cross64(a, b)};
  Vec64 box = hermiteDiagonal64({a, b, c});
  for (std::int64_t x = 0; x < box[0]; ++x)
    for (std::int64_t y = 0; y < box[1]; ++y)
      for (std::int64_t z = 0; z < box[2]; ++z) {
        Vec64 p{x, y, z};
        std::int64_t sum = 0;
        for (auto const& row : adj) {
          std::int64_t w = (sign * dot64(row, p)) % n;
          sum += w < 0 ? w + n : w;
        }
        if (sum > 0 && sum < n) return 0;
      }
  return r;
}

inline bool strictlyConvex64(std::vector<Vec64> const& pts, Vec64 const& normal) {
  // No point lies in the closed triangle of three others.
  auto side = [&](Vec64 const& p, Vec64 const& q, Vec64 const& s) {
    return dot64(cross64(sub64(q, p), sub64(s, p)), normal);
  };
  std::size_t const m = pts.size();
  for (std::size_t t = 0; t < m; ++t)
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = i + 1; j < m; ++j)
        for (std::size_t k = j + 1; k < m; ++k) {
          if (t == i || t == j || t == k) continue;
          std::int64_t s1 = side(pts[i], pts[j], pts[t]);
          std::int64_t s2 = side(pts[j], pts[k], pts[t]);
          std::int64_t s3 = side(pts[k], pts[i], pts[t]);
          bool neg = s1 < 0 || s2 < 0 || s3 < 0;
          bool pos = s1 > 0 || s2 > 0 || s3 > 0;
          if (!(neg && pos)) return false;
        }
  return true;
}

using Base64 = std::vector<Vec64>;

inline Base64 orbitKey(Base64 const& base) {
  static constexpr std::array<std::array<int, 3>, 6> perms{
      {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
  Base64 best;
  for (auto const& p : perms)
    for (int s = 0; s < 8; ++s) {
      Base64 img;
      for (auto const& v : base) {
        Vec64 w;
        for (int i = 0; i < 3; ++i) w[i] = ((s >> i) & 1 ? -1 : 1) * v[p[i]];
        img.push_back(w);
      }
      std::sort(img.begin(), img.end());
      if (best.empty() || img < best) best = std::move(img);
    }
  return best;
}

struct TripleHash {
  std::size_t operator()(std::uint64_t x) const { return std::hash<std::uint64_t>{}(x * 0x9E3779B97F4A7C15ull); }
};

}  // namespace detail

struct EnumerationOptions {
  int bound = 4;
  unsigned threads = 0;        // 0: hardware concurrency
  std::size_t cap = 50000000;  // on the number of pyramids
};

struct EnumeratedOrbit {
  PointList base;  // apex at the origin; lex-smallest image under the cube symmetries
  std::size_t size = 0;
};

struct EnumerationResult {
  std::vector<EnumeratedOrbit> orbits;  // sorted by base
  std::size_t pyramids = 0;
};

inline EnumerationResult enumerateCompletelyEmptyPyramids(EnumerationOptions const& opt) {
  using namespace detail;
  if (opt.bound < 1 || opt.bound > 64) throw ParameterError("enumeration bound must lie in [1, 64]");
  std::int64_t const B = opt.bound;
  std::vector<Vec64> pts;
  for (std::int64_t x = -B; x <= B; ++x)
    for (std::int64_t y = -B; y <= B; ++y)
      for (std::int64_t z = -B; z <= B; ++z)
        if (content64({x, y, z}) == 1) pts.push_back({x, y, z});
  std::size_t const n = pts.size();
  // Edge and face triangles of the pyramid hold lattice points only on the base edge.
  std::vector<char> pairOk(n * n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      Vec64 c = cross64(pts[i], pts[j]);
      if (c != Vec64{0, 0, 0}) pairOk[i * n + j] = content64(c) == content64(sub64(pts[j], pts[i]));
    }

  unsigned threads = opt.threads ? opt.threads : std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::vector<std::array<std::uint32_t, 3>>> found(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      for (std::size_t i = t; i < n; i += threads)
        for (std::size_t j = i + 1; j < n; ++j) {
          if (!pairOk[i * n + j]) continue;
          for (std::size_t k = j + 1; k < n; ++k) {
            if (!pairOk[i * n + k] || !pairOk[j * n + k]) continue;
            if (completelyEmptyStories64(pts[i], pts[j], pts[k]))
              found[t].push_back({std::uint32_t(i), std::uint32_t(j), std::uint32_t(k)});
          }
        }
    });
  for (auto& th : pool) th.join();
  std::vector<std::array<std::uint32_t, 3>> triangles;
  for (auto& f : found) triangles.insert(triangles.end(), f.begin(), f.end());
  std::sort(triangles.begin(), triangles.end());

  // Larger bases: every vertex triple spans a completely empty pyramid, and
  // conversely a fan of such triangles covers the base.
  auto code = [n](std::size_t i, std::size_t j, std::size_t k) {
    return (std::uint64_t(i) * n + j) * n + k;
  };
  std::unordered_set<std::uint64_t, TripleHash> good;
  good.reserve(triangles.size() * 2);
  for (auto const& t : triangles) good.insert(code(t[0], t[1], t[2]));
  std::map<std::pair<Vec64, std::int64_t>, std::vector<std::uint32_t>> planes;
  for (std::size_t q = 0; q < triangles.size(); ++q) {
    auto const& t = triangles[q];
    Vec64 nrm = cross64(sub64(pts[t[1]], pts[t[0]]), sub64(pts[t[2]], pts[t[0]]));
    std::int64_t g = content64(nrm);
    for (auto& x : nrm) x /= g;
    std::int64_t off = dot64(nrm, pts[t[0]]);
    if (off < 0) {
      for (auto& x : nrm) x = -x;
      off = -off;
    }
    auto& members = planes[{nrm, off}];
    for (auto v : t) members.push_back(v);
  }
  for (auto& [key, members] : planes) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
  }
  auto allGood = [&](std::vector<std::uint32_t> const& s) {
    for (std::size_t a = 0; a < s.size(); ++a)
      for (std::size_t b = a + 1; b < s.size(); ++b)
        for (std::size_t c = b + 1; c < s.size(); ++c)
          if (!good.count(code(s[a], s[b], s[c]))) return false;
    return true;
  };

  std::map<Base64, std::size_t> orbits;
  std::size_t total = 0;
  auto record = [&](std::vector<std::uint32_t> const& s) {
    Base64 base;
    for (auto v : s) base.push_back(pts[v]);
    ++orbits[orbitKey(base)];
    if (++total > opt.cap) throw EnumerationCapError("enumeration exceeded the pyramid cap");
  };
  std::vector<std::vector<std::uint32_t>> layer;
  for (std::size_t q = 0; q < triangles.size(); ++q) {
    std::vector<std::uint32_t> s(triangles[q].begin(), triangles[q].end());
    record(s);
    layer.push_back(std::move(s));
  }
  while (!layer.empty()) {
    std::vector<std::vector<std::uint32_t>> next;
    for (auto const& s : layer) {
      Vec64 nrm = cross64(sub64(pts[s[1]], pts[s[0]]), sub64(pts[s[2]], pts[s[0]]));
      std::int64_t g = content64(nrm);
      for (auto& x : nrm) x /= g;
      std::int64_t off = dot64(nrm, pts[s[0]]);
      if (off < 0) {
        for (auto& x : nrm) x = -x;
        off = -off;
      }
      for (auto v : planes.at({nrm, off})) {
        if (v <= s.back()) continue;
        auto ext = s;
        ext.push_back(v);
        if (!allGood(ext)) continue;
        std::vector<Vec64> coords;
        for (auto w : ext) coords.push_back(pts[w]);
        if (!strictlyConvex64(coords, nrm)) continue;
        record(ext);
        next.push_back(std::move(ext));
      }
    }
    layer = std::move(next);
  }

  EnumerationResult out;
  out.pyramids = total;
  for (auto const& [base, size] : orbits) {
    EnumeratedOrbit o;
    for (auto const& v : base) o.base.push_back(LatticePoint{v[0], v[1], v[2]});
    o.size = size;
    out.orbits.push_back(std::move(o));
  }
  return out;
}

struct OrbitClassification {
  EnumeratedOrbit orbit;
  ClassificationResult result;
};

struct EnumerationReport {
  std::size_t pyramids = 0;
  std::vector<OrbitClassification> orbits;
  std::map<CanonicalForm, std::size_t> counts;  // pyramids per form
};

// Exact classification of every orbit representative. Throws whatever the
// classifier throws, so a pyramid outside the list surfaces as an error.
inline EnumerationReport classifyEnumeration(EnumerationResult const& e, unsigned threads = 0) {
  if (!threads) threads = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::optional<ClassificationResult>> results(e.orbits.size());
  std::vector<std::exception_ptr> errors(threads);
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&, t] {
      try {
        for (std::size_t i = t; i < e.orbits.size(); i += threads)
          results[i] = classifyMarkedPyramid(MarkedPyramid(LatticePoint::zero(3), e.orbits[i].base));
      } catch (...) {
        errors[t] = std::current_exception();
      }
    });
  for (auto& th : pool) th.join();
  for (auto const& err : errors)
    if (err) std::rethrow_exception(err);
  EnumerationReport rep;
  rep.pyramids = e.pyramids;
  for (std::size_t i = 0; i < e.orbits.size(); ++i) {
    rep.counts[results[i]->form] += e.orbits[i].size;
    rep.orbits.push_back({e.orbits[i], *results[i]});
  }
  return rep;
}

}  // namespace klein
