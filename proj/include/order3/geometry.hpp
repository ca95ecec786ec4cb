#pragma once

#include <array>
#include <map>

#include "order3/group.hpp"

// The point-line geometry attached to a class: lines are the commutator
// 2-spaces, points the pairwise intersections of distinct lines. Ambient
// dimension is capped at 64 so 1-spaces can be handled as plain masks.

namespace order3 {

struct Geometry {
  uint32_t ambient = 0;
  std::vector<uint64_t> points;                    // sorted; a point is its unique nonzero vector
  std::vector<std::array<uint64_t, 3>> line_vecs;  // nonzero vectors per line, each sorted
  std::vector<Subspace> lines;                     // parallel to line_vecs
  std::vector<std::array<int32_t, 3>> line_points; // point indices, -1 when not a point
  std::vector<std::vector<uint32_t>> point_lines;
  uint32_t adj_stride = 0;
  std::vector<uint64_t> adj;

  bool adjacent(uint32_t p, uint32_t q) const {
    return (adj[size_t(p) * adj_stride + (q >> 6)] >> (q & 63)) & 1;
  }

  std::optional<uint32_t> point_index(uint64_t mask) const {
    auto it = std::lower_bound(points.begin(), points.end(), mask);
    if (it != points.end() && *it == mask) return static_cast<uint32_t>(it - points.begin());
    return std::nullopt;
  }

  std::optional<uint32_t> line_index(const std::array<uint64_t, 3>& key) const {
    auto it = std::lower_bound(line_vecs.begin(), line_vecs.end(), key);
    if (it != line_vecs.end() && *it == key) return static_cast<uint32_t>(it - line_vecs.begin());
    return std::nullopt;
  }

  Subspace point_subspace(uint32_t p) const {
    return Subspace::of_vector(BitVector::from_mask(ambient, points[p]));
  }

  // p^perp: p together with the points not collinear with p.
  std::vector<uint32_t> perp(uint32_t p) const {
    std::vector<uint32_t> out;
    for (uint32_t q = 0; q < points.size(); ++q)
      if (q == p || !adjacent(p, q)) out.push_back(q);
    return out;
  }

  // Every line carries zero or three points of the geometry.
  bool zero_or_three_points_per_line() const {
    for (const auto& lp : line_points) {
      int c = (lp[0] >= 0) + (lp[1] >= 0) + (lp[2] >= 0);
      if (c != 0 && c != 3) return false;
    }
    return true;
  }
};

namespace detail {
inline std::array<uint64_t, 3> line_key(uint64_t u, uint64_t v) {
  std::array<uint64_t, 3> k{u, v, u ^ v};
  std::sort(k.begin(), k.end());
  return k;
}
}  // namespace detail

inline Geometry build_geometry(uint32_t ambient, const std::vector<Subspace>& lines) {
  if (ambient > 64) throw error("build_geometry: ambient dimension exceeds 64");
  Geometry g;
  g.ambient = ambient;
  for (const auto& l : lines) {
    if (l.ambient() != ambient) throw error("build_geometry: ambient dimension mismatch");
    if (l.dim() != 2) throw error("build_geometry: lines must be 2-dimensional");
    g.line_vecs.push_back(detail::line_key(l.basis()[0].mask(), l.basis()[1].mask()));
  }
  std::sort(g.line_vecs.begin(), g.line_vecs.end());
  g.line_vecs.erase(std::unique(g.line_vecs.begin(), g.line_vecs.end()), g.line_vecs.end());
  g.lines.reserve(g.line_vecs.size());
  for (const auto& lv : g.line_vecs)
    g.lines.push_back(Subspace::span(
        ambient, {BitVector::from_mask(ambient, lv[0]), BitVector::from_mask(ambient, lv[1])}));

  // Points: intersections of distinct lines. Two distinct 2-spaces share at
  // most one nonzero vector.
  std::unordered_set<uint64_t> pts;
  size_t nl = g.line_vecs.size();
  for (size_t i = 0; i < nl; ++i)
    for (size_t j = i + 1; j < nl; ++j)
      for (uint64_t x : g.line_vecs[i])
        if (x == g.line_vecs[j][0] || x == g.line_vecs[j][1] || x == g.line_vecs[j][2]) {
          pts.insert(x);
          break;
        }
  g.points.assign(pts.begin(), pts.end());
  std::sort(g.points.begin(), g.points.end());

  g.line_points.resize(nl);
  g.point_lines.resize(g.points.size());
  for (size_t i = 0; i < nl; ++i)
    for (int k = 0; k < 3; ++k) {
      auto pi = g.point_index(g.line_vecs[i][k]);
      g.line_points[i][k] = pi ? static_cast<int32_t>(*pi) : -1;
      if (pi) g.point_lines[*pi].push_back(static_cast<uint32_t>(i));
    }

  g.adj_stride = detail::words_for(static_cast<uint32_t>(g.points.size()));
  g.adj.assign(size_t(g.points.size()) * g.adj_stride, 0);
  auto set_adj = [&](uint32_t a, uint32_t b) {
    g.adj[size_t(a) * g.adj_stride + (b >> 6)] |= uint64_t(1) << (b & 63);
    g.adj[size_t(b) * g.adj_stride + (a >> 6)] |= uint64_t(1) << (a & 63);
  };
  for (size_t i = 0; i < nl; ++i) {
    const auto& lp = g.line_points[i];
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        if (lp[a] >= 0 && lp[b] >= 0) set_adj(lp[a], lp[b]);
  }
  return g;
}

inline Geometry build_geometry(const ClassD& cls) { return build_geometry(cls.dim, cls.lines); }

// ---- planes --------------------------------------------------------------

enum class PlaneKind { Projective, DualAffine };

struct PlaneType {
  Subspace span;
  PlaneKind kind;
  std::optional<Subspace> missing_point;  // dual affine only
};

inline PlaneType plane_type(const Geometry& g, const Subspace& l, const Subspace& m) {
  if (l == m) throw error("plane_type: lines must be distinct");
  Subspace meet = l.meet(m);
  if (meet.dim() != 1) throw error("plane_type: lines do not meet at a point");
  Subspace w = l.sum(m);

  // the 7 nonzero vectors of the 3-space W
  std::array<uint64_t, 7> wv{};
  {
    auto vecs = w.vectors();
    for (size_t i = 0; i < 7; ++i) wv[i] = vecs[i].mask();
    std::sort(wv.begin(), wv.end());
  }
  auto in_w = [&](uint64_t x) { return std::binary_search(wv.begin(), wv.end(), x); };

  std::vector<std::array<uint64_t, 3>> lw;
  for (const auto& lv : g.line_vecs)
    if (in_w(lv[0]) && in_w(lv[1]) && in_w(lv[2])) lw.push_back(lv);

  std::unordered_set<uint64_t> pw;
  for (size_t i = 0; i < lw.size(); ++i)
    for (size_t j = i + 1; j < lw.size(); ++j)
      for (uint64_t x : lw[i])
        if (x == lw[j][0] || x == lw[j][1] || x == lw[j][2]) pw.insert(x);

  if (lw.size() == 7 && pw.size() == 7) return {w, PlaneKind::Projective, std::nullopt};
  if (lw.size() == 4 && pw.size() == 6) {
    uint64_t missing = 0;
    int nmiss = 0;
    for (uint64_t x : wv)
      if (!pw.count(x)) {
        missing = x;
        ++nmiss;
      }
    if (nmiss != 1)
      throw corruption_error("plane_type: dual affine plane without a unique missing point");
    for (const auto& lv : lw)
      if (lv[0] == missing || lv[1] == missing || lv[2] == missing)
        throw corruption_error("plane_type: missing point lies on a line of the plane");
    return {w, PlaneKind::DualAffine,
            Subspace::of_vector(BitVector::from_mask(g.ambient, missing))};
  }
  throw corruption_error("plane_type: " + std::to_string(lw.size()) + " lines / " +
                         std::to_string(pw.size()) + " points matches neither plane type");
}

struct PlaneCensus {
  uint64_t projective = 0;
  uint64_t dual_affine = 0;
};

// One entry per distinct plane spanned by an intersecting line pair.
inline PlaneCensus plane_census(const Geometry& g) {
  PlaneCensus census;
  std::unordered_set<Subspace, SubspaceHash> seen;
  size_t nl = g.lines.size();
  for (size_t i = 0; i < nl; ++i) {
    for (size_t j = i + 1; j < nl; ++j) {
      bool meets = false;
      for (uint64_t x : g.line_vecs[i])
        if (x == g.line_vecs[j][0] || x == g.line_vecs[j][1] || x == g.line_vecs[j][2]) meets = true;
      if (!meets) continue;
      Subspace w = g.lines[i].sum(g.lines[j]);
      if (!seen.insert(w).second) continue;
      PlaneType pt = plane_type(g, g.lines[i], g.lines[j]);
      if (pt.kind == PlaneKind::Projective)
        ++census.projective;
      else
        ++census.dual_affine;
    }
  }
  return census;
}

// ---- connectivity, perps, equivalence -------------------------------------

struct Connectivity {
  uint32_t components = 0;
  uint32_t diameter = 0;  // of the largest component
};

inline Connectivity connectivity(const Geometry& g) {
  size_t n = g.points.size();
  if (n == 0) throw error("connectivity: empty point set");
  std::vector<int> comp(n, -1);
  uint32_t ncomp = 0;
  std::vector<uint32_t> order;
  order.reserve(n);
  for (uint32_t s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    comp[s] = static_cast<int>(ncomp);
    order.clear();
    order.push_back(s);
    for (size_t head = 0; head < order.size(); ++head) {
      uint32_t u = order[head];
      for (uint32_t v = 0; v < n; ++v)
        if (comp[v] < 0 && g.adjacent(u, v)) {
          comp[v] = static_cast<int>(ncomp);
          order.push_back(v);
        }
    }
    ++ncomp;
  }
  // largest component
  std::vector<uint32_t> sizes(ncomp, 0);
  for (int c : comp) ++sizes[c];
  uint32_t big = static_cast<uint32_t>(std::max_element(sizes.begin(), sizes.end()) - sizes.begin());

  uint32_t diam = 0;
  std::vector<int> dist(n);
  for (uint32_t s = 0; s < n; ++s) {
    if (comp[s] != static_cast<int>(big)) continue;
    std::fill(dist.begin(), dist.end(), -1);
    dist[s] = 0;
    order.clear();
    order.push_back(s);
    for (size_t head = 0; head < order.size(); ++head) {
      uint32_t u = order[head];
      for (uint32_t v = 0; v < n; ++v)
        if (dist[v] < 0 && g.adjacent(u, v)) {
          dist[v] = dist[u] + 1;
          diam = std::max<uint32_t>(diam, static_cast<uint32_t>(dist[v]));
          order.push_back(v);
        }
    }
  }
  return {ncomp, diam};
}

// Meet over all points of the span of p^perp.
inline Subspace perp_radical(const Geometry& g) {
  if (g.points.empty()) throw error("perp_radical: empty point set");
  Subspace acc = Subspace::full(g.ambient);
  for (uint32_t p = 0; p < g.points.size() && acc.dim() > 0; ++p) {
    std::vector<BitVector> reps;
    for (uint32_t q : g.perp(p)) reps.push_back(BitVector::from_mask(g.ambient, g.points[q]));
    acc = acc.meet(Subspace::span(g.ambient, reps));
  }
  return acc;
}

// Partition of the points under "equal perps".
inline std::vector<std::vector<uint32_t>> equiv_classes(const Geometry& g) {
  size_t n = g.points.size();
  std::map<std::vector<uint64_t>, std::vector<uint32_t>> buckets;
  for (uint32_t p = 0; p < n; ++p) {
    std::vector<uint64_t> row(g.adj.begin() + size_t(p) * g.adj_stride,
                              g.adj.begin() + size_t(p + 1) * g.adj_stride);
    buckets[row].push_back(p);
  }
  std::vector<std::vector<uint32_t>> out;
  out.reserve(buckets.size());
  for (auto& [row, members] : buckets) out.push_back(members);
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return out;
}

}  // namespace order3
