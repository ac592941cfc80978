#include "capset/symmetry.hpp"

#include <algorithm>
#include <map>

#include "json.hpp"

namespace capset {
namespace {

struct Frame {
  PointIndex origin = 0;
  std::array<PointIndex, kMaxDim> v{};
};

using Layer = std::vector<std::uint64_t>;

// -1 if a is the smaller mask, 1 if b is, 0 if equal.
int compare_layers(const Layer& a, const Layer& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) continue;
    std::uint64_t x = a[i] ^ b[i];
    std::uint64_t low = x & (~x + 1);
    return (a[i] & low) ? -1 : 1;
  }
  return 0;
}

// Basis matrix of a partial frame: column n-i holds v_i, the leading columns complete it.
// Its inverse sends o + sum a_i v_i + (complement part) to a point whose index is
// (complement digits) * 3^k + sum a_i 3^(i-1).
F3Matrix frame_basis(const Space& sp, const Frame& f, int k) {
  const int n = sp.dim();
  F3Matrix b(n, n);
  std::vector<Coords> cols;
  for (int i = 0; i < k; ++i) cols.push_back(sp.coords(f.v[i]));
  if (k < n) {
    F3Matrix rows(k, n);
    for (int i = 0; i < k; ++i) rows.set_row(i, cols[i]);
    F3Matrix extra = k == 0 ? F3Matrix::identity(n) : rows.complement_rows();
    for (int j = 0; j < n - k; ++j) {
      Coords c = extra.row(j);
      for (int r = 0; r < n; ++r) b.set(r, j, c[r]);
    }
  }
  for (int i = 0; i < k; ++i)
    for (int r = 0; r < n; ++r) b.set(r, n - 1 - i, cols[i][r]);
  return b;
}

AffineMap frame_map(const Space& sp, const Frame& f) {
  const int n = sp.dim();
  F3Matrix inv = *frame_basis(sp, f, n).inverse();
  Coords o = inv.apply(sp.coords(f.origin));
  for (int r = 0; r < n; ++r) o[r] = f3_neg(o[r]);
  return AffineMap(inv, sp.index(o));
}

// All frames with the given origin whose image is minimal among them.
struct OriginResult {
  std::vector<Frame> frames;
  int hull = 0;
  std::uint64_t examined = 0;
};

OriginResult explore_origin(const Space& sp, const std::vector<PointIndex>& pts, const std::vector<Coords>& pc, PointIndex origin) {
  const int n = sp.dim();
  const std::size_t m = pts.size();
  OriginResult out;
  std::vector<Frame> frames{Frame{origin, {}}};
  int k = 0;
  std::vector<std::uint32_t> yp(m), q(m), order(m);
  for (; k < n; ++k) {
    const std::uint32_t low = pow3(k);
    const std::size_t words = (2 * low + 63) / 64;
    Layer best, cur(words);
    std::vector<Frame> next;
    for (const Frame& f : frames) {
      ++out.examined;
      F3Matrix inv = *frame_basis(sp, f, k).inverse();
      std::array<std::uint32_t, kMaxDim> col{}, ncol{};
      for (int j = 0; j < n; ++j) {
        Coords c{};
        for (int r = 0; r < n; ++r) c[r] = inv(r, j);
        col[j] = sp.packed(sp.index(c));
        ncol[j] = Space::packed_neg(col[j]);
      }
      std::uint32_t yo = 0;
      for (std::size_t i = 0; i < m; ++i) {
        std::uint32_t acc = 0;
        for (int j = 0; j < n; ++j)
          if (pc[i][j]) acc = Space::packed_add(acc, pc[i][j] == 1 ? col[j] : ncol[j]);
        yp[i] = acc;
        if (pts[i] == f.origin) yo = acc;
      }
      const std::uint32_t nyo = Space::packed_neg(yo);
      for (std::size_t i = 0; i < m; ++i) {
        yp[i] = Space::packed_add(yp[i], nyo);
        q[i] = sp.unpack(yp[i]) / low;
        order[i] = static_cast<std::uint32_t>(i);
      }
      std::sort(order.begin(), order.end(), [&](std::uint32_t a, std::uint32_t b) { return q[a] < q[b]; });
      auto bucket = [&](std::uint32_t key) {
        auto lo = std::lower_bound(order.begin(), order.end(), key, [&](std::uint32_t a, std::uint32_t v) { return q[a] < v; });
        auto hi = lo;
        while (hi != order.end() && q[*hi] == key) ++hi;
        return std::make_pair(lo, hi);
      };
      for (std::size_t i = 0; i < m; ++i) {
        if (q[i] == 0) continue;
        std::fill(cur.begin(), cur.end(), 0);
        // coset of v: local index of y_t - y_i
        const std::uint32_t neg_i = Space::packed_neg(yp[i]);
        auto [lo1, hi1] = bucket(q[i]);
        for (auto it = lo1; it != hi1; ++it) {
          std::uint32_t bit = sp.unpack(Space::packed_add(yp[*it], neg_i));
          cur[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
        // coset of 2v: local index of y_t - 2 y_i = y_t + y_i
        auto [lo2, hi2] = bucket(sp.unpack(neg_i) / low);
        for (auto it = lo2; it != hi2; ++it) {
          std::uint32_t bit = low + sp.unpack(Space::packed_add(yp[*it], yp[i]));
          cur[bit >> 6] |= std::uint64_t{1} << (bit & 63);
        }
        int c = best.empty() ? -1 : compare_layers(cur, best);
        if (c > 0) continue;
        if (c < 0) {
          best = cur;
          next.clear();
        }
        Frame g = f;
        g.v[k] = sp.sub(pts[i], f.origin);
        next.push_back(g);
      }
    }
    if (next.empty()) break;  // the cap lies in the flat spanned so far
    frames = std::move(next);
  }
  out.hull = k;
  if (k < n) {
    for (Frame& f : frames) {
      F3Matrix b = frame_basis(sp, f, k);
      for (int j = k; j < n; ++j) {
        Coords c{};
        for (int r = 0; r < n; ++r) c[r] = b(r, n - 1 - j);
        f.v[j] = sp.index(c);
      }
    }
  }
  out.frames = std::move(frames);
  return out;
}

struct SearchOutput {
  PointSet image;
  AffineMap witness;
  PointIndex best_origin = 0;
  std::vector<AffineMap> stabiliser;  // automorphisms fixing best_origin
  std::vector<AffineMap> links;       // automorphisms joining origin orbits
  std::uint64_t examined = 0;
};

int find_root(std::vector<PointIndex>& parent, PointIndex p) {
  while (parent[p] != p) p = parent[p] = parent[parent[p]];
  return static_cast<int>(p);
}

// Origins are processed in index order.  An origin in the orbit (under automorphisms found so
// far) of one already explored yields the same images, so it is skipped.
SearchOutput frame_search(const CapSet& cap) {
  const Space& sp = Space::get(cap.dim());
  const std::vector<PointIndex> pts = cap.to_vector();
  std::vector<Coords> pc(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) pc[i] = sp.coords(pts[i]);
  std::vector<PointIndex> parent(sp.size());
  for (PointIndex p = 0; p < sp.size(); ++p) parent[p] = p;
  std::vector<char> explored_root(sp.size(), 0);
  SearchOutput out;
  bool have = false;
  AffineMap best_inv;
  auto add_automorphism = [&](const AffineMap& a) {
    bool merges = false;
    for (PointIndex p : pts)
      if (find_root(parent, p) != find_root(parent, a.apply(p))) merges = true;
    if (!merges) return;
    for (PointIndex p : pts) {
      int x = find_root(parent, p), y = find_root(parent, a.apply(p));
      if (x == y) continue;
      char e = explored_root[x] | explored_root[y];
      parent[x] = static_cast<PointIndex>(y);
      explored_root[y] = e;
    }
    out.links.push_back(a);
  };
  for (PointIndex o : pts) {
    if (explored_root[find_root(parent, o)]) continue;
    explored_root[find_root(parent, o)] = 1;
    OriginResult r = explore_origin(sp, pts, pc, o);
    out.examined += r.examined;
    std::vector<AffineMap> maps;
    for (const Frame& f : r.frames) maps.push_back(frame_map(sp, f));
    std::sort(maps.begin(), maps.end());
    PointSet img = maps.front().apply(cap.points());
    AffineMap first_inv = maps.front().inverse();
    for (std::size_t i = 1; i < maps.size(); ++i) add_automorphism(first_inv.compose(maps[i]));
    if (!have || img < out.image) {
      have = true;
      out.image = img;
      out.witness = maps.front();
      out.best_origin = o;
      best_inv = first_inv;
      out.stabiliser.clear();
      for (const AffineMap& g : maps) out.stabiliser.push_back(first_inv.compose(g));
    } else if (img == out.image) {
      add_automorphism(maps.front().inverse().compose(out.witness));
    }
  }
  return out;
}

}  // namespace

std::vector<std::vector<int>> point_fingerprint(const CapSet& cap) {
  const int n = cap.dim();
  const std::vector<PointIndex> pts = cap.to_vector();
  std::vector<std::vector<int>> fp(pts.size(), std::vector<int>(pts.size() + 1, 0));
  if (pts.empty()) return fp;
  const Space& sp = Space::get(n);
  std::vector<Coords> xs;
  for (PointIndex p : pts) xs.push_back(sp.coords(p));
  std::vector<int> lab(pts.size());
  for (const auto& d : enumerate_directions(n, 1)) {
    int counts[3] = {0, 0, 0};
    for (std::size_t i = 0; i < xs.size(); ++i) ++counts[lab[i] = d.basis().dot_row(0, xs[i])];
    for (std::size_t i = 0; i < xs.size(); ++i) ++fp[i][counts[lab[i]]];
  }
  std::sort(fp.begin(), fp.end());
  return fp;
}

std::string CanonicalCertificate::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = canonical.dim();
  j["size"] = canonical.size();
  j["hull_dim"] = hull_dim;
  j["matrix"] = witness.linear().to_rows();
  j["translation"] = Space::get(canonical.dim()).to_string(witness.translation());
  j["canonical_mask"] = canonical.to_hex();
  return j.dump();
}

CanonicalCertificate canonical_form(const CapSet& cap) {
  CanonicalCertificate cert;
  const int n = cap.dim();
  cert.hull_dim = affine_hull_dimension(cap.points());
  cert.fingerprint = point_fingerprint(cap);
  if (cap.size() == 0) {
    cert.canonical = PointSet(n);
    cert.witness = AffineMap::identity(n);
    return cert;
  }
  SearchOutput s = frame_search(cap);
  cert.frames_examined = s.examined;
  cert.witness = s.witness;
  cert.canonical = s.image;
  return cert;
}

std::optional<AffineMap> are_isomorphic(const CapSet& a, const CapSet& b) {
  if (a.dim() != b.dim()) throw CapsetError("are_isomorphic: dimension mismatch");
  if (a.size() != b.size()) return std::nullopt;
  if (point_fingerprint(a) != point_fingerprint(b)) return std::nullopt;
  CanonicalCertificate ca = canonical_form(a), cb = canonical_form(b);
  if (ca.canonical != cb.canonical) return std::nullopt;
  return cb.witness.inverse().compose(ca.witness);
}

AutomorphismGroup automorphism_group(const CapSet& cap) {
  int hull = affine_hull_dimension(cap.points());
  if (hull != cap.dim())
    throw CapsetError("automorphisms: cap does not span its ambient space (affine hull dimension " + std::to_string(hull) + ")");
  SearchOutput s = frame_search(cap);
  AutomorphismGroup g;
  g.dim = cap.dim();
  g.stabiliser = std::move(s.stabiliser);
  // transversal of the orbit of the best origin under the joining automorphisms and the stabiliser
  std::vector<AffineMap> gens = s.links;
  gens.insert(gens.end(), g.stabiliser.begin(), g.stabiliser.end());
  std::map<PointIndex, AffineMap> trans;
  trans.emplace(s.best_origin, AffineMap::identity(cap.dim()));
  std::vector<PointIndex> queue{s.best_origin};
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const AffineMap t = trans.at(queue[i]);
    for (const AffineMap& a : gens) {
      PointIndex q = a.apply(queue[i]);
      if (trans.count(q)) continue;
      trans.emplace(q, a.compose(t));
      queue.push_back(q);
    }
  }
  for (auto& [p, t] : trans) g.transversal.push_back(t);
  g.generators = s.links;
  for (const AffineMap& a : g.stabiliser)
    if (!(a == AffineMap::identity(cap.dim()))) g.generators.push_back(a);
  return g;
}

std::vector<AffineMap> AutomorphismGroup::elements() const {
  std::vector<AffineMap> out;
  out.reserve(order());
  for (const AffineMap& t : transversal)
    for (const AffineMap& s : stabiliser) out.push_back(t.compose(s));
  std::sort(out.begin(), out.end());
  auto id = std::find(out.begin(), out.end(), AffineMap::identity(dim));
  std::rotate(out.begin(), id, id + 1);
  return out;
}

std::vector<AffineMap> automorphisms(const CapSet& cap) { return automorphism_group(cap).elements(); }

DirectionSpec map_direction(const AffineMap& m, const DirectionSpec& d) {
  if (m.dim() != d.dim()) throw CapsetError("map_direction: dimension mismatch");
  return DirectionSpec(d.basis() * *m.linear().inverse());
}

std::vector<std::vector<std::size_t>> direction_orbits(const std::vector<AffineMap>& generators, const std::vector<DirectionSpec>& directions) {
  std::map<DirectionSpec, std::size_t> where;
  for (std::size_t i = 0; i < directions.size(); ++i) where.emplace(directions[i], i);
  std::vector<F3Matrix> inverses;
  inverses.reserve(generators.size());
  for (const auto& g : generators) inverses.push_back(*g.linear().inverse());
  std::vector<int> orbit_of(directions.size(), -1);
  std::vector<std::vector<std::size_t>> orbits;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    if (orbit_of[i] >= 0) continue;
    const int id = static_cast<int>(orbits.size());
    orbits.push_back({i});
    orbit_of[i] = id;
    for (std::size_t j = 0; j < orbits.back().size(); ++j) {
      const DirectionSpec& d = directions[orbits.back()[j]];
      for (const F3Matrix& inv : inverses) {
        auto it = where.find(DirectionSpec(d.basis() * inv));
        if (it == where.end()) throw CapsetError("direction_orbits: direction set is not invariant under the group");
        if (orbit_of[it->second] < 0) {
          orbit_of[it->second] = id;
          orbits.back().push_back(it->second);
        }
      }
    }
    std::sort(orbits.back().begin(), orbits.back().end());
  }
  return orbits;
}

std::vector<std::vector<std::size_t>> direction_orbits(const CapSet& cap, const std::vector<DirectionSpec>& directions) {
  return direction_orbits(automorphism_group(cap).generators, directions);
}

}  // namespace capset
