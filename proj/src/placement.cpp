#include "capset/placement.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "capset/search.hpp"
#include "capset/symmetry.hpp"
#include "json.hpp"

namespace capset {
namespace {

using Columns = std::array<PointIndex, kMaxDim>;

std::uint64_t gl_order(int d) {
  std::uint64_t r = 1;
  for (int i = 0; i < d; ++i) r *= pow3(d) - pow3(i);
  return r;
}

// Everything the inner loops need for one inner dimension.
struct Inner {
  int d;
  std::uint32_t N;
  std::vector<std::uint16_t> add;  // N x N
  std::vector<Coords> digits;

  explicit Inner(int dim) : d(dim), N(pow3(dim)), add(N * N), digits(N) {
    const Space& sp = Space::get(d);
    for (PointIndex a = 0; a < N; ++a) {
      digits[a] = sp.coords(a);
      for (PointIndex b = 0; b < N; ++b) add[a * N + b] = static_cast<std::uint16_t>(sp.add(a, b));
    }
  }

  PointIndex scale(PointIndex v, int k) const {
    PointIndex r = 0;
    for (int i = 0; i < k; ++i) r = add[r * N + v];
    return r;
  }

  PointIndex apply(const Columns& a, PointIndex v) const {
    PointIndex r = 0;
    for (int i = 0; i < d; ++i) {
      const int c = digits[v][i];
      if (c) r = add[r * N + (c == 1 ? a[i] : scale(a[i], 2))];
    }
    return r;
  }

  std::uint64_t code(const Columns& a) const {
    std::uint64_t c = 0;
    for (int i = d - 1; i >= 0; --i) c = c * N + a[i];
    return c;
  }

  Columns decode(std::uint64_t c) const {
    Columns a{};
    for (int i = 0; i < d; ++i, c /= N) a[i] = static_cast<PointIndex>(c % N);
    return a;
  }

  Columns product(const Columns& left, const Columns& mid, const Columns& right) const {
    Columns out{};
    for (int j = 0; j < d; ++j) out[j] = apply(left, apply(mid, right[j]));
    return out;
  }

  bool invertible(const Columns& a) const {
    std::vector<char> span(N, 0);
    span[0] = 1;
    std::vector<PointIndex> members{0};
    for (int j = 0; j < d; ++j) {
      if (span[a[j]]) return false;
      std::vector<PointIndex> grow;
      for (PointIndex m : members)
        for (int k = 1; k <= 2; ++k) grow.push_back(add[m * N + scale(a[j], k)]);
      for (PointIndex g : grow) span[g] = 1;
      members.insert(members.end(), grow.begin(), grow.end());
    }
    return true;
  }

  F3Matrix matrix(const Columns& a) const {
    F3Matrix m(d, d);
    for (int c = 0; c < d; ++c)
      for (int r = 0; r < d; ++r) m.set(r, c, digits[a[c]][r]);
    return m;
  }

  Columns columns(const F3Matrix& m) const {
    Columns a{};
    const Space& sp = Space::get(d);
    for (int c = 0; c < d; ++c) {
      Coords v{};
      for (int r = 0; r < d; ++r) v[r] = m(r, c);
      a[c] = sp.index(v);
    }
    return a;
  }
};

struct BaseLevels {
  std::vector<PointIndex> level[3];  // local points per internal x1 value
};

BaseLevels split_levels(const CapSet& base) {
  const std::uint32_t N = pow3(base.dim() - 1);
  BaseLevels b;
  for (PointIndex p : base.points()) b.level[p / N].push_back(p % N);
  return b;
}

struct Hit {
  std::uint64_t code;
  PointIndex w;
  PlacementStats stats;
};

// Statistics for every shear w of one inner matrix, accumulated into counts with the given weight.
class Evaluator {
 public:
  Evaluator(const Inner& in, const BaseLevels& lv) : in_(in), lv_(lv) {
    const std::uint32_t N = in.N;
    shift_.resize(3 * N * N);
    const Space& sp = Space::get(in.d);
    for (int b = 0; b < 3; ++b)
      for (PointIndex w = 0; w < N; ++w) {
        const PointIndex bw = in.scale(w, b);
        for (PointIndex z = 0; z < N; ++z) shift_[(b * N + w) * N + z] = static_cast<std::uint16_t>(sp.neg(in.add[z * N + bw]));
      }
    conv_.assign(9 * N, 0);
    n_.assign(3 * N, 0);
  }

  template <class OnStats>
  void run(const Columns& a, OnStats&& on) {
    const std::uint32_t N = in_.N;
    std::vector<PointIndex> img[3];
    for (int b = 0; b < 3; ++b)
      for (PointIndex r : lv_.level[b]) img[b].push_back(in_.apply(a, r));
    std::fill(conv_.begin(), conv_.end(), 0);
    for (int la = 0; la < 3; ++la)
      for (int lb = 0; lb < 3; ++lb) {
        std::uint16_t* c = &conv_[(la * 3 + lb) * N];
        for (PointIndex p : lv_.level[la])
          for (PointIndex r : img[lb]) ++c[in_.add[p * N + r]];
      }
    for (PointIndex w = 0; w < N; ++w) {
      std::fill(n_.begin(), n_.end(), 0);
      for (int la = 0; la < 3; ++la)
        for (int lb = 0; lb < 3; ++lb) {
          const int lc = (6 - la - lb) % 3;
          const std::uint16_t* c = &conv_[(la * 3 + lb) * N];
          const std::uint16_t* s = &shift_[(lb * N + w) * N];
          std::uint16_t* out = &n_[lc * N];
          for (PointIndex z = 0; z < N; ++z) out[s[z]] += c[z];
        }
      PlacementStats st;
      for (std::uint16_t v : n_) {
        st.n0 += v == 0;
        st.n1 += v == 1;
        st.n2 += v <= 2;
      }
      on(w, st);
    }
  }

 private:
  const Inner& in_;
  const BaseLevels& lv_;
  std::vector<std::uint16_t> shift_;
  std::vector<std::uint16_t> conv_;
  std::vector<std::uint16_t> n_;
};

struct Checkpoint {
  std::uint64_t next_code = 0;
  std::uint64_t representatives = 0;
  std::map<std::pair<int, int>, std::uint64_t> counts;
};

void write_checkpoint(const std::string& path, const CapSet& base, const Checkpoint& c) {
  nlohmann::ordered_json j;
  j["base"] = base.points().to_hex();
  j["dim"] = base.dim();
  j["next_code"] = c.next_code;
  j["representatives"] = c.representatives;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [k, v] : c.counts) rows.push_back({k.first, k.second, v});
  j["by_n0_n2"] = rows;
  const std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::trunc);
    if (!os) throw CapsetError("cannot write checkpoint " + tmp);
    os << j.dump() << "\n";
  }
  std::filesystem::rename(tmp, path);
}

std::optional<Checkpoint> read_checkpoint(const std::string& path, const CapSet& base) {
  std::ifstream is(path);
  if (!is) return std::nullopt;
  nlohmann::json j = nlohmann::json::parse(is, nullptr, false);
  if (j.is_discarded()) throw CapsetError("checkpoint " + path + " is not valid JSON");
  if (j.value("base", "") != base.points().to_hex() || j.value("dim", 0) != base.dim())
    throw CapsetError("checkpoint " + path + " belongs to a different base cap");
  Checkpoint c;
  c.next_code = j.at("next_code").get<std::uint64_t>();
  c.representatives = j.at("representatives").get<std::uint64_t>();
  for (const auto& row : j.at("by_n0_n2")) c.counts[{row[0].get<int>(), row[1].get<int>()}] = row[2].get<std::uint64_t>();
  return c;
}

}  // namespace

PlacementStats placement_statistics(const CapSet& lower, const CapSet& upper) {
  PlacementStats st;
  for (int v : midpoint_profile(lower, upper).n) {
    st.n0 += v == 0;
    st.n1 += v == 1;
    st.n2 += v <= 2;
  }
  return st;
}

Convention parse_convention(const std::string& id) {
  if (id == "all") return Convention::all;
  if (id == "aut-left") return Convention::aut_left;
  throw CapsetError("unknown placement convention '" + id + "' (expected all or aut-left)");
}

std::string convention_name(Convention c) { return c == Convention::all ? "all" : "aut-left"; }

AffineMap LinearPlacement::map() const {
  const int d = inner.rows();
  F3Matrix m(d + 1, d + 1);
  m.set(0, 0, 1);
  const Coords w = Space::get(d).coords(shear);
  for (int r = 0; r < d; ++r) {
    m.set(r + 1, 0, w[r]);
    for (int c = 0; c < d; ++c) m.set(r + 1, c + 1, inner(r, c));
  }
  return AffineMap(m, 0);
}

std::vector<LinearPlacement> level_automorphisms(const CapSet& base) {
  const int n = base.dim();
  const Space& sp = Space::get(n);
  std::set<std::pair<F3Matrix, PointIndex>> seen;
  std::vector<LinearPlacement> out;
  for (const AffineMap& g : automorphisms(base)) {
    const F3Matrix& l = g.linear();
    bool keeps = l(0, 0) == 1 && sp.coord(g.translation(), 0) == 0;
    for (int c = 1; c < n && keeps; ++c) keeps = l(0, c) == 0;
    if (!keeps) continue;
    LinearPlacement p;
    p.inner = F3Matrix(n - 1, n - 1);
    Coords w{};
    for (int r = 1; r < n; ++r) {
      w[r - 1] = l(r, 0);
      for (int c = 1; c < n; ++c) p.inner.set(r - 1, c - 1, l(r, c));
    }
    p.shear = Space::get(n - 1).index(w);
    if (seen.insert({p.inner, p.shear}).second) out.push_back(p);
  }
  return out;
}

std::uint64_t SweepSummary::count(int n0, int n2, Convention c) const {
  auto it = by_n0_n2.find({n0, n2});
  if (it == by_n0_n2.end()) return 0;
  return c == Convention::all ? it->second : it->second / level_group;
}

std::string SweepSummary::to_json() const {
  nlohmann::ordered_json j;
  j["inner_dim"] = inner_dim;
  j["universe"] = universe;
  j["level_group"] = level_group;
  j["representatives"] = representatives;
  j["complete"] = complete;
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (const auto& [k, v] : by_n0_n2) rows.push_back({{"n0", k.first}, {"n2", k.second}, {"maps", v}, {"aut_left", level_group ? v / level_group : 0}});
  j["by_n0_n2"] = rows;
  return j.dump();
}

SweepSummary sweep_linear_placements(const CapSet& base, const SweepOptions& opt,
                                     const std::function<bool(const PlacementStats&)>& interesting,
                                     const std::function<void(const LinearPlacement&, const PlacementStats&)>& visit) {
  const int d = base.dim() - 1;
  if (d < 1 || d > 4) throw CapsetError("sweep_linear_placements: base dimension must be 2..5");
  const Inner in(d);
  const BaseLevels lv = split_levels(base);

  // level automorphisms act on inner matrices from both sides
  std::vector<Columns> group;
  {
    std::set<std::uint64_t> codes;
    for (const auto& g : level_automorphisms(base)) {
      Columns c = in.columns(g.inner);
      if (codes.insert(in.code(c)).second) group.push_back(c);
    }
  }
  SweepSummary sum;
  sum.inner_dim = d;
  sum.universe = gl_order(d) * in.N;
  sum.level_group = group.size();

  const std::uint64_t codes = pow3(d * d);
  std::vector<std::uint64_t> visited((codes + 63) / 64, 0);
  auto seen = [&](std::uint64_t c) { return (visited[c >> 6] >> (c & 63)) & 1u; };
  auto mark_class = [&](const Columns& a) {
    std::uint64_t size = 0;
    for (const auto& l : group)
      for (const auto& r : group) {
        std::uint64_t c = in.code(in.product(l, a, r));
        if (!seen(c)) {
          visited[c >> 6] |= std::uint64_t{1} << (c & 63);
          ++size;
        }
      }
    return size;
  };

  Checkpoint cp;
  if (!opt.checkpoint.empty())
    if (auto r = read_checkpoint(opt.checkpoint, base)) cp = *r;
  // replay the marks of classes already processed before the checkpoint
  for (std::uint64_t c = 0; c < cp.next_code; ++c) {
    if (seen(c)) continue;
    Columns a = in.decode(c);
    if (in.invertible(a)) mark_class(a);
  }

  struct Job {
    std::uint64_t code;
    Columns a;
    std::uint64_t weight;
  };
  const std::size_t batch = 2048;
  const int threads = std::max(1, opt.threads);
  std::uint64_t next = cp.next_code;
  std::uint64_t since_checkpoint = 0;
  bool stopped = false;
  std::uint64_t hit_count = 0;
  while (next < codes && !stopped) {
    std::vector<Job> jobs;
    for (; next < codes && jobs.size() < batch; ++next) {
      if (opt.max_representatives && cp.representatives + jobs.size() >= opt.max_representatives) {
        stopped = true;
        break;
      }
      if (seen(next)) continue;
      Columns a = in.decode(next);
      if (!in.invertible(a)) continue;
      jobs.push_back({next, a, mark_class(a)});
    }
    std::vector<std::map<std::pair<int, int>, std::uint64_t>> part(threads);
    std::vector<std::vector<Hit>> hits(threads);
    auto work = [&](int t) {
      Evaluator ev(in, lv);
      for (std::size_t i = t; i < jobs.size(); i += threads) {
        const Job& j = jobs[i];
        ev.run(j.a, [&](PointIndex w, const PlacementStats& st) {
          part[t][{st.n0, st.n2}] += j.weight;
          if (visit && (!interesting || interesting(st))) hits[t].push_back({j.code, w, st});
        });
      }
    };
    if (threads == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (int t = 0; t < threads; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    for (const auto& p : part)
      for (const auto& [k, v] : p) cp.counts[k] += v;
    std::vector<Hit> all;
    for (auto& h : hits) all.insert(all.end(), h.begin(), h.end());
    std::sort(all.begin(), all.end(), [](const Hit& x, const Hit& y) { return x.code != y.code ? x.code < y.code : x.w < y.w; });
    for (const Hit& h : all) {
      LinearPlacement p;
      p.inner = in.matrix(in.decode(h.code));
      p.shear = h.w;
      auto it = std::find_if(jobs.begin(), jobs.end(), [&](const Job& j) { return j.code == h.code; });
      p.weight = it->weight;
      visit(p, h.stats);
    }
    hit_count += all.size();
    if (opt.stop_after_hits && hit_count >= opt.stop_after_hits) stopped = true;
    cp.representatives += jobs.size();
    cp.next_code = next;
    since_checkpoint += jobs.size();
    if (!opt.checkpoint.empty() && (since_checkpoint >= opt.checkpoint_every || next >= codes)) {
      write_checkpoint(opt.checkpoint, base, cp);
      since_checkpoint = 0;
    }
  }
  sum.representatives = cp.representatives;
  sum.by_n0_n2 = cp.counts;
  sum.complete = next >= codes && !stopped;
  return sum;
}

std::map<std::pair<int, int>, std::uint64_t> brute_force_linear_sweep(const CapSet& base) {
  const int d = base.dim() - 1;
  const std::uint32_t N = pow3(d);
  std::map<std::pair<int, int>, std::uint64_t> out;
  for (std::uint32_t code = 0; code < pow3(d * d); ++code) {
    F3Matrix a(d, d);
    std::uint32_t t = code;
    for (int i = 0; i < d * d; ++i, t /= 3) a.set(i / d, i % d, static_cast<int>(t % 3));
    if (a.rank() != d) continue;
    for (PointIndex w = 0; w < N; ++w) {
      LinearPlacement p{a, w, 1};
      PlacementStats st = placement_statistics(base, apply_map(p.map(), base));
      ++out[{st.n0, st.n2}];
    }
  }
  return out;
}

std::vector<ShiftPlacement> enumerate_shift_placements(const CapSet& base) {
  const int n = base.dim();
  const Space& sp = Space::get(n);
  const std::uint32_t N = pow3(n - 1);
  const Space& inner = Space::get(n - 1);
  std::vector<ShiftPlacement> out;
  for (bool refl : {true, false})
    for (PointIndex v = 0; v < N; ++v) {
      PointSet img(n);
      for (PointIndex p : base.points()) {
        PointIndex r = refl ? sp.neg(p) : p;
        const std::uint32_t level = r / N;
        PointIndex y = r % N;
        for (std::uint32_t k = 0; k < level; ++k) y = inner.add(y, v);
        img.insert(level * N + y);
      }
      out.push_back({refl, v, CapSet(img)});
    }
  return out;
}

bool is_translate(const PointSet& a, const PointSet& b) {
  if (a.dim() != b.dim() || a.size() != b.size()) return false;
  if (a.empty()) return true;
  const Space& sp = a.space();
  const PointIndex a0 = a.first();
  for (PointIndex r : b) {
    const PointIndex u = sp.sub(r, a0);
    bool ok = true;
    for (PointIndex p : a)
      if (!b.contains(sp.add(p, u))) {
        ok = false;
        break;
      }
    if (ok) return true;
  }
  return false;
}

CapSet stack_levels(const PointSet& lower, const PointSet& middle, const PointSet& upper) {
  const int d = lower.dim();
  if (middle.dim() != d || upper.dim() != d) throw CapsetError("stack_levels: dimension mismatch");
  const std::uint32_t N = pow3(d);
  PointSet out(d + 1);
  for (PointIndex p : lower) out.insert(2 * N + p);
  for (PointIndex p : middle) out.insert(p);
  for (PointIndex p : upper) out.insert(N + p);
  return CapSet(out);
}

PointSet free_middle_points(const CapSet& lower, const CapSet& upper) {
  MidpointProfile m = midpoint_profile(lower, upper);
  return PointSet(lower.dim(), m.points_with(0));
}

}  // namespace capset
