#include "capset/search.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <set>

#include "capset/directions.hpp"
#include "capset/symmetry.hpp"

namespace capset {
namespace {

template <std::size_t W>
struct Bits {
  std::array<std::uint64_t, W> w{};

  void set(PointIndex p) { w[p >> 6] |= std::uint64_t{1} << (p & 63); }
  void reset(PointIndex p) { w[p >> 6] &= ~(std::uint64_t{1} << (p & 63)); }
  bool test(PointIndex p) const { return (w[p >> 6] >> (p & 63)) & 1u; }
  int count() const {
    int c = 0;
    for (auto x : w) c += std::popcount(x);
    return c;
  }
  int count_and(const Bits& o) const {
    int c = 0;
    for (std::size_t i = 0; i < W; ++i) c += std::popcount(w[i] & o.w[i]);
    return c;
  }
  void and_not(const Bits& o) {
    for (std::size_t i = 0; i < W; ++i) w[i] &= ~o.w[i];
  }
  // Smallest member of (this & o), or -1.
  long first_and(const Bits& o) const {
    for (std::size_t i = 0; i < W; ++i)
      if (auto x = w[i] & o.w[i]) return static_cast<long>(i * 64 + std::countr_zero(x));
    return -1;
  }
  long first() const {
    for (std::size_t i = 0; i < W; ++i)
      if (w[i]) return static_cast<long>(i * 64 + std::countr_zero(w[i]));
    return -1;
  }
};

template <std::size_t W>
class Dfs {
 public:
  Dfs(const CapSet& seed, const ExtendOptions& opt) : sp_(Space::get(seed.dim())), opt_(opt) {
    const std::uint32_t N = sp_.size();
    fibers_ = 1;
    if (opt.fibration) {
      const Fibration& f = *opt.fibration;
      fibers_ = f.fiber_count();
      label_.resize(N);
      for (PointIndex p = 0; p < N; ++p) label_[p] = f.label(p);
      fiber_cap_ = f.codim() < f.dim() ? max_cap_size(f.dim() - f.codim()) : 1;
      if (fiber_cap_ == 0) fiber_cap_ = static_cast<int>(pow3(f.dim() - f.codim()));
    } else {
      label_.assign(N, 0);
      fiber_cap_ = static_cast<int>(N);
    }
    masks_.resize(fibers_);
    for (PointIndex p = 0; p < N; ++p) masks_[label_[p]].set(p);
    targets_ = opt.fiber_targets;
    if (targets_.empty()) targets_.assign(fibers_, -1);
    cur_counts_.assign(fibers_, 0);
    for (PointIndex p : seed.points()) {
      cur_.push_back(p);
      ++cur_counts_[label_[p]];
    }
    Bits<W> cand;
    PointSet blocked = blocked_points(seed.points());
    for (PointIndex p = 0; p < N; ++p)
      if (!seed.contains(p) && !blocked.contains(p) && (!opt.allowed || opt.allowed(p))) cand.set(p);
    start_ = cand;
  }

  void run() { rec(start_); }

  std::vector<PointSet> results;
  std::uint64_t nodes = 0;
  bool truncated = false;

 private:
  bool stop() const { return truncated || (opt_.max_results && results.size() >= opt_.max_results); }

  void rec(Bits<W> cand) {
    if (stop()) return;
    ++nodes;
    if (opt_.node_limit && nodes > opt_.node_limit) {
      truncated = true;
      return;
    }
    const int need = static_cast<int>(opt_.target) - static_cast<int>(cur_.size());
    if (need == 0) {
      for (int f = 0; f < fibers_; ++f)
        if (targets_[f] >= 0 && cur_counts_[f] != targets_[f]) return;
      PointSet s(sp_.dim());
      for (PointIndex p : cur_) s.insert(p);
      results.push_back(std::move(s));
      return;
    }
    if (need < 0) return;
    // drop fibres that are already full, then bound
    int bound = 0;
    int pick_fiber = -1, pick_slack = 1 << 30;
    for (int f = 0; f < fibers_; ++f) {
      int limit = fiber_cap_ - cur_counts_[f];
      if (targets_[f] >= 0) limit = std::min(limit, targets_[f] - cur_counts_[f]);
      if (limit <= 0) {
        cand.and_not(masks_[f]);
        if (targets_[f] > cur_counts_[f]) return;
        continue;
      }
      int c = fibers_ == 1 ? cand.count() : cand.count_and(masks_[f]);
      if (targets_[f] >= 0) {
        int want = targets_[f] - cur_counts_[f];
        if (c < want) return;
        if (want > 0 && c - want < pick_slack) {
          pick_slack = c - want;
          pick_fiber = f;
        }
      }
      bound += std::min(c, limit);
    }
    if (bound < need) return;
    long p = -1;
    if (opt_.rule == BranchRule::tightest_fiber && pick_fiber >= 0) p = cand.first_and(masks_[pick_fiber]);
    if (p < 0) p = cand.first();
    if (p < 0) return;
    const PointIndex q = static_cast<PointIndex>(p);
    cand.reset(q);
    {
      Bits<W> with = cand;
      for (PointIndex r : cur_) with.reset(sp_.third(q, r));
      cur_.push_back(q);
      ++cur_counts_[label_[q]];
      rec(with);
      --cur_counts_[label_[q]];
      cur_.pop_back();
    }
    rec(cand);
  }

  const Space& sp_;
  const ExtendOptions& opt_;
  int fibers_ = 1;
  int fiber_cap_ = 0;
  std::vector<int> label_;
  std::vector<Bits<W>> masks_;
  std::vector<int> targets_;
  std::vector<int> cur_counts_;
  std::vector<PointIndex> cur_;
  Bits<W> start_;
};

template <std::size_t W>
void run_dfs(const CapSet& seed, const ExtendOptions& opt, ExtendReport& rep, std::vector<PointSet>& raw) {
  Dfs<W> d(seed, opt);
  d.run();
  rep.nodes = d.nodes;
  rep.truncated = d.truncated;
  raw = std::move(d.results);
}

}  // namespace

ExtendReport extend_dfs(const CapSet& seed, const ExtendOptions& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const int n = seed.dim();
  if (opt.fibration) {
    if (opt.fibration->dim() != n) throw CapsetError("extend_dfs: fibration dimension mismatch");
    if (!opt.fiber_targets.empty()) {
      if (static_cast<int>(opt.fiber_targets.size()) != opt.fibration->fiber_count())
        throw CapsetError("extend_dfs: need one target per fibre");
      long sum = 0;
      for (int t : opt.fiber_targets) sum += t;
      if (sum != static_cast<long>(opt.target)) throw CapsetError("extend_dfs: fibre targets do not add up to the target size");
    }
  } else if (!opt.fiber_targets.empty()) {
    throw CapsetError("extend_dfs: fibre targets given without a fibration");
  }
  ExtendReport rep;
  std::vector<PointSet> raw;
  if (seed.size() <= opt.target) {
    switch ((pow3(n) + 63) / 64) {
      case 1: run_dfs<1>(seed, opt, rep, raw); break;
      case 2: run_dfs<2>(seed, opt, rep, raw); break;
      case 4: run_dfs<4>(seed, opt, rep, raw); break;
      case 12: run_dfs<12>(seed, opt, rep, raw); break;
      case 35: run_dfs<35>(seed, opt, rep, raw); break;
      case 103: run_dfs<103>(seed, opt, rep, raw); break;
      default: throw CapsetError("extend_dfs: unsupported dimension");
    }
  }
  rep.raw_results = raw.size();
  std::sort(raw.begin(), raw.end());
  if (opt.isomorph_free) {
    std::set<PointSet> seen;
    for (auto& s : raw) {
      CapSet c(s);
      if (seen.insert(canonical_form(c).canonical).second) rep.caps.push_back(std::move(c));
    }
  } else {
    for (auto& s : raw) rep.caps.emplace_back(std::move(s));
  }
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

bool contains_full_hyperplane_section(const PointSet& points) {
  const int n = points.dim();
  const int full = max_cap_size(n - 1);
  if (full == 0) throw CapsetError("contains_full_hyperplane_section: dimension out of range");
  for (const auto& d : enumerate_directions(n, 1))
    for (int c : direction_counts(points, d))
      if (c >= full) return true;
  return false;
}

std::vector<Replacement> replace_points(const CapSet& cap, int k, const std::function<bool(const PointSet&)>& forbid) {
  if (k < 1 || static_cast<std::size_t>(k) > cap.size()) throw CapsetError("replace_points: k out of range");
  const std::vector<PointIndex> pts = cap.to_vector();
  std::vector<Replacement> out;
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  const int s = static_cast<int>(pts.size());
  for (;;) {
    PointSet removed(cap.dim());
    for (int i : idx) removed.insert(pts[i]);
    CapSet rest(cap.points() - removed);
    // S+ ranges over k-subsets of the points addable to the rest; removed points are always addable
    std::vector<PointIndex> add = addable_points(rest).to_vector();
    const Space& sp = Space::get(cap.dim());
    std::vector<PointIndex> chosen;
    std::function<void(std::size_t)> pick = [&](std::size_t from) {
      if (static_cast<int>(chosen.size()) == k) {
        PointSet result = rest.points();
        for (PointIndex p : chosen) result.insert(p);
        if (!forbid(result)) {
          PointSet added(cap.dim(), chosen);
          out.push_back(Replacement{removed, added});
        }
        return;
      }
      for (std::size_t i = from; i < add.size(); ++i) {
        PointIndex p = add[i];
        bool ok = true;
        // chosen points must not make a line with each other or with one rest point
        for (std::size_t a = 0; a < chosen.size() && ok; ++a) {
          PointIndex t = sp.third(p, chosen[a]);
          if (rest.contains(t)) ok = false;
          for (std::size_t b = a + 1; b < chosen.size() && ok; ++b)
            if (sp.third(chosen[a], chosen[b]) == p) ok = false;
        }
        if (!ok) continue;
        chosen.push_back(p);
        pick(i + 1);
        chosen.pop_back();
      }
    };
    pick(0);
    int i = k - 1;
    while (i >= 0 && idx[i] == s - k + i) --i;
    if (i < 0) break;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

std::vector<std::uint64_t> MidpointProfile::histogram() const {
  int mx = 0;
  for (int v : n) mx = std::max(mx, v);
  std::vector<std::uint64_t> h(mx + 1, 0);
  for (int v : n) ++h[v];
  return h;
}

std::vector<PointIndex> MidpointProfile::points_with(int value) const {
  std::vector<PointIndex> out;
  for (PointIndex q = 0; q < n.size(); ++q)
    if (n[q] == value) out.push_back(q);
  return out;
}

MidpointProfile midpoint_profile(const CapSet& a, const CapSet& b) {
  if (a.dim() != b.dim()) throw CapsetError("midpoint_profile: dimension mismatch");
  const Space& sp = Space::get(a.dim());
  MidpointProfile m;
  m.dim = a.dim();
  m.n.assign(sp.size(), 0);
  m.partner.assign(sp.size(), sp.size());
  for (PointIndex p : a.points())
    for (PointIndex r : b.points()) {
      PointIndex q = sp.neg(sp.add(p, r));
      if (++m.n[q] == 1) m.partner[q] = p;
    }
  for (PointIndex q = 0; q < sp.size(); ++q)
    if (m.n[q] != 1) m.partner[q] = sp.size();
  return m;
}

PointSet cross_partners(const CapSet& own, const CapSet& other, PointIndex q) {
  const Space& sp = Space::get(own.dim());
  PointSet out(own.dim());
  for (PointIndex p : own.points())
    if (other.contains(sp.neg(sp.add(p, q)))) out.insert(p);
  return out;
}

}  // namespace capset
