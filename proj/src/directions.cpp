#include "capset/directions.hpp"

#include <algorithm>
#include <mutex>
#include <numeric>
#include <sstream>

#include "json.hpp"

namespace capset {
namespace {

// Every affine bijection of F3^c (c <= 2) as a permutation of labels.
const std::vector<std::vector<int>>& label_relabellings(int c) {
  static std::vector<std::vector<int>> by_codim[3];
  static std::once_flag once[3];
  std::call_once(once[c], [c] {
    auto& out = by_codim[c];
    const int m = static_cast<int>(pow3(c));
    // enumerate matrices (c x c) and translations
    const int entries = c * c;
    for (int code = 0; code < static_cast<int>(pow3(entries)); ++code) {
      F3Matrix a(c, c);
      int t = code;
      for (int i = 0; i < entries; ++i, t /= 3) a.set(i / c, i % c, t % 3);
      if (!a.is_invertible()) continue;
      for (int shift = 0; shift < m; ++shift) {
        std::vector<int> perm(m);
        for (int lab = 0; lab < m; ++lab) {
          Coords v{}, s{};
          int x = lab, y = shift;
          for (int r = c - 1; r >= 0; --r, x /= 3, y /= 3) {
            v[r] = static_cast<std::uint8_t>(x % 3);
            s[r] = static_cast<std::uint8_t>(y % 3);
          }
          Coords w = a.apply(v);
          int img = 0;
          for (int r = 0; r < c; ++r) img = img * 3 + f3_add(w[r], s[r]);
          perm[lab] = img;
        }
        out.push_back(std::move(perm));
      }
    }
  });
  return by_codim[c];
}

}  // namespace

DirectionSpec::DirectionSpec(const F3Matrix& functionals) : basis_(functionals.rref()) {
  if (basis_.rows() != functionals.rows()) throw CapsetError("direction: functionals are linearly dependent");
  if (basis_.rows() < 1) throw CapsetError("direction: need at least one functional");
}

bool DirectionSpec::contains_vector(PointIndex v) const {
  Coords x = Space::get(dim()).coords(v);
  for (int r = 0; r < codim(); ++r)
    if (basis_.dot_row(r, x)) return false;
  return true;
}

bool DirectionSpec::refines(const DirectionSpec& coarser) const {
  // coarser's annihilator must lie in ours: rank of the stack equals ours.
  return basis_.stacked(coarser.basis_).rank() == codim();
}

std::uint64_t direction_count(int n, int c) {
  if (c < 0 || c > n) return 0;
  std::uint64_t num = 1, den = 1;
  for (int i = 0; i < c; ++i) {
    num *= pow3(n - i) - 1;
    den *= pow3(i + 1) - 1;
  }
  return num / den;
}

std::vector<DirectionSpec> enumerate_directions(int n, int c) {
  if (n < 1 || n > kMaxDim) throw CapsetError("enumerate_directions: dimension out of range");
  if (c < 1 || c > n) throw CapsetError("enumerate_directions: codimension must satisfy 1 <= c <= n, got " + std::to_string(c));
  std::vector<F3Matrix> all;
  std::vector<int> piv(c);
  std::iota(piv.begin(), piv.end(), 0);
  for (;;) {
    // free positions: (row r, column j) with j > piv[r] and j not a pivot
    std::vector<std::pair<int, int>> free_pos;
    for (int r = 0; r < c; ++r)
      for (int j = piv[r] + 1; j < n; ++j)
        if (std::find(piv.begin(), piv.end(), j) == piv.end()) free_pos.emplace_back(r, j);
    const std::uint32_t combos = pow3(static_cast<int>(free_pos.size()));
    for (std::uint32_t code = 0; code < combos; ++code) {
      F3Matrix m(c, n);
      for (int r = 0; r < c; ++r) m.set(r, piv[r], 1);
      std::uint32_t t = code;
      for (auto [r, j] : free_pos) {
        m.set(r, j, static_cast<int>(t % 3));
        t /= 3;
      }
      all.push_back(m);
    }
    int i = c - 1;
    while (i >= 0 && piv[i] == n - c + i) --i;
    if (i < 0) break;
    ++piv[i];
    for (int k = i + 1; k < c; ++k) piv[k] = piv[k - 1] + 1;
  }
  std::sort(all.begin(), all.end());
  std::vector<DirectionSpec> out;
  out.reserve(all.size());
  for (const auto& m : all) out.emplace_back(m);
  return out;
}

DirectionSpec hyperplane_direction(int n, PointIndex functional) {
  F3Matrix f(1, n);
  f.set_row(0, Space::get(n).coords(functional));
  return DirectionSpec(f);
}

std::vector<int> direction_counts(const PointSet& points, const DirectionSpec& d) {
  if (points.dim() != d.dim()) throw CapsetError("direction_counts: dimension mismatch");
  const Space& sp = points.space();
  std::vector<int> counts(pow3(d.codim()), 0);
  for (PointIndex p : points) {
    Coords x = sp.coords(p);
    int lab = 0;
    for (int r = 0; r < d.codim(); ++r) lab = lab * 3 + d.basis().dot_row(r, x);
    ++counts[lab];
  }
  return counts;
}

std::vector<int> normalize_counts(const std::vector<int>& counts, int codim) {
  if (counts.size() != pow3(codim)) throw CapsetError("normalize_counts: wrong number of entries");
  if (codim > 2) {
    std::vector<int> key = counts;
    std::sort(key.begin(), key.end(), std::greater<>());
    return key;
  }
  std::vector<int> best;
  std::vector<int> cand(counts.size());
  for (const auto& perm : label_relabellings(codim)) {
    for (std::size_t i = 0; i < counts.size(); ++i) cand[i] = counts[perm[i]];
    if (best.empty() || cand > best) best = cand;
  }
  return best;
}

PointCountMatrix direction_point_count(const CapSet& cap, const DirectionSpec& d) {
  PointCountMatrix m;
  m.codim = d.codim();
  m.counts = direction_counts(cap.points(), d);
  m.key = normalize_counts(m.counts, m.codim);
  return m;
}

std::array<std::array<int, 3>, 3> printed_grid(const std::vector<int>& counts) {
  if (counts.size() != 9) throw CapsetError("printed_grid: need 9 counts");
  constexpr int col_value[3] = {2, 0, 1};
  constexpr int row_value[3] = {1, 0, 2};
  std::array<std::array<int, 3>, 3> g{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) g[i][j] = counts[col_value[j] * 3 + row_value[i]];
  return g;
}

std::vector<int> counts_from_printed_grid(const std::array<std::array<int, 3>, 3>& grid) {
  constexpr int col_value[3] = {2, 0, 1};
  constexpr int row_value[3] = {1, 0, 2};
  std::vector<int> counts(9);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) counts[col_value[j] * 3 + row_value[i]] = grid[i][j];
  return counts;
}

std::uint64_t SpectrumReport::total() const {
  std::uint64_t t = 0;
  for (const auto& [k, v] : census) t += v;
  return t;
}

std::uint64_t SpectrumReport::multiplicity(const std::vector<int>& key) const {
  auto it = census.find(key);
  return it == census.end() ? 0 : it->second;
}

std::string SpectrumReport::to_json() const {
  nlohmann::ordered_json j;
  j["dim"] = dim;
  j["codim"] = codim;
  j["size"] = size;
  j["census"] = nlohmann::ordered_json::array();
  for (const auto& [k, v] : census) j["census"].push_back({{"count", k}, {"multiplicity", v}});
  return j.dump();
}

SpectrumReport spectrum_of_points(const PointSet& points, int codim) {
  SpectrumReport r;
  r.dim = points.dim();
  r.codim = codim;
  r.size = points.size();
  const Space& sp = points.space();
  std::vector<Coords> xs;
  for (PointIndex p : points) xs.push_back(sp.coords(p));
  std::vector<int> counts(pow3(codim));
  for (const auto& d : enumerate_directions(points.dim(), codim)) {
    std::fill(counts.begin(), counts.end(), 0);
    for (const auto& x : xs) {
      int lab = 0;
      for (int row = 0; row < codim; ++row) lab = lab * 3 + d.basis().dot_row(row, x);
      ++counts[lab];
    }
    ++r.census[normalize_counts(counts, codim)];
  }
  return r;
}

SpectrumReport spectrum(const CapSet& cap, int codim) { return spectrum_of_points(cap.points(), codim); }

std::vector<DirectionSpec> directions_with_key(const PointSet& points, int codim, const std::vector<int>& key) {
  std::vector<DirectionSpec> out;
  for (const auto& d : enumerate_directions(points.dim(), codim))
    if (normalize_counts(direction_counts(points, d), codim) == key) out.push_back(d);
  return out;
}

IdentityCheck moment_identities(const SpectrumReport& report, std::size_t s, int n) {
  IdentityCheck res;
  if (report.codim != 1) {
    res.diagnostic = "moment identities are defined for codimension-1 spectra";
    return res;
  }
  const std::uint64_t dirs = direction_count(n, 1);
  const std::uint64_t through_pair = direction_count(n - 1, 1);  // hyperplane directions containing a fixed vector
  std::uint64_t first = 0, second = 0;
  for (const auto& [key, mult] : report.census) {
    std::uint64_t sum = 0, pairs = 0;
    for (int a : key) {
      sum += static_cast<std::uint64_t>(a);
      pairs += static_cast<std::uint64_t>(a) * (a - 1) / 2;
    }
    first += mult * sum;
    second += mult * pairs;
  }
  const std::uint64_t want_first = s * dirs;
  const std::uint64_t want_second = s * (s - 1) / 2 * through_pair;
  std::ostringstream os;
  if (report.total() != dirs) os << "multiplicities sum to " << report.total() << ", expected " << dirs << "; ";
  if (first != want_first) os << "first moment: sum of counts " << first << " != s*(3^n-1)/2 = " << want_first << "; ";
  if (second != want_second) os << "second moment: sum of C(a,2) " << second << " != C(s,2)*(3^(n-1)-1)/2 = " << want_second << "; ";
  res.diagnostic = os.str();
  res.ok = res.diagnostic.empty();
  if (res.ok) res.diagnostic = "ok";
  return res;
}

}  // namespace capset
