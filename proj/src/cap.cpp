#include "capset/cap.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace capset {

Point Point::from_string(const std::string& digits) {
  if (digits.empty() || static_cast<int>(digits.size()) > kMaxDim) throw CapsetError("point string has invalid length: '" + digits + "'");
  Coords c{};
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (digits[i] < '0' || digits[i] > '2') throw CapsetError("point string has a non-ternary digit: '" + digits + "'");
    c[i] = static_cast<std::uint8_t>(digits[i] - '0');
  }
  int n = static_cast<int>(digits.size());
  return Point{n, Space::get(n).index(c)};
}

Point third_on_line(const Point& p, const Point& q) {
  if (p.dim != q.dim) throw CapsetError("third_on_line: dimension mismatch");
  return Point{p.dim, third_on_line(Space::get(p.dim), p.index, q.index)};
}

bool is_cap(const PointSet& points) {
  const Space& sp = points.space();
  std::vector<PointIndex> v = points.to_vector();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      PointIndex r = sp.third(v[i], v[j]);
      if (r > v[j] && points.contains(r)) return false;
    }
  return true;
}

CapSet::CapSet(PointSet points) : points_(std::move(points)), size_(points_.size()) {
  if (!is_cap(points_)) throw CapsetError("point set is not a cap (contains three collinear points)");
}

CapSet CapSet::with(PointIndex p) const {
  PointSet s = points_;
  s.insert(p);
  return CapSet(std::move(s));
}

CapSet CapSet::without(PointIndex p) const {
  PointSet s = points_;
  s.erase(p);
  return CapSet(std::move(s));
}

PointSet blocked_points(const PointSet& points) {
  const Space& sp = points.space();
  PointSet out(points.dim());
  std::vector<PointIndex> v = points.to_vector();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) out.insert(sp.third(v[i], v[j]));
  return out - points;
}

PointSet addable_points(const CapSet& cap) { return cap.points().complement() - blocked_points(cap.points()); }

CapSet apply_map(const AffineMap& m, const CapSet& cap) {
  if (m.dim() != cap.dim()) throw CapsetError("apply_map: dimension mismatch");
  return CapSet(m.apply(cap.points()));
}

int affine_hull_dimension(const PointSet& points) {
  if (points.empty()) return -1;
  const Space& sp = points.space();
  PointIndex o = points.first();
  std::vector<Coords> diffs;
  for (PointIndex p : points)
    if (p != o) diffs.push_back(sp.coords(sp.sub(p, o)));
  return rank_of(diffs, points.dim());
}

std::string format_cap(const CapSet& cap) {
  std::ostringstream os;
  write_cap(os, cap);
  return os.str();
}

void write_cap(std::ostream& os, const CapSet& cap) {
  const Space& sp = Space::get(cap.dim());
  os << "capset v1\n" << "dim " << cap.dim() << "\n" << cap.size() << "\n";
  for (PointIndex p : cap.points()) os << sp.to_string(p) << "\n";
}

CapSet parse_cap(const std::string& text, const std::string& source) {
  auto fail = [&](int line, const std::string& what) -> CapsetError {
    return CapsetError(source + ":" + std::to_string(line) + ": " + what);
  };
  if (text.empty() || text.back() != '\n') throw fail(1, "cap file must end with a newline");
  std::vector<std::string> lines;
  std::istringstream is(text);
  for (std::string l; std::getline(is, l);) lines.push_back(l);
  if (lines.empty() || lines[0] != "capset v1") throw fail(1, "expected header 'capset v1'");
  if (lines.size() < 3) throw fail(static_cast<int>(lines.size()) + 1, "truncated cap file");
  int dim = 0;
  if (lines[1].rfind("dim ", 0) != 0) throw fail(2, "expected 'dim <n>'");
  try {
    std::size_t used = 0;
    dim = std::stoi(lines[1].substr(4), &used);
    if (used != lines[1].size() - 4) throw std::invalid_argument("trailing");
  } catch (const std::exception&) {
    throw fail(2, "malformed dimension");
  }
  if (dim < 1 || dim > kMaxDim) throw fail(2, "dimension out of range");
  std::size_t size = 0;
  try {
    std::size_t used = 0;
    long long v = std::stoll(lines[2], &used);
    if (used != lines[2].size() || v < 0) throw std::invalid_argument("bad");
    size = static_cast<std::size_t>(v);
  } catch (const std::exception&) {
    throw fail(3, "malformed size");
  }
  if (lines.size() != 3 + size) throw fail(static_cast<int>(std::min(lines.size(), 3 + size)) + 1, "expected " + std::to_string(size) + " point lines, found " + std::to_string(lines.size() - 3));
  PointSet pts(dim);
  PointIndex prev = 0;
  for (std::size_t i = 0; i < size; ++i) {
    int ln = static_cast<int>(i) + 4;
    const std::string& l = lines[3 + i];
    if (static_cast<int>(l.size()) != dim) throw fail(ln, "point must have exactly " + std::to_string(dim) + " digits");
    Point p;
    try {
      p = Point::from_string(l);
    } catch (const CapsetError& e) {
      throw fail(ln, e.what());
    }
    if (i > 0 && p.index <= prev) throw fail(ln, "points must be strictly ascending by index");
    prev = p.index;
    pts.insert(p.index);
  }
  const Space& sp = Space::get(dim);
  std::vector<PointIndex> v = pts.to_vector();
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      PointIndex r = sp.third(v[i], v[j]);
      if (r > v[j] && pts.contains(r)) {
        auto k = static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), r) - v.begin());
        throw fail(static_cast<int>(k) + 4, "points on lines " + std::to_string(i + 4) + ", " + std::to_string(j + 4) + " and " +
                                                std::to_string(k + 4) + " are collinear");
      }
    }
  return CapSet(std::move(pts));
}

CapSet read_cap_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CapsetError("cannot open cap file " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return parse_cap(os.str(), path.string());
}

void write_cap_file(const std::filesystem::path& path, const CapSet& cap) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CapsetError("cannot write " + tmp.string());
    write_cap(out, cap);
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace capset
