#include "meanco/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace meanco {

namespace {

constexpr double kPi = std::numbers::pi;

std::uint64_t edge_key(int a, int b) {
  if (a > b) std::swap(a, b);
  return (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
}

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

DomainSpec DomainSpec::disk_disk(double rho) {
  if (!(rho > 0.0 && rho < 1.0)) throw std::invalid_argument("disk_disk: rho must lie in (0,1)");
  DomainSpec s;
  s.kind = Domain::DiskDisk;
  s.rho = rho;
  return s;
}

DomainSpec DomainSpec::disk_sector() {
  DomainSpec s;
  s.kind = Domain::DiskSector;
  return s;
}

DomainSpec DomainSpec::insulation_strip() {
  DomainSpec s;
  s.kind = Domain::InsulationStrip;
  return s;
}

DomainSpec DomainSpec::quadrant_square() {
  DomainSpec s;
  s.kind = Domain::QuadrantSquare;
  return s;
}

std::string DomainSpec::name() const {
  switch (kind) {
    case Domain::DiskDisk: return "diskdisk";
    case Domain::DiskSector: return "sector";
    case Domain::InsulationStrip: return "insulation";
    case Domain::QuadrantSquare: return "quadrant";
    case Domain::Custom: return "custom";
  }
  return "custom";
}

double Mesh::signed_area(int e) const {
  const auto& t = elements[e];
  const Point2& p0 = nodes[t[0]];
  const Point2& p1 = nodes[t[1]];
  const Point2& p2 = nodes[t[2]];
  return 0.5 * ((p1.x() - p0.x()) * (p2.y() - p0.y()) - (p2.x() - p0.x()) * (p1.y() - p0.y()));
}

Point2 Mesh::centroid(int e) const {
  const auto& t = elements[e];
  return (nodes[t[0]] + nodes[t[1]] + nodes[t[2]]) / 3.0;
}

double Mesh::total_area() const {
  double a = 0.0;
  for (int e = 0; e < element_count(); ++e) a += signed_area(e);
  return a;
}

double Mesh::max_diameter() const {
  double d2 = 0.0;
  for (const auto& t : elements) {
    for (int k = 0; k < 3; ++k) {
      const Point2 diff = nodes[t[k]] - nodes[t[(k + 1) % 3]];
      d2 = std::max(d2, diff.squaredNorm());
    }
  }
  return std::sqrt(d2);
}

std::array<Point2, 3> Mesh::hat_gradients(int e) const {
  const auto& t = elements[e];
  const Point2& p0 = nodes[t[0]];
  const Point2& p1 = nodes[t[1]];
  const Point2& p2 = nodes[t[2]];
  const double a2 = 2.0 * signed_area(e);
  if (!(a2 > 0.0)) throw std::runtime_error("degenerate element " + std::to_string(e));
  return {Point2{(p1.y() - p2.y()) / a2, (p2.x() - p1.x()) / a2},
          Point2{(p2.y() - p0.y()) / a2, (p0.x() - p2.x()) / a2},
          Point2{(p0.y() - p1.y()) / a2, (p1.x() - p0.x()) / a2}};
}

std::vector<int> Mesh::boundary_nodes() const {
  std::vector<int> out;
  for (int i = 0; i < node_count(); ++i)
    if (node_on_boundary[i]) out.push_back(i);
  return out;
}

std::vector<int> Mesh::distinct_tags() const {
  std::vector<int> tags = element_tag;
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  return tags;
}

int region_tag(const DomainSpec& spec, const Point2& x) {
  switch (spec.kind) {
    case Domain::DiskDisk:
      return x.norm() < spec.rho ? 1 : 2;
    case Domain::DiskSector: {
      const double th = std::atan2(x.y(), x.x());
      return (std::abs(th) < kPi / 4.0) ? 1 : 2;
    }
    case Domain::InsulationStrip:
      if (x.x() < -0.5) return 1;
      if (x.x() < 0.5) return 2;
      return 3;
    case Domain::QuadrantSquare:
      if (x.x() >= 0.0 && x.y() >= 0.0) return 1;
      if (x.x() < 0.0 && x.y() >= 0.0) return 2;
      if (x.x() < 0.0 && x.y() < 0.0) return 3;
      return 4;
    case Domain::Custom:
      break;
  }
  throw std::invalid_argument("region_tag: custom domain has no analytic regions");
}

// ---------------------------------------------------------------------------
// Structured builders
// ---------------------------------------------------------------------------

namespace {

struct Builder {
  Mesh m;
  int add_node(double x, double y, bool bnd) {
    m.nodes.emplace_back(x, y);
    m.node_on_boundary.push_back(bnd ? 1 : 0);
    return m.node_count() - 1;
  }
  void add_tri(int a, int b, int c, int tag) {
    m.elements.push_back({a, b, c});
    m.element_tag.push_back(tag);
  }
  void tag_by_centroid() {
    for (int e = 0; e < m.element_count(); ++e)
      m.element_tag[e] = region_tag(m.spec, m.centroid(e));
  }
};

Mesh build_grid(const DomainSpec& spec, double x0, double x1, double y0, double y1, int nx, int ny) {
  Builder b;
  b.m.spec = spec;
  const double dx = (x1 - x0) / nx;
  const double dy = (y1 - y0) / ny;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      b.add_node(x0 + i * dx, y0 + j * dy, i == 0 || i == nx || j == 0 || j == ny);
  auto id = [nx](int i, int j) { return j * (nx + 1) + i; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      b.add_tri(id(i, j), id(i + 1, j), id(i + 1, j + 1), 0);
      b.add_tri(id(i, j), id(i + 1, j + 1), id(i, j + 1), 0);
    }
  b.tag_by_centroid();
  return std::move(b.m);
}

struct RingNode {
  int id;
  double angle;
};

// Triangulates the band between two concentric node loops whose angle lists
// ascend over the same interval and share first/last angles. The sweep keeps
// the ladder edge monotone, which makes the band conforming by construction.
void merge_band(Builder& b, const std::vector<RingNode>& inner, const std::vector<RingNode>& outer) {
  std::size_t i = 0, j = 0;
  while (i + 1 < inner.size() || j + 1 < outer.size()) {
    bool advance_outer;
    if (i + 1 >= inner.size())
      advance_outer = true;
    else if (j + 1 >= outer.size())
      advance_outer = false;
    else
      advance_outer = outer[j + 1].angle <= inner[i + 1].angle + 1e-14;
    if (advance_outer) {
      b.add_tri(inner[i].id, outer[j].id, outer[j + 1].id, 0);
      ++j;
    } else {
      b.add_tri(inner[i].id, outer[j].id, inner[i + 1].id, 0);
      ++i;
    }
  }
}

// Density calibration: chord/ring spacing of 0.85*target_h reproduces the
// reference triangle counts (about 14k at h=0.025 on the disk-disk geometry)
// while keeping max element diameter well below 2*target_h.
constexpr double kDiskSpacingFactor = 0.85;

Mesh build_disk(const DomainSpec& spec, double target_h) {
  const bool sector = spec.kind == Domain::DiskSector;
  const double h = kDiskSpacingFactor * target_h;

  std::vector<double> radii;  // excludes the center
  if (sector) {
    const int nr = std::max(1, static_cast<int>(std::ceil(1.0 / h - 1e-12)));
    for (int i = 1; i <= nr; ++i) radii.push_back(static_cast<double>(i) / nr);
  } else {
    const double rho = spec.rho;
    const int nri = std::max(1, static_cast<int>(std::ceil(rho / h - 1e-12)));
    const int nro = std::max(1, static_cast<int>(std::ceil((1.0 - rho) / h - 1e-12)));
    for (int i = 1; i <= nri; ++i) radii.push_back(rho * i / nri);
    for (int j = 1; j <= nro; ++j) radii.push_back(rho + (1.0 - rho) * j / nro);
  }

  Builder b;
  b.m.spec = spec;
  const int center = b.add_node(0.0, 0.0, false);

  // Ring node loops. Sector rings start at -pi/4 with a multiple-of-8 count so
  // that the rays theta = +-pi/4 are unions of mesh edges.
  std::vector<std::vector<RingNode>> rings;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    const double r = radii[k];
    int n;
    if (sector) {
      n = 8 * std::max(1, static_cast<int>(std::ceil(2.0 * kPi * r / (8.0 * h) - 1e-12)));
    } else {
      n = std::max(6, static_cast<int>(std::ceil(2.0 * kPi * r / h - 1e-12)));
    }
    const bool bnd = (k + 1 == radii.size());
    std::vector<RingNode> ring;
    ring.reserve(n + 1);
    const double theta0 = sector ? -kPi / 4.0 : 0.0;
    for (int j = 0; j < n; ++j) {
      const double th = theta0 + 2.0 * kPi * j / n;
      ring.push_back({b.add_node(r * std::cos(th), r * std::sin(th), bnd), th});
    }
    rings.push_back(std::move(ring));
  }

  // Center fan.
  {
    const auto& r1 = rings.front();
    const int n = static_cast<int>(r1.size());
    for (int j = 0; j < n; ++j) b.add_tri(center, r1[j].id, r1[(j + 1) % n].id, 0);
  }

  auto closed = [](const std::vector<RingNode>& ring) {
    std::vector<RingNode> c = ring;
    c.push_back({ring.front().id, ring.front().angle + 2.0 * kPi});
    return c;
  };

  for (std::size_t k = 0; k + 1 < rings.size(); ++k) {
    if (!sector) {
      merge_band(b, closed(rings[k]), closed(rings[k + 1]));
    } else {
      // Split the band at the rays so each carries a radial rung edge there.
      auto segment = [](const std::vector<RingNode>& ring, double a0, double a1) {
        std::vector<RingNode> seg;
        for (const auto& rn : ring)
          if (rn.angle > a0 - 1e-12 && rn.angle < a1 + 1e-12) seg.push_back(rn);
        return seg;
      };
      auto with_wrap = [](std::vector<RingNode> seg, const RingNode& first) {
        seg.push_back({first.id, first.angle + 2.0 * kPi});
        return seg;
      };
      const auto& in = rings[k];
      const auto& out = rings[k + 1];
      // angles run over [-pi/4, 7pi/4)
      merge_band(b, segment(in, -kPi / 4.0, kPi / 4.0), segment(out, -kPi / 4.0, kPi / 4.0));
      merge_band(b, with_wrap(segment(in, kPi / 4.0, 7.0 * kPi / 4.0), in.front()),
                 with_wrap(segment(out, kPi / 4.0, 7.0 * kPi / 4.0), out.front()));
    }
  }

  b.tag_by_centroid();
  return std::move(b.m);
}

}  // namespace

Mesh build_mesh(const DomainSpec& spec, double target_h) {
  if (!(target_h > 0.0)) throw std::invalid_argument("build_mesh: target_h must be positive");
  switch (spec.kind) {
    case Domain::QuadrantSquare: {
      const int m = std::max(1, static_cast<int>(std::ceil(1.0 / target_h - 1e-12)));
      return build_grid(spec, -1.0, 1.0, -1.0, 1.0, 2 * m, 2 * m);
    }
    case Domain::InsulationStrip: {
      const int k = std::max(1, static_cast<int>(std::ceil(0.5 / target_h - 1e-12)));
      return build_grid(spec, -1.0, 1.0, -0.5, 0.5, 4 * k, 2 * k);
    }
    case Domain::DiskDisk:
      if (!(spec.rho > 0.0 && spec.rho < 1.0))
        throw std::invalid_argument("build_mesh: DiskDisk requires rho in (0,1)");
      return build_disk(spec, target_h);
    case Domain::DiskSector:
      return build_disk(spec, target_h);
    case Domain::Custom:
      break;
  }
  throw std::invalid_argument("build_mesh: cannot generate a custom domain");
}

// ---------------------------------------------------------------------------
// Refinement
// ---------------------------------------------------------------------------

namespace {

struct EdgeRef {
  int a, b;
  bool operator==(const EdgeRef& o) const { return a == o.a && b == o.b; }
};

// Mutable triangulation with edge adjacency, supporting conforming bisection
// of a chosen edge (the neighbour across a longer edge is split first).
struct Refiner {
  std::vector<Point2> nodes;
  std::vector<std::uint8_t> on_boundary;
  std::vector<std::array<int, 3>> tris;
  std::vector<int> tag;
  std::vector<char> alive;
  std::unordered_map<std::uint64_t, std::vector<int>> edge_elems;
  DomainSpec spec;
  long ops = 0;

  explicit Refiner(const Mesh& m)
      : nodes(m.nodes), on_boundary(m.node_on_boundary), tris(m.elements), tag(m.element_tag),
        alive(m.elements.size(), 1), spec(m.spec) {
    for (int e = 0; e < static_cast<int>(tris.size()); ++e) attach(e);
  }

  void attach(int e) {
    for (int k = 0; k < 3; ++k) edge_elems[edge_key(tris[e][k], tris[e][(k + 1) % 3])].push_back(e);
  }

  std::vector<int> adjacent(int a, int b) const {
    std::vector<int> out;
    auto it = edge_elems.find(edge_key(a, b));
    if (it == edge_elems.end()) return out;
    for (int e : it->second)
      if (alive[e]) out.push_back(e);
    return out;
  }

  double len2(int a, int b) const { return (nodes[a] - nodes[b]).squaredNorm(); }

  // Strict deterministic order on edges: longer first, ties by node ids.
  bool edge_less(const EdgeRef& x, const EdgeRef& y) const {
    const double lx = len2(x.a, x.b), ly = len2(y.a, y.b);
    if (lx != ly) return lx < ly;
    const auto kx = edge_key(x.a, x.b), ky = edge_key(y.a, y.b);
    return kx < ky;
  }

  EdgeRef longest_edge(int e) const {
    EdgeRef best{tris[e][0], tris[e][1]};
    for (int k = 1; k < 3; ++k) {
      EdgeRef cand{tris[e][k], tris[e][(k + 1) % 3]};
      if (edge_less(best, cand)) best = cand;
    }
    return best;
  }

  Point2 split_point(int a, int b) const {
    Point2 m = 0.5 * (nodes[a] + nodes[b]);
    if (spec.kind == Domain::DiskDisk || spec.kind == Domain::DiskSector) {
      const double ra = nodes[a].norm(), rb = nodes[b].norm();
      auto on_circle = [&](double r) { return std::abs(ra - r) < 1e-9 && std::abs(rb - r) < 1e-9; };
      if (on_circle(1.0)) return m / m.norm();
      if (spec.kind == Domain::DiskDisk && on_circle(spec.rho)) return (spec.rho / m.norm()) * m;
    }
    return m;
  }

  void bisect(int e, int a, int b, int mid) {
    const auto t = tris[e];
    int i = 0;
    while (!((t[i] == a && t[(i + 1) % 3] == b) || (t[i] == b && t[(i + 1) % 3] == a))) {
      ++i;
      if (i == 3) throw std::logic_error("bisect: edge not in element");
    }
    const int A = t[i], B = t[(i + 1) % 3], C = t[(i + 2) % 3];
    alive[e] = 0;
    const int c1 = static_cast<int>(tris.size());
    tris.push_back({A, mid, C});
    tag.push_back(tag[e]);
    alive.push_back(1);
    attach(c1);
    const int c2 = static_cast<int>(tris.size());
    tris.push_back({mid, B, C});
    tag.push_back(tag[e]);
    alive.push_back(1);
    attach(c2);
  }

  bool edge_exists(int a, int b) const { return !adjacent(a, b).empty(); }

  void split_edge(int a, int b) {
    if (++ops > 20'000'000) throw std::runtime_error("refinement did not terminate");
    // Closure: make (a,b) the longest edge of every neighbour first.
    for (;;) {
      auto adj = adjacent(a, b);
      if (adj.empty()) throw std::logic_error("split_edge: stale edge");
      bool ready = true;
      for (int e : adj) {
        const EdgeRef le = longest_edge(e);
        if (!(le == EdgeRef{a, b}) && !(le == EdgeRef{b, a})) {
          split_edge(le.a, le.b);
          ready = false;
          break;
        }
      }
      if (ready) break;
    }
    const auto adj = adjacent(a, b);
    const Point2 p = split_point(a, b);
    nodes.push_back(p);
    const bool boundary_edge = adj.size() == 1;
    on_boundary.push_back(boundary_edge && on_boundary[a] && on_boundary[b] ? 1 : 0);
    const int mid = static_cast<int>(nodes.size()) - 1;
    for (int e : adj) bisect(e, a, b, mid);
  }

  Mesh extract() const {
    Mesh m;
    m.spec = spec;
    m.nodes = nodes;
    m.node_on_boundary = on_boundary;
    for (std::size_t e = 0; e < tris.size(); ++e) {
      if (!alive[e]) continue;
      m.elements.push_back(tris[e]);
      m.element_tag.push_back(tag[e]);
    }
    return m;
  }

  std::vector<std::pair<int, int>> current_interface_edges() const {
    std::vector<std::pair<int, int>> out;
    for (const auto& [key, elems] : edge_elems) {
      int t0 = -1;
      bool iface = false;
      int n_alive = 0;
      for (int e : elems) {
        if (!alive[e]) continue;
        ++n_alive;
        if (t0 < 0)
          t0 = tag[e];
        else if (tag[e] != t0)
          iface = true;
      }
      if (iface && n_alive == 2)
        out.emplace_back(static_cast<int>(key >> 32), static_cast<int>(key & 0xffffffffu));
    }
    std::sort(out.begin(), out.end());
    return out;
  }
};

}  // namespace

Mesh refine_toward_interface(const Mesh& mesh, int levels) {
  if (levels < 1) throw std::invalid_argument("refine_toward_interface: levels must be >= 1");
  Refiner r(mesh);
  for (int lvl = 0; lvl < levels; ++lvl) {
    const auto edges = r.current_interface_edges();
    for (const auto& [a, b] : edges) {
      if (r.edge_exists(a, b)) r.split_edge(a, b);
    }
  }
  return r.extract();
}

Mesh uniform_refine(const Mesh& mesh) {
  Mesh out;
  out.spec = mesh.spec;
  out.nodes = mesh.nodes;
  out.node_on_boundary = mesh.node_on_boundary;

  // Count adjacency to tell boundary edges apart.
  std::unordered_map<std::uint64_t, int> edge_count;
  for (const auto& t : mesh.elements)
    for (int k = 0; k < 3; ++k) edge_count[edge_key(t[k], t[(k + 1) % 3])]++;

  std::unordered_map<std::uint64_t, int> midpoint;
  auto mid_of = [&](int a, int b) {
    const auto key = edge_key(a, b);
    auto it = midpoint.find(key);
    if (it != midpoint.end()) return it->second;
    Point2 p = 0.5 * (mesh.nodes[a] + mesh.nodes[b]);
    if (mesh.spec.kind == Domain::DiskDisk || mesh.spec.kind == Domain::DiskSector) {
      const double ra = mesh.nodes[a].norm(), rb = mesh.nodes[b].norm();
      if (std::abs(ra - 1.0) < 1e-9 && std::abs(rb - 1.0) < 1e-9 && edge_count[key] == 1)
        p /= p.norm();
      else if (mesh.spec.kind == Domain::DiskDisk && std::abs(ra - mesh.spec.rho) < 1e-9 &&
               std::abs(rb - mesh.spec.rho) < 1e-9)
        p *= mesh.spec.rho / p.norm();
    }
    out.nodes.push_back(p);
    const bool bnd = edge_count[key] == 1 && mesh.node_on_boundary[a] && mesh.node_on_boundary[b];
    out.node_on_boundary.push_back(bnd ? 1 : 0);
    const int id = out.node_count() - 1;
    midpoint.emplace(key, id);
    return id;
  };

  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& t = mesh.elements[e];
    const int m01 = mid_of(t[0], t[1]);
    const int m12 = mid_of(t[1], t[2]);
    const int m20 = mid_of(t[2], t[0]);
    const int tg = mesh.element_tag[e];
    out.elements.push_back({t[0], m01, m20});
    out.element_tag.push_back(tg);
    out.elements.push_back({m01, t[1], m12});
    out.element_tag.push_back(tg);
    out.elements.push_back({m20, m12, t[2]});
    out.element_tag.push_back(tg);
    out.elements.push_back({m01, m12, m20});
    out.element_tag.push_back(tg);
  }
  return out;
}

std::vector<InterfaceEdge> interface_edges(const Mesh& mesh) {
  std::unordered_map<std::uint64_t, std::vector<int>> edge_elems;
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& t = mesh.elements[e];
    for (int k = 0; k < 3; ++k) edge_elems[edge_key(t[k], t[(k + 1) % 3])].push_back(e);
  }
  std::vector<InterfaceEdge> out;
  for (const auto& [key, elems] : edge_elems) {
    if (elems.size() != 2) continue;
    const int e0 = elems[0], e1 = elems[1];
    if (mesh.element_tag[e0] == mesh.element_tag[e1]) continue;
    InterfaceEdge edge;
    edge.a = static_cast<int>(key >> 32);
    edge.b = static_cast<int>(key & 0xffffffffu);
    const bool first_in = mesh.element_tag[e0] < mesh.element_tag[e1];
    edge.elem_in = first_in ? e0 : e1;
    edge.elem_out = first_in ? e1 : e0;
    const Point2 pa = mesh.nodes[edge.a];
    const Point2 pb = mesh.nodes[edge.b];
    edge.length = (pb - pa).norm();
    edge.midpoint = 0.5 * (pa + pb);
    const Point2 v = (pb - pa) / edge.length;
    Point2 n{v.y(), -v.x()};
    if (n.dot(mesh.centroid(edge.elem_out) - edge.midpoint) < 0.0) n = -n;
    edge.normal = n;
    edge.tangent = Point2{-n.y(), n.x()};  // J*n
    out.push_back(edge);
  }
  std::sort(out.begin(), out.end(), [](const InterfaceEdge& x, const InterfaceEdge& y) {
    return std::pair(x.a, x.b) < std::pair(y.a, y.b);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Text I/O
// ---------------------------------------------------------------------------

std::string write_mesh_string(const Mesh& mesh) {
  std::ostringstream os;
  os << "nodes " << mesh.node_count() << "\n";
  for (int i = 0; i < mesh.node_count(); ++i)
    os << fmt17(mesh.nodes[i].x()) << " " << fmt17(mesh.nodes[i].y()) << " "
       << int(mesh.node_on_boundary[i]) << "\n";
  os << "elements " << mesh.element_count() << "\n";
  for (int e = 0; e < mesh.element_count(); ++e) {
    const auto& t = mesh.elements[e];
    os << t[0] << " " << t[1] << " " << t[2] << " " << mesh.element_tag[e] << "\n";
  }
  return os.str();
}

void write_mesh(const Mesh& mesh, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  f << write_mesh_string(mesh);
}

Mesh read_mesh_string(const std::string& text) {
  std::istringstream is(text);
  std::string kw;
  int n = 0;
  if (!(is >> kw >> n) || kw != "nodes") throw std::runtime_error("mesh file: expected 'nodes N'");
  Mesh m;
  m.spec.kind = Domain::Custom;
  m.nodes.resize(n);
  m.node_on_boundary.resize(n);
  for (int i = 0; i < n; ++i) {
    double x, y;
    int flag;
    if (!(is >> x >> y >> flag)) throw std::runtime_error("mesh file: bad node line");
    m.nodes[i] = Point2{x, y};
    m.node_on_boundary[i] = static_cast<std::uint8_t>(flag);
  }
  int ne = 0;
  if (!(is >> kw >> ne) || kw != "elements")
    throw std::runtime_error("mesh file: expected 'elements M'");
  m.elements.resize(ne);
  m.element_tag.resize(ne);
  for (int e = 0; e < ne; ++e) {
    int i, j, k, tag;
    if (!(is >> i >> j >> k >> tag)) throw std::runtime_error("mesh file: bad element line");
    m.elements[e] = {i, j, k};
    m.element_tag[e] = tag;
  }
  return m;
}

Mesh read_mesh(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return read_mesh_string(os.str());
}

std::string mesh_hash(const Mesh& mesh) {
  const std::string s = write_mesh_string(mesh);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

MeshCheckReport check_mesh(const Mesh& mesh) {
  MeshCheckReport rep;
  auto fail = [&](const std::string& why) {
    rep.ok = false;
    if (!rep.detail.empty()) rep.detail += "; ";
    rep.detail += why;
  };
  for (int e = 0; e < mesh.element_count(); ++e)
    if (!(mesh.signed_area(e) > 0.0)) {
      fail("nonpositive area in element " + std::to_string(e));
      break;
    }
  std::unordered_map<std::uint64_t, int> edge_count;
  for (const auto& t : mesh.elements)
    for (int k = 0; k < 3; ++k) edge_count[edge_key(t[k], t[(k + 1) % 3])]++;
  for (const auto& [key, c] : edge_count)
    if (c > 2) {
      fail("edge shared by more than two elements");
      break;
    }
  // Boundary edges must connect flagged nodes, and flagged nodes must touch a
  // boundary edge.
  std::vector<std::uint8_t> touched(mesh.node_count(), 0);
  for (const auto& [key, c] : edge_count) {
    if (c != 1) continue;
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffu);
    touched[a] = touched[b] = 1;
    if (!mesh.node_on_boundary[a] || !mesh.node_on_boundary[b]) {
      fail("boundary edge with unflagged node");
      break;
    }
  }
  for (int i = 0; i < mesh.node_count() && rep.ok; ++i)
    if (mesh.node_on_boundary[i] && !touched[i]) fail("flagged node not on any boundary edge");
  return rep;
}

}  // namespace meanco
