// Subdomain-tagged conforming triangulations of the four model geometries:
// disk with a concentric subdisk, disk with a quarter-circle sector, the
// three-strip insulation rectangle, and the four-quadrant square.
#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace meanco {

using Point2 = Eigen::Vector2d;

enum class Domain { DiskDisk, DiskSector, InsulationStrip, QuadrantSquare, Custom };

struct DomainSpec {
  Domain kind = Domain::Custom;
  double rho = 0.5;  // interface radius, DiskDisk only

  static DomainSpec disk_disk(double rho);
  static DomainSpec disk_sector();
  static DomainSpec insulation_strip();
  static DomainSpec quadrant_square();

  std::string name() const;
};

// Oriented interface edge between two subdomains. The normal points from the
// lower-tag element ("in" side) to the higher-tag element; tangent = J*normal
// with J the counterclockwise quarter turn.
struct InterfaceEdge {
  int a = -1, b = -1;
  int elem_in = -1;
  int elem_out = -1;
  Point2 normal = Point2::Zero();
  Point2 tangent = Point2::Zero();
  Point2 midpoint = Point2::Zero();
  double length = 0.0;
};

struct Mesh {
  std::vector<Point2> nodes;
  std::vector<std::array<int, 3>> elements;  // CCW node triples
  std::vector<int> element_tag;
  std::vector<std::uint8_t> node_on_boundary;
  DomainSpec spec;  // geometry metadata; Custom for loaded meshes

  int node_count() const { return static_cast<int>(nodes.size()); }
  int element_count() const { return static_cast<int>(elements.size()); }

  double signed_area(int e) const;
  double area(int e) const { return signed_area(e); }
  Point2 centroid(int e) const;
  double total_area() const;
  double max_diameter() const;

  // Gradients of the three P1 hat functions on element e (constant).
  std::array<Point2, 3> hat_gradients(int e) const;

  std::vector<int> boundary_nodes() const;
  std::vector<int> distinct_tags() const;
};

Mesh build_mesh(const DomainSpec& spec, double target_h);

// Bisects, `levels` times, every edge separating two differently tagged
// elements; conformity is restored by recursive longest-edge closure.
Mesh refine_toward_interface(const Mesh& mesh, int levels);

// Red refinement of every element (each triangle into four); midpoints on
// circular boundaries/interfaces are reprojected onto the exact circle.
Mesh uniform_refine(const Mesh& mesh);

std::vector<InterfaceEdge> interface_edges(const Mesh& mesh);

// Exact subdomain tag of a point for the analytic geometry (not the mesh).
int region_tag(const DomainSpec& spec, const Point2& x);

// Plain-text format: `nodes N`, N lines `x y flag`, `elements M`,
// M lines `i j k tag`. Coordinates carry 17 significant digits so that
// write/read round-trips are bit-exact.
std::string write_mesh_string(const Mesh& mesh);
void write_mesh(const Mesh& mesh, const std::string& path);
Mesh read_mesh_string(const std::string& text);
Mesh read_mesh(const std::string& path);

// FNV-1a over the canonical serialization, as a fixed-width hex string.
std::string mesh_hash(const Mesh& mesh);

// Validation helpers used by tests and the CLI.
struct MeshCheckReport {
  bool ok = true;
  std::string detail;
};
MeshCheckReport check_mesh(const Mesh& mesh);

}  // namespace meanco
