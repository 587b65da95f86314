#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace schwarz {

class GeometryError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Open interval (left, right).
struct Interval {
  double left = 0.0;
  double right = 0.0;

  bool contains(double x) const { return left < x && x < right; }
  bool closure_contains(double x) const { return left <= x && x <= right; }
  bool intersects(const Interval& o) const { return std::max(left, o.left) < std::min(right, o.right); }
};

/// Gamma_{receiver, donor}: an interior endpoint of the receiving subdomain
/// that lies in the closure of the donor. `normal` is the outward normal of
/// the receiver at that point (+1 right end, -1 left end).
struct Interface {
  std::size_t receiver = 0;
  std::size_t donor = 0;
  double point = 0.0;
  int normal = 1;
};

/// Overlapping decomposition of (0, L). Neighbor sets and interfaces are
/// derived from the intervals; no structural rule is enforced here, see
/// validate_partition().
class Partition {
public:
  Partition() = default;
  Partition(double length, std::vector<Interval> subdomains);

  double length() const { return m_length; }
  std::size_t size() const { return m_subdomains.size(); }
  const std::vector<Interval>& subdomains() const { return m_subdomains; }
  const Interval& subdomain(std::size_t l) const { return m_subdomains.at(l); }
  /// J_l without l itself.
  const std::vector<std::size_t>& neighbors(std::size_t l) const { return m_neighbors.at(l); }
  const std::vector<Interface>& interfaces() const { return m_interfaces; }
  /// Interfaces received by subdomain l on the given side (normal -1 left, +1 right).
  std::vector<Interface> interfaces_of(std::size_t l, int normal) const;

  bool on_outer_boundary(double x) const;

private:
  double m_length = 0.0;
  std::vector<Interval> m_subdomains;
  std::vector<std::vector<std::size_t>> m_neighbors;
  std::vector<Interface> m_interfaces;
};

/// Equal-width chain of `count` subdomains whose consecutive members overlap by
/// exactly `overlap`. Requires count >= 2 and 0 < overlap < L / (2 count).
Partition build_uniform_partition(double length, std::size_t count, double overlap);

/// Empty iff the union covers (0, L), interior boundaries are pairwise
/// disjoint, no subdomain meets two mutually overlapping neighbors, and every
/// interface lies strictly inside its donor. Violations are tagged
/// "interval", "union/overlap", "coincident interior boundaries",
/// "triple overlap" and "interface not strictly inside neighbor".
std::vector<std::string> validate_partition(const Partition& p);

/// Inclusive range of global node indices.
struct SubGrid {
  std::size_t first = 0;
  std::size_t last = 0;

  std::size_t size() const { return last - first + 1; }
  bool contains(std::size_t i) const { return first <= i && i <= last; }
};

struct TimeAxis {
  double horizon = 0.0;
  std::size_t steps = 0;
  double dt = 0.0;

  std::size_t levels() const { return steps + 1; }
  double t(std::size_t m) const { return horizon * static_cast<double>(m) / static_cast<double>(steps); }
};

struct TimeRequest {
  double horizon = 0.0;
  double dt_target = 0.0;
};

/// Uniform nodes x_i = i L / N with every subdomain endpoint on a node.
struct Grid {
  double length = 0.0;
  std::size_t cells = 0;
  double h = 0.0;
  std::vector<SubGrid> subgrids;
  std::optional<TimeAxis> time;

  std::size_t nodes() const { return cells + 1; }
  double x(std::size_t i) const { return length * static_cast<double>(i) / static_cast<double>(cells); }
  /// Node of a point known to lie on the grid.
  std::size_t node_of(double x) const;
  SubGrid whole() const { return {0, cells}; }
};

/// Smallest N >= L / h_target for which every endpoint is a grid node.
Grid build_grid(const Partition& p, double h_target,
                std::optional<TimeRequest> time = std::nullopt);

}  // namespace schwarz
