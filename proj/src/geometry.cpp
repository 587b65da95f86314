#include "schwarz/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace schwarz {

Partition::Partition(double length, std::vector<Interval> subdomains)
    : m_length(length), m_subdomains(std::move(subdomains)) {
  const std::size_t n = m_subdomains.size();
  m_neighbors.resize(n);
  for (std::size_t l = 0; l < n; ++l)
    for (std::size_t k = 0; k < n; ++k)
      if (k != l && m_subdomains[l].intersects(m_subdomains[k])) m_neighbors[l].push_back(k);

  for (std::size_t l = 0; l < n; ++l) {
    const Interval& s = m_subdomains[l];
    const std::pair<double, int> ends[] = {{s.left, -1}, {s.right, +1}};
    for (auto [x, normal] : ends) {
      if (on_outer_boundary(x)) continue;
      for (std::size_t k = 0; k < n; ++k)
        if (k != l && m_subdomains[k].closure_contains(x))
          m_interfaces.push_back({l, k, x, normal});
    }
  }
}

std::vector<Interface> Partition::interfaces_of(std::size_t l, int normal) const {
  std::vector<Interface> out;
  for (const auto& g : m_interfaces)
    if (g.receiver == l && g.normal == normal) out.push_back(g);
  return out;
}

bool Partition::on_outer_boundary(double x) const {
  const double tol = 1e-12 * std::max(1.0, m_length);
  return std::abs(x) <= tol || std::abs(x - m_length) <= tol;
}

Partition build_uniform_partition(double length, std::size_t count, double overlap) {
  if (!(length > 0.0)) throw GeometryError("partition: length must be positive");
  if (count < 2) throw GeometryError("partition: need at least 2 subdomains");
  if (!(overlap > 0.0)) throw GeometryError("union/overlap: overlap must be positive");
  const double bound = length / (2.0 * static_cast<double>(count));
  if (!(overlap < bound)) {
    std::ostringstream os;
    os << "triple overlap: overlap " << overlap << " must be below L/(2I) = " << bound;
    throw GeometryError(os.str());
  }
  std::vector<Interval> parts;
  parts.reserve(count);
  const double width = length / static_cast<double>(count);
  for (std::size_t l = 0; l < count; ++l) {
    const double left = l == 0 ? 0.0 : static_cast<double>(l) * width - overlap / 2.0;
    const double right = l + 1 == count ? length : static_cast<double>(l + 1) * width + overlap / 2.0;
    parts.push_back({left, right});
  }
  return Partition(length, std::move(parts));
}

std::vector<std::string> validate_partition(const Partition& p) {
  std::vector<std::string> out;
  const auto& subs = p.subdomains();
  const double L = p.length();

  for (std::size_t l = 0; l < subs.size(); ++l) {
    if (!(subs[l].left < subs[l].right) || subs[l].left < 0.0 || subs[l].right > L) {
      std::ostringstream os;
      os << "interval: subdomain " << l + 1 << " (" << subs[l].left << ", " << subs[l].right
         << ") is empty or leaves (0, L)";
      out.push_back(os.str());
    }
  }
  if (!out.empty()) return out;

  // Coverage of the open interval (0, L) by open intervals: sweep by left end
  // and require each gap point to be strictly inside some interval.
  {
    std::vector<Interval> sorted(subs.begin(), subs.end());
    std::sort(sorted.begin(), sorted.end(),
              [](const Interval& a, const Interval& b) { return a.left < b.left; });
    double reach = 0.0;
    bool ok = !sorted.empty() && sorted.front().left <= 0.0;
    for (std::size_t i = 0; ok && i < sorted.size(); ++i) {
      if (sorted[i].left > reach || (sorted[i].left == reach && reach > 0.0)) {
        std::ostringstream os;
        os << "union/overlap: point " << reach << " is not covered by any open subdomain";
        out.push_back(os.str());
        ok = false;
        break;
      }
      reach = std::max(reach, sorted[i].right);
    }
    if (ok && reach < L) {
      std::ostringstream os;
      os << "union/overlap: (" << reach << ", " << L << ") is not covered";
      out.push_back(os.str());
    } else if (!ok && out.empty()) {
      out.push_back("union/overlap: subdomains do not start at 0");
    }
  }

  for (std::size_t l = 0; l < subs.size(); ++l)
    for (std::size_t k = l + 1; k < subs.size(); ++k)
      for (double x : {subs[l].left, subs[l].right})
        for (double y : {subs[k].left, subs[k].right})
          if (x == y && !p.on_outer_boundary(x)) {
            std::ostringstream os;
            os << "coincident interior boundaries: subdomains " << l + 1 << " and " << k + 1
               << " share the point " << x;
            out.push_back(os.str());
          }

  for (std::size_t l = 0; l < subs.size(); ++l) {
    const auto& nb = p.neighbors(l);
    for (std::size_t a = 0; a < nb.size(); ++a)
      for (std::size_t b = a + 1; b < nb.size(); ++b)
        if (subs[nb[a]].intersects(subs[nb[b]])) {
          std::ostringstream os;
          os << "triple overlap: neighbors " << nb[a] + 1 << " and " << nb[b] + 1
             << " of subdomain " << l + 1 << " intersect";
          out.push_back(os.str());
        }
  }

  for (const auto& g : p.interfaces())
    if (!subs[g.donor].contains(g.point)) {
      std::ostringstream os;
      os << "interface not strictly inside neighbor: point " << g.point << " of subdomain "
         << g.receiver + 1 << " lies on the boundary of subdomain " << g.donor + 1;
      out.push_back(os.str());
    }
  return out;
}

std::size_t Grid::node_of(double x) const {
  const double r = x / length * static_cast<double>(cells);
  const double idx = std::round(r);
  if (idx < 0.0 || idx > static_cast<double>(cells) || std::abs(r - idx) > 1e-6)
    throw GeometryError("grid: point is not a grid node");
  return static_cast<std::size_t>(idx);
}

Grid build_grid(const Partition& p, double h_target, std::optional<TimeRequest> time) {
  if (!(h_target > 0.0)) throw GeometryError("grid: h_target must be positive");
  const double L = p.length();
  std::vector<double> points;
  for (const auto& s : p.subdomains()) {
    points.push_back(s.left);
    points.push_back(s.right);
  }

  const auto first = static_cast<std::size_t>(std::ceil(L / h_target - 1e-9));
  const std::size_t start = std::max<std::size_t>(first, 1);
  const std::size_t limit = std::max<std::size_t>(start * 1000, 1000);
  std::optional<std::size_t> found;
  for (std::size_t n = start; n <= limit && !found; ++n) {
    bool all = true;
    for (double x : points) {
      const double r = x / L * static_cast<double>(n);
      if (std::abs(r - std::round(r)) > 1e-9 * std::max(1.0, r)) {
        all = false;
        break;
      }
    }
    if (all) found = n;
  }
  if (!found) throw GeometryError("grid: subdomain endpoints cannot be snapped to a uniform grid");

  Grid g;
  g.length = L;
  g.cells = *found;
  g.h = L / static_cast<double>(g.cells);
  for (const auto& s : p.subdomains()) g.subgrids.push_back({g.node_of(s.left), g.node_of(s.right)});

  if (time) {
    if (!(time->horizon > 0.0) || !(time->dt_target > 0.0))
      throw GeometryError("grid: horizon and dt must be positive");
    TimeAxis axis;
    axis.horizon = time->horizon;
    axis.steps = static_cast<std::size_t>(std::ceil(time->horizon / time->dt_target - 1e-9));
    axis.dt = time->horizon / static_cast<double>(axis.steps);
    g.time = axis;
  }
  return g;
}

}  // namespace schwarz
