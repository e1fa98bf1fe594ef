#include "amoebot/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace amoebot {

namespace {

std::unordered_set<Node, NodeHash> neighbourhood(const Configuration& cfg) {
  std::unordered_set<Node, NodeHash> out;
  for (const auto& [v, _] : cfg.occupancy()) {
    out.insert(v);
    for (int d = 0; d < 6; ++d) out.insert(neighbor(v, Direction(d)));
  }
  return out;
}

const char* colour(const Particle& p) {
  if (p.is_seed) return "#2ca02c";
  switch (p.state) {
    case ParticleState::Retired: return "#000000";
    case ParticleState::Root: return "#d62728";
    case ParticleState::Follower: return "#1f77b4";
    case ParticleState::Inactive: return "#9a9a9a";
  }
  return "#000000";
}

char glyph(const Particle& p, bool head) {
  if (p.is_seed) return 'S';
  switch (p.state) {
    case ParticleState::Retired: return '#';
    case ParticleState::Root: return head ? 'R' : 'r';
    case ParticleState::Follower: return head ? 'F' : 'f';
    case ParticleState::Inactive: return 'o';
  }
  return '?';
}

struct Point {
  double x;
  double y;
};

Point layout(Node v, Node origin) {
  const auto dq = static_cast<double>(v.q - origin.q);
  const auto dr = static_cast<double>(v.r - origin.r);
  return {dq + dr / 2.0, dr * std::sqrt(3.0) / 2.0};
}

}  // namespace

std::string render_ascii(const Configuration& cfg) {
  if (cfg.occupied_count() == 0) return "";
  const auto cells = neighbourhood(cfg);
  std::int64_t rmin = std::numeric_limits<std::int64_t>::max(), rmax = std::numeric_limits<std::int64_t>::min();
  std::int64_t cmin = rmin, cmax = rmax;
  for (const auto& v : cells) {
    rmin = std::min(rmin, v.r);
    rmax = std::max(rmax, v.r);
    cmin = std::min(cmin, 2 * v.q + v.r);
    cmax = std::max(cmax, 2 * v.q + v.r);
  }
  const auto width = static_cast<std::size_t>(cmax - cmin + 1);
  std::vector<std::string> rows(static_cast<std::size_t>(rmax - rmin + 1), std::string(width, ' '));
  for (const auto& v : cells) {
    char c = '.';
    if (const auto id = cfg.occupant(v)) {
      const auto& p = cfg.particle(*id);
      c = glyph(p, p.head == v);
    }
    rows[static_cast<std::size_t>(v.r - rmin)][static_cast<std::size_t>(2 * v.q + v.r - cmin)] = c;
  }
  std::string out;
  for (auto& row : rows) {
    while (!row.empty() && row.back() == ' ') row.pop_back();
    out += row;
    out += '\n';
  }
  return out;
}

std::string render_svg(const Configuration& cfg) {
  const Node origin = cfg.seed() ? cfg.particle(*cfg.seed()).head : Node{};
  const auto cells = neighbourhood(cfg);
  std::vector<Node> sorted(cells.begin(), cells.end());
  std::sort(sorted.begin(), sorted.end());

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& v : sorted) {
    const auto p = layout(v, origin);
    xmin = std::min(xmin, p.x);
    xmax = std::max(xmax, p.x);
    ymin = std::min(ymin, p.y);
    ymax = std::max(ymax, p.y);
  }
  const double pad = 0.6;
  const double scale = 40.0;

  std::ostringstream svg;
  svg.precision(4);
  svg << std::fixed;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << (xmax - xmin + 2 * pad) * scale
      << "\" height=\"" << (ymax - ymin + 2 * pad) * scale << "\" viewBox=\"" << xmin - pad << ' ' << ymin - pad << ' '
      << xmax - xmin + 2 * pad << ' ' << ymax - ymin + 2 * pad << "\">\n";

  svg << "<g stroke=\"#c8c8c8\" stroke-width=\"0.03\">\n";
  for (const auto& v : sorted) {
    for (int d = 0; d < 3; ++d) {
      const Node w = neighbor(v, Direction(d));
      if (!cells.contains(w)) continue;
      const auto a = layout(v, origin);
      const auto b = layout(w, origin);
      svg << "<line x1=\"" << a.x << "\" y1=\"" << a.y << "\" x2=\"" << b.x << "\" y2=\"" << b.y << "\"/>\n";
    }
  }
  svg << "</g>\n<g>\n";
  for (const auto& p : cfg.particles()) {
    const char* fill = colour(p);
    const auto h = layout(p.head, origin);
    if (p.expanded()) {
      const auto t = layout(p.tail, origin);
      svg << "<line x1=\"" << h.x << "\" y1=\"" << h.y << "\" x2=\"" << t.x << "\" y2=\"" << t.y << "\" stroke=\""
          << fill << "\" stroke-width=\"0.18\"/>\n";
      svg << "<circle cx=\"" << t.x << "\" cy=\"" << t.y << "\" r=\"0.3\" fill=\"" << fill << "\"/>\n";
    }
    svg << "<circle cx=\"" << h.x << "\" cy=\"" << h.y << "\" r=\"0.3\" fill=\"" << fill << "\"/>\n";
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

void write_svg(const Configuration& cfg, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << render_svg(cfg);
  if (!out) throw std::runtime_error("failed writing " + path);
}

}  // namespace amoebot
