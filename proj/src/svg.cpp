#include "titscone/svg.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace titscone {

namespace {

std::string fmt(double v) {
  // fixed 6-decimal layout precision, stable across runs
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.6f", v + 0.0);  // normalize -0
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

}  // namespace

std::string render_svg(const ArrangementGraph& graph) {
  const CoxeterContext& ctx = graph.context();
  const unsigned rank = ctx.rank();
  if (rank - graph.J().size() != 2)
    throw DimensionError("render_svg: dim Theta_J must be 2");

  // the two free coordinates of Theta_J
  std::vector<unsigned> free_idx;
  for (unsigned i = 0; i < rank; ++i)
    if (!graph.J().contains(i)) free_idx.push_back(i);

  auto functional_xy = [&](const std::vector<Scalar>& f) {
    return std::pair<double, double>{f[free_idx[0]].approx(), f[free_idx[1]].approx()};
  };
  auto point_xy = [&](const ThetaPoint& p) {
    return std::pair<double, double>{p.coords[free_idx[0]].approx(),
                                     p.coords[free_idx[1]].approx()};
  };
  auto normalize = [](std::pair<double, double> v) {
    double n = std::hypot(v.first, v.second);
    if (n < 1e-12) return std::pair<double, double>{0.0, 0.0};
    return std::pair<double, double>{v.first / n, v.second / n};
  };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"-1.15 -1.15 2.3 2.3\" "
        "width=\"640\" height=\"640\">\n";
  os << "<circle cx=\"0\" cy=\"0\" r=\"1\" fill=\"none\" stroke=\"#cccccc\" "
        "stroke-width=\"0.004\"/>\n";

  // chamber wedges: each chamber has exactly two candidate walls in a
  // 2-dimensional cone; its closure is the sector between the two face rays
  for (unsigned i = 0; i < graph.size(); ++i) {
    const ChamberLabel& c = graph.chamber(i);
    auto sample = normalize(point_xy(graph.sample_point(i)));
    std::vector<std::pair<double, double>> walls;
    for (unsigned a : ctx.diagram().all_nodes() - c.I) {
      Root wall_root = act(c.x, ctx.simple_root(a));
      RestrictedHyperplane h = restricted_hyperplane(wall_root, graph.J());
      walls.push_back(functional_xy(h.functional));
    }
    std::vector<std::pair<double, double>> rays;
    if (walls.size() == 2) {
      for (unsigned k = 0; k < 2; ++k) {
        // the boundary ray of wall k lies on the chamber side of the other
        // wall: sign the perpendicular to match the sample point
        auto [fx, fy] = walls[k];
        auto [gx, gy] = walls[1 - k];
        std::pair<double, double> d{-fy, fx};
        double side_ray = gx * d.first + gy * d.second;
        double side_sample = gx * sample.first + gy * sample.second;
        if (side_ray * side_sample < 0) d = {-d.first, -d.second};
        rays.push_back(normalize(d));
      }
    }
    if (rays.size() == 2) {
      double mid_angle = std::atan2(sample.second, sample.first);
      double a0 = std::atan2(rays[0].second, rays[0].first);
      double a1 = std::atan2(rays[1].second, rays[1].first);
      // order rays so the arc from a0 to a1 passes through the sample angle
      auto ccw = [](double from, double to) {
        double d = to - from;
        while (d < 0) d += 2 * M_PI;
        return d;
      };
      if (ccw(a0, mid_angle) > ccw(a0, a1)) std::swap(rays[0], rays[1]);
      os << "<path d=\"M 0 0 L " << fmt(rays[0].first) << " " << fmt(-rays[0].second) << " A 1 1 0 0 0 "
         << fmt(rays[1].first) << " " << fmt(-rays[1].second)
         << " Z\" fill=\"#7fb3d5\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";
    }
  }

  // hyperplane lines through the origin, clipped to the unit disk
  for (const auto& h : graph.hyperplanes()) {
    auto [fx, fy] = functional_xy(h.functional);
    auto d = normalize({-fy, fx});
    os << "<line x1=\"" << fmt(-d.first) << "\" y1=\"" << fmt(d.second) << "\" x2=\""
       << fmt(d.first) << "\" y2=\"" << fmt(-d.second)
       << "\" stroke=\"#333333\" stroke-width=\"0.006\"/>\n";
  }

  // uncrossable boundary rays, dashed
  for (unsigned i = 0; i < graph.size(); ++i) {
    const ChamberLabel& c = graph.chamber(i);
    if (graph.boundary(i).empty()) continue;
    auto sample = normalize(point_xy(graph.sample_point(i)));
    std::vector<std::pair<unsigned, std::pair<double, double>>> walls;
    for (unsigned a : ctx.diagram().all_nodes() - c.I) {
      Root wall_root = act(c.x, ctx.simple_root(a));
      walls.emplace_back(a, functional_xy(restricted_hyperplane(wall_root, graph.J()).functional));
    }
    for (unsigned k = 0; k < walls.size(); ++k) {
      if (!graph.boundary(i).contains(walls[k].first)) continue;
      auto [fx, fy] = walls[k].second;
      std::pair<double, double> d{-fy, fx};
      if (walls.size() == 2) {
        auto [gx, gy] = walls[1 - k].second;
        double side_ray = gx * d.first + gy * d.second;
        double side_sample = gx * sample.first + gy * sample.second;
        if (side_ray * side_sample < 0) d = {-d.first, -d.second};
      } else if (d.first * sample.first + d.second * sample.second < 0) {
        d = {-d.first, -d.second};
      }
      d = normalize(d);
      os << "<line x1=\"0\" y1=\"0\" x2=\"" << fmt(d.first) << "\" y2=\"" << fmt(-d.second)
         << "\" stroke=\"#cc3333\" stroke-width=\"0.008\" stroke-dasharray=\"0.03 0.02\"/>\n";
    }
  }

  // chamber labels at normalized sample points
  for (unsigned i = 0; i < graph.size(); ++i) {
    const ChamberLabel& c = graph.chamber(i);
    auto sample = normalize(point_xy(graph.sample_point(i)));
    std::string label = "(";
    const auto& w = c.x.word();
    if (w.empty()) label += "e";
    for (std::size_t k = 0; k < w.size(); ++k)
      label += (k ? "." : "") + ctx.diagram().name(w[k]);
    label += "," + ctx.diagram().set_to_string(c.I) + ")";
    os << "<text x=\"" << fmt(0.8 * sample.first) << "\" y=\"" << fmt(-0.8 * sample.second)
       << "\" font-size=\"0.05\" text-anchor=\"middle\" fill=\"#111111\">" << label
       << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace titscone
