#include "linkgen/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

namespace linkgen {
namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", v);
  return buf;
}

void append(std::string& out, const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), fmt, args...);
  out += buf;
}

}  // namespace

std::string render_scene_svg(const EdgeGraph& g, const Scenario& s,
                             const Condition& cond) {
  const double margin = 1.0;  // meters
  const double scale = 60.0;  // px per meter
  const double wm = s.area.width() + 2 * margin;
  const double hm = s.area.height() + 2 * margin;
  const double wpx = wm * scale;
  const double hpx = hm * scale;

  std::string out;
  append(out,
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%s\" "
         "height=\"%s\" viewBox=\"0 0 %s %s\">\n",
         num(wpx).c_str(), num(hpx).c_str(), num(wpx).c_str(),
         num(hpx).c_str());
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Meter coordinates, y up; SVG y runs down, so flip the whole group.
  append(out, "<g transform=\"translate(%s %s) scale(%s %s)\">\n",
         num((margin - s.area.xmin) * scale).c_str(),
         num(hpx - (margin - s.area.ymin) * scale).c_str(), num(scale).c_str(),
         num(-scale).c_str());

  struct ActiveLink {
    Vec2 a, b;
    double excess;
  };
  std::vector<ActiveLink> links;
  for (int e = 0; e < g.num_edges(); ++e) {
    if (g.states[e] != kActive) continue;
    const auto [i, j] = edge_endpoints(e, s.num_nodes());
    const LinkGeometry geom = link_geometry(s, i, j);
    links.push_back(
        {geom.tx, geom.rx, excess_path(cond.target_position, geom)});
  }

  // Fresnel zones first so links and nodes draw on top of the shading.
  for (const ActiveLink& link : links) {
    const Vec2 mid = 0.5 * (link.a + link.b);
    const Vec2 d = link.b - link.a;
    const double length = d.norm();
    const double lambda = wavelength(s.frequency_hz);
    const double semi_major = (length + lambda / 2.0) / 2.0;
    const double semi_minor = fresnel_semi_minor(length, lambda);
    const double angle_deg =
        std::atan2(d.y(), d.x()) * 180.0 / std::numbers::pi;
    append(out,
           "<ellipse cx=\"%s\" cy=\"%s\" rx=\"%s\" ry=\"%s\" "
           "transform=\"rotate(%s %s %s)\" fill=\"#87b5e5\" "
           "fill-opacity=\"0.25\" stroke=\"none\"/>\n",
           num(mid.x()).c_str(), num(mid.y()).c_str(), num(semi_major).c_str(),
           num(semi_minor).c_str(), num(angle_deg).c_str(),
           num(mid.x()).c_str(), num(mid.y()).c_str());
  }
  for (const ActiveLink& link : links) {
    const bool ineffective = link.excess > s.reward.ineffective_threshold_m;
    if (ineffective) {
      append(out,
             "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"#cc2222\" "
             "stroke-width=\"0.06\" stroke-dasharray=\"0.25 0.15\" "
             "class=\"ineffective\"/>\n",
             num(link.a.x()).c_str(), num(link.a.y()).c_str(),
             num(link.b.x()).c_str(), num(link.b.y()).c_str());
    } else {
      append(out,
             "<line x1=\"%s\" y1=\"%s\" x2=\"%s\" y2=\"%s\" stroke=\"black\" "
             "stroke-width=\"0.06\"/>\n",
             num(link.a.x()).c_str(), num(link.a.y()).c_str(),
             num(link.b.x()).c_str(), num(link.b.y()).c_str());
    }
  }
  for (int i = 0; i < s.num_nodes(); ++i) {
    append(out,
           "<circle cx=\"%s\" cy=\"%s\" r=\"0.18\" fill=\"#2e8b57\"/>\n",
           num(s.node(i).x()).c_str(), num(s.node(i).y()).c_str());
  }
  const Vec2& t = cond.target_position;
  const double arm = 0.3;
  append(out,
         "<path d=\"M %s %s L %s %s M %s %s L %s %s\" stroke=\"#7a1fa2\" "
         "stroke-width=\"0.09\" class=\"target\"/>\n",
         num(t.x() - arm).c_str(), num(t.y() - arm).c_str(),
         num(t.x() + arm).c_str(), num(t.y() + arm).c_str(),
         num(t.x() - arm).c_str(), num(t.y() + arm).c_str(),
         num(t.x() + arm).c_str(), num(t.y() - arm).c_str());
  out += "</g>\n</svg>\n";
  return out;
}

std::string render_training_curves_svg(
    const std::vector<EpochMetrics>& rows) {
  const double width = 860, height = 520;
  const double left = 70, right = 830, top = 30, bottom = 470;
  std::string out;
  append(out,
         "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%g\" "
         "height=\"%g\" viewBox=\"0 0 %g %g\">\n",
         width, height, width, height);
  out += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (rows.empty()) {
    out += "<text x=\"70\" y=\"60\" font-size=\"16\">no epochs</text>\n";
    out += "</svg>\n";
    return out;
  }

  double lo = rows[0].random_mean, hi = rows[0].val_mean;
  for (const EpochMetrics& m : rows) {
    for (double v : {m.train_mean, m.val_mean, m.greedy_mean, m.random_mean}) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  const double pad = std::max(1.0, 0.05 * (hi - lo));
  lo -= pad;
  hi += pad;
  const int last_epoch = rows.back().epoch;
  const double xspan = std::max(1, last_epoch);

  auto px = [&](double epoch) {
    return left + (right - left) * epoch / xspan;
  };
  auto py = [&](double v) {
    return bottom - (bottom - top) * (v - lo) / (hi - lo);
  };

  // Axes with a handful of ticks.
  append(out,
         "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
         left, bottom, right, bottom);
  append(out,
         "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"black\"/>\n",
         left, top, left, bottom);
  for (int k = 0; k <= 5; ++k) {
    const double v = lo + (hi - lo) * k / 5.0;
    append(out,
           "<line x1=\"%g\" y1=\"%s\" x2=\"%g\" y2=\"%s\" "
           "stroke=\"#cccccc\"/>\n",
           left, num(py(v)).c_str(), right, num(py(v)).c_str());
    append(out,
           "<text x=\"%g\" y=\"%s\" font-size=\"12\" "
           "text-anchor=\"end\">%s</text>\n",
           left - 6, num(py(v) + 4).c_str(), num(v).c_str());
    const double e = xspan * k / 5.0;
    append(out,
           "<text x=\"%s\" y=\"%g\" font-size=\"12\" "
           "text-anchor=\"middle\">%d</text>\n",
           num(px(e)).c_str(), bottom + 18, int(e));
  }
  append(out,
         "<text x=\"%g\" y=\"%g\" font-size=\"13\" "
         "text-anchor=\"middle\">epoch</text>\n",
         (left + right) / 2, height - 8);
  append(out,
         "<text x=\"16\" y=\"%g\" font-size=\"13\" transform=\"rotate(-90 16 "
         "%g)\" text-anchor=\"middle\">reward</text>\n",
         (top + bottom) / 2, (top + bottom) / 2);

  struct Series {
    const char* name;
    const char* color;
    double EpochMetrics::* field;
  };
  const Series series[] = {
      {"train", "#9ecae1", &EpochMetrics::train_mean},
      {"validation", "#1f5fa8", &EpochMetrics::val_mean},
      {"greedy", "#e08214", &EpochMetrics::greedy_mean},
      {"random", "#888888", &EpochMetrics::random_mean},
  };
  for (const Series& sr : series) {
    std::string points;
    for (const EpochMetrics& m : rows) {
      points += num(px(m.epoch)) + "," + num(py(m.*sr.field)) + " ";
    }
    append(out,
           "<polyline points=\"%s\" fill=\"none\" stroke=\"%s\" "
           "stroke-width=\"1.5\" class=\"%s\"/>\n",
           points.c_str(), sr.color, sr.name);
  }
  double ly = top + 10;
  for (const Series& sr : series) {
    append(out,
           "<line x1=\"%g\" y1=\"%g\" x2=\"%g\" y2=\"%g\" stroke=\"%s\" "
           "stroke-width=\"3\"/>\n",
           right - 140.0, ly, right - 110.0, ly, sr.color);
    append(out, "<text x=\"%g\" y=\"%g\" font-size=\"12\">%s</text>\n",
           right - 102.0, ly + 4, sr.name);
    ly += 18;
  }
  out += "</svg>\n";
  return out;
}

}  // namespace linkgen
