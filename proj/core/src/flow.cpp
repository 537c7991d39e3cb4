#include "qmflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "qmflow/errors.hpp"
#include "qmflow/parallel.hpp"

namespace qmflow {

double profile_value(const Profile& pr, double h) {
  if (h <= pr.smoothing) return 0.0;
  if (h >= pr.width - pr.smoothing) return 1.0;
  return (h - pr.smoothing) / pr.ramp();
}

double staircase(const Profile& pr, double s) {
  const double f = std::floor(s);
  return f + profile_value(pr, s - f);
}

double strip_hamiltonian(const StripSpec& s, Point p) {
  const double v = staircase(profile_of(s), s.transverse(p) - s.offset);
  return s.direction == Direction::H ? s.orientation * v : -s.orientation * v;
}

StripMove apply_strip(const StripSpec& strip, const Profile& pr, double t, Point p) {
  const double v = strip.orientation * t * profile_velocity(pr, strip.chart_h(p));
  const Point to = p + v * strip.loop_vector();
  return {to, {p, to}};
}

ComposedMove apply_composed(const Scenario& sc, double t, Point p) {
  ComposedMove out;
  out.to = apply_composed_visit(sc, t, p, [&](int, Point from, Point to) {
    out.path.push_back({from, to});
  });
  return out;
}

Point apply_composed_inverse(const Scenario& sc, double t, Point p) {
  for (const StripSpec& s : sc.strips()) p = p + strip_displacement(s, -t, p);
  return p;
}

double generator_value(const Scenario& sc, double t, Point p) {
  // G = H_1 + H_2 o phi_1^-t + H_3 o phi_2^-t o phi_1^-t + ...
  double g = 0.0;
  for (const StripSpec& s : sc.strips()) {
    g += strip_hamiltonian(s, p) - strip_hamiltonian(s, {0.0, 0.0});
    p = p + strip_displacement(s, -t, p);
  }
  return g;
}

void check_validity_window(const Scenario& sc, double tau) {
  const double spacing = sc.validation().min_overlap_spacing;
  for (const StripSpec& s : sc.strips()) {
    const double drift = std::abs(tau) / profile_of(s).ramp();
    if (!(drift < spacing)) {
      std::ostringstream os;
      os << "drift " << drift << " per step exceeds the minimal overlap spacing " << spacing;
      throw ValidityWindowExceeded(os.str());
    }
  }
}

double copy_oscillation_bound(const Scenario& sc) {
  std::vector<double> per_copy;
  for (const StripSpec& s : sc.strips()) {
    if (s.copy_id < 0) continue;
    if (static_cast<std::size_t>(s.copy_id) >= per_copy.size()) per_copy.resize(s.copy_id + 1, 0.0);
    per_copy[s.copy_id] += std::abs(s.orientation);
  }
  double k = 0.0;
  for (double v : per_copy) k = std::max(k, v);
  return k;
}

namespace {

Point overlap_centre(const StripSpec& p, const StripSpec& q) {
  const StripSpec* h = nullptr;
  const StripSpec* v = nullptr;
  const StripSpec* d = nullptr;
  for (const StripSpec* s : {&p, &q}) {
    if (s->direction == Direction::H) h = s;
    if (s->direction == Direction::V) v = s;
    if (s->direction == Direction::D) d = s;
  }
  if (h && v) return {v->offset + v->width / 2, h->offset + h->width / 2};
  if (h && d) {
    const double y = h->offset + h->width / 2;
    return {d->offset + d->width / 2 + y, y};
  }
  const double x = v->offset + v->width / 2;
  return {x, x - d->offset - d->width / 2};
}

std::vector<Point> midpoint_grid(int n) {
  std::vector<Point> pts;
  pts.reserve(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) pts.push_back({(i + 0.5) / n, (j + 0.5) / n});
  }
  return pts;
}

std::vector<double> evaluate(const Scenario& sc, double t, const std::vector<Point>& pts) {
  std::vector<double> g(pts.size());
  constexpr std::size_t kBlock = 1024;
  const std::size_t blocks = (pts.size() + kBlock - 1) / kBlock;
  parallel_for(blocks, [&](std::size_t b) {
    const std::size_t end = std::min(pts.size(), (b + 1) * kBlock);
    for (std::size_t i = b * kBlock; i < end; ++i) g[i] = generator_value(sc, t, pts[i]);
  });
  return g;
}

}  // namespace

std::vector<Point> oscillation_probes(const Scenario& sc, int space_samples) {
  std::vector<Point> pts = midpoint_grid(space_samples);
  const auto& strips = sc.strips();
  for (const StripSpec& s : strips) {
    const double mid = s.offset + s.width / 2;
    for (int k = 0; k < space_samples; ++k) {
      const double a = (k + 0.5) / space_samples;
      switch (s.direction) {
        case Direction::H: pts.push_back(wrap({a, mid})); break;
        case Direction::V: pts.push_back(wrap({mid, a})); break;
        case Direction::D: pts.push_back(wrap({mid + a, a})); break;
      }
    }
  }
  for (std::size_t i = 0; i < strips.size(); ++i) {
    for (std::size_t j = i + 1; j < strips.size(); ++j) {
      if (strips[i].direction != strips[j].direction) {
        pts.push_back(wrap(overlap_centre(strips[i], strips[j])));
      }
    }
  }
  return pts;
}

HoferBound hofer_upper_bound(const Scenario& sc, double tau, int time_samples, int space_samples) {
  if (time_samples < 1 || space_samples < 1) {
    throw std::invalid_argument("hofer_upper_bound needs positive sample counts");
  }
  check_validity_window(sc, tau);
  HoferBound out;
  out.K = copy_oscillation_bound(sc);
  out.analytic = 2.0 * out.K * std::abs(tau);
  if (sc.strips().empty()) return out;
  const std::vector<Point> pts = oscillation_probes(sc, space_samples);
  const double dt = tau / time_samples;
  std::vector<double> osc(time_samples);
  for (int j = 0; j < time_samples; ++j) {
    const std::vector<double> g = evaluate(sc, (j + 0.5) * dt, pts);
    const auto [lo, hi] = std::minmax_element(g.begin(), g.end());
    osc[j] = (*hi - *lo) * std::abs(dt);
  }
  out.numeric = pairwise_sum(osc);
  return out;
}

double calabi(const Scenario& sc, double tau, int time_samples, int space_samples) {
  if (time_samples < 1 || space_samples < 1) {
    throw std::invalid_argument("calabi needs positive sample counts");
  }
  check_validity_window(sc, tau);
  if (sc.strips().empty()) return 0.0;
  const std::vector<Point> pts = midpoint_grid(space_samples);
  const double dt = tau / time_samples;
  const double cell = 1.0 / (static_cast<double>(space_samples) * space_samples);
  std::vector<double> slices(time_samples);
  for (int j = 0; j < time_samples; ++j) {
    const std::vector<double> g = evaluate(sc, (j + 0.5) * dt, pts);
    slices[j] = pairwise_sum(g) * cell * dt;
  }
  return pairwise_sum(slices);
}

Flux copy_flux(const Scenario& sc, int copy_id) {
  Flux f;
  for (const StripSpec& s : sc.strips()) {
    if (s.copy_id != copy_id) continue;
    if (s.direction != Direction::V) f.a += s.orientation;
    if (s.direction != Direction::H) f.b += s.orientation;
  }
  return f;
}

Flux flux_check(const Scenario& sc) {
  Flux f;
  for (const StripSpec& s : sc.strips()) {
    if (s.direction != Direction::V) f.a += s.orientation;
    if (s.direction != Direction::H) f.b += s.orientation;
  }
  return f;
}

void require_zero_flux(const Scenario& sc) {
  const Flux f = flux_check(sc);
  if (std::abs(f.a) > 1e-12 || std::abs(f.b) > 1e-12) {
    std::ostringstream os;
    os << "nonzero flux (" << f.a << ", " << f.b << "); the map is not Hamiltonian";
    throw NonHamiltonian(os.str());
  }
}

}  // namespace qmflow
