#include "qmflow/rho.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "qmflow/errors.hpp"
#include "qmflow/parallel.hpp"

namespace qmflow {

const char* to_string(Classification c) {
  switch (c) {
    case Classification::stationary: return "stationary";
    case Classification::periodic: return "periodic";
    case Classification::bad: return "bad";
  }
  return "?";
}

namespace {

Word signed_class(const StripSpec& s) { return power(s.class_word(), s.orientation); }

// Strips whose ramp contains p (those that actually move it).
int active_strip(const Scenario& sc, Point p, int& count) {
  count = 0;
  int found = -1;
  const auto& strips = sc.strips();
  for (int i = 0; i < static_cast<int>(strips.size()); ++i) {
    if (strip_displacement(strips[i], 1.0, p) != Point{0.0, 0.0}) {
      ++count;
      if (found < 0) found = i;
    }
  }
  return found;
}

TrajectoryRecord trace(const Scenario& sc, Point p, int K, bool stop_at_period) {
  TrajectoryRecord rec;
  rec.start = p;
  rec.end = p;
  int count = 0;
  const int own = active_strip(sc, p, count);
  if (count == 0) {
    rec.iterates = K;
    rec.classification = Classification::stationary;
    return rec;
  }
  const int m = sc.m();
  const double tau = sc.tau();
  WordBuilder word;
  bool foreign = count != 1;
  bool periodic = false;
  Point cur = p;
  int k = 0;
  while (k < K) {
    cur = apply_composed_visit(sc, tau, cur, [&](int i, Point from, Point to) {
      append_crossings({from, to}, word);
      if (i != own) foreign = true;
    });
    ++k;
    if (k == m) {
      periodic = !foreign && torus_distance(cur, p) < kReturnTolerance;
      if (periodic && stop_at_period) break;
    }
  }
  for (const Segment& s : closing_word(sc.surface(), cur, p).chain) append_crossings(s, word);
  rec.end = cur;
  rec.iterates = k;
  rec.word = std::move(word).build();
  if (periodic) {
    rec.classification = Classification::periodic;
    rec.period = m;
    rec.period_class = signed_class(sc.strips()[own]);
  } else {
    rec.classification = Classification::bad;
  }
  return rec;
}

TrajectoryRecord trace_with_nudges(const Scenario& sc, Point p, int K, bool stop_at_period) {
  constexpr int kAttempts = 3;
  for (int attempt = 0;; ++attempt) {
    const Point start = p + (attempt * kNudge) * Point{1.0, 0.6180339887498949};
    try {
      return trace(sc, start, K, stop_at_period);
    } catch (const DegenerateCrossing&) {
      if (attempt == kAttempts) throw;
    }
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Point sample_in_strip(const StripSpec& s, double u_h, double u_along) {
  const double h = s.offset + u_h * s.width;
  switch (s.direction) {
    case Direction::H: return wrap({u_along, h});
    case Direction::V: return wrap({h, u_along});
    case Direction::D: return wrap({h + u_along, u_along});
  }
  return {};
}

struct SampleResult {
  double f = 0.0;  // contribution per unit area
  double bound = 0.0;
  Classification kind = Classification::stationary;
  bool owned = false;
};

}  // namespace

double sample_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t index, int lane) {
  const std::uint64_t key = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ index);
  const std::uint64_t bits = splitmix64(key + static_cast<std::uint64_t>(lane));
  return (static_cast<double>(bits >> 11) + 0.5) * 0x1.0p-53;
}

TrajectoryRecord iterate_word(const Scenario& sc, Point p, int K) {
  if (K < 1) throw std::invalid_argument("iterate_word needs K >= 1");
  return trace_with_nudges(sc, p, K, false);
}

RhoEstimate rho_estimate(const Scenario& sc, const CountingQM& q, int K, int samples_per_strip,
                         std::uint64_t seed) {
  if (K < 1 || K % sc.m() != 0) throw std::invalid_argument("K must be a positive multiple of m");
  if (samples_per_strip < 1000) throw std::invalid_argument("samples_per_strip must be at least 1000");
  require_zero_flux(sc);
  check_validity_window(sc, sc.tau());

  RhoEstimate out;
  const auto& strips = sc.strips();
  const std::size_t n = static_cast<std::size_t>(samples_per_strip);
  if (strips.empty()) return out;

  std::vector<double> periodic_value(strips.size());
  std::vector<std::string> class_key(strips.size());
  for (std::size_t s = 0; s < strips.size(); ++s) {
    const Word c = signed_class(strips[s]);
    periodic_value[s] = homogenized(q, c) / sc.m();
    class_key[s] = c.to_string();
  }

  std::vector<SampleResult> results(strips.size() * n);
  constexpr std::size_t kBlock = 256;
  const std::size_t blocks_per_strip = (n + kBlock - 1) / kBlock;
  parallel_for(strips.size() * blocks_per_strip, [&](std::size_t job) {
    const std::size_t s = job / blocks_per_strip;
    const std::size_t begin = (job % blocks_per_strip) * kBlock;
    const std::size_t end = std::min(n, begin + kBlock);
    for (std::size_t i = begin; i < end; ++i) {
      SampleResult& r = results[s * n + i];
      const Point p = sample_in_strip(strips[s], sample_uniform(seed, s, i, 0),
                                      sample_uniform(seed, s, i, 1));
      // Each point of the union is counted by the lowest-index strip holding it.
      r.owned = strips[s].contains(p);
      for (std::size_t j = 0; j < s && r.owned; ++j) r.owned = !strips[j].contains(p);
      if (!r.owned) continue;
      const TrajectoryRecord rec = trace_with_nudges(sc, p, K, true);
      r.kind = rec.classification;
      if (rec.classification == Classification::periodic) {
        r.f = homogenized(q, rec.period_class) / rec.period;
      } else if (rec.classification == Classification::bad) {
        r.f = homogenized(q, rec.word) / K;
        r.bound = static_cast<double>(cyclic_reduce(rec.word).core.size()) / K;
      }
    }
  });

  std::vector<double> strip_values(strips.size());
  std::vector<double> strip_variances(strips.size());
  std::vector<double> f(n);
  std::vector<double> dev(n);
  for (std::size_t s = 0; s < strips.size(); ++s) {
    const double weight = strips[s].width / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) f[i] = results[s * n + i].f;
    const double mean = pairwise_sum(f) / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) dev[i] = (f[i] - mean) * (f[i] - mean);
    const double var = n > 1 ? pairwise_sum(dev) / static_cast<double>(n - 1) : 0.0;
    strip_values[s] = strips[s].width * mean;
    strip_variances[s] = strips[s].width * strips[s].width * var / static_cast<double>(n);

    for (std::size_t i = 0; i < n; ++i) {
      const SampleResult& r = results[s * n + i];
      if (!r.owned) continue;
      out.sampled_area += weight;
      switch (r.kind) {
        case Classification::stationary: out.per_class[""].area += weight; break;
        case Classification::periodic: {
          ClassTally& t = out.per_class[class_key[s]];
          t.area += weight;
          t.contribution += weight * r.f;
          out.periodic_area += weight;
          break;
        }
        case Classification::bad:
          out.bad_area += weight;
          out.bad_contribution += weight * r.f;
          out.bad_contribution_bound += weight * r.bound;
          break;
      }
    }
  }
  out.value = pairwise_sum(strip_values);
  out.std_error = std::sqrt(pairwise_sum(strip_variances));
  out.samples = static_cast<long long>(strips.size() * n);
  return out;
}

double deficiency(const CountingQM& q) {
  return homogenized(q, Word::parse("a")) + homogenized(q, Word::parse("b")) -
         homogenized(q, Word::parse("ab"));
}

RhoPrediction rho_predicted(const Scenario& sc, const CountingQM& q) {
  RhoPrediction out;
  for (const StripSpec& s : sc.strips()) {
    out.value += homogenized(q, signed_class(s)) * profile_of(s).ramp() / sc.m();
  }
  out.error_radius = sc.validation().bad_area_budget * kBadContributionPerArea;
  return out;
}

}  // namespace qmflow
