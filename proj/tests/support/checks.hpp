#pragma once

#include <optional>
#include <random>
#include <sstream>
#include <string>

#include "svcrisk/metrics.hpp"
#include "svcrisk/scenario.hpp"

namespace check {

// a <= b up to accumulated rounding of the sums involved.
inline bool not_greater(double a, double b) { return a <= b * (1.0 + 1e-12) + 1e-15; }

// First metric entry of `lower` that exceeds its counterpart in `upper`, if any.
inline std::optional<std::string> first_increase(const svcrisk::MetricsReport& upper,
                                                 const svcrisk::MetricsReport& lower) {
  for (svcrisk::Metric m : svcrisk::kAllMetrics) {
    const auto& hi = svcrisk::values(upper, m);
    for (const auto& [subject, value] : svcrisk::values(lower, m)) {
      auto it = hi.find(subject);
      const double bound = it == hi.end() ? 0.0 : it->second;
      if (!not_greater(value, bound)) {
        std::ostringstream out;
        out.precision(17);
        out << to_string(m) << "[" << subject << "] rose from " << bound << " to " << value;
        return out.str();
      }
    }
  }
  return std::nullopt;
}

// Lowers one exploitability (catalog entry or per-vector scale) or one link weight at random.
inline std::string lower_one(std::mt19937_64& rng, svcrisk::CombinedModel& model) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double keep = unit(rng) < 0.2 ? 0.0 : unit(rng);
  const int choice = std::uniform_int_distribution<int>(0, 2)(rng);
  if (choice == 0 && !model.network.edges.empty()) {
    auto& e = model.network.edges[rng() % model.network.edges.size()];
    e.weight *= keep;
    return "weight " + e.a + "-" + e.b;
  }
  if (choice == 1) {
    auto& v = model.attack.catalog[rng() % model.attack.catalog.size()];
    v.exploitability *= keep;
    return "exploitability " + v.id;
  }
  auto& v = model.attack.vectors[rng() % model.attack.vectors.size()];
  v.exploit_scale *= keep;
  return "scale " + v.id;
}

}  // namespace check
