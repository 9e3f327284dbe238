#include "odmts/travel_matrix.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "odmts/errors.hpp"

namespace odmts {

namespace {
constexpr double kMissing = std::numeric_limits<double>::quiet_NaN();
constexpr double kEarthRadiusMiles = 3958.8;
}  // namespace

TravelMatrix::TravelMatrix(std::size_t location_count)
    : n_(location_count), seconds_(n_ * n_, kMissing), miles_(n_ * n_, kMissing) {
  for (std::size_t i = 0; i < n_; ++i) {
    seconds_[i * n_ + i] = 0.0;
    miles_[i * n_ + i] = 0.0;
  }
}

TravelMatrix TravelMatrix::from_coordinates(std::span<const Location> locations, double speed_mph,
                                            double circuity) {
  if (!(speed_mph > 0.0)) throw DomainError("speed must be positive");
  TravelMatrix matrix(locations.size());
  for (const auto& a : locations) {
    for (const auto& b : locations) {
      if (a.id == b.id) continue;
      // Distinct locations never coincide in time; keep a one-second floor.
      const double miles = haversine_miles(a, b) * circuity;
      const double seconds = std::max(1.0, std::round(miles / speed_mph * kSecondsPerHour));
      matrix.set(a.id, b.id, {seconds, miles});
    }
  }
  return matrix;
}

void TravelMatrix::set(LocationId from, LocationId to, TravelEntry entry) {
  if (from.index() >= n_ || to.index() >= n_) throw InputError("travel matrix index out of range");
  if (entry.seconds < 0.0 || entry.miles < 0.0) throw InputError("travel time and distance must be nonnegative");
  seconds_[from.index() * n_ + to.index()] = entry.seconds;
  miles_[from.index() * n_ + to.index()] = entry.miles;
}

std::optional<TravelEntry> TravelMatrix::find(LocationId from, LocationId to) const {
  if (from.index() >= n_ || to.index() >= n_) return std::nullopt;
  const std::size_t k = from.index() * n_ + to.index();
  if (std::isnan(seconds_[k])) return std::nullopt;
  return TravelEntry{seconds_[k], miles_[k]};
}

TravelEntry TravelMatrix::at(LocationId from, LocationId to) const {
  auto entry = find(from, to);
  if (!entry) {
    throw InputError("missing travel time/distance for pair (" + std::to_string(from.value) + ", " +
                     std::to_string(to.value) + ")");
  }
  return *entry;
}

double haversine_miles(double lat1, double lon1, double lat2, double lon2) {
  constexpr double rad = std::numbers::pi / 180.0;
  const double dlat = (lat2 - lat1) * rad;
  const double dlon = (lon2 - lon1) * rad;
  const double h = std::sin(dlat / 2) * std::sin(dlat / 2) +
                   std::cos(lat1 * rad) * std::cos(lat2 * rad) * std::sin(dlon / 2) * std::sin(dlon / 2);
  return 2.0 * kEarthRadiusMiles * std::asin(std::min(1.0, std::sqrt(h)));
}

double haversine_miles(const Location& a, const Location& b) { return haversine_miles(a.lat, a.lon, b.lat, b.lon); }

}  // namespace odmts
