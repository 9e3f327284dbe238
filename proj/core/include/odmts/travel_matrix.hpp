#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "odmts/ids.hpp"
#include "odmts/model.hpp"

namespace odmts {

struct TravelEntry {
  double seconds = 0.0;
  double miles = 0.0;
};

/// Door-to-door road travel times and distances between locations.
/// Missing pairs are representable; the diagonal is always zero.
class TravelMatrix {
 public:
  TravelMatrix() = default;
  explicit TravelMatrix(std::size_t location_count);

  /// Synthetic matrix from great-circle distance scaled by a circuity factor.
  static TravelMatrix from_coordinates(std::span<const Location> locations, double speed_mph,
                                       double circuity = 1.3);

  void set(LocationId from, LocationId to, TravelEntry entry);
  [[nodiscard]] std::optional<TravelEntry> find(LocationId from, LocationId to) const;

  /// Throws InputError naming the pair when it is missing.
  [[nodiscard]] TravelEntry at(LocationId from, LocationId to) const;
  [[nodiscard]] double seconds(LocationId from, LocationId to) const { return at(from, to).seconds; }
  [[nodiscard]] double miles(LocationId from, LocationId to) const { return at(from, to).miles; }

  [[nodiscard]] std::size_t size() const { return n_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> seconds_;
  std::vector<double> miles_;
};

/// Great-circle distance in miles.
[[nodiscard]] double haversine_miles(double lat1, double lon1, double lat2, double lon2);
[[nodiscard]] double haversine_miles(const Location& a, const Location& b);

}  // namespace odmts
