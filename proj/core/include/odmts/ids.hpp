#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>

namespace odmts {

/// Dense index into one of the model's tables, tagged so that a location
/// index cannot be passed where an arc index is expected.
template <class Tag>
struct Id {
  std::int32_t value = -1;

  constexpr Id() = default;
  constexpr explicit Id(std::int32_t v) : value(v) {}
  constexpr explicit Id(std::size_t v) : value(static_cast<std::int32_t>(v)) {}

  [[nodiscard]] constexpr bool valid() const { return value >= 0; }
  [[nodiscard]] constexpr std::size_t index() const { return static_cast<std::size_t>(value); }

  friend constexpr auto operator<=>(Id, Id) = default;
};

struct LocationTag {};
struct ArcTag {};
struct TripTag {};

using LocationId = Id<LocationTag>;
using ArcId = Id<ArcTag>;
using TripId = Id<TripTag>;

}  // namespace odmts

template <class Tag>
struct std::hash<odmts::Id<Tag>> {
  std::size_t operator()(odmts::Id<Tag> id) const noexcept {
    return std::hash<std::int32_t>{}(id.value);
  }
};
