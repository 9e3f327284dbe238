#include "odmts/model.hpp"

#include <string>

#include "odmts/errors.hpp"

namespace odmts {

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Shuttle:
      return "shuttle";
    case Mode::Bus:
      return "bus";
    case Mode::Rail:
      return "rail";
  }
  return "unknown";
}

std::optional<Mode> parse_mode(std::string_view text) {
  if (text == "shuttle") return Mode::Shuttle;
  if (text == "bus") return Mode::Bus;
  if (text == "rail") return Mode::Rail;
  return std::nullopt;
}

void DesignParameters::validate() const {
  if (!(alpha >= 0.0 && alpha <= 1.0)) throw DomainError("alpha must lie in [0, 1]");
  if (transfer_limit < 1) throw DomainError("transfer limit K must be at least 1");
  if (!(horizon_s > 0.0)) throw DomainError("horizon must be positive");
  if (extended_horizon_s < horizon_s) throw DomainError("extended horizon must be at least the horizon");
  if (bus_cost_per_hour < 0.0 || shuttle_cost_per_hour < 0.0 || shuttle_cost_per_mile < 0.0) {
    throw DomainError("costs must be nonnegative");
  }
}

double alpha_from_value_of_time(double dollars_per_hour) {
  if (dollars_per_hour < 0.0) throw DomainError("value of time must be nonnegative");
  return dollars_per_hour / (1.0 + dollars_per_hour);
}

}  // namespace odmts
