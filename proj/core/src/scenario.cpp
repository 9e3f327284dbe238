#include "odmts/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "odmts/errors.hpp"
#include "random.hpp"

namespace odmts {

void Scenario::validate() const {
  if (!(ridership_fraction > 0.0 && ridership_fraction <= 1.0)) {
    throw DomainError("scenario '" + name + "': ridership fraction must be in (0, 1]");
  }
  if (shuttle_capacity < 1) throw DomainError("scenario '" + name + "': shuttle capacity must be at least 1");
  if (bus_capacity_scale < 0.0 || rail_capacity_scale < 0.0) {
    throw DomainError("scenario '" + name + "': capacity scales must be nonnegative");
  }
  if (!(fare_share > 0.0 && fare_share < 1.0)) throw DomainError("scenario '" + name + "': fare share must be in (0, 1)");
}

void CostModel::validate() const {
  const double values[] = {bus_wages, bus_fringe, bus_maintenance_per_hour, bus_price, shuttle_wages, shuttle_fringe,
                           shuttle_maintenance_per_mile, shuttle_miles_per_hour, shuttle_price, fringe_rate,
                           bus_cleaning_per_hour, shuttle_cleaning_per_hour, opex_share, capex_share};
  for (double v : values) {
    if (v < 0.0) throw DomainError("cost model components must be nonnegative");
  }
}

HourlyCost hourly_cost_breakdown(Mode mode, const CostModel& m, bool cleaning) {
  HourlyCost c;
  if (mode == Mode::Bus) {
    if (m.bus_life_years <= 0.0 || m.bus_revenue_hours_per_year <= 0.0) {
      throw DomainError("bus depreciation needs positive life and revenue hours");
    }
    c.wages = m.bus_wages;
    c.fringe = m.bus_fringe;
    c.maintenance = m.bus_maintenance_per_hour;
    c.depreciation = m.bus_price / (m.bus_life_years * m.bus_revenue_hours_per_year);
    c.cleaning = cleaning ? m.bus_cleaning_per_hour : 0.0;
  } else if (mode == Mode::Shuttle) {
    if (m.shuttle_life_years <= 0.0 || m.shuttle_revenue_hours_per_year <= 0.0) {
      throw DomainError("shuttle depreciation needs positive life and revenue hours");
    }
    c.wages = m.shuttle_wages;
    c.fringe = m.shuttle_fringe;
    c.maintenance = m.shuttle_maintenance_per_mile * m.shuttle_miles_per_hour;
    c.depreciation = m.shuttle_price / (m.shuttle_life_years * m.shuttle_revenue_hours_per_year);
    c.cleaning = cleaning ? m.shuttle_cleaning_per_hour : 0.0;
  } else {
    throw DomainError("vehicle hourly cost is defined for buses and shuttles only");
  }
  return c;
}

double vehicle_hourly_cost(Mode mode, const CostModel& model, bool cleaning) {
  return hourly_cost_breakdown(mode, model, cleaning).total();
}

double system_cost(int buses, int shuttles, double horizon_hours, const CostModel& model, bool cleaning) {
  if (buses < 0 || shuttles < 0 || horizon_hours < 0.0) throw DomainError("system cost inputs must be nonnegative");
  double total = 0.0;
  if (buses > 0) total += buses * vehicle_hourly_cost(Mode::Bus, model, cleaning);
  if (shuttles > 0) total += shuttles * vehicle_hourly_cost(Mode::Shuttle, model, cleaning);
  return total * horizon_hours;
}

double scenario_budget(double baseline_budget, double ridership_fraction, double fare_share, double opex_share) {
  if (baseline_budget < 0.0 || ridership_fraction < 0.0 || ridership_fraction > 1.0 || fare_share < 0.0 ||
      fare_share > 1.0 || opex_share < 0.0 || opex_share > 1.0) {
    throw DomainError("budget inputs out of range");
  }
  return baseline_budget * (1.0 - opex_share * fare_share * (1.0 - ridership_fraction));
}

int fit_fleet_to_budget(double budget, double bus_cost, double shuttle_hourly_cost, double horizon_hours) {
  if (budget < bus_cost) {
    throw DomainError("budget is below the bus subsystem cost; redesign with fewer bus arcs");
  }
  if (shuttle_hourly_cost <= 0.0 || horizon_hours <= 0.0) throw DomainError("shuttle cost and horizon must be positive");
  // Small slack so exact fits are not lost to rounding.
  return static_cast<int>(std::floor((budget - bus_cost) / (shuttle_hourly_cost * horizon_hours) + 1e-9));
}

std::vector<Trip> sample_demand(std::span<const Trip> trips, double fraction, std::uint64_t seed,
                                std::span<const int> strata) {
  if (!(fraction > 0.0 && fraction <= 1.0)) throw DomainError("sampling fraction must be in (0, 1]");
  if (!strata.empty() && strata.size() != trips.size()) throw DomainError("one stratum per trip is required");
  if (fraction == 1.0) return {trips.begin(), trips.end()};

  // Passenger units per stratum, in trip order.
  std::map<int, std::vector<std::size_t>> units;
  long total = 0;
  for (std::size_t t = 0; t < trips.size(); ++t) {
    auto& bucket = units[strata.empty() ? 0 : strata[t]];
    for (int p = 0; p < trips[t].passengers; ++p) bucket.push_back(t);
    total += trips[t].passengers;
  }
  const long target = std::lround(fraction * static_cast<double>(total));

  // Largest-remainder allocation of the target over strata.
  struct Share {
    int stratum;
    long take;
    double remainder;
  };
  std::vector<Share> shares;
  long allocated = 0;
  for (const auto& [s, list] : units) {
    const double exact = fraction * static_cast<double>(list.size());
    const long base = static_cast<long>(std::floor(exact));
    shares.push_back({s, base, exact - static_cast<double>(base)});
    allocated += base;
  }
  std::vector<std::size_t> order(shares.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return shares[a].remainder > shares[b].remainder;
  });
  for (std::size_t i = 0; allocated < target && i < order.size(); ++i, ++allocated) ++shares[order[i]].take;

  std::vector<int> kept(trips.size(), 0);
  for (const Share& s : shares) {
    auto list = units[s.stratum];
    detail::SplitMix64 rng(detail::mix_seed(seed, static_cast<std::uint64_t>(s.stratum) + 1));
    // Partial Fisher-Yates: the first `take` slots are the sample.
    for (long i = 0; i < s.take; ++i) {
      const auto j = static_cast<std::size_t>(i) + rng.below(list.size() - static_cast<std::size_t>(i));
      std::swap(list[static_cast<std::size_t>(i)], list[j]);
      ++kept[list[static_cast<std::size_t>(i)]];
    }
  }
  std::vector<Trip> out;
  for (std::size_t t = 0; t < trips.size(); ++t) {
    if (kept[t] == 0) continue;
    Trip trip = trips[t];
    trip.passengers = kept[t];
    out.push_back(trip);
  }
  return out;
}

}  // namespace odmts
