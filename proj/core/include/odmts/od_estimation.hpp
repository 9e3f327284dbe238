#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "odmts/model.hpp"

namespace odmts {

enum class TransactionKind { BusBoard, RailEntry, RailExit };

[[nodiscard]] std::string_view to_string(TransactionKind kind);
[[nodiscard]] std::optional<TransactionKind> parse_transaction_kind(std::string_view text);

/// One fare-card tap. `route` is set for bus boardings.
struct Transaction {
  std::string card_id;  // empty for cash
  double time_s = 0.0;
  LocationId terminal;
  TransactionKind kind = TransactionKind::BusBoard;
  std::string route;
};

/// Passenger-counter tally at a stop of a bus route. `sequence` orders the
/// stops along the route.
struct ApcRecord {
  LocationId stop;
  std::string route;
  int sequence = 0;
  double time_s = 0.0;
  int boardings = 0;
  int alightings = 0;
};

struct Leg {
  std::string card_id;
  Mode mode = Mode::Bus;
  std::string route;
  LocationId board;
  double board_time_s = 0.0;
  std::optional<LocationId> alight;
  std::optional<double> alight_time_s;
};

struct OdOptions {
  double transfer_window_s = 45 * 60.0;
  double bucket_s = 15 * 60.0;
  std::uint64_t seed = 1;
  int threads = 0;
};

struct OdDiagnostics {
  int transactions = 0;
  int legs = 0;
  int unmatched_exits = 0;
  int unmatched_entries = 0;
  int alight_from_next_boarding = 0;
  int alight_sampled = 0;
  int alight_uniform_fallback = 0;
  int unresolved_legs = 0;
  int cash_riders = 0;
  int journeys = 0;
  int zero_length_journeys = 0;
  int passengers = 0;
  int trips = 0;
  std::vector<std::string> fallback_routes;  // routes with no usable alighting counts
};

struct OdResult {
  std::vector<Trip> trips;
  OdDiagnostics diagnostics;
};

/// Pairs rail entries with the next exit of the same card and turns bus
/// boardings into legs with unknown alighting. Cash taps are ignored here.
[[nodiscard]] std::vector<Leg> group_legs(std::span<const Transaction> transactions, OdDiagnostics* diag = nullptr);

/// Fills unknown bus alightings, chains legs into journeys, adds cash riders
/// from passenger-counter excess and aggregates into trips by
/// (origin, destination, time bucket). Deterministic for a given seed.
[[nodiscard]] OdResult chain_trips(std::span<const Leg> legs, std::span<const ApcRecord> apc,
                                   std::span<const Location> locations, const OdOptions& options = {});

/// group_legs followed by chain_trips.
[[nodiscard]] OdResult estimate_od(std::span<const Transaction> transactions, std::span<const ApcRecord> apc,
                                   std::span<const Location> locations, const OdOptions& options = {});

}  // namespace odmts
