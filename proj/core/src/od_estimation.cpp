#include "odmts/od_estimation.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <tuple>

#include "odmts/errors.hpp"
#include "odmts/travel_matrix.hpp"
#include "parallel.hpp"
#include "random.hpp"

namespace odmts {

std::string_view to_string(TransactionKind kind) {
  switch (kind) {
    case TransactionKind::BusBoard:
      return "bus_board";
    case TransactionKind::RailEntry:
      return "rail_entry";
    case TransactionKind::RailExit:
      return "rail_exit";
  }
  return "?";
}

std::optional<TransactionKind> parse_transaction_kind(std::string_view text) {
  for (auto k : {TransactionKind::BusBoard, TransactionKind::RailEntry, TransactionKind::RailExit}) {
    if (text == to_string(k)) return k;
  }
  return std::nullopt;
}

std::vector<Leg> group_legs(std::span<const Transaction> transactions, OdDiagnostics* diag) {
  OdDiagnostics local;
  OdDiagnostics& d = diag ? *diag : local;
  d.transactions += static_cast<int>(transactions.size());
  std::vector<const Transaction*> sorted;
  for (const auto& t : transactions) {
    if (!t.card_id.empty()) sorted.push_back(&t);
  }
  std::stable_sort(sorted.begin(), sorted.end(), [](const Transaction* a, const Transaction* b) {
    return std::tie(a->card_id, a->time_s) < std::tie(b->card_id, b->time_s);
  });

  std::vector<Leg> legs;
  const Transaction* entry = nullptr;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const Transaction& t = *sorted[i];
    if (i > 0 && sorted[i - 1]->card_id != t.card_id && entry) {
      ++d.unmatched_entries;
      entry = nullptr;
    }
    switch (t.kind) {
      case TransactionKind::BusBoard: {
        Leg leg;
        leg.card_id = t.card_id;
        leg.mode = Mode::Bus;
        leg.route = t.route;
        leg.board = t.terminal;
        leg.board_time_s = t.time_s;
        legs.push_back(std::move(leg));
        break;
      }
      case TransactionKind::RailEntry:
        if (entry) ++d.unmatched_entries;
        entry = &t;
        break;
      case TransactionKind::RailExit:
        if (!entry) {
          ++d.unmatched_exits;
          break;
        }
        Leg leg;
        leg.card_id = t.card_id;
        leg.mode = Mode::Rail;
        leg.board = entry->terminal;
        leg.board_time_s = entry->time_s;
        leg.alight = t.terminal;
        leg.alight_time_s = t.time_s;
        legs.push_back(std::move(leg));
        entry = nullptr;
        break;
    }
  }
  if (entry) ++d.unmatched_entries;
  std::stable_sort(legs.begin(), legs.end(), [](const Leg& a, const Leg& b) {
    return std::tie(a.card_id, a.board_time_s) < std::tie(b.card_id, b.board_time_s);
  });
  d.legs += static_cast<int>(legs.size());
  return legs;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

struct RouteStop {
  LocationId stop;
  int sequence = 0;
  long boardings = 0;
  long alightings = 0;
};

struct RouteInfo {
  std::vector<RouteStop> stops;  // by sequence

  const RouteStop* find(LocationId s) const {
    for (const auto& r : stops) {
      if (r.stop == s) return &r;
    }
    return nullptr;
  }

  std::vector<const RouteStop*> candidates(LocationId board) const {
    std::vector<const RouteStop*> out;
    if (const RouteStop* b = find(board)) {
      for (const auto& r : stops) {
        if (r.sequence > b->sequence) out.push_back(&r);
      }
    }
    if (out.empty()) {
      for (const auto& r : stops) {
        if (r.stop != board) out.push_back(&r);
      }
    }
    return out;
  }
};

struct Journey {
  LocationId origin;
  LocationId dest;
  double time_s = 0.0;
};

struct CardOutcome {
  std::vector<Journey> journeys;
  int from_next = 0;
  int sampled = 0;
  int uniform = 0;
  int unresolved = 0;
  std::set<std::string> fallback_routes;
};

class Resolver {
 public:
  Resolver(std::span<const ApcRecord> apc, std::span<const Location> locations, std::uint64_t seed)
      : locations_(locations), seed_(seed) {
    std::map<std::string, std::map<int, RouteStop>> acc;
    for (const auto& r : apc) {
      if (r.boardings < 0 || r.alightings < 0) throw InputError("passenger counts must be nonnegative");
      if (r.stop.index() >= locations.size()) throw InputError("passenger-counter record at unknown stop");
      auto& stop = acc[r.route][r.sequence];
      if (stop.stop.valid() && stop.stop != r.stop) {
        throw InputError("route '" + r.route + "' has two stops at sequence " + std::to_string(r.sequence));
      }
      stop.stop = r.stop;
      stop.sequence = r.sequence;
      stop.boardings += r.boardings;
      stop.alightings += r.alightings;
    }
    for (auto& [name, stops] : acc) {
      auto& info = routes_[name];
      for (auto& [seq, s] : stops) info.stops.push_back(s);
    }
  }

  const RouteInfo* route(const std::string& name) const {
    auto it = routes_.find(name);
    return it == routes_.end() ? nullptr : &it->second;
  }

  const std::map<std::string, RouteInfo>& routes() const { return routes_; }

  /// Stop nearest to `target` among the candidates; ties go to the lower sequence.
  std::optional<LocationId> nearest(const std::string& route, LocationId board, LocationId target) const {
    const RouteInfo* info = this->route(route);
    if (!info) return std::nullopt;
    std::optional<LocationId> best;
    double best_d = 0.0;
    for (const RouteStop* c : info->candidates(board)) {
      const double d = haversine_miles(locations_[c->stop.index()], locations_[target.index()]);
      if (!best || d < best_d) {
        best = c->stop;
        best_d = d;
      }
    }
    return best;
  }

  /// Draw from the route's alighting distribution over the candidates.
  std::optional<LocationId> sample(const std::string& route, LocationId board, std::uint64_t key,
                                   CardOutcome& out) const {
    const RouteInfo* info = this->route(route);
    if (!info) return std::nullopt;
    const auto cands = info->candidates(board);
    if (cands.empty()) return std::nullopt;
    detail::SplitMix64 rng(detail::mix_seed(seed_, key));
    long total = 0;
    for (const auto* c : cands) total += c->alightings;
    if (total == 0) {
      ++out.uniform;
      out.fallback_routes.insert(route);
      return cands[rng.below(cands.size())]->stop;
    }
    ++out.sampled;
    long pick = static_cast<long>(rng.below(static_cast<std::uint64_t>(total)));
    for (const auto* c : cands) {
      if (pick < c->alightings) return c->stop;
      pick -= c->alightings;
    }
    return cands.back()->stop;
  }

 private:
  std::span<const Location> locations_;
  std::uint64_t seed_;
  std::map<std::string, RouteInfo> routes_;
};

CardOutcome chain_card(std::span<const Leg> legs, const Resolver& resolver, const OdOptions& opt) {
  CardOutcome out;
  std::vector<Leg> resolved;
  for (std::size_t i = 0; i < legs.size(); ++i) {
    Leg leg = legs[i];
    if (!leg.alight) {
      if (legs.size() >= 2) {
        const Leg& next = legs[(i + 1) % legs.size()];
        leg.alight = resolver.nearest(leg.route, leg.board, next.board);
        if (leg.alight) ++out.from_next;
      } else {
        leg.alight = resolver.sample(leg.route, leg.board, fnv1a(leg.card_id) ^ (i * 0x9E3779B97F4A7C15ULL), out);
      }
    }
    if (!leg.alight) {
      ++out.unresolved;
      continue;
    }
    resolved.push_back(std::move(leg));
  }
  for (std::size_t i = 0; i < resolved.size();) {
    Journey j;
    j.origin = resolved[i].board;
    j.time_s = resolved[i].board_time_s;
    std::size_t k = i;
    while (k + 1 < resolved.size()) {
      const Leg& prev = resolved[k];
      const double end = prev.alight_time_s.value_or(prev.board_time_s);
      if (resolved[k + 1].board_time_s - end > opt.transfer_window_s) break;
      ++k;
    }
    j.dest = *resolved[k].alight;
    out.journeys.push_back(j);
    i = k + 1;
  }
  return out;
}

}  // namespace

OdResult chain_trips(std::span<const Leg> legs, std::span<const ApcRecord> apc, std::span<const Location> locations,
                     const OdOptions& options) {
  if (!(options.bucket_s > 0.0)) throw DomainError("time bucket must be positive");
  if (options.transfer_window_s < 0.0) throw DomainError("transfer window must be nonnegative");
  for (const auto& l : legs) {
    if (l.board.index() >= locations.size() || (l.alight && l.alight->index() >= locations.size())) {
      throw InputError("leg of card '" + l.card_id + "' references an unknown location");
    }
  }
  const Resolver resolver(apc, locations, options.seed);

  std::vector<std::pair<std::size_t, std::size_t>> cards;  // [begin, end) into sorted legs
  std::vector<Leg> sorted(legs.begin(), legs.end());
  std::stable_sort(sorted.begin(), sorted.end(), [](const Leg& a, const Leg& b) {
    return std::tie(a.card_id, a.board_time_s) < std::tie(b.card_id, b.board_time_s);
  });
  for (std::size_t i = 0; i < sorted.size();) {
    std::size_t j = i;
    while (j < sorted.size() && sorted[j].card_id == sorted[i].card_id) ++j;
    cards.emplace_back(i, j);
    i = j;
  }
  std::vector<CardOutcome> outcomes(cards.size());
  detail::parallel_for(cards.size(), options.threads, [&](std::size_t c) {
    outcomes[c] = chain_card(std::span<const Leg>(sorted).subspan(cards[c].first, cards[c].second - cards[c].first),
                             resolver, options);
  });

  // Cash riders: counter boardings beyond card boardings at each route stop.
  std::map<std::pair<std::string, int>, long> card_boards;
  for (const auto& l : sorted) {
    if (l.mode == Mode::Bus) ++card_boards[{l.route, l.board.value}];
  }
  CardOutcome cash;
  for (const auto& [route, info] : resolver.routes()) {
    for (const auto& stop : info.stops) {
      const long excess = stop.boardings - card_boards[{route, stop.stop.value}];
      if (excess <= 0) continue;
      std::vector<const ApcRecord*> recs;
      for (const auto& r : apc) {
        if (r.route == route && r.stop == stop.stop && r.boardings > 0) recs.push_back(&r);
      }
      std::stable_sort(recs.begin(), recs.end(), [](auto* a, auto* b) { return a->time_s < b->time_s; });
      // Largest remainder over the records' boardings.
      std::vector<long> share(recs.size());
      std::vector<std::pair<double, std::size_t>> rest;
      long given = 0;
      for (std::size_t r = 0; r < recs.size(); ++r) {
        const double exact = static_cast<double>(excess) * recs[r]->boardings / static_cast<double>(stop.boardings);
        share[r] = static_cast<long>(std::floor(exact));
        given += share[r];
        rest.emplace_back(-(exact - share[r]), r);
      }
      std::sort(rest.begin(), rest.end());
      for (std::size_t k = 0; given < excess; ++k, ++given) ++share[rest[k % rest.size()].second];
      long n = 0;
      for (std::size_t r = 0; r < recs.size(); ++r) {
        for (long s = 0; s < share[r]; ++s, ++n) {
          const std::string key = "cash|" + route + "|" + std::to_string(stop.stop.value) + "|" + std::to_string(n);
          auto alight = resolver.sample(route, stop.stop, fnv1a(key), cash);
          if (!alight) {
            ++cash.unresolved;
            continue;
          }
          cash.journeys.push_back({stop.stop, *alight, recs[r]->time_s});
        }
      }
    }
  }
  outcomes.push_back(std::move(cash));

  OdResult result;
  OdDiagnostics& d = result.diagnostics;
  std::map<std::tuple<long, int, int>, int> cells;
  std::set<std::string> fallback;
  for (std::size_t c = 0; c < outcomes.size(); ++c) {
    const auto& o = outcomes[c];
    d.alight_from_next_boarding += o.from_next;
    d.alight_sampled += o.sampled;
    d.alight_uniform_fallback += o.uniform;
    d.unresolved_legs += o.unresolved;
    fallback.insert(o.fallback_routes.begin(), o.fallback_routes.end());
    if (c + 1 == outcomes.size()) d.cash_riders = static_cast<int>(o.journeys.size()) + o.unresolved;
    for (const auto& j : o.journeys) {
      ++d.journeys;
      if (j.origin == j.dest) {
        ++d.zero_length_journeys;
        continue;
      }
      ++cells[{static_cast<long>(std::floor(j.time_s / options.bucket_s)), j.origin.value, j.dest.value}];
    }
  }
  d.fallback_routes.assign(fallback.begin(), fallback.end());
  for (const auto& [key, count] : cells) {
    Trip t;
    t.id = TripId(result.trips.size());
    t.name = "od" + std::to_string(result.trips.size() + 1);
    t.origin = LocationId(std::get<1>(key));
    t.dest = LocationId(std::get<2>(key));
    t.passengers = count;
    t.request_time_s = static_cast<double>(std::get<0>(key)) * options.bucket_s;
    result.trips.push_back(t);
    d.passengers += count;
  }
  d.trips = static_cast<int>(result.trips.size());
  return result;
}

OdResult estimate_od(std::span<const Transaction> transactions, std::span<const ApcRecord> apc,
                     std::span<const Location> locations, const OdOptions& options) {
  OdDiagnostics grouping;
  const auto legs = group_legs(transactions, &grouping);
  OdResult r = chain_trips(legs, apc, locations, options);
  r.diagnostics.transactions = grouping.transactions;
  r.diagnostics.legs = grouping.legs;
  r.diagnostics.unmatched_exits = grouping.unmatched_exits;
  r.diagnostics.unmatched_entries = grouping.unmatched_entries;
  return r;
}

}  // namespace odmts
