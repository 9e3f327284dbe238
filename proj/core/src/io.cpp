#include "odmts/io.hpp"

#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include "odmts/csv.hpp"
#include "odmts/errors.hpp"

namespace odmts {

namespace {

std::vector<RailMembership> parse_rail_lines(const std::string& text, std::map<std::string, int>& next_position,
                                             const std::string& where) {
  std::vector<RailMembership> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ';')) {
    if (item.empty()) continue;
    RailMembership m;
    const auto colon = item.find(':');
    if (colon == std::string::npos) {
      m.line = item;
      m.position = next_position[item]++;
    } else {
      m.line = item.substr(0, colon);
      try {
        m.position = std::stoi(item.substr(colon + 1));
      } catch (const std::exception&) {
        throw InputError(where + ": bad rail_line entry '" + item + "'");
      }
      next_position[m.line] = std::max(next_position[m.line], m.position + 1);
    }
    out.push_back(std::move(m));
  }
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  return in;
}

}  // namespace

std::vector<Location> parse_locations(std::istream& in, const std::string& source) {
  const CsvTable t = CsvTable::parse(in, source);
  const auto c_id = t.column("id");
  const auto c_lat = t.column("lat");
  const auto c_lon = t.column("lon");
  const auto c_hub = t.column("is_hub");
  const auto c_rail = t.column("is_rail_station");
  const bool has_line = t.has_column("rail_line");
  std::map<std::string, int> next_position;
  std::vector<Location> out;
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    Location loc;
    loc.id = LocationId(out.size());
    loc.name = t.text(r, c_id);
    if (loc.name.empty()) throw InputError(source + ":" + std::to_string(t.line(r)) + ": empty id");
    loc.lat = t.number(r, c_lat);
    loc.lon = t.number(r, c_lon);
    loc.is_hub = t.boolean(r, c_hub);
    loc.is_rail_station = t.boolean(r, c_rail);
    if (has_line) {
      loc.rail_lines = parse_rail_lines(t.text(r, t.column("rail_line")), next_position,
                                        source + ":" + std::to_string(t.line(r)));
    }
    if (loc.is_rail_station && !loc.is_hub) {
      throw InputError(source + ":" + std::to_string(t.line(r)) + ": rail station '" + loc.name + "' must be a hub");
    }
    if (!loc.rail_lines.empty() && !loc.is_rail_station) {
      throw InputError(source + ":" + std::to_string(t.line(r)) + ": '" + loc.name + "' has a rail line but is not a station");
    }
    out.push_back(std::move(loc));
  }
  return out;
}

std::vector<Location> read_locations(const std::string& path) {
  auto in = open_input(path);
  return parse_locations(in, path);
}

void write_locations(std::ostream& out, std::span<const Location> locations) {
  CsvWriter w(out);
  w.row({"id", "lat", "lon", "is_hub", "is_rail_station", "rail_line"});
  for (const auto& loc : locations) {
    std::string lines;
    for (const auto& m : loc.rail_lines) {
      if (!lines.empty()) lines += ';';
      lines += m.line + ":" + std::to_string(m.position);
    }
    w.row({loc.name, format_number(loc.lat), format_number(loc.lon), loc.is_hub ? "1" : "0",
           loc.is_rail_station ? "1" : "0", lines});
  }
}

LocationIndex::LocationIndex(std::span<const Location> locations) {
  for (std::size_t i = 0; i < locations.size(); ++i) {
    names_.push_back(locations[i].name);
    if (!ids_.emplace(locations[i].name, LocationId(i)).second) {
      throw InputError("duplicate location id '" + locations[i].name + "'");
    }
  }
}

LocationId LocationIndex::at(const std::string& name, const std::string& context) const {
  auto it = ids_.find(name);
  if (it == ids_.end()) throw InputError(context + ": unknown location '" + name + "'");
  return it->second;
}

std::vector<Trip> parse_trips(std::istream& in, const std::string& source, const LocationIndex& index) {
  const CsvTable t = CsvTable::parse(in, source);
  const auto c_id = t.column("id");
  const auto c_o = t.column("origin");
  const auto c_d = t.column("dest");
  const auto c_p = t.column("passengers");
  const auto c_t = t.column("request_time_s");
  std::vector<Trip> out;
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    const std::string where = source + ":" + std::to_string(t.line(r));
    Trip trip;
    trip.id = TripId(out.size());
    trip.name = t.text(r, c_id);
    trip.origin = index.at(t.text(r, c_o), where);
    trip.dest = index.at(t.text(r, c_d), where);
    trip.passengers = static_cast<int>(t.integer(r, c_p));
    trip.request_time_s = t.number(r, c_t);
    if (trip.passengers < 1) throw InputError(where + ": passengers must be at least 1");
    if (trip.origin == trip.dest) throw InputError(where + ": origin equals destination");
    out.push_back(std::move(trip));
  }
  return out;
}

std::vector<Trip> read_trips(const std::string& path, const LocationIndex& index) {
  auto in = open_input(path);
  return parse_trips(in, path, index);
}

void write_trips(std::ostream& out, std::span<const Trip> trips, const LocationIndex& index) {
  CsvWriter w(out);
  w.row({"id", "origin", "dest", "passengers", "request_time_s"});
  for (const Trip& t : trips) {
    w.row({t.name, index.name(t.origin), index.name(t.dest), std::to_string(t.passengers),
           format_number(t.request_time_s)});
  }
}

TravelMatrix parse_matrix(std::istream& in, const std::string& source, const LocationIndex& index) {
  const CsvTable t = CsvTable::parse(in, source);
  const auto c_o = t.column("origin");
  const auto c_d = t.column("dest");
  const auto c_s = t.column("seconds");
  const auto c_m = t.column("miles");
  TravelMatrix matrix(index.size());
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    const std::string where = source + ":" + std::to_string(t.line(r));
    const double s = t.number(r, c_s);
    const double m = t.number(r, c_m);
    if (s < 0 || m < 0) throw InputError(where + ": negative travel time or distance");
    matrix.set(index.at(t.text(r, c_o), where), index.at(t.text(r, c_d), where), {s, m});
  }
  return matrix;
}

TravelMatrix read_matrix(const std::string& path, const LocationIndex& index) {
  auto in = open_input(path);
  return parse_matrix(in, path, index);
}

void write_matrix(std::ostream& out, const TravelMatrix& matrix, const LocationIndex& index) {
  CsvWriter w(out);
  w.row({"origin", "dest", "seconds", "miles"});
  for (std::size_t i = 0; i < index.size(); ++i) {
    for (std::size_t j = 0; j < index.size(); ++j) {
      if (i == j) continue;
      auto e = matrix.find(LocationId(i), LocationId(j));
      if (!e) continue;
      w.row({index.name(LocationId(i)), index.name(LocationId(j)), format_number(e->seconds), format_number(e->miles)});
    }
  }
}

}  // namespace odmts
