#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "citytess/geo.hpp"

namespace citytess {

// One demand or supply record.
struct GpsEvent {
    double lat = 0.0;
    double lon = 0.0;
    std::int64_t ts = 0; // unix seconds, UTC

    bool operator==(const GpsEvent&) const = default;
};

// Column mapping and conventions of the delimiter-separated input. Defaults
// match the public NYC yellow-taxi release.
struct CsvSchema {
    std::string time_col = "pickup_datetime";
    std::string lat_col = "pickup_latitude";
    std::string lon_col = "pickup_longitude";
    char delimiter = ',';
    // Fixed offset of the input timestamps from UTC, seconds; timestamps are
    // normalized to UTC at parse time.
    std::int64_t utc_offset_seconds = 0;
};

struct ParseStats {
    std::size_t total_rows = 0; // data rows seen (header excluded)
    std::size_t kept = 0;
    std::size_t dropped = 0;
    std::map<std::string, std::size_t> drop_reasons;
};

struct EventSet {
    std::vector<GpsEvent> events; // sorted by timestamp ascending
    BBox bbox;
    TimeWindow window;

    std::size_t size() const { return events.size(); }
    bool empty() const { return events.empty(); }
};

// Parses delimiter-separated text with a header row. Rows that fail
// validation (bad coordinates, unparseable timestamps, the (0,0) GPS null
// sentinel) are dropped and counted, never fatal; a missing mapped column is.
EventSet parse_events(std::istream& in, const CsvSchema& schema, ParseStats* stats = nullptr);
EventSet load_events(const std::string& path, const CsvSchema& schema, ParseStats* stats = nullptr);

// Writes an EventSet back in the input format; parse(write(E)) == E.
void write_events(std::ostream& out, const EventSet& set, const CsvSchema& schema);

// Events inside both bounds, order preserved; the result carries the bounds.
EventSet filter_window(const EventSet& set, const BBox& bbox, const TimeWindow& window);

// "YYYY-MM-DD HH:MM:SS" (also accepts a 'T' separator and trailing 'Z').
std::int64_t parse_timestamp(const std::string& text);
std::string format_timestamp(std::int64_t ts);

} // namespace citytess
