#include "citytess/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "citytess/errors.hpp"

namespace citytess {

namespace {

// Days since 1970-01-01 for a proleptic Gregorian date (Howard Hinnant's
// days_from_civil).
std::int64_t days_from_civil(std::int64_t y, int m, int d) {
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = static_cast<unsigned>((153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1);
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, int& m, int& d) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t yr = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    d = static_cast<int>(doy - (153 * mp + 2) / 5 + 1);
    m = static_cast<int>(mp + (mp < 10 ? 3 : -9));
    y = yr + (m <= 2);
}

bool parse_int_field(const std::string& s, std::size_t pos, std::size_t len, int& out) {
    if (pos + len > s.size()) return false;
    out = 0;
    for (std::size_t i = pos; i < pos + len; ++i) {
        if (s[i] < '0' || s[i] > '9') return false;
        out = out * 10 + (s[i] - '0');
    }
    return true;
}

bool try_parse_timestamp(const std::string& text, std::int64_t& out) {
    // YYYY-MM-DD[ T]HH:MM:SS with optional trailing 'Z'
    std::string s = text;
    if (!s.empty() && s.back() == 'Z') s.pop_back();
    if (s.size() != 19) return false;
    if (s[4] != '-' || s[7] != '-' || (s[10] != ' ' && s[10] != 'T') || s[13] != ':' ||
        s[16] != ':') {
        return false;
    }
    int year, month, day, hour, minute, second;
    if (!parse_int_field(s, 0, 4, year) || !parse_int_field(s, 5, 2, month) ||
        !parse_int_field(s, 8, 2, day) || !parse_int_field(s, 11, 2, hour) ||
        !parse_int_field(s, 14, 2, minute) || !parse_int_field(s, 17, 2, second)) {
        return false;
    }
    if (month < 1 || month > 12 || day < 1 || day > 31 || hour > 23 || minute > 59 ||
        second > 60) {
        return false;
    }
    out = days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second;
    return true;
}

bool try_parse_double(const std::string& s, double& out) {
    const char* begin = s.data();
    const char* end = s.data() + s.size();
    while (begin != end && std::isspace(static_cast<unsigned char>(*begin))) ++begin;
    while (end != begin && std::isspace(static_cast<unsigned char>(end[-1]))) --end;
    if (begin == end) return false;
    const auto [ptr, ec] = std::from_chars(begin, end, out);
    return ec == std::errc() && ptr == end && std::isfinite(out);
}

std::vector<std::string> split_line(const std::string& line, char delim) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == delim) {
            fields.emplace_back(line, start, i - start);
            start = i + 1;
        }
    }
    return fields;
}

std::string strip_cr(std::string line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    return line;
}

void finalize_bounds(EventSet& set) {
    if (set.events.empty()) {
        set.bbox = {};
        set.window = {};
        return;
    }
    set.bbox = {set.events[0].lat, set.events[0].lon, set.events[0].lat, set.events[0].lon};
    for (const GpsEvent& e : set.events) {
        set.bbox.min_lat = std::min(set.bbox.min_lat, e.lat);
        set.bbox.max_lat = std::max(set.bbox.max_lat, e.lat);
        set.bbox.min_lon = std::min(set.bbox.min_lon, e.lon);
        set.bbox.max_lon = std::max(set.bbox.max_lon, e.lon);
    }
    set.window = {set.events.front().ts, set.events.back().ts + 1};
}

} // namespace

std::int64_t parse_timestamp(const std::string& text) {
    std::int64_t ts;
    if (!try_parse_timestamp(text, ts)) {
        throw DataError("unparseable timestamp '" + text + "'");
    }
    return ts;
}

std::string format_timestamp(std::int64_t ts) {
    std::int64_t days = ts / 86400;
    std::int64_t rem = ts % 86400;
    if (rem < 0) {
        rem += 86400;
        --days;
    }
    std::int64_t y;
    int m, d;
    civil_from_days(days, y, m, d);
    char buf[32];
    std::snprintf(buf, sizeof buf, "%04lld-%02d-%02d %02d:%02d:%02d", static_cast<long long>(y), m,
                  d, static_cast<int>(rem / 3600), static_cast<int>(rem / 60 % 60),
                  static_cast<int>(rem % 60));
    return buf;
}

EventSet parse_events(std::istream& in, const CsvSchema& schema, ParseStats* stats) {
    std::string line;
    if (!std::getline(in, line)) {
        throw DataError("empty input: no header row");
    }
    const auto header = split_line(strip_cr(line), schema.delimiter);
    int time_idx = -1, lat_idx = -1, lon_idx = -1;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (header[i] == schema.time_col) time_idx = static_cast<int>(i);
        if (header[i] == schema.lat_col) lat_idx = static_cast<int>(i);
        if (header[i] == schema.lon_col) lon_idx = static_cast<int>(i);
    }
    if (time_idx < 0) throw DataError("schema error: column '" + schema.time_col + "' not found");
    if (lat_idx < 0) throw DataError("schema error: column '" + schema.lat_col + "' not found");
    if (lon_idx < 0) throw DataError("schema error: column '" + schema.lon_col + "' not found");

    ParseStats local;
    ParseStats& st = stats ? *stats : local;
    st = ParseStats{};

    EventSet set;
    const int max_idx = std::max({time_idx, lat_idx, lon_idx});
    while (std::getline(in, line)) {
        line = strip_cr(line);
        if (line.empty()) continue;
        ++st.total_rows;
        const auto fields = split_line(line, schema.delimiter);
        auto drop = [&](const char* reason) {
            ++st.dropped;
            ++st.drop_reasons[reason];
        };
        if (static_cast<int>(fields.size()) <= max_idx) {
            drop("missing_field");
            continue;
        }
        GpsEvent e;
        if (!try_parse_timestamp(fields[time_idx], e.ts)) {
            drop("bad_timestamp");
            continue;
        }
        e.ts -= schema.utc_offset_seconds;
        if (!try_parse_double(fields[lat_idx], e.lat) || e.lat < -90.0 || e.lat > 90.0) {
            drop("bad_latitude");
            continue;
        }
        if (!try_parse_double(fields[lon_idx], e.lon) || e.lon < -180.0 || e.lon > 180.0) {
            drop("bad_longitude");
            continue;
        }
        if (e.lat == 0.0 && e.lon == 0.0) {
            drop("null_island");
            continue;
        }
        set.events.push_back(e);
        ++st.kept;
    }

    std::stable_sort(set.events.begin(), set.events.end(),
                     [](const GpsEvent& a, const GpsEvent& b) { return a.ts < b.ts; });
    finalize_bounds(set);
    return set;
}

EventSet load_events(const std::string& path, const CsvSchema& schema, ParseStats* stats) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open input file '" + path + "'");
    return parse_events(in, schema, stats);
}

void write_events(std::ostream& out, const EventSet& set, const CsvSchema& schema) {
    out << schema.time_col << schema.delimiter << schema.lat_col << schema.delimiter
        << schema.lon_col << "\n";
    char buf[64];
    for (const GpsEvent& e : set.events) {
        out << format_timestamp(e.ts + schema.utc_offset_seconds);
        std::snprintf(buf, sizeof buf, "%.17g", e.lat);
        out << schema.delimiter << buf;
        std::snprintf(buf, sizeof buf, "%.17g", e.lon);
        out << schema.delimiter << buf << "\n";
    }
}

EventSet filter_window(const EventSet& set, const BBox& bbox, const TimeWindow& window) {
    if (!bbox.valid()) throw ConfigError("filter_window: inverted or degenerate bbox");
    if (!window.valid()) throw ConfigError("filter_window: inverted time window");
    EventSet out;
    out.bbox = bbox;
    out.window = window;
    for (const GpsEvent& e : set.events) {
        if (bbox.contains(e.lat, e.lon) && window.contains(e.ts)) {
            out.events.push_back(e);
        }
    }
    return out;
}

} // namespace citytess
