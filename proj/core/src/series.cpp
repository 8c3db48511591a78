#include "citytess/series.hpp"

#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include "citytess/errors.hpp"

namespace citytess {

std::vector<double> SeriesMatrix::row(int region) const {
    return row(region, 0, bins);
}

std::vector<double> SeriesMatrix::row(int region, int bin_begin, int bin_end) const {
    std::vector<double> out(static_cast<std::size_t>(bin_end - bin_begin));
    for (int t = bin_begin; t < bin_end; ++t) out[t - bin_begin] = static_cast<double>(at(region, t));
    return out;
}

std::int64_t SeriesMatrix::total() const {
    return std::accumulate(counts.begin(), counts.end(), std::int64_t{0});
}

SeriesMatrix aggregate(const EventSet& events, const Tessellation& tess,
                       std::int64_t bin_seconds, const TimeWindow& window,
                       AggregateStats* stats) {
    if (bin_seconds <= 0) throw ConfigError("aggregate: bin width must be positive");
    if (!window.valid()) throw ConfigError("aggregate: inverted time window");
    if (window.duration() % bin_seconds != 0) {
        throw ConfigError("aggregate: window of " + std::to_string(window.duration()) +
                          "s is not a multiple of the " + std::to_string(bin_seconds) +
                          "s bin width");
    }

    SeriesMatrix m;
    m.regions = tess.region_count();
    m.bins = static_cast<int>(window.duration() / bin_seconds);
    m.t0 = window.begin;
    m.bin_seconds = bin_seconds;
    m.counts.assign(static_cast<std::size_t>(m.regions) * m.bins, 0);

    AggregateStats local;
    AggregateStats& st = stats ? *stats : local;
    st = AggregateStats{};

    for (const GpsEvent& e : events.events) {
        if (!window.contains(e.ts)) {
            throw DataError("aggregate: event at " + format_timestamp(e.ts) +
                            " outside the aggregation window");
        }
        const int region = tess.locate(e.lat, e.lon);
        if (region < 0) {
            ++st.unassigned;
            continue;
        }
        const int bin = static_cast<int>((e.ts - window.begin) / bin_seconds);
        ++m.at(region, bin);
        ++st.assigned;
    }
    return m;
}

void write_series_csv(std::ostream& out, const SeriesMatrix& m, const std::string& annotation) {
    out << "# t0=" << format_timestamp(m.t0) << " bin_seconds=" << m.bin_seconds
        << " regions=" << m.regions << " bins=" << m.bins;
    if (!annotation.empty()) out << " " << annotation;
    out << "\n";
    out << "region_id";
    for (int t = 0; t < m.bins; ++t) out << ",b" << t;
    out << "\n";
    for (int r = 0; r < m.regions; ++r) {
        out << r;
        for (int t = 0; t < m.bins; ++t) out << "," << m.at(r, t);
        out << "\n";
    }
}

SeriesMatrix read_series_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line) || line.rfind("# t0=", 0) != 0) {
        throw DataError("series csv: missing '# t0=...' header comment");
    }
    SeriesMatrix m;
    {
        std::istringstream hdr(line.substr(2));
        std::string token;
        std::string t0_text;
        while (hdr >> token) {
            const auto eq = token.find('=');
            if (eq == std::string::npos) continue;
            const std::string key = token.substr(0, eq);
            const std::string value = token.substr(eq + 1);
            if (key == "t0") t0_text = value;
            else if (key == "bin_seconds") m.bin_seconds = std::stoll(value);
            else if (key == "regions") m.regions = std::stoi(value);
            else if (key == "bins") m.bins = std::stoi(value);
        }
        // t0 is written as "YYYY-MM-DD HH:MM:SS"; the space was split, so read
        // it from the raw line instead.
        const auto pos = line.find("t0=");
        m.t0 = parse_timestamp(line.substr(pos + 3, 19));
        (void)t0_text;
    }
    if (m.regions <= 0 || m.bins <= 0) throw DataError("series csv: bad regions/bins in header");

    if (!std::getline(in, line)) throw DataError("series csv: missing column header");
    m.counts.assign(static_cast<std::size_t>(m.regions) * m.bins, 0);
    int row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (row >= m.regions) throw DataError("series csv: more rows than the header declares");
        std::istringstream ls(line);
        std::string field;
        if (!std::getline(ls, field, ',')) throw DataError("series csv: empty row");
        if (std::stoi(field) != row) throw DataError("series csv: region ids must be dense");
        for (int t = 0; t < m.bins; ++t) {
            if (!std::getline(ls, field, ',')) {
                throw DataError("series csv: row " + std::to_string(row) + " has too few bins");
            }
            m.at(row, t) = std::stoll(field);
        }
        ++row;
    }
    if (row != m.regions) throw DataError("series csv: fewer rows than the header declares");
    return m;
}

void save_series_csv(const std::string& path, const SeriesMatrix& m, const std::string& annotation) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write series file '" + path + "'");
    write_series_csv(out, m, annotation);
}

SeriesMatrix load_series_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open series file '" + path + "'");
    return read_series_csv(in);
}

} // namespace citytess
