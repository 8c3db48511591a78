#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "citytess/ingest.hpp"
#include "citytess/tessellation.hpp"

namespace citytess {

// Per-region event counts over uniform time bins.
struct SeriesMatrix {
    int regions = 0;
    int bins = 0;
    std::int64_t t0 = 0;           // start instant, unix seconds
    std::int64_t bin_seconds = 3600;
    std::vector<std::int64_t> counts; // row-major regions x bins

    std::int64_t& at(int region, int bin) { return counts[static_cast<std::size_t>(region) * bins + bin]; }
    std::int64_t at(int region, int bin) const {
        return counts[static_cast<std::size_t>(region) * bins + bin];
    }
    std::vector<double> row(int region) const;
    std::vector<double> row(int region, int bin_begin, int bin_end) const;
    std::int64_t total() const;
};

struct AggregateStats {
    std::int64_t assigned = 0;
    std::int64_t unassigned = 0; // events in no region (possible for Geohash only)
};

// Half-open hourly-style binning: an event at time t lands in bin
// floor((t - t0) / bin_seconds). The window must be an exact multiple of the
// bin width.
SeriesMatrix aggregate(const EventSet& events, const Tessellation& tess,
                       std::int64_t bin_seconds, const TimeWindow& window,
                       AggregateStats* stats = nullptr);

// One row per region, columns are bins; the header comment carries t0 and the
// bin width. `annotation` is appended to the header comment when non-empty.
void write_series_csv(std::ostream& out, const SeriesMatrix& m, const std::string& annotation = "");
SeriesMatrix read_series_csv(std::istream& in);

void save_series_csv(const std::string& path, const SeriesMatrix& m,
                     const std::string& annotation = "");
SeriesMatrix load_series_csv(const std::string& path);

} // namespace citytess
