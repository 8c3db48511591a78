#include "citytess/features.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

#include "citytess/errors.hpp"

namespace citytess {

std::optional<double> pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw DataError("pearson: length mismatch (" + std::to_string(a.size()) + " vs " +
                        std::to_string(b.size()) + ")");
    }
    const std::size_t n = a.size();
    if (n < 2) throw DataError("pearson: need at least 2 samples");

    double mean_a = 0.0, mean_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_a += a[i];
        mean_b += b[i];
    }
    mean_a /= static_cast<double>(n);
    mean_b /= static_cast<double>(n);

    double cov = 0.0, var_a = 0.0, var_b = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double da = a[i] - mean_a;
        const double db = b[i] - mean_b;
        cov += da * db;
        var_a += da * da;
        var_b += db * db;
    }
    if (var_a == 0.0 || var_b == 0.0) return std::nullopt;
    return cov / std::sqrt(var_a * var_b);
}

SplitSpec SplitSpec::for_bins(int total_bins, int test_bins, double val_fraction) {
    if (test_bins < 1) throw ConfigError("split: test segment must have at least 1 bin");
    const int train_total = total_bins - test_bins;
    if (train_total < 2) {
        throw DataError("split: " + std::to_string(total_bins) +
                        " bins leave no training data before a " + std::to_string(test_bins) +
                        "-bin test day");
    }
    const int val_bins = static_cast<int>(std::lround(val_fraction * train_total));
    SplitSpec s;
    s.total = total_bins;
    s.test_begin = train_total;
    s.val_begin = train_total - val_bins;
    if (s.val_begin < 1) s.val_begin = 1;
    return s;
}

std::vector<int> rank_neighbors_row(const SeriesMatrix& series, const Tessellation& tess,
                                    int region_id, const SplitSpec& split, int k,
                                    std::vector<double>* corr_out) {
    if (k < 0 || k > 8) throw ConfigError("rank_neighbors: k must be in [0, 8]");
    const std::vector<int>& adjacent = tess.neighbors_of(region_id); // validates region_id

    const std::vector<double> own = series.row(region_id, 0, split.train_bins());
    struct Scored {
        int id;
        double r;
    };
    std::vector<Scored> scored;
    for (int j : adjacent) {
        const auto r = pearson(own, series.row(j, 0, split.train_bins()));
        if (r && *r > 0.0) scored.push_back({j, *r});
    }
    std::sort(scored.begin(), scored.end(), [](const Scored& a, const Scored& b) {
        return a.r != b.r ? a.r > b.r : a.id < b.id;
    });

    std::vector<int> ids(static_cast<std::size_t>(k), -1);
    if (corr_out) corr_out->assign(static_cast<std::size_t>(k), 0.0);
    for (int s = 0; s < k && s < static_cast<int>(scored.size()); ++s) {
        ids[s] = scored[s].id;
        if (corr_out) (*corr_out)[s] = scored[s].r;
    }
    return ids;
}

NeighborMap rank_neighbors(const SeriesMatrix& series, const Tessellation& tess,
                           const SplitSpec& split, int k) {
    if (series.regions != tess.region_count()) {
        throw DataError("rank_neighbors: series and tessellation disagree on region count");
    }
    NeighborMap map;
    map.regions = series.regions;
    map.k = k;
    map.ids.assign(static_cast<std::size_t>(map.regions) * k, -1);
    map.corr.assign(static_cast<std::size_t>(map.regions) * k, 0.0);
    std::vector<double> corr;
    for (int r = 0; r < map.regions; ++r) {
        const auto ids = rank_neighbors_row(series, tess, r, split, k, &corr);
        std::copy(ids.begin(), ids.end(), map.ids.begin() + static_cast<std::size_t>(r) * k);
        std::copy(corr.begin(), corr.end(), map.corr.begin() + static_cast<std::size_t>(r) * k);
    }
    return map;
}

std::string neighbor_map_to_json(const NeighborMap& map) {
    nlohmann::ordered_json doc;
    doc["k"] = map.k;
    nlohmann::ordered_json regions = nlohmann::ordered_json::object();
    for (int r = 0; r < map.regions; ++r) {
        nlohmann::ordered_json row;
        nlohmann::ordered_json ids = nlohmann::ordered_json::array();
        nlohmann::ordered_json mask = nlohmann::ordered_json::array();
        nlohmann::ordered_json corr = nlohmann::ordered_json::array();
        for (int s = 0; s < map.k; ++s) {
            ids.push_back(map.id(r, s));
            mask.push_back(map.padded(r, s) ? 1 : 0);
            corr.push_back(map.corr[static_cast<std::size_t>(r) * map.k + s]);
        }
        row["neighbors"] = std::move(ids);
        row["pad_mask"] = std::move(mask);
        row["correlation"] = std::move(corr);
        regions[std::to_string(r)] = std::move(row);
    }
    doc["regions"] = std::move(regions);
    return doc.dump(2) + "\n";
}

FeatureTensor build_tensor(const SeriesMatrix& series, const NeighborMap& neighbors,
                           const SplitSpec& split, int k) {
    if (k < 0 || k > neighbors.k) {
        throw ConfigError("build_tensor: k must be in [0, " + std::to_string(neighbors.k) + "]");
    }
    if (neighbors.regions != series.regions) {
        throw DataError("build_tensor: neighbor map and series disagree on region count");
    }

    FeatureTensor t;
    t.regions = series.regions;
    t.bins = series.bins;
    t.features = 1 + k;
    t.values.assign(static_cast<std::size_t>(t.regions) * t.bins * t.features, 0.0);
    t.norms.resize(t.regions);
    t.pad_mask.assign(static_cast<std::size_t>(t.regions) * std::max(k, 1), 0);

    // Fit normalization on the training bins only.
    for (int r = 0; r < t.regions; ++r) {
        std::int64_t lo = series.at(r, 0), hi = series.at(r, 0);
        for (int b = 1; b < split.train_bins(); ++b) {
            lo = std::min(lo, series.at(r, b));
            hi = std::max(hi, series.at(r, b));
        }
        t.norms[r] = {static_cast<double>(lo), static_cast<double>(hi), lo == hi};
    }

    auto normalized = [&](int region, int bin) {
        return t.norms[region].normalize(static_cast<double>(series.at(region, bin)));
    };

    for (int r = 0; r < t.regions; ++r) {
        for (int b = 0; b < t.bins; ++b) {
            double* frame = t.values.data() + (static_cast<std::size_t>(r) * t.bins + b) * t.features;
            frame[0] = normalized(r, b);
            for (int s = 0; s < k; ++s) {
                const int j = neighbors.id(r, s);
                frame[1 + s] = j < 0 ? 0.0 : normalized(j, b);
            }
        }
        for (int s = 0; s < k; ++s) {
            t.pad_mask[static_cast<std::size_t>(r) * std::max(k, 1) + s] =
                neighbors.padded(r, s) ? 1 : 0;
        }
    }
    return t;
}

WindowSet make_windows(const FeatureTensor& tensor, const SplitSpec& split, Segment segment,
                       int lookback) {
    if (lookback < 1) throw ConfigError("make_windows: lookback must be >= 1");
    int begin = 0, end = 0;
    switch (segment) {
        case Segment::kTrain:
            begin = 0;
            end = split.val_begin;
            break;
        case Segment::kValidation:
            begin = split.val_begin;
            end = split.test_begin;
            break;
        case Segment::kTest:
            begin = split.test_begin;
            end = split.total;
            break;
    }
    WindowSet set;
    set.tensor = &tensor;
    set.lookback = lookback;
    const int first_target = std::max(begin, lookback);
    if (first_target >= end) {
        throw ConfigError("make_windows: lookback of " + std::to_string(lookback) +
                          " leaves no targets in a [" + std::to_string(begin) + ", " +
                          std::to_string(end) + ") segment");
    }
    set.items.reserve(static_cast<std::size_t>(tensor.regions) * (end - first_target));
    for (int r = 0; r < tensor.regions; ++r) {
        for (int t = first_target; t < end; ++t) {
            set.items.push_back({r, t});
        }
    }
    return set;
}

} // namespace citytess
