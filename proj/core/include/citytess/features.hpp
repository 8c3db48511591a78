#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "citytess/series.hpp"
#include "citytess/tessellation.hpp"

namespace citytess {

// Sample Pearson correlation; empty optional when either series is constant.
std::optional<double> pearson(std::span<const double> a, std::span<const double> b);

// Ordered, disjoint bin segments covering [0, total): a training fit segment,
// a validation tail carved off the training window (last 10% of training
// bins), and the final test day. Statistics that must not see the test day
// (neighbor ranking, normalization) are computed on [0, test_begin).
struct SplitSpec {
    int total = 0;
    int val_begin = 0;  // fit = [0, val_begin)
    int test_begin = 0; // validation = [val_begin, test_begin), test = [test_begin, total)

    int train_bins() const { return test_begin; } // fit + validation
    int test_bins() const { return total - test_begin; }

    static SplitSpec for_bins(int total_bins, int test_bins = 24, double val_fraction = 0.10);
};

enum class Segment { kTrain, kValidation, kTest };

// Per region: up to k first-order neighbors with strictly positive
// correlation on the training bins, descending; -1 marks a padded slot.
struct NeighborMap {
    int regions = 0;
    int k = 8;
    std::vector<int> ids;     // regions x k
    std::vector<double> corr; // correlation per slot, 0 for pads

    int id(int region, int slot) const { return ids[static_cast<std::size_t>(region) * k + slot]; }
    bool padded(int region, int slot) const { return id(region, slot) < 0; }
};

NeighborMap rank_neighbors(const SeriesMatrix& series, const Tessellation& tess,
                           const SplitSpec& split, int k = 8);

// Single-region variant; returned vectors have exactly k slots.
std::vector<int> rank_neighbors_row(const SeriesMatrix& series, const Tessellation& tess,
                                    int region_id, const SplitSpec& split, int k = 8,
                                    std::vector<double>* corr_out = nullptr);

std::string neighbor_map_to_json(const NeighborMap& map);

// Per-region min-max normalization fitted on the training bins.
struct NormRecord {
    double min = 0.0;
    double max = 0.0;
    bool degenerate = false; // constant training series; normalized row is all zero

    double normalize(double v) const { return degenerate ? 0.0 : (v - min) / (max - min); }
    double denormalize(double v) const { return degenerate ? min : v * (max - min) + min; }
};

// Supervised LSTM input of shape (regions, bins, 1 + k): feature 0 is the
// region's own normalized series, features 1..k the ranked neighbor series
// (zero where padded).
struct FeatureTensor {
    int regions = 0;
    int bins = 0;
    int features = 0; // s = 1 + k
    std::vector<double> values; // region x bin x feature
    std::vector<NormRecord> norms;
    std::vector<std::uint8_t> pad_mask; // regions x k, 1 = padded slot

    double at(int region, int bin, int feature) const {
        return values[(static_cast<std::size_t>(region) * bins + bin) * features + feature];
    }
    const double* frame(int region, int bin) const {
        return values.data() + (static_cast<std::size_t>(region) * bins + bin) * features;
    }
};

FeatureTensor build_tensor(const SeriesMatrix& series, const NeighborMap& neighbors,
                           const SplitSpec& split, int k);

// Supervised one-step-ahead pairs over a split segment: the input is the
// feature window [t - lookback, t), the label the region's own normalized
// value at t. Targets require the full lookback to exist within [0, t).
struct WindowSet {
    struct Item {
        int region = 0;
        int target = 0;
    };
    const FeatureTensor* tensor = nullptr;
    int lookback = 0;
    std::vector<Item> items;

    std::size_t size() const { return items.size(); }
    double label(std::size_t i) const {
        return tensor->at(items[i].region, items[i].target, 0);
    }
    // Pointer to the first frame of the window; frames are contiguous rows of
    // `features` values per time step.
    const double* input(std::size_t i) const {
        return tensor->frame(items[i].region, items[i].target - lookback);
    }
};

WindowSet make_windows(const FeatureTensor& tensor, const SplitSpec& split, Segment segment,
                       int lookback);

} // namespace citytess
