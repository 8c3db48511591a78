#pragma once

#include <cstdint>
#include <vector>

#include "citytess/geo.hpp"

namespace citytess {

struct Centroid {
    int id = -1;
    double lat = 0.0;
    double lon = 0.0;
};

struct KMeansConfig {
    int k = 1;
    std::uint64_t seed = 0;
    double tol = 1e-7; // stop when the relative decrease of J falls below tol
    int max_iter = 100;
};

struct KMeansResult {
    std::vector<Centroid> centroids;
    double objective = 0.0;                // J, squared km
    int iterations = 0;
    int reseeded_clusters = 0;             // empty clusters re-seeded mid-run
    std::vector<double> objective_history; // J after each Lloyd iteration
};

// Lloyd iterations on points projected into the local planar frame.
// Seeding is greedy spread: the first center is drawn by `seed`, each next
// center is the point farthest from its nearest chosen center. An empty
// cluster is re-seeded at the point farthest from its nearest centroid.
KMeansResult kmeans(const std::vector<GeoPoint>& points, const KMeansConfig& config,
                    const Projection& proj);

// Convenience overload projecting about the hull of `points`.
KMeansResult kmeans(const std::vector<GeoPoint>& points, const KMeansConfig& config);

// Sum over points of squared planar distance to the nearest centroid.
double kmeans_objective(const std::vector<GeoPoint>& points,
                        const std::vector<Centroid>& centroids, const Projection& proj);

BBox hull_of(const std::vector<GeoPoint>& points);

} // namespace citytess
