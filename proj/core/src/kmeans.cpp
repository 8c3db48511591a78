#include "citytess/kmeans.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

#include "citytess/errors.hpp"
#include "citytess/rng.hpp"

namespace citytess {

namespace {

double sq_dist(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Index of the nearest center; ties broken by lowest index.
int nearest(const std::vector<Vec2>& centers, const Vec2& p, double* best_out = nullptr) {
    int best = 0;
    double best_d = sq_dist(centers[0], p);
    for (int j = 1; j < static_cast<int>(centers.size()); ++j) {
        const double d = sq_dist(centers[j], p);
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    if (best_out) *best_out = best_d;
    return best;
}

std::size_t count_distinct(const std::vector<GeoPoint>& points) {
    std::set<std::pair<double, double>> seen;
    for (const auto& p : points) seen.insert({p.lat, p.lon});
    return seen.size();
}

} // namespace

BBox hull_of(const std::vector<GeoPoint>& points) {
    if (points.empty()) throw DataError("cannot take the hull of an empty point set");
    BBox b{points[0].lat, points[0].lon, points[0].lat, points[0].lon};
    for (const auto& p : points) {
        b.min_lat = std::min(b.min_lat, p.lat);
        b.max_lat = std::max(b.max_lat, p.lat);
        b.min_lon = std::min(b.min_lon, p.lon);
        b.max_lon = std::max(b.max_lon, p.lon);
    }
    return b;
}

KMeansResult kmeans(const std::vector<GeoPoint>& points, const KMeansConfig& config) {
    return kmeans(points, config, Projection::about(hull_of(points)));
}

KMeansResult kmeans(const std::vector<GeoPoint>& points, const KMeansConfig& config,
                    const Projection& proj) {
    const int n = static_cast<int>(points.size());
    if (n == 0) throw DataError("kmeans: empty point set");
    if (config.k < 1) throw ConfigError("kmeans: K must be >= 1");
    if (static_cast<std::size_t>(config.k) > count_distinct(points)) {
        throw DataError("kmeans: K=" + std::to_string(config.k) +
                        " exceeds the number of distinct points");
    }

    std::vector<Vec2> pts(points.size());
    for (int i = 0; i < n; ++i) pts[i] = proj.to_km(points[i]);

    const int k = config.k;
    std::vector<Vec2> centers;
    centers.reserve(k);

    // Greedy spread seeding.
    Rng rng(config.seed);
    centers.push_back(pts[rng.index(pts.size())]);
    std::vector<double> nearest_d(n);
    for (int i = 0; i < n; ++i) nearest_d[i] = sq_dist(pts[i], centers[0]);
    while (static_cast<int>(centers.size()) < k) {
        int far = 0;
        for (int i = 1; i < n; ++i) {
            if (nearest_d[i] > nearest_d[far]) far = i;
        }
        centers.push_back(pts[far]);
        for (int i = 0; i < n; ++i) {
            nearest_d[i] = std::min(nearest_d[i], sq_dist(pts[i], centers.back()));
        }
    }

    KMeansResult result;
    std::vector<int> assign(n, -1);
    std::vector<Vec2> sums(k);
    std::vector<int> counts(k);
    double prev_j = std::numeric_limits<double>::infinity();

    for (int iter = 0; iter < config.max_iter; ++iter) {
        // Assignment step, with J measured against the current centers.
        double j_val = 0.0;
        for (int i = 0; i < n; ++i) {
            double d;
            assign[i] = nearest(centers, pts[i], &d);
            j_val += d;
        }
        result.iterations = iter + 1;
        result.objective = j_val;
        result.objective_history.push_back(j_val);

        // Update step.
        std::fill(sums.begin(), sums.end(), Vec2{});
        std::fill(counts.begin(), counts.end(), 0);
        for (int i = 0; i < n; ++i) {
            sums[assign[i]].x += pts[i].x;
            sums[assign[i]].y += pts[i].y;
            ++counts[assign[i]];
        }
        for (int j = 0; j < k; ++j) {
            if (counts[j] > 0) {
                centers[j] = {sums[j].x / counts[j], sums[j].y / counts[j]};
            } else {
                // Re-seed at the point farthest from its nearest centroid.
                int far = 0;
                double far_d = -1.0;
                for (int i = 0; i < n; ++i) {
                    double d;
                    nearest(centers, pts[i], &d);
                    if (d > far_d) {
                        far_d = d;
                        far = i;
                    }
                }
                centers[j] = pts[far];
                ++result.reseeded_clusters;
            }
        }

        const bool converged =
            std::isfinite(prev_j) && (prev_j - j_val) <= config.tol * std::max(prev_j, 1e-300);
        prev_j = j_val;
        if (converged) break;
    }

    result.centroids.resize(k);
    for (int j = 0; j < k; ++j) {
        const GeoPoint g = proj.to_geo(centers[j]);
        result.centroids[j] = {j, g.lat, g.lon};
    }
    return result;
}

double kmeans_objective(const std::vector<GeoPoint>& points,
                        const std::vector<Centroid>& centroids, const Projection& proj) {
    if (points.empty()) throw DataError("kmeans_objective: empty point set");
    if (centroids.empty()) throw DataError("kmeans_objective: no centroids");
    std::vector<Vec2> centers(centroids.size());
    for (std::size_t j = 0; j < centroids.size(); ++j) {
        centers[j] = proj.to_km(GeoPoint{centroids[j].lat, centroids[j].lon});
    }
    double j_val = 0.0;
    for (const auto& p : points) {
        double d;
        nearest(centers, proj.to_km(p), &d);
        j_val += d;
    }
    return j_val;
}

} // namespace citytess
