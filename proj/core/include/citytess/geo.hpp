#pragma once

#include <cstdint>
#include <vector>

namespace citytess {

constexpr double kEarthRadiusKm = 6371.0088;
// Kilometers per degree of latitude (and of longitude at the equator).
constexpr double kKmPerDegree = kEarthRadiusKm * 3.14159265358979323846 / 180.0;

struct GeoPoint {
    double lat = 0.0;
    double lon = 0.0;
};

struct BBox {
    double min_lat = 0.0;
    double min_lon = 0.0;
    double max_lat = 0.0;
    double max_lon = 0.0;

    bool valid() const { return min_lat < max_lat && min_lon < max_lon; }
    bool contains(double lat, double lon) const {
        return lat >= min_lat && lat <= max_lat && lon >= min_lon && lon <= max_lon;
    }
    GeoPoint center() const { return {0.5 * (min_lat + max_lat), 0.5 * (min_lon + max_lon)}; }
};

// Half-open interval of UTC instants, unix seconds.
struct TimeWindow {
    std::int64_t begin = 0;
    std::int64_t end = 0;

    bool valid() const { return begin < end; }
    bool contains(std::int64_t t) const { return t >= begin && t < end; }
    std::int64_t duration() const { return end - begin; }
};

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

struct Rect {
    double min_x = 0.0;
    double min_y = 0.0;
    double max_x = 0.0;
    double max_y = 0.0;

    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double area() const { return width() * height(); }
    bool contains(const Vec2& p) const {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }
    bool strictly_contains(const Vec2& p) const {
        return p.x > min_x && p.x < max_x && p.y > min_y && p.y < max_y;
    }
};

double haversine_km(const GeoPoint& a, const GeoPoint& b);

// Local equirectangular projection about a reference latitude/longitude,
// in kilometers. All planar geometry (K-Means distances, Voronoi cells,
// areas) runs in this frame; it is affine in (lat, lon) and therefore
// exactly invertible.
class Projection {
public:
    Projection() = default;
    static Projection about(const BBox& bbox);
    static Projection about(const GeoPoint& origin);

    Vec2 to_km(const GeoPoint& p) const {
        return {(p.lon - lon0_) * kx_, (p.lat - lat0_) * ky_};
    }
    GeoPoint to_geo(const Vec2& v) const {
        return {v.y / ky_ + lat0_, v.x / kx_ + lon0_};
    }
    Rect to_km(const BBox& b) const;

private:
    double lat0_ = 0.0, lon0_ = 0.0;
    double kx_ = kKmPerDegree, ky_ = kKmPerDegree;
};

double bbox_area_km2(const BBox& bbox);

// Signed shoelace area; positive for counter-clockwise rings.
double polygon_area(const std::vector<Vec2>& ring);

} // namespace citytess
