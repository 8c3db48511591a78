#include "citytess/geo.hpp"

#include <cmath>

namespace citytess {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kDegToRad = kPi / 180.0;
} // namespace

double haversine_km(const GeoPoint& a, const GeoPoint& b) {
    const double phi1 = a.lat * kDegToRad;
    const double phi2 = b.lat * kDegToRad;
    const double dphi = (b.lat - a.lat) * kDegToRad;
    const double dlam = (b.lon - a.lon) * kDegToRad;
    const double s = std::sin(dphi / 2.0) * std::sin(dphi / 2.0) +
                     std::cos(phi1) * std::cos(phi2) * std::sin(dlam / 2.0) * std::sin(dlam / 2.0);
    return 2.0 * kEarthRadiusKm * std::asin(std::sqrt(s));
}

Projection Projection::about(const BBox& bbox) {
    return about(bbox.center());
}

Projection Projection::about(const GeoPoint& origin) {
    Projection p;
    p.lat0_ = origin.lat;
    p.lon0_ = origin.lon;
    p.ky_ = kKmPerDegree;
    p.kx_ = kKmPerDegree * std::cos(origin.lat * kDegToRad);
    return p;
}

Rect Projection::to_km(const BBox& b) const {
    const Vec2 lo = to_km(GeoPoint{b.min_lat, b.min_lon});
    const Vec2 hi = to_km(GeoPoint{b.max_lat, b.max_lon});
    return {lo.x, lo.y, hi.x, hi.y};
}

double bbox_area_km2(const BBox& bbox) {
    return Projection::about(bbox).to_km(bbox).area();
}

double polygon_area(const std::vector<Vec2>& ring) {
    const std::size_t n = ring.size();
    if (n < 3) return 0.0;
    double twice = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& p = ring[i];
        const Vec2& q = ring[(i + 1) % n];
        twice += p.x * q.y - q.x * p.y;
    }
    return 0.5 * twice;
}

} // namespace citytess
