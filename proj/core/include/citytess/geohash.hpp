#pragma once

#include <array>
#include <string>

#include "citytess/geo.hpp"

namespace citytess {

// The decoded cell rectangle of a geohash code.
struct GeohashBox {
    double min_lat = 0.0;
    double max_lat = 0.0;
    double min_lon = 0.0;
    double max_lon = 0.0;

    GeoPoint center() const { return {0.5 * (min_lat + max_lat), 0.5 * (min_lon + max_lon)}; }
    bool contains(double lat, double lon) const {
        return lat >= min_lat && lat < max_lat && lon >= min_lon && lon < max_lon;
    }
    double lat_span() const { return max_lat - min_lat; }
    double lon_span() const { return max_lon - min_lon; }
};

// Standard bit interleave, longitude bit first, 5 bits per base-32 character.
std::string geohash_encode(double lat, double lon, int precision);

GeohashBox geohash_decode(const std::string& code);

// Same-precision cell offset by dlat/dlon grid steps. Longitude wraps around
// the antimeridian; stepping past a pole throws (city data never gets there).
std::string geohash_move(const std::string& code, int dlat, int dlon);

// The 8 surrounding cells in N, NE, E, SE, S, SW, W, NW order.
std::array<std::string, 8> geohash_neighbors(const std::string& code);

} // namespace citytess
