#include "citytess/geohash.hpp"

#include <cstdint>

#include "citytess/errors.hpp"

namespace citytess {

namespace {

const char kBase32[] = "0123456789bcdefghjkmnpqrstuvwxyz";

int base32_value(char c, std::size_t position) {
    for (int i = 0; i < 32; ++i) {
        if (kBase32[i] == c) return i;
    }
    throw DataError("invalid geohash character '" + std::string(1, c) + "' at position " +
                    std::to_string(position));
}

void check_precision(int precision) {
    if (precision < 1 || precision > 12) {
        throw ConfigError("geohash precision must be in [1, 12], got " + std::to_string(precision));
    }
}

struct CellIndex {
    std::uint32_t lat = 0, lon = 0; // grid indices, lat 0 at the south pole
    int lat_bits = 0, lon_bits = 0;
};

CellIndex cell_of(const std::string& code) {
    if (code.empty()) throw DataError("empty geohash code");
    if (code.size() > 12) throw DataError("geohash code longer than 12 characters");
    CellIndex cell;
    bool lon_turn = true;
    for (std::size_t i = 0; i < code.size(); ++i) {
        const int v = base32_value(code[i], i);
        for (int b = 4; b >= 0; --b) {
            const std::uint32_t bit = (v >> b) & 1u;
            if (lon_turn) {
                cell.lon = (cell.lon << 1) | bit;
                ++cell.lon_bits;
            } else {
                cell.lat = (cell.lat << 1) | bit;
                ++cell.lat_bits;
            }
            lon_turn = !lon_turn;
        }
    }
    return cell;
}

std::string encode_cell(const CellIndex& cell) {
    const int total = cell.lat_bits + cell.lon_bits;
    std::string out(static_cast<std::size_t>(total / 5), '\0');
    int lat_b = cell.lat_bits, lon_b = cell.lon_bits;
    bool lon_turn = true;
    int acc = 0, acc_bits = 0;
    std::size_t pos = 0;
    for (int i = 0; i < total; ++i) {
        std::uint32_t bit;
        if (lon_turn) {
            --lon_b;
            bit = (cell.lon >> lon_b) & 1u;
        } else {
            --lat_b;
            bit = (cell.lat >> lat_b) & 1u;
        }
        lon_turn = !lon_turn;
        acc = (acc << 1) | static_cast<int>(bit);
        if (++acc_bits == 5) {
            out[pos++] = kBase32[acc];
            acc = 0;
            acc_bits = 0;
        }
    }
    return out;
}

GeohashBox box_of(const CellIndex& cell) {
    GeohashBox box;
    const double lat_span = 180.0 / static_cast<double>(1u << cell.lat_bits);
    const double lon_span = 360.0 / static_cast<double>(1u << cell.lon_bits);
    box.min_lat = -90.0 + lat_span * static_cast<double>(cell.lat);
    box.max_lat = box.min_lat + lat_span;
    box.min_lon = -180.0 + lon_span * static_cast<double>(cell.lon);
    box.max_lon = box.min_lon + lon_span;
    return box;
}

} // namespace

std::string geohash_encode(double lat, double lon, int precision) {
    check_precision(precision);
    if (lat < -90.0 || lat > 90.0) throw DataError("latitude out of range: " + std::to_string(lat));
    if (lon < -180.0 || lon > 180.0) throw DataError("longitude out of range: " + std::to_string(lon));

    double lat_lo = -90.0, lat_hi = 90.0;
    double lon_lo = -180.0, lon_hi = 180.0;
    std::string out(static_cast<std::size_t>(precision), '\0');
    bool lon_turn = true;
    int acc = 0, acc_bits = 0;
    std::size_t pos = 0;
    while (pos < out.size()) {
        int bit;
        if (lon_turn) {
            const double mid = 0.5 * (lon_lo + lon_hi);
            bit = lon >= mid;
            (bit ? lon_lo : lon_hi) = mid;
        } else {
            const double mid = 0.5 * (lat_lo + lat_hi);
            bit = lat >= mid;
            (bit ? lat_lo : lat_hi) = mid;
        }
        lon_turn = !lon_turn;
        acc = (acc << 1) | bit;
        if (++acc_bits == 5) {
            out[pos++] = kBase32[acc];
            acc = 0;
            acc_bits = 0;
        }
    }
    return out;
}

GeohashBox geohash_decode(const std::string& code) {
    return box_of(cell_of(code));
}

std::string geohash_move(const std::string& code, int dlat, int dlon) {
    CellIndex cell = cell_of(code);
    const std::int64_t lat_cells = std::int64_t{1} << cell.lat_bits;
    const std::int64_t lon_cells = std::int64_t{1} << cell.lon_bits;

    const std::int64_t lat_idx = static_cast<std::int64_t>(cell.lat) + dlat;
    if (lat_idx < 0 || lat_idx >= lat_cells) {
        throw DataError("geohash neighbor of '" + code + "' crosses a latitude pole");
    }
    std::int64_t lon_idx = (static_cast<std::int64_t>(cell.lon) + dlon) % lon_cells;
    if (lon_idx < 0) lon_idx += lon_cells;

    cell.lat = static_cast<std::uint32_t>(lat_idx);
    cell.lon = static_cast<std::uint32_t>(lon_idx);
    return encode_cell(cell);
}

std::array<std::string, 8> geohash_neighbors(const std::string& code) {
    return {
        geohash_move(code, +1, 0),  // N
        geohash_move(code, +1, +1), // NE
        geohash_move(code, 0, +1),  // E
        geohash_move(code, -1, +1), // SE
        geohash_move(code, -1, 0),  // S
        geohash_move(code, -1, -1), // SW
        geohash_move(code, 0, -1),  // W
        geohash_move(code, +1, -1), // NW
    };
}

} // namespace citytess
