#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "citytess/geo.hpp"
#include "citytess/kmeans.hpp"

namespace citytess {

enum class TessKind { kVoronoi, kGeohash };

std::string to_string(TessKind kind);
TessKind tess_kind_from_string(const std::string& s);

struct Region {
    int id = -1;
    std::vector<GeoPoint> ring; // boundary polygon, counter-clockwise, open
    std::vector<int> neighbors; // region ids sharing a boundary edge, ascending

    // Voronoi regions.
    int site_id = -1;
    GeoPoint site{};

    // Geohash regions. neighbor_codes lists all 8 surrounding cells whether or
    // not they are present in the tessellation; `neighbors` keeps the present ones.
    std::string code;
    std::array<std::string, 8> neighbor_codes{};
};

struct Tessellation {
    TessKind kind = TessKind::kVoronoi;
    BBox bbox;
    int precision = 0; // geohash only
    std::vector<Region> regions;
    std::vector<int> site_index; // centroid id -> region id

    int region_count() const { return static_cast<int>(regions.size()); }

    // Region id of a location: nearest site for Voronoi (ties to the lowest
    // site id), cell lookup for Geohash (-1 when the cell is not a region).
    int locate(double lat, double lon) const;

    const std::vector<int>& neighbors_of(int region_id) const;

    // Rebuilds the internal lookup structures; called by the constructors
    // below and by the GeoJSON reader.
    void reindex();

private:
    Projection proj_;
    std::vector<Vec2> planar_sites_;
    std::map<std::string, int> code_to_region_;
};

// Clipped Voronoi tessellation with the centroids as generating sites.
Tessellation voronoi_tessellate(const std::vector<Centroid>& sites, const BBox& bbox);

// One region per distinct geohash cell of the centroids; duplicates merge.
Tessellation geohash_tessellate(const std::vector<Centroid>& centroids, int precision = 6);

// GeoJSON FeatureCollection; one polygon feature per region with properties
// {region_id, kind, site_id|code, neighbor_ids}.
std::string tessellation_to_geojson(const Tessellation& tess, const std::string& meta = "");
Tessellation tessellation_from_geojson(const std::string& text);

} // namespace citytess
