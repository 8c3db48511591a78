#include "citytess/tessellation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "citytess/errors.hpp"
#include "citytess/geohash.hpp"
#include "citytess/voronoi.hpp"

namespace citytess {

using ordered_json = nlohmann::ordered_json;

std::string to_string(TessKind kind) {
    return kind == TessKind::kVoronoi ? "voronoi" : "geohash";
}

TessKind tess_kind_from_string(const std::string& s) {
    if (s == "voronoi") return TessKind::kVoronoi;
    if (s == "geohash") return TessKind::kGeohash;
    throw ConfigError("unknown tessellation kind '" + s + "' (expected voronoi|geohash)");
}

void Tessellation::reindex() {
    proj_ = Projection::about(bbox);
    planar_sites_.clear();
    code_to_region_.clear();
    if (kind == TessKind::kVoronoi) {
        planar_sites_.resize(regions.size());
        for (const Region& r : regions) {
            planar_sites_[r.id] = proj_.to_km(r.site);
        }
    } else {
        for (const Region& r : regions) {
            code_to_region_[r.code] = r.id;
        }
    }
}

int Tessellation::locate(double lat, double lon) const {
    if (kind == TessKind::kGeohash) {
        const std::string code = geohash_encode(lat, lon, precision);
        const auto it = code_to_region_.find(code);
        return it == code_to_region_.end() ? -1 : it->second;
    }
    const Vec2 p = proj_.to_km(GeoPoint{lat, lon});
    int best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (int j = 0; j < static_cast<int>(planar_sites_.size()); ++j) {
        const double dx = planar_sites_[j].x - p.x;
        const double dy = planar_sites_[j].y - p.y;
        const double d = dx * dx + dy * dy;
        if (d < best_d) {
            best_d = d;
            best = j;
        }
    }
    return best;
}

const std::vector<int>& Tessellation::neighbors_of(int region_id) const {
    if (region_id < 0 || region_id >= region_count()) {
        throw DataError("unknown region id " + std::to_string(region_id));
    }
    return regions[region_id].neighbors;
}

Tessellation voronoi_tessellate(const std::vector<Centroid>& sites, const BBox& bbox) {
    if (!bbox.valid()) throw ConfigError("voronoi_tessellate: degenerate bounding box");
    if (sites.empty()) throw DataError("voronoi_tessellate: no sites");

    const Projection proj = Projection::about(bbox);
    const Rect box = proj.to_km(bbox);
    std::vector<Vec2> planar(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        planar[i] = proj.to_km(GeoPoint{sites[i].lat, sites[i].lon});
    }

    const auto cells = voronoi_diagram(planar, box);

    Tessellation tess;
    tess.kind = TessKind::kVoronoi;
    tess.bbox = bbox;
    tess.regions.resize(sites.size());
    tess.site_index.resize(sites.size());
    for (std::size_t i = 0; i < sites.size(); ++i) {
        Region& r = tess.regions[i];
        r.id = static_cast<int>(i);
        r.site_id = sites[i].id;
        r.site = {sites[i].lat, sites[i].lon};
        r.neighbors = cells[i].neighbors;
        r.ring.reserve(cells[i].polygon.size());
        for (const Vec2& v : cells[i].polygon) r.ring.push_back(proj.to_geo(v));
        tess.site_index[i] = static_cast<int>(i);
    }
    tess.reindex();
    return tess;
}

Tessellation geohash_tessellate(const std::vector<Centroid>& centroids, int precision) {
    if (centroids.empty()) throw DataError("geohash_tessellate: no centroids");

    Tessellation tess;
    tess.kind = TessKind::kGeohash;
    tess.precision = precision;
    tess.site_index.assign(centroids.size(), -1);

    std::map<std::string, int> ids; // code -> region id, first-occurrence order
    for (std::size_t i = 0; i < centroids.size(); ++i) {
        const std::string code = geohash_encode(centroids[i].lat, centroids[i].lon, precision);
        auto it = ids.find(code);
        if (it == ids.end()) {
            const int id = static_cast<int>(tess.regions.size());
            ids.emplace(code, id);
            Region r;
            r.id = id;
            r.code = code;
            const GeohashBox box = geohash_decode(code);
            r.ring = {{box.min_lat, box.min_lon},
                      {box.min_lat, box.max_lon},
                      {box.max_lat, box.max_lon},
                      {box.max_lat, box.min_lon}};
            r.neighbor_codes = geohash_neighbors(code);
            tess.regions.push_back(std::move(r));
            tess.site_index[i] = id;
        } else {
            tess.site_index[i] = it->second;
        }
    }

    // Adjacency over the regions that actually exist.
    for (Region& r : tess.regions) {
        for (const std::string& code : r.neighbor_codes) {
            const auto it = ids.find(code);
            if (it != ids.end()) r.neighbors.push_back(it->second);
        }
        std::sort(r.neighbors.begin(), r.neighbors.end());
    }

    // Hull of the member cells.
    BBox hull;
    bool first = true;
    for (const Region& r : tess.regions) {
        const GeohashBox box = geohash_decode(r.code);
        if (first) {
            hull = {box.min_lat, box.min_lon, box.max_lat, box.max_lon};
            first = false;
        } else {
            hull.min_lat = std::min(hull.min_lat, box.min_lat);
            hull.min_lon = std::min(hull.min_lon, box.min_lon);
            hull.max_lat = std::max(hull.max_lat, box.max_lat);
            hull.max_lon = std::max(hull.max_lon, box.max_lon);
        }
    }
    tess.bbox = hull;
    tess.reindex();
    return tess;
}

namespace {

ordered_json ring_to_geojson(const std::vector<GeoPoint>& ring) {
    ordered_json coords = ordered_json::array();
    for (const GeoPoint& p : ring) coords.push_back({p.lon, p.lat});
    if (!ring.empty()) coords.push_back({ring.front().lon, ring.front().lat});
    return ordered_json::array({coords});
}

std::vector<GeoPoint> ring_from_geojson(const ordered_json& poly) {
    std::vector<GeoPoint> ring;
    const auto& outer = poly.at(0);
    for (const auto& pt : outer) {
        ring.push_back({pt.at(1).get<double>(), pt.at(0).get<double>()});
    }
    if (ring.size() >= 2 && ring.front().lat == ring.back().lat &&
        ring.front().lon == ring.back().lon) {
        ring.pop_back();
    }
    return ring;
}

} // namespace

std::string tessellation_to_geojson(const Tessellation& tess, const std::string& meta) {
    ordered_json doc;
    doc["type"] = "FeatureCollection";
    if (!meta.empty()) doc["meta"] = meta;
    doc["kind"] = to_string(tess.kind);
    doc["bbox_latlon"] = {tess.bbox.min_lat, tess.bbox.min_lon, tess.bbox.max_lat, tess.bbox.max_lon};
    if (tess.kind == TessKind::kGeohash) doc["precision"] = tess.precision;
    doc["site_index"] = tess.site_index;

    ordered_json features = ordered_json::array();
    for (const Region& r : tess.regions) {
        ordered_json f;
        f["type"] = "Feature";
        f["geometry"] = {{"type", "Polygon"}, {"coordinates", ring_to_geojson(r.ring)}};
        ordered_json props;
        props["region_id"] = r.id;
        props["kind"] = to_string(tess.kind);
        if (tess.kind == TessKind::kVoronoi) {
            props["site_id"] = r.site_id;
            props["site"] = {r.site.lon, r.site.lat};
        } else {
            props["code"] = r.code;
            props["neighbor_codes"] = r.neighbor_codes;
        }
        props["neighbor_ids"] = r.neighbors;
        f["properties"] = std::move(props);
        features.push_back(std::move(f));
    }
    doc["features"] = std::move(features);
    return doc.dump(2) + "\n";
}

Tessellation tessellation_from_geojson(const std::string& text) {
    ordered_json doc;
    try {
        doc = ordered_json::parse(text);
    } catch (const std::exception& e) {
        throw DataError(std::string("invalid tessellation GeoJSON: ") + e.what());
    }
    if (doc.value("type", "") != "FeatureCollection") {
        throw DataError("tessellation GeoJSON: expected a FeatureCollection");
    }

    Tessellation tess;
    tess.kind = tess_kind_from_string(doc.at("kind").get<std::string>());
    const auto& bb = doc.at("bbox_latlon");
    tess.bbox = {bb.at(0).get<double>(), bb.at(1).get<double>(), bb.at(2).get<double>(),
                 bb.at(3).get<double>()};
    if (tess.kind == TessKind::kGeohash) tess.precision = doc.at("precision").get<int>();
    tess.site_index = doc.at("site_index").get<std::vector<int>>();

    for (const auto& f : doc.at("features")) {
        Region r;
        const auto& props = f.at("properties");
        r.id = props.at("region_id").get<int>();
        r.ring = ring_from_geojson(f.at("geometry").at("coordinates"));
        r.neighbors = props.at("neighbor_ids").get<std::vector<int>>();
        if (tess.kind == TessKind::kVoronoi) {
            r.site_id = props.at("site_id").get<int>();
            r.site = {props.at("site").at(1).get<double>(), props.at("site").at(0).get<double>()};
        } else {
            r.code = props.at("code").get<std::string>();
            const auto& codes = props.at("neighbor_codes");
            for (std::size_t i = 0; i < 8 && i < codes.size(); ++i) {
                r.neighbor_codes[i] = codes.at(i).get<std::string>();
            }
        }
        tess.regions.push_back(std::move(r));
    }
    std::sort(tess.regions.begin(), tess.regions.end(),
              [](const Region& a, const Region& b) { return a.id < b.id; });
    for (int i = 0; i < tess.region_count(); ++i) {
        if (tess.regions[i].id != i) throw DataError("tessellation GeoJSON: region ids not dense");
    }
    tess.reindex();
    return tess;
}

} // namespace citytess
