#include "citytess/voronoi.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <string>

#include "citytess/errors.hpp"

namespace citytess {

namespace {

double sq_dist(const Vec2& a, const Vec2& b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Convex polygon with a generator tag per edge: edge i runs from vertex i to
// vertex i+1 and was produced either by a box side (-1) or by the bisector of
// a site index.
struct TaggedPolygon {
    std::vector<Vec2> verts;
    std::vector<int> tags;
};

// Clip `poly` against the half-plane n.(p - m) <= 0. Standard
// Sutherland-Hodgman step; new vertices along the cut line get `tag`.
void clip_halfplane(TaggedPolygon& poly, const Vec2& m, const Vec2& normal, int tag,
                    TaggedPolygon& scratch) {
    const std::size_t n = poly.verts.size();
    if (n == 0) return;

    scratch.verts.clear();
    scratch.tags.clear();

    auto side = [&](const Vec2& p) {
        return normal.x * (p.x - m.x) + normal.y * (p.y - m.y);
    };

    for (std::size_t i = 0; i < n; ++i) {
        const Vec2& a = poly.verts[i];
        const Vec2& b = poly.verts[(i + 1) % n];
        const int edge_tag = poly.tags[i];
        const double da = side(a);
        const double db = side(b);
        const bool a_in = da <= 0.0;
        const bool b_in = db <= 0.0;

        if (a_in) {
            scratch.verts.push_back(a);
            if (b_in) {
                scratch.tags.push_back(edge_tag);
            } else {
                // Leaving: keep the piece of this edge up to the crossing,
                // then travel along the cut line (tag assigned when the
                // re-entry point is emitted).
                const double t = da / (da - db);
                scratch.tags.push_back(edge_tag);
                scratch.verts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
                scratch.tags.push_back(tag);
            }
        } else if (b_in) {
            // Entering: emit the crossing, continue along the original edge.
            const double t = da / (da - db);
            scratch.verts.push_back({a.x + t * (b.x - a.x), a.y + t * (b.y - a.y)});
            scratch.tags.push_back(edge_tag);
        }
    }
    poly.verts.swap(scratch.verts);
    poly.tags.swap(scratch.tags);
}

} // namespace

std::vector<VoronoiCellPlanar> voronoi_diagram(const std::vector<Vec2>& sites, const Rect& box) {
    const int n = static_cast<int>(sites.size());
    if (n == 0) throw DataError("voronoi: no sites");
    for (int i = 0; i < n; ++i) {
        if (!box.strictly_contains(sites[i])) {
            throw DataError("voronoi: site " + std::to_string(i) + " not strictly inside the box");
        }
    }
    {
        std::set<std::pair<double, double>> seen;
        for (int i = 0; i < n; ++i) {
            auto [it, fresh] = seen.insert({sites[i].x, sites[i].y});
            if (!fresh) {
                int first = 0;
                while (sites[first].x != sites[i].x || sites[first].y != sites[i].y) ++first;
                throw DataError("voronoi: duplicate sites " + std::to_string(first) + " and " +
                                std::to_string(i));
            }
        }
    }

    const double diag = std::sqrt(box.width() * box.width() + box.height() * box.height());
    const double min_edge = 1e-12 * diag; // edges shorter than this are vertex contacts

    std::vector<VoronoiCellPlanar> cells(n);
    std::vector<std::set<int>> adjacency(n);

    std::vector<int> order(n);
    std::vector<double> dist(n);
    TaggedPolygon poly, scratch;

    for (int i = 0; i < n; ++i) {
        poly.verts = {{box.min_x, box.min_y},
                      {box.max_x, box.min_y},
                      {box.max_x, box.max_y},
                      {box.min_x, box.max_y}};
        poly.tags = {-1, -1, -1, -1};

        std::iota(order.begin(), order.end(), 0);
        for (int j = 0; j < n; ++j) dist[j] = sq_dist(sites[i], sites[j]);
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            return dist[a] != dist[b] ? dist[a] < dist[b] : a < b;
        });

        for (int j : order) {
            if (j == i) continue;
            // The bisector of (i, j) passes at distance d(i,j)/2 from site i;
            // once that exceeds the farthest cell vertex it cannot cut, and
            // neither can any later (more distant) site.
            double r2_max = 0.0;
            for (const Vec2& v : poly.verts) r2_max = std::max(r2_max, sq_dist(sites[i], v));
            if (dist[j] >= 4.0 * r2_max) break;

            const Vec2 mid{0.5 * (sites[i].x + sites[j].x), 0.5 * (sites[i].y + sites[j].y)};
            const Vec2 normal{sites[j].x - sites[i].x, sites[j].y - sites[i].y};
            clip_halfplane(poly, mid, normal, j, scratch);
        }

        VoronoiCellPlanar& cell = cells[i];
        cell.polygon = poly.verts;
        cell.area = polygon_area(poly.verts);
        for (std::size_t e = 0; e < poly.verts.size(); ++e) {
            const int tag = poly.tags[e];
            if (tag < 0) continue;
            const Vec2& a = poly.verts[e];
            const Vec2& b = poly.verts[(e + 1) % poly.verts.size()];
            if (std::sqrt(sq_dist(a, b)) > min_edge) {
                adjacency[i].insert(tag);
                adjacency[tag].insert(i); // bisectors are shared, keep it symmetric
            }
        }
    }

    for (int i = 0; i < n; ++i) {
        cells[i].neighbors.assign(adjacency[i].begin(), adjacency[i].end());
    }
    return cells;
}

} // namespace citytess
