#pragma once

#include <vector>

#include "citytess/geo.hpp"

namespace citytess {

struct VoronoiCellPlanar {
    std::vector<Vec2> polygon;  // convex, counter-clockwise, open ring
    std::vector<int> neighbors; // site indices sharing a positive-length edge, ascending
    double area = 0.0;
};

// Clipped Voronoi diagram of point sites inside a rectangle. Each cell is cut
// from the rectangle by the perpendicular-bisector half-planes of the other
// sites, nearest first; a site whose bisector lies beyond the farthest cell
// vertex can no longer cut and ends the scan. Adjacency is read off the
// surviving bisector edges and symmetrized.
//
// Requires >= 1 site, all sites strictly inside `box`, pairwise distinct.
std::vector<VoronoiCellPlanar> voronoi_diagram(const std::vector<Vec2>& sites, const Rect& box);

} // namespace citytess
