#pragma once
// 2D slices of learned vector fields for plotting. A slice freezes all
// coordinates except a chosen pair (i, j) at an anchor point, samples the
// field's (i, j) components on a lattice, and attaches central-difference
// divergence and curl estimates restricted to the slice plane.

#include <string>
#include <utility>

#include "fielde/model.hpp"

namespace fielde {

struct SliceBounds {
    double x_min = -1.0, x_max = 1.0;
    double y_min = -1.0, y_max = 1.0;
};

struct FieldSlice {
    int dim_x = 0, dim_y = 1;   // coordinate indices (i, j), i != j
    SliceBounds bounds;
    int nx = 0, ny = 0;         // lattice resolution per axis, >= 2
    Vec anchor;                 // frozen off-slice coordinates (full d-vector)
    Vec vx, vy;                 // nx*ny, row-major over (iy, ix)
    Vec div;                    // per-point divergence estimate
    Vec curl;                   // per-point curl z-component estimate

    std::size_t index(int ix, int iy) const {
        return static_cast<std::size_t>(iy) * static_cast<std::size_t>(nx) + static_cast<std::size_t>(ix);
    }
    double x_at(int ix) const {
        return bounds.x_min + (bounds.x_max - bounds.x_min) * ix / static_cast<double>(nx - 1);
    }
    double y_at(int iy) const {
        return bounds.y_min + (bounds.y_max - bounds.y_min) * iy / static_cast<double>(ny - 1);
    }
};

// Samples the lattice; div/curl are left empty until the grids below run.
FieldSlice sample_slice(const ModelState& state, int rel, std::pair<int, int> dims,
                        SliceBounds bounds, std::pair<int, int> resolution, const Vec& anchor);

// Central differences with step h on the slice plane:
//   div  = d(f_i)/d(x_i) + d(f_j)/d(x_j)
//   curl = d(f_j)/d(x_i) - d(f_i)/d(x_j)
void divergence_grid(FieldSlice& slice, const RelationField& field, double h);
void curl_grid(FieldSlice& slice, const RelationField& field, double h);

// Mean entity embedding, the default anchor.
Vec mean_entity_anchor(const ModelState& state);

enum class SliceFormat { csv, svg };

// CSV columns: x,y,vx,vy,div,curl (17 significant digits; re-export of the
// same slice is byte-identical). SVG draws arrows scaled so the longest one
// spans 0.9 of a lattice cell, with a divergence-colored disc at each base.
void export_slice(const FieldSlice& slice, SliceFormat format, const std::string& path);
std::string render_slice(const FieldSlice& slice, SliceFormat format);

}  // namespace fielde
