#include "fielde/fieldviz.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "fielde/errors.hpp"

namespace fielde {

FieldSlice sample_slice(const ModelState& state, int rel, std::pair<int, int> dims,
                        SliceBounds bounds, std::pair<int, int> resolution, const Vec& anchor) {
    const auto [di, dj] = dims;
    if (di == dj || di < 0 || dj < 0 || di >= state.dim || dj >= state.dim)
        throw DimensionError("slice dims out of range");
    if (resolution.first < 2 || resolution.second < 2)
        throw DimensionError("slice resolution must be >= 2 per axis");
    if (anchor.size() != static_cast<std::size_t>(state.dim))
        throw DimensionError("anchor must be a full d-vector");
    if (rel < 0 || rel >= state.num_relations()) throw LookupError("relation id out of range");

    FieldSlice slice;
    slice.dim_x = di;
    slice.dim_y = dj;
    slice.bounds = bounds;
    slice.nx = resolution.first;
    slice.ny = resolution.second;
    slice.anchor = anchor;
    slice.vx.resize(static_cast<std::size_t>(slice.nx) * slice.ny);
    slice.vy.resize(slice.vx.size());

    const RelationField& field = state.fields[static_cast<std::size_t>(rel)];
    Vec point = anchor;
    Vec v(static_cast<std::size_t>(state.dim));
    for (int iy = 0; iy < slice.ny; ++iy) {
        for (int ix = 0; ix < slice.nx; ++ix) {
            point[static_cast<std::size_t>(di)] = slice.x_at(ix);
            point[static_cast<std::size_t>(dj)] = slice.y_at(iy);
            field_eval(field, point, v);
            slice.vx[slice.index(ix, iy)] = v[static_cast<std::size_t>(di)];
            slice.vy[slice.index(ix, iy)] = v[static_cast<std::size_t>(dj)];
        }
    }
    return slice;
}

namespace {

// Central difference of the field's `out_dim` component along `along_dim`.
double central_component_diff(const RelationField& field, Vec& point, int along_dim, int out_dim,
                              double h) {
    Vec v(static_cast<std::size_t>(field.dim));
    const double saved = point[static_cast<std::size_t>(along_dim)];
    point[static_cast<std::size_t>(along_dim)] = saved + h;
    field_eval(field, point, v);
    const double up = v[static_cast<std::size_t>(out_dim)];
    point[static_cast<std::size_t>(along_dim)] = saved - h;
    field_eval(field, point, v);
    const double down = v[static_cast<std::size_t>(out_dim)];
    point[static_cast<std::size_t>(along_dim)] = saved;
    return (up - down) / (2.0 * h);
}

template <typename PerPoint>
void slice_grid(FieldSlice& slice, Vec& out, PerPoint&& per_point) {
    out.resize(slice.vx.size());
    Vec point = slice.anchor;
    for (int iy = 0; iy < slice.ny; ++iy) {
        for (int ix = 0; ix < slice.nx; ++ix) {
            point[static_cast<std::size_t>(slice.dim_x)] = slice.x_at(ix);
            point[static_cast<std::size_t>(slice.dim_y)] = slice.y_at(iy);
            out[slice.index(ix, iy)] = per_point(point);
        }
    }
}

void append_double(std::ostringstream& out, double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    out << buf;
}

}  // namespace

void divergence_grid(FieldSlice& slice, const RelationField& field, double h) {
    if (h <= 0.0) throw DimensionError("difference step must be positive");
    slice_grid(slice, slice.div, [&](Vec& p) {
        return central_component_diff(field, p, slice.dim_x, slice.dim_x, h) +
               central_component_diff(field, p, slice.dim_y, slice.dim_y, h);
    });
}

void curl_grid(FieldSlice& slice, const RelationField& field, double h) {
    if (h <= 0.0) throw DimensionError("difference step must be positive");
    slice_grid(slice, slice.curl, [&](Vec& p) {
        return central_component_diff(field, p, slice.dim_x, slice.dim_y, h) -
               central_component_diff(field, p, slice.dim_y, slice.dim_x, h);
    });
}

Vec mean_entity_anchor(const ModelState& state) {
    Vec mean(static_cast<std::size_t>(state.dim), 0.0);
    const int n = state.num_entities();
    if (n == 0) return mean;
    for (int e = 0; e < n; ++e) {
        auto row = state.entity(e);
        for (int i = 0; i < state.dim; ++i) mean[static_cast<std::size_t>(i)] += row[static_cast<std::size_t>(i)];
    }
    for (double& x : mean) x /= static_cast<double>(n);
    return mean;
}

namespace {

std::string render_csv(const FieldSlice& slice) {
    std::ostringstream out;
    out << "x,y,vx,vy,div,curl\n";
    for (int iy = 0; iy < slice.ny; ++iy) {
        for (int ix = 0; ix < slice.nx; ++ix) {
            const std::size_t k = slice.index(ix, iy);
            append_double(out, slice.x_at(ix));
            out << ',';
            append_double(out, slice.y_at(iy));
            out << ',';
            append_double(out, slice.vx[k]);
            out << ',';
            append_double(out, slice.vy[k]);
            out << ',';
            append_double(out, slice.div.empty() ? 0.0 : slice.div[k]);
            out << ',';
            append_double(out, slice.curl.empty() ? 0.0 : slice.curl[k]);
            out << '\n';
        }
    }
    return out.str();
}

// Blue (negative) -> white (zero) -> red (positive), clipped at the extreme.
std::string div_color(double v, double scale) {
    const double t = scale > 0.0 ? std::clamp(v / scale, -1.0, 1.0) : 0.0;
    int r = 255, g = 255, b = 255;
    if (t > 0) {
        g = b = static_cast<int>(std::lround(255.0 * (1.0 - t)));
    } else if (t < 0) {
        r = g = static_cast<int>(std::lround(255.0 * (1.0 + t)));
    }
    char buf[16];
    std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", r, g, b);
    return buf;
}

std::string render_svg(const FieldSlice& slice) {
    constexpr double kCell = 24.0;   // pixels per lattice cell
    constexpr double kArrow = 0.9;   // longest arrow spans this fraction of a cell
    const double width = kCell * (slice.nx + 1);
    const double height = kCell * (slice.ny + 1);

    double max_norm = 0.0;
    double max_div = 0.0;
    for (std::size_t k = 0; k < slice.vx.size(); ++k) {
        max_norm = std::max(max_norm, std::hypot(slice.vx[k], slice.vy[k]));
        if (!slice.div.empty()) max_div = std::max(max_div, std::abs(slice.div[k]));
    }
    const double arrow_scale = max_norm > 0.0 ? kArrow * kCell / max_norm : 0.0;

    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
        << "\" viewBox=\"0 0 " << width << " " << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"#fafafa\"/>\n";

    for (int iy = 0; iy < slice.ny; ++iy) {
        for (int ix = 0; ix < slice.nx; ++ix) {
            const std::size_t k = slice.index(ix, iy);
            const double cx = kCell * (ix + 1);
            // SVG y grows downward; flip so y_max is at the top.
            const double cy = height - kCell * (iy + 1);
            const double dx = slice.vx[k] * arrow_scale;
            const double dy = -slice.vy[k] * arrow_scale;
            const std::string fill =
                slice.div.empty() ? std::string("#dddddd") : div_color(slice.div[k], max_div);
            out << "<circle cx=\"" << cx << "\" cy=\"" << cy << "\" r=\"2.5\" fill=\"" << fill
                << "\" stroke=\"#888888\" stroke-width=\"0.4\"/>\n";
            out << "<line x1=\"" << cx << "\" y1=\"" << cy << "\" x2=\"" << cx + dx << "\" y2=\""
                << cy + dy << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
        }
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace

std::string render_slice(const FieldSlice& slice, SliceFormat format) {
    return format == SliceFormat::csv ? render_csv(slice) : render_svg(slice);
}

void export_slice(const FieldSlice& slice, SliceFormat format, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write slice output: " + path);
    out << render_slice(slice, format);
    if (!out) throw IoError("failed writing slice output: " + path);
}

}  // namespace fielde
