#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "cenet/common.hpp"

namespace cenet {

// Row-major H x W map of doubles.
struct Grid {
    int h = 0, w = 0;
    std::vector<double> v;

    Grid() = default;
    Grid(int h_, int w_, double fill = 0.0) : h(h_), w(w_), v(static_cast<std::size_t>(h_) * w_, fill) {}

    double& at(int y, int x) {
        assert(y >= 0 && y < h && x >= 0 && x < w);
        return v[static_cast<std::size_t>(y) * w + x];
    }
    double at(int y, int x) const {
        assert(y >= 0 && y < h && x >= 0 && x < w);
        return v[static_cast<std::size_t>(y) * w + x];
    }
    std::size_t size() const { return v.size(); }
    bool same_shape(const Grid& o) const { return h == o.h && w == o.w; }
};

// Row-major C x H x W volume.
struct Volume {
    int c = 0, h = 0, w = 0;
    std::vector<double> v;

    Volume() = default;
    Volume(int c_, int h_, int w_, double fill = 0.0)
        : c(c_), h(h_), w(w_), v(static_cast<std::size_t>(c_) * h_ * w_, fill) {}

    double& at(int ci, int y, int x) {
        assert(ci >= 0 && ci < c && y >= 0 && y < h && x >= 0 && x < w);
        return v[(static_cast<std::size_t>(ci) * h + y) * w + x];
    }
    double at(int ci, int y, int x) const {
        assert(ci >= 0 && ci < c && y >= 0 && y < h && x >= 0 && x < w);
        return v[(static_cast<std::size_t>(ci) * h + y) * w + x];
    }
    double* plane(int ci) { return v.data() + static_cast<std::size_t>(ci) * h * w; }
    const double* plane(int ci) const { return v.data() + static_cast<std::size_t>(ci) * h * w; }
    std::size_t size() const { return v.size(); }
    bool same_shape(const Volume& o) const { return c == o.c && h == o.h && w == o.w; }
};

}  // namespace cenet
