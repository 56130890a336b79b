#pragma once

// Grid specification for functions on Q = R^4 x R^3 and the matching
// centered frequency grids.

#include <array>
#include <cstddef>
#include <stdexcept>

#include "qheis/group.hpp"

namespace qheis {

inline constexpr double kPi = 3.14159265358979323846;

struct GridSpec {
    double half_extent_x = 4.0;
    int n_x = 8;
    double half_extent_t = 8.0;
    int n_t = 8;

    void validate() const {
        if (!(half_extent_x > 0) || !(half_extent_t > 0))
            throw std::invalid_argument("GridSpec: extents must be positive");
        if (n_x < 4 || n_t < 4 || n_x % 2 || n_t % 2)
            throw std::invalid_argument("GridSpec: counts must be even and >= 4");
    }

    double hx() const { return 2.0 * half_extent_x / n_x; }
    double ht() const { return 2.0 * half_extent_t / n_t; }
    // frequency spacings of the centered DFT grids
    double dy() const { return 2.0 * kPi / (n_x * hx()); }
    double da() const { return 2.0 * kPi / (n_t * ht()); }

    double xnode(int j) const { return (j - n_x / 2) * hx(); }
    double tnode(int j) const { return (j - n_t / 2) * ht(); }
    double ynode(int k) const { return (k - n_x / 2) * dy(); }
    double anode(int k) const { return (k - n_t / 2) * da(); }

    std::size_t n_xtotal() const {
        std::size_t n = n_x;
        return n * n * n * n;
    }
    std::size_t n_ttotal() const {
        std::size_t n = n_t;
        return n * n * n;
    }
    std::size_t size() const { return n_xtotal() * n_ttotal(); }

    // row-major axis order (x0,x1,x2,x3,t1,t2,t3)
    std::size_t index(const std::array<int, 7>& j) const {
        std::size_t idx = 0;
        for (int k = 0; k < 4; ++k) idx = idx * n_x + j[k];
        for (int k = 4; k < 7; ++k) idx = idx * n_t + j[k];
        return idx;
    }

    GroupPoint point(const std::array<int, 7>& j) const {
        return {Quat{xnode(j[0]), xnode(j[1]), xnode(j[2]), xnode(j[3])},
                Vec3{tnode(j[4]), tnode(j[5]), tnode(j[6])}};
    }

    // spatial-frequency point (y, a) with the same index layout
    GroupPoint freq_point(const std::array<int, 7>& j) const {
        return {Quat{ynode(j[0]), ynode(j[1]), ynode(j[2]), ynode(j[3])},
                Vec3{anode(j[4]), anode(j[5]), anode(j[6])}};
    }

    bool same_as(const GridSpec& o) const {
        return half_extent_x == o.half_extent_x && n_x == o.n_x &&
               half_extent_t == o.half_extent_t && n_t == o.n_t;
    }
};

template <typename F>
void for_each_index(const GridSpec& g, F&& fn) {
    std::array<int, 7> j{};
    std::size_t flat = 0;
    for (j[0] = 0; j[0] < g.n_x; ++j[0])
        for (j[1] = 0; j[1] < g.n_x; ++j[1])
            for (j[2] = 0; j[2] < g.n_x; ++j[2])
                for (j[3] = 0; j[3] < g.n_x; ++j[3])
                    for (j[4] = 0; j[4] < g.n_t; ++j[4])
                        for (j[5] = 0; j[5] < g.n_t; ++j[5])
                            for (j[6] = 0; j[6] < g.n_t; ++j[6]) fn(j, flat++);
}

// iterate t-frequency indices only
template <typename F>
void for_each_afreq(const GridSpec& g, F&& fn) {
    std::array<int, 3> m{};
    std::size_t flat = 0;
    for (m[0] = 0; m[0] < g.n_t; ++m[0])
        for (m[1] = 0; m[1] < g.n_t; ++m[1])
            for (m[2] = 0; m[2] < g.n_t; ++m[2]) fn(m, flat++);
}

} // namespace qheis
