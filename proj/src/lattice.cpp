#include "chemosem/lattice.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace chemosem {

Lattice::Lattice(int size) : size_(size) {
    // Cell indices are stored as uint16 in traces.
    if (size < 2 || size > 255) {
        throw std::invalid_argument("lattice size must be in [2, 255], got " + std::to_string(size));
    }
}

Position Lattice::clamp(int i, int j) const {
    return {std::clamp(i, 1, size_), std::clamp(j, 1, size_)};
}

std::vector<Position> Lattice::ring(Position center, int radius) const {
    std::vector<Position> cells;
    for_each_at_distance(center, radius, [&](Position p) { cells.push_back(p); });
    return cells;
}

std::vector<Position> Lattice::neighbourhood(Position center) const {
    std::vector<Position> cells;
    for (int i = center.i - 1; i <= center.i + 1; ++i) {
        for (int j = center.j - 1; j <= center.j + 1; ++j) {
            if (contains({i, j})) cells.push_back({i, j});
        }
    }
    return cells;
}

}  // namespace chemosem
