#pragma once

#include <compare>
#include <cstdlib>
#include <vector>

namespace chemosem {

/// Cell on the N x N lattice, 1-based in both coordinates.
struct Position {
    int i = 1;
    int j = 1;

    friend constexpr auto operator<=>(const Position&, const Position&) = default;
};

/// max(|di|, |dj|), the lattice metric.
constexpr int chebyshev_distance(Position a, Position b) {
    const int di = a.i > b.i ? a.i - b.i : b.i - a.i;
    const int dj = a.j > b.j ? a.j - b.j : b.j - a.j;
    return di > dj ? di : dj;
}

/// Geometry of the square lattice {1..N} x {1..N}.
///
/// Cells are also addressed by a dense row-major index in [0, N*N), which is
/// what traces and histograms store.
class Lattice {
public:
    explicit Lattice(int size);

    int size() const { return size_; }
    int cell_count() const { return size_ * size_; }

    bool contains(Position p) const {
        return p.i >= 1 && p.i <= size_ && p.j >= 1 && p.j <= size_;
    }

    int index(Position p) const { return (p.i - 1) * size_ + (p.j - 1); }
    Position at(int index) const { return {index / size_ + 1, index % size_ + 1}; }

    /// Maps an arbitrary integer point to the nearest cell inside the lattice.
    Position clamp(int i, int j) const;

    /// All lattice cells at exactly Chebyshev distance `radius` from `center`,
    /// in row-major order. Empty only if no such cell exists.
    std::vector<Position> ring(Position center, int radius) const;

    /// Largest distance from `p` to any cell; the distance to the farthest corner.
    int farthest_distance(Position p) const {
        const int di = p.i - 1 > size_ - p.i ? p.i - 1 : size_ - p.i;
        const int dj = p.j - 1 > size_ - p.j ? p.j - 1 : size_ - p.j;
        return di > dj ? di : dj;
    }

    /// All lattice cells within distance 1 of `center` (center included).
    std::vector<Position> neighbourhood(Position center) const;

    /// Visits the cells at exact distance `radius` in row-major order without
    /// allocating.
    template <typename Visit>
    void for_each_at_distance(Position center, int radius, Visit&& visit) const {
        const int i_lo = center.i - radius < 1 ? 1 : center.i - radius;
        const int i_hi = center.i + radius > size_ ? size_ : center.i + radius;
        const int j_lo = center.j - radius < 1 ? 1 : center.j - radius;
        const int j_hi = center.j + radius > size_ ? size_ : center.j + radius;
        for (int i = i_lo; i <= i_hi; ++i) {
            const bool edge_row = std::abs(i - center.i) == radius;
            for (int j = j_lo; j <= j_hi; ++j) {
                if (edge_row || std::abs(j - center.j) == radius) {
                    visit(Position{i, j});
                }
            }
        }
    }

private:
    int size_;
};

/// Offset of a single-cell move encoded in [0, 9): (di + 1) * 3 + (dj + 1).
/// Index 4 is "stay".
inline constexpr int kMoveCount = 9;

constexpr int move_index(Position from, Position to) {
    return (to.i - from.i + 1) * 3 + (to.j - from.j + 1);
}

}  // namespace chemosem
