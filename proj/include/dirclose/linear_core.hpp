#pragma once

// Mod-2 row arithmetic for the three-dot rule c(i,j+1) = c(i,j) + c(i+1,j).

#include "dirclose/geometry.hpp"

#include <cstdint>
#include <vector>

namespace dirclose {

/// One row of a binary configuration, stored bit-packed from `offset`.
///
/// A finite-support row is zero outside its stored range. A range-restricted
/// row is only known on its stored range; reading outside it throws.
class BitRow {
public:
    enum class Extent { FiniteSupport, RangeRestricted };

    BitRow() = default;
    BitRow(int offset, std::vector<bool> bits, Extent extent);

    static BitRow zeros(int lo, int hi, Extent extent);
    /// Finite-support row with ones at the given positions.
    static BitRow ones_at(const std::vector<int>& xs);

    int offset() const { return offset_; }
    int lo() const { return offset_; }
    int hi() const { return offset_ + static_cast<int>(bits_.size()) - 1; }
    std::size_t length() const { return bits_.size(); }
    Extent extent() const { return extent_; }
    bool finite_support() const { return extent_ == Extent::FiniteSupport; }

    bool at(int x) const;
    void set(int x, bool v);
    /// Positions of ones within the stored range, ascending.
    std::vector<int> ones() const;
    /// Same row with stored range trimmed to its support (finite rows only).
    BitRow trimmed() const;
    /// Restrict or zero-pad to [lo, hi] as a range-restricted row.
    BitRow restricted(int lo, int hi) const;

    friend bool operator==(const BitRow& a, const BitRow& b);

private:
    int offset_ = 0;
    std::vector<bool> bits_;
    Extent extent_ = Extent::FiniteSupport;
};

/// Binomial coefficient C(k, m) mod 2, by Lucas: odd iff (m & k) == m.
constexpr bool binomial_odd(std::uint64_t k, std::uint64_t m) { return (m & k) == m; }

/// The row one step above.
BitRow evolve_up(const BitRow& row);
/// The row k steps above, computed from binomial coefficients mod 2.
BitRow evolve_up_k(const BitRow& row, unsigned k);
/// A row below `row_above` whose bit at `anchor_x` is `free_bit`.
///
/// The result is range-restricted to [row_above.lo(), row_above.hi() + 1].
BitRow extend_down(const BitRow& row_above, bool free_bit, int anchor_x);

/// Finite-support seed row r such that k-fold upward evolution of r has
/// desired[k] at column `column_x`. Nonzero bits lie in
/// [column_x, column_x + desired.size() - 1].
BitRow solve_column_prescription(int column_x, const std::vector<bool>& desired);

/// A kernel element seeded by a single one at `seed`.
///
/// Rows above the seed are its upward evolution. Each row below is an
/// extend_down with the next anchor bit at x = seed.x.
struct KernelStep {
    Cell seed;
    std::vector<bool> lower_anchor_bits;

    /// Anchor bits that keep the element zero on {x > seed.x} for `depth` rows.
    static KernelStep confined(Cell seed, int depth);
};

/// Dense binary window contents, row-major bottom row first.
struct BinaryGrid {
    Window window;
    std::vector<std::uint8_t> bits;

    bool at(const Cell& c) const { return bits[window.index(c)] != 0; }
};

BinaryGrid realize_kernel_step(const KernelStep& step, const Window& window);

/// Upward evolution of a finite-support row sampled on a window whose bottom
/// row is `seed_row`'s row.
BinaryGrid evolve_window(const BitRow& seed_row, const Window& window);

}  // namespace dirclose
