#include "dirclose/linear_core.hpp"

#include "dirclose/errors.hpp"

#include <algorithm>
#include <string>

namespace dirclose {

BitRow::BitRow(int offset, std::vector<bool> bits, Extent extent)
    : offset_(offset), bits_(std::move(bits)), extent_(extent)
{
}

BitRow BitRow::zeros(int lo, int hi, Extent extent)
{
    if (hi < lo) return BitRow(lo, {}, extent);
    return BitRow(lo, std::vector<bool>(static_cast<std::size_t>(hi - lo + 1), false), extent);
}

BitRow BitRow::ones_at(const std::vector<int>& xs)
{
    if (xs.empty()) return BitRow(0, {}, Extent::FiniteSupport);
    auto [mn, mx] = std::minmax_element(xs.begin(), xs.end());
    BitRow r = zeros(*mn, *mx, Extent::FiniteSupport);
    for (int x : xs) r.set(x, !r.at(x));
    return r;
}

bool BitRow::at(int x) const
{
    if (x < lo() || x > hi()) {
        if (finite_support()) return false;
        throw RangeError("row read at x=" + std::to_string(x) + " outside determined range [" +
                         std::to_string(lo()) + "," + std::to_string(hi()) + "]");
    }
    return bits_[static_cast<std::size_t>(x - offset_)];
}

void BitRow::set(int x, bool v)
{
    if (x < lo() || x > hi()) throw RangeError("row write outside stored range");
    bits_[static_cast<std::size_t>(x - offset_)] = v;
}

std::vector<int> BitRow::ones() const
{
    std::vector<int> out;
    for (std::size_t i = 0; i < bits_.size(); ++i)
        if (bits_[i]) out.push_back(offset_ + static_cast<int>(i));
    return out;
}

BitRow BitRow::trimmed() const
{
    auto xs = ones();
    if (xs.empty()) return BitRow(0, {}, extent_);
    BitRow r = zeros(xs.front(), xs.back(), extent_);
    for (int x : xs) r.set(x, true);
    return r;
}

BitRow BitRow::restricted(int lo_, int hi_) const
{
    BitRow r = zeros(lo_, hi_, Extent::RangeRestricted);
    for (int x = lo_; x <= hi_; ++x) r.set(x, at(x));
    return r;
}

bool operator==(const BitRow& a, const BitRow& b)
{
    if (a.extent_ != b.extent_) return false;
    if (a.finite_support()) return a.ones() == b.ones();
    return a.offset_ == b.offset_ && a.bits_ == b.bits_;
}

BitRow evolve_up(const BitRow& row)
{
    return evolve_up_k(row, 1);
}

BitRow evolve_up_k(const BitRow& row, unsigned k)
{
    // c(i, j+k) = sum over m with C(k,m) odd of c(i+m, j).
    int lo = row.finite_support() ? row.lo() - static_cast<int>(k) : row.lo();
    int hi = row.finite_support() ? row.hi() : row.hi() - static_cast<int>(k);
    if (row.length() == 0) return row;
    BitRow out = BitRow::zeros(lo, hi, row.extent());
    for (int i = lo; i <= hi; ++i) {
        bool v = false;
        for (unsigned m = 0; m <= k; ++m)
            if (binomial_odd(k, m)) v ^= row.at(i + static_cast<int>(m));
        out.set(i, v);
    }
    return row.finite_support() ? out.trimmed() : out;
}

BitRow extend_down(const BitRow& row_above, bool free_bit, int anchor_x)
{
    const int lo = row_above.lo();
    const int hi = row_above.hi() + 1;
    if (row_above.length() == 0 || anchor_x < lo || anchor_x > hi)
        throw RangeError("anchor x=" + std::to_string(anchor_x) + " outside the covered range");
    // r(i) + r(i+1) = above(i), solved outward from the anchor.
    BitRow r = BitRow::zeros(lo, hi, BitRow::Extent::RangeRestricted);
    r.set(anchor_x, free_bit);
    for (int i = anchor_x; i < hi; ++i) r.set(i + 1, r.at(i) ^ row_above.at(i));
    for (int i = anchor_x - 1; i >= lo; --i) r.set(i, r.at(i + 1) ^ row_above.at(i));
    return r;
}

BitRow solve_column_prescription(int column_x, const std::vector<bool>& desired)
{
    if (desired.empty()) throw UsageError("column prescription needs at least one row");
    const auto h = desired.size();
    std::vector<bool> r(h, false);
    // Unitriangular: desired[k] = r[k] + sum over proper submasks m of k of r[m].
    for (std::size_t k = 0; k < h; ++k) {
        bool v = desired[k];
        for (std::size_t m = 0; m < k; ++m)
            if (binomial_odd(k, m)) v = v ^ r[m];
        r[k] = v;
    }
    return BitRow(column_x, std::move(r), BitRow::Extent::FiniteSupport);
}

KernelStep KernelStep::confined(Cell seed, int depth)
{
    // Zero to the right of the seed forces the seed column to be constant 1.
    return {seed, std::vector<bool>(static_cast<std::size_t>(std::max(depth, 0)), true)};
}

BinaryGrid realize_kernel_step(const KernelStep& step, const Window& window)
{
    BinaryGrid grid{window, std::vector<std::uint8_t>(window.size(), 0)};
    auto store = [&](int y, const BitRow& row) {
        if (y < window.y0 || y > window.y1()) return;
        for (int x = window.x0; x <= window.x1(); ++x)
            grid.bits[window.index({x, y})] = row.at(x) ? 1 : 0;
    };

    const BitRow seed_row = BitRow::ones_at({step.seed.x});
    if (step.seed.y <= window.y1()) {
        BitRow row = seed_row;
        for (int y = step.seed.y; y <= window.y1(); ++y) {
            store(y, row);
            row = evolve_up(row);
        }
    }
    if (step.seed.y > window.y0) {
        const auto depth = static_cast<std::size_t>(step.seed.y - window.y0);
        if (step.lower_anchor_bits.size() < depth)
            throw UsageError("kernel step needs " + std::to_string(depth) + " anchor bits, has " +
                             std::to_string(step.lower_anchor_bits.size()));
        BitRow above = seed_row.restricted(std::min(window.x0, step.seed.x), std::max(window.x1(), step.seed.x));
        for (std::size_t d = 0; d < depth; ++d) {
            BitRow below = extend_down(above, step.lower_anchor_bits[d], step.seed.x);
            store(step.seed.y - 1 - static_cast<int>(d), below);
            above = std::move(below);
        }
    }
    return grid;
}

BinaryGrid evolve_window(const BitRow& seed_row, const Window& window)
{
    BinaryGrid grid{window, std::vector<std::uint8_t>(window.size(), 0)};
    BitRow row = seed_row;
    for (int y = window.y0; y <= window.y1(); ++y) {
        for (int x = window.x0; x <= window.x1(); ++x) grid.bits[window.index({x, y})] = row.at(x) ? 1 : 0;
        if (y < window.y1()) row = evolve_up(row);
    }
    return grid;
}

}  // namespace dirclose
