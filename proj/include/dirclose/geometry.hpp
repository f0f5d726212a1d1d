#pragma once

#include <compare>
#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace dirclose {

/// A point of the integer lattice. Ordered by row first (y, then x), which
/// is the canonical cell order used for all deterministic output.
struct Cell {
    int x = 0;
    int y = 0;

    friend bool operator==(const Cell&, const Cell&) = default;
    friend std::strong_ordering operator<=>(const Cell& a, const Cell& b)
    {
        if (auto c = a.y <=> b.y; c != 0) return c;
        return a.x <=> b.x;
    }
    Cell operator+(const Cell& o) const { return {x + o.x, y + o.y}; }
    Cell operator-(const Cell& o) const { return {x - o.x, y - o.y}; }
};

std::ostream& operator<<(std::ostream& os, const Cell& c);
std::string to_string(const Cell& c);

/// Axis-aligned rectangle of cells, inclusive lower-left corner.
struct Window {
    int x0 = 0;
    int y0 = 0;
    int width = 1;
    int height = 1;

    Window() = default;
    Window(int x0, int y0, int width, int height);

    int x1() const { return x0 + width - 1; }
    int y1() const { return y0 + height - 1; }
    std::size_t size() const { return static_cast<std::size_t>(width) * height; }
    bool contains(const Cell& c) const
    {
        return c.x >= x0 && c.x <= x1() && c.y >= y0 && c.y <= y1();
    }
    /// Row-major index (bottom row first); caller guarantees containment.
    std::size_t index(const Cell& c) const
    {
        return static_cast<std::size_t>(c.y - y0) * width + (c.x - x0);
    }
    Cell cell_at(std::size_t i) const
    {
        return {x0 + static_cast<int>(i % width), y0 + static_cast<int>(i / width)};
    }
    /// All cells in canonical order.
    std::vector<Cell> cells() const;
    Window dilated(int margin) const;
    Window translated(const Cell& by) const { return {x0 + by.x, y0 + by.y, width, height}; }

    friend bool operator==(const Window&, const Window&) = default;
};

std::string to_string(const Window& w);

/// A finite nonempty set of cells kept sorted in canonical order.
class Shape {
public:
    Shape() = default;
    explicit Shape(std::vector<Cell> cells);

    const std::vector<Cell>& cells() const { return cells_; }
    std::size_t size() const { return cells_.size(); }
    bool empty() const { return cells_.empty(); }
    bool contains(const Cell& c) const;
    Shape without(const Cell& c) const;
    Shape translated(const Cell& by) const;
    /// Translate so the minimum x and minimum y are both zero.
    Shape normalized() const;
    Window bounding_box() const;

    auto begin() const { return cells_.begin(); }
    auto end() const { return cells_.end(); }

    friend bool operator==(const Shape&, const Shape&) = default;
    friend auto operator<=>(const Shape& a, const Shape& b) { return a.cells_ <=> b.cells_; }

private:
    std::vector<Cell> cells_;
};

std::string to_string(const Shape& s);

/// A rational direction stored as a primitive integer vector.
class Direction {
public:
    Direction(int p, int q);

    int p() const { return p_; }
    int q() const { return q_; }

    friend bool operator==(const Direction&, const Direction&) = default;

private:
    int p_;
    int q_;
};

std::string to_string(const Direction& d);

enum class Side { Right, Left, Determinism };

std::string_view to_string(Side s);

struct HalfPlaneQuery {
    Direction direction;
    Side side;
};

enum class CellClass { Known, Target, Outside };

std::string_view to_string(CellClass c);

/// Cells of the shape that are vertices of its convex hull, in canonical order.
std::vector<Cell> extremal_points(const Shape& shape);

/// Classifies a cell against the rotated half-plane of a closing query.
///
/// With v = (p, q), the un-rotated coordinates of u are (edge, dot) where
/// dot = u.x*p + u.y*q and edge = u.x*q - u.y*p. Known cells lie in the open
/// half-plane dot < 0 plus one boundary half-line; the other boundary
/// half-line (including the origin) is the target.
CellClass classify_cell(const HalfPlaneQuery& query, const Cell& u);

struct WindowSplit {
    Shape known;
    Shape target;
};

WindowSplit window_split(const HalfPlaneQuery& query, const Window& window);

// Command-line syntaxes.
Direction parse_direction(std::string_view text);  // "p,q"
Window parse_window(std::string_view text);        // "WxH+X+Y"
Cell parse_cell(std::string_view text);            // "x,y"
Shape parse_shape(std::string_view text);          // "(x,y);(x,y);..."
Side parse_side(std::string_view text);            // left|right|determinism

}  // namespace dirclose
