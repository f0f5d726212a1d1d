#include "dirclose/geometry.hpp"

#include "dirclose/errors.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>

namespace dirclose {

std::ostream& operator<<(std::ostream& os, const Cell& c)
{
    return os << '(' << c.x << ',' << c.y << ')';
}

std::string to_string(const Cell& c)
{
    return "(" + std::to_string(c.x) + "," + std::to_string(c.y) + ")";
}

Window::Window(int x0_, int y0_, int width_, int height_)
    : x0(x0_), y0(y0_), width(width_), height(height_)
{
    if (width < 1 || height < 1) throw UsageError("window must be at least 1x1");
}

std::vector<Cell> Window::cells() const
{
    std::vector<Cell> out;
    out.reserve(size());
    for (int y = y0; y <= y1(); ++y)
        for (int x = x0; x <= x1(); ++x) out.push_back({x, y});
    return out;
}

Window Window::dilated(int margin) const
{
    if (margin < 0) throw UsageError("margin must be nonnegative");
    return {x0 - margin, y0 - margin, width + 2 * margin, height + 2 * margin};
}

std::string to_string(const Window& w)
{
    return std::to_string(w.width) + "x" + std::to_string(w.height) + "+" + std::to_string(w.x0) +
           "+" + std::to_string(w.y0);
}

Shape::Shape(std::vector<Cell> cells) : cells_(std::move(cells))
{
    std::sort(cells_.begin(), cells_.end());
    cells_.erase(std::unique(cells_.begin(), cells_.end()), cells_.end());
}

bool Shape::contains(const Cell& c) const
{
    return std::binary_search(cells_.begin(), cells_.end(), c);
}

Shape Shape::without(const Cell& c) const
{
    std::vector<Cell> out;
    for (const auto& u : cells_)
        if (u != c) out.push_back(u);
    return Shape(std::move(out));
}

Shape Shape::translated(const Cell& by) const
{
    std::vector<Cell> out;
    for (const auto& u : cells_) out.push_back(u + by);
    return Shape(std::move(out));
}

Shape Shape::normalized() const
{
    if (cells_.empty()) return *this;
    auto box = bounding_box();
    return translated({-box.x0, -box.y0});
}

Window Shape::bounding_box() const
{
    if (cells_.empty()) throw UsageError("bounding box of an empty shape");
    int x0 = cells_.front().x, x1 = x0, y0 = cells_.front().y, y1 = y0;
    for (const auto& c : cells_) {
        x0 = std::min(x0, c.x);
        x1 = std::max(x1, c.x);
        y0 = std::min(y0, c.y);
        y1 = std::max(y1, c.y);
    }
    return {x0, y0, x1 - x0 + 1, y1 - y0 + 1};
}

std::string to_string(const Shape& s)
{
    std::string out;
    for (const auto& c : s) {
        if (!out.empty()) out += ';';
        out += to_string(c);
    }
    return out;
}

Direction::Direction(int p, int q)
{
    if (p == 0 && q == 0) throw UsageError("direction must be nonzero");
    int g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
    p_ = p / g;
    q_ = q / g;
}

std::string to_string(const Direction& d)
{
    return std::to_string(d.p()) + "," + std::to_string(d.q());
}

std::string_view to_string(Side s)
{
    switch (s) {
    case Side::Right: return "right";
    case Side::Left: return "left";
    case Side::Determinism: return "determinism";
    }
    return "?";
}

std::string_view to_string(CellClass c)
{
    switch (c) {
    case CellClass::Known: return "known";
    case CellClass::Target: return "target";
    case CellClass::Outside: return "outside";
    }
    return "?";
}

namespace {

long long cross(const Cell& o, const Cell& a, const Cell& b)
{
    return static_cast<long long>(a.x - o.x) * (b.y - o.y) -
           static_cast<long long>(a.y - o.y) * (b.x - o.x);
}

}  // namespace

std::vector<Cell> extremal_points(const Shape& shape)
{
    // Monotone chain; strict turns only, so collinear edge points drop out.
    std::vector<Cell> pts = shape.cells();
    std::sort(pts.begin(), pts.end(), [](const Cell& a, const Cell& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    if (pts.size() <= 2) {
        std::vector<Cell> out = pts;
        std::sort(out.begin(), out.end());
        return out;
    }
    std::vector<Cell> hull(2 * pts.size());
    std::size_t k = 0;
    for (const auto& p : pts) {
        while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
        hull[k++] = p;
    }
    for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
        while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
        hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    // All points collinear: the chain collapses to the two endpoints.
    std::sort(hull.begin(), hull.end());
    hull.erase(std::unique(hull.begin(), hull.end()), hull.end());
    return hull;
}

CellClass classify_cell(const HalfPlaneQuery& query, const Cell& u)
{
    const long long p = query.direction.p();
    const long long q = query.direction.q();
    const long long dot = u.x * p + u.y * q;
    const long long edge = u.x * q - u.y * p;
    if (dot > 0) return query.side == Side::Determinism ? CellClass::Target : CellClass::Outside;
    if (dot < 0) return CellClass::Known;
    switch (query.side) {
    case Side::Right:
    case Side::Determinism: return edge < 0 ? CellClass::Known : CellClass::Target;
    case Side::Left: return edge > 0 ? CellClass::Known : CellClass::Target;
    }
    return CellClass::Outside;
}

WindowSplit window_split(const HalfPlaneQuery& query, const Window& window)
{
    std::vector<Cell> known, target;
    for (const auto& c : window.cells()) {
        switch (classify_cell(query, c)) {
        case CellClass::Known: known.push_back(c); break;
        case CellClass::Target: target.push_back(c); break;
        case CellClass::Outside: break;
        }
    }
    return {Shape(std::move(known)), Shape(std::move(target))};
}

namespace {

int parse_int(std::string_view& s, std::string_view what)
{
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    int v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc()) throw UsageError("malformed " + std::string(what));
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    return v;
}

void expect(std::string_view& s, char c, std::string_view what)
{
    if (s.empty() || s.front() != c) throw UsageError("malformed " + std::string(what));
    s.remove_prefix(1);
}

void trim(std::string_view& s)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
}

std::pair<int, int> parse_pair(std::string_view s, std::string_view what)
{
    trim(s);
    int a = parse_int(s, what);
    expect(s, ',', what);
    int b = parse_int(s, what);
    if (!s.empty()) throw UsageError("malformed " + std::string(what));
    return {a, b};
}

}  // namespace

Direction parse_direction(std::string_view text)
{
    auto [p, q] = parse_pair(text, "direction");
    return Direction(p, q);
}

Cell parse_cell(std::string_view text)
{
    auto [x, y] = parse_pair(text, "cell");
    return {x, y};
}

Window parse_window(std::string_view text)
{
    std::string_view s = text;
    int w = parse_int(s, "window");
    expect(s, 'x', "window");
    int h = parse_int(s, "window");
    int x = 0, y = 0;
    if (!s.empty()) {
        if (s.front() != '+' && s.front() != '-') throw UsageError("malformed window");
        x = parse_int(s, "window");
        if (s.empty() || (s.front() != '+' && s.front() != '-')) throw UsageError("malformed window");
        y = parse_int(s, "window");
    }
    if (!s.empty()) throw UsageError("malformed window");
    return Window(x, y, w, h);
}

Shape parse_shape(std::string_view text)
{
    std::vector<Cell> cells;
    std::string_view s = text;
    while (true) {
        trim(s);
        if (s.empty()) break;
        expect(s, '(', "shape");
        auto close = s.find(')');
        if (close == std::string_view::npos) throw UsageError("malformed shape");
        cells.push_back(parse_cell(s.substr(0, close)));
        s.remove_prefix(close + 1);
        trim(s);
        if (s.empty()) break;
        expect(s, ';', "shape");
    }
    if (cells.empty()) throw UsageError("shape must be nonempty");
    return Shape(std::move(cells));
}

Side parse_side(std::string_view text)
{
    if (text == "left") return Side::Left;
    if (text == "right") return Side::Right;
    if (text == "determinism") return Side::Determinism;
    throw UsageError("side must be left, right or determinism");
}

}  // namespace dirclose
