#pragma once

#include "dirclose/geometry.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace dirclose {

using Symbol = std::uint8_t;

/// A named finite ordered symbol set.
struct Alphabet {
    std::string name;
    std::vector<std::string> symbols;

    std::size_t size() const { return symbols.size(); }
    std::optional<Symbol> index_of(std::string_view token) const;

    friend bool operator==(const Alphabet&, const Alphabet&) = default;
};

/// Single bits {0, 1}.
const Alphabet& alphabet_b();
/// Bit pairs in declared order 00, 10, 01, 11. The symbol index of the pair
/// (left, right) is left + 2 * right.
const Alphabet& alphabet_p();
/// Built-in alphabet by name ("B" or "P").
const Alphabet& alphabet_by_name(std::string_view name);

constexpr Symbol pair_symbol(bool left, bool right) { return static_cast<Symbol>(left + 2 * right); }
constexpr bool pair_left(Symbol s) { return (s & 1) != 0; }
constexpr bool pair_right(Symbol s) { return (s & 2) != 0; }

/// A finite partial assignment of symbols to cells.
///
/// Cells live in a rectangular frame; cells of the frame may be unassigned.
/// An empty frame (width or height 0) holds nothing.
class Pattern {
public:
    Pattern() = default;
    explicit Pattern(Alphabet alphabet);
    Pattern(Alphabet alphabet, const Window& frame);

    const Alphabet& alphabet() const { return alphabet_; }
    bool frame_empty() const { return width_ == 0 || height_ == 0; }
    /// Frame as a window; throws on an empty frame.
    Window frame() const;

    std::optional<Symbol> get(const Cell& c) const;
    Symbol at(const Cell& c) const;  // throws if unassigned
    void set(const Cell& c, Symbol s);
    void unset(const Cell& c);
    bool assigned(const Cell& c) const { return get(c).has_value(); }

    /// Assigned cells, canonical order.
    std::vector<Cell> support() const;
    std::size_t assigned_count() const;
    /// Every frame cell assigned (and the frame nonempty).
    bool is_total() const;

    Pattern restricted_to(const Shape& cells) const;
    Pattern translated(const Cell& by) const;
    /// Copy with the frame grown or shrunk to `frame`; cells outside are dropped.
    Pattern reframed(const Window& frame) const;

    /// Same alphabet and the same assigned cells with the same symbols.
    friend bool operator==(const Pattern& a, const Pattern& b);
    /// Lexicographic over (cell, symbol) of assigned cells in canonical order.
    friend bool operator<(const Pattern& a, const Pattern& b);

private:
    std::size_t slot(const Cell& c) const;
    bool in_frame(const Cell& c) const;

    Alphabet alphabet_;
    int x0_ = 0;
    int y0_ = 0;
    int width_ = 0;
    int height_ = 0;
    std::vector<std::int16_t> data_;  // -1 = unassigned
};

/// PAT v1 block: header `pat <alphabet> <w> <h> <x0> <y0>`, rows top to bottom.
void write_pat(std::ostream& os, const Pattern& p);
std::string to_pat(const Pattern& p);
/// Reads one PAT block, skipping blank lines before the header.
Pattern read_pat(std::istream& is);
Pattern parse_pat(const std::string& text);
Pattern load_pat(const std::string& path);

}  // namespace dirclose
