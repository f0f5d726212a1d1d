#pragma once

#include "dirclose/geometry.hpp"
#include "dirclose/pattern.hpp"

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dirclose {

class SubshiftSpec;

/// A sliding block code: a finite neighborhood of offsets and a total rule
/// table from neighborhood tuples to target symbols.
///
/// The neighborhood is kept in canonical cell order. A tuple (s_0, ..., s_{k-1})
/// read at the offsets in that order is stored at index sum s_i * |source|^i.
class BlockCode {
public:
    BlockCode(Alphabet source, Alphabet target, std::vector<Cell> neighborhood, std::vector<Symbol> rule);

    const Alphabet& source() const { return source_; }
    const Alphabet& target() const { return target_; }
    const std::vector<Cell>& neighborhood() const { return neighborhood_; }
    const std::vector<Symbol>& rule() const { return rule_; }

    Symbol lookup(std::span<const Symbol> tuple) const;
    std::size_t tuple_count() const { return rule_.size(); }
    std::vector<Symbol> tuple_at(std::size_t index) const;
    bool horizontal() const;

    friend bool operator==(const BlockCode&, const BlockCode&) = default;

private:
    Alphabet source_;
    Alphabet target_;
    std::vector<Cell> neighborhood_;
    std::vector<Symbol> rule_;
};

/// The pair code: (a, b) at offsets (0,0), (1,0) maps to (a, 0) if b = 0 and
/// to (0, 1) if b = 1. This is the 2-block presentation followed by the
/// projection sending 11 to 01.
BlockCode builtin_g();
/// Left inverse of g: the bit at i is the second component of the pair at i-1.
BlockCode builtin_g_inverse();
/// g applied on every row.
BlockCode builtin_f();
/// g_inverse applied on every row.
BlockCode builtin_f_inverse();
BlockCode identity_code(const Alphabet& a);

/// Built-ins by CLI name: @g, @ginv, @f, @finv.
BlockCode builtin_code(std::string_view name);

/// Row-wise lift of a code whose offsets are all horizontal.
BlockCode lift_rows(const BlockCode& code1d);

/// Applies the code wherever the whole neighborhood is assigned.
Pattern apply(const BlockCode& code, const Pattern& pattern);

/// The code computing outer(inner(x)); neighborhood is the Minkowski sum.
BlockCode compose(const BlockCode& outer, const BlockCode& inner);

struct InjectivityReport {
    bool injective = true;
    /// Source cells compared: those whose every neighborhood image lies in
    /// the output support.
    Shape compared;
    /// Source cells on which the image determines the source pattern.
    Shape recovered;
    std::optional<std::pair<Pattern, Pattern>> collision;
};

/// Window-relative injectivity of `code` on valid patterns of `spec`.
InjectivityReport check_injectivity_on_window(const BlockCode& code, const SubshiftSpec& spec,
                                              const Window& window);

/// CODE v1 text format.
void write_code(std::ostream& os, const BlockCode& code);
BlockCode read_code(std::istream& is);
/// A path to a CODE file or a built-in name starting with '@'.
BlockCode load_code(const std::string& path_or_name);

}  // namespace dirclose
