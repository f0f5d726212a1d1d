#pragma once

#include "dirclose/geometry.hpp"
#include "dirclose/linear_core.hpp"
#include "dirclose/pattern.hpp"
#include "dirclose/subshift.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace dirclose {

/// Does `known` code `target` among valid patterns on `window`?
struct CodingQuery {
    SubshiftSpec spec;
    Window window;
    Shape known;
    Shape target;
};

enum class Scope { Window, Certified };

std::string_view to_string(Scope s);

/// Two valid patterns that agree on the known cells and differ on a target.
struct Witness {
    Pattern first;
    Pattern second;
    std::size_t agree = 0;      // known cells compared
    std::vector<Cell> differ;   // target cells where the two differ
};

struct Verdict {
    enum class Kind { Codes, Refuted, Inconclusive };

    Kind kind = Kind::Inconclusive;
    Scope scope = Scope::Window;
    std::optional<Witness> witness;
    std::string reason;
    std::vector<std::string> notes;

    bool codes() const { return kind == Kind::Codes; }
    bool refuted() const { return kind == Kind::Refuted; }
};

std::string_view to_string(Verdict::Kind k);

struct SearchOptions {
    /// Maximum degrees of freedom of the searched base window.
    std::size_t cell_budget = 64;
    std::size_t state_budget = kDefaultStateBudget;
};

/// Exhaustive coding check on a window.
///
/// Codes verdicts hold for infinite configurations too (every configuration
/// restricts to a locally valid window pattern), so they carry scope
/// Certified. Refuted verdicts are window-relative; only a witness with a
/// recipe can be lifted, by certify_witness.
Verdict check_coding(const CodingQuery& query, const SearchOptions& options = {});

/// Closing (or determinism) check for one boundary cell.
Verdict check_closing(const SubshiftSpec& spec, const Direction& direction, Side side, const Window& window,
                      const Cell& target_cell, const SearchOptions& options = {});

/// How a witness pair for "not closing to the left" was built.
struct WitnessRecipe {
    Cell target_cell;
    Side side = Side::Left;
    Window window;
    /// Kernel element added to the base configuration.
    KernelStep step;
    /// Column of the base configuration that hides the difference.
    int mask_column = 0;
    /// Prescribed bits of that column, from the window's bottom row upward.
    std::vector<bool> mask_bits;
};

struct WitnessResult {
    Pattern first;
    Pattern second;
    WitnessRecipe recipe;
    Verdict verdict;
};

/// Builds two Y patterns that agree on the known cells of the leftward
/// closing query and differ at `target_cell`.
WitnessResult construct_witness(Side side, const Cell& target_cell, const Window& window);

/// The pattern pair a recipe describes.
std::pair<Pattern, Pattern> realize_witness(const WitnessRecipe& recipe);

struct Certification {
    bool certified = false;
    std::vector<std::string> facts;
};

/// Decides whether a witness pair lifts to infinite configurations.
Certification certify_witness(const std::pair<Pattern, Pattern>& pair, Side side, const Direction& direction,
                              const SubshiftSpec& spec, const WitnessRecipe* recipe);

struct PermutivityReport {
    Window window;
    std::vector<std::pair<Cell, Verdict>> points;  // one per extremal point
    bool permutive = false;
};

PermutivityReport check_extremally_permutive(const SubshiftSpec& spec, const Shape& shape, int margin,
                                             const SearchOptions& options = {});

struct CornerContext {
    Pattern context;                              // restriction to shape minus {u, v}
    std::vector<std::pair<Symbol, Symbol>> pairs; // (value at u, value at v)
};

struct CornerPermutation {
    bool permutive = false;
    std::vector<CornerContext> contexts;
    std::optional<CornerContext> offending;
};

CornerPermutation corner_permutation(const SubshiftSpec& spec, const Shape& shape, const Cell& u, const Cell& v,
                                     int margin, const SearchOptions& options = {});

struct DirectionEntry {
    Direction direction;
    Side side;
    Verdict verdict;
};

struct DirectionReport {
    std::vector<DirectionEntry> entries;
    std::size_t refuted = 0;
    bool all_codes() const;
};

/// Closing checks at the origin, both sides, for each direction. The shape
/// must be extremally permutive; every entry is then expected to code.
DirectionReport crossvalidate_directions(const SubshiftSpec& spec, const Shape& shape,
                                         const std::vector<Direction>& directions, const Window& window,
                                         int margin = 1, const SearchOptions& options = {});

struct PolygonalFailure {
    Shape shape;
    Cell failing_point;
    Verdict verdict;
};

struct PolygonalReport {
    std::vector<PolygonalFailure> failures;
    std::vector<Shape> permutive;
    std::size_t shapes_checked = 0;
    bool all_fail() const { return permutive.empty(); }
};

/// Exhaustive search for an extremally permutive shape with at most
/// `max_cells` cells inside `bounding`, up to translation.
PolygonalReport refute_polygonal(const SubshiftSpec& spec, int max_cells, const Window& bounding, int margin,
                                 const SearchOptions& options = {}, int jobs = 1);

}  // namespace dirclose
