#pragma once

// Transfer-style search over finite windows.
//
// A LocalSystem is a finite set of base cells with local constraints, plus
// output cells each computed from a tuple of base cells. A Sweeper visits
// base cells line by line and keeps, between lines, only the values of cells
// that some pending constraint or observation still reads. Equal frontier
// states are merged, which turns exhaustive search into reachability.

#include "dirclose/codes.hpp"
#include "dirclose/geometry.hpp"
#include "dirclose/pattern.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

namespace dirclose::detail {

struct LocalSystem {
    struct Constraint {
        std::vector<int> cells;
        bool parity = false;              // even sum of binary cells
        std::vector<Symbol> forbidden;    // otherwise: violated iff cells match this tuple
        Cell anchor;
        int id = 0;
    };

    Window base;                   // rectangle containing every base cell
    std::vector<char> present;     // per base-rect index
    std::size_t base_symbols = 2;
    bool base_is_ledrappier = false;
    std::vector<Constraint> constraints;

    std::vector<Cell> outputs;                   // output cells, canonical order
    std::vector<std::vector<int>> output_cells;  // base cells read by each output
    std::optional<BlockCode> code;               // empty: outputs copy their base cell
    std::size_t output_symbols = 2;

    int base_index(const Cell& c) const { return static_cast<int>(base.index(c)); }
    std::size_t present_count() const;
    /// Degrees of freedom of the base window: w + h - 1 for the three-dot
    /// rule, the number of cells otherwise.
    std::size_t estimated_free_cells() const;
};

enum class Orientation { RowsUp, RowsDown, ColumnsLeftward, ColumnsRightward };

struct ObservationRole {
    enum class Kind { Free, Fixed, Equal, Differ };
    Kind kind = Kind::Free;
    Symbol value = 0;  // for Fixed
};

/// Base cell values per copy, indexed like LocalSystem::base.
using Assignment = std::vector<Symbol>;

class Sweeper {
public:
    Sweeper(const LocalSystem& system, Orientation orientation, int copies,
            std::vector<ObservationRole> roles, std::size_t state_budget, bool emit_outputs = false);

    std::size_t line_count() const { return lines_.size(); }
    /// Base cells of one line, in visiting order.
    const std::vector<int>& line(int l) const { return lines_[static_cast<std::size_t>(l)]; }
    /// Last line index that triggers an Equal or Differ observation, or -1.
    int last_coupled_line() const;
    /// Coupled observations whose cells lie in more than one line.
    std::size_t spanning_observations() const { return spanning_; }
    /// Present base cells in lines [0, last].
    std::size_t cells_through(int last) const;

    /// First path (in search order) from `state` at `start` through the end
    /// of line `end - 1` whose final state satisfies `accept`. Fills the
    /// per-copy assignments of the visited lines.
    bool search(int start, int end, const std::string& state,
                const std::function<bool(const std::string&)>& accept, std::vector<Assignment>& out);

    /// Every complete path from the initial state, in search order. The
    /// callback returns false to stop.
    void enumerate(const std::function<bool(const std::vector<Assignment>&)>& visit);

    /// Number of distinct output tuples over all complete paths.
    std::uint64_t count_distinct_outputs();

    std::string initial_state() const;
    /// State of one copy extracted from a multi-copy state.
    std::string copy_state(const std::string& state, int copy) const;
    bool pair_flag(const std::string& state) const;

    Symbol output_value(std::size_t obs, const Assignment& values) const;

private:
    struct Expansion {
        std::string state;
        std::vector<Symbol> emitted;
        std::vector<Symbol> line_values;  // copies x line cells
    };

    void expand(int line, const std::string& state, bool want_emitted,
                const std::function<void(const Expansion&)>& sink);
    void assign(int line, std::size_t k, int copy, bool flag, bool want_emitted,
                std::vector<Symbol>& emitted, const std::function<void(const Expansion&)>& sink);
    bool check_constraint(std::size_t ci, int copy) const;
    bool dfs(int line, int end, const std::string& state, const std::function<bool(const std::string&)>& accept,
             std::vector<std::vector<Symbol>>& path);
    bool enumerate_dfs(int line, const std::string& state, std::vector<std::vector<Symbol>>& path,
                       const std::function<bool(const std::vector<Assignment>&)>& visit, bool& stop);
    void remember_dead(int line, const std::string& state);
    std::vector<Assignment> assemble(int start, const std::vector<std::vector<Symbol>>& path) const;

    const LocalSystem& sys_;
    int copies_;
    std::vector<ObservationRole> roles_;
    std::size_t state_budget_;
    bool emit_outputs_;
    std::size_t memo_entries_ = 0;
    std::size_t spanning_ = 0;

    std::vector<std::vector<int>> lines_;
    std::vector<std::vector<int>> frontier_;           // after each line
    std::vector<std::vector<std::size_t>> cell_constraints_;  // triggered at base cell
    std::vector<std::vector<std::size_t>> cell_observations_;
    std::vector<int> observation_line_;  // line that triggers each observation
    std::vector<std::unordered_set<std::string>> dead_;

    std::vector<Assignment> vals_;  // working values per copy
};

}  // namespace dirclose::detail
