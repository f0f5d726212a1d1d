#include "dirclose/sweep.hpp"

#include "dirclose/errors.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace dirclose::detail {

std::size_t LocalSystem::present_count() const
{
    return static_cast<std::size_t>(std::count(present.begin(), present.end(), 1));
}

std::size_t LocalSystem::estimated_free_cells() const
{
    if (base_is_ledrappier) return static_cast<std::size_t>(base.width + base.height - 1);
    return present_count();
}

namespace {

std::vector<std::vector<int>> build_lines(const LocalSystem& sys, Orientation o)
{
    std::vector<std::vector<int>> lines;
    const Window& b = sys.base;
    auto push = [&](std::vector<int>& line, int x, int y) {
        int idx = sys.base_index({x, y});
        if (sys.present[static_cast<std::size_t>(idx)]) line.push_back(idx);
    };
    switch (o) {
    case Orientation::RowsUp:
    case Orientation::RowsDown:
        for (int r = 0; r < b.height; ++r) {
            int y = o == Orientation::RowsUp ? b.y0 + r : b.y1() - r;
            std::vector<int> line;
            for (int x = b.x0; x <= b.x1(); ++x) push(line, x, y);
            if (!line.empty()) lines.push_back(std::move(line));
        }
        break;
    case Orientation::ColumnsLeftward:
    case Orientation::ColumnsRightward:
        for (int c = 0; c < b.width; ++c) {
            int x = o == Orientation::ColumnsRightward ? b.x0 + c : b.x1() - c;
            std::vector<int> line;
            for (int y = b.y0; y <= b.y1(); ++y) push(line, x, y);
            if (!line.empty()) lines.push_back(std::move(line));
        }
        break;
    }
    return lines;
}

}  // namespace

Sweeper::Sweeper(const LocalSystem& system, Orientation orientation, int copies,
                 std::vector<ObservationRole> roles, std::size_t state_budget, bool emit_outputs)
    : sys_(system),
      copies_(copies),
      roles_(std::move(roles)),
      state_budget_(state_budget),
      emit_outputs_(emit_outputs)
{
    if (copies_ < 1 || copies_ > 2) throw UsageError("sweeper supports one or two copies");
    if (roles_.size() != sys_.outputs.size()) throw UsageError("one role per output cell required");
    for (const auto& r : roles_)
        if (copies_ == 1 && (r.kind == ObservationRole::Kind::Equal || r.kind == ObservationRole::Kind::Differ))
            throw UsageError("coupled observations need two copies");

    lines_ = build_lines(sys_, orientation);
    const std::size_t n = sys_.present.size();
    std::vector<int> pos(n, -1);
    std::vector<int> line_of(n, -1);
    std::vector<int> line_end;  // last position of each line
    int p = 0;
    for (std::size_t l = 0; l < lines_.size(); ++l) {
        for (int c : lines_[l]) {
            pos[static_cast<std::size_t>(c)] = p++;
            line_of[static_cast<std::size_t>(c)] = static_cast<int>(l);
        }
        line_end.push_back(p - 1);
    }

    cell_constraints_.assign(n, {});
    cell_observations_.assign(n, {});
    observation_line_.assign(sys_.outputs.size(), -1);

    // Items (constraints and active observations) as cell lists with trigger cell.
    struct Item {
        const std::vector<int>* cells;
        int trigger;
    };
    std::vector<Item> items;
    auto trigger_of = [&](const std::vector<int>& cells) {
        int best = -1;
        for (int c : cells) {
            if (pos[static_cast<std::size_t>(c)] < 0) throw UsageError("constraint reads a cell outside the system");
            if (best < 0 || pos[static_cast<std::size_t>(c)] > pos[static_cast<std::size_t>(best)]) best = c;
        }
        return best;
    };
    for (std::size_t i = 0; i < sys_.constraints.size(); ++i) {
        int t = trigger_of(sys_.constraints[i].cells);
        cell_constraints_[static_cast<std::size_t>(t)].push_back(i);
        items.push_back({&sys_.constraints[i].cells, t});
    }
    for (std::size_t i = 0; i < sys_.outputs.size(); ++i) {
        if (roles_[i].kind == ObservationRole::Kind::Free && !emit_outputs_) continue;
        int t = trigger_of(sys_.output_cells[i]);
        cell_observations_[static_cast<std::size_t>(t)].push_back(i);
        observation_line_[i] = line_of[static_cast<std::size_t>(t)];
        for (int c : sys_.output_cells[i])
            if (line_of[static_cast<std::size_t>(c)] != observation_line_[i] && roles_[i].kind != ObservationRole::Kind::Free) {
                ++spanning_;
                break;
            }
        items.push_back({&sys_.output_cells[i], t});
    }

    frontier_.assign(lines_.size(), {});
    for (std::size_t l = 0; l < lines_.size(); ++l) {
        std::set<int> f;
        for (const auto& it : items) {
            if (pos[static_cast<std::size_t>(it.trigger)] <= line_end[l]) continue;
            for (int c : *it.cells)
                if (pos[static_cast<std::size_t>(c)] <= line_end[l]) f.insert(c);
        }
        frontier_[l].assign(f.begin(), f.end());
    }
    dead_.assign(lines_.size(), {});
    vals_.assign(static_cast<std::size_t>(copies_), Assignment(n, 0));
}

int Sweeper::last_coupled_line() const
{
    int last = -1;
    for (std::size_t i = 0; i < roles_.size(); ++i) {
        auto k = roles_[i].kind;
        if (k == ObservationRole::Kind::Equal || k == ObservationRole::Kind::Differ)
            last = std::max(last, observation_line_[i]);
    }
    return last;
}

std::size_t Sweeper::cells_through(int last) const
{
    std::size_t n = 0;
    for (int l = 0; l <= last && l < static_cast<int>(lines_.size()); ++l) n += lines_[static_cast<std::size_t>(l)].size();
    return n;
}

std::string Sweeper::initial_state() const
{
    return copies_ == 2 ? std::string(1, '\0') : std::string();
}

std::string Sweeper::copy_state(const std::string& state, int copy) const
{
    // All frontiers in one state have the same width.
    const std::size_t width = (state.size() - (copies_ == 2 ? 1 : 0)) / static_cast<std::size_t>(copies_);
    return state.substr(static_cast<std::size_t>(copy) * width, width);
}

bool Sweeper::pair_flag(const std::string& state) const
{
    return copies_ == 2 && !state.empty() && state.back() != '\0';
}

Symbol Sweeper::output_value(std::size_t obs, const Assignment& values) const
{
    const auto& cells = sys_.output_cells[obs];
    if (!sys_.code) return values[static_cast<std::size_t>(cells.front())];
    Symbol tuple[16];
    std::vector<Symbol> big;
    Symbol* t = tuple;
    if (cells.size() > 16) {
        big.resize(cells.size());
        t = big.data();
    }
    for (std::size_t i = 0; i < cells.size(); ++i) t[i] = values[static_cast<std::size_t>(cells[i])];
    return sys_.code->lookup(std::span<const Symbol>(t, cells.size()));
}

bool Sweeper::check_constraint(std::size_t ci, int copy) const
{
    const auto& con = sys_.constraints[ci];
    const auto& v = vals_[static_cast<std::size_t>(copy)];
    if (con.parity) {
        unsigned sum = 0;
        for (int c : con.cells) sum += v[static_cast<std::size_t>(c)];
        return (sum & 1u) == 0;
    }
    for (std::size_t i = 0; i < con.cells.size(); ++i)
        if (v[static_cast<std::size_t>(con.cells[i])] != con.forbidden[i]) return true;
    return false;
}

void Sweeper::expand(int line, const std::string& state, bool want_emitted,
                     const std::function<void(const Expansion&)>& sink)
{
    bool flag = false;
    if (line > 0) {
        const auto& prev = frontier_[static_cast<std::size_t>(line - 1)];
        for (int c = 0; c < copies_; ++c)
            for (std::size_t k = 0; k < prev.size(); ++k)
                vals_[static_cast<std::size_t>(c)][static_cast<std::size_t>(prev[k])] =
                    static_cast<Symbol>(state[static_cast<std::size_t>(c) * prev.size() + k]);
    }
    flag = pair_flag(state);
    std::vector<Symbol> emitted;
    assign(line, 0, 0, flag, want_emitted, emitted, sink);
}

void Sweeper::assign(int line, std::size_t k, int copy, bool flag, bool want_emitted,
                     std::vector<Symbol>& emitted, const std::function<void(const Expansion&)>& sink)
{
    const auto& cells = lines_[static_cast<std::size_t>(line)];
    if (k == cells.size()) {
        Expansion e;
        const auto& f = frontier_[static_cast<std::size_t>(line)];
        e.state.reserve(f.size() * static_cast<std::size_t>(copies_) + 1);
        for (int c = 0; c < copies_; ++c)
            for (int cell : f) e.state.push_back(static_cast<char>(vals_[static_cast<std::size_t>(c)][static_cast<std::size_t>(cell)]));
        if (copies_ == 2) e.state.push_back(flag ? '\1' : '\0');
        if (want_emitted) e.emitted = emitted;
        e.line_values.reserve(cells.size() * static_cast<std::size_t>(copies_));
        for (int c = 0; c < copies_; ++c)
            for (int cell : cells) e.line_values.push_back(vals_[static_cast<std::size_t>(c)][static_cast<std::size_t>(cell)]);
        sink(e);
        return;
    }
    const int cell = cells[k];
    auto& v = vals_[static_cast<std::size_t>(copy)];
    for (std::size_t s = 0; s < sys_.base_symbols; ++s) {
        v[static_cast<std::size_t>(cell)] = static_cast<Symbol>(s);
        bool ok = true;
        for (auto ci : cell_constraints_[static_cast<std::size_t>(cell)]) {
            if (!check_constraint(ci, copy)) {
                ok = false;
                break;
            }
        }
        if (!ok) continue;
        bool next_flag = flag;
        std::size_t pushed = 0;
        for (auto oi : cell_observations_[static_cast<std::size_t>(cell)]) {
            const auto& role = roles_[oi];
            switch (role.kind) {
            case ObservationRole::Kind::Fixed:
                if (output_value(oi, v) != role.value) ok = false;
                break;
            case ObservationRole::Kind::Equal:
                if (copy == 1 && output_value(oi, vals_[0]) != output_value(oi, vals_[1])) ok = false;
                break;
            case ObservationRole::Kind::Differ:
                if (copy == 1 && output_value(oi, vals_[0]) != output_value(oi, vals_[1])) next_flag = true;
                break;
            case ObservationRole::Kind::Free: break;
            }
            if (!ok) break;
            if (want_emitted && copy == 0) {
                emitted.push_back(output_value(oi, v));
                ++pushed;
            }
        }
        if (ok) {
            if (copy + 1 < copies_) assign(line, k, copy + 1, next_flag, want_emitted, emitted, sink);
            else assign(line, k + 1, 0, next_flag, want_emitted, emitted, sink);
        }
        emitted.resize(emitted.size() - pushed);
    }
}

void Sweeper::remember_dead(int line, const std::string& state)
{
    if (++memo_entries_ > state_budget_)
        throw BudgetExceeded("search exceeded the state budget of " + std::to_string(state_budget_));
    dead_[static_cast<std::size_t>(line)].insert(state);
}

bool Sweeper::dfs(int line, int end, const std::string& state,
                  const std::function<bool(const std::string&)>& accept, std::vector<std::vector<Symbol>>& path)
{
    if (line == end) return accept(state);
    auto& dead = dead_[static_cast<std::size_t>(line)];
    if (dead.count(state)) return false;
    std::vector<Expansion> next;
    std::unordered_set<std::string> seen;
    expand(line, state, false, [&](const Expansion& e) {
        if (seen.insert(e.state).second) next.push_back(e);
    });
    for (const auto& e : next) {
        if (dfs(line + 1, end, e.state, accept, path)) {
            path.push_back(e.line_values);
            return true;
        }
    }
    remember_dead(line, state);
    return false;
}

std::vector<Assignment> Sweeper::assemble(int start, const std::vector<std::vector<Symbol>>& path) const
{
    std::vector<Assignment> out(static_cast<std::size_t>(copies_), Assignment(sys_.present.size(), 0));
    for (std::size_t i = 0; i < path.size(); ++i) {
        const auto& cells = lines_[static_cast<std::size_t>(start) + i];
        for (int c = 0; c < copies_; ++c)
            for (std::size_t k = 0; k < cells.size(); ++k)
                out[static_cast<std::size_t>(c)][static_cast<std::size_t>(cells[k])] =
                    path[i][static_cast<std::size_t>(c) * cells.size() + k];
    }
    return out;
}

bool Sweeper::search(int start, int end, const std::string& state,
                     const std::function<bool(const std::string&)>& accept, std::vector<Assignment>& out)
{
    std::vector<std::vector<Symbol>> path;
    if (!dfs(start, end, state, accept, path)) return false;
    std::reverse(path.begin(), path.end());
    out = assemble(start, path);
    return true;
}

bool Sweeper::enumerate_dfs(int line, const std::string& state, std::vector<std::vector<Symbol>>& path,
                            const std::function<bool(const std::vector<Assignment>&)>& visit, bool& stop)
{
    if (line == static_cast<int>(lines_.size())) {
        if (!visit(assemble(0, path))) stop = true;
        return true;
    }
    auto& dead = dead_[static_cast<std::size_t>(line)];
    if (dead.count(state)) return false;
    std::vector<Expansion> next;
    expand(line, state, false, [&](const Expansion& e) { next.push_back(e); });
    bool any = false;
    for (const auto& e : next) {
        path.push_back(e.line_values);
        any = enumerate_dfs(line + 1, e.state, path, visit, stop) || any;
        path.pop_back();
        if (stop) return true;
    }
    if (!any) remember_dead(line, state);
    return any;
}

void Sweeper::enumerate(const std::function<bool(const std::vector<Assignment>&)>& visit)
{
    std::vector<std::vector<Symbol>> path;
    bool stop = false;
    enumerate_dfs(0, initial_state(), path, visit, stop);
}

std::uint64_t Sweeper::count_distinct_outputs()
{
    // Subset construction over frontier states, keyed by emitted outputs.
    using Macro = std::vector<std::string>;
    std::map<Macro, std::uint64_t> current{{Macro{initial_state()}, 1}};
    for (std::size_t l = 0; l < lines_.size(); ++l) {
        std::map<Macro, std::uint64_t> next;
        for (const auto& [macro, count] : current) {
            std::map<std::vector<Symbol>, std::set<std::string>> groups;
            for (const auto& st : macro)
                expand(static_cast<int>(l), st, true,
                       [&](const Expansion& e) { groups[e.emitted].insert(e.state); });
            for (auto& [emitted, states] : groups) {
                Macro m(states.begin(), states.end());
                auto& slot = next[m];
                if (__builtin_add_overflow(slot, count, &slot))
                    throw BudgetExceeded("pattern count overflows 64 bits");
            }
        }
        if (next.size() > state_budget_) throw BudgetExceeded("count exceeded the state budget");
        current = std::move(next);
    }
    std::uint64_t total = 0;
    for (const auto& [macro, count] : current)
        if (__builtin_add_overflow(total, count, &total)) throw BudgetExceeded("pattern count overflows 64 bits");
    return total;
}

}  // namespace dirclose::detail
