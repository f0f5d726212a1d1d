#include "dirclose/analysis.hpp"

#include "dirclose/codes.hpp"
#include "dirclose/errors.hpp"
#include "dirclose/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <map>
#include <set>
#include <thread>

namespace dirclose {

std::string_view to_string(Scope s)
{
    return s == Scope::Certified ? "certified" : "window";
}

std::string_view to_string(Verdict::Kind k)
{
    switch (k) {
    case Verdict::Kind::Codes: return "codes";
    case Verdict::Kind::Refuted: return "refuted";
    case Verdict::Kind::Inconclusive: break;
    }
    return "inconclusive";
}

namespace {

using detail::Assignment;
using detail::ObservationRole;
using detail::Orientation;
using detail::Sweeper;

void require_inside(const Window& w, const Shape& s, const char* what)
{
    for (const auto& c : s)
        if (!w.contains(c)) throw UsageError(std::string(what) + " cell " + to_string(c) + " outside window " + to_string(w));
}

}  // namespace

Verdict check_coding(const CodingQuery& q, const SearchOptions& opt)
{
    require_inside(q.window, q.known, "known");
    require_inside(q.window, q.target, "target");

    // Target cells that are also known are coded trivially.
    std::vector<Cell> open;
    for (const auto& t : q.target)
        if (!q.known.contains(t)) open.push_back(t);
    const Shape target(open);

    Verdict v;
    if (target.empty()) {
        v.kind = Verdict::Kind::Codes;
        v.scope = Scope::Certified;
        v.reason = "every target cell is known";
        return v;
    }

    const auto sys = detail::build_system(q.spec, q.window.cells());
    if (sys.estimated_free_cells() > opt.cell_budget)
        throw BudgetExceeded("window " + to_string(q.window) + " has about " +
                             std::to_string(sys.estimated_free_cells()) + " free cells, budget is " +
                             std::to_string(opt.cell_budget));

    std::vector<ObservationRole> roles(sys.outputs.size());
    for (std::size_t i = 0; i < roles.size(); ++i) {
        if (q.known.contains(sys.outputs[i])) roles[i].kind = ObservationRole::Kind::Equal;
        else if (target.contains(sys.outputs[i])) roles[i].kind = ObservationRole::Kind::Differ;
    }

    try {
        // Prefer sweeps where coupled observations prune inside one line,
        // then the fewest cells before the last coupled line.
        Orientation best = Orientation::RowsUp;
        std::pair<std::size_t, std::size_t> best_cost;
        bool have = false;
        for (auto o : {Orientation::RowsUp, Orientation::RowsDown, Orientation::ColumnsLeftward,
                       Orientation::ColumnsRightward}) {
            Sweeper probe(sys, o, 2, roles, opt.state_budget);
            std::pair cost{probe.spanning_observations(), probe.cells_through(probe.last_coupled_line())};
            if (!have || cost < best_cost) {
                best = o;
                best_cost = cost;
                have = true;
            }
        }

        Sweeper pair(sys, best, 2, roles, opt.state_budget);
        Sweeper single(sys, best, 1, std::vector<ObservationRole>(roles.size()), opt.state_budget);
        const int total = static_cast<int>(pair.line_count());
        const int prefix_end = pair.last_coupled_line() + 1;

        // Copies are independent after the last coupled line.
        std::map<std::string, std::optional<Assignment>> tails;
        auto tail = [&](const std::string& s) -> const std::optional<Assignment>& {
            auto it = tails.find(s);
            if (it != tails.end()) return it->second;
            std::vector<Assignment> out;
            std::optional<Assignment> found;
            if (single.search(prefix_end, total, s, [](const std::string&) { return true; }, out))
                found = std::move(out[0]);
            return tails.emplace(s, std::move(found)).first->second;
        };

        std::string accepted;
        auto accept = [&](const std::string& state) {
            if (!pair.pair_flag(state)) return false;
            if (!tail(pair.copy_state(state, 0))) return false;
            if (!tail(pair.copy_state(state, 1))) return false;
            accepted = state;
            return true;
        };

        std::vector<Assignment> head;
        if (!pair.search(0, prefix_end, pair.initial_state(), accept, head)) {
            v.kind = Verdict::Kind::Codes;
            v.scope = Scope::Certified;
            return v;
        }

        std::vector<Pattern> sides;
        for (int c = 0; c < 2; ++c) {
            Assignment base = head[static_cast<std::size_t>(c)];
            const Assignment& rest = *tail(pair.copy_state(accepted, c));
            for (int l = prefix_end; l < total; ++l)
                for (int cell : single.line(l)) base[static_cast<std::size_t>(cell)] = rest[static_cast<std::size_t>(cell)];
            sides.push_back(detail::output_pattern(q.spec, sys, base, q.window));
        }

        Witness w{sides[0], sides[1], q.known.size(), {}};
        for (const auto& t : target)
            if (w.first.at(t) != w.second.at(t)) w.differ.push_back(t);
        v.kind = Verdict::Kind::Refuted;
        v.scope = Scope::Window;
        v.witness = std::move(w);
        return v;
    } catch (const BudgetExceeded& e) {
        v.kind = Verdict::Kind::Inconclusive;
        v.reason = e.what();
        return v;
    }
}

Verdict check_closing(const SubshiftSpec& spec, const Direction& direction, Side side, const Window& window,
                      const Cell& target_cell, const SearchOptions& options)
{
    const HalfPlaneQuery hq{direction, side};
    if (!window.contains(target_cell))
        throw UsageError("target cell " + to_string(target_cell) + " outside window " + to_string(window));
    if (classify_cell(hq, target_cell) != CellClass::Target)
        throw UsageError("cell " + to_string(target_cell) + " is not a target cell of the " +
                         std::string(to_string(side)) + " query in direction " + to_string(direction));
    const auto split = window_split(hq, window);
    return check_coding({spec, window, split.known, Shape({target_cell})}, options);
}

// ---------------------------------------------------------------------------
// Witness pairs for the leftward query.
//
// Y = f(X) hides X(x, y) wherever X(x + 1, y) = 1. Adding a kernel element d
// that vanishes on x > t.x and is one on the whole column t.x changes Y only
// on x <= t.x, and in column t.x exactly where the base column t.x + 1 is 0.
// The base configuration is chosen so that column is 1 on known rows and 0
// elsewhere.

namespace {

const Direction kLeftward(-1, 0);

bool mask_bit(Side side, int column, int y)
{
    return classify_cell({kLeftward, side}, {column, y}) == CellClass::Known;
}

Pattern grid_pattern(const BinaryGrid& g)
{
    Pattern p(alphabet_b(), g.window);
    for (std::size_t i = 0; i < g.bits.size(); ++i) p.set(g.window.cell_at(i), g.bits[i]);
    return p;
}

WitnessRecipe make_recipe(Side side, const Cell& t, const Window& window)
{
    if (side == Side::Determinism) throw UsageError("witness construction needs side left or right");
    const Window inner(window.x0 + 2, window.y0 + 2, window.width - 4 > 0 ? window.width - 4 : 1,
                       window.height - 4 > 0 ? window.height - 4 : 1);
    if (window.width < 5 || window.height < 5 || !inner.contains(t))
        throw UsageError("target " + to_string(t) + " needs a margin of 2 inside window " + to_string(window));
    if (classify_cell({kLeftward, side}, t) != CellClass::Target)
        throw UsageError("cell " + to_string(t) + " is not a target cell of the leftward " +
                         std::string(to_string(side)) + " query");

    WitnessRecipe r;
    r.target_cell = t;
    r.side = side;
    r.window = window;
    r.mask_column = t.x + 1;
    const int base_right = window.x1() + 1;
    const int rows = window.height + (base_right - r.mask_column);
    for (int k = 0; k < rows; ++k) r.mask_bits.push_back(mask_bit(side, t.x, window.y0 + k));
    const Cell seed{t.x, side == Side::Left ? t.y + 1 : t.y - 1};
    r.step = KernelStep::confined(seed, std::max(0, seed.y - window.y0));
    return r;
}

bool differs_right_of(const BinaryGrid& d, int x)
{
    for (std::size_t i = 0; i < d.bits.size(); ++i)
        if (d.bits[i] && d.window.cell_at(i).x > x) return true;
    return false;
}

}  // namespace

std::pair<Pattern, Pattern> realize_witness(const WitnessRecipe& r)
{
    const Window& w = r.window;
    const Window base(w.x0, w.y0, w.width + 1, w.height);
    const BinaryGrid x = evolve_window(solve_column_prescription(r.mask_column, r.mask_bits), base);
    BinaryGrid x2 = x;
    const BinaryGrid d = realize_kernel_step(r.step, base);
    for (std::size_t i = 0; i < x2.bits.size(); ++i) x2.bits[i] ^= d.bits[i];
    const BlockCode f = builtin_f();
    return {apply(f, grid_pattern(x)), apply(f, grid_pattern(x2))};
}

WitnessResult construct_witness(Side side, const Cell& target_cell, const Window& window)
{
    WitnessRecipe recipe = make_recipe(side, target_cell, window);
    auto [first, second] = realize_witness(recipe);

    const auto split = window_split({kLeftward, side}, window);
    const SubshiftSpec y = SubshiftSpec::y();
    Verdict v;
    std::string fault;
    if (!is_locally_valid(y, first).valid || !is_locally_valid(y, second).valid) fault = "pattern not valid";
    for (const auto& c : split.known)
        if (fault.empty() && first.at(c) != second.at(c)) fault = "patterns differ at known cell " + to_string(c);
    if (fault.empty() && first.at(target_cell) == second.at(target_cell)) fault = "patterns agree at the target";

    if (!fault.empty()) {
        v.kind = Verdict::Kind::Inconclusive;
        v.reason = "internal error: " + fault;
    } else {
        Witness w{first, second, split.known.size(), {}};
        for (const auto& c : split.target)
            if (first.at(c) != second.at(c)) w.differ.push_back(c);
        v.kind = Verdict::Kind::Refuted;
        v.scope = Scope::Window;
        v.witness = std::move(w);
    }
    return {std::move(first), std::move(second), std::move(recipe), std::move(v)};
}

Certification certify_witness(const std::pair<Pattern, Pattern>& pair, Side side, const Direction& direction,
                              const SubshiftSpec& spec, const WitnessRecipe* recipe)
{
    Certification cert;
    bool ok = true;
    auto fact = [&](const std::string& name, bool holds) {
        cert.facts.push_back("fact " + name + (holds ? " ok" : " fail"));
        ok = ok && holds;
        return holds;
    };

    if (!fact("recipe", recipe != nullptr)) return cert;
    fact("direction " + to_string(direction), direction == kLeftward);
    fact("side " + std::string(to_string(side)), side == recipe->side && side != Side::Determinism);
    fact("extendability " + std::string(to_string(extendability(spec))),
         extendability(spec) != ExtendabilityCertificate::None);
    if (!ok) return cert;

    bool reproduced = false;
    try {
        reproduced = realize_witness(*recipe) == pair;
    } catch (const std::exception&) {
    }
    fact("reproduced", reproduced);

    // The kernel element must stay on x <= seed.x and be one on that column.
    const Cell seed = recipe->step.seed;
    bool anchors_one = std::all_of(recipe->step.lower_anchor_bits.begin(), recipe->step.lower_anchor_bits.end(),
                                   [](bool b) { return b; });
    bool confined = anchors_one;
    {
        const Window base(recipe->window.x0, recipe->window.y0, recipe->window.width + 1, recipe->window.height);
        try {
            confined = confined && !differs_right_of(realize_kernel_step(recipe->step, base), seed.x);
        } catch (const std::exception&) {
            confined = false;
        }
    }
    for (int s = 4; confined && s <= 20; s += 2) {
        const Window w(seed.x - s / 2, seed.y - s / 2, s, s);
        const BinaryGrid d = realize_kernel_step(KernelStep::confined(seed, s / 2), w);
        confined = !differs_right_of(d, seed.x) && is_locally_valid(SubshiftSpec::ledrappier(), grid_pattern(d)).valid;
        for (int y = w.y0; confined && y <= w.y1(); ++y) confined = d.at({seed.x, y});
    }
    fact("confined", confined);

    bool masked = true;
    for (std::size_t k = 0; k < recipe->mask_bits.size(); ++k)
        masked = masked && recipe->mask_bits[k] == mask_bit(recipe->side, recipe->target_cell.x,
                                                            recipe->window.y0 + static_cast<int>(k));
    Window w = recipe->window;
    while (masked) {
        try {
            masked = construct_witness(recipe->side, recipe->target_cell, w).verdict.refuted();
        } catch (const std::exception&) {
            masked = false;
        }
        if (w.width + 2 > 20 || w.height + 2 > 20) break;
        w = w.dilated(1);
    }
    fact("masked", masked);

    cert.certified = ok;
    return cert;
}

// ---------------------------------------------------------------------------

PermutivityReport check_extremally_permutive(const SubshiftSpec& spec, const Shape& shape, int margin,
                                             const SearchOptions& options)
{
    if (shape.empty()) throw UsageError("empty shape");
    PermutivityReport rep;
    rep.window = shape.bounding_box().dilated(margin);
    rep.permutive = true;
    for (const auto& v : extremal_points(shape)) {
        Verdict verdict = check_coding({spec, rep.window, shape.without(v), Shape({v})}, options);
        rep.permutive = rep.permutive && verdict.codes();
        rep.points.emplace_back(v, std::move(verdict));
    }
    return rep;
}

CornerPermutation corner_permutation(const SubshiftSpec& spec, const Shape& shape, const Cell& u, const Cell& v,
                                     int margin, const SearchOptions& options)
{
    const auto ext = extremal_points(shape);
    for (const auto& c : {u, v})
        if (std::find(ext.begin(), ext.end(), c) == ext.end())
            throw UsageError("cell " + to_string(c) + " is not an extremal point of " + to_string(shape));
    if (u == v) throw UsageError("corners must be distinct");

    const Window window = shape.bounding_box().dilated(margin);
    const auto sys = detail::build_system(spec, window.cells());
    if (sys.estimated_free_cells() > options.cell_budget) throw BudgetExceeded("window too large for enumeration");
    if (count_valid(spec, window) > (std::uint64_t{1} << 20))
        throw BudgetExceeded("too many valid patterns on " + to_string(window));

    const Shape rest = shape.without(u).without(v);
    std::map<std::vector<Symbol>, std::set<std::pair<Symbol, Symbol>>> groups;
    enumerate_valid(spec, window, Pattern(spec.alphabet()), [&](const Pattern& p) {
        std::vector<Symbol> key;
        for (const auto& c : rest) key.push_back(p.at(c));
        groups[key].emplace(p.at(u), p.at(v));
        return true;
    });

    CornerPermutation out;
    out.permutive = true;
    const Window box = shape.bounding_box();
    for (const auto& [key, pairs] : groups) {
        CornerContext ctx{Pattern(spec.alphabet(), box), {pairs.begin(), pairs.end()}};
        for (std::size_t i = 0; i < key.size(); ++i) ctx.context.set(rest.cells()[i], key[i]);
        // A partial bijection: each corner value determines the other.
        std::map<Symbol, Symbol> fwd, back;
        bool bij = true;
        for (const auto& [a, b] : pairs) {
            bij = bij && fwd.emplace(a, b).second && back.emplace(b, a).second;
        }
        if (!bij && out.permutive) {
            out.permutive = false;
            out.offending = ctx;
        }
        out.contexts.push_back(std::move(ctx));
    }
    return out;
}

bool DirectionReport::all_codes() const
{
    return refuted == 0 &&
           std::all_of(entries.begin(), entries.end(), [](const DirectionEntry& e) { return e.verdict.codes(); });
}

DirectionReport crossvalidate_directions(const SubshiftSpec& spec, const Shape& shape,
                                         const std::vector<Direction>& directions, const Window& window,
                                         int margin, const SearchOptions& options)
{
    if (!check_extremally_permutive(spec, shape, margin, options).permutive)
        throw UsageError("shape " + to_string(shape) + " is not extremally permutive");
    DirectionReport rep;
    for (const auto& d : directions) {
        for (Side s : {Side::Right, Side::Left}) {
            Verdict v = check_closing(spec, d, s, window, {0, 0}, options);
            if (!v.codes()) ++rep.refuted;
            rep.entries.push_back({d, s, std::move(v)});
        }
    }
    return rep;
}

PolygonalReport refute_polygonal(const SubshiftSpec& spec, int max_cells, const Window& bounding, int margin,
                                 const SearchOptions& options, int jobs)
{
    if (max_cells < 1) throw UsageError("max cells must be positive");
    const auto cells = bounding.cells();
    const int n = static_cast<int>(cells.size());
    if (n > 24) throw BudgetExceeded("bounding box " + to_string(bounding) + " has too many cells");

    std::set<Shape> shapes;
    std::vector<int> pick;
    // Subsets by increasing index, up to translation.
    auto rec = [&](auto&& self, int from) -> void {
        if (!pick.empty()) {
            std::vector<Cell> s;
            for (int i : pick) s.push_back(cells[static_cast<std::size_t>(i)]);
            shapes.insert(Shape(s).normalized());
        }
        if (static_cast<int>(pick.size()) == max_cells) return;
        for (int i = from; i < n; ++i) {
            pick.push_back(i);
            self(self, i + 1);
            pick.pop_back();
        }
    };
    rec(rec, 0);

    const std::vector<Shape> list(shapes.begin(), shapes.end());
    std::vector<std::optional<PermutivityReport>> results(list.size());
    std::vector<std::exception_ptr> errors(list.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i; (i = next++) < list.size();) {
            try {
                results[i] = check_extremally_permutive(spec, list[i], margin, options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::max(1, std::min<int>(jobs, static_cast<int>(list.size())));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }

    PolygonalReport rep;
    for (std::size_t i = 0; i < list.size(); ++i) {
        if (errors[i]) std::rethrow_exception(errors[i]);
        ++rep.shapes_checked;
        if (results[i]->permutive) {
            rep.permutive.push_back(list[i]);
            continue;
        }
        for (auto& [pt, verdict] : results[i]->points) {
            if (!verdict.codes()) {
                rep.failures.push_back({list[i], pt, std::move(verdict)});
                break;
            }
        }
    }
    return rep;
}

}  // namespace dirclose
