// dirclose: directional closing checks for two-dimensional subshifts.

#include "dirclose/analysis.hpp"
#include "dirclose/codes.hpp"
#include "dirclose/errors.hpp"
#include "dirclose/linear_core.hpp"
#include "dirclose/render.hpp"
#include "dirclose/report.hpp"
#include "dirclose/subshift.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

using namespace dirclose;

namespace {

enum Exit { kHolds = 0, kRefuted = 1, kInconclusive = 2, kUsage = 64, kFormat = 65, kInternal = 70 };

struct Args {
    std::string spec = "ledrappier";
    std::string window, direction, side, target, known, shape, bounding, corners;
    std::string pattern, code, format = "ascii", out, seed_row;
    int max_cells = 4, margin = 1, jobs = 1;
    std::size_t budget = 64;
    std::uint64_t seed = 0;
    bool have_seed = false, split = false;
    int seed_y = 0;
    bool have_seed_y = false;
    std::vector<int> guide_x, guide_y;
};

SearchOptions options(const Args& a)
{
    SearchOptions o;
    o.cell_budget = a.budget;
    return o;
}

template <class T>
T need(const std::string& value, const char* flag, T (*parse)(std::string_view))
{
    if (value.empty()) throw UsageError(std::string("missing --") + flag);
    return parse(value);
}

void emit(const Args& a, const std::string& text, std::ostream& out)
{
    if (a.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw UsageError("cannot write " + a.out);
    f << text;
}

int verdict_exit(const Verdict& v)
{
    if (v.codes()) return kHolds;
    return v.refuted() ? kRefuted : kInconclusive;
}

// Ledrappier pattern from a bottom (or seed_y) row: rows above by upward
// evolution, rows below by downward extension anchored at the right edge.
Pattern generate_ledrappier(const Window& w, const std::vector<bool>& row, int seed_y, std::mt19937_64* rng)
{
    const BitRow seed_row(w.x0, row, BitRow::Extent::FiniteSupport);
    Pattern p(alphabet_b(), w);
    for (int y = std::max(seed_y, w.y0); y <= w.y1(); ++y) {
        const BitRow r = evolve_up_k(seed_row, static_cast<unsigned>(y - seed_y));
        for (int x = w.x0; x <= w.x1(); ++x) p.set({x, y}, r.at(x));
    }
    BitRow above = seed_row.restricted(w.x0, w.x1());
    for (int y = seed_y - 1; y >= w.y0; --y) {
        const bool bit = rng ? ((*rng)() & 1u) != 0 : false;
        above = extend_down(above, bit, w.x1()).restricted(w.x0, w.x1());
        if (y <= w.y1())
            for (int x = w.x0; x <= w.x1(); ++x) p.set({x, y}, above.at(x));
    }
    return p;
}

int cmd_generate(const Args& a, std::ostream& out)
{
    const SubshiftSpec spec = load_spec(a.spec);
    const Window w = need(a.window, "window", parse_window);
    const int seed_y = a.have_seed_y ? a.seed_y : w.y0;
    if (seed_y < w.y0 || seed_y > w.y1()) throw UsageError("--seed-y outside the window");

    std::mt19937_64 rng(a.seed);
    const bool image = spec.is_image();
    const Window base = image ? Window(w.x0, w.y0, w.width + 1, w.height) : w;
    std::vector<bool> row;
    if (!a.seed_row.empty()) {
        for (char c : a.seed_row) {
            if (c != '0' && c != '1') throw UsageError("--seed-row takes a string of 0 and 1");
            row.push_back(c == '1');
        }
    } else {
        for (int i = 0; i < base.width; ++i) row.push_back(a.have_seed && (rng() & 1u));
    }

    Pattern p;
    if (spec.is_ledrappier()) {
        p = generate_ledrappier(w, row, seed_y, a.have_seed ? &rng : nullptr);
    } else if (image && spec.as_image().base.is_ledrappier() && spec.as_image().code == builtin_f()) {
        p = apply(builtin_f(), generate_ledrappier(base, row, seed_y, a.have_seed ? &rng : nullptr));
    } else {
        bool found = false;
        enumerate_valid(spec, w, Pattern(spec.alphabet()), [&](const Pattern& q) {
            p = q;
            found = true;
            return false;
        });
        if (!found) throw UsageError("no valid pattern on " + to_string(w));
    }
    emit(a, to_pat(p), out);
    return kHolds;
}

int cmd_coding(const Args& a, std::ostream& out)
{
    const CodingQuery q{load_spec(a.spec), need(a.window, "window", parse_window),
                        need(a.known, "known", parse_shape), need(a.target, "target", parse_shape)};
    const Verdict v = check_coding(q, options(a));
    write_verdict(out, v);
    return verdict_exit(v);
}

int cmd_closing(const Args& a, std::ostream& out)
{
    const Verdict v = check_closing(load_spec(a.spec), need(a.direction, "direction", parse_direction),
                                    need(a.side, "side", parse_side), need(a.window, "window", parse_window),
                                    need(a.target, "target", parse_cell), options(a));
    write_verdict(out, v);
    return verdict_exit(v);
}

int cmd_shape(const Args& a, std::ostream& out)
{
    const SubshiftSpec spec = load_spec(a.spec);
    const Shape shape = need(a.shape, "shape", parse_shape);
    if (!a.corners.empty()) {
        const Shape uv = parse_shape(a.corners);
        if (uv.size() != 2) throw UsageError("--corners takes exactly two cells");
        const auto cp = corner_permutation(spec, shape, uv.cells()[0], uv.cells()[1], a.margin, options(a));
        out << "corners " << to_string(uv) << '\n';
        out << "contexts " << cp.contexts.size() << '\n';
        out << "permutation " << (cp.permutive ? "yes" : "no") << '\n';
        if (cp.offending) {
            write_pat(out, cp.offending->context);
            out << "pairs";
            for (const auto& [x, y] : cp.offending->pairs)
                out << ' ' << spec.alphabet().symbols[x] << ':' << spec.alphabet().symbols[y];
            out << '\n';
        }
        return cp.permutive ? kHolds : kRefuted;
    }
    const auto rep = check_extremally_permutive(spec, shape, a.margin, options(a));
    out << "shape " << to_string(shape) << '\n';
    out << "window " << to_string(rep.window) << '\n';
    bool inconclusive = false;
    for (const auto& [pt, v] : rep.points) {
        out << "point " << pt << ' ' << to_string(v.kind) << '\n';
        inconclusive = inconclusive || v.kind == Verdict::Kind::Inconclusive;
    }
    out << "permutive " << (rep.permutive ? "yes" : "no") << '\n';
    for (const auto& [pt, v] : rep.points) {
        if (v.refuted()) {
            out << "failing " << pt << '\n';
            write_verdict(out, v);
            return kRefuted;
        }
    }
    return inconclusive ? kInconclusive : kHolds;
}

int cmd_witness(const Args& a, std::ostream& out)
{
    const SubshiftSpec spec = load_spec(a.spec);
    if (!spec.is_image() || spec.as_image().code != builtin_f() || !spec.as_image().base.is_ledrappier())
        throw UsageError("witness construction is available for the subshift y only");
    const Side side = need(a.side, "side", parse_side);
    const Direction dir = a.direction.empty() ? Direction(-1, 0) : parse_direction(a.direction);
    if (!(dir == Direction(-1, 0))) throw UsageError("witness construction needs direction -1,0");
    auto res = construct_witness(side, need(a.target, "target", parse_cell), need(a.window, "window", parse_window));
    if (res.verdict.refuted()) {
        const auto cert = certify_witness({res.first, res.second}, side, dir, spec, &res.recipe);
        if (cert.certified) res.verdict.scope = Scope::Certified;
        for (const auto& f : cert.facts) res.verdict.notes.push_back(f);
    }
    write_verdict(out, res.verdict);
    return verdict_exit(res.verdict);
}

int cmd_refute_polygonal(const Args& a, std::ostream& out)
{
    const SubshiftSpec spec = load_spec(a.spec);
    const Window box = need(a.bounding, "bounding", parse_window);
    const auto rep = refute_polygonal(spec, a.max_cells, box, a.margin, options(a), a.jobs);
    bool inconclusive = false;
    for (const auto& f : rep.failures) {
        out << "fail " << to_string(f.shape) << " at " << f.failing_point << ' ' << to_string(f.verdict.kind) << '\n';
        inconclusive = inconclusive || f.verdict.kind == Verdict::Kind::Inconclusive;
    }
    for (const auto& s : rep.permutive) out << "permutive " << to_string(s) << '\n';
    out << "checked " << rep.shapes_checked << '\n';
    out << "failing " << rep.failures.size() << '\n';
    if (!rep.all_fail()) return kHolds;
    return inconclusive ? kInconclusive : kRefuted;
}

int cmd_validate(const Args& a, std::ostream& out)
{
    const SubshiftSpec spec = load_spec(a.spec);
    const Pattern p = load_pat(need(a.pattern, "pattern", +[](std::string_view s) { return std::string(s); }));
    const auto rep = is_locally_valid(spec, p);
    out << (rep.valid ? "valid" : "invalid") << '\n';
    for (const auto& v : rep.violations) out << "violation " << v.anchor << ' ' << v.id << '\n';
    return rep.valid ? kHolds : kRefuted;
}

int cmd_count(const Args& a, std::ostream& out)
{
    const SubshiftSpec spec = load_spec(a.spec);
    const Window w = need(a.window, "window", parse_window);
    const Pattern partial = a.pattern.empty() ? Pattern(spec.alphabet()) : load_pat(a.pattern);
    out << count_valid(spec, w, partial) << '\n';
    return kHolds;
}

int cmd_apply_code(const Args& a, std::ostream& out)
{
    const BlockCode code = load_code(need(a.code, "code", +[](std::string_view s) { return std::string(s); }));
    const Pattern p = load_pat(need(a.pattern, "pattern", +[](std::string_view s) { return std::string(s); }));
    emit(a, to_pat(apply(code, p)), out);
    return kHolds;
}

int cmd_invert_code(const Args& a, std::ostream& out)
{
    const SubshiftSpec spec = load_spec(a.spec);
    if (!a.pattern.empty()) {
        // Preimage of an image pattern.
        if (!spec.is_image()) throw UsageError("--pattern needs an image subshift");
        const Pattern pre = find_preimage(spec, load_pat(a.pattern));
        if (pre.frame_empty()) {
            out << "preimage none\n";
            return kRefuted;
        }
        emit(a, to_pat(pre), out);
        return kHolds;
    }
    const BlockCode code = load_code(need(a.code, "code", +[](std::string_view s) { return std::string(s); }));
    const auto rep = check_injectivity_on_window(code, spec, need(a.window, "window", parse_window));
    out << "injective " << (rep.injective ? "yes" : "no") << '\n';
    out << "compared " << (rep.compared.empty() ? "-" : to_string(rep.compared)) << '\n';
    out << "recovered " << (rep.recovered.empty() ? "-" : to_string(rep.recovered)) << '\n';
    if (rep.collision) {
        write_pat(out, rep.collision->first);
        write_pat(out, rep.collision->second);
    }
    return rep.injective ? kHolds : kRefuted;
}

int cmd_render(const Args& a, std::ostream& out)
{
    const Pattern p = load_pat(need(a.pattern, "pattern", +[](std::string_view s) { return std::string(s); }));
    RenderStyle st;
    st.format = parse_render_format(a.format);
    st.pair_split = a.split;
    st.guide_x = a.guide_x;
    st.guide_y = a.guide_y;
    emit(a, render(p, st), out);
    return kHolds;
}

}  // namespace

int main(int argc, char** argv)
{
    std::vector<std::string> argv_s(argv, argv + argc);
    if (argv_s.size() > 1 && argv_s[1] == "check") argv_s.erase(argv_s.begin() + 1);
    std::vector<char*> av;
    for (auto& s : argv_s) av.push_back(s.data());

    CLI::App app{"Directional closing checks for two-dimensional subshifts"};
    app.require_subcommand(1);
    Args a;
    std::function<int(const Args&, std::ostream&)> run;

    auto sub = [&](const char* name, const char* help, auto fn) {
        auto* s = app.add_subcommand(name, help);
        s->callback([&run, fn] { run = fn; });
        return s;
    };
    auto spec = [&](CLI::App* s) { s->add_option("--spec", a.spec, "built-in name (ledrappier, y) or SUB file"); };
    auto budget = [&](CLI::App* s) { s->add_option("--budget", a.budget, "maximum free cells of a searched window"); };
    auto window = [&](CLI::App* s) { s->add_option("--window", a.window, "window WxH+X+Y"); };
    auto out = [&](CLI::App* s) { s->add_option("--out", a.out, "write output to FILE"); };

    auto* gen = sub("generate", "emit a valid window pattern", cmd_generate);
    spec(gen);
    window(gen);
    out(gen);
    gen->add_option("--seed-row", a.seed_row, "row bits, leftmost first");
    gen->add_option("--seed-y", a.seed_y, "row holding the seed row (default: bottom)")->each([&](const std::string&) {
        a.have_seed_y = true;
    });
    gen->add_option("--seed", a.seed, "random seed")->each([&](const std::string&) { a.have_seed = true; });

    auto* coding = sub("coding", "does the known shape code the target shape", cmd_coding);
    spec(coding);
    window(coding);
    budget(coding);
    coding->add_option("--known", a.known, "known cells (x,y);...");
    coding->add_option("--target", a.target, "target cells (x,y);...");

    auto* closing = sub("closing", "closing check for one boundary cell", cmd_closing);
    spec(closing);
    window(closing);
    budget(closing);
    closing->add_option("--direction", a.direction, "direction p,q");
    closing->add_option("--side", a.side, "left, right or determinism");
    closing->add_option("--target", a.target, "target cell x,y");

    auto* shape = sub("shape", "extremal permutivity of a shape", cmd_shape);
    spec(shape);
    budget(shape);
    shape->add_option("--shape,--known", a.shape, "cells (x,y);...");
    shape->add_option("--margin", a.margin, "window margin around the shape");
    shape->add_option("--corners", a.corners, "two extremal points (x,y);(x,y) for the corner permutation");

    auto* witness = sub("witness", "build and certify a witness pair", cmd_witness);
    spec(witness);
    window(witness);
    witness->add_option("--side", a.side, "left or right");
    witness->add_option("--target", a.target, "target cell x,y");
    witness->add_option("--direction", a.direction, "direction p,q (only -1,0)");

    auto* poly = sub("refute-polygonal", "search for extremally permutive shapes", cmd_refute_polygonal);
    spec(poly);
    budget(poly);
    poly->add_option("--max-cells", a.max_cells, "largest shape size");
    poly->add_option("--bounding", a.bounding, "bounding box WxH+X+Y");
    poly->add_option("--margin", a.margin, "window margin around each shape");
    poly->add_option("--jobs", a.jobs, "worker threads");

    auto* validate = sub("validate", "local validity of a pattern", cmd_validate);
    spec(validate);
    validate->add_option("--pattern", a.pattern, "PAT file");

    auto* count = sub("count", "number of valid window patterns", cmd_count);
    spec(count);
    window(count);
    count->add_option("--pattern", a.pattern, "partial PAT file the patterns must extend");

    auto* apply_code = sub("apply-code", "apply a block code to a pattern", cmd_apply_code);
    apply_code->add_option("--code", a.code, "CODE file or built-in (@g, @ginv, @f, @finv)");
    apply_code->add_option("--pattern", a.pattern, "PAT file");
    out(apply_code);

    auto* invert = sub("invert-code", "injectivity on a window, or a preimage of a pattern", cmd_invert_code);
    spec(invert);
    window(invert);
    out(invert);
    invert->add_option("--code", a.code, "CODE file or built-in");
    invert->add_option("--pattern", a.pattern, "image PAT file to pull back");

    auto* rend = sub("render", "draw a pattern", cmd_render);
    rend->add_option("--pattern", a.pattern, "PAT file");
    rend->add_option("--format", a.format, "ascii, pbm or svg");
    rend->add_flag("--split", a.split, "draw P cells as two half-cells");
    rend->add_option("--guide-x", a.guide_x, "thick vertical guide at column x");
    rend->add_option("--guide-y", a.guide_y, "thick horizontal guide at row y");
    out(rend);

    try {
        app.parse(static_cast<int>(av.size()), av.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    std::ostringstream buffer;
    int code;
    try {
        code = run(a, buffer);
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const RangeError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kFormat;
    } catch (const BudgetExceeded& e) {
        std::cout << "verdict inconclusive\nreason " << e.what() << '\n';
        return kInconclusive;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kInternal;
    }
    std::cout << buffer.str() << std::flush;
    return code;
}
