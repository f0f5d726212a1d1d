#include "dirclose/subshift.hpp"

#include "dirclose/errors.hpp"
#include "dirclose/linear_core.hpp"
#include "dirclose/sweep.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>

namespace dirclose {

SubshiftSpec SubshiftSpec::ledrappier()
{
    return SubshiftSpec(LedrappierKernel{});
}

SubshiftSpec SubshiftSpec::sft(Alphabet alphabet, std::vector<Pattern> forbidden)
{
    if (alphabet.size() == 0) throw UsageError("alphabet must have at least one symbol");
    for (const auto& f : forbidden) {
        if (f.alphabet() != alphabet) throw UsageError("forbidden pattern over the wrong alphabet");
        if (f.assigned_count() == 0) throw UsageError("forbidden pattern must assign at least one cell");
    }
    return SubshiftSpec(ForbiddenPatterns{std::move(alphabet), std::move(forbidden)});
}

SubshiftSpec SubshiftSpec::image(const SubshiftSpec& base, BlockCode code)
{
    if (code.source() != base.alphabet())
        throw UsageError("code reads " + code.source().name + " but the base subshift is over " +
                         base.alphabet().name);
    if (base.depth() + 1 > kMaxImageDepth) throw UsageError("image nesting deeper than 4");
    return SubshiftSpec(std::make_shared<const ImageUnderCode>(ImageUnderCode{base, std::move(code)}));
}

SubshiftSpec SubshiftSpec::y()
{
    return image(ledrappier(), builtin_f());
}

const Alphabet& SubshiftSpec::alphabet() const
{
    if (is_ledrappier()) return alphabet_b();
    if (is_sft()) return as_sft().alphabet;
    return as_image().code.target();
}

const ImageUnderCode& SubshiftSpec::as_image() const
{
    return *std::get<std::shared_ptr<const ImageUnderCode>>(kind_);
}

const ForbiddenPatterns& SubshiftSpec::as_sft() const
{
    return std::get<ForbiddenPatterns>(kind_);
}

int SubshiftSpec::depth() const
{
    return is_image() ? 1 + as_image().base.depth() : 0;
}

std::string SubshiftSpec::description() const
{
    if (is_ledrappier()) return "ledrappier";
    if (is_sft()) return "sft " + as_sft().alphabet.name;
    const auto& im = as_image();
    if (im.base.is_ledrappier() && im.code == builtin_f()) return "y";
    return "image(" + im.base.description() + ")";
}

std::string_view to_string(ExtendabilityCertificate c)
{
    switch (c) {
    case ExtendabilityCertificate::None: return "none";
    case ExtendabilityCertificate::RectangleFreeRow: return "rectangle-free-row";
    case ExtendabilityCertificate::PreimageRectangle: return "preimage-rectangle";
    }
    return "?";
}

namespace detail {

FlatSpec flatten(const SubshiftSpec& spec)
{
    if (!spec.is_image()) return {&spec, std::nullopt};
    const auto& im = spec.as_image();
    FlatSpec inner = flatten(im.base);
    if (inner.code) inner.code = compose(im.code, *inner.code);
    else inner.code = im.code;
    return inner;
}

LocalSystem build_system(const SubshiftSpec& spec, const std::vector<Cell>& outputs)
{
    if (outputs.empty()) throw UsageError("no output cells");
    FlatSpec flat = flatten(spec);
    LocalSystem sys;
    sys.code = flat.code;
    sys.output_symbols = spec.alphabet().size();
    sys.base_symbols = flat.root->alphabet().size();
    sys.base_is_ledrappier = flat.root->is_ledrappier();

    std::vector<Cell> base_cells;
    if (flat.code) {
        for (const auto& u : outputs)
            for (const auto& n : flat.code->neighborhood()) base_cells.push_back(u + n);
    } else {
        base_cells = outputs;
    }
    sys.base = Shape(base_cells).bounding_box();
    sys.present.assign(sys.base.size(), 0);
    for (const auto& c : base_cells) sys.present[sys.base.index(c)] = 1;
    auto present = [&](const Cell& c) { return sys.base.contains(c) && sys.present[sys.base.index(c)]; };

    sys.outputs = Shape(outputs).cells();
    for (const auto& u : sys.outputs) {
        std::vector<int> cells;
        if (flat.code) {
            for (const auto& n : flat.code->neighborhood()) cells.push_back(sys.base_index(u + n));
        } else {
            cells.push_back(sys.base_index(u));
        }
        sys.output_cells.push_back(std::move(cells));
    }

    for (const auto& b : sys.base.cells()) {
        if (!present(b)) continue;
        if (flat.root->is_ledrappier()) {
            Cell right = b + Cell{1, 0}, up = b + Cell{0, 1};
            if (present(right) && present(up)) {
                LocalSystem::Constraint con;
                con.cells = {sys.base_index(b), sys.base_index(right), sys.base_index(up)};
                con.parity = true;
                con.anchor = b;
                sys.constraints.push_back(std::move(con));
            }
        } else if (flat.root->is_sft()) {
            const auto& forbidden = flat.root->as_sft().forbidden;
            for (std::size_t fi = 0; fi < forbidden.size(); ++fi) {
                auto support = forbidden[fi].support();
                const Cell shift = b - support.front();
                LocalSystem::Constraint con;
                bool inside = true;
                for (const auto& s : support) {
                    if (!present(s + shift)) {
                        inside = false;
                        break;
                    }
                    con.cells.push_back(sys.base_index(s + shift));
                    con.forbidden.push_back(forbidden[fi].at(s));
                }
                if (!inside) continue;
                con.anchor = b;
                con.id = static_cast<int>(fi);
                sys.constraints.push_back(std::move(con));
            }
        }
    }
    return sys;
}

Pattern output_pattern(const SubshiftSpec& spec, const LocalSystem& sys, const std::vector<std::uint8_t>& base,
                       const Window& frame)
{
    Pattern out(spec.alphabet(), frame);
    std::vector<Symbol> tuple;
    for (std::size_t i = 0; i < sys.outputs.size(); ++i) {
        const auto& cells = sys.output_cells[i];
        Symbol v;
        if (sys.code) {
            tuple.clear();
            for (int c : cells) tuple.push_back(base[static_cast<std::size_t>(c)]);
            v = sys.code->lookup(tuple);
        } else {
            v = base[static_cast<std::size_t>(cells.front())];
        }
        if (frame.contains(sys.outputs[i])) out.set(sys.outputs[i], v);
    }
    return out;
}

}  // namespace detail

namespace {

void require_alphabet(const SubshiftSpec& spec, const Pattern& p)
{
    if (p.alphabet() != spec.alphabet())
        throw UsageError("alphabet mismatch: pattern over " + p.alphabet().name + ", subshift over " +
                         spec.alphabet().name);
}

std::vector<detail::ObservationRole> roles_from(const detail::LocalSystem& sys, const Pattern& partial)
{
    std::vector<detail::ObservationRole> roles(sys.outputs.size());
    for (std::size_t i = 0; i < sys.outputs.size(); ++i) {
        if (auto v = partial.get(sys.outputs[i])) {
            roles[i].kind = detail::ObservationRole::Kind::Fixed;
            roles[i].value = *v;
        }
    }
    return roles;
}

void require_inside(const Pattern& partial, const Window& window)
{
    for (const auto& c : partial.support())
        if (!window.contains(c)) throw UsageError("partial pattern assigns " + to_string(c) + " outside the window");
}

}  // namespace

ValidityReport is_locally_valid(const SubshiftSpec& spec, const Pattern& pattern)
{
    require_alphabet(spec, pattern);
    ValidityReport report;
    auto support = pattern.support();
    if (support.empty()) return report;
    auto sys = detail::build_system(spec, support);
    if (!spec.is_image()) {
        std::vector<Symbol> vals(sys.present.size(), 0);
        for (const auto& c : support) vals[sys.base.index(c)] = pattern.at(c);
        for (const auto& con : sys.constraints) {
            bool ok;
            if (con.parity) {
                unsigned sum = 0;
                for (int c : con.cells) sum += vals[static_cast<std::size_t>(c)];
                ok = (sum & 1u) == 0;
            } else {
                ok = false;
                for (std::size_t i = 0; i < con.cells.size(); ++i)
                    if (vals[static_cast<std::size_t>(con.cells[i])] != con.forbidden[i]) ok = true;
            }
            if (!ok) report.violations.push_back({con.anchor, con.id});
        }
        report.valid = report.violations.empty();
        return report;
    }
    detail::Sweeper sweeper(sys, detail::Orientation::RowsUp, 1, roles_from(sys, pattern), kDefaultStateBudget);
    std::vector<detail::Assignment> found;
    if (!sweeper.search(0, static_cast<int>(sweeper.line_count()), sweeper.initial_state(),
                        [](const std::string&) { return true; }, found)) {
        report.valid = false;
        report.violations.push_back({support.front(), -1});
    }
    return report;
}

Pattern find_preimage(const SubshiftSpec& spec, const Pattern& pattern)
{
    require_alphabet(spec, pattern);
    auto support = pattern.support();
    if (support.empty()) throw UsageError("cannot take the preimage of an empty pattern");
    auto sys = detail::build_system(spec, support);
    detail::Sweeper sweeper(sys, detail::Orientation::RowsUp, 1, roles_from(sys, pattern), kDefaultStateBudget);
    std::vector<detail::Assignment> found;
    const auto flat = detail::flatten(spec);
    if (!sweeper.search(0, static_cast<int>(sweeper.line_count()), sweeper.initial_state(),
                        [](const std::string&) { return true; }, found))
        return Pattern(flat.root->alphabet());
    Pattern out(flat.root->alphabet(), sys.base);
    for (const auto& c : sys.base.cells())
        if (sys.present[sys.base.index(c)]) out.set(c, found[0][sys.base.index(c)]);
    return out;
}

void enumerate_valid(const SubshiftSpec& spec, const Window& window, const Pattern& partial,
                     const std::function<bool(const Pattern&)>& visit)
{
    require_alphabet(spec, partial);
    require_inside(partial, window);
    auto sys = detail::build_system(spec, window.cells());
    detail::Sweeper sweeper(sys, detail::Orientation::RowsUp, 1, roles_from(sys, partial), kDefaultStateBudget);
    if (!spec.is_image()) {
        sweeper.enumerate([&](const std::vector<detail::Assignment>& a) {
            return visit(detail::output_pattern(spec, sys, a[0], window));
        });
        return;
    }
    // Distinct images, sorted; outputs are listed in canonical cell order.
    std::set<std::vector<Symbol>> images;
    sweeper.enumerate([&](const std::vector<detail::Assignment>& a) {
        std::vector<Symbol> img(sys.outputs.size());
        for (std::size_t i = 0; i < img.size(); ++i) img[i] = sweeper.output_value(i, a[0]);
        images.insert(std::move(img));
        return true;
    });
    for (const auto& img : images) {
        Pattern p(spec.alphabet(), window);
        for (std::size_t i = 0; i < img.size(); ++i) p.set(sys.outputs[i], img[i]);
        if (!visit(p)) return;
    }
}

std::vector<Pattern> all_valid(const SubshiftSpec& spec, const Window& window, const Pattern& partial)
{
    std::vector<Pattern> out;
    enumerate_valid(spec, window, partial, [&](const Pattern& p) {
        out.push_back(p);
        return true;
    });
    return out;
}

std::vector<Pattern> all_valid(const SubshiftSpec& spec, const Window& window)
{
    return all_valid(spec, window, Pattern(spec.alphabet(), window));
}

std::uint64_t count_valid(const SubshiftSpec& spec, const Window& window, const Pattern& partial)
{
    require_alphabet(spec, partial);
    require_inside(partial, window);
    auto sys = detail::build_system(spec, window.cells());
    detail::Sweeper sweeper(sys, detail::Orientation::RowsUp, 1, roles_from(sys, partial), kDefaultStateBudget,
                            true);
    return sweeper.count_distinct_outputs();
}

std::uint64_t count_valid(const SubshiftSpec& spec, const Window& window)
{
    return count_valid(spec, window, Pattern(spec.alphabet(), window));
}

ExtendabilityCertificate extendability(const SubshiftSpec& spec)
{
    if (spec.is_ledrappier()) return ExtendabilityCertificate::RectangleFreeRow;
    if (spec.is_sft()) return ExtendabilityCertificate::None;
    return extendability(spec.as_image().base) == ExtendabilityCertificate::None
               ? ExtendabilityCertificate::None
               : ExtendabilityCertificate::PreimageRectangle;
}

Pattern extend_ledrappier_rectangle(const Pattern& rectangle, const Window& larger)
{
    if (rectangle.alphabet() != alphabet_b() || !rectangle.is_total())
        throw UsageError("need a total binary rectangle");
    const Window r = rectangle.frame();
    if (!larger.contains({r.x0, r.y0}) || !larger.contains({r.x1(), r.y1()}))
        throw UsageError("larger window must contain the rectangle");
    if (!is_locally_valid(SubshiftSpec::ledrappier(), rectangle).valid)
        throw UsageError("rectangle is not locally valid");

    // Bottom row: the rectangle's own bottom row, continued to the right as
    // forced by its right column, zero elsewhere.
    std::vector<int> ones;
    for (int x = r.x0; x <= r.x1(); ++x)
        if (rectangle.at({x, r.y0})) ones.push_back(x);
    std::vector<bool> column;
    for (int y = r.y0; y <= r.y1(); ++y) column.push_back(rectangle.at({r.x1(), y}) != 0);
    for (int m = 1; m < r.height; ++m) {
        std::vector<bool> next(column.size() - 1);
        for (std::size_t j = 0; j + 1 < column.size(); ++j) next[j] = column[j] ^ column[j + 1];
        column = std::move(next);
        if (column.front()) ones.push_back(r.x1() + m);
    }
    const BitRow bottom = BitRow::ones_at(ones);

    Pattern out(alphabet_b(), larger);
    BitRow row = bottom;
    for (int y = r.y0; y <= larger.y1(); ++y) {
        if (y >= larger.y0)
            for (int x = larger.x0; x <= larger.x1(); ++x) out.set({x, y}, row.at(x) ? 1 : 0);
        row = evolve_up(row);
    }
    BitRow above = bottom.restricted(std::min(larger.x0, r.x0), std::max(larger.x1(), r.x1() + r.height));
    for (int y = r.y0 - 1; y >= larger.y0; --y) {
        BitRow below = extend_down(above, false, above.lo());
        for (int x = larger.x0; x <= larger.x1(); ++x) out.set({x, y}, below.at(x) ? 1 : 0);
        above = std::move(below);
    }
    return out;
}

namespace {

std::string resolve(const std::string& base_dir, const std::string& path)
{
    if (path.empty() || path.front() == '@' || path == "ledrappier" || path == "y") return path;
    std::filesystem::path p(path);
    if (p.is_absolute() || base_dir.empty()) return path;
    return (std::filesystem::path(base_dir) / p).string();
}

}  // namespace

SubshiftSpec read_spec(std::istream& is, const std::string& base_dir)
{
    std::string line;
    auto next_line = [&](std::string& out) {
        while (std::getline(is, out)) {
            if (!out.empty() && out.back() == '\r') out.pop_back();
            if (out.find_first_not_of(" \t") != std::string::npos) return true;
        }
        return false;
    };
    if (!next_line(line)) throw FormatError("empty spec file");
    std::istringstream hs(line);
    std::string tag, kind, extra;
    if (!(hs >> tag >> kind) || tag != "kind") throw FormatError("spec must start with a kind line");
    if (kind == "ledrappier") {
        if (hs >> extra || next_line(line)) throw FormatError("trailing data after kind ledrappier");
        return SubshiftSpec::ledrappier();
    }
    if (kind == "sft") {
        std::string alpha_name;
        if (!(hs >> alpha_name) || hs >> extra) throw FormatError("kind sft needs an alphabet name");
        const Alphabet& alpha = alphabet_by_name(alpha_name);
        std::vector<Pattern> forbidden;
        while (next_line(line)) {
            std::istringstream ls(line);
            if (!(ls >> tag) || tag != "forbid" || ls >> extra) throw FormatError("expected forbid, got '" + line + "'");
            Pattern p = read_pat(is);
            if (p.alphabet() != alpha) throw FormatError("forbidden pattern over the wrong alphabet");
            if (p.assigned_count() == 0) throw FormatError("forbidden pattern assigns no cell");
            forbidden.push_back(std::move(p));
        }
        return SubshiftSpec::sft(alpha, std::move(forbidden));
    }
    if (kind == "image") {
        if (hs >> extra) throw FormatError("trailing data after kind image");
        std::optional<std::string> base, code;
        while (next_line(line)) {
            std::istringstream ls(line);
            std::string key, value;
            if (!(ls >> key >> value) || ls >> extra) throw FormatError("malformed line '" + line + "'");
            if (key == "base" && !base) base = value;
            else if (key == "code" && !code) code = value;
            else throw FormatError("unexpected line '" + line + "'");
        }
        if (!base || !code) throw FormatError("image spec needs base and code lines");
        SubshiftSpec b = load_spec(resolve(base_dir, *base));
        BlockCode c = load_code(resolve(base_dir, *code));
        try {
            return SubshiftSpec::image(b, std::move(c));
        } catch (const UsageError& e) {
            throw FormatError(e.what());
        }
    }
    throw FormatError("unknown spec kind '" + kind + "'");
}

SubshiftSpec load_spec(const std::string& path_or_name)
{
    if (path_or_name == "ledrappier") return SubshiftSpec::ledrappier();
    if (path_or_name == "y") return SubshiftSpec::y();
    std::ifstream in(path_or_name);
    if (!in) throw FormatError("cannot open spec file " + path_or_name);
    return read_spec(in, std::filesystem::path(path_or_name).parent_path().string());
}

void write_spec(std::ostream& os, const SubshiftSpec& spec)
{
    if (spec.is_ledrappier()) {
        os << "kind ledrappier\n";
        return;
    }
    if (spec.is_sft()) {
        os << "kind sft " << spec.as_sft().alphabet.name << '\n';
        for (const auto& f : spec.as_sft().forbidden) {
            os << "forbid\n";
            write_pat(os, f);
        }
        return;
    }
    throw UsageError("image specs reference files and are written by hand");
}

}  // namespace dirclose
