#include "dirclose/codes.hpp"

#include "dirclose/errors.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dirclose {

namespace {

constexpr std::size_t kMaxRuleEntries = std::size_t{1} << 22;

std::size_t power(std::size_t base, std::size_t exp)
{
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; ++i) {
        if (r > kMaxRuleEntries) throw UsageError("code rule table too large");
        r *= base;
    }
    if (r > kMaxRuleEntries) throw UsageError("code rule table too large");
    return r;
}

}  // namespace

BlockCode::BlockCode(Alphabet source, Alphabet target, std::vector<Cell> neighborhood, std::vector<Symbol> rule)
    : source_(std::move(source)), target_(std::move(target))
{
    if (neighborhood.empty()) throw UsageError("code neighborhood must be nonempty");
    if (source_.size() == 0 || target_.size() == 0) throw UsageError("code alphabets must be nonempty");
    std::vector<Cell> sorted = neighborhood;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
        throw UsageError("code neighborhood has duplicate offsets");
    const std::size_t k = neighborhood.size();
    const std::size_t n = power(source_.size(), k);
    if (rule.size() != n) throw UsageError("code rule table is not total");
    for (auto t : rule)
        if (t >= target_.size()) throw UsageError("code rule maps outside the target alphabet");

    // Re-index the table for the canonical neighborhood order.
    std::vector<std::size_t> pos(k);  // pos[i] = canonical position of given offset i
    for (std::size_t i = 0; i < k; ++i)
        pos[i] = static_cast<std::size_t>(std::lower_bound(sorted.begin(), sorted.end(), neighborhood[i]) -
                                          sorted.begin());
    rule_.assign(n, 0);
    const std::size_t a = source_.size();
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t rest = idx, canon = 0;
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t s = rest % a;
            rest /= a;
            canon += s * power(a, pos[i]);
        }
        rule_[canon] = rule[idx];
    }
    neighborhood_ = std::move(sorted);
}

Symbol BlockCode::lookup(std::span<const Symbol> tuple) const
{
    std::size_t idx = 0, mul = 1;
    for (auto s : tuple) {
        idx += s * mul;
        mul *= source_.size();
    }
    return rule_[idx];
}

std::vector<Symbol> BlockCode::tuple_at(std::size_t index) const
{
    std::vector<Symbol> t(neighborhood_.size());
    for (auto& s : t) {
        s = static_cast<Symbol>(index % source_.size());
        index /= source_.size();
    }
    return t;
}

bool BlockCode::horizontal() const
{
    return std::all_of(neighborhood_.begin(), neighborhood_.end(), [](const Cell& c) { return c.y == 0; });
}

BlockCode builtin_g()
{
    // index a + 2b over offsets (0,0), (1,0)
    std::vector<Symbol> rule(4);
    for (int b = 0; b < 2; ++b)
        for (int a = 0; a < 2; ++a)
            rule[static_cast<std::size_t>(a + 2 * b)] = b == 0 ? pair_symbol(a, false) : pair_symbol(false, true);
    return BlockCode(alphabet_b(), alphabet_p(), {{0, 0}, {1, 0}}, std::move(rule));
}

BlockCode builtin_g_inverse()
{
    std::vector<Symbol> rule(4);
    for (Symbol s = 0; s < 4; ++s) rule[s] = pair_right(s) ? 1 : 0;
    return BlockCode(alphabet_p(), alphabet_b(), {{-1, 0}}, std::move(rule));
}

BlockCode builtin_f()
{
    return lift_rows(builtin_g());
}

BlockCode builtin_f_inverse()
{
    return lift_rows(builtin_g_inverse());
}

BlockCode identity_code(const Alphabet& a)
{
    std::vector<Symbol> rule(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) rule[i] = static_cast<Symbol>(i);
    return BlockCode(a, a, {{0, 0}}, std::move(rule));
}

BlockCode builtin_code(std::string_view name)
{
    if (name == "@g") return builtin_g();
    if (name == "@ginv") return builtin_g_inverse();
    if (name == "@f") return builtin_f();
    if (name == "@finv") return builtin_f_inverse();
    throw UsageError("unknown built-in code '" + std::string(name) + "'");
}

BlockCode lift_rows(const BlockCode& code1d)
{
    if (!code1d.horizontal()) throw UsageError("lift_rows needs a neighborhood with all offsets on one row");
    // Offsets (dx, 0) already act on each row independently.
    return code1d;
}

Pattern apply(const BlockCode& code, const Pattern& pattern)
{
    if (pattern.alphabet() != code.source())
        throw UsageError("alphabet mismatch: code reads " + code.source().name + ", pattern is " +
                         pattern.alphabet().name);
    if (pattern.frame_empty()) return Pattern(code.target());
    const Window in = pattern.frame();
    int min_dx = 0, max_dx = 0, min_dy = 0, max_dy = 0;
    bool first = true;
    for (const auto& n : code.neighborhood()) {
        if (first) {
            min_dx = max_dx = n.x;
            min_dy = max_dy = n.y;
            first = false;
        }
        min_dx = std::min(min_dx, n.x);
        max_dx = std::max(max_dx, n.x);
        min_dy = std::min(min_dy, n.y);
        max_dy = std::max(max_dy, n.y);
    }
    const int ox0 = in.x0 - min_dx, ox1 = in.x1() - max_dx;
    const int oy0 = in.y0 - min_dy, oy1 = in.y1() - max_dy;
    if (ox1 < ox0 || oy1 < oy0) return Pattern(code.target());
    Pattern out(code.target(), Window(ox0, oy0, ox1 - ox0 + 1, oy1 - oy0 + 1));
    std::vector<Symbol> tuple(code.neighborhood().size());
    for (int y = oy0; y <= oy1; ++y) {
        for (int x = ox0; x <= ox1; ++x) {
            bool ok = true;
            for (std::size_t i = 0; i < tuple.size() && ok; ++i) {
                auto v = pattern.get(Cell{x, y} + code.neighborhood()[i]);
                if (v) tuple[i] = *v;
                else ok = false;
            }
            if (ok) out.set({x, y}, code.lookup(tuple));
        }
    }
    return out;
}

BlockCode compose(const BlockCode& outer, const BlockCode& inner)
{
    if (inner.target() != outer.source())
        throw UsageError("alphabet mismatch: inner writes " + inner.target().name + ", outer reads " +
                         outer.source().name);
    std::vector<Cell> sum;
    for (const auto& o : outer.neighborhood())
        for (const auto& i : inner.neighborhood()) sum.push_back(o + i);
    std::sort(sum.begin(), sum.end());
    sum.erase(std::unique(sum.begin(), sum.end()), sum.end());

    auto index_of = [&](const Cell& c) {
        return static_cast<std::size_t>(std::lower_bound(sum.begin(), sum.end(), c) - sum.begin());
    };
    // Positions in `sum` read by the inner code at each outer offset.
    std::vector<std::vector<std::size_t>> reads;
    for (const auto& o : outer.neighborhood()) {
        std::vector<std::size_t> r;
        for (const auto& i : inner.neighborhood()) r.push_back(index_of(o + i));
        reads.push_back(std::move(r));
    }

    const std::size_t n = power(inner.source().size(), sum.size());
    std::vector<Symbol> rule(n);
    std::vector<Symbol> full(sum.size()), in_tuple(inner.neighborhood().size()),
        out_tuple(outer.neighborhood().size());
    for (std::size_t idx = 0; idx < n; ++idx) {
        std::size_t rest = idx;
        for (auto& s : full) {
            s = static_cast<Symbol>(rest % inner.source().size());
            rest /= inner.source().size();
        }
        for (std::size_t k = 0; k < reads.size(); ++k) {
            for (std::size_t m = 0; m < reads[k].size(); ++m) in_tuple[m] = full[reads[k][m]];
            out_tuple[k] = inner.lookup(in_tuple);
        }
        rule[idx] = outer.lookup(out_tuple);
    }
    return BlockCode(inner.source(), outer.target(), std::move(sum), std::move(rule));
}

void write_code(std::ostream& os, const BlockCode& code)
{
    os << "code " << code.source().name << ' ' << code.target().name << '\n';
    os << "nbhd";
    for (const auto& n : code.neighborhood()) os << " (" << n.x << ',' << n.y << ')';
    os << '\n';
    for (std::size_t idx = 0; idx < code.tuple_count(); ++idx) {
        os << "map";
        for (auto s : code.tuple_at(idx)) os << ' ' << code.source().symbols[s];
        os << " -> " << code.target().symbols[code.rule()[idx]] << '\n';
    }
}

BlockCode read_code(std::istream& is)
{
    std::string line;
    std::vector<std::string> lines;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        lines.push_back(line);
    }
    if (lines.size() < 2) throw FormatError("code file needs a header and a nbhd line");

    std::istringstream hs(lines[0]);
    std::string tag, src_name, dst_name, extra;
    if (!(hs >> tag >> src_name >> dst_name) || tag != "code" || (hs >> extra))
        throw FormatError("malformed code header: '" + lines[0] + "'");
    const Alphabet& src = alphabet_by_name(src_name);
    const Alphabet& dst = alphabet_by_name(dst_name);

    std::istringstream ns(lines[1]);
    if (!(ns >> tag) || tag != "nbhd") throw FormatError("expected nbhd line");
    std::vector<Cell> nbhd;
    std::string tok;
    while (ns >> tok) {
        if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
            throw FormatError("malformed offset '" + tok + "'");
        try {
            nbhd.push_back(parse_cell(std::string_view(tok).substr(1, tok.size() - 2)));
        } catch (const UsageError&) {
            throw FormatError("malformed offset '" + tok + "'");
        }
    }
    if (nbhd.empty()) throw FormatError("empty neighborhood");

    std::size_t n = 1;
    for (std::size_t i = 0; i < nbhd.size(); ++i) {
        n *= src.size();
        if (n > kMaxRuleEntries) throw FormatError("code rule table too large");
    }
    std::vector<int> rule(n, -1);
    for (std::size_t l = 2; l < lines.size(); ++l) {
        std::istringstream ms(lines[l]);
        if (!(ms >> tag) || tag != "map") throw FormatError("expected map line: '" + lines[l] + "'");
        std::size_t idx = 0, mul = 1;
        for (std::size_t i = 0; i < nbhd.size(); ++i) {
            if (!(ms >> tok)) throw FormatError("short map line: '" + lines[l] + "'");
            auto s = src.index_of(tok);
            if (!s) throw FormatError("symbol '" + tok + "' not in " + src.name);
            idx += *s * mul;
            mul *= src.size();
        }
        std::string arrow, out;
        if (!(ms >> arrow >> out) || arrow != "->" || (ms >> extra))
            throw FormatError("malformed map line: '" + lines[l] + "'");
        auto t = dst.index_of(out);
        if (!t) throw FormatError("symbol '" + out + "' not in " + dst.name);
        if (rule[idx] >= 0 && rule[idx] != *t) throw FormatError("conflicting map lines");
        rule[idx] = *t;
    }
    std::vector<Symbol> table;
    for (auto v : rule) {
        if (v < 0) throw FormatError("code rule is not total");
        table.push_back(static_cast<Symbol>(v));
    }
    try {
        return BlockCode(src, dst, std::move(nbhd), std::move(table));
    } catch (const UsageError& e) {
        throw FormatError(e.what());
    }
}

BlockCode load_code(const std::string& path_or_name)
{
    if (!path_or_name.empty() && path_or_name.front() == '@') return builtin_code(path_or_name);
    std::ifstream in(path_or_name);
    if (!in) throw FormatError("cannot open code file " + path_or_name);
    return read_code(in);
}

}  // namespace dirclose
