#include "dirclose/pattern.hpp"

#include "dirclose/errors.hpp"

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

namespace dirclose {

std::optional<Symbol> Alphabet::index_of(std::string_view token) const
{
    for (std::size_t i = 0; i < symbols.size(); ++i)
        if (symbols[i] == token) return static_cast<Symbol>(i);
    return std::nullopt;
}

const Alphabet& alphabet_b()
{
    static const Alphabet b{"B", {"0", "1"}};
    return b;
}

const Alphabet& alphabet_p()
{
    static const Alphabet p{"P", {"00", "10", "01", "11"}};
    return p;
}

const Alphabet& alphabet_by_name(std::string_view name)
{
    if (name == "B") return alphabet_b();
    if (name == "P") return alphabet_p();
    throw FormatError("unknown alphabet '" + std::string(name) + "'");
}

Pattern::Pattern(Alphabet alphabet) : alphabet_(std::move(alphabet)) {}

Pattern::Pattern(Alphabet alphabet, const Window& frame)
    : alphabet_(std::move(alphabet)),
      x0_(frame.x0),
      y0_(frame.y0),
      width_(frame.width),
      height_(frame.height),
      data_(frame.size(), -1)
{
}

Window Pattern::frame() const
{
    if (frame_empty()) throw UsageError("pattern has an empty frame");
    return {x0_, y0_, width_, height_};
}

bool Pattern::in_frame(const Cell& c) const
{
    return c.x >= x0_ && c.x < x0_ + width_ && c.y >= y0_ && c.y < y0_ + height_;
}

std::size_t Pattern::slot(const Cell& c) const
{
    return static_cast<std::size_t>(c.y - y0_) * width_ + (c.x - x0_);
}

std::optional<Symbol> Pattern::get(const Cell& c) const
{
    if (!in_frame(c)) return std::nullopt;
    auto v = data_[slot(c)];
    if (v < 0) return std::nullopt;
    return static_cast<Symbol>(v);
}

Symbol Pattern::at(const Cell& c) const
{
    auto v = get(c);
    if (!v) throw UsageError("cell " + to_string(c) + " is unassigned");
    return *v;
}

void Pattern::set(const Cell& c, Symbol s)
{
    if (!in_frame(c)) throw UsageError("cell " + to_string(c) + " outside pattern frame");
    if (s >= alphabet_.size()) throw UsageError("symbol outside alphabet " + alphabet_.name);
    data_[slot(c)] = s;
}

void Pattern::unset(const Cell& c)
{
    if (in_frame(c)) data_[slot(c)] = -1;
}

std::vector<Cell> Pattern::support() const
{
    std::vector<Cell> out;
    for (int y = y0_; y < y0_ + height_; ++y)
        for (int x = x0_; x < x0_ + width_; ++x)
            if (data_[slot({x, y})] >= 0) out.push_back({x, y});
    return out;
}

std::size_t Pattern::assigned_count() const
{
    std::size_t n = 0;
    for (auto v : data_) n += v >= 0;
    return n;
}

bool Pattern::is_total() const
{
    return !frame_empty() && assigned_count() == data_.size();
}

Pattern Pattern::restricted_to(const Shape& cells) const
{
    Pattern out(alphabet_);
    out.x0_ = x0_;
    out.y0_ = y0_;
    out.width_ = width_;
    out.height_ = height_;
    out.data_.assign(data_.size(), -1);
    for (const auto& c : cells)
        if (auto v = get(c)) out.data_[slot(c)] = *v;
    return out;
}

Pattern Pattern::translated(const Cell& by) const
{
    Pattern out = *this;
    out.x0_ += by.x;
    out.y0_ += by.y;
    return out;
}

Pattern Pattern::reframed(const Window& frame) const
{
    Pattern out(alphabet_, frame);
    for (const auto& c : support())
        if (frame.contains(c)) out.set(c, at(c));
    return out;
}

bool operator==(const Pattern& a, const Pattern& b)
{
    if (a.alphabet_ != b.alphabet_) return false;
    auto sa = a.support();
    if (sa != b.support()) return false;
    for (const auto& c : sa)
        if (a.at(c) != b.at(c)) return false;
    return true;
}

bool operator<(const Pattern& a, const Pattern& b)
{
    auto sa = a.support();
    auto sb = b.support();
    std::size_t n = std::min(sa.size(), sb.size());
    for (std::size_t i = 0; i < n; ++i) {
        if (sa[i] != sb[i]) return sa[i] < sb[i];
        auto va = a.at(sa[i]), vb = b.at(sb[i]);
        if (va != vb) return va < vb;
    }
    return sa.size() < sb.size();
}

void write_pat(std::ostream& os, const Pattern& p)
{
    const Window f = p.frame();
    const bool tokens = p.alphabet().name != "B";
    os << "pat " << p.alphabet().name << ' ' << f.width << ' ' << f.height << ' ' << f.x0 << ' '
       << f.y0 << '\n';
    for (int y = f.y1(); y >= f.y0; --y) {
        for (int x = f.x0; x <= f.x1(); ++x) {
            if (tokens && x > f.x0) os << ' ';
            auto v = p.get({x, y});
            if (v) {
                os << p.alphabet().symbols[*v];
            } else {
                os << (tokens ? std::string(p.alphabet().symbols.front().size(), '?') : "?");
            }
        }
        os << '\n';
    }
}

std::string to_pat(const Pattern& p)
{
    std::ostringstream os;
    write_pat(os, p);
    return os.str();
}

Pattern read_pat(std::istream& is)
{
    std::string line;
    bool found = false;
    while (std::getline(is, line)) {
        if (line.find_first_not_of(" \t\r") != std::string::npos) {
            found = true;
            break;
        }
    }
    if (!found) throw FormatError("expected a pat header, found end of input");
    std::istringstream hs(line);
    std::string tag, name;
    int w = 0, h = 0, x0 = 0, y0 = 0;
    if (!(hs >> tag >> name >> w >> h >> x0 >> y0) || tag != "pat")
        throw FormatError("malformed pat header: '" + line + "'");
    std::string rest;
    if (hs >> rest) throw FormatError("trailing data in pat header");
    if (w < 1 || h < 1) throw FormatError("pat dimensions must be positive");
    const Alphabet& alpha = alphabet_by_name(name);
    Pattern p(alpha, Window(x0, y0, w, h));
    const bool tokens = alpha.name != "B";
    for (int r = 0; r < h; ++r) {
        if (!std::getline(is, line)) throw FormatError("pat block ended early");
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const int y = y0 + h - 1 - r;
        std::vector<std::string> cells;
        if (tokens) {
            std::istringstream ls(line);
            std::string t;
            while (ls >> t) cells.push_back(t);
        } else {
            for (char c : line) {
                if (c == ' ' || c == '\t') continue;
                cells.emplace_back(1, c);
            }
        }
        if (static_cast<int>(cells.size()) != w)
            throw FormatError("pat row " + std::to_string(r) + " has " + std::to_string(cells.size()) +
                              " cells, expected " + std::to_string(w));
        for (int i = 0; i < w; ++i) {
            const auto& t = cells[static_cast<std::size_t>(i)];
            if (t.find_first_not_of('?') == std::string::npos) {
                if (t.size() != alpha.symbols.front().size()) throw FormatError("bad unassigned token");
                continue;
            }
            auto s = alpha.index_of(t);
            if (!s) throw FormatError("symbol '" + t + "' not in alphabet " + alpha.name);
            p.set({x0 + i, y}, *s);
        }
    }
    return p;
}

Pattern parse_pat(const std::string& text)
{
    std::istringstream is(text);
    return read_pat(is);
}

Pattern load_pat(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open pattern file " + path);
    return read_pat(in);
}

}  // namespace dirclose
