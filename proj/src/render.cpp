#include "dirclose/render.hpp"

#include "dirclose/errors.hpp"

#include <sstream>

namespace dirclose {

RenderFormat parse_render_format(std::string_view text)
{
    if (text == "ascii") return RenderFormat::Ascii;
    if (text == "pbm") return RenderFormat::Pbm;
    if (text == "svg") return RenderFormat::Svg;
    throw UsageError("unknown format '" + std::string(text) + "' (ascii, pbm, svg)");
}

namespace {

bool is_pair(const Alphabet& a) { return a == alphabet_p(); }

// Pixel bits of one row: one per B cell, two per P cell.
std::vector<bool> pixel_row(const Pattern& p, int y)
{
    const Window f = p.frame();
    std::vector<bool> out;
    for (int x = f.x0; x <= f.x1(); ++x) {
        const Symbol s = p.at({x, y});
        if (is_pair(p.alphabet())) {
            out.push_back(pair_left(s));
            out.push_back(pair_right(s));
        } else {
            out.push_back(s != 0);
        }
    }
    return out;
}

std::string ascii(const Pattern& p, bool split)
{
    const Window f = p.frame();
    std::ostringstream os;
    for (int y = f.y1(); y >= f.y0; --y) {
        if (split || !is_pair(p.alphabet())) {
            for (bool b : pixel_row(p, y)) os << (b ? '#' : '.');
        } else {
            for (int x = f.x0; x <= f.x1(); ++x) {
                if (x > f.x0) os << ' ';
                os << p.alphabet().symbols[p.at({x, y})];
            }
        }
        os << '\n';
    }
    return os.str();
}

std::string pbm(const Pattern& p)
{
    const Window f = p.frame();
    const int per = is_pair(p.alphabet()) ? 2 : 1;
    const int w = f.width * per;
    std::string out = "P4\n" + std::to_string(w) + " " + std::to_string(f.height) + "\n";
    for (int y = f.y1(); y >= f.y0; --y) {
        const auto bits = pixel_row(p, y);
        for (int i = 0; i < w; i += 8) {
            unsigned char byte = 0;
            for (int k = 0; k < 8 && i + k < w; ++k)
                if (bits[static_cast<std::size_t>(i + k)]) byte |= static_cast<unsigned char>(0x80u >> k);
            out.push_back(static_cast<char>(byte));
        }
    }
    return out;
}

std::string svg(const Pattern& p, const RenderStyle& st)
{
    constexpr int cell = 20;
    const Window f = p.frame();
    const int per = is_pair(p.alphabet()) ? 2 : 1;
    const int half = cell / per;
    const int W = f.width * cell, H = f.height * cell;
    std::ostringstream os;
    os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << W + 2 << "\" height=\"" << H + 2
       << "\" viewBox=\"-1 -1 " << W + 2 << ' ' << H + 2 << "\">\n";
    for (int y = f.y1(); y >= f.y0; --y) {
        const auto bits = pixel_row(p, y);
        const int py = (f.y1() - y) * cell;
        for (std::size_t i = 0; i < bits.size(); ++i)
            os << "<rect x=\"" << static_cast<int>(i) * half << "\" y=\"" << py << "\" width=\"" << half
               << "\" height=\"" << cell << "\" fill=\"" << (bits[i] ? "#999999" : "#ffffff") << "\"/>\n";
    }
    for (int i = 0; i <= f.width; ++i)
        os << "<line x1=\"" << i * cell << "\" y1=\"0\" x2=\"" << i * cell << "\" y2=\"" << H
           << "\" stroke=\"#000\" stroke-width=\"0.5\"/>\n";
    for (int j = 0; j <= f.height; ++j)
        os << "<line x1=\"0\" y1=\"" << j * cell << "\" x2=\"" << W << "\" y2=\"" << j * cell
           << "\" stroke=\"#000\" stroke-width=\"0.5\"/>\n";
    for (int gx : st.guide_x) {
        if (gx < f.x0 || gx > f.x1() + 1) continue;
        const int px = (gx - f.x0) * cell;
        os << "<line x1=\"" << px << "\" y1=\"0\" x2=\"" << px << "\" y2=\"" << H
           << "\" stroke=\"#000\" stroke-width=\"3\"/>\n";
    }
    for (int gy : st.guide_y) {
        if (gy < f.y0 || gy > f.y1() + 1) continue;
        const int py = (f.y1() + 1 - gy) * cell;
        os << "<line x1=\"0\" y1=\"" << py << "\" x2=\"" << W << "\" y2=\"" << py
           << "\" stroke=\"#000\" stroke-width=\"3\"/>\n";
    }
    os << "</svg>\n";
    return os.str();
}

}  // namespace

std::string render(const Pattern& pattern, const RenderStyle& style)
{
    if (style.pair_split && !is_pair(pattern.alphabet()))
        throw UsageError("pair split needs alphabet P, pattern is over " + pattern.alphabet().name);
    if (!pattern.is_total()) throw UsageError("rendering needs a total pattern");
    switch (style.format) {
    case RenderFormat::Ascii: return ascii(pattern, style.pair_split);
    case RenderFormat::Pbm: return pbm(pattern);
    case RenderFormat::Svg: break;
    }
    return svg(pattern, style);
}

Pattern parse_ascii(const std::string& text, const Alphabet& alphabet, bool pair_split, int x0, int y0)
{
    std::vector<std::vector<Symbol>> rows;
    std::istringstream is(text);
    std::string line;
    const bool pair = is_pair(alphabet);
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        std::vector<Symbol> row;
        if (pair && !pair_split) {
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) {
                auto s = alphabet.index_of(tok);
                if (!s) throw FormatError("unknown symbol '" + tok + "'");
                row.push_back(*s);
            }
        } else {
            const std::size_t per = pair ? 2 : 1;
            if (line.size() % per) throw FormatError("odd row length in split rendering");
            auto bit = [](char c) {
                if (c == '#') return true;
                if (c == '.') return false;
                throw FormatError(std::string("unexpected character '") + c + "'");
            };
            for (std::size_t i = 0; i < line.size(); i += per)
                row.push_back(pair ? pair_symbol(bit(line[i]), bit(line[i + 1])) : Symbol(bit(line[i])));
        }
        if (!rows.empty() && row.size() != rows.front().size()) throw FormatError("ragged rendering");
        rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.front().empty()) throw FormatError("empty rendering");
    const int h = static_cast<int>(rows.size()), w = static_cast<int>(rows.front().size());
    Pattern p(alphabet, Window(x0, y0, w, h));
    for (int r = 0; r < h; ++r)
        for (int x = 0; x < w; ++x) p.set({x0 + x, y0 + h - 1 - r}, rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(x)]);
    return p;
}

}  // namespace dirclose
