#include "dirclose/errors.hpp"
#include "dirclose/render.hpp"

#include <doctest.h>

#include <random>

using namespace dirclose;

namespace {

Pattern random_total(std::mt19937& rng, const Alphabet& a, const Window& w)
{
    Pattern p(a, w);
    for (const auto& c : w.cells()) p.set(c, static_cast<Symbol>(rng() % a.size()));
    return p;
}

}  // namespace

TEST_SUITE("render") {

TEST_CASE("ascii examples")
{
    CHECK_THROWS_AS(render(Pattern(alphabet_b(), Window(0, 0, 3, 3)), {}), UsageError);
    Pattern zero(alphabet_b(), Window(0, 0, 3, 3));
    for (const auto& c : zero.frame().cells()) zero.set(c, 0);
    CHECK(render(zero, {}) == "...\n...\n...\n");

    Pattern one(alphabet_p(), Window(0, 0, 1, 1));
    one.set({0, 0}, *alphabet_p().index_of("01"));
    RenderStyle split;
    split.pair_split = true;
    CHECK(render(one, split) == ".#\n");
    one.set({0, 0}, *alphabet_p().index_of("11"));
    CHECK(render(one, split) == "##\n");
    CHECK(render(one, {}) == "11\n");
}

TEST_CASE("ascii round trip")
{
    std::mt19937 rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const Window w(int(rng() % 5) - 2, int(rng() % 5) - 2, 1 + rng() % 6, 1 + rng() % 6);
        Pattern b = random_total(rng, alphabet_b(), w);
        CHECK(parse_ascii(render(b, {}), alphabet_b(), false, w.x0, w.y0) == b);
        Pattern p = random_total(rng, alphabet_p(), w);
        RenderStyle split;
        split.pair_split = true;
        CHECK(parse_ascii(render(p, split), alphabet_p(), true, w.x0, w.y0) == p);
        CHECK(parse_ascii(render(p, {}), alphabet_p(), false, w.x0, w.y0) == p);
    }
}

TEST_CASE("split needs pairs")
{
    Pattern b(alphabet_b(), Window(0, 0, 1, 1));
    b.set({0, 0}, 1);
    RenderStyle split;
    split.pair_split = true;
    CHECK_THROWS_AS(render(b, split), UsageError);
    CHECK_THROWS_AS(parse_render_format("png"), UsageError);
}

TEST_CASE("pbm layout")
{
    Pattern p(alphabet_p(), Window(0, 0, 5, 2));
    for (const auto& c : p.frame().cells()) p.set(c, pair_symbol(c.y == 1, c.x == 4));
    RenderStyle st;
    st.format = RenderFormat::Pbm;
    const std::string out = render(p, st);
    const std::string header = "P4\n10 2\n";
    REQUIRE(out.size() == header.size() + 4);
    CHECK(out.substr(0, header.size()) == header);
    // Top row y=1: left bits set for all cells, right bit on the last cell.
    CHECK(static_cast<unsigned char>(out[header.size()]) == 0b10101010);
    CHECK(static_cast<unsigned char>(out[header.size() + 1]) == 0b11000000);
    CHECK(static_cast<unsigned char>(out[header.size() + 2]) == 0b00000000);
    CHECK(static_cast<unsigned char>(out[header.size() + 3]) == 0b01000000);
}

TEST_CASE("svg has one rectangle per half cell")
{
    Pattern p(alphabet_p(), Window(0, 0, 3, 2));
    for (const auto& c : p.frame().cells()) p.set(c, 1);
    RenderStyle st;
    st.format = RenderFormat::Svg;
    st.guide_x = {1};
    const std::string out = render(p, st);
    std::size_t rects = 0;
    for (std::size_t i = out.find("<rect"); i != std::string::npos; i = out.find("<rect", i + 1)) ++rects;
    CHECK(rects == 12);
    CHECK(out.find("stroke-width=\"3\"") != std::string::npos);
}

}
