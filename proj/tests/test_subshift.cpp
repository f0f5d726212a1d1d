#include "dirclose/errors.hpp"
#include "dirclose/subshift.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <set>
#include <sstream>
#include <algorithm>

using namespace dirclose;

namespace {

Pattern cells_b(const Window& w, std::initializer_list<std::pair<Cell, int>> values)
{
    Pattern p(alphabet_b(), w);
    for (auto [c, v] : values) p.set(c, static_cast<Symbol>(v));
    return p;
}

std::vector<int> flat(const Pattern& p)
{
    std::vector<int> out;
    for (const auto& c : p.frame().cells()) out.push_back(p.at(c));
    return out;
}

Pattern random_valid_rectangle(std::mt19937& rng, const Window& w)
{
    // Bottom row plus right column determine the rectangle.
    Pattern p(alphabet_b(), w);
    for (int x = w.x0; x <= w.x1(); ++x) p.set({x, w.y0}, rng() & 1);
    for (int y = w.y0 + 1; y <= w.y1(); ++y) {
        p.set({w.x1(), y}, rng() & 1);
        for (int x = w.x1() - 1; x >= w.x0; --x) p.set({x, y}, p.at({x, y - 1}) ^ p.at({x + 1, y - 1}));
    }
    return p;
}

// Sorted distinct flat vectors from the library enumeration.
std::set<std::vector<int>> enumerated(const SubshiftSpec& s, const Window& w)
{
    std::set<std::vector<int>> out;
    for (const auto& p : all_valid(s, w)) out.insert(flat(p));
    return out;
}

const SubshiftSpec no_adjacent_ones = [] {
    Pattern f(alphabet_b(), Window(0, 0, 2, 1));
    f.set({0, 0}, 1);
    f.set({1, 0}, 1);
    return SubshiftSpec::sft(alphabet_b(), {f});
}();

}  // namespace

TEST_SUITE("subshift") {

TEST_CASE("local validity examples")
{
    const auto X = SubshiftSpec::ledrappier();
    const Window w(0, 0, 2, 2);
    CHECK(is_locally_valid(X, cells_b(w, {{{0, 0}, 1}, {{1, 0}, 1}, {{0, 1}, 0}})).valid);
    auto bad = is_locally_valid(X, cells_b(w, {{{0, 0}, 1}, {{1, 0}, 0}, {{0, 1}, 0}}));
    CHECK_FALSE(bad.valid);
    REQUIRE(bad.violations.size() == 1);
    CHECK(bad.violations[0].anchor == Cell{0, 0});

    Pattern y(alphabet_p(), Window(0, 0, 2, 1));
    y.set({0, 0}, 0);
    y.set({1, 0}, pair_symbol(true, true));
    CHECK_FALSE(is_locally_valid(SubshiftSpec::y(), y).valid);
    CHECK_THROWS_AS(is_locally_valid(X, y), UsageError);
}

TEST_CASE("ledrappier enumeration against raw grids")
{
    const auto X = SubshiftSpec::ledrappier();
    for (int w = 1; w <= 4; ++w)
        for (int h = 1; h <= 4; ++h) {
            if (w * h > 12) continue;
            std::set<std::vector<int>> raw;
            for (const auto& g : oracle::raw_ledrappier(w, h)) raw.insert(g);
            CHECK(enumerated(X, Window(0, 0, w, h)) == raw);
        }
    CHECK(all_valid(X, Window(0, 0, 2, 2)).size() == 8);
    CHECK(count_valid(X, Window(0, 0, 1, 1)) == 2);
    CHECK(count_valid(X, Window(0, 0, 3, 3)) == 32);
}

TEST_CASE("count law")
{
    const auto X = SubshiftSpec::ledrappier();
    for (int w = 1; w <= 6; ++w)
        for (int h = 1; h <= 6; ++h) CHECK(count_valid(X, Window(2, -3, w, h)) == (std::uint64_t{1} << (w + h - 1)));
}

TEST_CASE("y enumeration against images of raw grids")
{
    const auto Y = SubshiftSpec::y();
    CHECK(count_valid(Y, Window(0, 0, 1, 1)) == 3);
    for (int w = 1; w <= 3; ++w)
        for (int h = 1; h <= 3; ++h) {
            auto raw = oracle::raw_y(w, h);
            std::set<std::vector<int>> want;
            for (const auto& v : raw) want.insert(std::vector<int>(v.begin(), v.end()));
            CHECK(enumerated(Y, Window(0, 0, w, h)) == want);
            CHECK(count_valid(Y, Window(0, 0, w, h)) == raw.size());
        }
}

TEST_CASE("enumeration results are valid, distinct, and counted")
{
    for (const auto& spec : {SubshiftSpec::ledrappier(), SubshiftSpec::y(), no_adjacent_ones}) {
        const Window w(0, 0, 3, 2);
        auto all = all_valid(spec, w);
        std::set<std::vector<int>> distinct;
        for (const auto& p : all) {
            CHECK(is_locally_valid(spec, p).valid);
            distinct.insert(flat(p));
        }
        CHECK(distinct.size() == all.size());
        CHECK(count_valid(spec, w) == all.size());
        CHECK(std::is_sorted(all.begin(), all.end()));
    }
}

TEST_CASE("partial patterns")
{
    const auto X = SubshiftSpec::ledrappier();
    const Window w(0, 0, 3, 3);
    Pattern partial(alphabet_b(), w);
    std::uint64_t last = count_valid(X, w, partial);
    std::mt19937 rng(21);
    for (const auto& c : w.cells()) {
        partial.set(c, rng() & 1);
        std::uint64_t n = count_valid(X, w, partial);
        CHECK(n <= last);
        last = n;
    }
    Pattern violating = cells_b(w, {{{0, 0}, 1}, {{1, 0}, 0}, {{0, 1}, 0}});
    CHECK(all_valid(X, w, violating).empty());
}

TEST_CASE("sft from a spec file")
{
    CHECK(count_valid(no_adjacent_ones, Window(0, 0, 4, 1)) == 8);
    std::ostringstream os;
    write_spec(os, no_adjacent_ones);
    std::istringstream is(os.str());
    auto back = read_spec(is, "");
    CHECK(count_valid(back, Window(0, 0, 3, 2)) == 25);
    CHECK(extendability(back) == ExtendabilityCertificate::None);

    std::istringstream bad("kind sft B\nforbid\npat B 1 1 0 0\n2\n");
    CHECK_THROWS_AS(read_spec(bad, ""), FormatError);
    std::istringstream unknown("kind mystery\n");
    CHECK_THROWS_AS(read_spec(unknown, ""), FormatError);
}

TEST_CASE("image spec files resolve relative paths")
{
    auto dir = std::filesystem::temp_directory_path() / "dirclose_spec_test";
    std::filesystem::create_directories(dir);
    std::ofstream(dir / "base.sub") << "kind ledrappier\n";
    std::ofstream(dir / "img.sub") << "kind image\nbase base.sub\ncode @f\n";
    auto s = load_spec((dir / "img.sub").string());
    CHECK(s.is_image());
    CHECK(count_valid(s, Window(0, 0, 2, 2)) == count_valid(SubshiftSpec::y(), Window(0, 0, 2, 2)));
    std::ofstream(dir / "broken.sub") << "kind image\nbase base.sub\n";
    CHECK_THROWS_AS(load_spec((dir / "broken.sub").string()), FormatError);
    CHECK_THROWS_AS(load_spec((dir / "missing.sub").string()), FormatError);
}

TEST_CASE("extendability certificates")
{
    CHECK(extendability(SubshiftSpec::ledrappier()) == ExtendabilityCertificate::RectangleFreeRow);
    CHECK(extendability(SubshiftSpec::y()) == ExtendabilityCertificate::PreimageRectangle);
    CHECK(extendability(no_adjacent_ones) == ExtendabilityCertificate::None);
}

TEST_CASE("rectangles extend with the original intact")
{
    const auto X = SubshiftSpec::ledrappier();
    std::mt19937 rng(22);
    for (int trial = 0; trial < 40; ++trial) {
        const int w = 1 + rng() % 5, h = 1 + rng() % 5;
        Pattern r = random_valid_rectangle(rng, Window(0, 0, w, h));
        REQUIRE(is_locally_valid(X, r).valid);
        const Window big(-w, -h, 3 * w, 3 * h);
        Pattern e = extend_ledrappier_rectangle(r, big);
        CHECK(e.is_total());
        CHECK(e.frame() == big);
        CHECK(is_locally_valid(X, e).valid);
        for (const auto& c : r.frame().cells()) CHECK(e.at(c) == r.at(c));
    }
    for (int trial = 0; trial < 20; ++trial) {
        Pattern r = random_valid_rectangle(rng, Window(0, 0, 4, 4));
        CHECK(is_locally_valid(X, extend_ledrappier_rectangle(r, Window(-4, -4, 12, 12))).valid);
    }
}

TEST_CASE("y rectangles extend through preimages")
{
    const auto Y = SubshiftSpec::y();
    auto all = all_valid(Y, Window(0, 0, 3, 3));
    std::mt19937 rng(23);
    for (int trial = 0; trial < 15; ++trial) {
        const Pattern& y = all[rng() % all.size()];
        Pattern pre = find_preimage(Y, y);
        REQUIRE_FALSE(pre.frame_empty());
        CHECK(apply(builtin_f(), pre) == y);
        Pattern big = extend_ledrappier_rectangle(pre, Window(-4, -4, 12, 12));
        Pattern img = apply(builtin_f(), big);
        CHECK(is_locally_valid(Y, img).valid);
        for (const auto& c : y.frame().cells()) CHECK(img.at(c) == y.at(c));
    }
    Pattern bad(alphabet_p(), Window(0, 0, 1, 1));
    bad.set({0, 0}, pair_symbol(true, true));
    CHECK(find_preimage(Y, bad).frame_empty());
}

TEST_CASE("y rows have one or two preimage rows")
{
    const auto X = SubshiftSpec::ledrappier();
    for (int n = 1; n <= 6; ++n) {
        for (const auto& y : all_valid(SubshiftSpec::y(), Window(0, 0, n, 1))) {
            int pre = 0;
            for (const auto& x : all_valid(X, Window(0, 0, n + 1, 1)))
                if (apply(builtin_f(), x) == y) ++pre;
            CHECK(pre >= 1);
            CHECK(pre <= 2);
        }
    }
}

TEST_CASE("image depth and alphabet checks")
{
    CHECK_THROWS_AS(SubshiftSpec::image(SubshiftSpec::y(), builtin_f()), UsageError);
    auto s = SubshiftSpec::ledrappier();
    for (int i = 0; i < kMaxImageDepth; ++i) s = SubshiftSpec::image(s, identity_code(alphabet_b()));
    CHECK(s.depth() == kMaxImageDepth);
    CHECK_THROWS_AS(SubshiftSpec::image(s, identity_code(alphabet_b())), UsageError);
}

}
