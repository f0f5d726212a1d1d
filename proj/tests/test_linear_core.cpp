#include "dirclose/errors.hpp"
#include "dirclose/linear_core.hpp"
#include "dirclose/subshift.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace dirclose;

namespace {

using Ext = BitRow::Extent;

// One step of c(i,j+1) = c(i,j) + c(i+1,j) on a zero-padded finite row.
std::vector<int> step_naive(const std::vector<int>& ones)
{
    std::set<int> out;
    for (int x : ones)
        for (int y : {x, x - 1}) {
            if (!out.erase(y)) out.insert(y);
        }
    return {out.begin(), out.end()};
}

BitRow random_row(std::mt19937& rng, int lo, int len, Ext e)
{
    std::vector<bool> bits(len);
    for (auto&& b : bits) b = rng() & 1;
    return BitRow(lo, bits, e);
}

Pattern grid_to_pattern(const BinaryGrid& g)
{
    Pattern p(alphabet_b(), g.window);
    for (std::size_t i = 0; i < g.bits.size(); ++i) p.set(g.window.cell_at(i), g.bits[i]);
    return p;
}

}  // namespace

TEST_SUITE("linear_core") {

TEST_CASE("evolve up examples")
{
    CHECK(evolve_up(BitRow::zeros(0, 5, Ext::FiniteSupport)).ones().empty());
    CHECK(evolve_up(BitRow::ones_at({0})).ones() == std::vector<int>{-1, 0});
    CHECK(evolve_up(evolve_up(BitRow::ones_at({0}))).ones() == std::vector<int>{-2, 0});
    CHECK(evolve_up_k(BitRow::ones_at({0}), 4).ones() == std::vector<int>{-4, 0});
    CHECK(evolve_up_k(BitRow::ones_at({0}), 3).ones() == std::vector<int>{-3, -2, -1, 0});
    const BitRow r = BitRow::ones_at({1, 4, 5});
    CHECK(evolve_up_k(r, 0) == r);
}

TEST_CASE("lucas evolution matches iteration")
{
    std::mt19937 rng(1);
    for (int trial = 0; trial < 100; ++trial) {
        BitRow r = random_row(rng, int(rng() % 10) - 5, 1 + rng() % 12, Ext::FiniteSupport);
        std::vector<int> ones = r.ones();
        for (unsigned k = 0; k <= 16; ++k) {
            CHECK(evolve_up_k(r, k).ones() == ones);
            ones = step_naive(ones);
        }
    }
}

TEST_CASE("evolution composes")
{
    std::mt19937 rng(2);
    for (int trial = 0; trial < 100; ++trial) {
        BitRow r = random_row(rng, 0, 20, trial % 2 ? Ext::FiniteSupport : Ext::RangeRestricted);
        unsigned a = rng() % 6, b = rng() % 6;
        CHECK(evolve_up_k(r, a + b) == evolve_up_k(evolve_up_k(r, a), b));
    }
}

TEST_CASE("range restricted rows shrink and refuse outside reads")
{
    BitRow r = BitRow::zeros(0, 9, Ext::RangeRestricted);
    BitRow up = evolve_up_k(r, 3);
    CHECK(up.lo() == 0);
    CHECK(up.hi() == 6);
    CHECK_THROWS_AS(up.at(7), RangeError);
    CHECK_FALSE(BitRow::ones_at({0}).at(100));
}

TEST_CASE("extend down examples and round trip")
{
    BitRow zero = BitRow::zeros(-3, 3, Ext::RangeRestricted);
    CHECK(extend_down(zero, false, 0).ones().empty());
    BitRow all = extend_down(zero, true, 0);
    CHECK(all.ones().size() == all.length());

    BitRow single = BitRow::ones_at({0}).restricted(-3, 3);
    BitRow below = extend_down(single, false, 1);
    for (int x = below.lo(); x <= below.hi(); ++x) CHECK(below.at(x) == (x <= 0));
    CHECK(evolve_up(below) == single);

    std::mt19937 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        BitRow r = random_row(rng, int(rng() % 6) - 3, 1 + rng() % 10, Ext::RangeRestricted);
        int anchor = r.lo() + int(rng() % (r.length() + 1));
        BitRow d = extend_down(r, rng() & 1, anchor);
        CHECK(evolve_up(d) == r);
    }
    CHECK_THROWS_AS(extend_down(zero, false, 10), RangeError);
}

TEST_CASE("column prescriptions")
{
    CHECK(solve_column_prescription(3, {false, false, false}).ones().empty());
    CHECK(solve_column_prescription(0, {true, false}).ones() == std::vector<int>{0, 1});
    CHECK(solve_column_prescription(0, {true, true, true, true}).ones() == std::vector<int>{0});

    std::mt19937 rng(4);
    for (int trial = 0; trial < 300; ++trial) {
        int cx = int(rng() % 9) - 4;
        std::vector<bool> desired(1 + rng() % 12);
        for (auto&& b : desired) b = rng() & 1;
        BitRow r = solve_column_prescription(cx, desired);
        for (int x : r.ones()) CHECK((x >= cx && x < cx + int(desired.size())));
        for (std::size_t k = 0; k < desired.size(); ++k)
            CHECK(evolve_up_k(r, static_cast<unsigned>(k)).at(cx) == desired[k]);
    }
}

TEST_CASE("kernel steps")
{
    const auto X = SubshiftSpec::ledrappier();
    KernelStep s = KernelStep::confined({0, 0}, 6);

    auto right = realize_kernel_step(s, Window(1, -3, 4, 6));
    for (auto b : right.bits) CHECK(b == 0);

    auto centre = realize_kernel_step(KernelStep{{0, 0}, {false}}, Window(-1, -1, 3, 3));
    CHECK(is_locally_valid(X, grid_to_pattern(centre)).valid);

    auto g = realize_kernel_step(s, Window(-6, -6, 12, 12));
    for (int y = 0; y <= 5; ++y) CHECK(g.at({0, y}));

    std::mt19937 rng(8);
    for (int trial = 0; trial < 40; ++trial) {
        Cell seed{int(rng() % 7) - 3, int(rng() % 7) - 3};
        Window w(int(rng() % 7) - 6, int(rng() % 7) - 6, 2 + rng() % 8, 2 + rng() % 8);
        int depth = std::max(0, seed.y - w.y0);
        auto d = realize_kernel_step(KernelStep::confined(seed, depth), w);
        CHECK(is_locally_valid(X, grid_to_pattern(d)).valid);
        for (std::size_t i = 0; i < d.bits.size(); ++i)
            if (w.cell_at(i).x > seed.x) CHECK(d.bits[i] == 0);

        KernelStep free{seed, std::vector<bool>(static_cast<std::size_t>(depth))};
        for (std::size_t i = 0; i < free.lower_anchor_bits.size(); ++i) free.lower_anchor_bits[i] = rng() & 1;
        CHECK(is_locally_valid(X, grid_to_pattern(realize_kernel_step(free, w))).valid);
    }
    CHECK_THROWS_AS(realize_kernel_step(KernelStep{{0, 0}, {}}, Window(-2, -2, 4, 4)), UsageError);
}

}
