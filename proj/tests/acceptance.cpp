// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include "dirclose/analysis.hpp"
#include "dirclose/codes.hpp"
#include "dirclose/report.hpp"
#include "dirclose/subshift.hpp"
#include "oracles.hpp"

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <sys/wait.h>

using namespace dirclose;

namespace {

// Wall-clock ceilings in seconds.
constexpr double kCriterionSeconds = 60.0;
constexpr double kWitnessSeconds = 30.0;

const SubshiftSpec X = SubshiftSpec::ledrappier();
const SubshiftSpec Y = SubshiftSpec::y();
const Shape L({{0, 0}, {1, 0}, {0, 1}});
const Direction leftward(-1, 0);

struct Outcome {
    bool pass = true;
    std::string detail;
};

Outcome fail(const std::string& why) { return {false, why}; }

Outcome count_law()
{
    int brute = 0;
    for (int w = 1; w <= 6; ++w)
        for (int h = 1; h <= 6; ++h) {
            const std::uint64_t want = std::uint64_t{1} << (w + h - 1);
            const std::uint64_t got = count_valid(X, Window(0, 0, w, h));
            if (got != want) return fail(std::to_string(w) + "x" + std::to_string(h) + " gave " + std::to_string(got));
            if (w * h <= 12) {
                if (oracle::raw_ledrappier(w, h).size() != want) return fail("raw enumeration disagrees");
                ++brute;
            }
        }
    return {true, "36 windows, " + std::to_string(brute) + " brute-forced"};
}

Outcome round_trip()
{
    std::mt19937 rng(2024);
    const BlockCode g = builtin_g();
    for (int t = 0; t < 1000; ++t) {
        const int n = 2 + static_cast<int>(rng() % 15);
        Pattern w(alphabet_b(), Window(0, 0, n, 1));
        for (int i = 0; i < n; ++i) w.set({i, 0}, rng() & 1);
        const Pattern img = apply(g, w);
        for (int i = 0; i + 1 < n; ++i)
            if (pair_right(img.at({i, 0})) != (w.at({i + 1, 0}) == 1)) return fail("word " + to_pat(w));
    }
    return {true, "1000 words"};
}

Outcome no_eleven()
{
    const Symbol eleven = pair_symbol(true, true);
    std::size_t seen = 0, hits = 0;
    for (int w = 1; w <= 4; ++w)
        for (int h = 1; h <= 4; ++h)
            for (const auto& p : all_valid(Y, Window(0, 0, w, h))) {
                ++seen;
                for (const auto& c : p.support()) hits += p.at(c) == eleven;
            }
    std::mt19937 rng(7);
    for (int t = 0; t < 1000; ++t) {
        const Window win(0, 0, 2 + static_cast<int>(rng() % 8), 1 + static_cast<int>(rng() % 8));
        Pattern p(alphabet_b(), win);
        for (const auto& c : win.cells()) p.set(c, rng() & 1);
        const Pattern img = apply(builtin_f(), p);
        for (const auto& c : img.support()) hits += img.at(c) == eleven;
    }
    if (hits) return fail(std::to_string(hits) + " occurrences");
    return {true, std::to_string(seen) + " window patterns and 1000 images, 0 occurrences"};
}

Outcome l_shape()
{
    for (int margin : {0, 2}) {
        const auto rep = check_extremally_permutive(X, L, margin);
        if (!rep.permutive || rep.points.size() != 3) return fail("margin " + std::to_string(margin));
    }
    const auto ext = extremal_points(L);
    for (std::size_t i = 0; i < ext.size(); ++i)
        for (std::size_t j = i + 1; j < ext.size(); ++j)
            if (!corner_permutation(X, L, ext[i], ext[j], 0).permutive)
                return fail("corner pair " + to_string(ext[i]) + " " + to_string(ext[j]));
    return {true, "3 points at margins 0 and 2, 3 corner pairs"};
}

Outcome bi_closing()
{
    int checks = 0;
    for (int s : {6, 10}) {
        const Window w(-s / 2, -s / 2, s, s);
        for (Side side : {Side::Right, Side::Left})
            for (int k = -2; k <= 2; ++k) {
                const Cell t{0, k};
                Verdict v;
                if (classify_cell({leftward, side}, t) == CellClass::Target) {
                    v = check_closing(X, leftward, side, w, t);
                } else {
                    // Known boundary cells are coded by themselves.
                    v = check_coding({X, w, window_split({leftward, side}, w).known, Shape({t})});
                }
                ++checks;
                if (!v.codes())
                    return fail(std::string(to_string(side)) + " " + to_string(t) + " on " + to_string(w));
            }
    }
    return {true, std::to_string(checks) + " checks on 6x6 and 10x10"};
}

Outcome witnesses()
{
    const auto start = std::chrono::steady_clock::now();
    const Window w(-6, -7, 12, 14);
    for (Side side : {Side::Left, Side::Right}) {
        const std::string s(to_string(side));
        const auto r = construct_witness(side, {0, 0}, w);
        if (!r.verdict.refuted()) return fail(s + ": construction " + r.verdict.reason);
        if (!is_locally_valid(Y, r.first).valid || !is_locally_valid(Y, r.second).valid) return fail(s + ": invalid");
        const auto split = window_split({leftward, side}, w);
        for (const auto& c : split.known)
            if (r.first.at(c) != r.second.at(c)) return fail(s + ": differs at known " + to_string(c));
        if (r.first.at({0, 0}) == r.second.at({0, 0})) return fail(s + ": agrees at target");
        if (!certify_witness({r.first, r.second}, side, leftward, Y, &r.recipe).certified)
            return fail(s + ": not certified");
        if (!check_closing(Y, leftward, side, w, {0, 0}).refuted()) return fail(s + ": search did not refute");
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > kWitnessSeconds) return fail("took " + std::to_string(secs) + " s");
    return {true, "both sides certified, search agrees"};
}

Outcome polygonality()
{
    const auto y = refute_polygonal(Y, 4, Window(0, 0, 3, 3), 1, {}, 4);
    if (!y.all_fail()) return fail("y has permutive shape " + to_string(y.permutive.front()));
    const auto x = refute_polygonal(X, 4, Window(0, 0, 3, 3), 1, {}, 4);
    if (std::find(x.permutive.begin(), x.permutive.end(), L) == x.permutive.end()) return fail("L-shape fails on x");
    return {true, "y: " + std::to_string(y.failures.size()) + "/" + std::to_string(y.shapes_checked) +
                      " fail; x: L-shape among " + std::to_string(x.permutive.size()) + " permutive"};
}

Outcome directions()
{
    const std::vector<Direction> dirs{{1, 0}, {-1, 0}, {0, 1}, {0, -1}, {1, 1}, {-1, 1}, {1, -1}, {-1, -1}};
    const auto rep = crossvalidate_directions(X, L, dirs, Window(-3, -3, 7, 7));
    if (rep.refuted != 0 || !rep.all_codes()) return fail(std::to_string(rep.refuted) + " refuted");
    return {true, std::to_string(rep.entries.size()) + " checks, 0 refuted"};
}

Outcome geometry_oracle()
{
    std::mt19937 rng(99);
    int mismatches = 0, n = 0;
    while (n < 1000) {
        const int p = static_cast<int>(rng() % 101) - 50, q = static_cast<int>(rng() % 101) - 50;
        if (p == 0 && q == 0) continue;
        const Cell u{static_cast<int>(rng() % 101) - 50, static_cast<int>(rng() % 101) - 50};
        const int side = static_cast<int>(rng() % 2);
        const auto got = classify_cell({Direction(p, q), side ? Side::Left : Side::Right}, u);
        mismatches += static_cast<int>(got) != static_cast<int>(oracle::rotated_membership(p, q, side, u));
        ++n;
    }
    if (mismatches) return fail(std::to_string(mismatches) + " mismatches");
    return {true, "1000 pairs, 0 mismatches"};
}

struct Run {
    int code;
    std::string out;
};

Run run(const std::string& args)
{
    const std::string cmd = std::string(DIRCLOSE_CLI) + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::string slurp(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

Outcome determinism()
{
    const auto dir = std::filesystem::temp_directory_path() / "dirclose_acceptance";
    std::filesystem::create_directories(dir);
    const std::string d = dir.string() + "/";
    {
        std::ofstream(d + "word.pat") << "pat B 5 2 0 0\n01101\n11011\n";
        std::ofstream(d + "y.pat") << "pat P 3 1 0 0\n01 01 10\n";
    }
    const std::vector<std::pair<std::string, std::string>> commands{
        {"generate --spec ledrappier --window 9x5+0+0 --seed 5 --out " + d + "gen.pat", d + "gen.pat"},
        {"generate --spec y --window 6x6+-3+-3 --seed 11", ""},
        {"coding --spec y --window 4x4+0+0 --known \"(1,0);(2,0)\" --target \"(0,0)\"", ""},
        {"closing --spec ledrappier --direction -1,0 --side left --target 0,-1 --window 6x6+-3+-3", ""},
        {"closing --spec y --direction -1,0 --side right --target 0,0 --window 8x8+-4+-4", ""},
        {"shape --spec y --shape \"(0,0);(1,0);(0,1)\" --margin 1", ""},
        {"shape --spec ledrappier --shape \"(0,0);(1,0);(0,1)\" --corners \"(0,0);(0,1)\"", ""},
        {"witness --spec y --side right --target 0,0 --window 12x14+-6+-7", ""},
        {"refute-polygonal --spec y --max-cells 4 --bounding 3x3+0+0 --jobs 4", ""},
        {"validate --spec ledrappier --pattern " + d + "word.pat", ""},
        {"count --spec y --window 4x3+0+0", ""},
        {"apply-code --code @f --pattern " + d + "word.pat --out " + d + "img.pat", d + "img.pat"},
        {"invert-code --spec y --pattern " + d + "y.pat", ""},
        {"invert-code --spec ledrappier --code @f --window 5x5+0+0", ""},
        {"render --format svg --pattern " + d + "y.pat --guide-x 1 --out " + d + "y.svg", d + "y.svg"},
        {"render --format pbm --pattern " + d + "y.pat --out " + d + "y.pbm", d + "y.pbm"},
        {"render --split --pattern " + d + "y.pat", ""},
    };
    for (const auto& [args, file] : commands) {
        const Run a = run(args);
        const std::string fa = file.empty() ? "" : slurp(file);
        if (!file.empty()) std::filesystem::remove(file);
        const Run b = run(args);
        const std::string fb = file.empty() ? "" : slurp(file);
        if (a.code != b.code || a.out != b.out || fa != fb) return fail(args);
        if (a.code == -1 || a.code >= 64) return fail("error exit " + std::to_string(a.code) + ": " + args);
        if (!file.empty() && fa.empty()) return fail("no file from " + args);
    }
    return {true, std::to_string(commands.size()) + " commands run twice, identical"};
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"three-dot count law", count_law},
        {"pair code round trip", round_trip},
        {"no 11 symbol in images", no_eleven},
        {"L-shape extremally permutive for x", l_shape},
        {"x bi-closing to the left", bi_closing},
        {"y not closing to the left, certified witnesses", witnesses},
        {"bounded polygonality refutation", polygonality},
        {"directional checks for the L-shape", directions},
        {"half-plane classification oracle", geometry_oracle},
        {"deterministic command output", determinism},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = fail(std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.pass && secs > kCriterionSeconds) o = fail("over time budget");
        failed += !o.pass;
        std::ostringstream line;
        line.setf(std::ios::fixed);
        line.precision(2);
        line << "criterion " << i + 1 << ' ' << (o.pass ? "PASS" : "FAIL") << ' ' << criteria[i].first << ": "
             << o.detail << " (" << secs << " s)";
        std::cout << line.str() << std::endl;
    }
    return failed ? 1 : 0;
}
