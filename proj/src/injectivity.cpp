#include "dirclose/codes.hpp"
#include "dirclose/errors.hpp"
#include "dirclose/subshift.hpp"

#include <map>

namespace dirclose {

InjectivityReport check_injectivity_on_window(const BlockCode& code, const SubshiftSpec& spec,
                                              const Window& window)
{
    if (spec.alphabet() != code.source())
        throw UsageError("code reads " + code.source().name + " but the subshift is over " + spec.alphabet().name);

    const auto patterns = all_valid(spec, window);
    InjectivityReport report;
    if (patterns.empty()) return report;

    const Pattern probe = apply(code, patterns.front());
    std::vector<Cell> compared;
    if (!probe.frame_empty()) {
        const Window out = probe.frame();
        for (const auto& s : window.cells()) {
            bool all = true;
            for (const auto& n : code.neighborhood()) all = all && out.contains(s - n);
            if (all) compared.push_back(s);
        }
    }
    report.compared = Shape(compared);

    std::map<std::vector<Symbol>, std::size_t> first_of_image;
    std::vector<char> ambiguous(window.size(), 0);
    for (std::size_t i = 0; i < patterns.size(); ++i) {
        const Pattern img = apply(code, patterns[i]);
        std::vector<Symbol> key;
        for (const auto& c : img.support()) key.push_back(img.at(c));
        auto [it, inserted] = first_of_image.emplace(std::move(key), i);
        if (inserted) continue;
        const Pattern& rep = patterns[it->second];
        for (const auto& s : window.cells())
            if (rep.at(s) != patterns[i].at(s)) ambiguous[window.index(s)] = 1;
        if (!report.collision) {
            for (const auto& s : compared) {
                if (rep.at(s) != patterns[i].at(s)) {
                    report.collision = std::make_pair(rep, patterns[i]);
                    report.injective = false;
                    break;
                }
            }
        }
    }
    std::vector<Cell> recovered;
    for (const auto& s : window.cells())
        if (!ambiguous[window.index(s)]) recovered.push_back(s);
    report.recovered = Shape(recovered);
    return report;
}

}  // namespace dirclose
