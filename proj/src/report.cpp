#include "dirclose/report.hpp"

#include <ostream>
#include <sstream>

namespace dirclose {

void write_verdict(std::ostream& os, const Verdict& v)
{
    os << "verdict " << to_string(v.kind) << '\n';
    os << "scope " << to_string(v.scope) << '\n';
    if (!v.reason.empty()) os << "reason " << v.reason << '\n';
    if (v.witness) {
        const Witness& w = *v.witness;
        write_pat(os, w.first);
        write_pat(os, w.second);
        os << "agree " << w.agree << '\n';
        os << "differ";
        for (const auto& c : w.differ) os << ' ' << c;
        os << '\n';
    }
    for (const auto& n : v.notes) os << "note " << n << '\n';
}

std::string to_text(const Verdict& v)
{
    std::ostringstream os;
    write_verdict(os, v);
    return os.str();
}

}  // namespace dirclose
