#pragma once

#include "dirclose/analysis.hpp"

#include <iosfwd>
#include <string>

namespace dirclose {

/// Text form of a verdict:
///
///     verdict codes|refuted|inconclusive
///     scope window|certified
///     reason <text>              (optional)
///     <PAT block> <PAT block>    (refuted only)
///     agree <n>
///     differ (x,y) ...
///     note <text>                (zero or more)
void write_verdict(std::ostream& os, const Verdict& v);
std::string to_text(const Verdict& v);

}  // namespace dirclose
