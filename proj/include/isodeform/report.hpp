#pragma once

#include <iosfwd>
#include <string>

#include "isodeform/verify.hpp"

namespace isodeform {

/// Report as JSON with sorted keys. Everything that varies between identical runs
/// (timestamp, timings, thread count) lives under "meta".
nlohmann::json report_json(const VerificationReport& report);

/// One row per check: suite,check,max,mean,tol,bound,samples,degenerate,pass,anchor
void write_csv(std::ostream& os, const VerificationReport& report);

/// Human-readable summary, one line per check.
void write_summary(std::ostream& os, const VerificationReport& report);

}  // namespace isodeform
