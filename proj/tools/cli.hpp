#pragma once

#include <ostream>

namespace hreg {

/// Exit codes: 0 pass (an Unknown verdict also exits 0 and says so),
/// 1 a check failed, 2 usage or input-format error.
int cli_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hreg
