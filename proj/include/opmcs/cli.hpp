#pragma once

#include <string>
#include <vector>

namespace opmcs {

// argv-style entry point without the program name. Returns the process exit
// code: 0 success, 1 check mismatch, 2 not outerplanar, 64 usage or invalid
// parameters, 65 unreadable or malformed input.
int cli_main(const std::vector<std::string>& args);

}  // namespace opmcs
