#pragma once

#include <iosfwd>

namespace hopsynth {

// Entry point of the hopsynth tool. Returns 0 on success, 1 on usage
// errors (usage text goes to `err`), 2 on runtime failures.
int dispatch(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hopsynth
