// Error reporting shared by every trapdoor header.

#ifndef TRAPDOOR_FAIL_HPP_
#define TRAPDOOR_FAIL_HPP_

#include <sstream>
#include <stdexcept>
#include <string>

namespace trapdoor {

// All precondition and data errors surface as trapdoor::Error.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

template <typename... Args>
[[noreturn]] void fail(Args const&... args) {
  std::ostringstream os;
  (os << ... << args);
  throw Error(os.str());
}

} // namespace trapdoor

#endif
