#pragma once

#include <stdexcept>
#include <string>

namespace masure {

/* Three-valued verdict for checks that may hit an exploration cap. */
enum class Tern { yes, no, undecided };

inline const char* tern_str(Tern t) {
  switch (t) {
    case Tern::yes: return "yes";
    case Tern::no: return "no";
    default: return "undecided";
  }
}

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace masure
