#include "hk/invariants.hpp"

namespace hk {

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::holds: return "holds";
    case Verdict::equality: return "equality";
    case Verdict::fails: return "fails";
  }
  return "unknown";
}

}  // namespace hk
