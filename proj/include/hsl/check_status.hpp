// Three-valued check outcome shared by all verifier modules.
//
// INCONCLUSIVE is reserved for existential claims where a search failed to
// produce a witness: the claim is not falsified, so the run must not report
// FAIL, but it cannot report PASS either.
#pragma once

namespace hsl {

enum class CheckStatus { PASS, FAIL, INCONCLUSIVE };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::PASS: return "PASS";
    case CheckStatus::FAIL: return "FAIL";
    default: return "INCONCLUSIVE";
  }
}

}  // namespace hsl
