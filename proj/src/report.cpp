#include "invt/report.hpp"

namespace invt {

const char* status_name(Status s) noexcept {
  switch (s) {
    case Status::Pass: return "PASS";
    case Status::ExpectedFailure: return "EXPECTED-FAILURE";
    case Status::NotCheckable: return "NOT-CHECKABLE";
    case Status::Fail: return "FAIL";
    case Status::HypothesisFailure: return "HYPOTHESIS-FAILURE";
    case Status::Error: return "ERROR";
  }
  return "?";
}

Status worst(Status a, Status b) noexcept { return static_cast<int>(a) >= static_cast<int>(b) ? a : b; }

}  // namespace invt
