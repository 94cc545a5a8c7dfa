#include "ringtrace/errors.hpp"

namespace ringtrace {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::DanglingReference: return "DanglingReference";
    case Errc::NonMonotonicHeight: return "NonMonotonicHeight";
    case Errc::NonMonotonicTimestamp: return "NonMonotonicTimestamp";
    case Errc::DuplicateGlobalIndex: return "DuplicateGlobalIndex";
    case Errc::NonDenseIndex: return "NonDenseIndex";
    case Errc::DuplicateTxId: return "DuplicateTxId";
    case Errc::InvalidRing: return "InvalidRing";
    case Errc::MemberNotInRing: return "MemberNotInRing";
    case Errc::UnknownRing: return "UnknownRing";
    case Errc::UnknownOutputIndex: return "UnknownOutputIndex";
    case Errc::MalformedLine: return "MalformedLine";
    case Errc::IoFailure: return "IoFailure";
    case Errc::DuplicatePayout: return "DuplicatePayout";
    case Errc::TrueSpendNotInRing: return "TrueSpendNotInRing";
    case Errc::InvalidConfig: return "InvalidConfig";
    case Errc::InfeasibleConfig: return "InfeasibleConfig";
  }
  return "Unknown";
}

namespace {

std::string compose(Errc code, const std::string& message, std::size_t line) {
  std::string out{to_string(code)};
  if (line != 0) {
    out += " (line " + std::to_string(line) + ")";
  }
  out += ": ";
  out += message;
  return out;
}

}  // namespace

Error::Error(Errc code, const std::string& message, std::size_t line, std::size_t record)
    : std::runtime_error(compose(code, message, line)),
      code_(code),
      line_(line),
      record_(record),
      detail_(message) {}

}  // namespace ringtrace
