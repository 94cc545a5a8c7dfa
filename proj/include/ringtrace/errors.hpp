#pragma once

#include <cstddef>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ringtrace {

enum class Errc {
  DanglingReference,
  NonMonotonicHeight,
  NonMonotonicTimestamp,
  DuplicateGlobalIndex,
  NonDenseIndex,
  DuplicateTxId,
  InvalidRing,
  MemberNotInRing,
  UnknownRing,
  UnknownOutputIndex,
  MalformedLine,
  IoFailure,
  DuplicatePayout,
  TrueSpendNotInRing,
  InvalidConfig,
  InfeasibleConfig,
};

std::string_view to_string(Errc code) noexcept;

inline constexpr std::size_t kNoPosition = std::numeric_limits<std::size_t>::max();

// Every failure in the library surfaces as this type. `line` is 1-based and
// set by the parsers; `record` is the 0-based transaction ordinal a chain
// validation error refers to.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message, std::size_t line = 0,
        std::size_t record = kNoPosition);

  Errc code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t record() const noexcept { return record_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::size_t line_;
  std::size_t record_;
  std::string detail_;
};

}  // namespace ringtrace
