#pragma once

#include <stdexcept>
#include <string>

namespace gamealign {

// Precondition failures are reported as exceptions. Each named condition has
// its own type so callers can distinguish recoverable ones (CapExceeded in
// particular signals "switch to the sampling path").

struct CapExceeded : std::invalid_argument {
  explicit CapExceeded(const std::string& what) : std::invalid_argument(what) {}
};

struct SamePlayer : std::invalid_argument {
  explicit SamePlayer(const std::string& what) : std::invalid_argument(what) {}
};

struct OverlappingUnion : std::invalid_argument {
  explicit OverlappingUnion(const std::string& what) : std::invalid_argument(what) {}
};

struct ZeroVector : std::invalid_argument {
  explicit ZeroVector(const std::string& what) : std::invalid_argument(what) {}
};

struct LengthMismatch : std::invalid_argument {
  explicit LengthMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct ShapeMismatch : std::invalid_argument {
  explicit ShapeMismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct NonFinite : std::invalid_argument {
  explicit NonFinite(const std::string& what) : std::invalid_argument(what) {}
};

struct NonSquare : std::invalid_argument {
  explicit NonSquare(const std::string& what) : std::invalid_argument(what) {}
};

struct NonPositiveTemperature : std::invalid_argument {
  explicit NonPositiveTemperature(const std::string& what) : std::invalid_argument(what) {}
};

struct EmptyScores : std::invalid_argument {
  explicit EmptyScores(const std::string& what) : std::invalid_argument(what) {}
};

struct InvertedInterval : std::invalid_argument {
  explicit InvertedInterval(const std::string& what) : std::invalid_argument(what) {}
};

struct EmptyRecords : std::invalid_argument {
  explicit EmptyRecords(const std::string& what) : std::invalid_argument(what) {}
};

struct NonPositiveDuration : std::invalid_argument {
  explicit NonPositiveDuration(const std::string& what) : std::invalid_argument(what) {}
};

struct ConfigInvalid : std::invalid_argument {
  explicit ConfigInvalid(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace gamealign
