#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace opp {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input.
class InputError : public Error {
 public:
  using Error::Error;
};

/// The instance exceeds a configured search cap.
class CapabilityError : public Error {
 public:
  using Error::Error;
};

/// A derived quantity violates an inequality that the construction relies on.
class AnalysisError : public Error {
 public:
  using Error::Error;
};

/// One or more hypotheses fail; `failed()` lists each failed inequality.
class PreconditionError : public Error {
 public:
  explicit PreconditionError(std::vector<std::string> failed);
  const std::vector<std::string>& failed() const { return failed_; }

 private:
  std::vector<std::string> failed_;
};

}  // namespace opp
