#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include <nlohmann/json.hpp>

namespace mhess {

/// Thrown when an operation's hypotheses are not met (a non m-sh input to
/// an inequality that is only claimed inside the cone, a non-periodic field
/// handed to a Stokes-type mass check, ...). Distinct from a failed check:
/// a refusal makes no claim either way.
class Refusal : public std::runtime_error {
 public:
  Refusal(const std::string& what, nlohmann::json location = nullptr)
      : std::runtime_error(what), location_(std::move(location)) {}

  const nlohmann::json& location() const noexcept { return location_; }

 private:
  nlohmann::json location_;
};

}  // namespace mhess
