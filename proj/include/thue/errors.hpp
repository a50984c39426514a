#pragma once

#include <stdexcept>
#include <string>

namespace thue {

// Caller violated a documented precondition. The CLI maps this to exit code 2.
class ContractError : public std::runtime_error {
 public:
  explicit ContractError(const std::string& what) : std::runtime_error(what) {}
};

// An invariant that the library itself is responsible for failed. Exit code 1.
class InternalError : public std::logic_error {
 public:
  explicit InternalError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace thue
