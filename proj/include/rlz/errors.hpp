#pragma once

#include <stdexcept>

namespace rlz {

// Error taxonomy mirrors the CLI exit codes: usage 2, corruption 3, io 4.

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class CorruptionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace rlz
