#pragma once

#include <stdexcept>
#include <string>

namespace enriques {

// Malformed or inconsistent user input (CLI exit code 1).
class input_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

// A mathematical invariant failed (CLI exit code 2).
class invariant_error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

} // namespace enriques
