#pragma once

#include <stdexcept>
#include <string>

namespace sw {

// Config / usage errors: bad keys, bad values, malformed command lines.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Structured-text parse failure, carries 1-based position.
struct ParseError : std::runtime_error {
  int line;
  int column;
  ParseError(const std::string& msg, int line_, int column_)
      : std::runtime_error(msg + " (line " + std::to_string(line_) + ", col " +
                           std::to_string(column_) + ")"),
        line(line_),
        column(column_) {}
};

// Iteration produced non-finite values; carries the last finite energy seen.
struct DivergenceError : std::runtime_error {
  double last_energy;
  long iteration;
  DivergenceError(const std::string& msg, double last_energy_, long iteration_)
      : std::runtime_error(msg),
        last_energy(last_energy_),
        iteration(iteration_) {}
};

// Requested problem size exceeds a documented dense-path limit.
struct CapacityError : std::runtime_error {
  explicit CapacityError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace sw
