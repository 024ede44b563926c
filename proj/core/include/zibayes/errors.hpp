// Apache License, Version 2.0, refer to LICENSE.txt

#ifndef ZIBAYES_ERRORS_HPP
#define ZIBAYES_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace zibayes {

// Malformed or unreadable input data (CSV parsing, bad counts).
class DataError : public std::runtime_error {
 public:
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical reference computation failed to converge or a printed
// closed form turned out to be inconsistent (e.g. negative radicand).
class OracleError : public std::runtime_error {
 public:
  explicit OracleError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace zibayes

#endif
