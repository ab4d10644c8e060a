#pragma once

#include <stdexcept>
#include <string>

namespace hgm {

enum class ErrorKind {
  parameter,
  parse,
  domain,
  incompatible_prime,
  precision,
  consistency,
  integrality,
  truncation,
  io,
};

inline const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::parse: return "parse";
    case ErrorKind::domain: return "domain";
    case ErrorKind::incompatible_prime: return "incompatible-prime";
    case ErrorKind::precision: return "precision";
    case ErrorKind::consistency: return "consistency";
    case ErrorKind::integrality: return "integrality";
    case ErrorKind::truncation: return "truncation";
    case ErrorKind::io: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + " error: " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace hgm
