#pragma once

#include <stdexcept>
#include <string>

namespace lcm {

struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DegenerateRing : Error {
  explicit DegenerateRing(const std::string& w = "fewer than 2 distinct locations") : Error(w) {}
};

struct OutOfOrderEvent : Error {
  explicit OutOfOrderEvent(const std::string& w) : Error(w) {}
};

struct PhaseOrderViolation : Error {
  explicit PhaseOrderViolation(const std::string& w) : Error(w) {}
};

struct MalformedRecord : Error {
  int line;
  MalformedRecord(int line_, const std::string& w)
      : Error("line " + std::to_string(line_) + ": " + w), line(line_) {}
};

struct NoOutstandingLook : Error {
  explicit NoOutstandingLook(const std::string& w) : Error(w) {}
};

struct AdversaryConstraintViolation : Error {
  explicit AdversaryConstraintViolation(const std::string& w) : Error(w) {}
};

struct DeadlockError : Error {
  explicit DeadlockError(const std::string& w = "adversary returned no step while cycles pending") : Error(w) {}
};

struct ArityError : Error {
  explicit ArityError(const std::string& w) : Error(w) {}
};

struct WrongArity : Error {
  explicit WrongArity(const std::string& w) : Error(w) {}
};

struct InvalidShape : Error {
  explicit InvalidShape(const std::string& w) : Error(w) {}
};

struct UnknownKind : Error {
  explicit UnknownKind(const std::string& w) : Error(w) {}
};

struct MalformedSimTrace : Error {
  explicit MalformedSimTrace(const std::string& w) : Error(w) {}
};

struct ConfigError : Error {
  explicit ConfigError(const std::string& w) : Error(w) {}
};

}  // namespace lcm
