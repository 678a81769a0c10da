#ifndef UMW_ERROR_HPP
#define UMW_ERROR_HPP

#include <stdexcept>
#include <string>

namespace umw {

// Error classes map 1:1 onto CLI exit codes (see tools/main.cpp and README).
enum class ErrorClass {
  ParseError = 2,
  SchemaError = 3,
  DomainMismatch = 4,
  OrderGuardExceeded = 5,
  UnknownElement = 6,
  NotInvariant = 7,
  Comparable = 8,
  NotInClass = 9,
  ConditionTwoViolated = 10,
  NotIsometric = 11,
  NotPruned = 12,
  RadiiTooLarge = 13,
  NotTransitive = 14,
  TooLarge = 15,
  InvalidSystem = 16,
  UpSetTooLarge = 17,
  MissingLevels = 18,
  DepthTooSmall = 19,
  NotProper = 20,
  ClassMismatch = 21,
  NotOrderIso = 22,
  BlockMismatch = 23,
  NotAComponent = 24,
  NotFull = 25,
  NotLinear = 26,
  UnknownPoint = 27,
  InvalidInput = 28,
};

const char* error_class_name(ErrorClass c);

class Error : public std::runtime_error {
 public:
  Error(ErrorClass cls, const std::string& what)
      : std::runtime_error(std::string(error_class_name(cls)) + ": " + what),
        cls_(cls) {}

  ErrorClass cls() const { return cls_; }
  int exit_code() const { return static_cast<int>(cls_); }

 private:
  ErrorClass cls_;
};

inline const char* error_class_name(ErrorClass c) {
  switch (c) {
    case ErrorClass::ParseError: return "ParseError";
    case ErrorClass::SchemaError: return "SchemaError";
    case ErrorClass::DomainMismatch: return "DomainMismatch";
    case ErrorClass::OrderGuardExceeded: return "OrderGuardExceeded";
    case ErrorClass::UnknownElement: return "UnknownElement";
    case ErrorClass::NotInvariant: return "NotInvariant";
    case ErrorClass::Comparable: return "Comparable";
    case ErrorClass::NotInClass: return "NotInClass";
    case ErrorClass::ConditionTwoViolated: return "ConditionTwoViolated";
    case ErrorClass::NotIsometric: return "NotIsometric";
    case ErrorClass::NotPruned: return "NotPruned";
    case ErrorClass::RadiiTooLarge: return "RadiiTooLarge";
    case ErrorClass::NotTransitive: return "NotTransitive";
    case ErrorClass::TooLarge: return "TooLarge";
    case ErrorClass::InvalidSystem: return "InvalidSystem";
    case ErrorClass::UpSetTooLarge: return "UpSetTooLarge";
    case ErrorClass::MissingLevels: return "MissingLevels";
    case ErrorClass::DepthTooSmall: return "DepthTooSmall";
    case ErrorClass::NotProper: return "NotProper";
    case ErrorClass::ClassMismatch: return "ClassMismatch";
    case ErrorClass::NotOrderIso: return "NotOrderIso";
    case ErrorClass::BlockMismatch: return "BlockMismatch";
    case ErrorClass::NotAComponent: return "NotAComponent";
    case ErrorClass::NotFull: return "NotFull";
    case ErrorClass::NotLinear: return "NotLinear";
    case ErrorClass::UnknownPoint: return "UnknownPoint";
    case ErrorClass::InvalidInput: return "InvalidInput";
  }
  return "Error";
}

}  // namespace umw

#endif
