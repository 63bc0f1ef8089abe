#pragma once

#include <stdexcept>
#include <string>

namespace qdp {

// Error classes map 1:1 to CLI exit codes (see cli documentation).
enum class ErrorCode : int {
  TooSmall = 10,
  NeedsColoring = 11,
  CapacityExceeded = 12,
  ImpossibleOutcome = 13,
  WrongProtocol = 14,
  NotGridLocal = 15,
  RegionTooLarge = 16,
  MissingOutcome = 17,
  DeadQubit = 18,
  SupportTooLarge = 19,
  UnknownGroup = 20,
  NonIntegerFusion = 21,
  Io = 22,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg)
      : std::runtime_error(msg), code_(code) {}
  ErrorCode code() const noexcept { return code_; }
  int exit_code() const noexcept { return static_cast<int>(code_); }

 private:
  ErrorCode code_;
};

#define QDP_DEFINE_ERROR(NAME)                              \
  class NAME : public Error {                               \
   public:                                                  \
    explicit NAME(const std::string& msg)                   \
        : Error(ErrorCode::NAME, #NAME ": " + msg) {}       \
  }

QDP_DEFINE_ERROR(TooSmall);
QDP_DEFINE_ERROR(NeedsColoring);
QDP_DEFINE_ERROR(CapacityExceeded);
QDP_DEFINE_ERROR(ImpossibleOutcome);
QDP_DEFINE_ERROR(WrongProtocol);
QDP_DEFINE_ERROR(NotGridLocal);
QDP_DEFINE_ERROR(RegionTooLarge);
QDP_DEFINE_ERROR(MissingOutcome);
QDP_DEFINE_ERROR(DeadQubit);
QDP_DEFINE_ERROR(SupportTooLarge);
QDP_DEFINE_ERROR(UnknownGroup);
QDP_DEFINE_ERROR(NonIntegerFusion);
QDP_DEFINE_ERROR(Io);

#undef QDP_DEFINE_ERROR

}  // namespace qdp
