#pragma once

#include <stdexcept>
#include <string>

namespace vwc {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class GeometryError : public Error {
 public:
  using Error::Error;
};

/// Malformed frame, unexpected kind, or payload schema mismatch.
class ProtocolError : public Error {
 public:
  ProtocolError() : Error("protocol violation") {}
  explicit ProtocolError(const std::string& detail)
      : Error("protocol violation: " + detail) {}
};

class TimeoutError : public Error {
 public:
  TimeoutError() : Error("server unresponsive") {}
};

/// IK target outside the reachable set or every branch violates limits.
class OutOfWorkspace : public Error {
 public:
  OutOfWorkspace() : Error("out of workspace") {}
};

/// Iterative solve did not reach tolerance; configuration left unchanged.
class TargetUnreachable : public Error {
 public:
  TargetUnreachable() : Error("target unreachable") {}
};

/// Scene/config/kinematics file rejected; message carries the field path.
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace vwc
