#ifndef TUNNELING_ERRORS_HPP
#define TUNNELING_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace tunneling {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidParameter : public Error {
 public:
  using Error::Error;
};

/// E coincides exactly with a region height; the local wavenumber vanishes.
class DegenerateEnergy : public Error {
 public:
  using Error::Error;
};

enum class Channel { transmitted, reflected };

inline const char* to_string(Channel c) {
  return c == Channel::transmitted ? "transmitted" : "reflected";
}

/// A channel amplitude vanished, so its phase (and any time derived from it) is undefined.
class UndefinedPhase : public Error {
 public:
  UndefinedPhase(Channel channel, const std::string& what)
      : Error(what), channel_(channel) {}
  Channel channel() const noexcept { return channel_; }

 private:
  Channel channel_;
};

/// Phase undefined at the requested energy: raised by the clock-time routes.
class ResonanceError : public UndefinedPhase {
 public:
  using UndefinedPhase::UndefinedPhase;
};

struct DerivativeDiagnostics {
  double value = 0.0;
  double error_estimate = 0.0;
  double final_step = 0.0;
  int attempts = 0;
};

class DerivativeFailure : public Error {
 public:
  DerivativeFailure(const std::string& what, DerivativeDiagnostics diag)
      : Error(what), diagnostics_(diag) {}
  const DerivativeDiagnostics& diagnostics() const noexcept { return diagnostics_; }

 private:
  DerivativeDiagnostics diagnostics_;
};

class CouplingTooStrong : public Error {
 public:
  using Error::Error;
};

class UndefinedReading : public Error {
 public:
  using Error::Error;
};

class UnderflowError : public Error {
 public:
  using Error::Error;
};

}  // namespace tunneling

#endif  // TUNNELING_ERRORS_HPP
