#pragma once

#include <exception>
#include <stdexcept>
#include <string>

namespace mim {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Structurally invalid input (self-loop, weight out of range, bad index, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

/// An exhaustive routine refused an instance that exceeds its enumeration guard.
class TooLarge : public Error {
 public:
  using Error::Error;
};

/// The requested algorithm cannot run on this diffusion model.
class UnsupportedModel : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Rethrows `error` as the same mim error type with `context` prefixed.
/// Non-mim exceptions become InvalidInput.
[[noreturn]] inline void rethrow_with_context(std::exception_ptr error, const std::string& context) {
  try {
    std::rethrow_exception(error);
  } catch (const UnsupportedModel& e) {
    throw UnsupportedModel(context + e.what());
  } catch (const TooLarge& e) {
    throw TooLarge(context + e.what());
  } catch (const ParseError& e) {
    throw ParseError(context + e.what());
  } catch (const std::exception& e) {
    throw InvalidInput(context + e.what());
  }
}

}  // namespace mim
