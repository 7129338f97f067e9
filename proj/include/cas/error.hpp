#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cas {

enum class Errc {
  duplicate_variable,
  invalid_variable,
  unknown_field,
  non_prime_modulus,
  unknown_identifier,
  syntax,
  negative_exponent,
  ring_mismatch,
  unsupported_field,
  zero_input,
  unsupported_shape,
  dimensionality,
  invalid_argument,
  unserializable,
  unknown_builtin,
  io,
  internal,
};

const char* errc_name(Errc code) noexcept;

/// Base of every error raised by the kernel, the wire layer and the session.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

/// Malformed input text. `offset` is the byte position where parsing stopped.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, const std::string& message)
      : Error(Errc::syntax, message + " at offset " + std::to_string(offset)),
        offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

[[noreturn]] inline void raise(Errc code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace cas
