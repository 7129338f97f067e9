#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace cas {

inline constexpr std::size_t max_frame_size = 16u << 20;

enum class Status : int { ok = 0, eval_error = 1, syntax_error = 2, internal_error = 3 };

/// Worker reply: a status and the output lines.
struct Response {
  int status = 0;
  std::vector<std::string> lines;

  /// Splits `text` on '\n'.
  static Response make(int status, std::string_view text);
  std::string text() const;

  friend bool operator==(const Response&, const Response&) = default;
};

/// "STATUS LINECOUNT" followed by one "\n"-prefixed entry per line.
std::string encode_response(const Response& response);
/// Throws Error(io) on a malformed payload.
Response decode_response(std::string_view payload);

struct Frame {
  enum class Kind { payload, shutdown, end_of_stream, oversized };
  Kind kind;
  std::string data;
};

/// 4-byte big-endian length prefix, then the payload.
std::string encode_frame(std::string_view payload);
void write_frame(int fd, std::string_view payload);
/// Oversized payloads are read and discarded so the stream stays in sync.
Frame read_frame(int fd, std::size_t limit = max_frame_size);

bool valid_utf8(std::string_view bytes) noexcept;

}  // namespace cas
