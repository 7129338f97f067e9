#include "cas/protocol.hpp"

#include <charconv>

#include "cas/error.hpp"
#include "cas/net.hpp"

namespace cas {

Response Response::make(int status, std::string_view text) {
  Response r;
  r.status = status;
  std::size_t start = 0;
  for (;;) {
    auto nl = text.find('\n', start);
    r.lines.emplace_back(text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start));
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  return r;
}

std::string Response::text() const {
  std::string out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    if (i) out += '\n';
    out += lines[i];
  }
  return out;
}

std::string encode_response(const Response& response) {
  std::string out = std::to_string(response.status) + " " + std::to_string(response.lines.size());
  for (const auto& line : response.lines) {
    out += '\n';
    out += line;
  }
  return out;
}

Response decode_response(std::string_view payload) {
  auto header_end = payload.find('\n');
  std::string_view header = payload.substr(0, header_end);
  auto space = header.find(' ');
  if (space == std::string_view::npos) raise(Errc::io, "malformed response header");
  Response r;
  std::size_t count = 0;
  auto s1 = std::from_chars(header.data(), header.data() + space, r.status);
  auto s2 = std::from_chars(header.data() + space + 1, header.data() + header.size(), count);
  if (s1.ec != std::errc() || s1.ptr != header.data() + space || s2.ec != std::errc() ||
      s2.ptr != header.data() + header.size()) {
    raise(Errc::io, "malformed response header");
  }
  if (count == 0) {
    if (header_end != std::string_view::npos) raise(Errc::io, "response has more lines than announced");
    return r;
  }
  if (header_end == std::string_view::npos) raise(Errc::io, "response has fewer lines than announced");
  r = Response::make(r.status, payload.substr(header_end + 1));
  if (r.lines.size() != count) raise(Errc::io, "response line count mismatch");
  return r;
}

std::string encode_frame(std::string_view payload) {
  if (payload.size() > 0xFFFFFFFFu) raise(Errc::io, "frame too large");
  auto n = static_cast<std::uint32_t>(payload.size());
  std::string out;
  out.reserve(4 + payload.size());
  out += static_cast<char>((n >> 24) & 0xFF);
  out += static_cast<char>((n >> 16) & 0xFF);
  out += static_cast<char>((n >> 8) & 0xFF);
  out += static_cast<char>(n & 0xFF);
  out.append(payload);
  return out;
}

void write_frame(int fd, std::string_view payload) { write_all(fd, encode_frame(payload)); }

Frame read_frame(int fd, std::size_t limit) {
  unsigned char header[4];
  if (!read_exact(fd, reinterpret_cast<char*>(header), 4)) return {Frame::Kind::end_of_stream, {}};
  std::uint32_t n = (std::uint32_t{header[0]} << 24) | (std::uint32_t{header[1]} << 16) |
                    (std::uint32_t{header[2]} << 8) | std::uint32_t{header[3]};
  if (n == 0) return {Frame::Kind::shutdown, {}};
  if (n > limit) {
    char buf[4096];
    std::size_t left = n;
    while (left > 0) {
      std::size_t chunk = std::min(left, sizeof buf);
      if (!read_exact(fd, buf, chunk)) raise(Errc::io, "connection closed in the middle of a message");
      left -= chunk;
    }
    return {Frame::Kind::oversized, {}};
  }
  std::string data(n, '\0');
  if (!read_exact(fd, data.data(), n)) raise(Errc::io, "connection closed in the middle of a message");
  return {Frame::Kind::payload, std::move(data)};
}

bool valid_utf8(std::string_view bytes) noexcept {
  std::size_t i = 0;
  while (i < bytes.size()) {
    auto c = static_cast<unsigned char>(bytes[i]);
    std::size_t len = 0;
    std::uint32_t cp = 0;
    if (c < 0x80) {
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      return false;
    }
    if (i + len > bytes.size()) return false;
    for (std::size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(bytes[i + k]);
      if ((cc & 0xC0) != 0x80) return false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong forms, surrogates and values past U+10FFFF.
    if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000)) return false;
    if ((cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF) return false;
    i += len;
  }
  return true;
}

}  // namespace cas
