#pragma once

#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cas/protocol.hpp"
#include "cas/wire.hpp"

namespace cas {

/// One evaluation session: named bindings, the o<n> output history, the
/// most-recently-used ring stack and a working directory.
class Session {
 public:
  explicit Session(std::string workdir);

  /// Evaluates one statement. Status 0 carries the serialized result; the
  /// other statuses carry the error message.
  Response eval(std::string_view source);

  /// Binding names, sorted. Without `all`, names starting with "_int" and
  /// history names o<n> are left out.
  std::vector<std::string> ls(bool all) const;
  std::vector<bool> exists(std::span<const std::string> names) const;
  const std::string& workdir() const noexcept { return workdir_; }
  std::size_t history() const noexcept { return history_; }
  const WireValue* lookup(std::string_view name) const;
  /// Most recently used first.
  const std::vector<RingPtr>& rings() const noexcept { return rings_; }

 private:
  friend class Evaluator;

  void use_ring(const RingPtr& ring);

  std::map<std::string, WireValue, std::less<>> bindings_;
  std::size_t history_ = 0;
  std::vector<RingPtr> rings_;
  std::string workdir_;
};

/// Runs the request/response loop on a connected socket until the client
/// sends the shutdown frame or disconnects. Returns the process exit code.
int serve_connection(int fd, Session& session);

}  // namespace cas
