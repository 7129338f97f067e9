#pragma once

#include <gmpxx.h>

#include <chrono>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cas/net.hpp"
#include "cas/protocol.hpp"
#include "cas/wire.hpp"

namespace cas {

/// Handle to a value held by a worker.
struct RemoteRef {
  std::string external_string;
  std::string remote_name;
  std::string type_tag;

  friend bool operator==(const RemoteRef&, const RemoteRef&) = default;
};

/// A worker reply with a nonzero status.
class RemoteError : public std::runtime_error {
 public:
  RemoteError(int status, const std::string& message) : std::runtime_error(message), status_(status) {}
  int status() const noexcept { return status_; }

 private:
  int status_;
};

/// Type tag of a canonical text, read from its first token only.
std::string peek_type_tag(std::string_view text);

struct ClientConfig {
  /// Worker executable for start_local; falls back to $CAS_WORKER, then PATH.
  std::optional<std::string> worker_path;
  /// Gateway tried by auto-start when no local worker can be started.
  std::optional<std::pair<std::string, std::uint16_t>> gateway;
  std::chrono::milliseconds timeout{10000};
  std::chrono::milliseconds retry_interval{100};
};

/// Wrapper argument: a local value (sent serialized) or a remote handle
/// (sent by name).
class Arg {
 public:
  Arg(WireValue value) : v_(std::move(value)) {}
  Arg(RemoteRef ref) : v_(std::move(ref)) {}
  std::string render() const;

 private:
  std::variant<WireValue, RemoteRef> v_;
};

/// Connection to one worker. Not safe for concurrent use.
class Client {
 public:
  /// Disconnected client that auto-starts on its first request: a local
  /// worker first, then the configured gateway.
  explicit Client(ClientConfig config = {});
  ~Client();
  Client(Client&&) noexcept;
  Client& operator=(Client&&) noexcept;

  static Client connect(const std::string& host, std::uint16_t port, ClientConfig config = {});
  static Client connect_via_gateway(const std::string& host, std::uint16_t gateway_port, ClientConfig config = {});
  static Client start_local(ClientConfig config = {});

  /// Resolves the worker binary: explicit path, $CAS_WORKER, then PATH.
  static std::optional<std::string> locate_worker(const std::optional<std::string>& explicit_path);

  bool connected() const noexcept { return fd_.valid(); }
  bool owns_worker() const noexcept { return child_pid_ > 0; }
  std::uint16_t port() const noexcept { return port_; }

  /// The reply as sent; never throws RemoteError.
  Response request(std::string_view source);
  std::string eval_raw(std::string_view source);
  WireValue eval_value(std::string_view source);
  RemoteRef eval_ref(std::string_view source);

  std::vector<std::string> ls(bool all = false);
  std::vector<bool> exists(std::span<const std::string> names);
  std::string getwd();

  /// Sends the shutdown frame and, for a locally started worker, waits for
  /// it to exit. Later requests fail.
  void stop();
  /// Closes the socket without the shutdown frame.
  void disconnect();
  /// Exit status of the locally started worker once stop() has returned.
  std::optional<int> worker_exit_status() const noexcept { return exit_status_; }

  WireValue call(std::string_view builtin, std::span<const Arg> args);
  RemoteRef call_deferred(std::string_view builtin, std::span<const Arg> args);

  WireValue ring_make(std::string_view field, std::span<const std::string> variables,
                      std::string_view order = "grevlex");
  RemoteRef ring_make_deferred(std::string_view field, std::span<const std::string> variables,
                               std::string_view order = "grevlex");
  WireValue ideal_make(const Arg& ring, std::span<const Arg> generators);
  RemoteRef ideal_make_deferred(const Arg& ring, std::span<const Arg> generators);
  WireValue gb(const Arg& ideal);
  RemoteRef gb_deferred(const Arg& ideal);
  WireValue radical(const Arg& ideal);
  RemoteRef radical_deferred(const Arg& ideal);
  WireValue saturate(const Arg& ideal, const Arg& by);
  RemoteRef saturate_deferred(const Arg& ideal, const Arg& by);
  WireValue quotient(const Arg& ideal, const Arg& by);
  RemoteRef quotient_deferred(const Arg& ideal, const Arg& by);
  WireValue dimension(const Arg& ideal);
  RemoteRef dimension_deferred(const Arg& ideal);
  WireValue primary_decomposition(const Arg& ideal);
  RemoteRef primary_decomposition_deferred(const Arg& ideal);
  WireValue snf(const Arg& matrix);
  RemoteRef snf_deferred(const Arg& matrix);
  WireValue factor_n(const mpz_class& n);
  RemoteRef factor_n_deferred(const mpz_class& n);
  WireValue solve(const Arg& ideal, std::optional<double> tolerance = std::nullopt);
  RemoteRef solve_deferred(const Arg& ideal, std::optional<double> tolerance = std::nullopt);
  /// `use NAME`; a ring given by value is first bound on the worker.
  WireValue use_ring(const Arg& ring);
  RemoteRef use_ring_deferred(const Arg& ring);

 private:
  void ensure_connected();
  void attach(UniqueFd fd, std::uint16_t port);
  RemoteRef ref_for(const Response& response);

  ClientConfig config_;
  UniqueFd fd_;
  std::uint16_t port_ = 0;
  bool stopped_ = false;
  std::size_t history_ = 0;
  pid_t child_pid_ = -1;
  UniqueFd child_stdout_;
  std::optional<int> exit_status_;
};

}  // namespace cas
