#pragma once

#include <sys/types.h>

#include <atomic>
#include <chrono>
#include <cstdint>
#include <map>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "cas/net.hpp"

namespace cas {

struct GatewayConfig {
  std::string bind = "127.0.0.1";
  /// 0 picks an ephemeral port; see Gateway::port().
  std::uint16_t port = 0;
  std::uint16_t first_worker_port = 0;
  std::uint16_t last_worker_port = 0;
  /// A worker with no client after this long is killed.
  std::chrono::milliseconds idle_timeout{30000};
  std::string worker_bin;
  std::chrono::milliseconds spawn_timeout{5000};
};

struct WorkerRecord {
  enum class State { starting, serving, exited };

  std::uint16_t port = 0;
  pid_t pid = -1;
  std::chrono::steady_clock::time_point started_at;
  State state = State::starting;
  UniqueFd stdout_pipe;
  std::string pending_output;
};

/// Port-dispatch server. Each accepted client gets a freshly spawned worker:
/// the gateway replies with the worker's port (or an `ERR <reason>` line) and
/// closes the connection.
class Gateway {
 public:
  /// Binds the listening socket; throws Error(io) on failure.
  explicit Gateway(GatewayConfig config);
  ~Gateway();
  Gateway(const Gateway&) = delete;
  Gateway& operator=(const Gateway&) = delete;

  std::uint16_t port() const noexcept { return port_; }

  /// Accepts clients until stop(). Kills the remaining workers on return.
  void run();
  /// Safe to call from any thread.
  void stop();

  /// Ports of workers not yet reaped, ascending.
  std::vector<std::uint16_t> live_ports() const;

 private:
  void handshake(UniqueFd client);
  /// Reserves the lowest free port and starts a worker on it. Returns the
  /// reply line.
  std::string dispatch();
  void monitor();
  void reap_locked();
  void shutdown_workers();

  GatewayConfig config_;
  UniqueFd listener_;
  std::uint16_t port_ = 0;
  std::atomic<bool> stopping_{false};

  mutable std::mutex mutex_;
  std::map<std::uint16_t, WorkerRecord> workers_;
  std::vector<std::thread> handshakes_;
};

}  // namespace cas
