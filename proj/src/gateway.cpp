#include "cas/gateway.hpp"

#include <poll.h>
#include <signal.h>
#include <sys/socket.h>
#include <unistd.h>

#include <algorithm>
#include <charconv>
#include <cstring>

#include "cas/error.hpp"

namespace cas {

namespace {

std::optional<std::uint16_t> parse_port_line(std::string_view line) {
  if (line.rfind("PORT ", 0) != 0) return std::nullopt;
  unsigned value = 0;
  auto digits = line.substr(5);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || ptr != digits.data() + digits.size() || value == 0 || value > 65535) {
    return std::nullopt;
  }
  return static_cast<std::uint16_t>(value);
}

// Appends whatever the pipe has ready without blocking.
void drain(WorkerRecord& w) {
  if (!w.stdout_pipe) return;
  char buf[256];
  for (;;) {
    pollfd p{w.stdout_pipe.get(), POLLIN, 0};
    if (::poll(&p, 1, 0) <= 0) return;
    ssize_t n = ::read(w.stdout_pipe.get(), buf, sizeof buf);
    if (n <= 0) {
      w.stdout_pipe.reset();
      return;
    }
    w.pending_output.append(buf, static_cast<std::size_t>(n));
  }
}

}  // namespace

Gateway::Gateway(GatewayConfig config) : config_(std::move(config)) {
  if (config_.first_worker_port == 0 || config_.first_worker_port > config_.last_worker_port) {
    raise(Errc::invalid_argument, "worker port range is empty");
  }
  listener_ = tcp_listen(config_.bind, config_.port);
  port_ = local_port(listener_.get());
}

Gateway::~Gateway() {
  stop();
  for (auto& t : handshakes_) {
    if (t.joinable()) t.join();
  }
  shutdown_workers();
}

void Gateway::stop() {
  if (stopping_.exchange(true)) return;
  // Wakes the blocked accept().
  ::shutdown(listener_.get(), SHUT_RDWR);
}

void Gateway::run() {
  std::thread reaper([this] { monitor(); });
  while (!stopping_) {
    UniqueFd client = accept_client(listener_.get());
    if (!client) {
      if (stopping_) break;
      continue;
    }
    std::lock_guard lock(mutex_);
    handshakes_.emplace_back([this, fd = client.release()] { handshake(UniqueFd(fd)); });
  }
  std::vector<std::thread> pending;
  {
    std::lock_guard lock(mutex_);
    pending.swap(handshakes_);
  }
  for (auto& t : pending) t.join();
  reaper.join();
  shutdown_workers();
}

void Gateway::handshake(UniqueFd client) {
  std::string reply;
  try {
    reply = dispatch();
  } catch (const std::exception&) {
    reply = "ERR spawn";
  }
  try {
    write_all(client.get(), reply + "\n");
  } catch (const Error&) {
    // Client went away; the idle timeout reclaims its worker.
  }
}

std::string Gateway::dispatch() {
  std::vector<std::uint16_t> tried;
  for (;;) {
    std::uint16_t port = 0;
    {
      std::lock_guard lock(mutex_);
      if (stopping_) return "ERR shutting-down";
      reap_locked();
      for (unsigned p = config_.first_worker_port; p <= config_.last_worker_port; ++p) {
        auto candidate = static_cast<std::uint16_t>(p);
        if (workers_.count(candidate) || std::find(tried.begin(), tried.end(), candidate) != tried.end()) continue;
        port = candidate;
        break;
      }
      if (port == 0) return tried.empty() ? "ERR no-ports" : "ERR spawn";
      WorkerRecord& slot = workers_[port];
      slot.port = port;
      slot.started_at = std::chrono::steady_clock::now();
    }

    ChildProcess child;
    bool spawned = false;
    std::optional<std::string> line;
    try {
      child = spawn_process(config_.worker_bin, {"--port", std::to_string(port), "--bind", config_.bind});
      spawned = true;
      line = read_line(child.stdout_pipe.get(), config_.spawn_timeout);
    } catch (const Error&) {
    }

    bool ok = line && parse_port_line(*line) == port;
    std::lock_guard lock(mutex_);
    if (ok) {
      WorkerRecord& w = workers_[port];
      w.pid = child.pid;
      w.stdout_pipe = std::move(child.stdout_pipe);
      w.started_at = std::chrono::steady_clock::now();
      return std::to_string(port);
    }
    workers_.erase(port);
    if (spawned) {
      ::kill(child.pid, SIGKILL);
      wait_for(child.pid);
    } else {
      return "ERR spawn";
    }
    // Port held by another process: try the next one.
    tried.push_back(port);
  }
}

void Gateway::reap_locked() {
  auto now = std::chrono::steady_clock::now();
  for (auto it = workers_.begin(); it != workers_.end();) {
    WorkerRecord& w = it->second;
    if (w.pid < 0) {  // still being spawned by a handshake thread
      ++it;
      continue;
    }
    drain(w);
    if (w.state == WorkerRecord::State::starting && w.pending_output.find("CONNECTED\n") != std::string::npos) {
      w.state = WorkerRecord::State::serving;
    }
    if (try_wait(w.pid)) {
      w.state = WorkerRecord::State::exited;
      it = workers_.erase(it);
      continue;
    }
    if (w.state == WorkerRecord::State::starting && now - w.started_at > config_.idle_timeout) {
      ::kill(w.pid, SIGTERM);
    }
    ++it;
  }
}

void Gateway::monitor() {
  while (!stopping_) {
    {
      std::lock_guard lock(mutex_);
      reap_locked();
    }
    std::this_thread::sleep_for(std::chrono::milliseconds(20));
  }
}

void Gateway::shutdown_workers() {
  std::lock_guard lock(mutex_);
  for (auto& [port, w] : workers_) {
    if (w.pid < 0) continue;
    ::kill(w.pid, SIGTERM);
    wait_for(w.pid);
  }
  workers_.clear();
}

std::vector<std::uint16_t> Gateway::live_ports() const {
  std::lock_guard lock(mutex_);
  std::vector<std::uint16_t> out;
  for (const auto& [port, w] : workers_) out.push_back(port);
  return out;
}

}  // namespace cas
