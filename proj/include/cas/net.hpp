#pragma once

#include <sys/types.h>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cas {

/// Owning file descriptor.
class UniqueFd {
 public:
  UniqueFd() = default;
  explicit UniqueFd(int fd) noexcept : fd_(fd) {}
  UniqueFd(UniqueFd&& other) noexcept : fd_(other.release()) {}
  UniqueFd& operator=(UniqueFd&& other) noexcept {
    if (this != &other) reset(other.release());
    return *this;
  }
  UniqueFd(const UniqueFd&) = delete;
  UniqueFd& operator=(const UniqueFd&) = delete;
  ~UniqueFd() { reset(); }

  int get() const noexcept { return fd_; }
  bool valid() const noexcept { return fd_ >= 0; }
  explicit operator bool() const noexcept { return valid(); }
  int release() noexcept {
    int fd = fd_;
    fd_ = -1;
    return fd;
  }
  void reset(int fd = -1) noexcept;

 private:
  int fd_ = -1;
};

/// Listening TCP socket on host:port (IPv4). Port 0 picks an ephemeral port.
/// Throws Error(io) when the address cannot be bound.
UniqueFd tcp_listen(const std::string& host, std::uint16_t port, int backlog = 16);
std::uint16_t local_port(int fd);

/// Single connection attempt; throws Error(io) on failure.
UniqueFd tcp_connect(const std::string& host, std::uint16_t port);

/// Retries every `interval` until connected or `timeout` has elapsed.
UniqueFd tcp_connect_retry(const std::string& host, std::uint16_t port, std::chrono::milliseconds interval,
                           std::chrono::milliseconds timeout);

/// Blocks until a client connects. Returns an invalid fd if interrupted.
UniqueFd accept_client(int listen_fd);

void write_all(int fd, std::string_view data);
/// Reads exactly `n` bytes. Returns false on end of stream before the first
/// byte; throws Error(io) on a short read or socket error.
bool read_exact(int fd, char* buf, std::size_t n);

/// Reads one '\n'-terminated line (without the terminator), waiting at most
/// `timeout`. Returns nullopt on timeout or end of stream.
std::optional<std::string> read_line(int fd, std::chrono::milliseconds timeout);

/// Reads everything until end of stream.
std::string read_to_end(int fd);

struct ChildProcess {
  pid_t pid = -1;
  UniqueFd stdout_pipe;
};

/// Starts `path` with `args` (argv[0] excluded). The child's stdout is a pipe
/// readable through `stdout_pipe`; stdin reads /dev/null; stderr is inherited.
ChildProcess spawn_process(const std::string& path, const std::vector<std::string>& args);

/// Exit status (or 128 + signal) once the child ends; nullopt if it is still
/// running.
std::optional<int> try_wait(pid_t pid);
int wait_for(pid_t pid);

/// Searches PATH for an executable called `name`.
std::optional<std::string> find_in_path(std::string_view name);

}  // namespace cas
