#include "cas/client.hpp"

#include <signal.h>

#include <algorithm>
#include <cctype>
#include <cstdlib>

#include "cas/error.hpp"

namespace cas {

std::string peek_type_tag(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  text.remove_prefix(i);
  if (text.empty()) return "null";
  char c = text.front();
  if (c == '"') return "text";
  if (c == '[') return "list";
  if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
    std::size_t end = 0;
    while (end < text.size() && (std::isalnum(static_cast<unsigned char>(text[end])) || text[end] == '_')) ++end;
    std::string_view word = text.substr(0, end);
    if (word == "true" || word == "false") return "boolean";
    if (word == "null") return "null";
    return std::string(word);
  }
  if (text.find_first_of(".eE") != std::string_view::npos) return "real";
  if (text.find('/') != std::string_view::npos) return "rational";
  return "integer";
}

std::string Arg::render() const {
  if (const auto* ref = std::get_if<RemoteRef>(&v_)) return ref->remote_name;
  return serialize(std::get<WireValue>(v_));
}

Client::Client(ClientConfig config) : config_(std::move(config)) {}

Client::~Client() {
  try {
    if (connected() && owns_worker()) {
      stop();
    } else {
      disconnect();
    }
  } catch (...) {
  }
}

Client::Client(Client&& other) noexcept { *this = std::move(other); }

Client& Client::operator=(Client&& other) noexcept {
  if (this != &other) {
    config_ = std::move(other.config_);
    fd_ = std::move(other.fd_);
    port_ = other.port_;
    stopped_ = other.stopped_;
    history_ = other.history_;
    child_pid_ = std::exchange(other.child_pid_, -1);
    child_stdout_ = std::move(other.child_stdout_);
    exit_status_ = other.exit_status_;
  }
  return *this;
}

void Client::attach(UniqueFd fd, std::uint16_t port) {
  fd_ = std::move(fd);
  port_ = port;
}

Client Client::connect(const std::string& host, std::uint16_t port, ClientConfig config) {
  Client c(config);
  c.attach(tcp_connect_retry(host, port, config.retry_interval, config.timeout), port);
  return c;
}

Client Client::connect_via_gateway(const std::string& host, std::uint16_t gateway_port, ClientConfig config) {
  UniqueFd gw = tcp_connect_retry(host, gateway_port, config.retry_interval, config.timeout);
  auto line = read_line(gw.get(), config.timeout);
  gw.reset();
  if (!line) raise(Errc::io, "gateway closed the connection without a reply");
  if (line->empty() || !std::all_of(line->begin(), line->end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    raise(Errc::io, "gateway refused: " + *line);
  }
  unsigned long port = std::stoul(*line);
  if (port == 0 || port > 65535) raise(Errc::io, "gateway sent an invalid port: " + *line);
  return connect(host, static_cast<std::uint16_t>(port), config);
}

std::optional<std::string> Client::locate_worker(const std::optional<std::string>& explicit_path) {
  if (explicit_path && !explicit_path->empty()) return explicit_path;
  if (const char* env = std::getenv("CAS_WORKER"); env && *env) return std::string(env);
  return find_in_path("worker");
}

Client Client::start_local(ClientConfig config) {
  auto path = locate_worker(config.worker_path);
  if (!path) raise(Errc::io, "no worker executable: pass a path, set CAS_WORKER or put 'worker' on PATH");
  ChildProcess child = spawn_process(*path, {"--port", "0"});
  auto line = read_line(child.stdout_pipe.get(), config.timeout);
  std::optional<std::uint16_t> port;
  if (line && line->rfind("PORT ", 0) == 0) {
    try {
      unsigned long p = std::stoul(line->substr(5));
      if (p > 0 && p <= 65535) port = static_cast<std::uint16_t>(p);
    } catch (const std::exception&) {
    }
  }
  if (!port) {
    ::kill(child.pid, SIGKILL);
    wait_for(child.pid);
    raise(Errc::io, "worker " + *path + " did not report a port");
  }
  Client c(config);
  c.child_pid_ = child.pid;
  c.child_stdout_ = std::move(child.stdout_pipe);
  try {
    c.attach(tcp_connect_retry("127.0.0.1", *port, config.retry_interval, config.timeout), *port);
  } catch (...) {
    ::kill(c.child_pid_, SIGKILL);
    wait_for(std::exchange(c.child_pid_, -1));
    throw;
  }
  return c;
}

void Client::ensure_connected() {
  if (connected()) return;
  if (stopped_) raise(Errc::io, "connection is closed");
  std::string reasons;
  try {
    *this = start_local(config_);
    return;
  } catch (const Error& e) {
    reasons = e.what();
  }
  if (config_.gateway) {
    try {
      *this = connect_via_gateway(config_.gateway->first, config_.gateway->second, config_);
      return;
    } catch (const Error& e) {
      reasons += std::string("; gateway: ") + e.what();
    }
  }
  raise(Errc::io, "cannot start a session: " + reasons);
}

Response Client::request(std::string_view source) {
  ensure_connected();
  if (source.empty()) raise(Errc::invalid_argument, "empty request; use stop() to end the session");
  try {
    write_frame(fd_.get(), source);
    Frame reply = read_frame(fd_.get());
    if (reply.kind != Frame::Kind::payload) raise(Errc::io, "worker closed the connection");
    Response r = decode_response(reply.data);
    if (r.status == 0) ++history_;
    return r;
  } catch (const Error&) {
    fd_.reset();
    stopped_ = true;
    throw;
  }
}

std::string Client::eval_raw(std::string_view source) {
  Response r = request(source);
  if (r.status != 0) throw RemoteError(r.status, r.text());
  return r.text();
}

WireValue Client::eval_value(std::string_view source) { return parse(eval_raw(source), kernel_registry()); }

RemoteRef Client::ref_for(const Response& response) {
  if (response.status != 0) throw RemoteError(response.status, response.text());
  std::string text = response.text();
  return RemoteRef{text, "o" + std::to_string(history_), peek_type_tag(text)};
}

RemoteRef Client::eval_ref(std::string_view source) { return ref_for(request(source)); }

std::vector<std::string> Client::ls(bool all) {
  WireValue v = eval_value(all ? "ls(true)" : "ls()");
  std::vector<std::string> out;
  for (const auto& item : v.as<ListV>().items) out.push_back(item.as<Text>().value);
  return out;
}

std::vector<bool> Client::exists(std::span<const std::string> names) {
  ListV list;
  for (const auto& n : names) list.items.push_back(Text{n});
  WireValue v = eval_value("exists(" + serialize(list) + ")");
  std::vector<bool> out;
  for (const auto& item : v.as<ListV>().items) out.push_back(item.as<Boolean>().value);
  return out;
}

std::string Client::getwd() { return eval_value("getwd()").as<Text>().value; }

void Client::stop() {
  if (!connected()) {
    if (stopped_) raise(Errc::io, "connection is closed");
    stopped_ = true;
    return;
  }
  try {
    write_frame(fd_.get(), "");
  } catch (const Error&) {
  }
  disconnect();
}

void Client::disconnect() {
  fd_.reset();
  stopped_ = true;
  if (child_pid_ > 0) {
    exit_status_ = wait_for(child_pid_);
    child_pid_ = -1;
    child_stdout_.reset();
  }
}

namespace {

std::string command(std::string_view builtin, std::span<const Arg> args) {
  std::string out(builtin);
  out += '(';
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (i) out += ',';
    out += args[i].render();
  }
  out += ')';
  return out;
}

std::string ring_command(std::string_view field, std::span<const std::string> variables, std::string_view order) {
  std::string out = "ring(" + std::string(field) + ",[";
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (i) out += ',';
    out += variables[i];
  }
  return out + "]," + std::string(order) + ")";
}

std::string ideal_command(const Arg& ring, std::span<const Arg> generators) {
  std::string out = "ideal(" + ring.render() + ",[";
  for (std::size_t i = 0; i < generators.size(); ++i) {
    if (i) out += ',';
    out += generators[i].render();
  }
  return out + "])";
}

std::string tolerance_text(double tol) { return serialize(Real{tol}); }

}  // namespace

WireValue Client::call(std::string_view builtin, std::span<const Arg> args) {
  return eval_value(command(builtin, args));
}

RemoteRef Client::call_deferred(std::string_view builtin, std::span<const Arg> args) {
  return eval_ref(command(builtin, args));
}

WireValue Client::ring_make(std::string_view field, std::span<const std::string> variables, std::string_view order) {
  return eval_value(ring_command(field, variables, order));
}
RemoteRef Client::ring_make_deferred(std::string_view field, std::span<const std::string> variables,
                                     std::string_view order) {
  return eval_ref(ring_command(field, variables, order));
}
WireValue Client::ideal_make(const Arg& ring, std::span<const Arg> generators) {
  return eval_value(ideal_command(ring, generators));
}
RemoteRef Client::ideal_make_deferred(const Arg& ring, std::span<const Arg> generators) {
  return eval_ref(ideal_command(ring, generators));
}

#define CAS_UNARY_WRAPPER(method, builtin)                                                   \
  WireValue Client::method(const Arg& a) { return call(builtin, std::span<const Arg>(&a, 1)); } \
  RemoteRef Client::method##_deferred(const Arg& a) { return call_deferred(builtin, std::span<const Arg>(&a, 1)); }

CAS_UNARY_WRAPPER(gb, "gb")
CAS_UNARY_WRAPPER(radical, "radical")
CAS_UNARY_WRAPPER(dimension, "dimension")
CAS_UNARY_WRAPPER(primary_decomposition, "primaryDecomposition")
CAS_UNARY_WRAPPER(snf, "snf")

#undef CAS_UNARY_WRAPPER

WireValue Client::saturate(const Arg& ideal, const Arg& by) {
  Arg args[] = {ideal, by};
  return call("saturate", args);
}
RemoteRef Client::saturate_deferred(const Arg& ideal, const Arg& by) {
  Arg args[] = {ideal, by};
  return call_deferred("saturate", args);
}
WireValue Client::quotient(const Arg& ideal, const Arg& by) {
  Arg args[] = {ideal, by};
  return call("quotient", args);
}
RemoteRef Client::quotient_deferred(const Arg& ideal, const Arg& by) {
  Arg args[] = {ideal, by};
  return call_deferred("quotient", args);
}
WireValue Client::factor_n(const mpz_class& n) { return eval_value("factorn(" + n.get_str() + ")"); }
RemoteRef Client::factor_n_deferred(const mpz_class& n) { return eval_ref("factorn(" + n.get_str() + ")"); }

WireValue Client::solve(const Arg& ideal, std::optional<double> tolerance) {
  std::string tail = tolerance ? "," + tolerance_text(*tolerance) : "";
  return eval_value("solve(" + ideal.render() + tail + ")");
}
RemoteRef Client::solve_deferred(const Arg& ideal, std::optional<double> tolerance) {
  std::string tail = tolerance ? "," + tolerance_text(*tolerance) : "";
  return eval_ref("solve(" + ideal.render() + tail + ")");
}

RemoteRef Client::use_ring_deferred(const Arg& ring) {
  std::string name = ring.render();
  bool is_name = !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
  if (!is_name) name = eval_ref(name).remote_name;
  return eval_ref("use " + name);
}

WireValue Client::use_ring(const Arg& ring) {
  return parse(use_ring_deferred(ring).external_string, kernel_registry());
}

}  // namespace cas
