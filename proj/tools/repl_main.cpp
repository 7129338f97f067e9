#include <signal.h>
#include <unistd.h>

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cas/client.hpp"
#include "cas/error.hpp"

namespace {

bool color = false;

void print_error(int status, const std::string& message) {
  const char* kind = status == 2 ? "syntax error" : status == 3 ? "internal error" : "error";
  if (color) {
    std::cout << "\x1b[1;31m-- " << kind << " (status " << status << ") --\x1b[0m\n" << message << "\n";
  } else {
    std::cout << "-- " << kind << " (status " << status << ") --\n" << message << "\n";
  }
}

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interactive client for a worker session"};
  std::string host = "127.0.0.1";
  int port = 0;
  std::string gateway;
  std::string local;
  double timeout = 10;
  app.add_option("--host", host, "Worker host");
  app.add_option("--port", port, "Connect to a running worker on this port")->check(CLI::Range(1, 65535));
  app.add_option("--gateway", gateway, "Obtain a worker from the gateway at H:N");
  app.add_option("--local", local, "Worker executable to start locally");
  app.add_option("--timeout", timeout, "Connect timeout in seconds")->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  signal(SIGPIPE, SIG_IGN);
  color = ::isatty(STDOUT_FILENO);
  bool interactive = ::isatty(STDIN_FILENO);

  cas::ClientConfig config;
  config.timeout = std::chrono::milliseconds(static_cast<long>(timeout * 1000));
  if (!local.empty()) config.worker_path = local;

  cas::Client client;
  try {
    if (port != 0) {
      client = cas::Client::connect(host, static_cast<std::uint16_t>(port), config);
    } else if (!gateway.empty()) {
      auto colon = gateway.rfind(':');
      if (colon == std::string::npos) {
        std::cerr << "cas-repl: --gateway expects HOST:PORT\n";
        return 2;
      }
      client = cas::Client::connect_via_gateway(gateway.substr(0, colon),
                                                static_cast<std::uint16_t>(std::stoul(gateway.substr(colon + 1))),
                                                config);
    } else {
      client = cas::Client::start_local(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "cas-repl: " << e.what() << "\n";
    return 1;
  }

  std::string line;
  for (;;) {
    if (interactive) std::cout << "cas> " << std::flush;
    if (!std::getline(std::cin, line)) break;
    std::string cmd = trim(line);
    if (cmd.empty()) continue;
    if (cmd == ":quit") break;
    std::string source = cmd;
    if (cmd == ":ls") {
      source = "ls()";
    } else if (cmd == ":ls all") {
      source = "ls(true)";
    } else if (cmd == ":vars") {
      source = "vars()";
    } else if (cmd == ":getwd") {
      source = "getwd()";
    } else if (cmd.front() == ':') {
      std::cout << "meta commands: :ls, :ls all, :vars, :getwd, :quit\n";
      continue;
    }
    try {
      cas::Response r = client.request(source);
      if (r.status == 0) {
        for (const auto& l : r.lines) std::cout << l << "\n";
      } else {
        print_error(r.status, r.text());
      }
    } catch (const std::exception& e) {
      std::cerr << "cas-repl: " << e.what() << "\n";
      return 1;
    }
    std::cout << std::flush;
  }
  if (client.owns_worker()) {
    client.stop();
  } else {
    client.disconnect();
  }
  return 0;
}
