#include <unistd.h>

#include <csignal>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "cas/net.hpp"
#include "cas/session.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Evaluation worker: serves one client session over TCP"};
  int port = 0;
  std::string workdir;
  std::string bind = "127.0.0.1";
  app.add_option("--port", port, "TCP port; 0 picks a free one")->required()->check(CLI::Range(0, 65535));
  app.add_option("--workdir", workdir, "Working directory of the session");
  app.add_option("--bind", bind, "Listen address");
  CLI11_PARSE(app, argc, argv);

  std::signal(SIGPIPE, SIG_IGN);
  if (!workdir.empty() && ::chdir(workdir.c_str()) != 0) {
    std::cerr << "worker: cannot enter " << workdir << "\n";
    return 1;
  }

  cas::UniqueFd listener;
  try {
    listener = cas::tcp_listen(bind, static_cast<std::uint16_t>(port), 1);
  } catch (const std::exception& e) {
    std::cerr << "worker: " << e.what() << "\n";
    return 1;
  }
  std::printf("PORT %u\n", cas::local_port(listener.get()));
  std::fflush(stdout);

  cas::UniqueFd client = cas::accept_client(listener.get());
  listener.reset();
  if (!client) return 1;
  std::printf("CONNECTED\n");
  std::fflush(stdout);

  cas::Session session(std::filesystem::current_path().string());
  return cas::serve_connection(client.get(), session);
}
