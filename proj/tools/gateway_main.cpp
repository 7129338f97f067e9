#include <signal.h>

#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>

#include "cas/gateway.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Port-dispatch gateway: spawns one worker per client"};
  cas::GatewayConfig config;
  int port = 0;
  std::string range;
  double idle_seconds = 30;
  app.add_option("--port", port, "Static listening port; 0 picks a free one")->required()->check(CLI::Range(0, 65535));
  app.add_option("--worker-ports", range, "Worker port range A-B")->required();
  app.add_option("--idle-timeout", idle_seconds, "Seconds a worker may wait for its client")
      ->check(CLI::PositiveNumber);
  app.add_option("--worker-bin", config.worker_bin, "Worker executable")->required()->check(CLI::ExistingFile);
  app.add_option("--bind", config.bind, "Listen address for the gateway and its workers");
  CLI11_PARSE(app, argc, argv);

  unsigned lo = 0;
  unsigned hi = 0;
  char dash = 0;
  std::istringstream in(range);
  if (!(in >> lo >> dash >> hi) || dash != '-' || !in.eof() || lo == 0 || lo > hi || hi > 65535) {
    std::cerr << "gateway: --worker-ports expects A-B with 0 < A <= B <= 65535\n";
    return 2;
  }
  config.port = static_cast<std::uint16_t>(port);
  config.first_worker_port = static_cast<std::uint16_t>(lo);
  config.last_worker_port = static_cast<std::uint16_t>(hi);
  config.idle_timeout = std::chrono::milliseconds(static_cast<long>(idle_seconds * 1000));

  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  signal(SIGPIPE, SIG_IGN);

  try {
    cas::Gateway gateway(config);
    std::cout << "PORT " << gateway.port() << std::endl;
    std::thread waiter([&] {
      int sig = 0;
      sigwait(&signals, &sig);
      gateway.stop();
    });
    gateway.run();
    // Unblock the waiter if run() ended for another reason.
    pthread_kill(waiter.native_handle(), SIGTERM);
    waiter.join();
  } catch (const std::exception& e) {
    std::cerr << "gateway: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
