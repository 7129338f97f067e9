#include <doctest.h>

#include <signal.h>

#include <cstdio>
#include <future>
#include <thread>

#include "cas/client.hpp"
#include "cas/gateway.hpp"

using namespace cas;
using namespace std::chrono_literals;

namespace {

ClientConfig local_config() {
  ClientConfig c;
  c.worker_path = CAS_WORKER_BIN;
  c.timeout = 5000ms;
  return c;
}

bool port_open(std::uint16_t port) {
  try {
    tcp_connect("127.0.0.1", port);
    return true;
  } catch (const Error&) {
    return false;
  }
}

// A port range unlikely to collide with other tests running in parallel.
std::uint16_t range_base(int slot) { return static_cast<std::uint16_t>(41000 + (::getpid() % 400) * 20 + slot * 5); }

struct RunningGateway {
  Gateway gateway;
  std::thread thread;

  explicit RunningGateway(GatewayConfig config) : gateway(std::move(config)) {
    thread = std::thread([this] { gateway.run(); });
  }
  ~RunningGateway() {
    gateway.stop();
    thread.join();
  }
};

GatewayConfig gateway_config(std::uint16_t first, std::uint16_t last) {
  GatewayConfig c;
  c.first_worker_port = first;
  c.last_worker_port = last;
  c.worker_bin = CAS_WORKER_BIN;
  c.idle_timeout = 2000ms;
  return c;
}

std::string ask_gateway(std::uint16_t port) {
  UniqueFd fd = tcp_connect("127.0.0.1", port);
  return read_line(fd.get(), 5000ms).value_or("<none>");
}

}  // namespace

TEST_CASE("worker session transcript and clean shutdown") {
  Client c = Client::start_local(local_config());
  std::uint16_t port = c.port();
  CHECK(c.eval_raw("1 + 1") == "2");
  CHECK(c.eval_raw("a = 1") == "1");
  CHECK(c.eval_raw("a") == "1");
  CHECK(c.ls() == std::vector<std::string>{"a"});
  std::vector<std::string> names{"a", "b"};
  CHECK(c.exists(names) == std::vector<bool>{true, false});
  CHECK_FALSE(c.getwd().empty());
  CHECK_FALSE(port_open(port));  // one client per worker
  c.stop();
  CHECK(c.worker_exit_status() == 0);
  CHECK_FALSE(port_open(port));
  CHECK_THROWS_AS(c.eval_raw("1 + 1"), Error);
}

TEST_CASE("worker exits nonzero when its port is taken") {
  UniqueFd holder = tcp_listen("127.0.0.1", 0);
  std::uint16_t port = local_port(holder.get());
  ChildProcess child = spawn_process(CAS_WORKER_BIN, {"--port", std::to_string(port)});
  CHECK(wait_for(child.pid) != 0);
}

TEST_CASE("worker exits cleanly when the client disconnects") {
  ChildProcess child = spawn_process(CAS_WORKER_BIN, {"--port", "0"});
  auto line = read_line(child.stdout_pipe.get(), 5000ms);
  REQUIRE(line);
  auto port = static_cast<std::uint16_t>(std::stoul(line->substr(5)));
  {
    UniqueFd fd = tcp_connect_retry("127.0.0.1", port, 100ms, 5000ms);
    write_frame(fd.get(), "1 + 1");
    CHECK(decode_response(read_frame(fd.get()).data).text() == "2");
  }
  CHECK(wait_for(child.pid) == 0);
}

TEST_CASE("client evaluation forms") {
  Client c = Client::start_local(local_config());
  CHECK(c.eval_raw("1.2") == "1.2");
  CHECK(c.eval_value("1.2").as<Real>().value == 1.2);
  try {
    c.eval_value("nonsense(");
    FAIL("expected a remote error");
  } catch (const RemoteError& e) {
    CHECK(e.status() == 2);
  }
  try {
    c.eval_raw("u + 1");
    FAIL("expected a remote error");
  } catch (const RemoteError& e) {
    CHECK(e.status() == 1);
    CHECK(std::string(e.what()).find("'u'") != std::string::npos);
  }

  c.eval_raw("ring(QQ,[t,x,y,z],grevlex)");
  c.eval_raw("I = ideal(t^4 - x, t^3 - y, t^2 - z)");
  RemoteRef ref = c.eval_ref("gb(I)");
  CHECK(ref.type_tag == "gb");
  CHECK(ref.remote_name == "o5");
  CHECK(c.eval_raw(ref.remote_name) == ref.external_string);
  CHECK(c.eval_value(ref.remote_name).as<GbV>().gb.generators().size() == 6);
}

TEST_CASE("wrappers: value form equals the parsed reference form") {
  Client c = Client::start_local(local_config());
  std::vector<std::string> vars{"t", "x", "y", "z"};
  RemoteRef ring = c.ring_make_deferred("QQ", vars);
  CHECK(ring.type_tag == "ring");
  std::vector<Arg> gens{WireValue(Text{"x*z"}), WireValue(Text{"y*z"})};
  RemoteRef I = c.ideal_make_deferred(ring, gens);
  WireValue local_I = c.eval_value(I.remote_name);

  auto same = [&](const WireValue& value, const RemoteRef& deferred) {
    CHECK(value == c.eval_value(deferred.remote_name));
    CHECK(serialize(value) == deferred.external_string);
  };
  same(c.gb(I), c.gb_deferred(I));
  same(c.gb(local_I), c.gb_deferred(I));  // local value and remote handle agree
  same(c.radical(I), c.radical_deferred(local_I));
  same(c.dimension(I), c.dimension_deferred(I));
  RemoteRef parts = c.primary_decomposition_deferred(I);
  same(c.primary_decomposition(I), parts);
  CHECK(c.dimension(parts) == WireValue(ListV{{Integer{3}, Integer{2}}}));

  RemoteRef Z = c.eval_ref("ideal(z)");
  same(c.quotient(I, Z), c.quotient_deferred(I, Z));
  same(c.saturate(I, Z), c.saturate_deferred(I, Z));
  same(c.factor_n(mpz_class(174636000)), c.factor_n_deferred(mpz_class(174636000)));
  RemoteRef M = c.eval_ref("matrix([[2,4,4],[-6,6,12],[10,-4,-16]])");
  same(c.snf(M), c.snf_deferred(M));

  std::vector<std::string> one{"x"};
  RemoteRef line = c.ring_make_deferred("QQ", one, "lex");
  c.use_ring(line);
  RemoteRef J = c.eval_ref("ideal(x - 1)");
  WireValue sols = c.solve(J);
  CHECK(sols.as<SolutionV>().solutions.points == std::vector<std::vector<double>>{{1.0}});
  same(sols, c.solve_deferred(J));
  same(c.solve(J, 1e-6), c.solve_deferred(J, 1e-6));
  CHECK(c.use_ring(c.eval_value(ring.remote_name)).is<RingV>());
  CHECK(c.eval_raw("vars()") == "[\"t\",\"x\",\"y\",\"z\"]");
}

TEST_CASE("auto-start on first request") {
  Client c(local_config());
  CHECK_FALSE(c.connected());
  CHECK(c.eval_raw("2 + 3") == "5");
  CHECK(c.owns_worker());
  c.stop();
  CHECK(c.worker_exit_status() == 0);
}

TEST_CASE("connecting to a dead port fails after the retry cap") {
  UniqueFd probe = tcp_listen("127.0.0.1", 0);
  std::uint16_t port = local_port(probe.get());
  probe.reset();
  ClientConfig config;
  config.timeout = 400ms;
  auto start = std::chrono::steady_clock::now();
  CHECK_THROWS_AS(Client::connect("127.0.0.1", port, config), Error);
  CHECK(std::chrono::steady_clock::now() - start >= 300ms);
}

TEST_CASE("gateway gives concurrent clients distinct workers") {
  std::uint16_t base = range_base(0);
  RunningGateway g(gateway_config(base, static_cast<std::uint16_t>(base + 3)));
  auto run_client = [&] {
    Client c = Client::connect_via_gateway("127.0.0.1", g.gateway.port(), local_config());
    std::string out = c.eval_raw("1 + 1");
    std::uint16_t port = c.port();
    std::this_thread::sleep_for(100ms);  // keep both sessions alive at once
    c.stop();
    return std::make_pair(port, out);
  };
  auto a = std::async(std::launch::async, run_client);
  auto b = std::async(std::launch::async, run_client);
  auto ra = a.get();
  auto rb = b.get();
  CHECK(ra.second == "2");
  CHECK(rb.second == "2");
  CHECK(ra.first != rb.first);
}

TEST_CASE("gateway reuses a port after its worker shuts down") {
  std::uint16_t base = range_base(1);
  RunningGateway g(gateway_config(base, base));
  std::string first = ask_gateway(g.gateway.port());
  REQUIRE(first == std::to_string(base));
  CHECK(ask_gateway(g.gateway.port()) == "ERR no-ports");
  {
    Client c = Client::connect("127.0.0.1", base, local_config());
    CHECK(c.eval_raw("1+1") == "2");
    c.stop();
  }
  auto deadline = std::chrono::steady_clock::now() + 2s;
  while (!g.gateway.live_ports().empty() && std::chrono::steady_clock::now() < deadline) std::this_thread::sleep_for(20ms);
  CHECK(g.gateway.live_ports().empty());
  Client again = Client::connect_via_gateway("127.0.0.1", g.gateway.port(), local_config());
  CHECK(again.port() == base);
  CHECK(again.eval_raw("1+1") == "2");
}

TEST_CASE("gateway reaps workers that never get a client") {
  std::uint16_t base = range_base(2);
  GatewayConfig config = gateway_config(base, base);
  config.idle_timeout = 200ms;
  RunningGateway g(config);
  CHECK(ask_gateway(g.gateway.port()) == std::to_string(base));
  auto deadline = std::chrono::steady_clock::now() + 3s;
  while (!g.gateway.live_ports().empty() && std::chrono::steady_clock::now() < deadline) std::this_thread::sleep_for(20ms);
  CHECK(g.gateway.live_ports().empty());
  CHECK(ask_gateway(g.gateway.port()) == std::to_string(base));
}

TEST_CASE("gateway reports spawn failures") {
  std::uint16_t base = range_base(3);
  GatewayConfig config = gateway_config(base, base);
  config.worker_bin = "/nonexistent/worker";
  RunningGateway g(config);
  CHECK(ask_gateway(g.gateway.port()) == "ERR spawn");
  CHECK_THROWS_AS(Client::connect_via_gateway("127.0.0.1", g.gateway.port(), local_config()), Error);
}

TEST_CASE("repl prints results, error banners and exits on :quit") {
  std::string cmd = std::string("printf '1 + 1\\na = 1\\n:ls\\nu + 1\\n:vars\\n:quit\\n' | ") + CAS_REPL_BIN +
                    " --local " + CAS_WORKER_BIN + " 2>&1";
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe);
  std::string out;
  char buf[256];
  while (std::size_t n = std::fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = ::pclose(pipe);
  CHECK(WIFEXITED(status));
  CHECK(WEXITSTATUS(status) == 0);
  CHECK(out == "2\n1\n[\"a\"]\n-- error (status 1) --\n"
               "unknown-identifier: unknown identifier 'u': no binding and no ring in use contains it\n[]\n");
}
