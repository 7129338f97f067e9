#include <doctest.h>

#include <sys/socket.h>

#include <thread>

#include "cas/net.hpp"
#include "cas/protocol.hpp"
#include "cas/session.hpp"
#include "support/generators.hpp"

using namespace cas;

namespace {

struct SocketPair {
  UniqueFd a;
  UniqueFd b;
  SocketPair() {
    int fds[2];
    REQUIRE(::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) == 0);
    a.reset(fds[0]);
    b.reset(fds[1]);
  }
};

}  // namespace

TEST_CASE("frame encoding is a big-endian length prefix") {
  CHECK(encode_frame("1 + 1") == std::string("\0\0\0\x05" "1 + 1", 9));
  CHECK(encode_frame("") == std::string(4, '\0'));
  std::string big(300, 'a');
  CHECK(encode_frame(big).substr(0, 4) == std::string("\0\0\x01\x2c", 4));
}

TEST_CASE("response layout") {
  Response r = Response::make(0, "2");
  CHECK(encode_response(r) == "0 1\n2");
  Response multi = Response::make(1, "first\nsecond");
  CHECK(encode_response(multi) == "1 2\nfirst\nsecond");
  CHECK(decode_response("1 2\nfirst\nsecond") == multi);
  CHECK(decode_response("0 1\n") == Response::make(0, ""));
  CHECK(decode_response("3 0").lines.empty());
  CHECK_THROWS_AS(decode_response("0 2\nonly"), Error);
  CHECK_THROWS_AS(decode_response("zero one\nx"), Error);
  CHECK_THROWS_AS(decode_response(""), Error);
}

TEST_CASE("property: response encode/decode round trip") {
  testing::Rng rng(101);
  for (int i = 0; i < 200; ++i) {
    Response r = Response::make(static_cast<int>(testing::uniform(rng, 0, 3)), testing::random_text(rng));
    CHECK(decode_response(encode_response(r)) == r);
  }
}

TEST_CASE("frames survive a stream in order") {
  SocketPair p;
  std::vector<std::string> payloads{"a", std::string(100000, 'x'), "line1\nline2", ""};
  std::thread writer([&] {
    for (const auto& s : payloads) write_frame(p.a.get(), s);
    p.a.reset();
  });
  CHECK(read_frame(p.b.get()).data == "a");
  CHECK(read_frame(p.b.get()).data.size() == 100000);
  CHECK(read_frame(p.b.get()).data == "line1\nline2");
  CHECK(read_frame(p.b.get()).kind == Frame::Kind::shutdown);
  CHECK(read_frame(p.b.get()).kind == Frame::Kind::end_of_stream);
  writer.join();
}

TEST_CASE("oversized frames are skipped without losing sync") {
  SocketPair p;
  std::thread writer([&] {
    write_frame(p.a.get(), std::string(64, 'z'));
    write_frame(p.a.get(), "next");
  });
  CHECK(read_frame(p.b.get(), 16).kind == Frame::Kind::oversized);
  CHECK(read_frame(p.b.get(), 16).data == "next");
  writer.join();
}

TEST_CASE("utf-8 validation") {
  CHECK(valid_utf8("plain ascii"));
  CHECK(valid_utf8("x \xe2\x88\x82 y"));
  CHECK_FALSE(valid_utf8("\xff"));
  CHECK_FALSE(valid_utf8("\xc0\xaf"));        // overlong
  CHECK_FALSE(valid_utf8("\xed\xa0\x80"));    // surrogate
  CHECK_FALSE(valid_utf8("\xe2\x88"));        // truncated
}

TEST_CASE("serve_connection answers in request order and stops on shutdown") {
  SocketPair p;
  Session session("/tmp");
  int exit_code = -1;
  std::thread server([&] { exit_code = serve_connection(p.b.get(), session); });
  auto ask = [&](std::string_view src) {
    write_frame(p.a.get(), src);
    return decode_response(read_frame(p.a.get()).data);
  };
  CHECK(ask("1 + 1") == Response::make(0, "2"));
  CHECK(ask("a = 1").text() == "1");
  CHECK(ask("a").text() == "1");
  CHECK(ask("(1 + ").status == 2);
  write_frame(p.a.get(), "\xff\xfe");
  CHECK(decode_response(read_frame(p.a.get()).data).status == 3);
  CHECK(ask("a + 1").text() == "2");
  write_frame(p.a.get(), "");
  server.join();
  CHECK(exit_code == 0);
  p.b.reset();
  CHECK(read_frame(p.a.get()).kind == Frame::Kind::end_of_stream);
}
