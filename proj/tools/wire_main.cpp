#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cas/wire.hpp"
#include "cas/wire_json.hpp"

namespace {

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty()) lines.push_back(line);
  }
  return lines;
}

nlohmann::json dump(const std::vector<std::string>& lines) {
  auto out = nlohmann::json::array();
  for (const auto& line : lines) {
    out.push_back({{"text", line}, {"value", cas::to_json(cas::parse(line, cas::kernel_registry()))}});
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Canonical wire text utilities"};
  app.require_subcommand(1);

  std::string corpus;
  std::string expected;
  auto* dump_cmd = app.add_subcommand("dump", "Print the JSON expectation for a corpus (one text per line)");
  dump_cmd->add_option("corpus", corpus)->required()->check(CLI::ExistingFile);
  auto* check_cmd = app.add_subcommand("check", "Compare a corpus against its JSON expectation");
  check_cmd->add_option("corpus", corpus)->required()->check(CLI::ExistingFile);
  check_cmd->add_option("expected", expected)->required()->check(CLI::ExistingFile);
  app.add_subcommand("canon", "Read texts on stdin, print their canonical form");
  CLI11_PARSE(app, argc, argv);

  try {
    if (*dump_cmd) {
      std::cout << dump(read_lines(corpus)).dump(1) << "\n";
      return 0;
    }
    if (*check_cmd) {
      auto actual = dump(read_lines(corpus));
      std::ifstream in(expected);
      auto want = nlohmann::json::parse(in);
      if (actual.size() != want.size()) {
        std::cerr << "entry count differs: " << actual.size() << " vs " << want.size() << "\n";
        return 1;
      }
      int bad = 0;
      for (std::size_t i = 0; i < actual.size(); ++i) {
        if (actual[i] != want[i]) {
          std::cerr << "line " << i + 1 << " differs: " << actual[i]["text"] << "\n";
          ++bad;
        }
      }
      return bad == 0 ? 0 : 1;
    }
    for (std::string line; std::getline(std::cin, line);) {
      if (line.empty()) continue;
      try {
        std::cout << cas::serialize(cas::parse(line, cas::kernel_registry())) << "\n";
      } catch (const std::exception& e) {
        std::cout << "error: " << e.what() << "\n";
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "cas-wire: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
