#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "cli.hpp"

using nlohmann::json;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = fsq::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("square-divisor scan as JSON") {
    const auto r = run({"scan", "square-divisors", "--max-n", "600", "--max-p", "10000", "--format", "json"});
    CHECK(r.code == fsq::cli::kExitOk);
    const auto j = json::parse(r.out);
    CHECK(j["command"] == "scan square-divisors");
    CHECK(j["hits"].size() == 7);
    CHECK(j["complete"] == true);
    CHECK(j["consistent"] == true);
    CHECK(j["hits"][5]["n"] == 229);
    CHECK(j["hits"][5]["p"] == 613);
    CHECK(r.err.find("work items") != std::string::npos);
  }

  TEST_CASE("table as CSV") {
    const auto r = run({"table", "--max-n", "20", "--format", "csv"});
    CHECK(r.code == fsq::cli::kExitOk);
    std::istringstream lines(r.out);
    std::string line;
    std::getline(lines, line);
    CHECK(line == "n,sigma0,two_pow_omega,status,in_S,probabilistic,reference_match");
    std::vector<std::string> rows;
    while (std::getline(lines, line)) rows.push_back(line);
    REQUIRE(rows.size() == 20);
    CHECK(rows[3] == "4,3,2,complete,true,false,match");
    CHECK(rows[8] == "9,8,8,complete,false,false,match");
    CHECK(rows[17] == "18,64,64,complete,false,false,mismatch");
  }

  TEST_CASE("verify small n") {
    auto r = run({"verify", "--n", "2", "--max-p", "100"});
    CHECK(r.code == fsq::cli::kExitOk);
    auto j = json::parse(r.out);
    CHECK(j["outcome"] == "square-free");
    CHECK(j["consistent"] == true);

    r = run({"verify", "--n", "229", "--max-p", "10000", "--format", "csv"});
    CHECK(r.code == fsq::cli::kExitOk);
    CHECK(r.out == "n,outcome,witness,evidence,in_S,consistent\n229,not-square-free,613,residue-scan,true,true\n");
  }

  TEST_CASE("factor") {
    auto r = run({"factor", "--factorial-plus-one", "12", "--format", "text"});
    CHECK(r.code == fsq::cli::kExitOk);
    CHECK(r.out.find("12!+1 = 479001601 = 13^2 * 2834329") != std::string::npos);

    r = run({"factor", "8051", "--format", "csv"});
    CHECK(r.code == fsq::cli::kExitOk);
    CHECK(r.out == "factor,multiplicity,type\n83,1,prime\n97,1,prime\n");

    r = run({"factor", "523022617466601111760007224100074291200000001", "--budget-ms", "100"});
    CHECK(r.code == fsq::cli::kExitIncomplete);
    CHECK(json::parse(r.out)["factorization"]["status"] == "partial");
  }

  TEST_CASE("usage errors exit with 1") {
    CHECK(run({}).code == fsq::cli::kExitUsage);
    CHECK(run({"scan"}).code == fsq::cli::kExitUsage);
    CHECK(run({"scan", "wilson"}).code == fsq::cli::kExitUsage);
    CHECK(run({"scan", "wilson", "--max-p", "100", "--bogus"}).code == fsq::cli::kExitUsage);
    CHECK(run({"scan", "wilson", "--max-p", "100", "--workers", "0"}).code == fsq::cli::kExitUsage);
    CHECK(run({"scan", "wilson", "--max-p", "100", "--format", "xml"}).code == fsq::cli::kExitUsage);
    CHECK(run({"table", "--max-n", "0"}).code == fsq::cli::kExitUsage);
    CHECK(run({"factor"}).code == fsq::cli::kExitUsage);
    CHECK(run({"factor", "12x"}).code == fsq::cli::kExitUsage);
    CHECK(run({"factor", "5", "--factorial-plus-one", "3"}).code == fsq::cli::kExitUsage);
    CHECK(run({"scan", "brocard", "--max-n", "20001"}).code == fsq::cli::kExitUsage);
    CHECK(run({"--help"}).code == 0);
  }

  TEST_CASE("output does not depend on the worker count") {
    const std::vector<std::vector<std::string>> commands = {
        {"scan", "wilson", "--max-p", "20000"},
        {"scan", "square-divisors", "--max-n", "600", "--max-p", "10000", "--format", "csv"},
        {"scan", "brocard", "--max-n", "2000", "--format", "text"},
        {"table", "--max-n", "16"},
    };
    for (auto args : commands) {
      const auto single = run(args);
      args.insert(args.end(), {"--workers", "8"});
      const auto parallel = run(args);
      CHECK(single.code == parallel.code);
      CHECK(single.out == parallel.out);
    }
  }

  TEST_CASE("interrupt and resume match an uninterrupted run") {
    const auto path = std::filesystem::temp_directory_path() / "fsq_cli_resume.jsonl";
    std::filesystem::remove(path);
    const std::vector<std::string> base = {"scan", "wilson", "--max-p", "30000", "--checkpoint", path.string()};
    const auto clean = run({"scan", "wilson", "--max-p", "30000"});

    fsq::cli::stop_flag().store(true);
    const auto stopped = run(base);
    fsq::cli::stop_flag().store(false);
    CHECK(stopped.code == fsq::cli::kExitIncomplete);

    // Simulate a crash after a few records, mid-way through the next one.
    run(base);
    std::string contents;
    {
      std::ifstream in(path);
      contents.assign(std::istreambuf_iterator<char>(in), {});
    }
    std::size_t cut = 0;
    for (int i = 0; i < 5; ++i) cut = contents.find('\n', cut) + 1;
    {
      std::ofstream out(path, std::ios::trunc);
      out << contents.substr(0, cut + 17);
    }
    const auto resumed = run(base);
    CHECK(resumed.code == fsq::cli::kExitOk);
    CHECK(resumed.out == clean.out);
    CHECK(resumed.err.find("from checkpoint") != std::string::npos);
    std::filesystem::remove(path);
  }
}
