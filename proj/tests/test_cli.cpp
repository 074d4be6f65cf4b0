#include <catch2/catch_amalgamated.hpp>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

struct run_result {
  int exit_code = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

run_result run_cli(const std::string& args, const std::string& stdin_data = "") {
  static int counter = 0;
  const auto tag = std::to_string(++counter);
  const auto dir = fs::temp_directory_path();
  const auto in_path = dir / ("cantor_cli_in_" + tag + ".txt");
  const auto out_path = dir / ("cantor_cli_out_" + tag + ".txt");
  const auto err_path = dir / ("cantor_cli_err_" + tag + ".txt");
  {
    std::ofstream f(in_path, std::ios::binary);
    f << stdin_data;
  }
  const std::string cmd = std::string(CANTORSORT_BIN) + " " + args + " < " +
                          in_path.string() + " > " + out_path.string() + " 2> " +
                          err_path.string();
  const int status = std::system(cmd.c_str());
  run_result r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_path);
  r.err = slurp(err_path);
  fs::remove(in_path);
  fs::remove(out_path);
  fs::remove(err_path);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  const auto path = fs::temp_directory_path() / name;
  std::ofstream f(path, std::ios::binary);
  f << content;
  return path;
}

}  // namespace

TEST_CASE("sort orders stdin lines") {
  const auto r = run_cli("sort -", "b\nab\naa\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "aa\nab\nb\n");
}

TEST_CASE("sort of empty input is empty") {
  const auto r = run_cli("sort -", "");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
}

TEST_CASE("sort reports the offending line for foreign symbols") {
  const auto r = run_cli("sort -", "ok\nb@d\n");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(r.err.find("'@'") != std::string::npos);
}

TEST_CASE("sort rejects invalid utf8 with the line number") {
  const auto r = run_cli("sort -", "fine\n\xFF\xFE\n");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("line 2") != std::string::npos);
  CHECK(r.err.find("UTF-8") != std::string::npos);
}

TEST_CASE("sort verifies a dictionary against the direct oracle") {
  const auto r = run_cli(std::string("sort ") + WORDS_FILE + " --verify");
  CHECK(r.exit_code == 0);
  std::istringstream lines(r.out);
  std::string prev, cur;
  std::size_t count = 0;
  while (std::getline(lines, cur)) {
    if (count > 0) REQUIRE(prev <= cur);
    prev = cur;
    ++count;
  }
  CHECK(count >= 10000);
}

TEST_CASE("sort emits json when asked") {
  const auto r = run_cli("sort - --format json", "b\na\n");
  CHECK(r.exit_code == 0);
  const auto json = nlohmann::json::parse(r.out);
  CHECK(json.at("lines") == nlohmann::json::array({"a", "b"}));
}

TEST_CASE("sort honors a custom alphabet file") {
  const auto alphabet = write_temp("cantor_cli_alpha.txt", "# reversed pair\nb\na\n");
  const auto r = run_cli("sort - --alphabet " + alphabet.string(), "a\nb\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "b\na\n");
  fs::remove(alphabet);
}

TEST_CASE("sort writes to a file with --output") {
  const auto out_file = fs::temp_directory_path() / "cantor_cli_sorted.txt";
  const auto r = run_cli("sort - --output " + out_file.string(), "c\nb\na\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out.empty());
  CHECK(slurp(out_file) == "a\nb\nc\n");
  fs::remove(out_file);
}

TEST_CASE("chunk length overrides are validated") {
  CHECK(run_cli("sort - --chunk-len 4", "b\na\n").exit_code == 0);
  const auto r = run_cli("sort - --chunk-len 9", "b\na\n");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("chunk length") != std::string::npos);
}

TEST_CASE("suffix prints start indices in sorted order") {
  const auto r = run_cli("suffix -", "banana\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "5\n3\n1\n0\n4\n2\n");
}

TEST_CASE("suffix of a single symbol") {
  const auto r = run_cli("suffix -", "a\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "0\n");
}

TEST_CASE("suffix verify succeeds despite key near ties") {
  const auto r = run_cli("suffix - --verify", "aaaaaaaaaaaaaaaa\n");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("15\n14\n", 0) == 0);
}

TEST_CASE("suffix emits json indices") {
  const auto r = run_cli("suffix - --format json", "ba\n");
  CHECK(r.exit_code == 0);
  const auto json = nlohmann::json::parse(r.out);
  CHECK(json.at("indices") == nlohmann::json::array({1, 0}));
}

TEST_CASE("analyze reports the default precision budget") {
  const auto r = run_cli("analyze");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("alphabet_size: 26\n") != std::string::npos);
  CHECK(r.out.find("zeta: 26\n") != std::string::npos);
  CHECK(r.out.find("epsilon: 4\n") != std::string::npos);
  CHECK(r.out.find("radix: 30\n") != std::string::npos);
  CHECK(r.out.find("max_chunk_len: 8\n") != std::string::npos);
  CHECK(r.out.find("min_gap[0]: ") != std::string::npos);
  CHECK(r.out.find("min_gap[7]: ") != std::string::npos);
  CHECK(r.out.find("min_gap[8]: ") == std::string::npos);
  CHECK(r.out.find("rounding_error_bound: ") != std::string::npos);
  CHECK(r.out.find("near_tie_threshold: ") != std::string::npos);
  CHECK(r.out.find("probe[chunk_len=8]: pass") != std::string::npos);
  CHECK(r.out.find("probe[chunk_len=9]: ") != std::string::npos);
}

TEST_CASE("analyze is deterministic") {
  const auto a = run_cli("analyze");
  const auto b = run_cli("analyze");
  CHECK(a.out == b.out);
}

TEST_CASE("analyze with epsilon 2 reports radix 28") {
  const auto r = run_cli("analyze --epsilon 2");
  CHECK(r.exit_code == 0);
  CHECK(r.out.find("radix: 28\n") != std::string::npos);
}

TEST_CASE("analyze rejects epsilon 1 citing the strict bound") {
  const auto r = run_cli("analyze --epsilon 1");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("zeta + 1") != std::string::npos);
}

TEST_CASE("analyze emits json") {
  const auto r = run_cli("analyze --format json");
  CHECK(r.exit_code == 0);
  const auto json = nlohmann::json::parse(r.out);
  CHECK(json.at("radix") == 30);
  CHECK(json.at("max_chunk_len") == 8);
  CHECK(json.at("min_gap").size() == 8);
  REQUIRE(json.at("probes").size() == 2);
  CHECK(json.at("probes")[0].at("chunk_len") == 8);
  CHECK(json.at("probes")[0].at("pass") == true);
  CHECK(json.at("probes")[1].at("chunk_len") == 9);
}

TEST_CASE("bench on an empty corpus yields a valid report") {
  const auto r = run_cli("bench --corpus random-uniform --n 0 --format json");
  CHECK(r.exit_code == 0);
  const auto json = nlohmann::json::parse(r.out);
  CHECK(json.at("corpus").at("n") == 0);
  CHECK(json.at("runs").size() == 3);
}

TEST_CASE("bench default run reports cantor and baseline") {
  const auto r = run_cli("bench --n 50 --format json --seed 4");
  CHECK(r.exit_code == 0);
  const auto json = nlohmann::json::parse(r.out);
  bool saw_cantor = false, saw_baseline = false;
  for (const auto& run : json.at("runs")) {
    const auto name = run.at("algorithm").get<std::string>();
    if (name == "cantor") saw_cantor = true;
    if (name == "baseline") saw_baseline = true;
  }
  CHECK(saw_cantor);
  CHECK(saw_baseline);
}

TEST_CASE("bench json is byte identical across runs up to timing") {
  const std::string flags = "bench --n 200 --len-min 0 --len-max 24 --seed 99 --format json";
  auto a = nlohmann::json::parse(run_cli(flags).out);
  auto b = nlohmann::json::parse(run_cli(flags).out);
  for (auto* json : {&a, &b}) {
    for (auto& run : json->at("runs")) run.erase("wall_time_s");
  }
  CHECK(a.dump() == b.dump());
}

TEST_CASE("bench csv is the text format") {
  const auto r = run_cli("bench --n 20 --seed 7 --format text");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("algorithm,wall_time_s,", 0) == 0);
}

TEST_CASE("bench near tie corpus defaults its mismatch position to the budget edge") {
  const auto r = run_cli(
      "bench --corpus near-tie-adversarial --n 100 --len-max 16 --seed 5 --format json");
  CHECK(r.exit_code == 0);
  const auto json = nlohmann::json::parse(r.out);
  CHECK(json.at("corpus").at("prefix_len") == 7);
}

TEST_CASE("bench dictionary corpus requires a path") {
  const auto r = run_cli("bench --corpus dictionary-file --format json");
  CHECK(r.exit_code == 2);
  const auto ok =
      run_cli(std::string("bench ") + WORDS_FILE +
              " --corpus dictionary-file --n 2000 --format json");
  CHECK(ok.exit_code == 0);
  const auto json = nlohmann::json::parse(ok.out);
  CHECK(json.at("corpus").at("kind") == "dictionary-file");
  CHECK(json.at("runs").size() == 3);
}

TEST_CASE("cli usage errors exit with code 2") {
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("sort - --format yaml", "a\n").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);
  CHECK(run_cli("sort --help").exit_code == 0);
}

TEST_CASE("sort input file that does not exist is an input error") {
  const auto r = run_cli("sort /nonexistent/input.txt");
  CHECK(r.exit_code == 2);
  CHECK(r.err.find("cannot open input") != std::string::npos);
}
