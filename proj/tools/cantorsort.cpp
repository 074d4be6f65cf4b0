#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "cantor/cantor.hpp"

namespace {

struct cli_options {
  std::string input = "-";
  std::string alphabet_path;
  int epsilon = 4;
  int chunk_len = 0;
  bool verify = false;
  std::string format = "text";
  std::string output;
  std::uint64_t seed = 0;

  std::string corpus = "random-uniform";
  std::size_t n = 1000;
  std::size_t len_min = 1;
  std::size_t len_max = 32;
  std::size_t prefix_len = 0;
  bool prefix_len_set = false;
  std::string algorithms = "cantor,splitwise,baseline";
};

std::vector<std::string> read_lines(const std::string& path) {
  std::ifstream file;
  std::istream* in = &std::cin;
  if (path != "-") {
    file.open(path, std::ios::binary);
    if (!file) throw cantor::config_error("cannot open input: " + path);
    in = &file;
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(*in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
  }
  return lines;
}

std::vector<std::u32string> decode_lines(const std::vector<std::string>& lines) {
  std::vector<std::u32string> out;
  out.reserve(lines.size());
  for (std::size_t i = 0; i < lines.size(); ++i) {
    auto decoded = cantor::utf8_decode(lines[i]);
    if (!decoded) {
      throw cantor::config_error("line " + std::to_string(i + 1) + ": invalid UTF-8");
    }
    out.push_back(std::move(*decoded));
  }
  return out;
}

cantor::basic_alphabet<char32_t> load_alphabet(const std::string& path) {
  if (path.empty()) return cantor::lowercase_alphabet_u32();
  std::ifstream in(path);
  if (!in) throw cantor::config_error("cannot open alphabet file: " + path);
  return cantor::parse_alphabet_file(in);
}

class output_sink {
 public:
  explicit output_sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw cantor::config_error("cannot open output: " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

int apply_chunk_len(const cli_options& opt, cantor::sort_config<char32_t>& config) {
  if (opt.chunk_len == 0) return config.radix.max_chunk_len;
  if (opt.chunk_len < 1 || opt.chunk_len > config.radix.max_chunk_len) {
    throw cantor::config_error(
        "chunk length " + std::to_string(opt.chunk_len) + " outside [1, " +
        std::to_string(config.radix.max_chunk_len) + "] for this alphabet and epsilon");
  }
  config.chunk_len = opt.chunk_len;
  return opt.chunk_len;
}

int run_sort(const cli_options& opt) {
  const auto raw = read_lines(opt.input);
  const auto decoded = decode_lines(raw);
  const auto alphabet = load_alphabet(opt.alphabet_path);
  auto config =
      cantor::make_sort_config(alphabet, cantor::derive_radix(alphabet, opt.epsilon));
  apply_chunk_len(opt, config);
  config.count_comparisons = false;
  const auto outcome = cantor::cantor_sort(decoded, config);
  if (opt.verify) {
    const auto oracle = cantor::baseline_sort(decoded, alphabet, false);
    if (oracle.permutation != outcome.permutation) {
      throw cantor::verification_error("sorted order disagrees with direct comparison");
    }
  }
  output_sink sink(opt.output);
  if (opt.format == "json") {
    nlohmann::json lines = nlohmann::json::array();
    for (const auto idx : outcome.permutation) lines.push_back(raw[idx]);
    sink.stream() << nlohmann::json{{"lines", lines}}.dump(2) << '\n';
  } else {
    for (const auto idx : outcome.permutation) sink.stream() << raw[idx] << '\n';
  }
  return 0;
}

int run_suffix(const cli_options& opt) {
  const auto raw = read_lines(opt.input);
  const std::string text = raw.empty() ? std::string() : raw.front();
  const auto decoded = cantor::utf8_decode(text);
  if (!decoded) throw cantor::config_error("line 1: invalid UTF-8");
  const auto alphabet = load_alphabet(opt.alphabet_path);
  const auto radix = cantor::derive_radix(alphabet, opt.epsilon);
  const std::u32string_view view(*decoded);
  cantor::suffix_array_result result;
  try {
    result = cantor::build_suffix_array(view, alphabet, radix);
    if (opt.verify) {
      const auto oracle = cantor::naive_suffix_array(view, alphabet);
      if (oracle.order != result.order) {
        throw cantor::verification_error("suffix order disagrees with direct comparison");
      }
    }
  } catch (const cantor::encoding_error& e) {
    throw cantor::make_encoding_error(e.symbol(), e.position(), 0);
  }
  output_sink sink(opt.output);
  if (opt.format == "json") {
    sink.stream() << nlohmann::json{{"indices", result.order}}.dump(2) << '\n';
  } else {
    for (const auto idx : result.order) sink.stream() << idx << '\n';
  }
  return 0;
}

int run_analyze(const cli_options& opt) {
  const auto alphabet = load_alphabet(opt.alphabet_path);
  const auto radix = cantor::derive_radix(alphabet, opt.epsilon);
  const auto zeta = static_cast<int>(alphabet.zeta());
  const double error_bound = cantor::rounding_error_bound(radix, zeta);
  const double tau = cantor::near_tie_threshold(radix, zeta);

  constexpr std::uint64_t probe_seed = 1086;
  constexpr std::uint64_t probe_prefixes = 1000;
  const auto at_limit =
      cantor::probe_chunk_len(alphabet, radix, radix.max_chunk_len, probe_prefixes, probe_seed);
  const auto past_limit = cantor::probe_chunk_len(alphabet, radix, radix.max_chunk_len + 1,
                                                  probe_prefixes, probe_seed);

  output_sink sink(opt.output);
  auto& out = sink.stream();
  if (opt.format == "json") {
    nlohmann::json gaps = nlohmann::json::array();
    for (int l = 0; l < radix.max_chunk_len; ++l) {
      gaps.push_back(cantor::min_gap(radix, zeta, l));
    }
    auto probe_json = [](const cantor::probe_report& p) {
      return nlohmann::json{{"chunk_len", p.chunk_len},
                            {"trials", p.trials},
                            {"violations", p.violations},
                            {"pass", p.violations == 0}};
    };
    out << nlohmann::json{{"alphabet_size", alphabet.size()},
                          {"zeta", zeta},
                          {"epsilon", radix.epsilon},
                          {"radix", radix.radix},
                          {"max_chunk_len", radix.max_chunk_len},
                          {"rounding_error_bound", error_bound},
                          {"near_tie_threshold", tau},
                          {"min_gap", gaps},
                          {"probes", {probe_json(at_limit), probe_json(past_limit)}}}
               .dump(2)
        << '\n';
  } else {
    out << std::setprecision(17);
    out << "alphabet_size: " << alphabet.size() << '\n';
    out << "zeta: " << zeta << '\n';
    out << "epsilon: " << radix.epsilon << '\n';
    out << "radix: " << radix.radix << '\n';
    out << "max_chunk_len: " << radix.max_chunk_len << '\n';
    out << "rounding_error_bound: " << error_bound << '\n';
    out << "near_tie_threshold: " << tau << '\n';
    for (int l = 0; l < radix.max_chunk_len; ++l) {
      out << "min_gap[" << l << "]: " << cantor::min_gap(radix, zeta, l) << '\n';
    }
    auto print_probe = [&out](const cantor::probe_report& p) {
      out << "probe[chunk_len=" << p.chunk_len
          << "]: " << (p.violations == 0 ? "pass" : "fail") << " (" << p.violations
          << " violations in " << p.trials << " trials)\n";
    };
    print_probe(at_limit);
    print_probe(past_limit);
  }
  return 0;
}

std::vector<cantor::algorithm_spec> parse_algorithms(const std::string& csv) {
  std::vector<cantor::algorithm_spec> out;
  std::stringstream ss(csv);
  std::string token;
  while (std::getline(ss, token, ',')) {
    if (token.empty()) continue;
    cantor::algorithm_spec algo;
    if (token == "cantor") {
      algo.which = cantor::algorithm_spec::kind::cantor;
    } else if (token == "splitwise") {
      algo.which = cantor::algorithm_spec::kind::splitwise;
    } else if (token == "baseline") {
      algo.which = cantor::algorithm_spec::kind::baseline;
    } else {
      throw cantor::config_error("unknown algorithm: " + token);
    }
    out.push_back(algo);
  }
  if (out.empty()) throw cantor::config_error("no algorithms selected");
  return out;
}

std::string environment_note() {
#if defined(__VERSION__)
  return std::string("cxx=") + __VERSION__;
#else
  return "cxx=unknown";
#endif
}

int run_bench(const cli_options& opt) {
  const auto alphabet = load_alphabet(opt.alphabet_path);
  auto config =
      cantor::make_sort_config(alphabet, cantor::derive_radix(alphabet, opt.epsilon));
  const int effective_chunk_len = apply_chunk_len(opt, config);

  cantor::corpus_spec spec;
  const auto kind = cantor::corpus_kind_from_string(opt.corpus);
  if (!kind) throw cantor::config_error("unknown corpus kind: " + opt.corpus);
  spec.kind = *kind;
  spec.n = opt.n;
  spec.len_min = opt.len_min;
  spec.len_max = opt.len_max;
  spec.prefix_len = opt.prefix_len;
  spec.seed = opt.seed;
  if (spec.kind == cantor::corpus_kind::near_tie_adversarial && !opt.prefix_len_set) {
    spec.prefix_len = static_cast<std::size_t>(effective_chunk_len - 1);
  }
  if (spec.kind == cantor::corpus_kind::dictionary_file) {
    if (opt.input == "-") {
      throw cantor::config_error("dictionary-file corpus needs an input path");
    }
    spec.path = opt.input;
  }

  const auto corpus = cantor::generate_corpus(spec, alphabet);
  const auto algorithms = parse_algorithms(opt.algorithms);
  const auto report =
      cantor::run_benchmark(corpus, algorithms, config, spec, environment_note());

  output_sink sink(opt.output);
  if (opt.format == "json") {
    sink.stream() << cantor::to_json(report).dump(2) << '\n';
  } else {
    sink.stream() << cantor::to_csv(report);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Order-preserving float keys for strings: sorting, suffix arrays, "
      "precision analysis, benchmarks"};
  app.require_subcommand(1);
  cli_options opt;

  const auto add_common = [&opt](CLI::App* cmd) {
    cmd->add_option("--alphabet", opt.alphabet_path,
                    "Alphabet file, one symbol per line (default: a-z)");
    cmd->add_option("--epsilon", opt.epsilon, "Radix margin above the alphabet size")
        ->capture_default_str();
    cmd->add_option("--format", opt.format, "Output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    cmd->add_option("--output", opt.output, "Write output to this path instead of stdout");
  };

  auto* sort_cmd = app.add_subcommand("sort", "Sort newline-delimited strings");
  sort_cmd->add_option("input", opt.input, "Input path, - for standard input");
  add_common(sort_cmd);
  sort_cmd->add_option("--chunk-len", opt.chunk_len, "Symbols per key chunk");
  sort_cmd->add_flag("--verify", opt.verify, "Cross-check against direct comparison");

  auto* suffix_cmd =
      app.add_subcommand("suffix", "Suffix array of the first input line");
  suffix_cmd->add_option("input", opt.input, "Input path, - for standard input");
  add_common(suffix_cmd);
  suffix_cmd->add_flag("--verify", opt.verify, "Cross-check against direct comparison");

  auto* analyze_cmd =
      app.add_subcommand("analyze", "Report the precision budget for a configuration");
  add_common(analyze_cmd);

  auto* bench_cmd = app.add_subcommand("bench", "Time and count the sorters on a corpus");
  bench_cmd->add_option("input", opt.input, "Dictionary path for --corpus dictionary-file");
  add_common(bench_cmd);
  bench_cmd->add_option("--chunk-len", opt.chunk_len, "Symbols per key chunk");
  bench_cmd->add_option("--seed", opt.seed, "Corpus generator seed")->capture_default_str();
  bench_cmd
      ->add_option("--corpus", opt.corpus,
                   "Corpus kind: random-uniform, shared-prefix, dictionary-file, "
                   "all-equal, near-tie-adversarial")
      ->capture_default_str();
  bench_cmd->add_option("--n", opt.n, "Corpus size")->capture_default_str();
  bench_cmd->add_option("--len-min", opt.len_min, "Minimum string length")
      ->capture_default_str();
  bench_cmd->add_option("--len-max", opt.len_max, "Maximum string length")
      ->capture_default_str();
  auto* prefix_opt = bench_cmd->add_option(
      "--prefix-len", opt.prefix_len,
      "Shared prefix length (shared-prefix) or mismatch position (near-tie-adversarial)");
  bench_cmd
      ->add_option("--algorithms", opt.algorithms,
                   "Comma-separated subset of cantor,splitwise,baseline")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }
  opt.prefix_len_set = prefix_opt->count() > 0;

  try {
    if (sort_cmd->parsed()) return run_sort(opt);
    if (suffix_cmd->parsed()) return run_suffix(opt);
    if (analyze_cmd->parsed()) return run_analyze(opt);
    if (bench_cmd->parsed()) return run_bench(opt);
  } catch (const cantor::encoding_error& e) {
    if (e.item() != cantor::encoding_error::no_item) {
      std::cerr << "error: line " << (e.item() + 1) << ": symbol "
                << cantor::detail::describe_symbol(e.symbol()) << " at position "
                << e.position() << " is not in the alphabet\n";
    } else {
      std::cerr << "error: " << e.what() << '\n';
    }
    return 2;
  } catch (const cantor::verification_error& e) {
    std::cerr << "verification failed: " << e.what() << '\n';
    return 1;
  } catch (const cantor::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}
