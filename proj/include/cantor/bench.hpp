#ifndef CANTOR_BENCH_HPP
#define CANTOR_BENCH_HPP

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "cantor/alphabet.hpp"
#include "cantor/error.hpp"
#include "cantor/keying.hpp"
#include "cantor/sorting.hpp"
#include "cantor/utf8.hpp"

namespace cantor {

enum class corpus_kind {
  random_uniform,
  shared_prefix,
  dictionary_file,
  all_equal,
  near_tie_adversarial,
};

inline const char* to_string(corpus_kind kind) {
  switch (kind) {
    case corpus_kind::random_uniform: return "random-uniform";
    case corpus_kind::shared_prefix: return "shared-prefix";
    case corpus_kind::dictionary_file: return "dictionary-file";
    case corpus_kind::all_equal: return "all-equal";
    case corpus_kind::near_tie_adversarial: return "near-tie-adversarial";
  }
  return "unknown";
}

inline std::optional<corpus_kind> corpus_kind_from_string(std::string_view name) {
  if (name == "random-uniform") return corpus_kind::random_uniform;
  if (name == "shared-prefix") return corpus_kind::shared_prefix;
  if (name == "dictionary-file") return corpus_kind::dictionary_file;
  if (name == "all-equal") return corpus_kind::all_equal;
  if (name == "near-tie-adversarial") return corpus_kind::near_tie_adversarial;
  return std::nullopt;
}

struct corpus_spec {
  corpus_kind kind = corpus_kind::random_uniform;
  std::size_t n = 0;
  std::size_t len_min = 0;
  std::size_t len_max = 0;
  /// shared-prefix: length of the common prefix.
  /// near-tie-adversarial: position of the adjacent-rank mismatch.
  std::size_t prefix_len = 0;
  std::uint64_t seed = 0;
  /// dictionary-file only: source path.
  std::string path;
};

namespace detail {

/// Unbiased draw from [0, n); rejection keeps it independent of the
/// standard library's distribution implementation.
inline std::uint64_t bounded_random(std::mt19937_64& rng, std::uint64_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % n;
}

template <class C>
std::basic_string<C> random_string(std::mt19937_64& rng, const basic_alphabet<C>& alphabet,
                                   std::size_t len) {
  std::basic_string<C> s;
  s.reserve(len);
  for (std::size_t i = 0; i < len; ++i) {
    s.push_back(alphabet.symbol_at(
        static_cast<std::uint32_t>(1 + bounded_random(rng, alphabet.size()))));
  }
  return s;
}

inline std::size_t random_len(std::mt19937_64& rng, const corpus_spec& spec) {
  return spec.len_min + static_cast<std::size_t>(bounded_random(
                            rng, spec.len_max - spec.len_min + 1));
}

template <class C>
std::basic_string<C> line_to_string(const std::string& line, std::size_t line_no) {
  if constexpr (sizeof(C) == 1) {
    return std::basic_string<C>(line.begin(), line.end());
  } else {
    auto decoded = utf8_decode(line);
    if (!decoded) {
      throw config_error("dictionary line " + std::to_string(line_no) +
                         ": invalid UTF-8");
    }
    return *decoded;
  }
}

}  // namespace detail

/// Deterministic corpus generation; identical spec + seed gives an
/// identical corpus.
///
/// near-tie-adversarial emits pairs straddling the smallest legitimate
/// key gap: a shared random prefix of length prefix_len, then symbols of
/// adjacent rank r / r+1, with the lower string padded out to len_max by
/// the maximal-rank symbol. Sorting such pairs exercises the
/// monotonicity gap at its tightest.
template <class C>
std::vector<std::basic_string<C>> generate_corpus(const corpus_spec& spec,
                                                  const basic_alphabet<C>& alphabet) {
  if (spec.len_min > spec.len_max) {
    throw config_error("len_min exceeds len_max");
  }
  std::vector<std::basic_string<C>> out;
  out.reserve(spec.n);
  std::mt19937_64 rng(spec.seed);
  switch (spec.kind) {
    case corpus_kind::random_uniform: {
      for (std::size_t i = 0; i < spec.n; ++i) {
        out.push_back(detail::random_string(rng, alphabet, detail::random_len(rng, spec)));
      }
      break;
    }
    case corpus_kind::shared_prefix: {
      const auto prefix = detail::random_string(rng, alphabet, spec.prefix_len);
      for (std::size_t i = 0; i < spec.n; ++i) {
        out.push_back(prefix +
                      detail::random_string(rng, alphabet, detail::random_len(rng, spec)));
      }
      break;
    }
    case corpus_kind::dictionary_file: {
      std::ifstream in(spec.path);
      if (!in) {
        throw config_error("cannot open dictionary file: " + spec.path);
      }
      std::string line;
      std::size_t line_no = 0;
      while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        out.push_back(detail::line_to_string<C>(line, line_no));
        if (spec.n != 0 && out.size() == spec.n) break;
      }
      break;
    }
    case corpus_kind::all_equal: {
      const auto s = detail::random_string(rng, alphabet, spec.len_min);
      out.assign(spec.n, s);
      break;
    }
    case corpus_kind::near_tie_adversarial: {
      if (alphabet.size() < 2) {
        throw config_error("near-tie-adversarial needs at least two symbols");
      }
      if (spec.prefix_len + 1 > spec.len_max) {
        throw config_error("near-tie-adversarial needs len_max > prefix_len");
      }
      while (out.size() < spec.n) {
        const auto prefix = detail::random_string(rng, alphabet, spec.prefix_len);
        const auto r = static_cast<std::uint32_t>(
            1 + detail::bounded_random(rng, alphabet.size() - 1));
        auto low = prefix;
        low.push_back(alphabet.symbol_at(r));
        low.append(spec.len_max - spec.prefix_len - 1, alphabet.symbol_at(alphabet.zeta()));
        auto high = prefix;
        high.push_back(alphabet.symbol_at(r + 1));
        out.push_back(std::move(low));
        if (out.size() < spec.n) out.push_back(std::move(high));
      }
      break;
    }
  }
  return out;
}

struct probe_report {
  int chunk_len = 0;
  std::uint64_t trials = 0;
  std::uint64_t violations = 0;
};

/// Stress-tests key ordering at the precision edge for strings up to
/// chunk_len symbols. For every mismatch position l and every adjacent
/// rank pair (r, r+1), builds the tightest-gap pair: a shared random
/// prefix of length l, then rank r padded to chunk_len with the maximal
/// symbol versus rank r+1 alone. Counts pairs whose float keys fail to
/// reproduce that order.
template <class C>
probe_report probe_chunk_len(const basic_alphabet<C>& alphabet, const radix_config& config,
                             int chunk_len, std::uint64_t prefixes_per_case,
                             std::uint64_t seed) {
  if (chunk_len < 1) throw config_error("chunk length must be at least 1");
  probe_report report;
  report.chunk_len = chunk_len;
  std::mt19937_64 rng(seed);
  const auto zeta = static_cast<std::uint32_t>(alphabet.zeta());
  for (int l = 0; l < chunk_len; ++l) {
    for (std::uint32_t r = 1; r < zeta; ++r) {
      for (std::uint64_t t = 0; t < prefixes_per_case; ++t) {
        const auto prefix =
            detail::random_string(rng, alphabet, static_cast<std::size_t>(l));
        auto low = prefix;
        low.push_back(alphabet.symbol_at(r));
        low.append(static_cast<std::size_t>(chunk_len - l - 1), alphabet.symbol_at(zeta));
        auto high = prefix;
        high.push_back(alphabet.symbol_at(r + 1));
        ++report.trials;
        if (!(key(std::basic_string_view<C>(low), alphabet, config) <
              key(std::basic_string_view<C>(high), alphabet, config))) {
          ++report.violations;
        }
      }
    }
  }
  return report;
}

struct algorithm_spec {
  enum class kind { cantor, splitwise, baseline };
  kind which = kind::cantor;
  int chunk_len = 0;  // splitwise only; 0 means the config default
};

struct run_record {
  std::string algorithm;
  double wall_time_s = 0.0;
  std::uint64_t comparisons = 0;
  std::uint64_t compare_units = 0;
  std::uint64_t preprocess_symbols = 0;
  std::uint64_t aux_keys = 0;
};

struct bench_report {
  corpus_spec corpus;
  std::string environment;
  std::vector<run_record> runs;
};

/// Runs every selected algorithm over the same corpus, cross-checks the
/// permutations for equality, and collects instrumented counts. A
/// permutation mismatch is a correctness failure and aborts the report.
template <class C>
bench_report run_benchmark(const std::vector<std::basic_string<C>>& corpus,
                           const std::vector<algorithm_spec>& algorithms,
                           const sort_config<C>& config,
                           const corpus_spec& spec = {}, std::string environment = {}) {
  bench_report report;
  report.corpus = spec;
  report.environment = std::move(environment);
  std::vector<std::size_t> reference;
  std::string reference_name;
  for (const auto& algo : algorithms) {
    run_record rec;
    sort_outcome outcome;
    const auto t0 = std::chrono::steady_clock::now();
    switch (algo.which) {
      case algorithm_spec::kind::cantor:
        rec.algorithm = "cantor";
        outcome = cantor_sort(corpus, config);
        break;
      case algorithm_spec::kind::splitwise: {
        const int k = algo.chunk_len > 0 ? algo.chunk_len : config.radix.max_chunk_len;
        rec.algorithm = "splitwise(k=" + std::to_string(k) + ")";
        outcome = splitwise_sort(corpus, k, config);
        break;
      }
      case algorithm_spec::kind::baseline:
        rec.algorithm = "baseline";
        outcome = baseline_sort(corpus, config.alphabet, config.count_comparisons);
        break;
    }
    const auto t1 = std::chrono::steady_clock::now();
    rec.wall_time_s = std::chrono::duration<double>(t1 - t0).count();
    rec.comparisons = outcome.comparisons;
    rec.compare_units = outcome.compare_units;
    rec.preprocess_symbols = outcome.preprocess_symbols;
    rec.aux_keys = outcome.aux_keys;
    if (reference.empty() && report.runs.empty()) {
      reference = outcome.permutation;
      reference_name = rec.algorithm;
    } else if (outcome.permutation != reference) {
      throw verification_error("permutation mismatch: " + rec.algorithm +
                               " disagrees with " + reference_name);
    }
    report.runs.push_back(std::move(rec));
  }
  return report;
}

inline nlohmann::json to_json(const bench_report& report) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& r : report.runs) {
    runs.push_back({
        {"algorithm", r.algorithm},
        {"wall_time_s", r.wall_time_s},
        {"comparisons", r.comparisons},
        {"compare_units", r.compare_units},
        {"preprocess_symbols", r.preprocess_symbols},
        {"aux_keys", r.aux_keys},
    });
  }
  return nlohmann::json{
      {"corpus",
       {
           {"kind", to_string(report.corpus.kind)},
           {"n", report.corpus.n},
           {"len_min", report.corpus.len_min},
           {"len_max", report.corpus.len_max},
           {"prefix_len", report.corpus.prefix_len},
           {"seed", report.corpus.seed},
           {"path", report.corpus.path},
       }},
      {"environment", report.environment},
      {"runs", runs},
  };
}

inline std::string to_csv(const bench_report& report) {
  std::ostringstream out;
  out << "algorithm,wall_time_s,comparisons,compare_units,preprocess_symbols,aux_keys\n";
  for (const auto& r : report.runs) {
    out << r.algorithm << ',' << r.wall_time_s << ',' << r.comparisons << ','
        << r.compare_units << ',' << r.preprocess_symbols << ',' << r.aux_keys << '\n';
  }
  return out.str();
}

}  // namespace cantor

#endif  // CANTOR_BENCH_HPP
