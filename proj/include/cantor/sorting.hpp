#ifndef CANTOR_SORTING_HPP
#define CANTOR_SORTING_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cantor/alphabet.hpp"
#include "cantor/error.hpp"
#include "cantor/keying.hpp"

namespace cantor {

template <class C>
struct sort_config {
  basic_alphabet<C> alphabet;
  radix_config radix;
  int chunk_len = 0;  // key split size; defaults to the full precision budget
  bool count_comparisons = true;
};

template <class C>
sort_config<C> make_sort_config(basic_alphabet<C> alphabet, const radix_config& radix) {
  return sort_config<C>{std::move(alphabet), radix, radix.max_chunk_len, true};
}

struct sort_outcome {
  /// Input indices in sorted order; applying it yields a non-decreasing
  /// sequence. Ties (identical strings) keep input order.
  std::vector<std::size_t> permutation;
  /// Comparator invocations during the sort phase.
  std::uint64_t comparisons = 0;
  /// Chunk values (key sorts) or symbols (baseline) inspected across all
  /// comparator invocations.
  std::uint64_t compare_units = 0;
  /// Symbols run through the key recurrence in the preprocessing phase.
  std::uint64_t preprocess_symbols = 0;
  /// Key values held alongside the input, the auxiliary space.
  std::uint64_t aux_keys = 0;
  /// Comparator invocations that fell into the near-tie band (cached-key
  /// sorting only; exact key paths never need the fallback).
  std::uint64_t near_tie_fallbacks = 0;
};

namespace detail {

/// Stable bottom-up merge sort over an index permutation. At most
/// n * ceil(log2 n) comparator calls; ties keep the left (earlier) index.
template <class Less>
std::vector<std::size_t> merge_sort_permutation(std::size_t n, Less&& less) {
  std::vector<std::size_t> src(n), dst(n);
  std::iota(src.begin(), src.end(), std::size_t{0});
  for (std::size_t width = 1; width < n; width *= 2) {
    for (std::size_t lo = 0; lo < n; lo += 2 * width) {
      const std::size_t mid = std::min(lo + width, n);
      const std::size_t hi = std::min(lo + 2 * width, n);
      std::size_t i = lo, j = mid, k = lo;
      while (i < mid && j < hi) dst[k++] = less(src[j], src[i]) ? src[j++] : src[i++];
      while (i < mid) dst[k++] = src[i++];
      while (j < hi) dst[k++] = src[j++];
    }
    std::swap(src, dst);
  }
  return src;
}

/// Lexicographic comparison under alphabet rank order. Assumes both
/// strings were validated against the alphabet. `units` accumulates the
/// number of symbol pairs inspected.
template <class C>
std::strong_ordering rank_compare(std::basic_string_view<C> a, std::basic_string_view<C> b,
                                  const basic_alphabet<C>& alphabet,
                                  std::uint64_t* units = nullptr) {
  const std::size_t common = std::min(a.size(), b.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (units) ++*units;
    const std::uint32_t ra = alphabet.rank(a[i]);
    const std::uint32_t rb = alphabet.rank(b[i]);
    if (ra != rb) return ra <=> rb;
  }
  return a.size() <=> b.size();
}

template <class C>
void validate_corpus(const std::vector<std::basic_string<C>>& strings,
                     const basic_alphabet<C>& alphabet) {
  for (std::size_t idx = 0; idx < strings.size(); ++idx) {
    const auto& s = strings[idx];
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (!alphabet.contains(s[i])) {
        throw make_encoding_error(static_cast<char32_t>(s[i]), i, idx);
      }
    }
  }
}

}  // namespace detail

/// Split-wise sort: encode every string into a chunked key (one pass per
/// string), then run the stable merge sort over (key, index) pairs. The
/// sort phase compares fixed-size numeric chunks, so its cost is
/// n log n chunk comparisons instead of n log n full string scans.
template <class C>
sort_outcome splitwise_sort(const std::vector<std::basic_string<C>>& strings, int chunk_len,
                            const sort_config<C>& config) {
  if (chunk_len < 1 || chunk_len > config.radix.max_chunk_len) {
    throw config_error("chunk length " + std::to_string(chunk_len) + " outside [1, " +
                       std::to_string(config.radix.max_chunk_len) + "]");
  }
  sort_outcome out;
  std::vector<chunked_key> keys;
  keys.reserve(strings.size());
  for (std::size_t idx = 0; idx < strings.size(); ++idx) {
    try {
      keys.push_back(chunk_keys(std::basic_string_view<C>(strings[idx]), config.alphabet,
                                config.radix, chunk_len));
    } catch (const encoding_error& e) {
      throw make_encoding_error(e.symbol(), e.position(), idx);
    }
    out.preprocess_symbols += strings[idx].size();
    out.aux_keys += keys.back().chunks.size();
  }
  std::uint64_t calls = 0, units = 0;
  out.permutation = detail::merge_sort_permutation(
      strings.size(), [&](std::size_t a, std::size_t b) {
        ++calls;
        return compare_chunked(keys[a], keys[b], &units) < 0;
      });
  if (config.count_comparisons) {
    out.comparisons = calls;
    out.compare_units = units;
  }
  return out;
}

/// Standard key-then-sort pipeline at the full precision budget.
template <class C>
sort_outcome cantor_sort(const std::vector<std::basic_string<C>>& strings,
                         const sort_config<C>& config) {
  const int k = config.chunk_len > 0 ? config.chunk_len : config.radix.max_chunk_len;
  return splitwise_sort(strings, k, config);
}

/// Direct lexicographic comparison sort under alphabet rank order; the
/// correctness oracle and the O(n * lbar * log n) opponent. Stable.
template <class C>
sort_outcome baseline_sort(const std::vector<std::basic_string<C>>& strings,
                           const basic_alphabet<C>& alphabet,
                           bool count_comparisons = true) {
  detail::validate_corpus(strings, alphabet);
  sort_outcome out;
  std::uint64_t calls = 0, units = 0;
  out.permutation = detail::merge_sort_permutation(
      strings.size(), [&](std::size_t a, std::size_t b) {
        ++calls;
        return detail::rank_compare(std::basic_string_view<C>(strings[a]),
                                    std::basic_string_view<C>(strings[b]), alphabet,
                                    &units) < 0;
      });
  if (count_comparisons) {
    out.comparisons = calls;
    out.compare_units = units;
  }
  return out;
}

/// Sort by prefix-cached single keys. Cached keys carry a few ulp of
/// combination noise, so keys closer than the near-tie threshold are not
/// trusted: those pairs are compared directly. Output order is identical
/// to baseline_sort on every input.
template <class C>
sort_outcome cached_key_sort(const std::vector<std::basic_string<C>>& strings,
                             const prefix_table<C>& table, const sort_config<C>& config) {
  sort_outcome out;
  std::vector<double> keys;
  keys.reserve(strings.size());
  for (std::size_t idx = 0; idx < strings.size(); ++idx) {
    try {
      keys.push_back(key_with_cache(std::basic_string_view<C>(strings[idx]), table,
                                    config.alphabet, config.radix,
                                    &out.preprocess_symbols));
    } catch (const encoding_error& e) {
      throw make_encoding_error(e.symbol(), e.position(), idx);
    }
  }
  out.aux_keys = keys.size();
  const double tau =
      near_tie_threshold(config.radix, static_cast<int>(config.alphabet.zeta()));
  std::uint64_t calls = 0, units = 0, fallbacks = 0;
  out.permutation = detail::merge_sort_permutation(
      strings.size(), [&](std::size_t a, std::size_t b) {
        ++calls;
        const double d = keys[a] - keys[b];
        if (d < -tau || d > tau) {
          ++units;
          return d < 0.0;
        }
        ++fallbacks;
        return detail::rank_compare(std::basic_string_view<C>(strings[a]),
                                    std::basic_string_view<C>(strings[b]),
                                    config.alphabet, &units) < 0;
      });
  if (config.count_comparisons) {
    out.comparisons = calls;
    out.compare_units = units;
    out.near_tie_fallbacks = fallbacks;
  }
  return out;
}

}  // namespace cantor

#endif  // CANTOR_SORTING_HPP
