#ifndef CANTOR_SUFFIX_HPP
#define CANTOR_SUFFIX_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/alphabet.hpp"
#include "cantor/error.hpp"
#include "cantor/keying.hpp"
#include "cantor/sorting.hpp"

namespace cantor {

/// Keys of every suffix of one string; keys[j] encodes s[j..].
struct suffix_keys {
  std::vector<double> keys;
  std::size_t source_len = 0;
};

/// All |s| suffix keys in one right-to-left pass: the Horner accumulator
/// after consuming s[j] IS the key of the suffix starting at j, so each
/// extra suffix costs exactly one divide-add step. Every keys[j] is
/// bit-identical to key(s[j..]) computed from scratch; the shared pass
/// performs the same operation sequence.
template <class C>
suffix_keys build_suffix_keys(std::basic_string_view<C> s,
                              const basic_alphabet<C>& alphabet,
                              const radix_config& config) {
  suffix_keys out;
  out.source_len = s.size();
  out.keys.resize(s.size());
  const double x = static_cast<double>(config.radix);
  double acc = 0.0;
  for (std::size_t j = s.size(); j-- > 0;) {
    const std::uint32_t r = alphabet.rank(s[j]);
    if (r == 0) {
      throw make_encoding_error(static_cast<char32_t>(s[j]), j);
    }
    acc = acc / x + static_cast<double>(r);
    out.keys[j] = acc;
  }
  return out;
}

struct suffix_array_result {
  /// Suffix start indices in lexicographically non-decreasing suffix order.
  std::vector<std::size_t> order;
  /// Comparisons whose keys were too close to trust and fell back to
  /// direct suffix comparison.
  std::uint64_t fallback_count = 0;
};

namespace detail {

/// Direct comparison of the suffixes starting at a and b. When one suffix
/// is a prefix of the other, the shorter sorts first. Symbols are assumed
/// validated.
template <class C>
bool suffix_less(std::basic_string_view<C> s, std::size_t a, std::size_t b,
                 const basic_alphabet<C>& alphabet) {
  return rank_compare(s.substr(a), s.substr(b), alphabet) < 0;
}

}  // namespace detail

/// Suffix array by comparison-sorting suffix keys. Suffixes sharing a
/// prefix longer than the precision budget produce keys separated only by
/// rounding noise (or exactly tied); any pair closer than the near-tie
/// threshold is therefore re-compared directly. Keys farther apart than
/// the threshold are always correctly ordered: the worst rounding error
/// of two keys is orders of magnitude below it. The result matches
/// naive_suffix_array on every input, including degenerate ones.
template <class C>
suffix_array_result build_suffix_array(std::basic_string_view<C> s,
                                       const basic_alphabet<C>& alphabet,
                                       const radix_config& config) {
  const suffix_keys sk = build_suffix_keys(s, alphabet, config);
  const double tau = near_tie_threshold(config, static_cast<int>(alphabet.zeta()));
  suffix_array_result out;
  out.order.resize(s.size());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
    const double d = sk.keys[a] - sk.keys[b];
    if (d < -tau || d > tau) return d < 0.0;
    ++out.fallback_count;
    return detail::suffix_less(s, a, b, alphabet);
  });
  return out;
}

/// Textbook oracle: sort suffix indices by direct comparison.
template <class C>
suffix_array_result naive_suffix_array(std::basic_string_view<C> s,
                                       const basic_alphabet<C>& alphabet) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (!alphabet.contains(s[i])) {
      throw make_encoding_error(static_cast<char32_t>(s[i]), i);
    }
  }
  suffix_array_result out;
  out.order.resize(s.size());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::sort(out.order.begin(), out.order.end(), [&](std::size_t a, std::size_t b) {
    return detail::suffix_less(s, a, b, alphabet);
  });
  return out;
}

}  // namespace cantor

#endif  // CANTOR_SUFFIX_HPP
