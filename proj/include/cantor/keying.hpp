#ifndef CANTOR_KEYING_HPP
#define CANTOR_KEYING_HPP

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "cantor/alphabet.hpp"
#include "cantor/error.hpp"

namespace cantor {

/// Distance to the next representable double above |value|.
inline double ulp(double value) {
  value = std::fabs(value);
  return std::nextafter(value, std::numeric_limits<double>::infinity()) - value;
}

/// Order-preserving key of a string: sum of rank(s[i]) / radix^i, evaluated
/// as a right-to-left Horner recurrence
///
///   acc <- acc / radix + rank(s[i]),   i = |s|-1 .. 0
///
/// This evaluation order is normative; it is what makes repeated key
/// computation bit-reproducible and keeps rounding error bounded
/// independently of string length (every step's error is divided by the
/// radix on all later steps).
///
/// For distinct strings no longer than config.max_chunk_len, key order
/// equals lexicographic order under the alphabet's ranks. Longer strings
/// are accepted (suffix preprocessing needs them) but beyond the budget
/// the keys of close strings may tie; use chunked keys or a near-tie
/// fallback where exactness matters.
///
/// The empty string maps to 0, below every non-empty key.
template <class C>
double key(std::basic_string_view<C> s, const basic_alphabet<C>& alphabet,
           const radix_config& config) {
  const double x = static_cast<double>(config.radix);
  double acc = 0.0;
  for (std::size_t i = s.size(); i-- > 0;) {
    const std::uint32_t r = alphabet.rank(s[i]);
    if (r == 0) {
      throw make_encoding_error(static_cast<char32_t>(s[i]), i);
    }
    acc = acc / x + static_cast<double>(r);
  }
  return acc;
}

/// Key sequence for one string split into chunks of at most chunk_len
/// symbols. Every chunk except possibly the last is exactly chunk_len
/// long, so chunk boundaries align across strings and comparing chunk
/// values in order reproduces lexicographic string order for any length.
struct chunked_key {
  std::vector<double> chunks;
  std::size_t chunk_len = 0;
  std::size_t length = 0;  // symbols in the source string
};

template <class C>
chunked_key chunk_keys(std::basic_string_view<C> s, const basic_alphabet<C>& alphabet,
                       const radix_config& config, int chunk_len) {
  if (chunk_len < 1 || chunk_len > config.max_chunk_len) {
    throw config_error("chunk length " + std::to_string(chunk_len) +
                       " outside [1, " + std::to_string(config.max_chunk_len) + "]");
  }
  chunked_key out;
  out.chunk_len = static_cast<std::size_t>(chunk_len);
  out.length = s.size();
  out.chunks.reserve((s.size() + out.chunk_len - 1) / out.chunk_len);
  for (std::size_t off = 0; off < s.size(); off += out.chunk_len) {
    try {
      out.chunks.push_back(key(s.substr(off, out.chunk_len), alphabet, config));
    } catch (const encoding_error& e) {
      throw make_encoding_error(e.symbol(), off + e.position());
    }
  }
  return out;
}

template <class C>
chunked_key chunk_keys(std::basic_string_view<C> s, const basic_alphabet<C>& alphabet,
                       const radix_config& config) {
  return chunk_keys(s, alphabet, config, config.max_chunk_len);
}

/// Lexicographic comparison of chunk sequences by numeric value; when one
/// sequence is a prefix of the other, the shorter is less. Equal only for
/// identical sequences, which (chunks being injective within the budget)
/// means identical strings.
///
/// `units`, when given, accumulates the number of chunk pairs inspected.
inline std::strong_ordering compare_chunked(const chunked_key& a, const chunked_key& b,
                                            std::uint64_t* units = nullptr) {
  if (a.chunk_len != b.chunk_len) {
    throw usage_error("chunked keys built with different chunk sizes (" +
                      std::to_string(a.chunk_len) + " vs " + std::to_string(b.chunk_len) +
                      ") are not comparable");
  }
  const std::size_t common = std::min(a.chunks.size(), b.chunks.size());
  for (std::size_t i = 0; i < common; ++i) {
    if (units) ++*units;
    if (a.chunks[i] != b.chunks[i]) {
      return a.chunks[i] < b.chunks[i] ? std::strong_ordering::less
                                       : std::strong_ordering::greater;
    }
  }
  return a.chunks.size() <=> b.chunks.size();
}

namespace detail {

struct string_hash {
  using is_transparent = void;
  template <class C>
  std::size_t operator()(std::basic_string_view<C> sv) const {
    return std::hash<std::basic_string_view<C>>{}(sv);
  }
  template <class C>
  std::size_t operator()(const std::basic_string<C>& s) const {
    return std::hash<std::basic_string_view<C>>{}(s);
  }
  template <class C>
  std::size_t operator()(const C* s) const {
    return std::hash<std::basic_string_view<C>>{}(s);
  }
};

}  // namespace detail

/// Cache of precomputed prefix keys. For S = prefix + remainder the key is
/// recovered as
///
///   table[prefix].key + key(remainder) / radix^|prefix|
///
/// which skips re-encoding the prefix. The combined value can differ from
/// the directly computed key by a few ulp (the two routes round
/// differently); consumers that sort by cached keys must use the near-tie
/// fallback rather than expect bit equality.
template <class C>
struct prefix_table {
  struct entry {
    double key = 0.0;
    std::size_t length = 0;
  };

  std::unordered_map<std::basic_string<C>, entry, detail::string_hash, std::equal_to<>>
      entries;
  std::size_t max_prefix_len = 0;
};

template <class C>
prefix_table<C> build_prefix_table(const std::vector<std::basic_string<C>>& prefixes,
                                   const basic_alphabet<C>& alphabet,
                                   const radix_config& config) {
  prefix_table<C> table;
  table.entries.reserve(prefixes.size());
  for (const auto& p : prefixes) {
    typename prefix_table<C>::entry e;
    e.key = key(std::basic_string_view<C>(p), alphabet, config);
    e.length = p.size();
    table.entries.insert_or_assign(p, e);
    table.max_prefix_len = std::max(table.max_prefix_len, p.size());
  }
  return table;
}

/// Key of `s` using the longest cached prefix, or the direct key when no
/// entry matches. `encoded_symbols`, when given, receives the number of
/// symbols actually run through the Horner loop (the cache's saving).
template <class C>
double key_with_cache(std::basic_string_view<C> s, const prefix_table<C>& table,
                      const basic_alphabet<C>& alphabet, const radix_config& config,
                      std::uint64_t* encoded_symbols = nullptr) {
  std::size_t limit = std::min(s.size(), table.max_prefix_len);
  for (std::size_t len = limit; len >= 1; --len) {
    auto it = table.entries.find(s.substr(0, len));
    if (it == table.entries.end()) continue;
    double rest;
    try {
      rest = key(s.substr(len), alphabet, config);
    } catch (const encoding_error& e) {
      throw make_encoding_error(e.symbol(), len + e.position());
    }
    if (encoded_symbols) *encoded_symbols += s.size() - len;
    return it->second.key +
           rest / std::pow(static_cast<double>(config.radix), static_cast<double>(len));
  }
  if (encoded_symbols) *encoded_symbols += s.size();
  return key(s, alphabet, config);
}

}  // namespace cantor

#endif  // CANTOR_KEYING_HPP
