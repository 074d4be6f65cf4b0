#ifndef CANTOR_ALPHABET_HPP
#define CANTOR_ALPHABET_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <istream>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "cantor/error.hpp"
#include "cantor/utf8.hpp"

namespace cantor {

/// Ordered symbol set. Declaration order is sort order; ranks are the
/// 1-based positions in that order. Rank 0 means "not in the alphabet".
///
/// Rank 1 (not 0) for the first symbol keeps the key mapping injective:
/// with a rank-0 symbol, a string and that string extended by it would
/// map to the same key. With all ranks >= 1 every extension strictly
/// increases the key, so prefixes sort first.
///
/// Immutable after construction; safe to share across threads.
template <class C>
class basic_alphabet {
 public:
  using symbol_type = C;

  explicit basic_alphabet(std::basic_string_view<C> symbols) : symbols_(symbols) {
    if (symbols_.empty()) {
      throw config_error("alphabet must declare at least one symbol");
    }
    if constexpr (byte_indexed) {
      lookup_.fill(0);
      for (std::size_t i = 0; i < symbols_.size(); ++i) {
        auto& slot = lookup_[static_cast<unsigned char>(symbols_[i])];
        if (slot != 0) {
          throw config_error("duplicate symbol " +
                             detail::describe_symbol(static_cast<char32_t>(
                                 static_cast<unsigned char>(symbols_[i]))) +
                             " in alphabet");
        }
        slot = static_cast<std::uint32_t>(i + 1);
      }
    } else {
      lookup_.reserve(symbols_.size());
      for (std::size_t i = 0; i < symbols_.size(); ++i) {
        lookup_.emplace_back(symbols_[i], static_cast<std::uint32_t>(i + 1));
      }
      std::sort(lookup_.begin(), lookup_.end(),
                [](const auto& a, const auto& b) { return a.first < b.first; });
      for (std::size_t i = 1; i < lookup_.size(); ++i) {
        if (lookup_[i].first == lookup_[i - 1].first) {
          throw config_error("duplicate symbol " +
                             detail::describe_symbol(static_cast<char32_t>(lookup_[i].first)) +
                             " in alphabet");
        }
      }
    }
  }

  /// 1-based rank of `symbol`, or 0 when the symbol is not declared.
  std::uint32_t rank(C symbol) const {
    if constexpr (byte_indexed) {
      return lookup_[static_cast<unsigned char>(symbol)];
    } else {
      auto it = std::lower_bound(
          lookup_.begin(), lookup_.end(), symbol,
          [](const auto& entry, C value) { return entry.first < value; });
      if (it == lookup_.end() || it->first != symbol) return 0;
      return it->second;
    }
  }

  bool contains(C symbol) const { return rank(symbol) != 0; }

  std::uint32_t size() const { return static_cast<std::uint32_t>(symbols_.size()); }

  /// Maximum rank value; equals size() because ranks are 1..|T|.
  std::uint32_t zeta() const { return size(); }

  /// Symbols in rank order; symbol_at(r) has rank r.
  const std::basic_string<C>& symbols() const { return symbols_; }
  C symbol_at(std::uint32_t rank_value) const { return symbols_[rank_value - 1]; }

 private:
  static constexpr bool byte_indexed = sizeof(C) == 1;
  using lookup_type =
      std::conditional_t<byte_indexed, std::array<std::uint32_t, 256>,
                         std::vector<std::pair<C, std::uint32_t>>>;

  std::basic_string<C> symbols_;
  lookup_type lookup_{};
};

template <class C>
basic_alphabet(std::basic_string_view<C>) -> basic_alphabet<C>;
template <class C>
basic_alphabet(const std::basic_string<C>&) -> basic_alphabet<C>;
template <class C>
basic_alphabet(const C*) -> basic_alphabet<C>;

inline basic_alphabet<char> lowercase_alphabet() {
  return basic_alphabet<char>("abcdefghijklmnopqrstuvwxyz");
}

inline basic_alphabet<char32_t> lowercase_alphabet_u32() {
  return basic_alphabet<char32_t>(U"abcdefghijklmnopqrstuvwxyz");
}

/// Radix parameters plus the derived precision budget.
///
/// radix = |T| + epsilon must exceed zeta + 1 strictly, or keys of strings
/// differing by one rank step stop being separated (the per-position gap
/// (radix - 1 - zeta)/(radix - 1) collapses to zero).
struct radix_config {
  int epsilon = 4;
  int radix = 30;
  /// Longest string length for which one 64-bit key is guaranteed to
  /// preserve lexicographic order under round-to-nearest arithmetic.
  int max_chunk_len = 8;

  friend bool operator==(const radix_config&, const radix_config&) = default;
};

/// Smallest possible key difference between distinct strings whose first
/// mismatch is at `position` (0-based):
///
///   min_gap(l) = (x - 1 - zeta)/(x - 1) * x^-l
///
/// The worst case is an adjacent-rank mismatch where the smaller string
/// continues with maximal-rank symbols forever; the geometric tail sums
/// to zeta/(x^(l+1)) * x/(x-1), leaving the gap above.
inline double min_gap(const radix_config& config, int zeta, int position) {
  const double x = static_cast<double>(config.radix);
  return (x - 1.0 - static_cast<double>(zeta)) / (x - 1.0) *
         std::pow(x, -static_cast<double>(position));
}

/// Upper bound on accumulated Horner rounding error for one key.
/// Each step's rounding is at most about one ulp of the running value
/// (bounded by zeta * x/(x-1)) and is damped by the division by x on
/// every later step, so the total is a geometric sum independent of
/// string length. The constant folds a 2-ulp per-step bound with the
/// x/(x-1) sum and doubles the result for margin.
inline double rounding_error_bound(const radix_config& config, int zeta,
                                   int mantissa_bits = 53) {
  constexpr double safety = 8.0;
  const double x = static_cast<double>(config.radix);
  return safety * std::ldexp(1.0, 1 - mantissa_bits) * static_cast<double>(zeta) * x /
         (x - 1.0);
}

/// Largest chunk length k whose key gap still clears the rounding floor
/// with one guard position: min_gap(k) > rounding_error_bound. Strings up
/// to k symbols first differ at position <= k-1, so their keys are
/// separated by at least min_gap(k-1) = x * min_gap(k), a full radix
/// factor above the accepted noise.
inline int max_safe_chunk_len(int radix, int zeta, int mantissa_bits = 53) {
  if (mantissa_bits < 2 || mantissa_bits > 64) {
    throw config_error("mantissa_bits must be a finite precision in [2, 64], got " +
                       std::to_string(mantissa_bits));
  }
  if (radix <= zeta + 1) {
    throw config_error("radix " + std::to_string(radix) +
                       " must strictly exceed zeta + 1 = " + std::to_string(zeta + 1));
  }
  const radix_config probe{0, radix, 0};
  const double noise = rounding_error_bound(probe, zeta, mantissa_bits);
  int k = 0;
  while (k < 4096 && min_gap(probe, zeta, k + 1) > noise) ++k;
  if (k == 0) {
    throw config_error("alphabet too large for 64-bit keys: even single-symbol "
                       "chunks fall below the rounding floor");
  }
  return k;
}

template <class C>
int max_safe_chunk_len(const radix_config& config, const basic_alphabet<C>& alphabet,
                       int mantissa_bits = 53) {
  return max_safe_chunk_len(config.radix, static_cast<int>(alphabet.zeta()), mantissa_bits);
}

/// Builds the radix from the alphabet size and epsilon headroom and derives
/// the precision budget. epsilon must be >= 2: ranks are 1-based, so
/// zeta = |T| and epsilon = 1 would give radix = zeta + 1, exactly the
/// boundary where adjacent-rank separation vanishes.
template <class C>
radix_config derive_radix(const basic_alphabet<C>& alphabet, int epsilon,
                          int mantissa_bits = 53) {
  if (epsilon < 2) {
    throw config_error(
        "epsilon must be >= 2: order preservation needs radix > zeta + 1, and "
        "radix = |T| + epsilon with 1-based ranks gives zeta + 1 at epsilon = 1");
  }
  radix_config config;
  config.epsilon = epsilon;
  config.radix = static_cast<int>(alphabet.size()) + epsilon;
  if (config.radix <= static_cast<int>(alphabet.zeta()) + 1) {
    throw config_error("radix " + std::to_string(config.radix) +
                       " does not exceed zeta + 1");
  }
  config.max_chunk_len =
      max_safe_chunk_len(config.radix, static_cast<int>(alphabet.zeta()), mantissa_bits);
  return config;
}

/// Keys closer than this cannot be trusted to order their strings; the
/// sorter falls back to direct comparison. Half the minimal legitimate
/// gap at the last trusted position.
inline double near_tie_threshold(const radix_config& config, int zeta) {
  return min_gap(config, zeta, config.max_chunk_len - 1) / 2.0;
}

/// Alphabet file: UTF-8, one symbol per line, line order = sort order.
/// Blank lines and lines starting with '#' are ignored.
inline basic_alphabet<char32_t> parse_alphabet_file(std::istream& in) {
  std::u32string symbols;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto decoded = utf8_decode(line);
    if (!decoded) {
      throw config_error("alphabet file line " + std::to_string(line_no) +
                         ": invalid UTF-8");
    }
    if (decoded->size() != 1) {
      throw config_error("alphabet file line " + std::to_string(line_no) +
                         ": expected exactly one symbol, got " +
                         std::to_string(decoded->size()));
    }
    symbols.push_back((*decoded)[0]);
  }
  return basic_alphabet<char32_t>(std::u32string_view(symbols));
}

}  // namespace cantor

#endif  // CANTOR_ALPHABET_HPP
