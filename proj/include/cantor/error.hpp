#ifndef CANTOR_ERROR_HPP
#define CANTOR_ERROR_HPP

#include <cstddef>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <string>

namespace cantor {

/// Invalid configuration: bad alphabet, bad radix parameters, out-of-range
/// chunk sizes, malformed corpus specs.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A string contains a symbol the alphabet does not define. Carries the
/// offending symbol, its position in the string, and (when the failure
/// happened inside a collection) the index of the offending item.
class encoding_error : public std::runtime_error {
 public:
  static constexpr std::size_t no_item = std::numeric_limits<std::size_t>::max();

  encoding_error(std::string message, char32_t symbol, std::size_t position,
                 std::size_t item = no_item)
      : std::runtime_error(std::move(message)),
        symbol_(symbol),
        position_(position),
        item_(item) {}

  char32_t symbol() const noexcept { return symbol_; }
  std::size_t position() const noexcept { return position_; }
  std::size_t item() const noexcept { return item_; }

 private:
  char32_t symbol_;
  std::size_t position_;
  std::size_t item_;
};

/// Caller broke an API contract, e.g. comparing chunked keys built with
/// different chunk sizes.
class usage_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Two routes that must agree disagreed (sorter cross-check, --verify).
class verification_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::string describe_symbol(char32_t symbol) {
  if (symbol >= 0x20 && symbol < 0x7F) {
    return std::string("'") + static_cast<char>(symbol) + "'";
  }
  char buf[16];
  std::snprintf(buf, sizeof buf, "U+%04X", static_cast<unsigned>(symbol));
  return buf;
}

}  // namespace detail

inline encoding_error make_encoding_error(char32_t symbol, std::size_t position,
                                          std::size_t item = encoding_error::no_item) {
  std::string msg = "symbol " + detail::describe_symbol(symbol) +
                    " at position " + std::to_string(position) + " is not in the alphabet";
  if (item != encoding_error::no_item) {
    msg = "string #" + std::to_string(item) + ": " + msg;
  }
  return encoding_error(std::move(msg), symbol, position, item);
}

}  // namespace cantor

#endif  // CANTOR_ERROR_HPP
