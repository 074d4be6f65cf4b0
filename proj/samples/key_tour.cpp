#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#include "cantor/cantor.hpp"

int main() {
  const auto alphabet = cantor::lowercase_alphabet();
  const auto radix = cantor::derive_radix(alphabet, 4);

  std::cout << std::setprecision(17);
  std::cout << "radix " << radix.radix << ", safe chunk length " << radix.max_chunk_len
            << "\n\n";

  std::cout << "keys order like strings:\n";
  for (const std::string s : {"", "a", "ab", "b", "ba"}) {
    std::cout << "  key(\"" << s << "\") = "
              << cantor::key(std::string_view(s), alphabet, radix) << '\n';
  }

  const std::vector<std::string> corpus = {"banana", "band", "ban", "apple", "bandana"};
  const auto config = cantor::make_sort_config(alphabet, radix);
  const auto outcome = cantor::cantor_sort(corpus, config);
  std::cout << "\nsorted corpus (" << outcome.comparisons << " key comparisons):\n";
  for (const auto idx : outcome.permutation) std::cout << "  " << corpus[idx] << '\n';

  const std::string text = "banana";
  const auto sa = cantor::build_suffix_array(std::string_view(text), alphabet, radix);
  std::cout << "\nsuffixes of \"" << text << "\" in order:\n";
  for (const auto start : sa.order) {
    std::cout << "  " << start << ": " << text.substr(start) << '\n';
  }

  const auto table = cantor::build_prefix_table<char>({"ban", "band"}, alphabet, radix);
  const std::string word = "bandana";
  std::cout << "\nkey(\"" << word << "\")      directly: "
            << cantor::key(std::string_view(word), alphabet, radix) << '\n';
  std::cout << "key(\"" << word << "\") via cache: "
            << cantor::key_with_cache(std::string_view(word), table, alphabet, radix)
            << '\n';
  return 0;
}
