#ifndef CANTOR_CANTOR_HPP
#define CANTOR_CANTOR_HPP

#include "cantor/alphabet.hpp"
#include "cantor/bench.hpp"
#include "cantor/error.hpp"
#include "cantor/keying.hpp"
#include "cantor/sorting.hpp"
#include "cantor/suffix.hpp"
#include "cantor/utf8.hpp"

#endif  // CANTOR_CANTOR_HPP
