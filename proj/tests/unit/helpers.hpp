#pragma once

#include "circus/io.hpp"
#include "golden.hpp"
#include "random.hpp"

#include <doctest.h>

namespace circus::testing {

template <typename T>
T load(const std::string& name) {
  return std::get<T>(load_document(fixture(name)).payload);
}

inline std::string table_string(const TruthTable& t) {
  std::string s;
  for (std::size_t i = 0; i < t.rows(); ++i) s += t[i] ? '1' : '0';
  return s;
}

#define CHECK_ERRC(expr, errc)                              \
  do {                                                      \
    try {                                                   \
      (void)(expr);                                         \
      FAIL_CHECK("no error thrown");                        \
    } catch (const ::circus::Error& e) {                    \
      CHECK_EQ(::circus::to_string(e.code()), ::circus::to_string(errc)); \
    }                                                       \
  } while (0)

}  // namespace circus::testing
