#pragma once

#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "hopeedi/error.h"

namespace testutil {

inline const std::filesystem::path kData = HOPEEDI_DATA_DIR;

// Fresh scratch directory under the system temp dir.
inline std::filesystem::path scratch(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("hopeedi_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline std::filesystem::path write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  return path;
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace testutil

// Asserts that `expr` throws hopeedi::Error with the given code.
#define CHECK_ERROR_CODE(expr, expected_code)                          \
  do {                                                                 \
    bool thrown_ = false;                                              \
    try {                                                              \
      (void)(expr);                                                    \
    } catch (const hopeedi::Error& e_) {                               \
      thrown_ = true;                                                  \
      CHECK_MESSAGE(e_.code() == (expected_code), e_.what());          \
    }                                                                  \
    CHECK_MESSAGE(thrown_, "expected hopeedi::Error from " #expr);     \
  } while (0)
