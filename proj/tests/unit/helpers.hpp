#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "symvec/error.hpp"
#include "symvec/pipeline.hpp"

namespace testutil {

inline std::filesystem::path fixture(const std::string& name) {
  return std::filesystem::path(SYMVEC_FIXTURE_DIR) / name;
}

inline std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

inline symvec::Corpus corpus_of(const std::string& source,
                                const symvec::AbstractionConfig& cfg = symvec::AbstractionConfig::baseline()) {
  return symvec::build_corpus({symvec::parse_program(source, "test.mc")}, cfg);
}

inline std::vector<std::string> lines_of(const symvec::Corpus& c) {
  std::vector<std::string> out;
  for (const auto& s : c.sentences) out.push_back(symvec::join_sentence(s));
  return out;
}

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  TempDir() {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() / ("symvec_test_" + std::to_string(rd()) + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

template <typename F>
symvec::ErrorKind error_kind_of(F&& f) {
  try {
    f();
  } catch (const symvec::Error& e) {
    return e.kind();
  }
  throw std::runtime_error("expected a symvec::Error");
}

template <typename F>
std::string error_message_of(F&& f) {
  try {
    f();
  } catch (const symvec::Error& e) {
    return e.what();
  }
  throw std::runtime_error("expected a symvec::Error");
}

}  // namespace testutil

namespace testutil {

// Random procedures in the accepted subset, for round-trip and path-count
// properties.
class ProgramGen {
 public:
  explicit ProgramGen(std::uint64_t seed) : rng_(seed) {}

  std::string program(std::size_t procs) {
    std::string out;
    for (std::size_t i = 0; i < procs; ++i) {
      out += "int p" + std::to_string(i) + "(struct s *o, int x) {\n";
      out += block(0);
      out += "}\n";
    }
    return out;
  }

 private:
  std::size_t pick(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

  std::string atom() {
    switch (pick(6)) {
      case 0: return "x";
      case 1: return "o->f" + std::to_string(pick(3));
      case 2: return "g" + std::to_string(pick(4)) + "(x)";
      case 3: return std::to_string(pick(5));
      case 4: return "-" + std::to_string(pick(3));
      default: return "h(o, g1())";
    }
  }

  std::string cond(int depth) {
    static const char* ops[] = {"==", "!=", "<", "<=", ">", ">="};
    switch (depth < 2 ? pick(5) : pick(2)) {
      case 0: return atom();
      case 1: return atom() + " " + ops[pick(6)] + " " + atom();
      case 2: return "!(" + cond(depth + 1) + ")";
      case 3: return "(" + cond(depth + 1) + ") && (" + cond(depth + 1) + ")";
      default: return "(" + cond(depth + 1) + ") || (" + cond(depth + 1) + ")";
    }
  }

  std::string stmt(int depth) {
    std::string ind(2 * (depth + 1), ' ');
    switch (depth < 3 ? pick(9) : pick(5)) {
      case 0: return ind + "f" + std::to_string(pick(5)) + "(x);\n";
      case 1: return ind + "x = g" + std::to_string(pick(4)) + "(o);\n";
      case 2: return ind + "o->f" + std::to_string(pick(3)) + " = " + atom() + ";\n";
      case 3: return ind + "x = " + atom() + ";\n";
      case 4: return pick(4) == 0 ? ind + "return " + atom() + ";\n" : ind + "k(x);\n";
      case 5: return ind + "if (" + cond(0) + ") {\n" + block(depth + 1) + ind + "}\n";
      case 6:
        return ind + "if (" + cond(0) + ") {\n" + block(depth + 1) + ind + "} else {\n" + block(depth + 1) +
               ind + "}\n";
      case 7: return ind + "while (" + cond(0) + ") {\n" + block(depth + 1) + ind + "}\n";
      default:
        return ind + "for (x = 0; " + cond(1) + "; x = step(x)) {\n" + block(depth + 1) + ind + "}\n";
    }
  }

  std::string block(int depth) {
    std::string out;
    std::size_t n = 1 + pick(4);
    for (std::size_t i = 0; i < n; ++i) out += stmt(depth);
    return out;
  }

  std::mt19937_64 rng_;
};

}  // namespace testutil
