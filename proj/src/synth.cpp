#include "symvec/synth.hpp"

#include <fstream>
#include <sstream>

#include "rng.hpp"
#include "symvec/error.hpp"

namespace symvec {

namespace {

using detail::bounded;

enum class Pattern { Share, Flow, NonNull, ErrProp, Flag, Links };

struct CategorySpec {
  const char* type;
  const char* name;
  Pattern pattern;
  const char* first;   // callee or field stem of the A word
  const char* second;  // callee or field stem of the B word
};

constexpr CategorySpec kCategories[] = {
    {"dataflow", "lock/unlock", Pattern::Share, "lock", "unlock"},
    {"dataflow", "alloc/free", Pattern::Flow, "alloc", "free"},
    {"dataflow", "enable/disable", Pattern::Share, "enable", "disable"},
    {"dataflow", "get/put", Pattern::Flow, "get", "put"},
    {"retcmp", "check/create", Pattern::NonNull, "create", "create"},
    {"returns", "fail/propagate", Pattern::ErrProp, "op", "op"},
    {"accesspath", "test/set", Pattern::Flag, "flag", "flag"},
    {"accesspath", "next/prev", Pattern::Links, "next", "prev"},
};

std::string stem(const char* base, std::size_t k) { return std::string(base) + "_" + std::to_string(k); }

std::pair<std::string, std::string> suite_words(const CategorySpec& c, std::size_t k) {
  switch (c.pattern) {
    case Pattern::Share:
    case Pattern::Flow: return {stem(c.first, k), stem(c.second, k)};
    case Pattern::NonNull: return {stem(c.first, k) + "_$NEQ_0", stem(c.first, k)};
    case Pattern::ErrProp: return {stem(c.first, k) + "_$LT_0", "$RET_" + stem(c.first, k)};
    case Pattern::Flag: return {"?->" + stem(c.first, k), "!->" + stem(c.first, k)};
    case Pattern::Links: return {"!->" + stem(c.first, k), "!->" + stem(c.second, k)};
  }
  return {};
}

class Writer {
 public:
  Writer(std::mt19937_64& rng, const SynthOptions& opts) : rng_(rng), opts_(opts) {}

  void noise(std::ostringstream& os, std::size_t lo, std::size_t hi) {
    std::size_t n = lo + bounded(rng_, hi - lo + 1);
    for (std::size_t i = 0; i < n; ++i)
      os << "\thelper_" << bounded(rng_, opts_.noise_functions) << "();\n";
  }

  std::string procedure(std::size_t index, const CategorySpec& c, std::size_t k) {
    std::ostringstream os;
    const std::string a = stem(c.first, k);
    const std::string b = stem(c.second, k);
    const std::size_t gap_lo = opts_.min_gap, gap_hi = opts_.max_gap;
    switch (c.pattern) {
      case Pattern::Share:
        os << "int syn_" << index << "(struct dev *d)\n{\n";
        noise(os, 0, 3);
        os << "\t" << a << "(d);\n";
        noise(os, gap_lo, gap_hi);
        os << "\t" << b << "(d);\n";
        noise(os, 0, 3);
        os << "\treturn 0;\n}\n";
        break;
      case Pattern::Flow:
        os << "int syn_" << index << "(struct dev *d)\n{\n\tvoid *p;\n";
        noise(os, 0, 3);
        os << "\tp = " << a << "(d);\n";
        noise(os, gap_lo, gap_hi);
        os << "\t" << b << "(p);\n";
        noise(os, 0, 3);
        os << "\treturn 0;\n}\n";
        break;
      case Pattern::NonNull:
        os << "int syn_" << index << "(void)\n{\n\tvoid *x;\n";
        noise(os, 0, 3);
        os << "\tx = " << a << "();\n\tif (x != NULL) {\n";
        noise(os, 1, 3);
        os << "\t\treturn 0;\n\t}\n\treturn -12;\n}\n";
        break;
      case Pattern::ErrProp:
        os << "int syn_" << index << "(struct dev *d)\n{\n\tint r;\n";
        noise(os, 0, 3);
        os << "\tr = " << a << "(d);\n\tif (r < 0)\n\t\treturn r;\n";
        noise(os, 1, 3);
        os << "\treturn 0;\n}\n";
        break;
      case Pattern::Flag:
        os << "int syn_" << index << "(struct dev *d)\n{\n";
        noise(os, 0, 3);
        os << "\tif (d->" << a << ") {\n\t\td->" << a << " = 0;\n";
        noise(os, 0, 2);
        os << "\t}\n";
        noise(os, 0, 3);
        os << "\treturn 0;\n}\n";
        break;
      case Pattern::Links:
        os << "int syn_" << index << "(struct dev *d, struct dev *n)\n{\n";
        noise(os, 0, 3);
        os << "\td->" << a << " = n;\n\td->" << b << " = n;\n";
        noise(os, 0, 3);
        os << "\treturn 0;\n}\n";
        break;
    }
    return os.str();
  }

 private:
  std::mt19937_64& rng_;
  const SynthOptions& opts_;
};

}  // namespace

SynthBenchmark generate_synthetic(const SynthOptions& opts) {
  if (opts.pairs_per_category < 2 || opts.noise_functions < 1 || opts.files < 1 ||
      opts.min_gap > opts.max_gap)
    throw Error(ErrorKind::InvalidArgument, "invalid synthetic benchmark options");
  SynthBenchmark bench;
  for (const auto& c : kCategories) {
    AnalogyCategory cat{c.type, c.name, {}};
    for (std::size_t k = 0; k < opts.pairs_per_category; ++k) cat.pairs.push_back(suite_words(c, k));
    bench.suite.categories.push_back(std::move(cat));
  }

  std::mt19937_64 rng(opts.seed);
  Writer writer(rng, opts);
  const std::size_t ncat = std::size(kCategories);
  const std::size_t slots = ncat * opts.pairs_per_category;
  std::vector<std::ostringstream> bodies(opts.files);
  for (std::size_t i = 0; i < opts.procedures; ++i) {
    // Round-robin keeps every pair equally frequent; the draw only varies noise.
    std::size_t slot = i % slots;
    const auto& c = kCategories[slot / opts.pairs_per_category];
    bodies[i * opts.files / opts.procedures] << writer.procedure(i, c, slot % opts.pairs_per_category) << '\n';
  }
  for (std::size_t f = 0; f < opts.files; ++f) {
    char name[32];
    std::snprintf(name, sizeof name, "synth_%03zu.mc", f);
    bench.files.push_back({name, bodies[f].str()});
  }
  return bench;
}

std::vector<Program> SynthBenchmark::parse() const {
  std::vector<Program> out;
  for (const auto& f : files) out.push_back(parse_program(f.text, f.name));
  return out;
}

void write_suite(std::ostream& os, const AnalogySuite& suite) {
  for (const auto& c : suite.categories)
    for (const auto& [a, b] : c.pairs) os << c.type << '\t' << c.name << '\t' << a << '\t' << b << '\n';
}

void write_synthetic(const SynthBenchmark& bench, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  for (const auto& f : bench.files)
    write_file_atomically(dir / f.name, [&](std::ostream& os) { os << f.text; });
  write_file_atomically(dir / "suite.tsv", [&](std::ostream& os) { write_suite(os, bench.suite); });
}

}  // namespace symvec
