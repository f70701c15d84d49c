#include "symvec/config.hpp"

#include <charconv>
#include <fstream>

#include "symvec/error.hpp"

namespace symvec {

namespace {

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= value.size()) {
    std::size_t comma = value.find(',', start);
    if (comma == std::string::npos) comma = value.size();
    auto item = trim(std::string_view(value).substr(start, comma - start));
    if (!item.empty()) out.push_back(item);
    start = comma + 1;
  }
  return out;
}

template <typename T>
T parse_number(const std::string& key, const std::string& value) {
  T v{};
  auto r = std::from_chars(value.data(), value.data() + value.size(), v);
  if (r.ec != std::errc() || r.ptr != value.data() + value.size())
    throw Error(ErrorKind::Config, "bad value '" + value + "' for " + key);
  return v;
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& value) {
  std::filesystem::path p(value);
  return p.is_absolute() || base.empty() ? p : base / p;
}

AbstractionClass parse_class(const std::string& name) {
  auto cls = class_from_name(name);
  if (!cls) throw Error(ErrorKind::Config, "unknown abstraction class '" + name + "'");
  return *cls;
}

}  // namespace

std::set<std::string> load_stop_words(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open stop-word list " + path.string());
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    auto w = trim(line);
    if (!w.empty() && w[0] != '#') out.insert(w);
  }
  return out;
}

void PipelineConfig::set(const std::string& key, const std::string& value,
                         const std::filesystem::path& base_dir) {
  if (key == "abstraction") {
    AbstractionConfig next = named_config(value);
    next.constants = abstraction.constants;
    next.err_codes = abstraction.err_codes;
    next.path_budget = abstraction.path_budget;
    if (value != "stopwords-included") next.stop_words = abstraction.stop_words;
    abstraction = std::move(next);
  } else if (key == "id") {
    abstraction.id = value;
  } else if (key == "enable") {
    for (const auto& c : split_list(value)) abstraction.enable(parse_class(c));
  } else if (key == "disable") {
    for (const auto& c : split_list(value)) abstraction.disable(parse_class(c));
  } else if (key == "constants") {
    abstraction.constants.clear();
    for (const auto& c : split_list(value)) abstraction.constants.insert(parse_number<std::int64_t>(key, c));
  } else if (key == "errno") {
    abstraction.err_codes = ErrorTable::load(resolve(base_dir, value));
  } else if (key == "stop_words") {
    auto words = split_list(value);
    abstraction.stop_words = std::set<std::string>(words.begin(), words.end());
  } else if (key == "stop_words_file") {
    abstraction.stop_words = load_stop_words(resolve(base_dir, value));
  } else if (key == "path_budget") {
    abstraction.path_budget = parse_number<std::size_t>(key, value);
    if (abstraction.path_budget == 0) throw Error(ErrorKind::Config, "path_budget must be >= 1");
  } else if (key == "dim") {
    train.dim = parse_number<std::size_t>(key, value);
  } else if (key == "window") {
    train.window = parse_number<std::size_t>(key, value);
  } else if (key == "iterations" || key == "iters") {
    train.iterations = parse_number<std::size_t>(key, value);
  } else if (key == "learning_rate" || key == "lr") {
    train.learning_rate = parse_number<double>(key, value);
  } else if (key == "x_max") {
    train.x_max = parse_number<double>(key, value);
  } else if (key == "alpha") {
    train.alpha = parse_number<double>(key, value);
  } else if (key == "seed") {
    train.seed = parse_number<std::uint64_t>(key, value);
  } else if (key == "min_count") {
    train.min_count = parse_number<std::uint64_t>(key, value);
  } else if (key == "threads") {
    threads = parse_number<unsigned>(key, value);
    if (threads == 0) throw Error(ErrorKind::Config, "threads must be >= 1");
    train.threads = threads;
  } else {
    throw Error(ErrorKind::Config, "unknown key '" + key + "'");
  }
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open config " + path.string());
  PipelineConfig cfg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    auto body = trim(std::string_view(line).substr(0, hash));
    if (body.empty()) continue;
    auto eq = body.find('=');
    std::string where = path.string() + ":" + std::to_string(lineno);
    if (eq == std::string::npos) throw Error(ErrorKind::Config, where + ": expected 'key = value'");
    try {
      cfg.set(trim(std::string_view(body).substr(0, eq)), trim(std::string_view(body).substr(eq + 1)),
              path.parent_path());
    } catch (const Error& e) {
      throw Error(ErrorKind::Config, where + ": " + e.what());
    }
  }
  cfg.train.validate();
  return cfg;
}

}  // namespace symvec
