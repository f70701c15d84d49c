#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "symvec/embedding.hpp"
#include "symvec/error.hpp"

namespace symvec {

namespace {

constexpr const char* kStateMagic = "symvec-state 1";

std::filesystem::path state_path(const std::filesystem::path& path) {
  auto p = path;
  p += ".state";
  return p;
}

void put(std::ostream& os, double v) {
  char buf[32];
  auto r = std::to_chars(buf, buf + sizeof buf, v);
  os << ' ';
  os.write(buf, r.ptr - buf);
}

void put_all(std::ostream& os, const double* v, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) put(os, v[k]);
}

std::vector<std::string_view> split_spaces(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && line[i] == ' ') ++i;
    std::size_t start = i;
    while (i < line.size() && line[i] != ' ') ++i;
    if (i > start) out.push_back(line.substr(start, i - start));
  }
  return out;
}

double parse_real(std::string_view tok, const std::string& where) {
  double v = 0.0;
  auto r = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (r.ec != std::errc() || r.ptr != tok.data() + tok.size() || !std::isfinite(v))
    throw Error(ErrorKind::Format, where + ": bad number '" + std::string(tok) + "'");
  return v;
}

// Returns false when the sidecar is missing or describes different vectors.
bool load_state(const std::filesystem::path& path, Embedding& e) {
  std::ifstream in(path);
  if (!in) return false;
  std::string line;
  if (!std::getline(in, line)) return false;
  std::istringstream header(line);
  std::string magic_a, magic_b;
  std::size_t n = 0, dim = 0, epochs = 0;
  header >> magic_a >> magic_b >> n >> dim >> epochs;
  if (!header || magic_a + " " + magic_b != kStateMagic || n != e.size() || dim != e.dim) return false;
  Embedding s = e;
  const std::size_t fields = 4 + 4 * dim;
  for (std::size_t id = 0; id < n; ++id) {
    if (!std::getline(in, line)) return false;
    auto toks = split_spaces(line);
    if (toks.size() != fields + 1 || toks[0] != e.vocab.word(static_cast<std::uint32_t>(id))) return false;
    std::string where = path.string() + ":" + std::to_string(id + 2);
    std::size_t k = 1;
    s.b[id] = parse_real(toks[k++], where);
    s.bt[id] = parse_real(toks[k++], where);
    s.gb[id] = parse_real(toks[k++], where);
    s.gbt[id] = parse_real(toks[k++], where);
    for (auto* arr : {&s.w, &s.wt, &s.gw, &s.gwt})
      for (std::size_t d = 0; d < dim; ++d) (*arr)[id * dim + d] = parse_real(toks[k++], where);
  }
  for (std::size_t id = 0; id < n; ++id) {
    for (std::size_t d = 0; d < dim; ++d) {
      if (s.w[id * dim + d] + s.wt[id * dim + d] != e.w[id * dim + d]) return false;
    }
  }
  s.epochs = epochs;
  e = std::move(s);
  return true;
}

}  // namespace

void save_embedding(const Embedding& e, const std::filesystem::path& path) {
  const std::size_t dim = e.dim;
  write_file_atomically(path, [&](std::ostream& os) {
    for (std::uint32_t id = 0; id < e.size(); ++id) {
      os << e.vocab.word(id);
      auto q = e.query_vector(id);
      put_all(os, q.data(), dim);
      os << '\n';
    }
  });
  write_file_atomically(state_path(path), [&](std::ostream& os) {
    os << kStateMagic << ' ' << e.size() << ' ' << dim << ' ' << e.epochs << '\n';
    for (std::uint32_t id = 0; id < e.size(); ++id) {
      os << e.vocab.word(id);
      put(os, e.b[id]);
      put(os, e.bt[id]);
      put(os, e.gb.empty() ? 1.0 : e.gb[id]);
      put(os, e.gbt.empty() ? 1.0 : e.gbt[id]);
      put_all(os, e.w.data() + id * dim, dim);
      put_all(os, e.wt.data() + id * dim, dim);
      if (e.gw.empty()) {
        for (std::size_t k = 0; k < 2 * dim; ++k) put(os, 1.0);
      } else {
        put_all(os, e.gw.data() + id * dim, dim);
        put_all(os, e.gwt.data() + id * dim, dim);
      }
      os << '\n';
    }
  });
}

Embedding load_embedding(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open vectors " + path.string());
  std::vector<std::string> words;
  std::unordered_set<std::string> seen;
  std::vector<double> values;
  std::size_t dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string where = path.string() + ":" + std::to_string(lineno);
    auto toks = split_spaces(line);
    if (toks.empty()) throw Error(ErrorKind::Format, where + ": empty line");
    if (words.empty()) {
      dim = toks.size() - 1;
      if (dim == 0) throw Error(ErrorKind::Format, where + ": no vector values");
    } else if (toks.size() - 1 != dim) {
      throw Error(ErrorKind::DimensionMismatch, where + ": expected " + std::to_string(dim) +
                                                    " values, found " + std::to_string(toks.size() - 1));
    }
    words.emplace_back(toks[0]);
    if (!seen.insert(words.back()).second)
      throw Error(ErrorKind::Format, where + ": duplicate word '" + words.back() + "'");
    for (std::size_t k = 1; k < toks.size(); ++k) values.push_back(parse_real(toks[k], where));
  }
  if (words.empty()) throw Error(ErrorKind::Format, path.string() + ": no vectors");

  Embedding e;
  e.vocab = Vocabulary::from_words(words);
  e.dim = dim;
  e.w = std::move(values);
  e.wt.assign(e.w.size(), 0.0);
  e.b.assign(words.size(), 0.0);
  e.bt.assign(words.size(), 0.0);
  e.gw.assign(e.w.size(), 1.0);
  e.gwt.assign(e.w.size(), 1.0);
  e.gb.assign(words.size(), 1.0);
  e.gbt.assign(words.size(), 1.0);
  load_state(state_path(path), e);
  return e;
}

}  // namespace symvec
