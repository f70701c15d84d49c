#include "symvec/bench.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <thread>

#include "symvec/error.hpp"
#include "symvec/pipeline.hpp"

namespace symvec {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t tab = line.find('\t', start);
    out.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return out;
}

std::string fmt_accuracy(double a) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", a);
  return buf;
}

enum class Outcome { Pass, Fail, Oov };

Outcome run_test(const QueryIndex& index, const std::pair<std::string, std::string>& p,
                 const std::pair<std::string, std::string>& q) {
  const auto& v = index.vocab();
  if (!v.contains(p.first) || !v.contains(p.second) || !v.contains(q.first) || !v.contains(q.second))
    return Outcome::Oov;
  try {
    return index.analogy(p.first, p.second, q.first) == q.second ? Outcome::Pass : Outcome::Fail;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::OutOfVocabulary) return Outcome::Oov;
    throw;
  }
}

void tally(CategoryResult& r, Outcome o) {
  switch (o) {
    case Outcome::Pass: ++r.passed; break;
    case Outcome::Fail: ++r.failed; break;
    case Outcome::Oov: ++r.oov; break;
  }
}

}  // namespace

AnalogySuite AnalogySuite::read(std::istream& is, const std::string& name) {
  AnalogySuite suite;
  std::map<std::pair<std::string, std::string>, std::size_t> index;
  std::vector<std::set<std::pair<std::string, std::string>>> seen;
  std::string line;
  std::size_t row = 0;
  while (std::getline(is, line)) {
    ++row;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    auto cols = split_tabs(line);
    std::string where = name + ":" + std::to_string(row);
    if (cols.size() != 4)
      throw Error(ErrorKind::Format, where + ": expected 4 tab-separated columns, found " +
                                         std::to_string(cols.size()));
    for (const auto& c : cols)
      if (c.empty() || c.find(' ') != std::string::npos)
        throw Error(ErrorKind::Format, where + ": empty column or column containing a space");
    auto key = std::make_pair(cols[0], cols[1]);
    auto it = index.find(key);
    if (it == index.end()) {
      it = index.emplace(key, suite.categories.size()).first;
      suite.categories.push_back({cols[0], cols[1], {}});
      seen.emplace_back();
    }
    auto pair = std::make_pair(cols[2], cols[3]);
    if (!seen[it->second].insert(pair).second)
      throw Error(ErrorKind::Format, where + ": duplicate pair " + cols[2] + "/" + cols[3] +
                                         " in category " + cols[1]);
    suite.categories[it->second].pairs.push_back(std::move(pair));
  }
  return suite;
}

AnalogySuite AnalogySuite::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open suite " + path.string());
  return read(in, path.string());
}

std::size_t EvalReport::passed() const {
  std::size_t n = 0;
  for (const auto& c : categories) n += c.passed;
  return n;
}

std::size_t EvalReport::failed() const {
  std::size_t n = 0;
  for (const auto& c : categories) n += c.failed;
  return n;
}

std::size_t EvalReport::oov() const {
  std::size_t n = 0;
  for (const auto& c : categories) n += c.oov;
  return n;
}

double EvalReport::accuracy() const {
  std::size_t t = total();
  return t == 0 ? 0.0 : static_cast<double>(passed()) / static_cast<double>(t);
}

EvalReport evaluate_suite(const AnalogySuite& suite, const QueryIndex& index, unsigned threads) {
  struct Job {
    std::size_t cat, p, q;
  };
  std::vector<Job> jobs;
  EvalReport report;
  for (std::size_t c = 0; c < suite.categories.size(); ++c) {
    const auto& cat = suite.categories[c];
    report.categories.push_back({cat.type, cat.name, cat.pairs.size(), 0, 0, 0});
    for (std::size_t p = 0; p < cat.pairs.size(); ++p)
      for (std::size_t q = 0; q < cat.pairs.size(); ++q)
        if (p != q) jobs.push_back({c, p, q});
  }
  std::vector<Outcome> outcomes(jobs.size());
  auto work = [&](std::size_t n) {
    const auto& cat = suite.categories[jobs[n].cat];
    outcomes[n] = run_test(index, cat.pairs[jobs[n].p], cat.pairs[jobs[n].q]);
  };
  threads = std::max(1u, threads);
  if (threads == 1 || jobs.size() < 2) {
    for (std::size_t n = 0; n < jobs.size(); ++n) work(n);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t)
      pool.emplace_back([&] {
        for (std::size_t n; (n = next.fetch_add(1)) < jobs.size();) work(n);
      });
    for (auto& th : pool) th.join();
  }
  for (std::size_t n = 0; n < jobs.size(); ++n) tally(report.categories[jobs[n].cat], outcomes[n]);
  return report;
}

void write_report_tsv(std::ostream& os, const EvalReport& report) {
  os << "type\tcategory\tpairs\tpassed\tfailed\toov\ttotal\taccuracy\n";
  for (const auto& c : report.categories) {
    double acc = c.total() == 0 ? 0.0 : static_cast<double>(c.passed) / static_cast<double>(c.total());
    os << c.type << '\t' << c.name << '\t' << c.pairs << '\t' << c.passed << '\t' << c.failed << '\t'
       << c.oov << '\t' << c.total() << '\t' << fmt_accuracy(acc) << '\n';
  }
  std::size_t pairs = 0;
  for (const auto& c : report.categories) pairs += c.pairs;
  os << "all\tall\t" << pairs << '\t' << report.passed() << '\t' << report.failed() << '\t'
     << report.oov() << '\t' << report.total() << '\t' << fmt_accuracy(report.accuracy()) << '\n';
}

namespace {

void write_table(std::ostream& os, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
  }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      std::string pad(width[i] - r[i].size(), ' ');
      if (i) line += "  ";
      line += i >= 2 ? pad + r[i] : r[i] + pad;
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    os << line << '\n';
  }
}

}  // namespace

void write_report_table(std::ostream& os, const EvalReport& report) {
  std::vector<std::vector<std::string>> rows = {
      {"type", "category", "passed", "failed", "oov", "total", "accuracy"}};
  for (const auto& c : report.categories) {
    double acc = c.total() == 0 ? 0.0 : static_cast<double>(c.passed) / static_cast<double>(c.total());
    rows.push_back({c.type, c.name, std::to_string(c.passed), std::to_string(c.failed), std::to_string(c.oov),
                    std::to_string(c.total()), fmt_accuracy(acc)});
  }
  rows.push_back({"all", "", std::to_string(report.passed()), std::to_string(report.failed()),
                  std::to_string(report.oov()), std::to_string(report.total()), fmt_accuracy(report.accuracy())});
  write_table(os, rows);
  os << "accuracy: " << fmt_accuracy(report.accuracy()) << " (" << report.passed() << "/" << report.total()
     << ")\n";
}

std::vector<ErrorRecord> export_error_dataset(const Corpus& corpus, std::vector<std::string>* warnings) {
  static const std::string kRet = "$RET_";
  std::vector<ErrorRecord> out;
  for (std::size_t s = 0; s < corpus.sentences.size(); ++s) {
    const Sentence& sent = corpus.sentences[s];
    auto err = std::find(sent.rbegin(), sent.rend(), "$ERR");
    if (err == sent.rend()) continue;
    std::size_t pos = static_cast<std::size_t>(sent.rend() - err) - 1;
    if (pos + 1 >= sent.size() || sent[pos + 1].compare(0, kRet.size(), kRet) != 0) {
      if (warnings)
        warnings->push_back("sentence " + std::to_string(s + 1) + ": $ERR without a following $RET_ word");
      continue;
    }
    std::string label = sent[pos + 1].substr(kRet.size());
    if (label == ErrorTable::kPtrErr) continue;
    std::size_t begin = pos > kMaxErrorTokens ? pos - kMaxErrorTokens : 0;
    out.push_back({label, std::vector<std::string>(sent.begin() + begin, sent.begin() + pos)});
  }
  return out;
}

void write_error_dataset(std::ostream& os, const std::vector<ErrorRecord>& records) {
  for (const auto& r : records) os << r.label << '\t' << join_sentence(r.tokens) << '\n';
}

std::vector<AblationResult> run_ablation(const std::vector<Program>& programs,
                                         const std::vector<std::string>& config_ids,
                                         const PipelineConfig& base, const AnalogySuite& suite) {
  base.train.validate();
  auto traces = trace_programs(programs, base.abstraction.path_budget, base.threads);
  std::vector<AblationResult> results;
  for (const auto& id : config_ids) {
    AbstractionConfig cfg = named_config(id);
    cfg.constants = base.abstraction.constants;
    cfg.err_codes = base.abstraction.err_codes;
    if (id != "stopwords-included") cfg.stop_words = base.abstraction.stop_words;
    Corpus corpus = encode_traces(traces, cfg);
    Vocabulary vocab = Vocabulary::build(corpus, base.train.min_count);
    auto x = build_cooccurrence(corpus, vocab, base.train.window, base.threads);
    Embedding e = train_embedding(x, vocab, base.train);
    QueryIndex index(e);
    results.push_back({id, corpus.sentences.size(), vocab.size(), evaluate_suite(suite, index, base.threads)});
  }
  return results;
}

void write_ablation_tsv(std::ostream& os, const std::vector<AblationResult>& results) {
  os << "config\tpassed\tfailed\toov\taccuracy\n";
  for (const auto& r : results)
    os << r.config_id << '\t' << r.report.passed() << '\t' << r.report.failed() << '\t' << r.report.oov()
       << '\t' << fmt_accuracy(r.report.accuracy()) << '\n';
}

void write_ablation_table(std::ostream& os, const std::vector<AblationResult>& results) {
  std::vector<std::vector<std::string>> rows = {
      {"config", "sentences", "vocab", "passed", "failed", "oov", "accuracy"}};
  for (const auto& r : results)
    rows.push_back({r.config_id, std::to_string(r.sentences), std::to_string(r.vocab_size),
                    std::to_string(r.report.passed()), std::to_string(r.report.failed()),
                    std::to_string(r.report.oov()), fmt_accuracy(r.report.accuracy())});
  write_table(os, rows);
}

}  // namespace symvec
