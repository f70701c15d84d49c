#include "symvec/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <fstream>
#include <sstream>
#include <thread>

#include "symvec/encoding.hpp"
#include "symvec/error.hpp"

namespace symvec {

namespace {

bool is_source(const std::filesystem::path& p) {
  auto ext = p.extension().string();
  return ext == ".mc" || ext == ".c";
}

}  // namespace

std::vector<std::filesystem::path> collect_sources(const std::vector<std::filesystem::path>& inputs) {
  std::vector<std::filesystem::path> out;
  for (const auto& in : inputs) {
    std::error_code ec;
    if (std::filesystem::is_directory(in, ec)) {
      std::vector<std::filesystem::path> found;
      for (const auto& ent : std::filesystem::recursive_directory_iterator(in)) {
        if (ent.is_regular_file() && is_source(ent.path())) found.push_back(ent.path());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else if (std::filesystem::is_regular_file(in, ec)) {
      out.push_back(in);
    } else {
      throw Error(ErrorKind::Io, "no such source file or directory: " + in.string());
    }
  }
  return out;
}

std::vector<Program> parse_sources(const std::vector<std::filesystem::path>& files) {
  std::vector<Program> programs;
  programs.reserve(files.size());
  for (const auto& f : files) {
    std::ifstream in(f, std::ios::binary);
    if (!in) throw Error(ErrorKind::Io, "cannot open " + f.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    programs.push_back(parse_program(buf.str(), f.string()));
  }
  return programs;
}

std::vector<Trace> trace_programs(const std::vector<Program>& programs, std::size_t budget,
                                  unsigned threads) {
  std::vector<const Procedure*> procs;
  for (const auto& p : programs)
    for (const auto& proc : p.procedures) procs.push_back(&proc);

  std::vector<std::vector<Trace>> per_proc(procs.size());
  auto work = [&](std::size_t i) { per_proc[i] = enumerate_paths(lower_to_cfg(*procs[i]), budget); };

  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(procs.size(), 1))));
  if (threads == 1) {
    for (std::size_t i = 0; i < procs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i; (i = next.fetch_add(1)) < procs.size();) work(i);
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }

  std::vector<Trace> out;
  for (auto& v : per_proc)
    for (auto& t : v) out.push_back(std::move(t));
  return out;
}

Corpus encode_traces(const std::vector<Trace>& traces, const AbstractionConfig& cfg) {
  Corpus corpus;
  corpus.provenance.config_id = cfg.id;
  corpus.sentences.reserve(traces.size());
  for (const auto& t : traces) corpus.sentences.push_back(encode_trace(abstract_trace(t, cfg), cfg));
  return corpus;
}

Corpus build_corpus(const std::vector<Program>& programs, const AbstractionConfig& cfg, unsigned threads) {
  Corpus corpus = encode_traces(trace_programs(programs, cfg.path_budget, threads), cfg);
  for (const auto& p : programs) corpus.provenance.sources.push_back(p.source_name);
  return corpus;
}

}  // namespace symvec
