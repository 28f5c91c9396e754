#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "chunkmatch/backend.hpp"
#include "chunkmatch/corpusgen.hpp"
#include "chunkmatch/errors.hpp"
#include "chunkmatch/evalharness.hpp"
#include "chunkmatch/matcher.hpp"
#include "chunkmatch/refindex.hpp"
#include "chunkmatch/scoring.hpp"
#include "chunkmatch/textpipe.hpp"
#include "chunkmatch/web_backend.hpp"

namespace fs = std::filesystem;
using namespace chunkmatch;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Documents are ordered by sorted relative path so identical trees always
// produce identical doc ordering (and therefore identical index bytes).
std::vector<RawDocument> load_pool(const std::string& root) {
  if (!fs::is_directory(root)) throw IoError("not a directory: " + root);
  std::vector<fs::path> paths;
  for (const auto& entry : fs::recursive_directory_iterator(root))
    if (entry.is_regular_file() && entry.path().extension() == ".txt")
      paths.push_back(entry.path());
  if (paths.empty()) throw IoError("no .txt files under " + root);

  std::vector<RawDocument> docs;
  docs.reserve(paths.size());
  for (const fs::path& p : paths) {
    RawDocument d;
    d.doc_id = fs::relative(p, root).generic_string();
    d.text = read_file(p.string());
    d.origin = d.doc_id;
    docs.push_back(std::move(d));
  }
  std::sort(docs.begin(), docs.end(),
            [](const RawDocument& a, const RawDocument& b) {
              return a.doc_id < b.doc_id;
            });
  return docs;
}

StopwordSet resolve_stopwords(const std::string& path) {
  return path.empty() ? default_stopwords() : load_stopwords(path);
}

struct IndexOpts {
  std::string dir;
  std::string output;
  std::string terminators = ".!?";
};

int run_index(const IndexOpts& o) {
  std::vector<RawDocument> raws = load_pool(o.dir);
  PipelineConfig pcfg;
  pcfg.sentence_terminators = o.terminators;
  std::vector<AnalyzedDocument> docs;
  docs.reserve(raws.size());
  for (const RawDocument& r : raws) docs.push_back(analyze(r, pcfg));
  ReferenceIndex idx = ReferenceIndex::build(docs);
  idx.save(o.output);
  std::size_t words = 0;
  for (const SourceRecord& s : idx.sources()) words += s.total_words;
  std::cout << "indexed " << idx.sources().size() << " documents (" << words
            << " words) -> " << o.output << "\n";
  return 0;
}

struct CheckOpts {
  std::string input;
  std::string index_path;
  std::string backend = "local";
  std::string format = "text";
  std::string output;
  std::string stopwords_path;
  std::string terminators = ".!?";
  std::string fixtures_path;
  std::string endpoint;
  std::string cache_path;
  std::size_t max_queries = 50;
  std::size_t min_interval_ms = 1000;
  std::size_t max_side = 3;
  bool no_stem_pass = false;
  bool skip_stopword_pivots = false;
  std::string advance_policy = "skip-matched";
  double threshold = 0.5;
  std::optional<double> fail_threshold;
};

StubSearcher load_stub(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open fixture file: " + path);
  StubSearcher stub;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json rec;
    try {
      rec = nlohmann::json::parse(line);
    } catch (const std::exception& err) {
      throw CorruptFileError("fixture file " + path + " line " +
                             std::to_string(line_no) + ": " + err.what());
    }
    const std::string mode_name = rec.at("mode").get<std::string>();
    const MatchMode mode =
        mode_name == "stemmed" ? MatchMode::stemmed : MatchMode::exact;
    std::vector<SourceHit> hits;
    for (const auto& jh : rec.at("hits")) {
      SourceHit h;
      h.origin = jh.at("origin").get<std::string>();
      h.source_id = jh.value("source_id", h.origin);
      if (jh.contains("start_word_pos"))
        h.start_word_pos = jh.at("start_word_pos").get<std::size_t>();
      if (jh.contains("line_no")) h.line_no = jh.at("line_no").get<std::size_t>();
      hits.push_back(std::move(h));
    }
    stub.add(mode, rec.at("phrase").get<std::string>(), std::move(hits));
  }
  return stub;
}

std::string fmt_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", v);
  return buf;
}

int run_check(const CheckOpts& o) {
  std::optional<ReferenceIndex> idx;
  StubSearcher stub;
  std::unique_ptr<PhraseSearcher> owned;
  PhraseSearcher* searcher = nullptr;

  if (o.backend == "local") {
    if (o.index_path.empty())
      throw ParameterError("--index is required with the local backend");
    idx = ReferenceIndex::load(o.index_path);
    owned = std::make_unique<LocalSearcher>(*idx);
    searcher = owned.get();
  } else if (o.backend == "stub") {
    if (o.fixtures_path.empty())
      throw ParameterError("--fixtures is required with the stub backend");
    stub = load_stub(o.fixtures_path);
    searcher = &stub;
  } else {
    if (o.endpoint.empty())
      throw ParameterError("--endpoint is required with the web backend");
    WebSearchConfig wcfg;
    wcfg.endpoint = o.endpoint;
    const char* key = std::getenv(kApiKeyEnvVar);
    wcfg.api_key = key ? key : "";
    wcfg.max_queries = o.max_queries;
    wcfg.min_interval = std::chrono::milliseconds(o.min_interval_ms);
    wcfg.cache_path = o.cache_path;
    owned = std::make_unique<WebSearcher>(std::move(wcfg));
    searcher = owned.get();
  }

  RawDocument raw;
  raw.doc_id = o.input;
  raw.text = read_file(o.input);
  raw.origin = o.input;

  PipelineConfig pcfg;
  pcfg.sentence_terminators = o.terminators;
  pcfg.stopword_path = o.stopwords_path;
  AnalyzedDocument doc = analyze(raw, pcfg);

  MatcherConfig mcfg;
  mcfg.max_side = o.max_side;
  mcfg.skip_stopword_pivots = o.skip_stopword_pivots;
  mcfg.stemmed_pass_enabled = !o.no_stem_pass;
  mcfg.advance_policy = o.advance_policy == "next-word"
                            ? AdvancePolicy::next_word
                            : AdvancePolicy::skip_matched;
  mcfg.stopwords = resolve_stopwords(o.stopwords_path);

  DocumentMatches dm = match_document(doc, *searcher, mcfg);
  if (dm.degraded && dm.matches.empty())
    throw TransportError("backend failed for every phrase query; no usable output");

  ScoringConfig scfg;
  scfg.sentence_threshold = o.threshold;
  scfg.config_echo = {
      {"backend", o.backend},
      {"max_side", std::to_string(o.max_side)},
      {"stem_pass", o.no_stem_pass ? "off" : "on"},
      {"advance_policy", o.advance_policy},
      {"skip_stopword_pivots", o.skip_stopword_pivots ? "true" : "false"},
      {"sentence_threshold", fmt_double(o.threshold)},
  };
  DocumentReport report = score(doc, dm, scfg);

  const ReportFormat fmt = o.format == "json"   ? ReportFormat::json
                           : o.format == "html" ? ReportFormat::html
                                                : ReportFormat::text;
  if (o.output.empty()) {
    render(report, fmt, std::cout);
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + o.output);
    render(report, fmt, out);
  }

  if (o.fail_threshold && report.plagiarism_percentage > *o.fail_threshold)
    return 1;
  return 0;
}

struct GenerateOpts {
  std::string pool_dir;
  std::string plan_file;
  std::string out_dir;
  std::string synonyms_path;
  std::uint64_t seed = 0;
};

int run_generate(const GenerateOpts& o) {
  std::vector<RawDocument> pool = load_pool(o.pool_dir);
  std::vector<PlanEntry> plan = parse_plan_file(o.plan_file);
  if (!o.synonyms_path.empty()) {
    SynonymTable table = load_synonyms(o.synonyms_path);
    for (PlanEntry& entry : plan) entry.params.synonyms = table;
  }
  GeneratedCorpus corpus = generate_suite(pool, plan, o.seed);
  write_corpus(corpus, o.out_dir);
  std::cout << "generated " << corpus.cases.size() << " cases -> " << o.out_dir
            << "\n";
  return 0;
}

struct EvaluateOpts {
  std::string corpus_dir;
  std::string reports_dir;
  std::string format = "text";
  std::string output;
};

int run_evaluate(const EvaluateOpts& o) {
  CorpusManifest manifest = load_corpus(o.corpus_dir);
  std::map<std::string, DocumentReport> reports;
  for (const CorpusCaseRecord& rec : manifest.cases) {
    const std::string path =
        (fs::path(o.reports_dir) / (rec.case_id + ".json")).string();
    if (!fs::is_regular_file(path))
      throw IoError("missing report for case " + rec.case_id + ": " + path);
    try {
      reports[rec.case_id] = parse_report_json(read_file(path));
    } catch (const CorruptFileError& err) {
      throw CorruptFileError(std::string("report ") + path + ": " + err.what());
    }
  }
  EvalResult result = evaluate(manifest, reports);
  const std::string rendered =
      o.format == "json" ? render_eval_json(result) : render_eval_text(result);
  if (o.output.empty()) {
    std::cout << rendered;
  } else {
    std::ofstream out(o.output, std::ios::binary);
    if (!out) throw IoError("cannot write file: " + o.output);
    out << rendered;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"chunkmatch: sentence-window plagiarism detection"};
  app.set_config("--config", "", "key=value config file; command-line flags win");
  app.require_subcommand(1);

  IndexOpts io;
  CLI::App* cmd_index =
      app.add_subcommand("index", "build a reference index from a directory of .txt files");
  cmd_index->add_option("dir", io.dir, "directory scanned recursively for .txt files")
      ->required();
  cmd_index->add_option("-o,--output", io.output, "index file to write")->required();
  cmd_index->add_option("--terminators", io.terminators,
                        "sentence terminator characters");

  CheckOpts co;
  CLI::App* cmd_check =
      app.add_subcommand("check", "check a document against a reference index");
  cmd_check->add_option("file", co.input, "suspect document (.txt)")->required();
  cmd_check->add_option("--index", co.index_path, "reference index file");
  cmd_check->add_option("--backend", co.backend, "phrase search backend")
      ->check(CLI::IsMember({"local", "web", "stub"}))
      ->capture_default_str();
  cmd_check->add_option("--format", co.format, "report format")
      ->check(CLI::IsMember({"text", "json", "html"}))
      ->capture_default_str();
  cmd_check->add_option("-o,--output", co.output, "write report here instead of stdout");
  cmd_check->add_option("--max-side", co.max_side,
                        "max words taken on each side of the pivot")
      ->check(CLI::Range(std::size_t{1}, std::size_t{1000}))
      ->capture_default_str();
  cmd_check->add_flag("--no-stem-pass", co.no_stem_pass,
                      "disable the second, stemmed matching pass");
  cmd_check->add_option("--advance-policy", co.advance_policy,
                        "pivot advance after a match")
      ->check(CLI::IsMember({"skip-matched", "next-word"}))
      ->capture_default_str();
  cmd_check->add_flag("--skip-stopword-pivots", co.skip_stopword_pivots,
                      "never center a window on a stopword");
  cmd_check->add_option("--threshold", co.threshold,
                        "sentence coverage needed to flag a sentence")
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();
  cmd_check->add_option("--fail-threshold", co.fail_threshold,
                        "exit 1 when plagiarism percentage exceeds this");
  cmd_check->add_option("--stopwords", co.stopwords_path,
                        "extra stopword list, one word per line");
  cmd_check->add_option("--terminators", co.terminators,
                        "sentence terminator characters");
  cmd_check->add_option("--fixtures", co.fixtures_path,
                        "stub backend fixture file (JSON lines)");
  cmd_check->add_option("--endpoint", co.endpoint, "web backend search URL");
  cmd_check->add_option("--max-queries", co.max_queries,
                        "web backend query budget per run")
      ->capture_default_str();
  cmd_check->add_option("--min-interval-ms", co.min_interval_ms,
                        "minimum milliseconds between web queries")
      ->capture_default_str();
  cmd_check->add_option("--cache", co.cache_path,
                        "web backend response cache (JSON lines)");

  GenerateOpts go;
  CLI::App* cmd_generate =
      app.add_subcommand("generate", "generate a synthetic plagiarism corpus");
  cmd_generate->add_option("--pool", go.pool_dir, "directory of source .txt files")
      ->required();
  cmd_generate->add_option("--plan", go.plan_file,
                           "plan file: ptype,count,key=val,...")
      ->required();
  cmd_generate->add_option("--seed", go.seed, "master seed")->capture_default_str();
  cmd_generate->add_option("-o,--out", go.out_dir, "corpus output directory")
      ->required();
  cmd_generate->add_option("--synonyms", go.synonyms_path,
                           "synonym table for poor_disguise (two columns)");

  EvaluateOpts eo;
  CLI::App* cmd_evaluate =
      app.add_subcommand("evaluate", "score check reports against corpus ground truth");
  cmd_evaluate->add_option("--corpus", eo.corpus_dir, "generated corpus directory")
      ->required();
  cmd_evaluate->add_option("--reports", eo.reports_dir,
                           "directory of <case_id>.json check reports")
      ->required();
  cmd_evaluate->add_option("--format", eo.format, "output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  cmd_evaluate->add_option("-o,--output", eo.output,
                           "write results here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (cmd_index->parsed()) return run_index(io);
    if (cmd_check->parsed()) return run_check(co);
    if (cmd_generate->parsed()) return run_generate(go);
    return run_evaluate(eo);
  } catch (const ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const BudgetError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return 4;
  } catch (const TransportError& e) {
    std::cerr << "backend error: " << e.what() << "\n";
    return 4;
  } catch (const IoError& e) {
    std::cerr << "io error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
