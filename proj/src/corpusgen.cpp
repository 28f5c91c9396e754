#include "chunkmatch/corpusgen.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "json.hpp"

#include "chunkmatch/errors.hpp"

namespace fs = std::filesystem;
using ordered_json = nlohmann::ordered_json;

namespace chunkmatch {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

// Unbiased enough for corpus generation and, unlike uniform_int_distribution,
// identical across standard libraries.
std::size_t rng_below(std::mt19937_64& rng, std::size_t n) {
  if (n <= 1) return 0;
  return static_cast<std::size_t>(
      (static_cast<unsigned __int128>(rng()) * n) >> 64);
}

struct FlatSource {
  const RawDocument* raw = nullptr;
  std::vector<std::string> surface;
  std::vector<std::string> normalized;
  std::vector<bool> sentence_end;  // token is the last of its sentence

  std::size_t size() const { return surface.size(); }
};

FlatSource flatten(const RawDocument& raw) {
  FlatSource flat;
  flat.raw = &raw;
  AnalyzedDocument doc = analyze(raw);
  for (const Sentence& s : doc.sentences) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      flat.surface.push_back(s.tokens[i].surface);
      flat.normalized.push_back(s.tokens[i].normalized);
      flat.sentence_end.push_back(i + 1 == s.tokens.size());
    }
  }
  return flat;
}

struct Emitter {
  struct Rec {
    std::size_t out_begin = 0;
    std::size_t out_end = 0;
    std::string source_id;
    std::size_t src_begin = 0;
    SpanKind kind = SpanKind::exact;
  };

  std::vector<std::string> words;
  std::vector<bool> brk;  // sentence terminator follows this word
  std::vector<Rec> recs;

  void push(std::string w, bool sentence_break) {
    words.push_back(std::move(w));
    brk.push_back(sentence_break);
  }

  void force_break() {
    if (!brk.empty()) brk.back() = true;
  }

  void filler(std::mt19937_64& rng, std::size_t n) {
    if (n == 0) return;
    const auto& vocab = filler_vocabulary();
    std::size_t left = 6 + rng_below(rng, 7);
    for (std::size_t i = 0; i < n; ++i) {
      push(vocab[rng_below(rng, vocab.size())], false);
      if (--left == 0) {
        brk.back() = true;
        left = 6 + rng_below(rng, 7);
      }
    }
    force_break();
  }

  void excerpt(const FlatSource& src, std::size_t begin, std::size_t len) {
    if (len == 0) return;
    const std::size_t out0 = words.size();
    for (std::size_t p = begin; p < begin + len; ++p)
      push(src.surface[p], src.sentence_end[p]);
    force_break();
    recs.push_back({out0, words.size(), src.raw->doc_id, begin, SpanKind::exact});
  }

  // Verbatim excerpt with synonym_rate of its content words swapped out.
  // Exact runs and one-word disguised spans are recorded separately.
  void disguised_excerpt(const FlatSource& src, std::size_t begin, std::size_t len,
                         const GenParams& params, std::mt19937_64& rng) {
    if (len == 0) return;
    std::size_t n_content = 0;
    std::vector<std::size_t> cands;
    for (std::size_t off = 0; off < len; ++off) {
      const std::string& norm = src.normalized[begin + off];
      if (params.stopwords.count(norm)) continue;
      ++n_content;
      if (params.synonyms.count(norm)) cands.push_back(off);
    }
    std::size_t want = static_cast<std::size_t>(
        std::llround(params.synonym_rate * static_cast<double>(n_content)));
    want = std::min(want, cands.size());

    std::vector<bool> subst(len, false);
    for (std::size_t i = 0; i < want; ++i) {
      std::swap(cands[i], cands[i + rng_below(rng, cands.size() - i)]);
      subst[cands[i]] = true;
    }

    const std::size_t out0 = words.size();
    for (std::size_t off = 0; off < len; ++off) {
      const std::size_t p = begin + off;
      push(subst[off] ? params.synonyms.at(src.normalized[p]) : src.surface[p],
           src.sentence_end[p]);
    }
    force_break();

    std::size_t run = 0;
    for (std::size_t off = 0; off < len; ++off) {
      if (!subst[off]) continue;
      if (run < off)
        recs.push_back({out0 + run, out0 + off, src.raw->doc_id, begin + run,
                        SpanKind::exact});
      recs.push_back({out0 + off, out0 + off + 1, src.raw->doc_id, begin + off,
                      SpanKind::disguised});
      run = off + 1;
    }
    if (run < len)
      recs.push_back({out0 + run, out0 + len, src.raw->doc_id, begin + run,
                      SpanKind::exact});
  }
};

struct BuiltText {
  std::string text;
  std::vector<CharSpan> word_chars;
};

BuiltText build_text(const Emitter& em) {
  BuiltText out;
  for (std::size_t i = 0; i < em.words.size(); ++i) {
    if (!out.text.empty()) out.text += ' ';
    const std::size_t b = out.text.size();
    out.text += em.words[i];
    out.word_chars.push_back({b, out.text.size()});
    if (em.brk[i]) out.text += '.';
  }
  if (!out.text.empty()) out.text += '\n';
  return out;
}

std::size_t copy_budget(const GenParams& params) {
  return static_cast<std::size_t>(std::llround(
      params.copy_fraction * static_cast<double>(params.target_words)));
}

void single_source_case(Emitter& em, const FlatSource& src, const GenParams& params,
                        std::mt19937_64& rng, bool disguise) {
  const std::size_t n = params.target_words;
  std::size_t excerpt_len = std::min(copy_budget(params), src.size());
  const std::size_t filler_total = n > excerpt_len ? n - excerpt_len : 0;
  const std::size_t before = rng_below(rng, filler_total + 1);

  em.filler(rng, before);
  const std::size_t start = rng_below(rng, src.size() - excerpt_len + 1);
  if (disguise)
    em.disguised_excerpt(src, start, excerpt_len, params, rng);
  else
    em.excerpt(src, start, excerpt_len);
  em.filler(rng, filler_total - before);
}

void multi_source_case(Emitter& em, const std::vector<const FlatSource*>& pool,
                       const GenParams& params, std::mt19937_64& rng,
                       const char* type_name) {
  const std::size_t k = params.n_sources;
  if (k < 2)
    throw ParameterError(std::string(type_name) + " requires n_sources >= 2");
  if (k > pool.size())
    throw ParameterError(std::string(type_name) + ": n_sources " +
                         std::to_string(k) + " exceeds usable pool size " +
                         std::to_string(pool.size()));
  const std::size_t total = copy_budget(params);
  if (total < 3 * k)
    throw ParameterError(std::string(type_name) +
                         ": copy budget too small for n_sources (need at least "
                         "3 words per source)");

  std::vector<std::size_t> order(pool.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  for (std::size_t i = 0; i < k; ++i)
    std::swap(order[i], order[i + rng_below(rng, order.size() - i)]);

  std::vector<std::size_t> sizes(k, total / k);
  for (std::size_t i = 0; i < total % k; ++i) ++sizes[i];
  for (std::size_t i = 0; i < k; ++i)
    sizes[i] = std::min(sizes[i], pool[order[i]]->size());

  std::size_t filler_total = params.target_words;
  for (std::size_t s : sizes) filler_total -= std::min(filler_total, s);

  std::vector<std::size_t> connective(k > 1 ? k - 1 : 0, 0);
  for (std::size_t& c : connective) {
    const std::size_t take = std::min<std::size_t>(filler_total, 2 + rng_below(rng, 3));
    c = take;
    filler_total -= take;
  }
  const std::size_t before = rng_below(rng, filler_total + 1);

  em.filler(rng, before);
  for (std::size_t i = 0; i < k; ++i) {
    const FlatSource& src = *pool[order[i]];
    const std::size_t start = rng_below(rng, src.size() - sizes[i] + 1);
    em.excerpt(src, start, sizes[i]);
    if (i + 1 < k) em.filler(rng, connective[i]);
  }
  em.filler(rng, filler_total - before);
}

void validate_params(const GenParams& params) {
  if (params.copy_fraction < 0.0 || params.copy_fraction > 1.0)
    throw ParameterError("copy_fraction must be in [0, 1]");
  if (params.synonym_rate < 0.0 || params.synonym_rate > 1.0)
    throw ParameterError("synonym_rate must be in [0, 1]");
  if (params.target_words == 0)
    throw ParameterError("target_words must be positive");
}

GenCase make_case(const std::vector<FlatSource>& flats, PlagiarismType ptype,
                  const GenParams& params, std::uint64_t seed, std::string case_id) {
  validate_params(params);

  std::vector<const FlatSource*> usable;
  for (const FlatSource& f : flats)
    if (f.size() > 0) usable.push_back(&f);
  if (usable.empty()) throw ParameterError("source pool has no non-empty document");

  GenCase out;
  out.case_id = std::move(case_id);
  out.ptype = ptype;
  out.seed = seed;
  out.params = params;
  out.output.doc_id = out.case_id;
  out.output.origin = "generated:" + out.case_id;

  std::mt19937_64 rng(seed);
  Emitter em;

  switch (ptype) {
    case PlagiarismType::clean:
      em.filler(rng, params.target_words);
      break;
    case PlagiarismType::full: {
      const FlatSource& src = *usable[rng_below(rng, usable.size())];
      out.output.text = src.raw->text;
      out.truth.push_back({{0, src.size()},
                           {0, out.output.text.size()},
                           src.raw->doc_id,
                           {0, src.size()},
                           SpanKind::exact});
      return out;
    }
    case PlagiarismType::photocopy:
    case PlagiarismType::ghost_writer: {
      const FlatSource& src = *usable[rng_below(rng, usable.size())];
      single_source_case(em, src, params, rng, false);
      break;
    }
    case PlagiarismType::poor_disguise: {
      if (params.synonyms.empty())
        throw ParameterError("poor_disguise requires a synonym table");
      const FlatSource& src = *usable[rng_below(rng, usable.size())];
      single_source_case(em, src, params, rng, true);
      break;
    }
    case PlagiarismType::self_stealer: {
      if (params.own_prefix.empty())
        throw ParameterError("self_stealer requires own_prefix");
      std::vector<const FlatSource*> own;
      for (const FlatSource* f : usable)
        if (f->raw->doc_id.rfind(params.own_prefix, 0) == 0) own.push_back(f);
      if (own.empty())
        throw ParameterError("self_stealer: no pool document matches own_prefix '" +
                             params.own_prefix + "'");
      const FlatSource& src = *own[rng_below(rng, own.size())];
      single_source_case(em, src, params, rng, false);
      break;
    }
    case PlagiarismType::potluck:
      multi_source_case(em, usable, params, rng, "potluck");
      break;
    case PlagiarismType::partial:
      if (params.n_sources < 2 || params.n_sources > 3)
        throw ParameterError("partial requires n_sources in [2, 3]");
      multi_source_case(em, usable, params, rng, "partial");
      break;
  }

  BuiltText built = build_text(em);
  out.output.text = std::move(built.text);
  for (const Emitter::Rec& r : em.recs) {
    out.truth.push_back({{r.out_begin, r.out_end},
                         {built.word_chars[r.out_begin].begin,
                          built.word_chars[r.out_end - 1].end},
                         r.source_id,
                         {r.src_begin, r.src_begin + (r.out_end - r.out_begin)},
                         r.kind});
  }
  return out;
}

std::string padded_index(std::size_t i) {
  std::string s = std::to_string(i);
  while (s.size() < 3) s.insert(s.begin(), '0');
  return s;
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write file: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

ordered_json span_to_json(const GroundTruthSpan& s) {
  return ordered_json{
      {"target_word_span", {s.target_words.begin, s.target_words.end}},
      {"target_char_span", {s.target_chars.begin, s.target_chars.end}},
      {"source_id", s.source_id},
      {"source_word_span", {s.source_words.begin, s.source_words.end}},
      {"kind", s.kind == SpanKind::exact ? "exact" : "disguised"},
  };
}

GroundTruthSpan span_from_json(const ordered_json& j) {
  GroundTruthSpan s;
  s.target_words = {j.at("target_word_span").at(0).get<std::size_t>(),
                    j.at("target_word_span").at(1).get<std::size_t>()};
  s.target_chars = {j.at("target_char_span").at(0).get<std::size_t>(),
                    j.at("target_char_span").at(1).get<std::size_t>()};
  s.source_id = j.at("source_id").get<std::string>();
  s.source_words = {j.at("source_word_span").at(0).get<std::size_t>(),
                    j.at("source_word_span").at(1).get<std::size_t>()};
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "exact")
    s.kind = SpanKind::exact;
  else if (kind == "disguised")
    s.kind = SpanKind::disguised;
  else
    throw CorruptFileError("unknown truth span kind: " + kind);
  return s;
}

}  // namespace

const char* to_string(PlagiarismType t) {
  switch (t) {
    case PlagiarismType::photocopy: return "photocopy";
    case PlagiarismType::ghost_writer: return "ghost_writer";
    case PlagiarismType::potluck: return "potluck";
    case PlagiarismType::poor_disguise: return "poor_disguise";
    case PlagiarismType::self_stealer: return "self_stealer";
    case PlagiarismType::partial: return "partial";
    case PlagiarismType::full: return "full";
    case PlagiarismType::clean: return "clean";
  }
  return "unknown";
}

PlagiarismType ptype_from_string(const std::string& name) {
  static const std::map<std::string, PlagiarismType> table = {
      {"photocopy", PlagiarismType::photocopy},
      {"ghost_writer", PlagiarismType::ghost_writer},
      {"potluck", PlagiarismType::potluck},
      {"poor_disguise", PlagiarismType::poor_disguise},
      {"self_stealer", PlagiarismType::self_stealer},
      {"partial", PlagiarismType::partial},
      {"full", PlagiarismType::full},
      {"clean", PlagiarismType::clean},
  };
  auto it = table.find(name);
  if (it == table.end())
    throw ParameterError("unknown plagiarism type: " + name);
  return it->second;
}

GenCase generate_case(const std::vector<RawDocument>& pool, PlagiarismType ptype,
                      const GenParams& params, std::uint64_t seed) {
  if (pool.empty()) throw ParameterError("source pool is empty");
  std::vector<FlatSource> flats;
  flats.reserve(pool.size());
  for (const RawDocument& d : pool) flats.push_back(flatten(d));
  return make_case(flats, ptype, params, seed,
                   std::string("case_000_") + to_string(ptype));
}

GeneratedCorpus generate_suite(const std::vector<RawDocument>& pool,
                               const std::vector<PlanEntry>& plan,
                               std::uint64_t seed) {
  if (pool.empty()) throw ParameterError("source pool is empty");
  std::vector<FlatSource> flats;
  flats.reserve(pool.size());
  for (const RawDocument& d : pool) flats.push_back(flatten(d));

  GeneratedCorpus corpus;
  corpus.seed = seed;
  std::size_t idx = 0;
  for (std::size_t e = 0; e < plan.size(); ++e) {
    const PlanEntry& entry = plan[e];
    for (std::size_t c = 0; c < entry.count; ++c, ++idx) {
      const std::uint64_t case_seed =
          splitmix64(seed ^ splitmix64(0xC0FFEEULL + idx));
      std::string case_id =
          "case_" + padded_index(idx) + "_" + to_string(entry.ptype);
      try {
        corpus.cases.push_back(make_case(flats, entry.ptype, entry.params,
                                         case_seed, std::move(case_id)));
      } catch (const ParameterError& err) {
        throw ParameterError("plan entry " + std::to_string(e) + " (" +
                             to_string(entry.ptype) + "): " + err.what());
      }
    }
  }
  return corpus;
}

void write_corpus(const GeneratedCorpus& corpus, const std::string& out_dir) {
  std::error_code ec;
  fs::create_directories(fs::path(out_dir) / "cases", ec);
  fs::create_directories(fs::path(out_dir) / "truth", ec);
  if (ec) throw IoError("cannot create corpus directories under " + out_dir);

  ordered_json manifest;
  manifest["seed"] = corpus.seed;
  manifest["cases"] = ordered_json::array();

  for (const GenCase& c : corpus.cases) {
    const std::string case_rel = "cases/" + c.case_id + ".txt";
    const std::string truth_rel = "truth/" + c.case_id + ".json";
    write_file((fs::path(out_dir) / case_rel).string(), c.output.text);

    ordered_json truth;
    truth["case_id"] = c.case_id;
    truth["ptype"] = to_string(c.ptype);
    truth["spans"] = ordered_json::array();
    for (const GroundTruthSpan& s : c.truth)
      truth["spans"].push_back(span_to_json(s));
    write_file((fs::path(out_dir) / truth_rel).string(), truth.dump(2) + "\n");

    manifest["cases"].push_back(ordered_json{
        {"case_id", c.case_id},
        {"ptype", to_string(c.ptype)},
        {"seed", c.seed},
        {"params",
         ordered_json{{"copy_fraction", c.params.copy_fraction},
                      {"n_sources", c.params.n_sources},
                      {"synonym_rate", c.params.synonym_rate},
                      {"target_words", c.params.target_words},
                      {"own_prefix", c.params.own_prefix}}},
        {"case_file", case_rel},
        {"truth_file", truth_rel},
    });
  }
  write_file((fs::path(out_dir) / "manifest.json").string(),
             manifest.dump(2) + "\n");
}

const std::vector<std::string>& filler_vocabulary() {
  static const std::vector<std::string> vocab = {
      "zarvik",  "blenth",  "quopra",  "fendrel", "morvax",  "tiskun",
      "gravop",  "welnib",  "darvit",  "splok",   "krellun", "zophat",
      "minkro",  "talvex",  "brodun",  "yelvip",  "sorkal",  "plinvok",
      "drazem",  "vintrop", "quelsh",  "norvik",  "flardun", "skemvo",
      "truvalk", "glenpor", "zindral", "movrek",  "stalpin", "crundex",
      "vorlek",  "spranth", "dulkrim", "neftar",  "brimzol", "klaruv",
      "pondrix", "jelvak",  "wrandek", "zulpor",  "grintav", "miskrov",
      "treblix", "fonduk",  "velgrim", "snorpal", "quindex", "braldu",
      "zemvick", "hulgrat", "pravnok", "drelkin", "smovit",  "cravex",
      "klundor", "yarviz",  "troquil", "benzrik", "vulpod",  "greldan",
      "sniverk", "plorvam", "dunkret", "wazlik",  "frindek", "sulvrim",
      "kroplan", "zelvor",  "mandrix", "bluvrek", "stenkov", "girvalt",
      "prusnak", "dovlim",  "charvek", "nimbrov", "skredal", "vantrok",
      "luzmir",  "gropnel", "twilvok", "hervnik", "zompral", "druvnak",
      "felgorn", "miskral", "bravnit", "quolzen", "sarklit", "vindrok",
  };
  return vocab;
}

SynonymTable load_synonyms(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open synonym file: " + path);
  SynonymTable table;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string word, replacement, extra;
    if (!(row >> word)) continue;
    if (!(row >> replacement) || (row >> extra))
      throw ParameterError("synonym file " + path + " line " +
                           std::to_string(line_no) +
                           ": expected exactly two columns");
    const std::string key = normalize_word(word);
    if (key.empty() || normalize_word(replacement).empty())
      throw ParameterError("synonym file " + path + " line " +
                           std::to_string(line_no) + ": invalid entry");
    table[key] = replacement;
  }
  return table;
}

std::vector<PlanEntry> parse_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open plan file: " + path);

  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };

  std::vector<PlanEntry> plan;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    std::vector<std::string> fields;
    std::istringstream row(line);
    std::string field;
    while (std::getline(row, field, ',')) fields.push_back(trim(field));

    const std::string where = "plan file " + path + " line " + std::to_string(line_no);
    if (fields.size() < 2)
      throw ParameterError(where + ": expected 'ptype,count[,key=val...]'");

    PlanEntry entry;
    try {
      entry.ptype = ptype_from_string(fields[0]);
      entry.count = std::stoul(fields[1]);
      for (std::size_t i = 2; i < fields.size(); ++i) {
        const std::size_t eq = fields[i].find('=');
        if (eq == std::string::npos)
          throw ParameterError("expected key=val, got '" + fields[i] + "'");
        const std::string key = fields[i].substr(0, eq);
        const std::string val = fields[i].substr(eq + 1);
        if (key == "copy_fraction")
          entry.params.copy_fraction = std::stod(val);
        else if (key == "n_sources")
          entry.params.n_sources = std::stoul(val);
        else if (key == "synonym_rate")
          entry.params.synonym_rate = std::stod(val);
        else if (key == "target_words")
          entry.params.target_words = std::stoul(val);
        else if (key == "own_prefix")
          entry.params.own_prefix = val;
        else
          throw ParameterError("unknown key '" + key + "'");
      }
    } catch (const ParameterError& err) {
      throw ParameterError(where + ": " + err.what());
    } catch (const std::exception&) {
      throw ParameterError(where + ": malformed number");
    }
    if (entry.count == 0)
      throw ParameterError(where + ": count must be positive");
    plan.push_back(std::move(entry));
  }
  return plan;
}

CorpusManifest load_corpus(const std::string& corpus_dir) {
  const std::string manifest_path =
      (fs::path(corpus_dir) / "manifest.json").string();
  ordered_json manifest;
  try {
    manifest = ordered_json::parse(slurp(manifest_path));
  } catch (const IoError&) {
    throw;
  } catch (const std::exception& err) {
    throw CorruptFileError("corrupt manifest " + manifest_path + ": " + err.what());
  }

  CorpusManifest out;
  try {
    out.seed = manifest.at("seed").get<std::uint64_t>();
    for (const auto& jc : manifest.at("cases")) {
      CorpusCaseRecord rec;
      rec.case_id = jc.at("case_id").get<std::string>();
      rec.ptype = ptype_from_string(jc.at("ptype").get<std::string>());
      rec.case_file = jc.at("case_file").get<std::string>();
      rec.truth_file = jc.at("truth_file").get<std::string>();

      const std::string truth_path =
          (fs::path(corpus_dir) / rec.truth_file).string();
      ordered_json truth = ordered_json::parse(slurp(truth_path));
      for (const auto& js : truth.at("spans"))
        rec.truth.push_back(span_from_json(js));
      out.cases.push_back(std::move(rec));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& err) {
    throw CorruptFileError("corrupt corpus under " + corpus_dir + ": " + err.what());
  }
  return out;
}

}  // namespace chunkmatch
