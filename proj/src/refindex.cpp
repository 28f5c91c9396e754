#include "chunkmatch/refindex.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <numeric>
#include <set>

#include "chunkmatch/errors.hpp"

namespace chunkmatch {

const char* to_string(MatchMode mode) {
  return mode == MatchMode::exact ? "exact" : "stemmed";
}

namespace {

constexpr char kMagic[4] = {'C', 'H', 'K', 'M'};

void put_u16(std::string& out, std::uint16_t v) {
  out.push_back(static_cast<char>(v & 0xff));
  out.push_back(static_cast<char>((v >> 8) & 0xff));
}

void put_u32(std::string& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u64(std::string& out, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_str(std::string& out, const std::string& s) {
  put_u32(out, static_cast<std::uint32_t>(s.size()));
  out.append(s);
}

// Bounds-checked little-endian reader over an in-memory file image.
struct Reader {
  const std::string& buf;
  const std::string& path;
  std::size_t pos = 0;

  void need(std::size_t n) const {
    if (pos + n > buf.size())
      throw CorruptFileError("truncated index file: " + path);
  }
  std::uint16_t u16() {
    need(2);
    auto* p = reinterpret_cast<const unsigned char*>(buf.data() + pos);
    pos += 2;
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
  }
  std::uint32_t u32() {
    need(4);
    auto* p = reinterpret_cast<const unsigned char*>(buf.data() + pos);
    pos += 4;
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
  }
  std::uint64_t u64() {
    std::uint64_t lo = u32();
    std::uint64_t hi = u32();
    return lo | (hi << 32);
  }
  std::string str() {
    std::uint32_t len = u32();
    need(len);
    std::string s = buf.substr(pos, len);
    pos += len;
    return s;
  }
};

}  // namespace

ReferenceIndex ReferenceIndex::build(const std::vector<AnalyzedDocument>& docs) {
  ReferenceIndex index;
  std::set<std::string> seen;
  for (const AnalyzedDocument& doc : docs) {
    if (!seen.insert(doc.doc_id).second)
      throw ParameterError("duplicate doc_id in index build: " + doc.doc_id);

    auto ord = static_cast<std::uint32_t>(index.catalog_.size());
    index.catalog_.push_back({doc.doc_id, doc.origin, doc.total_words});

    std::uint32_t pos = 0;
    for (const Sentence& sentence : doc.sentences) {
      for (const Token& tok : sentence.tokens) {
        Posting posting{ord, pos, static_cast<std::uint32_t>(tok.sentence_idx),
                        static_cast<std::uint32_t>(tok.line_no)};
        index.exact_terms_[tok.normalized].push_back(posting);
        index.stem_terms_[tok.stem].push_back(posting);
        ++pos;
      }
    }
  }
  index.finalize();
  return index;
}

// Posting lists are kept sorted by (source_id, word_pos); ordinals stay in
// input order, so sorting goes through a rank table.
void ReferenceIndex::finalize() {
  std::vector<std::uint32_t> by_id(catalog_.size());
  std::iota(by_id.begin(), by_id.end(), 0u);
  std::sort(by_id.begin(), by_id.end(), [this](std::uint32_t a, std::uint32_t b) {
    return catalog_[a].source_id < catalog_[b].source_id;
  });
  ord_rank_.assign(catalog_.size(), 0);
  for (std::uint32_t rank = 0; rank < by_id.size(); ++rank) ord_rank_[by_id[rank]] = rank;

  auto sort_table = [this](TermTable& table) {
    for (auto& [term, postings] : table) {
      std::sort(postings.begin(), postings.end(), [this](const Posting& a, const Posting& b) {
        if (ord_rank_[a.source_ord] != ord_rank_[b.source_ord])
          return ord_rank_[a.source_ord] < ord_rank_[b.source_ord];
        return a.word_pos < b.word_pos;
      });
    }
  };
  sort_table(exact_terms_);
  sort_table(stem_terms_);
}

std::vector<PhraseHit> ReferenceIndex::phrase_query(std::span<const std::string> phrase,
                                                    MatchMode mode) const {
  if (phrase.empty()) throw ParameterError("phrase_query: empty phrase");

  const TermTable& terms = table(mode);
  auto first = terms.find(phrase[0]);
  if (first == terms.end()) return {};

  // Candidates are start postings; each later token must occur at start+i
  // in the same source.
  std::vector<const Posting*> candidates;
  candidates.reserve(first->second.size());
  for (const Posting& p : first->second) candidates.push_back(&p);

  for (std::size_t i = 1; i < phrase.size() && !candidates.empty(); ++i) {
    auto it = terms.find(phrase[i]);
    if (it == terms.end()) return {};
    const std::vector<Posting>& list = it->second;

    auto rank_less = [this](const Posting& a, std::pair<std::uint32_t, std::uint32_t> key) {
      if (ord_rank_[a.source_ord] != key.first) return ord_rank_[a.source_ord] < key.first;
      return a.word_pos < key.second;
    };

    std::vector<const Posting*> surviving;
    surviving.reserve(candidates.size());
    for (const Posting* start : candidates) {
      std::pair<std::uint32_t, std::uint32_t> key{ord_rank_[start->source_ord],
                                                  start->word_pos + static_cast<std::uint32_t>(i)};
      auto hit = std::lower_bound(list.begin(), list.end(), key, rank_less);
      if (hit != list.end() && hit->source_ord == start->source_ord &&
          hit->word_pos == key.second)
        surviving.push_back(start);
    }
    candidates.swap(surviving);
  }

  std::vector<PhraseHit> hits;
  hits.reserve(candidates.size());
  for (const Posting* p : candidates) {
    const SourceRecord& src = catalog_[p->source_ord];
    hits.push_back({src.source_id, p->source_ord, p->word_pos, p->sentence_idx, p->line_no});
  }
  return hits;
}

void ReferenceIndex::save(const std::string& path) const {
  std::string out;
  out.append(kMagic, sizeof kMagic);
  put_u16(out, kFormatVersion);
  put_u16(out, 0);

  put_u32(out, static_cast<std::uint32_t>(catalog_.size()));
  for (const SourceRecord& src : catalog_) {
    put_str(out, src.source_id);
    put_str(out, src.origin);
    put_u64(out, src.total_words);
  }

  auto write_table = [&out](const TermTable& table) {
    put_u64(out, table.size());
    for (const auto& [term, postings] : table) {
      put_str(out, term);
      put_u64(out, postings.size());
      for (const Posting& p : postings) {
        put_u32(out, p.source_ord);
        put_u32(out, p.word_pos);
        put_u32(out, p.sentence_idx);
        put_u32(out, p.line_no);
      }
    }
  };
  write_table(exact_terms_);
  write_table(stem_terms_);

  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw IoError("cannot open index file for writing: " + path);
  file.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!file) throw IoError("failed writing index file: " + path);
}

ReferenceIndex ReferenceIndex::load(const std::string& path) {
  std::ifstream file(path, std::ios::binary);
  if (!file) throw IoError("cannot open index file: " + path);
  std::string buf((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());

  Reader r{buf, path};
  r.need(sizeof kMagic);
  if (std::memcmp(buf.data(), kMagic, sizeof kMagic) != 0)
    throw CorruptFileError("not a chunkmatch index (bad magic): " + path);
  r.pos = sizeof kMagic;

  std::uint16_t version = r.u16();
  if (version != kFormatVersion)
    throw VersionMismatchError("index file " + path + " has format version " +
                               std::to_string(version) + ", this build reads version " +
                               std::to_string(kFormatVersion));
  r.u16();  // reserved

  ReferenceIndex index;
  std::uint32_t source_count = r.u32();
  index.catalog_.reserve(source_count);
  for (std::uint32_t i = 0; i < source_count; ++i) {
    SourceRecord src;
    src.source_id = r.str();
    src.origin = r.str();
    src.total_words = r.u64();
    index.catalog_.push_back(std::move(src));
  }

  auto read_table = [&r, &index, &path](TermTable& table) {
    std::uint64_t term_count = r.u64();
    for (std::uint64_t t = 0; t < term_count; ++t) {
      std::string term = r.str();
      std::uint64_t n = r.u64();
      std::vector<Posting>& postings = table[term];
      postings.reserve(n);
      for (std::uint64_t i = 0; i < n; ++i) {
        Posting p;
        p.source_ord = r.u32();
        p.word_pos = r.u32();
        p.sentence_idx = r.u32();
        p.line_no = r.u32();
        if (p.source_ord >= index.catalog_.size())
          throw CorruptFileError("index file references unknown source: " + path);
        postings.push_back(p);
      }
    }
  };
  read_table(index.exact_terms_);
  read_table(index.stem_terms_);
  if (r.pos != buf.size())
    throw CorruptFileError("index file has trailing garbage: " + path);

  index.finalize();
  return index;
}

}  // namespace chunkmatch
