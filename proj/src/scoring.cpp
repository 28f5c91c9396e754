#include "chunkmatch/scoring.hpp"

#include <algorithm>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "chunkmatch/errors.hpp"

namespace chunkmatch {

using ordered_json = nlohmann::ordered_json;

namespace {

std::string sentence_text(const Sentence& sentence) {
  std::string text;
  for (const Token& tok : sentence.tokens) {
    if (!text.empty()) text.push_back(' ');
    text.append(tok.surface);
  }
  return text;
}

struct OriginBucket {
  std::set<std::size_t> exact_positions;
  std::set<std::size_t> stemmed_positions;
  bool exact_multi = false;
  bool stemmed_multi = false;
};

std::string format_percent(double fraction) {
  std::ostringstream out;
  out.precision(1);
  out << std::fixed << fraction * 100.0 << '%';
  return out.str();
}

std::string html_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out.push_back(c);
    }
  }
  return out;
}

}  // namespace

DocumentReport score(const AnalyzedDocument& doc, const DocumentMatches& matches,
                     const ScoringConfig& cfg) {
  DocumentReport report;
  report.doc_id = doc.doc_id;
  report.total_words = doc.total_words;
  report.degraded = matches.degraded;
  report.config_echo = cfg.config_echo;

  report.sentences.reserve(doc.sentences.size());
  for (const Sentence& sentence : doc.sentences) {
    SentenceReport sr;
    sr.sentence_idx = sentence.sentence_idx;
    sr.page_no = sentence.page_no;
    sr.first_line = sentence.first_line;
    sr.last_line = sentence.last_line;
    sr.word_count = sentence.tokens.size();
    sr.text = sentence_text(sentence);
    report.sentences.push_back(std::move(sr));
  }

  // Per sentence: union of matched spans, plus per-origin position sets.
  std::vector<std::set<std::size_t>> covered(doc.sentences.size());
  std::vector<std::set<std::size_t>> stem_covered(doc.sentences.size());
  std::vector<std::map<std::string, OriginBucket>> buckets(doc.sentences.size());

  for (const WindowMatch& m : matches.matches) {
    if (m.sentence_idx >= doc.sentences.size())
      throw ParameterError("match references sentence " + std::to_string(m.sentence_idx) +
                           " outside document " + doc.doc_id);
    const std::size_t len = doc.sentences[m.sentence_idx].tokens.size();
    if (m.left > m.right || m.right >= len)
      throw ParameterError("match span out of range in sentence " +
                           std::to_string(m.sentence_idx) + " of " + doc.doc_id);

    const bool multi = [&m] {
      std::set<std::string> origins;
      for (const SourceHit& h : m.hits) origins.insert(h.origin);
      return origins.size() > 1;
    }();

    for (std::size_t p = m.left; p <= m.right; ++p) {
      covered[m.sentence_idx].insert(p);
      if (m.mode == MatchMode::stemmed) stem_covered[m.sentence_idx].insert(p);
      for (const SourceHit& h : m.hits) {
        OriginBucket& bucket = buckets[m.sentence_idx][h.origin];
        if (m.mode == MatchMode::exact) {
          bucket.exact_positions.insert(p);
          bucket.exact_multi |= multi;
        } else {
          bucket.stemmed_positions.insert(p);
          bucket.stemmed_multi |= multi;
        }
      }
    }
  }

  std::size_t flagged_count = 0;
  for (SentenceReport& sr : report.sentences) {
    const std::size_t idx = sr.sentence_idx;
    sr.covered_positions.assign(covered[idx].begin(), covered[idx].end());
    sr.stemmed_positions.assign(stem_covered[idx].begin(), stem_covered[idx].end());
    sr.coverage = sr.word_count == 0
                      ? 0.0
                      : static_cast<double>(sr.covered_positions.size()) /
                            static_cast<double>(sr.word_count);
    sr.flagged = sr.word_count > 0 && sr.coverage >= cfg.sentence_threshold;
    if (sr.flagged) ++flagged_count;
    report.covered_words += sr.covered_positions.size();

    for (auto& [origin, bucket] : buckets[idx]) {
      if (!bucket.exact_positions.empty()) {
        sr.attributions.push_back(
            {origin, bucket.exact_positions.size(), MatchMode::exact, bucket.exact_multi});
        report.per_source[origin] += bucket.exact_positions.size();
      }
      // Stemmed credit only for positions this origin's exact windows missed.
      std::size_t stem_only = 0;
      for (std::size_t p : bucket.stemmed_positions)
        if (!bucket.exact_positions.count(p)) ++stem_only;
      if (stem_only > 0) {
        sr.attributions.push_back({origin, stem_only, MatchMode::stemmed, bucket.stemmed_multi});
        report.per_source[origin] += stem_only;
      }
    }
  }

  report.plagiarism_percentage =
      report.total_words == 0
          ? 0.0
          : 100.0 * static_cast<double>(report.covered_words) /
                static_cast<double>(report.total_words);
  report.flagged_sentence_fraction =
      report.sentences.empty()
          ? 0.0
          : static_cast<double>(flagged_count) / static_cast<double>(report.sentences.size());
  return report;
}

namespace {

std::size_t render_text(const DocumentReport& r, std::ostream& out) {
  std::ostringstream buf;
  buf << "Document: " << r.doc_id << '\n';
  buf << "Plagiarism: " << format_percent(r.plagiarism_percentage / 100.0) << " ("
      << r.covered_words << " of " << r.total_words << " words)";
  if (r.degraded) buf << "  [degraded: some backend queries failed]";
  buf << '\n';
  std::size_t flagged = 0;
  for (const SentenceReport& sr : r.sentences) flagged += sr.flagged ? 1 : 0;
  buf << "Flagged sentences: " << flagged << " of " << r.sentences.size() << '\n';

  std::size_t current_page = 0;
  for (const SentenceReport& sr : r.sentences) {
    if (!sr.flagged) continue;
    if (sr.page_no != current_page) {
      current_page = sr.page_no;
      buf << "\nPage " << current_page << '\n';
    }
    buf << "  sentence " << sr.sentence_idx << ", ";
    if (sr.first_line == sr.last_line)
      buf << "line " << sr.first_line;
    else
      buf << "lines " << sr.first_line << "-" << sr.last_line;
    buf << ": " << format_percent(sr.coverage) << " copied (" << sr.covered_positions.size()
        << " of " << sr.word_count << " words)\n";
    buf << "    \"" << sr.text << "\"\n";
    for (const Attribution& a : sr.attributions) {
      buf << "    " << a.origin << ": " << a.words_copied << " words (" << to_string(a.mode);
      if (a.multi_origin) buf << ", multi-origin";
      buf << ")\n";
    }
  }

  if (!r.per_source.empty()) {
    buf << "\nPer-source totals\n";
    for (const auto& [origin, words] : r.per_source)
      buf << "  " << origin << ": " << words << " words\n";
  }

  std::string s = buf.str();
  out << s;
  return s.size();
}

ordered_json report_to_json(const DocumentReport& r) {
  ordered_json j;
  j["doc_id"] = r.doc_id;
  j["plagiarism_percentage"] = r.plagiarism_percentage;
  j["flagged_sentence_fraction"] = r.flagged_sentence_fraction;
  j["degraded"] = r.degraded;
  ordered_json cfg = ordered_json::object();
  for (const auto& [key, value] : r.config_echo) cfg[key] = value;
  j["config"] = cfg;
  ordered_json sentences = ordered_json::array();
  for (const SentenceReport& sr : r.sentences) {
    ordered_json js;
    js["sentence_idx"] = sr.sentence_idx;
    js["page_no"] = sr.page_no;
    js["line_span"] = {sr.first_line, sr.last_line};
    js["coverage"] = sr.coverage;
    js["flagged"] = sr.flagged;
    js["word_count"] = sr.word_count;
    js["covered_positions"] = sr.covered_positions;
    js["stemmed_positions"] = sr.stemmed_positions;
    ordered_json attrs = ordered_json::array();
    for (const Attribution& a : sr.attributions) {
      ordered_json ja;
      ja["origin"] = a.origin;
      ja["words_copied"] = a.words_copied;
      ja["mode"] = to_string(a.mode);
      attrs.push_back(std::move(ja));
    }
    js["attributions"] = std::move(attrs);
    sentences.push_back(std::move(js));
  }
  j["sentences"] = std::move(sentences);
  return j;
}

std::size_t render_json(const DocumentReport& r, std::ostream& out) {
  std::string s = report_to_json(r).dump(2);
  s.push_back('\n');
  out << s;
  return s.size();
}

std::size_t render_html(const DocumentReport& r, std::ostream& out) {
  std::ostringstream buf;
  buf << "<!DOCTYPE html>\n<html>\n<head>\n<meta charset=\"utf-8\">\n"
      << "<title>chunkmatch report: " << html_escape(r.doc_id) << "</title>\n"
      << "<style>\n"
         "body { font-family: sans-serif; margin: 2em; max-width: 60em; }\n"
         ".sentence { margin: 0.4em 0; }\n"
         ".flagged { background: #fff3b0; }\n"
         ".meta { color: #555; font-size: 0.85em; }\n"
         ".degraded { color: #a00; }\n"
         "ul.attr { margin: 0.1em 0 0.6em 2em; font-size: 0.85em; }\n"
         "</style>\n</head>\n<body>\n";
  buf << "<h1>" << html_escape(r.doc_id) << "</h1>\n";
  buf << "<p>Plagiarism: <strong>" << format_percent(r.plagiarism_percentage / 100.0)
      << "</strong> (" << r.covered_words << " of " << r.total_words << " words)";
  if (r.degraded) buf << " <span class=\"degraded\">[degraded]</span>";
  buf << "</p>\n";

  std::size_t current_page = 0;
  for (const SentenceReport& sr : r.sentences) {
    if (sr.page_no != current_page) {
      current_page = sr.page_no;
      buf << "<h2>Page " << current_page << "</h2>\n";
    }
    buf << "<p class=\"sentence\">";
    if (sr.flagged)
      buf << "<mark class=\"flagged\">" << html_escape(sr.text) << "</mark>";
    else
      buf << html_escape(sr.text);
    buf << " <span class=\"meta\">lines " << sr.first_line << "&ndash;" << sr.last_line << ", "
        << format_percent(sr.coverage) << " copied</span></p>\n";
    if (!sr.attributions.empty()) {
      buf << "<ul class=\"attr\">\n";
      for (const Attribution& a : sr.attributions) {
        buf << "<li><a href=\"" << html_escape(a.origin) << "\">" << html_escape(a.origin)
            << "</a>: " << a.words_copied << " words (" << to_string(a.mode);
        if (a.multi_origin) buf << ", multi-origin";
        buf << ")</li>\n";
      }
      buf << "</ul>\n";
    }
  }
  buf << "</body>\n</html>\n";

  std::string s = buf.str();
  out << s;
  return s.size();
}

}  // namespace

std::size_t render(const DocumentReport& report, ReportFormat format, std::ostream& out) {
  switch (format) {
    case ReportFormat::text: return render_text(report, out);
    case ReportFormat::json: return render_json(report, out);
    case ReportFormat::html: return render_html(report, out);
  }
  return 0;
}

std::string render_to_string(const DocumentReport& report, ReportFormat format) {
  std::ostringstream out;
  render(report, format, out);
  return out.str();
}

DocumentReport parse_report_json(const std::string& json_text) {
  ordered_json j = ordered_json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object())
    throw CorruptFileError("malformed report JSON");
  try {
    DocumentReport r;
    r.doc_id = j.at("doc_id").get<std::string>();
    r.plagiarism_percentage = j.at("plagiarism_percentage").get<double>();
    r.flagged_sentence_fraction = j.at("flagged_sentence_fraction").get<double>();
    r.degraded = j.at("degraded").get<bool>();
    for (const auto& [key, value] : j.at("config").items())
      r.config_echo.emplace_back(key, value.get<std::string>());
    for (const auto& js : j.at("sentences")) {
      SentenceReport sr;
      sr.sentence_idx = js.at("sentence_idx").get<std::size_t>();
      sr.page_no = js.at("page_no").get<std::size_t>();
      sr.first_line = js.at("line_span").at(0).get<std::size_t>();
      sr.last_line = js.at("line_span").at(1).get<std::size_t>();
      sr.coverage = js.at("coverage").get<double>();
      sr.flagged = js.at("flagged").get<bool>();
      sr.word_count = js.at("word_count").get<std::size_t>();
      sr.covered_positions = js.at("covered_positions").get<std::vector<std::size_t>>();
      sr.stemmed_positions = js.at("stemmed_positions").get<std::vector<std::size_t>>();
      for (const auto& ja : js.at("attributions")) {
        Attribution a;
        a.origin = ja.at("origin").get<std::string>();
        a.words_copied = ja.at("words_copied").get<std::size_t>();
        a.mode = ja.at("mode").get<std::string>() == "stemmed" ? MatchMode::stemmed
                                                               : MatchMode::exact;
        sr.attributions.push_back(std::move(a));
      }
      r.total_words += sr.word_count;
      r.covered_words += sr.covered_positions.size();
      for (const Attribution& a : sr.attributions) r.per_source[a.origin] += a.words_copied;
      r.sentences.push_back(std::move(sr));
    }
    return r;
  } catch (const ordered_json::exception& e) {
    throw CorruptFileError(std::string("malformed report JSON: ") + e.what());
  }
}

}  // namespace chunkmatch
