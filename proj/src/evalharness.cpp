#include "chunkmatch/evalharness.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

#include "json.hpp"

#include "chunkmatch/errors.hpp"

using ordered_json = nlohmann::ordered_json;

namespace chunkmatch {

namespace {

double safe_div(std::size_t num, std::size_t den, double when_empty) {
  if (den == 0) return when_empty;
  return static_cast<double>(num) / static_cast<double>(den);
}

Metrics from_counts(std::size_t correct, std::size_t detected, std::size_t truth) {
  Metrics m;
  m.precision = safe_div(correct, detected, 1.0);
  m.recall = safe_div(correct, truth, 1.0);
  m.f1 = (m.precision + m.recall) == 0.0
             ? 0.0
             : 2.0 * m.precision * m.recall / (m.precision + m.recall);
  return m;
}

// Global word positions claimed by a report, derived from per-sentence
// positions and sentence word counts.
void detected_sets(const DocumentReport& report, std::set<std::size_t>& any,
                   std::set<std::size_t>& stem) {
  std::size_t offset = 0;
  for (const SentenceReport& s : report.sentences) {
    for (std::size_t p : s.covered_positions) any.insert(offset + p);
    for (std::size_t p : s.stemmed_positions) stem.insert(offset + p);
    offset += s.word_count;
  }
}

}  // namespace

Metrics word_level_prf(const std::set<std::size_t>& detected,
                       const std::set<std::size_t>& truth) {
  std::size_t correct = 0;
  for (std::size_t p : detected) correct += truth.count(p);
  return from_counts(correct, detected.size(), truth.size());
}

EvalResult evaluate(const CorpusManifest& corpus,
                    const std::map<std::string, DocumentReport>& reports) {
  EvalResult out;
  std::size_t pool_truth = 0, pool_detected = 0, pool_correct = 0;
  double sum_p = 0.0, sum_r = 0.0, sum_f = 0.0;

  for (const CorpusCaseRecord& rec : corpus.cases) {
    auto it = reports.find(rec.case_id);
    if (it == reports.end())
      throw ParameterError("no report for case: " + rec.case_id);

    std::set<std::size_t> any, stem;
    detected_sets(it->second, any, stem);

    std::set<std::size_t> exact_truth, disguised_truth;
    for (const GroundTruthSpan& s : rec.truth) {
      auto& dst = s.kind == SpanKind::exact ? exact_truth : disguised_truth;
      for (std::size_t p = s.target_words.begin; p < s.target_words.end; ++p)
        dst.insert(p);
    }

    CaseEval ce;
    ce.case_id = rec.case_id;
    ce.ptype = rec.ptype;
    ce.detected_words = any.size();
    ce.truth_words = exact_truth.size() + disguised_truth.size();
    for (std::size_t p : any) ce.correct_words += exact_truth.count(p);
    for (std::size_t p : stem) {
      const bool hit = disguised_truth.count(p) > 0;
      ce.correct_words += hit;
      ce.disguised_detected += hit;
    }
    ce.disguised_words = disguised_truth.size();
    ce.disguised_recall = safe_div(ce.disguised_detected, ce.disguised_words, 1.0);
    ce.metrics = from_counts(ce.correct_words, ce.detected_words, ce.truth_words);

    pool_truth += ce.truth_words;
    pool_detected += ce.detected_words;
    pool_correct += ce.correct_words;
    sum_p += ce.metrics.precision;
    sum_r += ce.metrics.recall;
    sum_f += ce.metrics.f1;

    TypeEval& te = out.per_type[to_string(rec.ptype)];
    ++te.cases;
    te.truth_words += ce.truth_words;
    te.detected_words += ce.detected_words;
    te.correct_words += ce.correct_words;

    out.cases.push_back(std::move(ce));
  }

  out.case_count = out.cases.size();
  out.micro = from_counts(pool_correct, pool_detected, pool_truth);
  if (out.case_count > 0) {
    out.macro.precision = sum_p / static_cast<double>(out.case_count);
    out.macro.recall = sum_r / static_cast<double>(out.case_count);
    out.macro.f1 = sum_f / static_cast<double>(out.case_count);
  }
  for (auto& [name, te] : out.per_type)
    te.micro = from_counts(te.correct_words, te.detected_words, te.truth_words);
  return out;
}

std::string render_eval_text(const EvalResult& result) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-28s %-14s %7s %7s %7s %7s %7s %7s\n",
                "case", "type", "truth", "det", "hit", "P", "R", "F1");
  out << buf;
  for (const CaseEval& c : result.cases) {
    std::snprintf(buf, sizeof(buf),
                  "%-28s %-14s %7zu %7zu %7zu %7.3f %7.3f %7.3f\n",
                  c.case_id.c_str(), to_string(c.ptype), c.truth_words,
                  c.detected_words, c.correct_words, c.metrics.precision,
                  c.metrics.recall, c.metrics.f1);
    out << buf;
  }
  std::snprintf(buf, sizeof(buf),
                "\nmicro: P=%.3f R=%.3f F1=%.3f  (%zu cases)\n",
                result.micro.precision, result.micro.recall, result.micro.f1,
                result.case_count);
  out << buf;
  std::snprintf(buf, sizeof(buf), "macro: P=%.3f R=%.3f F1=%.3f\n",
                result.macro.precision, result.macro.recall, result.macro.f1);
  out << buf;
  out << "per type:\n";
  for (const auto& [name, te] : result.per_type) {
    std::snprintf(buf, sizeof(buf),
                  "  %-14s cases=%-3zu P=%.3f R=%.3f F1=%.3f\n", name.c_str(),
                  te.cases, te.micro.precision, te.micro.recall, te.micro.f1);
    out << buf;
  }
  return out.str();
}

std::string render_eval_json(const EvalResult& result) {
  auto metrics_json = [](const Metrics& m) {
    return ordered_json{
        {"precision", m.precision}, {"recall", m.recall}, {"f1", m.f1}};
  };

  ordered_json j;
  j["aggregate"] = ordered_json{{"cases", result.case_count},
                                {"micro", metrics_json(result.micro)},
                                {"macro", metrics_json(result.macro)}};
  j["per_type"] = ordered_json::object();
  for (const auto& [name, te] : result.per_type) {
    ordered_json t = metrics_json(te.micro);
    t["cases"] = te.cases;
    j["per_type"][name] = std::move(t);
  }
  j["per_case"] = ordered_json::array();
  for (const CaseEval& c : result.cases) {
    j["per_case"].push_back(ordered_json{
        {"case_id", c.case_id},
        {"ptype", to_string(c.ptype)},
        {"truth_words", c.truth_words},
        {"detected_words", c.detected_words},
        {"correct_words", c.correct_words},
        {"precision", c.metrics.precision},
        {"recall", c.metrics.recall},
        {"f1", c.metrics.f1},
        {"disguised_recall", c.disguised_recall},
    });
  }
  return j.dump(2) + "\n";
}

}  // namespace chunkmatch
