#pragma once

#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "chunkmatch/corpusgen.hpp"
#include "chunkmatch/scoring.hpp"

namespace chunkmatch {

struct Metrics {
  double precision = 1.0;
  double recall = 1.0;
  double f1 = 1.0;
};

/// Word-level metrics over sets of global word positions. An empty detected
/// set scores precision 1.0; an empty truth set scores recall 1.0.
Metrics word_level_prf(const std::set<std::size_t>& detected,
                       const std::set<std::size_t>& truth);

struct CaseEval {
  std::string case_id;
  PlagiarismType ptype = PlagiarismType::clean;
  std::size_t truth_words = 0;
  std::size_t detected_words = 0;
  std::size_t correct_words = 0;
  Metrics metrics;
  std::size_t disguised_words = 0;
  std::size_t disguised_detected = 0;
  double disguised_recall = 1.0;
};

struct TypeEval {
  std::size_t cases = 0;
  std::size_t truth_words = 0;
  std::size_t detected_words = 0;
  std::size_t correct_words = 0;
  Metrics micro;
};

struct EvalResult {
  Metrics micro;  // pooled word positions across all cases
  Metrics macro;  // unweighted mean of per-case metrics
  std::size_t case_count = 0;
  std::map<std::string, TypeEval> per_type;
  std::vector<CaseEval> cases;
};

/// Scores detector reports against corpus ground truth. A word position
/// counts as correctly detected when it is covered and lies in an exact truth
/// span, or is covered by the stemmed pass and lies in a disguised span.
/// Throws ParameterError when a case in the manifest has no report.
EvalResult evaluate(const CorpusManifest& corpus,
                    const std::map<std::string, DocumentReport>& reports);

std::string render_eval_text(const EvalResult& result);
std::string render_eval_json(const EvalResult& result);

}  // namespace chunkmatch
