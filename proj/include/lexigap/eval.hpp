#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "lexigap/corpus.hpp"
#include "lexigap/resolver.hpp"

namespace lexigap {

/// A text with words removed ("texte à trous").
struct ClozeInstance {
  Document document;
  /// Distinct target lemmas, in report order.
  std::vector<Lemma> removed;
  /// The document with every occurrence of a removed lemma excised.
  Document excised;
  /// Content lemmas of `excised`.
  std::vector<Lemma> context;
  /// Thematic segments of `excised`.
  std::vector<ThematicSegment> segments;
};

/// Draws `n` distinct lemmas whose part of speech is in `pos_pool`,
/// uniformly without replacement from the seeded generator, and excises all
/// their occurrences. Throws Error when fewer than `n` are eligible.
ClozeInstance make_cloze(const Document& doc, std::size_t n, const std::set<Pos>& pos_pool, std::uint64_t seed,
                         const SegmentationParams& segmentation = {});

/// Same with an explicit target list. Throws Error if a target does not occur
/// in the document.
ClozeInstance make_cloze_with(const Document& doc, const std::vector<Lemma>& removed,
                              const SegmentationParams& segmentation = {});

struct Metrics {
  double recall = 0;
  double precision = 0;
  std::set<Lemma> found;
  std::size_t returned_count = 0;
  std::size_t target_count = 0;
  /// Recall is reported as 1.0 when there are no targets.
  bool no_targets = false;
};

/// found = targets ∩ returned; recall = |found| / |targets|;
/// precision = |found| / |returned| (0 when nothing is returned).
Metrics compute_metrics(const std::vector<Lemma>& targets, const std::set<Lemma>& returned);

/// Runs `query_template` (its context is replaced by the instance's) and
/// scores the candidate lemma set. With `per_segment` the query carries the
/// instance's segments.
Metrics evaluate(const ClozeInstance& instance, const Query& query_template, const Resolver& resolver,
                 bool per_segment = false);

/// Candidate lemma set for one context (empty context -> empty set).
std::set<Lemma> candidate_lemmas(const std::vector<Lemma>& context, const Query& query_template,
                                 const Resolver& resolver, std::vector<DomainSelection>* selected = nullptr);

/// Per-segment found/selected table. Columns are the segments ST1..STn
/// followed by the whole text.
struct SegmentReport {
  struct WordRow {
    Lemma lemma;
    std::vector<bool> found;
  };
  struct DomainRow {
    DomainId id = 0;
    std::string name;
    std::size_t word_count = 0;
    /// Words of structures touching the whole-text context.
    std::size_t restricted_count = 0;
    /// 1 - restricted_count / word_count
    double reduction = 0;
    std::vector<bool> selected;
  };

  std::vector<std::string> columns;
  std::vector<WordRow> words;
  std::vector<DomainRow> domains;
  std::vector<Metrics> metrics;
};

/// Throws Error if the instance has no segments.
SegmentReport segment_report(const ClozeInstance& instance, const Query& query_template, const Resolver& resolver);

/// Tab-separated rendering: word rows with +/-, then domain rows with counts,
/// reduction percentage and + marks, then a recall/precision line per column.
std::string report_tsv(const SegmentReport& report);

}  // namespace lexigap
