#pragma once

#include <cstddef>
#include <istream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lexigap/lemma.hpp"

namespace lexigap {

struct Token {
  std::string surface;
  /// Absent for function words.
  std::optional<Lemma> lemma;
  std::size_t sentence_index = 0;
  std::size_t position = 0;
  bool preposition = false;
};

struct AnnotatedTriple {
  std::size_t sentence_index = 0;
  SyntTriple triple;
};

/// One document of a lemmatized corpus.
struct Document {
  std::vector<Token> tokens;
  /// Precomputed `#T` annotations, in input order.
  std::vector<AnnotatedTriple> triples;
  /// sentence_starts[s] is the position of the first token of sentence s
  /// (or the position the next token would get, for an empty sentence).
  std::vector<std::size_t> sentence_starts;

  std::size_t sentence_count() const { return sentence_starts.size(); }
  /// Content lemmas in token order.
  std::vector<Lemma> content_lemmas() const;
};

/// Parses the one-token-per-line corpus format:
///
///     surface|POS|lemma      POS in {N, V, ADJ, F}; F takes lemma "-"
///     #S                     sentence boundary
///     #T verb|link|noun      precomputed triple, link in {subj, cod, prep:<p>}
///     <blank line>           document boundary
///
/// Other lines starting with '#' are comments. A few common function-word
/// tags (DET, PREP, P, PRO, CONJ, ADV, PUNCT, PONCT, NUM, CL) are accepted as
/// aliases of F; PREP and P mark prepositions.
/// Throws ParseError with the offending line number.
std::vector<Document> parse_corpus(std::istream& in);
std::vector<Document> parse_corpus_file(const std::string& path);

/// Writes documents back in corpus format (function words get tag F).
void write_corpus(std::ostream& out, const std::vector<Document>& docs);

/// Incremental builder used by generators and tests.
class DocumentBuilder {
 public:
  DocumentBuilder& word(std::string_view surface, Pos pos, std::string_view lemma);
  DocumentBuilder& word(const Lemma& lemma);
  DocumentBuilder& function(std::string_view surface, bool preposition = false);
  DocumentBuilder& triple(SyntTriple t);
  DocumentBuilder& end_sentence();
  Document build() const { return doc_; }

 private:
  void open_sentence_if_needed();
  Document doc_;
  bool sentence_open_ = false;
};

bool is_builtin_preposition(std::string_view lowered_surface);

// Thematic segmentation ------------------------------------------------------

struct SegmentationParams {
  std::size_t window = 10;
  std::size_t min_segment = 15;
  double boundary_quantile = 0.25;

  /// Throws Error when out of range.
  void validate() const;
};

struct ThematicSegment {
  /// 1-based within its document (ST1, ST2, ...).
  std::size_t id = 1;
  /// Half-open [begin, end) over token positions.
  std::size_t begin = 0;
  std::size_t end = 0;
  std::vector<Lemma> content_lemmas;
  std::vector<SyntTriple> triples;

  std::size_t size() const { return end - begin; }
};

/// cohesion[g - 1] for the gap g between tokens g-1 and g, g in [1, n): the
/// number of distinct content lemmas shared by the `window` tokens before and
/// the `window` tokens after the gap (windows are clipped at the edges).
std::vector<std::size_t> cohesion_profile(const Document& doc, std::size_t window);

/// Lexical-cohesion segmentation. Boundaries go at valleys of the cohesion
/// profile that fall strictly below its `boundary_quantile` quantile, deepest
/// first, keeping every segment at least `min_segment` tokens long. The
/// quantile is taken over the gaps whose two windows are both full (all gaps
/// when there are none). Triples are left empty; see extract_triples.
std::vector<ThematicSegment> segment_text(const Document& doc, const SegmentationParams& params = {});

/// Cuts the document at explicit positions (sorted, within (0, n)).
std::vector<ThematicSegment> segment_at(const Document& doc, const std::vector<std::size_t>& cuts);

/// Triples of the sentences anchored in `segment` (a sentence belongs to the
/// segment holding its first position). Annotated sentences return their
/// annotations verbatim; the others go through the heuristic extractor
/// restricted to the sentence's tokens inside the segment.
std::vector<SyntTriple> extract_triples(const Document& doc, const ThematicSegment& segment);

/// Heuristic verb/noun relation finder over one token span:
/// the noun right before a verb (skipping non-prepositional function words and
/// adjectives) is its Subject; the first noun after the verb with no
/// intervening preposition is its DirectObject; a noun following a
/// preposition after the verb gets Prep(preposition). Scanning stops at the
/// next verb.
std::vector<SyntTriple> heuristic_triples(std::span<const Token> tokens);

/// segment_text followed by extract_triples on every segment.
std::vector<ThematicSegment> segment_document(const Document& doc, const SegmentationParams& params = {});

}  // namespace lexigap
