#pragma once

#include <istream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "lexigap/lemma.hpp"

namespace lexigap {

/// Restricted Damerau-Levenshtein (optimal string alignment) distance over
/// code points: insertions, deletions, substitutions and adjacent
/// transpositions, each of cost 1.
std::size_t damerau_levenshtein(std::u32string_view a, std::u32string_view b);
std::size_t damerau_levenshtein(std::string_view a, std::string_view b);

/// Pronunciations keyed by lemma text (`lemma<TAB>phonemes` per line).
using PronunciationMap = std::map<std::string, std::string, std::less<>>;
PronunciationMap load_pronunciations(std::istream& in);
PronunciationMap load_pronunciations_file(const std::string& path);

/// Form lookup by shared initial characters and edit distance.
class PhonoIndex {
 public:
  PhonoIndex() = default;
  /// Forms are the pronunciation when one is given for the lemma's text,
  /// else the lemma text. Throws Error when prefix_length is 0.
  PhonoIndex(const std::set<Lemma>& lexemes, const PronunciationMap& pronunciations, std::size_t prefix_length);

  std::size_t prefix_length() const { return k_; }
  std::size_t size() const { return forms_.size(); }
  const std::map<Lemma, std::u32string>& forms() const { return forms_; }
  std::string form(const Lemma& l) const;
  const std::map<std::u32string, std::set<Lemma>>& prefix_buckets() const { return buckets_; }

 private:
  std::size_t k_ = 2;
  std::map<Lemma, std::u32string> forms_;
  std::map<std::u32string, std::set<Lemma>> buckets_;
};

PhonoIndex build_phono_index(const std::set<Lemma>& lexemes, const PronunciationMap& pronunciations = {},
                             std::size_t prefix_length = 2);

struct PhonoParams {
  std::size_t max_dist = 3;
  std::size_t min_prefix = 2;
  std::optional<Pos> pos_filter;
};

struct PhonoMatch {
  Lemma lemma;
  double similarity = 0;
};

/// Lemmas sharing at least `min_prefix` initial characters with the hint,
/// plus lemmas within `max_dist` edits of it, scored
/// 1 - dist / max(|hint|, |form|). Zero-similarity matches are dropped.
/// Sorted by similarity descending, then lemma. Throws Error on an empty
/// hint.
std::vector<PhonoMatch> similar_forms(const PhonoIndex& index, std::string_view hint, const PhonoParams& params = {});

}  // namespace lexigap
