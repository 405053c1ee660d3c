#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "lexigap/corpus.hpp"

namespace lexigap {

/// Vocabulary and verb-noun triples of one planted topic.
struct TopicSpec {
  std::vector<Lemma> verbs;
  std::vector<Lemma> nouns;
  std::vector<Lemma> adjectives;
  std::vector<SyntTriple> triples;

  std::vector<Lemma> vocabulary() const;
};

struct SyntheticParams {
  std::size_t topics = 2;
  std::size_t verbs = 12;
  std::size_t nouns = 40;
  std::size_t adjectives = 8;
  std::size_t triples = 40;
  std::size_t docs_per_topic = 20;
  std::size_t sentences_per_doc = 45;
  /// Emit `#T` annotations for every sentence.
  bool annotate = false;
  std::uint64_t seed = 1;
};

/// Seeded planted-topic corpus. Topics have disjoint vocabularies; each
/// sentence realizes one topic triple ("le N V", "V le N" or "V prep le N")
/// drawn uniformly.
struct SyntheticCorpus {
  std::vector<TopicSpec> topics;
  std::vector<Document> documents;
  /// Topic index of each document.
  std::vector<std::size_t> doc_topic;
};

SyntheticCorpus generate_corpus(const SyntheticParams& params);

/// One more document of `topic`, e.g. a held-out cloze text.
Document generate_document(const TopicSpec& topic, std::size_t sentences, bool annotate, std::mt19937_64& rng);

}  // namespace lexigap
