#include "lexigap/synthetic.hpp"

#include <array>
#include <cstdio>

namespace lexigap {

std::vector<Lemma> TopicSpec::vocabulary() const {
  std::vector<Lemma> v = verbs;
  v.insert(v.end(), nouns.begin(), nouns.end());
  v.insert(v.end(), adjectives.begin(), adjectives.end());
  return v;
}

namespace {

constexpr std::array<std::string_view, 4> kPreps = {"dans", "sur", "avec", "pour"};

Lemma synthetic_lemma(std::size_t topic, const char* kind, std::size_t i, Pos pos) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "t%zu%s%02zu", topic + 1, kind, i + 1);
  return Lemma(buf, pos);
}

TopicSpec make_topic(std::size_t topic, const SyntheticParams& p, std::mt19937_64& rng) {
  TopicSpec t;
  for (std::size_t i = 0; i < p.verbs; ++i) t.verbs.push_back(synthetic_lemma(topic, "verb", i, Pos::Verb));
  for (std::size_t i = 0; i < p.nouns; ++i) t.nouns.push_back(synthetic_lemma(topic, "noun", i, Pos::Noun));
  for (std::size_t i = 0; i < p.adjectives; ++i) t.adjectives.push_back(synthetic_lemma(topic, "adj", i, Pos::Adjective));
  for (std::size_t j = 0; j < p.triples; ++j) {
    // Verbs cycle; every noun takes part in at least one triple.
    const Lemma& verb = t.verbs[j % t.verbs.size()];
    const Lemma& noun = j < t.nouns.size() ? t.nouns[j] : t.nouns[rng() % t.nouns.size()];
    SyntacticLink link = SyntacticLink::direct_object();
    switch (rng() % 4) {
      case 0: link = SyntacticLink::subject(); break;
      case 1: link = SyntacticLink::prep(kPreps[rng() % kPreps.size()]); break;
      default: break;
    }
    t.triples.emplace_back(verb, link, noun);
  }
  return t;
}

}  // namespace

Document generate_document(const TopicSpec& topic, std::size_t sentences, bool annotate, std::mt19937_64& rng) {
  if (topic.triples.empty()) throw Error("topic has no triples");
  std::uniform_int_distribution<std::size_t> pick_triple(0, topic.triples.size() - 1);
  std::bernoulli_distribution with_adjective(0.4);

  DocumentBuilder b;
  for (std::size_t s = 0; s < sentences; ++s) {
    const auto& t = topic.triples[pick_triple(rng)];
    auto noun_phrase = [&] {
      b.function("le").word(t.noun);
      if (!topic.adjectives.empty() && with_adjective(rng)) b.word(topic.adjectives[rng() % topic.adjectives.size()]);
    };
    switch (t.link.kind()) {
      case SyntacticLink::Kind::Subject:
        noun_phrase();
        b.word(t.verb);
        break;
      case SyntacticLink::Kind::DirectObject:
        b.word(t.verb);
        noun_phrase();
        break;
      case SyntacticLink::Kind::Prep:
        b.word(t.verb).function(t.link.preposition(), true);
        noun_phrase();
        break;
    }
    if (annotate) b.triple(t);
    b.end_sentence();
  }
  return b.build();
}

SyntheticCorpus generate_corpus(const SyntheticParams& p) {
  std::mt19937_64 rng(p.seed);
  SyntheticCorpus c;
  for (std::size_t t = 0; t < p.topics; ++t) c.topics.push_back(make_topic(t, p, rng));
  // Topics interleave.
  for (std::size_t d = 0; d < p.docs_per_topic; ++d)
    for (std::size_t t = 0; t < p.topics; ++t) {
      c.documents.push_back(generate_document(c.topics[t], p.sentences_per_doc, p.annotate, rng));
      c.doc_topic.push_back(t);
    }
  return c;
}

}  // namespace lexigap
