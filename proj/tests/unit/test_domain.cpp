#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "../oracles.hpp"
#include "lexigap/domain.hpp"
#include "lexigap/synthetic.hpp"

using namespace lexigap;

namespace {

ThematicSegment segment_of(const std::vector<std::string>& nouns, std::vector<SyntTriple> triples = {}) {
  ThematicSegment s;
  for (const auto& n : nouns) s.content_lemmas.emplace_back(n, Pos::Noun);
  s.end = nouns.size();
  s.triples = std::move(triples);
  return s;
}

SyntTriple triple(const char* v, SyntacticLink link, const char* n) {
  return SyntTriple(Lemma(v, Pos::Verb), std::move(link), Lemma(n, Pos::Noun));
}

}  // namespace

TEST(Cosine, Basics) {
  WeightMap a{{Lemma("x", Pos::Noun), 1.0}}, b{{Lemma("y", Pos::Noun), 1.0}};
  EXPECT_DOUBLE_EQ(cosine(a, a), 1.0);
  EXPECT_DOUBLE_EQ(cosine(a, b), 0.0);
  EXPECT_DOUBLE_EQ(cosine(a, {}), 0.0);
}

TEST(Aggregate, ZeroThresholdGivesOneCluster) {
  std::vector<ThematicSegment> segs = {segment_of({"a"}), segment_of({"b"}), segment_of({"c"})};
  auto c = aggregate_segments(segs, 0.0);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].members, (std::vector<std::size_t>{0, 1, 2}));
}

TEST(Aggregate, UnitThresholdWithDistinctVocabularies) {
  std::vector<ThematicSegment> segs = {segment_of({"a", "b"}), segment_of({"c", "d"}), segment_of({"e"})};
  EXPECT_EQ(aggregate_segments(segs, 1.0).size(), 3u);
  EXPECT_THROW(aggregate_segments(segs, 1.5), Error);
  EXPECT_THROW(aggregate_segments(segs, -0.1), Error);
}

TEST(Aggregate, SimilarPairTogether) {
  // first two share 4 of 5 lemmas: cosine 0.8
  std::vector<ThematicSegment> segs = {segment_of({"a", "b", "c", "d", "e"}), segment_of({"x", "y", "z"}),
                                       segment_of({"a", "b", "c", "d", "f"})};
  auto c = aggregate_segments(segs, 0.5);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].members, (std::vector<std::size_t>{0, 2}));
  EXPECT_EQ(c[1].members, (std::vector<std::size_t>{1}));
}

TEST(Distill, SingleSegmentKeepsEverything) {
  std::vector<ThematicSegment> segs = {segment_of({"a", "a", "b", "c"})};
  auto d = distill_domain(segs, {{0}}, 0.0, 1, 1);
  EXPECT_EQ(d.words.size(), 3u);
  EXPECT_DOUBLE_EQ(d.words.at(Lemma("a", Pos::Noun)), 1.0);
  EXPECT_DOUBLE_EQ(d.words.at(Lemma("b", Pos::Noun)), 0.5);
}

TEST(Distill, StructurePruning) {
  auto seg = segment_of({"loi", "loi", "loi", "décret"},
                        {triple("abroger", SyntacticLink::direct_object(), "loi"),
                         triple("abroger", SyntacticLink::direct_object(), "loi"),
                         triple("abroger", SyntacticLink::direct_object(), "loi"),
                         triple("abroger", SyntacticLink::direct_object(), "décret")});
  for (int i = 0; i < 3; ++i) seg.content_lemmas.emplace_back("abroger", Pos::Verb);
  std::vector<ThematicSegment> segs = {seg};
  auto d = distill_domain(segs, {{0}}, 0.5, 1, 1);
  ASSERT_EQ(d.structures.size(), 1u);
  const auto& s = d.structures[0];
  EXPECT_EQ(s.verb, Lemma("abroger", Pos::Verb));
  ASSERT_EQ(s.noun_class.size(), 1u);
  EXPECT_TRUE(s.noun_class.contains(Lemma("loi", Pos::Noun)));
  EXPECT_FALSE(d.words.contains(Lemma("décret", Pos::Noun)));
}

TEST(Distill, MinSupportCountsSegments) {
  std::vector<ThematicSegment> segs = {segment_of({"a", "a", "a", "b"}), segment_of({"b", "c"})};
  auto d = distill_domain(segs, {{0, 1}}, 0.0, 2, 1);
  EXPECT_EQ(d.words.size(), 1u);
  EXPECT_TRUE(d.words.contains(Lemma("b", Pos::Noun)));
}

TEST(Distill, EmptyDomainIsAnError) {
  std::vector<ThematicSegment> segs = {segment_of({"a"})};
  EXPECT_THROW(distill_domain(segs, {{0}}, 0.0, 2, 1), EmptyDomainError);
}

TEST(Distill, NameFromTwoHeaviestVerbs) {
  WeightMap w{{Lemma("tuer", Pos::Verb), 0.9},
              {Lemma("trouver", Pos::Verb), 0.9},
              {Lemma("prendre", Pos::Verb), 0.4},
              {Lemma("arme", Pos::Noun), 1.0}};
  EXPECT_EQ(domain_name(w), "TrouverTuer");
  WeightMap x{{Lemma("fuir", Pos::Verb), 1.0}, {Lemma("contrôler", Pos::Verb), 0.7}};
  EXPECT_EQ(domain_name(x), "FuirContrôler");
}

TEST(Distill, RaisingKeepThresholdNeverAddsWords) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 50; ++i) {
    std::vector<ThematicSegment> segs;
    for (int s = 0; s < 4; ++s) {
      std::vector<std::string> nouns;
      for (int k = 0; k < 30; ++k) nouns.push_back("n" + std::to_string(rng() % 12));
      segs.push_back(segment_of(nouns));
    }
    SegmentCluster all{{0, 1, 2, 3}};
    double lo = static_cast<double>(rng() % 50) / 100.0, hi = lo + static_cast<double>(rng() % 50) / 100.0;
    auto a = distill_domain(segs, all, lo, 1, 1);
    Domain b;
    try {
      b = distill_domain(segs, all, hi, 1, 1);
    } catch (const EmptyDomainError&) {
      continue;
    }
    for (const auto& [l, w] : b.words) EXPECT_TRUE(a.words.contains(l));
  }
}

TEST(DomainBase, IndexIsInverseOfWordMaps) {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    auto base = randomized::random_base(rng);
    for (const auto& d : base.domains())
      for (const auto& [l, w] : d.words) {
        const auto& ids = base.domains_with(l);
        EXPECT_TRUE(std::find(ids.begin(), ids.end(), d.id) != ids.end());
      }
    for (const auto& [l, ids] : base.lemma_index())
      for (auto id : ids) EXPECT_TRUE(base.find(id)->words.contains(l));
  }
}

TEST(DomainBase, RejectsInvalidDomains) {
  Domain d;
  d.id = 1;
  d.words.emplace(Lemma("loi", Pos::Noun), 1.0);
  d.structures.push_back({Lemma("abroger", Pos::Verb), SyntacticLink::direct_object(), {{Lemma("loi", Pos::Noun), 1.0}}});
  EXPECT_THROW(DomainBase({d}, {}), Error);
  Domain e;
  e.id = 1;
  e.words.emplace(Lemma("loi", Pos::Noun), 0.0);
  EXPECT_THROW(DomainBase({e}, {}), Error);
  Domain f;
  f.id = 1;
  f.words.emplace(Lemma("loi", Pos::Noun), 1.0);
  EXPECT_THROW(DomainBase({f, f}, {}), Error);
}

TEST(BuildBase, EmptyCorpusRejected) { EXPECT_THROW(build_domain_base(std::vector<Document>{}), Error); }

TEST(BuildBase, PlantedTwoTopicCorpus) {
  SyntheticParams p;
  p.topics = 2;
  p.seed = 1;
  auto corpus = generate_corpus(p);
  auto base = build_domain_base(corpus.documents);
  ASSERT_EQ(base.domains().size(), 2u);
  for (const auto& topic : corpus.topics) {
    const auto vocab = topic.vocabulary();
    double best = 0;
    for (const auto& d : base.domains()) {
      std::size_t hits = 0;
      for (const auto& l : vocab) hits += d.words.contains(l);
      best = std::max(best, static_cast<double>(hits) / static_cast<double>(vocab.size()));
    }
    EXPECT_GE(best, 0.9);
  }
}

TEST(BuildBase, SegmentIdsPartitionSegments) {
  SyntheticParams p;
  p.topics = 3;
  p.docs_per_topic = 6;
  p.seed = 4;
  auto corpus = generate_corpus(p);
  std::size_t segments = 0;
  for (const auto& doc : corpus.documents) segments += segment_text(doc).size();
  auto base = build_domain_base(corpus.documents);
  std::set<std::size_t> ids;
  for (const auto& d : base.domains())
    for (auto s : d.segment_ids) EXPECT_TRUE(ids.insert(s).second);
  for (const auto& c : base.discarded)
    for (auto s : c) EXPECT_TRUE(ids.insert(s).second);
  EXPECT_EQ(ids.size(), segments);
}

TEST(BuildBase, DeterministicSerialization) {
  SyntheticParams p;
  p.seed = 2;
  p.docs_per_topic = 5;
  auto corpus = generate_corpus(p);
  EXPECT_EQ(domain_base_to_string(build_domain_base(corpus.documents)),
            domain_base_to_string(build_domain_base(corpus.documents)));
}

TEST(BuildBase, AllDiscardedSetsWarning) {
  DocumentBuilder b;
  b.word(Lemma("seul", Pos::Noun));
  auto base = build_domain_base(std::vector<Document>{b.build()});
  EXPECT_TRUE(base.domains().empty());
  EXPECT_TRUE(base.empty_warning);
  EXPECT_EQ(base.discarded.size(), 1u);
}

TEST(Serialization, RoundTrip) {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 20; ++i) {
    auto base = randomized::random_base(rng);
    auto text = domain_base_to_string(base);
    std::istringstream in(text);
    auto again = load_domain_base(in);
    EXPECT_EQ(domain_base_to_string(again), text);
    EXPECT_EQ(again.lemma_index(), base.lemma_index());
  }
}

TEST(Serialization, RejectsMalformed) {
  std::istringstream bad("{\"domains\": [{\"id\": 1}]}");
  EXPECT_THROW(load_domain_base(bad), Error);
  std::istringstream junk("not json");
  EXPECT_THROW(load_domain_base(junk), Error);
}

TEST(Serialization, ConfigDefaults) {
  std::istringstream in("{\"similarity_threshold\": 0.3}");
  auto c = load_build_config(in);
  EXPECT_DOUBLE_EQ(c.similarity_threshold, 0.3);
  EXPECT_DOUBLE_EQ(c.keep_threshold, 0.1);
  EXPECT_EQ(c.min_support, 2u);
  EXPECT_EQ(c.segmentation.window, 10u);
}
