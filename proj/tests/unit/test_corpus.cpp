#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "lexigap/corpus.hpp"

using namespace lexigap;

namespace {

std::vector<Document> parse(const std::string& text) {
  std::istringstream in(text);
  return parse_corpus(in);
}

// Document whose content tokens cycle through `lemmas` (all nouns).
void add_block(DocumentBuilder& b, const std::vector<std::string>& lemmas, std::size_t tokens) {
  for (std::size_t i = 0; i < tokens; ++i) {
    b.word(Lemma(lemmas[i % lemmas.size()], Pos::Noun));
    if (i % 8 == 7) b.end_sentence();
  }
  b.end_sentence();
}

std::vector<std::string> names(const std::string& prefix, std::size_t n) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

void expect_partition(const Document& doc, const std::vector<ThematicSegment>& segs) {
  ASSERT_FALSE(segs.empty());
  EXPECT_EQ(segs.front().begin, 0u);
  EXPECT_EQ(segs.back().end, doc.tokens.size());
  for (std::size_t i = 0; i < segs.size(); ++i) {
    EXPECT_EQ(segs[i].id, i + 1);
    EXPECT_LT(segs[i].begin, segs[i].end);
    if (i > 0) EXPECT_EQ(segs[i].begin, segs[i - 1].end);
    std::vector<Lemma> expected;
    for (std::size_t p = segs[i].begin; p < segs[i].end; ++p)
      if (doc.tokens[p].lemma) expected.push_back(*doc.tokens[p].lemma);
    EXPECT_EQ(segs[i].content_lemmas, expected);
  }
}

Document random_document(std::mt19937_64& rng) {
  DocumentBuilder b;
  const std::size_t n = 1 + rng() % 200;
  for (std::size_t i = 0; i < n; ++i) {
    switch (rng() % 5) {
      case 0: b.function("le"); break;
      case 1: b.word(Lemma("v" + std::to_string(rng() % 6), Pos::Verb)); break;
      default: b.word(Lemma("n" + std::to_string(rng() % 25), Pos::Noun)); break;
    }
    if (rng() % 9 == 0) b.end_sentence();
  }
  return b.build();
}

}  // namespace

TEST(ParseCorpus, EmptyStream) { EXPECT_TRUE(parse("").empty()); }

TEST(ParseCorpus, ThreeLineFixture) {
  auto docs = parse("le|DET|-\nétat|N|état\nabroger|V|abroger\n");
  ASSERT_EQ(docs.size(), 1u);
  const auto& t = docs[0].tokens;
  ASSERT_EQ(t.size(), 3u);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(t[i].position, i);
  EXPECT_FALSE(t[0].lemma);
  EXPECT_EQ(*t[1].lemma, Lemma("état", Pos::Noun));
  EXPECT_EQ(*t[2].lemma, Lemma("abroger", Pos::Verb));
}

TEST(ParseCorpus, UnknownTagNamesTagAndLine) {
  try {
    parse("chat|XYZ|chat\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_NE(std::string(e.what()).find("XYZ"), std::string::npos);
  }
}

TEST(ParseCorpus, MalformedRecordReportsLine) {
  try {
    parse("le|F|-\nchat|N|chat\ndort|V\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(ParseCorpus, ContentWordNeedsLemma) { EXPECT_THROW(parse("chat|N|-\n"), ParseError); }

TEST(ParseCorpus, DocumentsSentencesAndTriples) {
  auto docs = parse(
      "# comment\n"
      "le|F|-\nparlement|N|parlement\nabroge|V|abroger\nla|F|-\nloi|N|loi\n"
      "#T abroger|cod|loi\n#S\n"
      "il|F|-\nmet|V|mettre\ndans|F|-\nsituation|N|situation\n"
      "\n"
      "x|N|x\n");
  ASSERT_EQ(docs.size(), 2u);
  const auto& d = docs[0];
  EXPECT_EQ(d.sentence_count(), 2u);
  EXPECT_EQ(d.sentence_starts, (std::vector<std::size_t>{0, 5}));
  ASSERT_EQ(d.triples.size(), 1u);
  EXPECT_EQ(d.triples[0].sentence_index, 0u);
  EXPECT_TRUE(d.tokens[7].preposition);
  EXPECT_FALSE(d.tokens[5].preposition);
  EXPECT_EQ(docs[1].tokens.size(), 1u);
}

TEST(ParseCorpus, WriteRoundTrip) {
  const std::string text =
      "le|F|-\nparlement|N|parlement\nabroge|V|abroger\nla|F|-\nloi|N|loi\n#T abroger|cod|loi\n#S\n"
      "beau|ADJ|beau\n#S\n\nx|N|x\n#S\n";
  auto docs = parse(text);
  std::ostringstream out;
  write_corpus(out, docs);
  auto again = parse(out.str());
  ASSERT_EQ(again.size(), docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    EXPECT_EQ(again[i].content_lemmas(), docs[i].content_lemmas());
    EXPECT_EQ(again[i].sentence_starts, docs[i].sentence_starts);
    ASSERT_EQ(again[i].triples.size(), docs[i].triples.size());
  }
}

TEST(Segmentation, ShortDocumentIsOneSegment) {
  DocumentBuilder b;
  add_block(b, names("a", 3), 12);
  auto doc = b.build();
  auto segs = segment_text(doc);
  ASSERT_EQ(segs.size(), 1u);
  EXPECT_EQ(segs[0].end, doc.tokens.size());
}

TEST(Segmentation, TwoDisjointBlocks) {
  DocumentBuilder b;
  add_block(b, names("a", 7), 50);
  add_block(b, names("b", 7), 50);
  auto doc = b.build();
  auto segs = segment_text(doc, {10, 15, 0.25});
  ASSERT_EQ(segs.size(), 2u);
  EXPECT_LE(segs[0].end, 55u);
  EXPECT_GE(segs[0].end, 45u);
  expect_partition(doc, segs);
}

TEST(Segmentation, UniformVocabularyIsOneSegment) {
  DocumentBuilder b;
  add_block(b, names("a", 4), 20);
  auto doc = b.build();
  auto profile = cohesion_profile(doc, 10);
  for (std::size_t g = 4; g <= 16; ++g) EXPECT_EQ(profile[g - 1], 4u);
  EXPECT_EQ(segment_text(doc, {10, 5, 0.25}).size(), 1u);
}

TEST(Segmentation, CohesionProfileByHand) {
  DocumentBuilder b;
  for (const char* w : {"a", "b", "a", "c", "d", "c"}) b.word(Lemma(w, Pos::Noun));
  auto profile = cohesion_profile(b.build(), 2);
  // gaps 1..5: {a}|{b,a}, {a,b}|{a,c}, {b,a}|{c,d}, {a,c}|{d,c}, {c,d}|{c}
  EXPECT_EQ(profile, (std::vector<std::size_t>{1, 1, 0, 1, 1}));
}

TEST(Segmentation, PartitionAndDeterminismOnRandomDocuments) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    auto doc = random_document(rng);
    SegmentationParams p{1 + rng() % 12, 1 + rng() % 20, 0.1 + static_cast<double>(rng() % 8) / 10.0};
    auto segs = segment_text(doc, p);
    expect_partition(doc, segs);
    for (std::size_t s = 0; s + 1 < segs.size(); ++s) EXPECT_GE(segs[s].size(), p.min_segment);
    auto again = segment_text(doc, p);
    ASSERT_EQ(again.size(), segs.size());
    for (std::size_t s = 0; s < segs.size(); ++s) EXPECT_EQ(again[s].end, segs[s].end);
  }
}

TEST(Segmentation, DisjointBlocksNeverSegmentLessThanSharedBlocks) {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 50; ++i) {
    const std::size_t len = 30 + rng() % 40, vocab = 3 + rng() % 6;
    DocumentBuilder disjoint, shared;
    add_block(disjoint, names("a", vocab), len);
    add_block(disjoint, names("b", vocab), len);
    add_block(shared, names("a", vocab), len);
    add_block(shared, names("a", vocab), len);
    EXPECT_GE(segment_text(disjoint.build()).size(), segment_text(shared.build()).size());
  }
}

TEST(Segmentation, RejectsBadParams) {
  DocumentBuilder b;
  add_block(b, names("a", 3), 10);
  EXPECT_THROW(segment_text(b.build(), {10, 0, 0.25}), Error);
  EXPECT_THROW(segment_text(b.build(), {10, 15, 1.0}), Error);
  EXPECT_THROW(segment_text(b.build(), {0, 15, 0.25}), Error);
}

TEST(Triples, HeuristicSubjectAndObject) {
  auto docs = parse("l'|F|-\nétat|N|état\nabroge|V|abroger\nla|F|-\nloi|N|loi\n");
  auto t = heuristic_triples(docs[0].tokens);
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[0], SyntTriple(Lemma("abroger", Pos::Verb), SyntacticLink::subject(), Lemma("état", Pos::Noun)));
  EXPECT_EQ(t[1], SyntTriple(Lemma("abroger", Pos::Verb), SyntacticLink::direct_object(), Lemma("loi", Pos::Noun)));
}

TEST(Triples, HeuristicPreposition) {
  auto docs = parse("met|V|mettre\ndans|F|-\nune|F|-\nsituation|N|situation\n");
  auto t = heuristic_triples(docs[0].tokens);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], SyntTriple(Lemma("mettre", Pos::Verb), SyntacticLink::prep("dans"), Lemma("situation", Pos::Noun)));
}

TEST(Triples, HeuristicStopsAtNextVerb) {
  auto docs = parse("dit|V|dire\nvient|V|venir\nloi|N|loi\n");
  auto t = heuristic_triples(docs[0].tokens);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0].verb.text(), "venir");
}

TEST(Triples, AnnotationsPassThrough) {
  auto docs = parse("loi|N|loi\nabroge|V|abroger\n#T abroger|cod|loi\n#S\n");
  const auto& doc = docs[0];
  auto segs = segment_text(doc);
  auto t = extract_triples(doc, segs[0]);
  ASSERT_EQ(t.size(), 1u);
  EXPECT_EQ(t[0], SyntTriple(Lemma("abroger", Pos::Verb), SyntacticLink::direct_object(), Lemma("loi", Pos::Noun)));
}

TEST(Triples, NeverInventLemmas) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    auto doc = random_document(rng);
    for (const auto& seg : segment_document(doc)) {
      std::set<Lemma> present(seg.content_lemmas.begin(), seg.content_lemmas.end());
      for (const auto& t : seg.triples) {
        EXPECT_TRUE(present.contains(t.verb));
        EXPECT_TRUE(present.contains(t.noun));
      }
    }
  }
}

TEST(Segmentation, ExplicitCuts) {
  DocumentBuilder b;
  add_block(b, names("a", 4), 30);
  auto doc = b.build();
  auto segs = segment_at(doc, {10, 20});
  ASSERT_EQ(segs.size(), 3u);
  expect_partition(doc, segs);
}
