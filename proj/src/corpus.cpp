#include "lexigap/corpus.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <set>

namespace lexigap {

std::vector<Lemma> Document::content_lemmas() const {
  std::vector<Lemma> out;
  for (const auto& t : tokens)
    if (t.lemma) out.push_back(*t.lemma);
  return out;
}

bool is_builtin_preposition(std::string_view w) {
  static const std::set<std::string_view> preps = {
      "à",    "au",     "aux",   "dans",    "de",     "d'",    "du",    "sur",   "sous",
      "pour", "par",    "avec",  "sans",    "en",     "vers",  "contre", "chez", "entre",
      "depuis", "pendant", "selon", "malgré", "après", "avant", "devant", "derrière",
      "parmi", "in",    "on",    "at",      "with",   "from",  "to",    "into",  "for",
      "by",   "about",  "of",    "under",   "over",   "against"};
  return preps.contains(w);
}

namespace {

const std::array<std::string_view, 10> kFunctionAliases = {"DET", "PREP", "P", "PRO", "CONJ",
                                                           "ADV", "PUNCT", "PONCT", "NUM", "CL"};

struct CorpusReader {
  std::vector<Document> docs;
  Document current;
  bool sentence_open = false;

  void flush() {
    if (!current.tokens.empty() || !current.triples.empty()) docs.push_back(std::move(current));
    current = Document{};
    sentence_open = false;
  }

  // Sentence index the next token or annotation belongs to.
  std::size_t open_sentence() {
    if (!sentence_open) {
      current.sentence_starts.push_back(current.tokens.size());
      sentence_open = true;
    }
    return current.sentence_starts.size() - 1;
  }

  void close_sentence() {
    if (sentence_open) sentence_open = false;
  }
};

}  // namespace

std::vector<Document> parse_corpus(std::istream& in) {
  CorpusReader r;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = raw;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (trim(line).empty()) {
      r.flush();
      continue;
    }
    if (line.starts_with("#S")) {
      r.close_sentence();
      continue;
    }
    if (line.starts_with("#T")) {
      auto fields = split(trim(line.substr(2)), '|');
      if (fields.size() != 3) throw ParseError(lineno, "malformed triple annotation '" + raw + "'");
      try {
        SyntTriple t(Lemma(fields[0], Pos::Verb), SyntacticLink::parse(fields[1]), Lemma(fields[2], Pos::Noun));
        r.current.triples.push_back({r.open_sentence(), std::move(t)});
      } catch (const ParseError&) {
        throw;
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
      continue;
    }
    if (line.starts_with("#")) continue;

    auto fields = split(line, '|');
    if (fields.size() != 3) throw ParseError(lineno, "malformed record '" + raw + "' (expected surface|POS|lemma)");
    auto surface = trim(fields[0]);
    auto tag = trim(fields[1]);
    auto lemma_text = trim(fields[2]);
    if (surface.empty()) throw ParseError(lineno, "empty surface form");

    Token tok;
    tok.surface = std::string(surface);
    tok.sentence_index = r.open_sentence();
    tok.position = r.current.tokens.size();
    if (auto pos = parse_pos_tag(tag)) {
      if (lemma_text.empty() || lemma_text == "-")
        throw ParseError(lineno, "content word '" + std::string(surface) + "' has no lemma");
      try {
        tok.lemma = Lemma(lemma_text, *pos);
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
    } else if (tag == "F" || std::find(kFunctionAliases.begin(), kFunctionAliases.end(), tag) != kFunctionAliases.end()) {
      tok.preposition = tag == "PREP" || tag == "P" || is_builtin_preposition(utf8::to_lower(surface));
    } else {
      throw ParseError(lineno, "unknown POS tag '" + std::string(tag) + "'");
    }
    r.current.tokens.push_back(std::move(tok));
  }
  r.flush();
  return r.docs;
}

std::vector<Document> parse_corpus_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open corpus file '" + path + "'");
  return parse_corpus(in);
}

void write_corpus(std::ostream& out, const std::vector<Document>& docs) {
  for (std::size_t d = 0; d < docs.size(); ++d) {
    if (d > 0) out << '\n';
    const auto& doc = docs[d];
    std::size_t next_triple = 0;
    auto flush_triples = [&](std::size_t sentence) {
      while (next_triple < doc.triples.size() && doc.triples[next_triple].sentence_index == sentence) {
        const auto& t = doc.triples[next_triple++].triple;
        out << "#T " << t.verb.text() << '|' << t.link.str() << '|' << t.noun.text() << '\n';
      }
    };
    for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
      std::size_t begin = doc.sentence_starts[s];
      std::size_t end = s + 1 < doc.sentence_count() ? doc.sentence_starts[s + 1] : doc.tokens.size();
      for (std::size_t i = begin; i < end; ++i) {
        const auto& t = doc.tokens[i];
        if (t.lemma)
          out << t.surface << '|' << pos_tag(t.lemma->pos()) << '|' << t.lemma->text() << '\n';
        else
          out << t.surface << '|' << (t.preposition && !is_builtin_preposition(utf8::to_lower(t.surface)) ? "PREP" : "F")
              << "|-\n";
      }
      flush_triples(s);
      if (s + 1 < doc.sentence_count()) out << "#S\n";
    }
  }
}

void DocumentBuilder::open_sentence_if_needed() {
  if (sentence_open_) return;
  doc_.sentence_starts.push_back(doc_.tokens.size());
  sentence_open_ = true;
}

DocumentBuilder& DocumentBuilder::word(std::string_view surface, Pos pos, std::string_view lemma) {
  open_sentence_if_needed();
  Token t;
  t.surface = std::string(surface);
  t.lemma = Lemma(lemma, pos);
  t.sentence_index = doc_.sentence_starts.size() - 1;
  t.position = doc_.tokens.size();
  doc_.tokens.push_back(std::move(t));
  return *this;
}

DocumentBuilder& DocumentBuilder::word(const Lemma& lemma) { return word(lemma.text(), lemma.pos(), lemma.text()); }

DocumentBuilder& DocumentBuilder::function(std::string_view surface, bool preposition) {
  open_sentence_if_needed();
  Token t;
  t.surface = std::string(surface);
  t.preposition = preposition || is_builtin_preposition(utf8::to_lower(surface));
  t.sentence_index = doc_.sentence_starts.size() - 1;
  t.position = doc_.tokens.size();
  doc_.tokens.push_back(std::move(t));
  return *this;
}

DocumentBuilder& DocumentBuilder::triple(SyntTriple t) {
  open_sentence_if_needed();
  doc_.triples.push_back({doc_.sentence_starts.size() - 1, std::move(t)});
  return *this;
}

DocumentBuilder& DocumentBuilder::end_sentence() {
  sentence_open_ = false;
  return *this;
}

// Segmentation ---------------------------------------------------------------

void SegmentationParams::validate() const {
  if (window < 1) throw Error("segmentation window must be >= 1");
  if (min_segment < 1) throw Error("min_segment must be >= 1");
  if (!(boundary_quantile > 0.0 && boundary_quantile < 1.0)) throw Error("boundary_quantile must be in (0, 1)");
}

std::vector<std::size_t> cohesion_profile(const Document& doc, std::size_t window) {
  const std::size_t n = doc.tokens.size();
  std::vector<std::size_t> profile;
  if (n < 2) return profile;
  profile.reserve(n - 1);
  for (std::size_t gap = 1; gap < n; ++gap) {
    std::set<Lemma> before, after;
    for (std::size_t i = gap > window ? gap - window : 0; i < gap; ++i)
      if (doc.tokens[i].lemma) before.insert(*doc.tokens[i].lemma);
    for (std::size_t i = gap; i < std::min(n, gap + window); ++i)
      if (doc.tokens[i].lemma) after.insert(*doc.tokens[i].lemma);
    std::size_t shared = 0;
    for (const auto& l : after) shared += before.contains(l);
    profile.push_back(shared);
  }
  return profile;
}

namespace {

std::vector<ThematicSegment> cut(const Document& doc, std::vector<std::size_t> cuts) {
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(doc.tokens.size());
  std::vector<ThematicSegment> segments;
  std::size_t begin = 0;
  for (std::size_t end : cuts) {
    ThematicSegment seg;
    seg.id = segments.size() + 1;
    seg.begin = begin;
    seg.end = end;
    for (std::size_t i = begin; i < end; ++i)
      if (doc.tokens[i].lemma) seg.content_lemmas.push_back(*doc.tokens[i].lemma);
    segments.push_back(std::move(seg));
    begin = end;
  }
  return segments;
}

}  // namespace

std::vector<ThematicSegment> segment_at(const Document& doc, const std::vector<std::size_t>& cuts) {
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (cuts[i] == 0 || cuts[i] >= doc.tokens.size()) throw Error("segment cut out of range");
    if (i > 0 && cuts[i] <= cuts[i - 1]) throw Error("segment cuts must be strictly increasing");
  }
  return cut(doc, cuts);
}

std::vector<ThematicSegment> segment_text(const Document& doc, const SegmentationParams& params) {
  params.validate();
  const std::size_t n = doc.tokens.size();
  if (n == 0) return {};
  if (n < 2 * params.min_segment) return cut(doc, {});

  const auto profile = cohesion_profile(doc, params.window);
  auto at = [&](std::size_t gap) { return profile[gap - 1]; };

  std::vector<std::size_t> reference;
  for (std::size_t gap = 1; gap < n; ++gap)
    if (gap >= params.window && n - gap >= params.window) reference.push_back(at(gap));
  if (reference.empty()) reference = profile;
  std::sort(reference.begin(), reference.end());
  const auto threshold =
      reference[static_cast<std::size_t>(params.boundary_quantile * static_cast<double>(reference.size() - 1))];

  // Valleys: maximal runs of equal cohesion with strictly higher neighbours
  // on both sides; the run's middle gap is the candidate.
  std::vector<std::pair<std::size_t, std::size_t>> valleys;  // (depth, gap)
  for (std::size_t a = 1; a < n;) {
    std::size_t b = a;
    while (b + 1 < n && at(b + 1) == at(a)) ++b;
    const auto v = at(a);
    if (a > 1 && b + 1 < n && at(a - 1) > v && at(b + 1) > v && v < threshold) valleys.emplace_back(v, (a + b) / 2);
    a = b + 1;
  }
  std::sort(valleys.begin(), valleys.end());

  std::vector<std::size_t> accepted;
  for (const auto& [depth, gap] : valleys) {
    if (gap < params.min_segment || n - gap < params.min_segment) continue;
    bool ok = std::all_of(accepted.begin(), accepted.end(), [&](std::size_t other) {
      return (gap > other ? gap - other : other - gap) >= params.min_segment;
    });
    if (ok) accepted.push_back(gap);
  }
  return cut(doc, std::move(accepted));
}

std::vector<SyntTriple> heuristic_triples(std::span<const Token> tokens) {
  std::vector<SyntTriple> out;
  auto is = [](const Token& t, Pos p) { return t.lemma && t.lemma->pos() == p; };
  for (std::size_t v = 0; v < tokens.size(); ++v) {
    if (!is(tokens[v], Pos::Verb)) continue;
    const Lemma& verb = *tokens[v].lemma;

    for (std::size_t i = v; i-- > 0;) {
      const auto& t = tokens[i];
      if (is(t, Pos::Noun)) {
        out.emplace_back(verb, SyntacticLink::subject(), *t.lemma);
        break;
      }
      if (is(t, Pos::Verb) || t.preposition) break;
    }

    bool seen_prep = false;
    bool object_done = false;
    std::optional<std::string> pending_prep;
    for (std::size_t i = v + 1; i < tokens.size(); ++i) {
      const auto& t = tokens[i];
      if (is(t, Pos::Verb)) break;
      if (t.preposition) {
        seen_prep = true;
        pending_prep = utf8::to_lower(t.surface);
        continue;
      }
      if (!is(t, Pos::Noun)) continue;
      if (pending_prep) {
        out.emplace_back(verb, SyntacticLink::prep(*pending_prep), *t.lemma);
        pending_prep.reset();
      } else if (!seen_prep && !object_done) {
        out.emplace_back(verb, SyntacticLink::direct_object(), *t.lemma);
        object_done = true;
      }
    }
  }
  return out;
}

std::vector<SyntTriple> extract_triples(const Document& doc, const ThematicSegment& segment) {
  std::vector<SyntTriple> out;
  const std::size_t n = doc.tokens.size();
  for (std::size_t s = 0; s < doc.sentence_count(); ++s) {
    const std::size_t start = doc.sentence_starts[s];
    const std::size_t stop = s + 1 < doc.sentence_count() ? doc.sentence_starts[s + 1] : n;
    // Token-less sentences anchor at the last token of the document.
    const std::size_t anchor = std::min(start, n == 0 ? 0 : n - 1);
    const bool anchored = anchor >= segment.begin && anchor < segment.end;

    bool annotated = false;
    for (const auto& a : doc.triples) {
      if (a.sentence_index != s) continue;
      annotated = true;
      if (anchored) out.push_back(a.triple);
    }
    if (annotated || !anchored) continue;

    const std::size_t lo = std::max(start, segment.begin);
    const std::size_t hi = std::min(stop, segment.end);
    if (lo >= hi) continue;
    auto found = heuristic_triples(std::span<const Token>(doc.tokens).subspan(lo, hi - lo));
    out.insert(out.end(), found.begin(), found.end());
  }
  return out;
}

std::vector<ThematicSegment> segment_document(const Document& doc, const SegmentationParams& params) {
  auto segments = segment_text(doc, params);
  for (auto& seg : segments) seg.triples = extract_triples(doc, seg);
  return segments;
}

}  // namespace lexigap
