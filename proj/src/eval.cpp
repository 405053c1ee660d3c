#include "lexigap/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <random>
#include <sstream>

namespace lexigap {

namespace {

Document excise(const Document& doc, const std::set<Lemma>& removed) {
  Document out;
  std::size_t sentence = doc.sentence_count();  // sentinel: none open yet
  for (const auto& t : doc.tokens) {
    if (t.lemma && removed.contains(*t.lemma)) continue;
    if (out.sentence_starts.empty() || t.sentence_index != sentence) {
      out.sentence_starts.push_back(out.tokens.size());
      sentence = t.sentence_index;
    }
    Token copy = t;
    copy.sentence_index = out.sentence_starts.size() - 1;
    copy.position = out.tokens.size();
    out.tokens.push_back(std::move(copy));
  }
  return out;
}

ClozeInstance finish(const Document& doc, std::vector<Lemma> removed, const SegmentationParams& segmentation) {
  ClozeInstance c;
  c.document = doc;
  c.removed = std::move(removed);
  c.excised = excise(doc, std::set<Lemma>(c.removed.begin(), c.removed.end()));
  c.context = c.excised.content_lemmas();
  c.segments = segment_text(c.excised, segmentation);
  return c;
}

}  // namespace

ClozeInstance make_cloze(const Document& doc, std::size_t n, const std::set<Pos>& pos_pool, std::uint64_t seed,
                         const SegmentationParams& segmentation) {
  std::set<Lemma> distinct;
  for (const auto& l : doc.content_lemmas())
    if (pos_pool.contains(l.pos())) distinct.insert(l);
  std::vector<Lemma> eligible(distinct.begin(), distinct.end());
  if (eligible.size() < n)
    throw Error("only " + std::to_string(eligible.size()) + " eligible lemmas, " + std::to_string(n) + " requested");

  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::uniform_int_distribution<std::size_t> pick(i, eligible.size() - 1);
    std::swap(eligible[i], eligible[pick(rng)]);
  }
  eligible.resize(n);
  std::sort(eligible.begin(), eligible.end());
  return finish(doc, std::move(eligible), segmentation);
}

ClozeInstance make_cloze_with(const Document& doc, const std::vector<Lemma>& removed,
                              const SegmentationParams& segmentation) {
  const auto lemmas = doc.content_lemmas();
  const std::set<Lemma> present(lemmas.begin(), lemmas.end());
  std::vector<Lemma> targets;
  for (const auto& l : removed) {
    if (!present.contains(l)) throw Error("removed lemma " + l.str() + " does not occur in the document");
    if (std::find(targets.begin(), targets.end(), l) == targets.end()) targets.push_back(l);
  }
  return finish(doc, std::move(targets), segmentation);
}

Metrics compute_metrics(const std::vector<Lemma>& targets, const std::set<Lemma>& returned) {
  Metrics m;
  m.target_count = targets.size();
  m.returned_count = returned.size();
  for (const auto& t : targets)
    if (returned.contains(t)) m.found.insert(t);
  if (targets.empty()) {
    m.no_targets = true;
    m.recall = 1.0;
  } else {
    m.recall = static_cast<double>(m.found.size()) / static_cast<double>(targets.size());
  }
  m.precision = returned.empty() ? 0.0 : static_cast<double>(m.found.size()) / static_cast<double>(returned.size());
  return m;
}

std::set<Lemma> candidate_lemmas(const std::vector<Lemma>& context, const Query& query_template,
                                 const Resolver& resolver, std::vector<DomainSelection>* selected) {
  if (selected) selected->clear();
  if (context.empty()) return {};
  Query q = query_template;
  q.context = context;
  q.segments.clear();
  auto r = resolver.resolve(q);
  if (selected) *selected = r.selected;
  std::set<Lemma> out;
  for (const auto& c : r.candidates) out.insert(c.lemma);
  return out;
}

Metrics evaluate(const ClozeInstance& instance, const Query& query_template, const Resolver& resolver,
                 bool per_segment) {
  if (instance.context.empty()) return compute_metrics(instance.removed, {});
  Query q = query_template;
  q.context = instance.context;
  q.segments.clear();
  if (per_segment)
    for (const auto& s : instance.segments) q.segments.push_back(s.content_lemmas);
  std::set<Lemma> returned;
  for (const auto& c : resolver.resolve(q).candidates) returned.insert(c.lemma);
  return compute_metrics(instance.removed, returned);
}

SegmentReport segment_report(const ClozeInstance& instance, const Query& query_template, const Resolver& resolver) {
  if (instance.segments.empty()) throw Error("instance has no segments");
  SegmentReport rep;

  std::vector<std::vector<Lemma>> contexts;
  for (const auto& s : instance.segments) {
    rep.columns.push_back("ST" + std::to_string(s.id));
    contexts.push_back(s.content_lemmas);
  }
  rep.columns.push_back("ALL");
  contexts.push_back(instance.context);

  std::vector<std::set<Lemma>> returned(contexts.size());
  std::vector<std::set<DomainId>> selected(contexts.size());
  for (std::size_t c = 0; c < contexts.size(); ++c) {
    std::vector<DomainSelection> sel;
    returned[c] = candidate_lemmas(contexts[c], query_template, resolver, &sel);
    for (const auto& s : sel) selected[c].insert(s.id);
    rep.metrics.push_back(compute_metrics(instance.removed, returned[c]));
  }

  for (const auto& target : instance.removed) {
    SegmentReport::WordRow row{target, {}};
    for (const auto& r : returned) row.found.push_back(r.contains(target));
    rep.words.push_back(std::move(row));
  }

  const std::set<Lemma> whole(instance.context.begin(), instance.context.end());
  std::set<DomainId> any;
  for (const auto& s : selected) any.insert(s.begin(), s.end());
  for (DomainId id : any) {
    const Domain* d = resolver.base().find(id);
    if (!d) continue;
    SegmentReport::DomainRow row;
    row.id = id;
    row.name = d->name;
    row.word_count = d->words.size();
    const DomainSelection only{id, 1.0};
    row.restricted_count =
        whole.empty() ? 0 : candidates_svetlan(resolver.base(), std::span(&only, 1), true, whole).size();
    row.reduction = row.word_count == 0 ? 0.0
                                        : 1.0 - static_cast<double>(row.restricted_count) /
                                                    static_cast<double>(row.word_count);
    for (const auto& s : selected) row.selected.push_back(s.contains(id));
    rep.domains.push_back(std::move(row));
  }
  std::sort(rep.domains.begin(), rep.domains.end(), [](const auto& a, const auto& b) {
    if (a.name != b.name) return a.name < b.name;
    return a.id < b.id;
  });
  return rep;
}

std::string report_tsv(const SegmentReport& rep) {
  std::ostringstream out;
  out << "word";
  for (const auto& c : rep.columns) out << '\t' << c;
  out << '\n';
  for (const auto& w : rep.words) {
    out << w.lemma.text();
    for (bool f : w.found) out << '\t' << (f ? '+' : '-');
    out << '\n';
  }
  out << "domain\twords\trestricted\treduction";
  for (const auto& c : rep.columns) out << '\t' << c;
  out << '\n';
  for (const auto& d : rep.domains) {
    char pct[32];
    std::snprintf(pct, sizeof pct, "%.1f%%", d.reduction * 100.0);
    out << d.name << '\t' << d.word_count << '\t' << d.restricted_count << '\t' << pct;
    for (bool s : d.selected) out << '\t' << (s ? "+" : "");
    out << '\n';
  }
  out << "metric";
  for (const auto& c : rep.columns) out << '\t' << c;
  out << '\n';
  for (const char* name : {"recall", "precision", "returned"}) {
    out << name;
    for (const auto& m : rep.metrics) {
      char buf[32];
      if (std::string_view(name) == "returned")
        std::snprintf(buf, sizeof buf, "%zu", m.returned_count);
      else
        std::snprintf(buf, sizeof buf, "%.4f", std::string_view(name) == "recall" ? m.recall : m.precision);
      out << '\t' << buf;
    }
    out << '\n';
  }
  return out.str();
}

}  // namespace lexigap
