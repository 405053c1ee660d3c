#include "lexigap/domain.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

namespace lexigap {

std::vector<Lemma> Structure::lemmas() const {
  std::vector<Lemma> out{verb};
  for (const auto& [noun, w] : noun_class) out.push_back(noun);
  return out;
}

void Domain::validate() const {
  for (const auto& [lemma, w] : words)
    if (!(w > 0.0)) throw Error("domain " + std::to_string(id) + ": non-positive weight for " + lemma.str());
  for (const auto& s : structures) {
    if (s.noun_class.empty()) throw Error("domain " + std::to_string(id) + ": empty noun class");
    for (const auto& l : s.lemmas())
      if (!words.contains(l))
        throw Error("domain " + std::to_string(id) + ": structure lemma " + l.str() + " missing from words");
    for (const auto& [noun, w] : s.noun_class)
      if (!(w > 0.0)) throw Error("domain " + std::to_string(id) + ": non-positive class weight");
  }
}

void BuildConfig::validate() const {
  segmentation.validate();
  if (!(similarity_threshold >= 0.0 && similarity_threshold <= 1.0))
    throw Error("similarity_threshold must be in [0, 1]");
  if (!(keep_threshold >= 0.0 && keep_threshold <= 1.0)) throw Error("keep_threshold must be in [0, 1]");
}

DomainBase::DomainBase(std::vector<Domain> domains, BuildConfig config)
    : domains_(std::move(domains)), config_(std::move(config)) {
  for (std::size_t i = 0; i < domains_.size(); ++i) {
    const auto& d = domains_[i];
    d.validate();
    if (!by_id_.emplace(d.id, i).second) throw Error("duplicate domain id " + std::to_string(d.id));
    for (const auto& [lemma, w] : d.words) index_[lemma].push_back(d.id);
  }
  for (auto& [lemma, ids] : index_) std::sort(ids.begin(), ids.end());
}

const Domain* DomainBase::find(DomainId id) const {
  auto it = by_id_.find(id);
  return it == by_id_.end() ? nullptr : &domains_[it->second];
}

const std::vector<DomainId>& DomainBase::domains_with(const Lemma& lemma) const {
  static const std::vector<DomainId> none;
  auto it = index_.find(lemma);
  return it == index_.end() ? none : it->second;
}

double cosine(const WeightMap& a, const WeightMap& b) {
  double dot = 0, na = 0, nb = 0;
  for (const auto& [l, w] : a) {
    na += w * w;
    if (auto it = b.find(l); it != b.end()) dot += w * it->second;
  }
  for (const auto& [l, w] : b) nb += w * w;
  if (na == 0 || nb == 0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

namespace {

WeightMap counts(const ThematicSegment& seg) {
  WeightMap v;
  for (const auto& l : seg.content_lemmas) v[l] += 1.0;
  return v;
}

}  // namespace

std::vector<SegmentCluster> aggregate_segments(std::span<const ThematicSegment> segments,
                                               double similarity_threshold) {
  if (!(similarity_threshold >= 0.0 && similarity_threshold <= 1.0))
    throw Error("similarity threshold must be in [0, 1]");
  std::vector<SegmentCluster> clusters;
  std::vector<WeightMap> centroids;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const auto v = counts(segments[i]);
    std::size_t best = clusters.size();
    double best_sim = -1.0;
    for (std::size_t c = 0; c < clusters.size(); ++c) {
      double sim = cosine(v, centroids[c]);
      if (sim > best_sim) {
        best_sim = sim;
        best = c;
      }
    }
    if (best < clusters.size() && best_sim >= similarity_threshold) {
      clusters[best].members.push_back(i);
      for (const auto& [l, w] : v) centroids[best][l] += w;
    } else {
      clusters.push_back({{i}});
      centroids.push_back(v);
    }
  }
  return clusters;
}

std::string domain_name(const WeightMap& words) {
  std::vector<std::pair<double, const Lemma*>> ranked;
  for (const auto& [l, w] : words) ranked.emplace_back(w, &l);
  auto order = [](const auto& a, const auto& b) {
    bool va = a.second->pos() == Pos::Verb, vb = b.second->pos() == Pos::Verb;
    if (va != vb) return va;
    if (a.first != b.first) return a.first > b.first;
    return *a.second < *b.second;
  };
  std::sort(ranked.begin(), ranked.end(), order);
  std::string name;
  for (std::size_t i = 0; i < std::min<std::size_t>(2, ranked.size()); ++i)
    name += utf8::capitalize(ranked[i].second->text());
  return name;
}

Domain distill_domain(std::span<const ThematicSegment> segments, const SegmentCluster& cluster,
                      double keep_threshold, std::size_t min_support, DomainId id,
                      std::span<const std::size_t> segment_ids) {
  if (cluster.members.empty()) throw Error("empty cluster");

  WeightMap freq;
  std::map<Lemma, std::size_t> support;
  std::map<std::pair<Lemma, SyntacticLink>, WeightMap> groups;
  for (std::size_t m : cluster.members) {
    const auto& seg = segments[m];
    std::set<Lemma> seen;
    for (const auto& l : seg.content_lemmas) {
      freq[l] += 1.0;
      if (seen.insert(l).second) ++support[l];
    }
    for (const auto& t : seg.triples) groups[{t.verb, t.link}][t.noun] += 1.0;
  }

  Domain d;
  d.id = id;
  double max_freq = 0;
  for (const auto& [l, f] : freq) max_freq = std::max(max_freq, f);
  for (const auto& [l, f] : freq) {
    double w = f / max_freq;
    if (w >= keep_threshold && support[l] >= min_support) d.words.emplace(l, w);
  }
  if (d.words.empty()) throw EmptyDomainError();

  for (const auto& [key, nouns] : groups) {
    const auto& [verb, link] = key;
    if (!d.words.contains(verb)) continue;
    double max_count = 0;
    for (const auto& [n, c] : nouns) max_count = std::max(max_count, c);
    Structure s{verb, link, {}};
    for (const auto& [n, c] : nouns) {
      double w = c / max_count;
      if (w >= keep_threshold && d.words.contains(n)) s.noun_class.emplace(n, w);
    }
    if (!s.noun_class.empty()) d.structures.push_back(std::move(s));
  }

  for (std::size_t m : cluster.members) d.segment_ids.push_back(segment_ids.empty() ? m : segment_ids[m]);
  d.name = domain_name(d.words);
  return d;
}

DomainBase build_domain_base(std::span<const Document> corpus, const BuildConfig& config) {
  if (corpus.empty()) throw Error("empty corpus");
  config.validate();

  std::vector<ThematicSegment> segments;
  for (const auto& doc : corpus) {
    if (doc.tokens.empty()) continue;
    auto segs = segment_document(doc, config.segmentation);
    segments.insert(segments.end(), std::make_move_iterator(segs.begin()), std::make_move_iterator(segs.end()));
  }

  std::vector<Domain> domains;
  std::vector<std::vector<std::size_t>> discarded;
  for (const auto& cluster : aggregate_segments(segments, config.similarity_threshold)) {
    try {
      domains.push_back(distill_domain(segments, cluster, config.keep_threshold, config.min_support,
                                       static_cast<DomainId>(domains.size() + 1)));
    } catch (const EmptyDomainError&) {
      discarded.push_back(cluster.members);
    }
  }
  DomainBase base(std::move(domains), config);
  base.discarded = std::move(discarded);
  base.empty_warning = base.domains().empty();
  return base;
}

}  // namespace lexigap
