#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "lexigap/corpus.hpp"
#include "lexigap/lemma.hpp"

namespace lexigap {

using DomainId = std::uint32_t;
using WeightMap = std::map<Lemma, double>;

/// A verb, a syntactic link and the weighted class of nouns it governs
/// through that link.
struct Structure {
  Lemma verb;
  SyntacticLink link = SyntacticLink::subject();
  WeightMap noun_class;

  /// verb + nouns
  std::vector<Lemma> lemmas() const;
  bool contains(const Lemma& l) const { return l == verb || noun_class.contains(l); }
};

/// A topical aggregate of similar segments: weighted words plus the
/// verb-link-noun structures observed in them.
struct Domain {
  DomainId id = 0;
  std::string name;
  WeightMap words;
  std::vector<Structure> structures;
  /// Corpus-wide segment ordinals this domain was distilled from.
  std::vector<std::size_t> segment_ids;

  /// Throws Error if a weight is not positive, a structure is empty, or a
  /// structure lemma is missing from `words`.
  void validate() const;
};

struct BuildConfig {
  SegmentationParams segmentation;
  /// Minimum cosine for a segment to join an existing cluster.
  double similarity_threshold = 0.4;
  /// Minimum normalized weight for a word (and a class noun) to be kept.
  double keep_threshold = 0.1;
  /// Minimum number of distinct segments a kept word must occur in.
  std::size_t min_support = 2;

  void validate() const;
};

/// Indices into the segment sequence handed to aggregate_segments.
struct SegmentCluster {
  std::vector<std::size_t> members;
};

/// Thrown by distill_domain when pruning leaves nothing.
class EmptyDomainError : public Error {
 public:
  EmptyDomainError() : Error("empty domain") {}
};

class DomainBase {
 public:
  DomainBase() = default;
  DomainBase(std::vector<Domain> domains, BuildConfig config);

  const std::vector<Domain>& domains() const { return domains_; }
  const BuildConfig& config() const { return config_; }

  const Domain* find(DomainId id) const;
  /// Ids of the domains whose word map holds `lemma`, ascending.
  const std::vector<DomainId>& domains_with(const Lemma& lemma) const;
  const std::map<Lemma, std::vector<DomainId>>& lemma_index() const { return index_; }

  /// Segment sets of clusters dropped as empty during the build.
  std::vector<std::vector<std::size_t>> discarded;
  /// Set when every cluster was discarded.
  bool empty_warning = false;

 private:
  std::vector<Domain> domains_;
  BuildConfig config_;
  std::map<Lemma, std::vector<DomainId>> index_;
  std::map<DomainId, std::size_t> by_id_;
};

/// Cosine similarity of two sparse count vectors (0 when either is empty).
double cosine(const WeightMap& a, const WeightMap& b);

/// Greedy incremental clustering in input order: a segment joins the cluster
/// whose summed lemma-count vector is most cosine-similar to its own, if that
/// similarity reaches `similarity_threshold` (earliest cluster on ties);
/// otherwise it founds a new cluster. Throws Error unless the threshold is in
/// [0, 1].
std::vector<SegmentCluster> aggregate_segments(std::span<const ThematicSegment> segments,
                                               double similarity_threshold);

/// Weighs, prunes and structures one cluster. `segment_ids` maps cluster
/// member indices to corpus-wide ordinals for provenance (identity when
/// empty). Throws EmptyDomainError when nothing survives pruning.
Domain distill_domain(std::span<const ThematicSegment> segments, const SegmentCluster& cluster,
                      double keep_threshold, std::size_t min_support, DomainId id = 1,
                      std::span<const std::size_t> segment_ids = {});

/// Name made of the two heaviest verbs, capitalized and concatenated
/// ("TuerTrouver"); other words fill in when fewer than two verbs exist.
std::string domain_name(const WeightMap& words);

/// segment_document on every document, aggregate_segments over the whole
/// corpus, then distill_domain per cluster. Throws Error on an empty corpus.
DomainBase build_domain_base(std::span<const Document> corpus, const BuildConfig& config = {});

// Serialization (JSON) -------------------------------------------------------

void save_domain_base(std::ostream& out, const DomainBase& base);
std::string domain_base_to_string(const DomainBase& base);
DomainBase load_domain_base(std::istream& in);
DomainBase load_domain_base_file(const std::string& path);

/// Reads a BuildConfig from JSON; absent keys keep their defaults.
BuildConfig load_build_config(std::istream& in);

}  // namespace lexigap
