#pragma once

#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "lexigap/domain.hpp"
#include "lexigap/lexicon.hpp"
#include "lexigap/phono.hpp"

namespace lexigap {

enum class Mode { Svetlan, Ewn, Combined };

std::string_view mode_name(Mode m);
std::optional<Mode> parse_mode(std::string_view name);

/// Syntactic position of the sought word: the link it bears to (or from) a
/// governing verb. Without a governor any verb qualifies.
struct Slot {
  std::optional<Lemma> governor;
  SyntacticLink link = SyntacticLink::direct_object();

  /// "[governor@]link", governor as text (a verb) and "*" for any.
  static Slot parse(std::string_view text);
  std::string str() const;
};

struct Query {
  std::vector<Lemma> context;
  /// Optional partition of the context into thematic segments.
  std::vector<std::vector<Lemma>> segments;
  std::optional<Pos> pos_filter;
  std::optional<Slot> slot;
  std::optional<std::string> phono_hint;
  Mode mode = Mode::Combined;
  bool structure_restricted = false;
  double coverage_threshold = 0.75;

  void validate() const;
};

struct DomainEvidence {
  DomainId domain = 0;
  double coverage = 0;
  double weight = 0;
  friend auto operator<=>(const DomainEvidence&, const DomainEvidence&) = default;
};

struct StructureEvidence {
  DomainId domain = 0;
  Lemma verb;
  SyntacticLink link = SyntacticLink::subject();
  friend auto operator<=>(const StructureEvidence&, const StructureEvidence&) = default;
};

struct ParadigmaticEvidence {
  Lemma source;
  std::vector<LinkType> path;
  friend auto operator<=>(const ParadigmaticEvidence&, const ParadigmaticEvidence&) = default;
};

struct PhonoEvidence {
  double similarity = 0;
  friend auto operator<=>(const PhonoEvidence&, const PhonoEvidence&) = default;
};

using Evidence = std::variant<DomainEvidence, StructureEvidence, ParadigmaticEvidence, PhonoEvidence>;
using Provenance = std::set<Evidence>;
using CandidateSet = std::map<Lemma, Provenance>;

std::set<Lemma> lemma_set(const CandidateSet& c);

struct ScoringWeights {
  double domain = 1.0;
  double structure = 2.0;
  double paradigmatic = 1.0;
  double phono = 2.0;
};

/// w_d * max(coverage * weight) + w_s * [structure evidence]
///   + w_p / (1 + shortest paradigmatic path) + w_f * max phono similarity
double score(const Provenance& provenance, const ScoringWeights& weights = {});

struct Candidate {
  Lemma lemma;
  double score = 0;
  /// Number of soft filters (slot, phonological hint) the candidate failed.
  int demotions = 0;
  std::vector<Evidence> provenance;
};

struct DomainSelection {
  DomainId id = 0;
  /// Fraction of distinct context lemmas present in the domain's words.
  double coverage = 0;
  friend bool operator==(const DomainSelection&, const DomainSelection&) = default;
};

/// Domains covering at least `threshold` of the distinct context lemmas,
/// found through the lemma index. Sorted by coverage descending, then id.
/// Throws Error on an empty context or a threshold outside (0, 1].
std::vector<DomainSelection> select_domains(const DomainBase& base, const std::set<Lemma>& context, double threshold);

/// Unrestricted: every word of every selected domain. Restricted: only the
/// lemmas of structures that contain a context lemma (as verb or class noun),
/// which also get StructureEvidence.
CandidateSet candidates_svetlan(const DomainBase& base, std::span<const DomainSelection> selections,
                                bool structure_restricted, const std::set<Lemma>& context);

/// Seeds plus their lexicon neighbours; each neighbour carries the seed and
/// the link path it was reached by.
CandidateSet candidates_ewn(const ParadigmaticLexicon& lexicon, const CandidateSet& seeds,
                            const std::set<LinkType>& allowed, std::size_t depth);

struct ResolverOptions {
  std::set<LinkType> allowed_links = default_expansion_types();
  std::size_t expansion_depth = 1;
  PhonoParams phono;
  ScoringWeights weights;
};

struct Resolution {
  std::vector<Candidate> candidates;
  std::vector<DomainSelection> selected;
};

/// The retrieval pipeline: domain selection (whole context, or per segment
/// with results merged), candidate generation by mode, the hard part-of-speech
/// filter, the soft slot and phonological filters, then scoring. Ranking is by
/// demotions, then score descending, then lemma.
Resolution resolve(const Query& query, const DomainBase& base, const ParadigmaticLexicon& lexicon,
                   const PhonoIndex& phono, const ResolverOptions& options = {});

/// Binds the immutable resources resolve() needs.
class Resolver {
 public:
  Resolver(const DomainBase& base, const ParadigmaticLexicon& lexicon, const PhonoIndex& phono,
           ResolverOptions options = {})
      : base_(base), lexicon_(lexicon), phono_(phono), options_(std::move(options)) {}

  Resolution resolve(const Query& q) const { return lexigap::resolve(q, base_, lexicon_, phono_, options_); }
  const DomainBase& base() const { return base_; }
  const ParadigmaticLexicon& lexicon() const { return lexicon_; }
  const PhonoIndex& phono() const { return phono_; }
  const ResolverOptions& options() const { return options_; }

 private:
  const DomainBase& base_;
  const ParadigmaticLexicon& lexicon_;
  const PhonoIndex& phono_;
  ResolverOptions options_;
};

/// Every domain word plus every lexicon form (lexicon forms without a
/// recorded part of speech are indexed as nouns); the universe phonological
/// hints are matched against.
PhonoIndex build_resource_phono_index(const DomainBase& base, const ParadigmaticLexicon& lexicon,
                                      const PronunciationMap& pronunciations = {}, std::size_t prefix_length = 2);

}  // namespace lexigap
