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

enum class LinkType { Synonym, Hypernym, Hyponym, Antonym, Meronym, Holonym };

/// Hypernym<->Hyponym, Meronym<->Holonym; Synonym and Antonym map to
/// themselves.
LinkType inverse(LinkType t);
/// syn, hyper, hypo, anto, mero, holo
std::string_view link_type_name(LinkType t);
std::optional<LinkType> parse_link_type(std::string_view name);

const std::set<LinkType>& all_link_types();
/// {Synonym, Hypernym, Hyponym}
const std::set<LinkType>& default_expansion_types();

struct LexLink {
  LinkType type;
  std::string target;

  friend auto operator<=>(const LexLink&, const LexLink&) = default;
};

/// Typed paradigmatic links between word forms. Senses are collapsed: entries
/// are keyed by lemma text, and every link is stored in both directions.
class ParadigmaticLexicon {
 public:
  /// Adds `from -t-> to` and its inverse. Throws Error on a Synonym or
  /// Antonym self-loop.
  void add(std::string_view from, LinkType t, std::string_view to);
  /// Makes a form known without linking it.
  void declare(std::string_view text);
  /// Records an explicit part of speech for a form.
  void set_pos(std::string_view text, Pos pos);

  /// Outgoing links of a form (empty when unknown).
  const std::set<LexLink>& links(std::string_view text) const;
  std::optional<Pos> pos_of(std::string_view text) const;
  /// Number of distinct forms with at least one link.
  std::size_t variant_count() const;
  const std::map<std::string, std::set<LexLink>, std::less<>>& entries() const { return entries_; }

 private:
  std::map<std::string, std::set<LexLink>, std::less<>> entries_;
  std::map<std::string, Pos, std::less<>> pos_;
};

/// Reads `lemma<TAB>linktype<TAB>lemma` lines, or a lone `lemma` that only
/// declares a form; '#' starts a comment line. A lemma may carry an explicit `:N`, `:V` or `:ADJ` suffix. Throws
/// ParseError naming the line.
ParadigmaticLexicon load_lexicon(std::istream& in);
ParadigmaticLexicon load_lexicon_file(const std::string& path);

struct Neighbor {
  Lemma lemma;
  /// Link types along one shortest path from the start.
  std::vector<LinkType> path;
};

/// Breadth-first closure from `start` over `allowed` link types, up to `depth`
/// hops, excluding `start` itself. Sorted by path length then text. Result
/// lemmas take the lexicon's recorded part of speech, else the start's.
std::vector<Neighbor> neighbors(const ParadigmaticLexicon& lexicon, const Lemma& start,
                                const std::set<LinkType>& allowed, std::size_t depth);

}  // namespace lexigap
