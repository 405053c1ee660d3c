#include "lexigap/lexicon.hpp"

#include <algorithm>
#include <deque>
#include <fstream>

namespace lexigap {

LinkType inverse(LinkType t) {
  switch (t) {
    case LinkType::Hypernym: return LinkType::Hyponym;
    case LinkType::Hyponym: return LinkType::Hypernym;
    case LinkType::Meronym: return LinkType::Holonym;
    case LinkType::Holonym: return LinkType::Meronym;
    case LinkType::Synonym:
    case LinkType::Antonym: return t;
  }
  return t;
}

std::string_view link_type_name(LinkType t) {
  switch (t) {
    case LinkType::Synonym: return "syn";
    case LinkType::Hypernym: return "hyper";
    case LinkType::Hyponym: return "hypo";
    case LinkType::Antonym: return "anto";
    case LinkType::Meronym: return "mero";
    case LinkType::Holonym: return "holo";
  }
  return "?";
}

std::optional<LinkType> parse_link_type(std::string_view name) {
  for (auto t : all_link_types())
    if (link_type_name(t) == name) return t;
  return std::nullopt;
}

const std::set<LinkType>& all_link_types() {
  static const std::set<LinkType> all = {LinkType::Synonym, LinkType::Hypernym, LinkType::Hyponym,
                                         LinkType::Antonym, LinkType::Meronym,  LinkType::Holonym};
  return all;
}

const std::set<LinkType>& default_expansion_types() {
  static const std::set<LinkType> def = {LinkType::Synonym, LinkType::Hypernym, LinkType::Hyponym};
  return def;
}

void ParadigmaticLexicon::add(std::string_view from, LinkType t, std::string_view to) {
  std::string a = Lemma(from, Pos::Noun).text();
  std::string b = Lemma(to, Pos::Noun).text();
  if (a == b && (t == LinkType::Synonym || t == LinkType::Antonym))
    throw Error("self-loop '" + a + "' " + std::string(link_type_name(t)));
  entries_[a].insert({t, b});
  entries_[b].insert({inverse(t), a});
}

void ParadigmaticLexicon::declare(std::string_view text) { entries_[Lemma(text, Pos::Noun).text()]; }

std::size_t ParadigmaticLexicon::variant_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const auto& e) { return !e.second.empty(); }));
}

void ParadigmaticLexicon::set_pos(std::string_view text, Pos pos) {
  pos_.insert_or_assign(Lemma(text, pos).text(), pos);
}

const std::set<LexLink>& ParadigmaticLexicon::links(std::string_view text) const {
  static const std::set<LexLink> none;
  auto it = entries_.find(text);
  return it == entries_.end() ? none : it->second;
}

std::optional<Pos> ParadigmaticLexicon::pos_of(std::string_view text) const {
  auto it = pos_.find(text);
  if (it == pos_.end()) return std::nullopt;
  return it->second;
}

namespace {

// "text" or "text:TAG"
std::pair<std::string_view, std::optional<Pos>> split_pos(std::string_view field) {
  auto colon = field.rfind(':');
  if (colon != std::string_view::npos && colon > 0)
    if (auto pos = parse_pos_tag(field.substr(colon + 1))) return {field.substr(0, colon), pos};
  return {field, std::nullopt};
}

}  // namespace

ParadigmaticLexicon load_lexicon(std::istream& in) {
  ParadigmaticLexicon lex;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line = trim(raw);
    if (line.empty() || line.starts_with('#')) continue;
    auto fields = split(line, '\t');
    if (fields.size() == 1) {
      auto [form, pos] = split_pos(trim(fields[0]));
      try {
        lex.declare(form);
        if (pos) lex.set_pos(form, *pos);
      } catch (const Error& e) {
        throw ParseError(lineno, e.what());
      }
      continue;
    }
    if (fields.size() != 3) throw ParseError(lineno, "malformed lexicon line (expected lemma<TAB>type<TAB>lemma or a lone lemma)");
    auto type = parse_link_type(trim(fields[1]));
    if (!type) throw ParseError(lineno, "unknown link type '" + std::string(trim(fields[1])) + "'");
    auto [from, from_pos] = split_pos(trim(fields[0]));
    auto [to, to_pos] = split_pos(trim(fields[2]));
    try {
      lex.add(from, *type, to);
      if (from_pos) lex.set_pos(from, *from_pos);
      if (to_pos) lex.set_pos(to, *to_pos);
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return lex;
}

ParadigmaticLexicon load_lexicon_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open lexicon '" + path + "'");
  return load_lexicon(in);
}

std::vector<Neighbor> neighbors(const ParadigmaticLexicon& lexicon, const Lemma& start,
                                const std::set<LinkType>& allowed, std::size_t depth) {
  std::map<std::string, std::vector<LinkType>, std::less<>> found;
  std::deque<std::string> frontier{start.text()};
  for (std::size_t hop = 0; hop < depth && !frontier.empty(); ++hop) {
    std::deque<std::string> next;
    for (const auto& node : frontier) {
      const auto& base_path = node == start.text() ? std::vector<LinkType>{} : found.at(node);
      for (const auto& link : lexicon.links(node)) {
        if (!allowed.contains(link.type) || link.target == start.text() || found.contains(link.target)) continue;
        auto path = base_path;
        path.push_back(link.type);
        found.emplace(link.target, std::move(path));
        next.push_back(link.target);
      }
    }
    frontier = std::move(next);
  }

  std::vector<Neighbor> out;
  out.reserve(found.size());
  for (auto& [text, path] : found)
    out.push_back({Lemma(text, lexicon.pos_of(text).value_or(start.pos())), std::move(path)});
  std::stable_sort(out.begin(), out.end(),
                   [](const Neighbor& a, const Neighbor& b) { return a.path.size() < b.path.size(); });
  return out;
}

}  // namespace lexigap
