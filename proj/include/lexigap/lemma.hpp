#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lexigap {

/// Base class for every error the library reports.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input-format error carrying the 1-based line it was found on.
class ParseError : public Error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Part of speech of a content word ("mot plein").
enum class Pos { Noun, Verb, Adjective };

/// Short tag used by every file format and on the wire: N, V, ADJ.
std::string_view pos_tag(Pos pos);
/// Accepts N, V, ADJ (case-insensitive).
std::optional<Pos> parse_pos_tag(std::string_view tag);

/// Normalized content word. Compounds are joined with '_'.
class Lemma {
 public:
  Lemma() = default;
  /// Lowercases `text`; throws Error on empty text or embedded whitespace.
  Lemma(std::string_view text, Pos pos);

  const std::string& text() const { return text_; }
  Pos pos() const { return pos_; }

  /// "text:TAG"
  std::string str() const;
  /// Parses "text:TAG"; the tag is split at the last ':'.
  static Lemma parse(std::string_view token);

  friend bool operator==(const Lemma&, const Lemma&) = default;
  friend std::strong_ordering operator<=>(const Lemma& a, const Lemma& b) {
    if (auto c = a.text_ <=> b.text_; c != 0) return c;
    return a.pos_ <=> b.pos_;
  }

 private:
  std::string text_;
  Pos pos_ = Pos::Noun;
};

/// Grammatical relation between a verb and a noun: subject, direct object
/// or a preposition.
class SyntacticLink {
 public:
  enum class Kind { Subject, DirectObject, Prep };

  static SyntacticLink subject() { return SyntacticLink(Kind::Subject, {}); }
  static SyntacticLink direct_object() { return SyntacticLink(Kind::DirectObject, {}); }
  static SyntacticLink prep(std::string_view preposition);

  Kind kind() const { return kind_; }
  const std::string& preposition() const { return prep_; }

  /// subj | cod | prep:<p>
  std::string str() const;
  static SyntacticLink parse(std::string_view text);

  friend bool operator==(const SyntacticLink&, const SyntacticLink&) = default;
  friend auto operator<=>(const SyntacticLink&, const SyntacticLink&) = default;

 private:
  SyntacticLink(Kind kind, std::string prep) : kind_(kind), prep_(std::move(prep)) {}
  Kind kind_ = Kind::Subject;
  std::string prep_;
};

/// (verb, link, noun) observation.
struct SyntTriple {
  Lemma verb;
  SyntacticLink link = SyntacticLink::subject();
  Lemma noun;

  SyntTriple() = default;
  /// Throws Error unless verb is a Verb and noun is a Noun.
  SyntTriple(Lemma verb, SyntacticLink link, Lemma noun);

  friend bool operator==(const SyntTriple&, const SyntTriple&) = default;
  friend auto operator<=>(const SyntTriple&, const SyntTriple&) = default;
};

namespace utf8 {

/// Lowercases ASCII and the Latin-1 supplement / Latin Extended-A letters;
/// other code points pass through.
std::string to_lower(std::string_view s);
/// Uppercases the first code point (same coverage as to_lower).
std::string capitalize(std::string_view s);
/// Decodes to code points. Invalid bytes decode as themselves.
std::u32string decode(std::string_view s);
std::string encode(std::u32string_view s);

}  // namespace utf8

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);

}  // namespace lexigap
