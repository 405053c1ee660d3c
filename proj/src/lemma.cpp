#include "lexigap/lemma.hpp"

#include <algorithm>
#include <cctype>

namespace lexigap {

std::string_view pos_tag(Pos pos) {
  switch (pos) {
    case Pos::Noun: return "N";
    case Pos::Verb: return "V";
    case Pos::Adjective: return "ADJ";
  }
  return "?";
}

std::optional<Pos> parse_pos_tag(std::string_view tag) {
  std::string t(tag);
  std::transform(t.begin(), t.end(), t.begin(), [](unsigned char c) { return std::toupper(c); });
  if (t == "N") return Pos::Noun;
  if (t == "V") return Pos::Verb;
  if (t == "ADJ") return Pos::Adjective;
  return std::nullopt;
}

Lemma::Lemma(std::string_view text, Pos pos) : text_(utf8::to_lower(trim(text))), pos_(pos) {
  if (text_.empty()) throw Error("empty lemma");
  if (std::any_of(text_.begin(), text_.end(), [](unsigned char c) { return std::isspace(c); }))
    throw Error("lemma contains whitespace: '" + text_ + "'");
}

std::string Lemma::str() const {
  std::string s = text_;
  s += ':';
  s += pos_tag(pos_);
  return s;
}

Lemma Lemma::parse(std::string_view token) {
  token = trim(token);
  auto colon = token.rfind(':');
  if (colon == std::string_view::npos) throw Error("expected text:POS, got '" + std::string(token) + "'");
  auto pos = parse_pos_tag(token.substr(colon + 1));
  if (!pos) throw Error("unknown POS tag '" + std::string(token.substr(colon + 1)) + "'");
  return Lemma(token.substr(0, colon), *pos);
}

SyntacticLink SyntacticLink::prep(std::string_view preposition) {
  std::string p = utf8::to_lower(trim(preposition));
  if (p.empty()) throw Error("empty preposition");
  return SyntacticLink(Kind::Prep, std::move(p));
}

std::string SyntacticLink::str() const {
  switch (kind_) {
    case Kind::Subject: return "subj";
    case Kind::DirectObject: return "cod";
    case Kind::Prep: return "prep:" + prep_;
  }
  return "?";
}

SyntacticLink SyntacticLink::parse(std::string_view text) {
  text = trim(text);
  if (text == "subj") return subject();
  if (text == "cod") return direct_object();
  if (text.starts_with("prep:")) return prep(text.substr(5));
  throw Error("unknown link '" + std::string(text) + "'");
}

SyntTriple::SyntTriple(Lemma v, SyntacticLink l, Lemma n)
    : verb(std::move(v)), link(std::move(l)), noun(std::move(n)) {
  if (verb.pos() != Pos::Verb) throw Error("triple verb is not a verb: " + verb.str());
  if (noun.pos() != Pos::Noun) throw Error("triple noun is not a noun: " + noun.str());
}

namespace utf8 {

std::u32string decode(std::string_view s) {
  std::u32string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    auto c = static_cast<unsigned char>(s[i]);
    std::size_t extra = (c >> 5) == 0x6 ? 1 : (c >> 4) == 0xE ? 2 : (c >> 3) == 0x1E ? 3 : 0;
    char32_t cp = extra == 1 ? (c & 0x1F) : extra == 2 ? (c & 0x0F) : (c & 0x07);
    bool ok = extra > 0 && i + extra < s.size();
    for (std::size_t k = 1; ok && k <= extra; ++k) {
      auto cc = static_cast<unsigned char>(s[i + k]);
      if ((cc >> 6) != 0x2) ok = false;
      cp = (cp << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(c);
      ++i;
      continue;
    }
    out.push_back(cp);
    i += extra + 1;
  }
  return out;
}

std::string encode(std::u32string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char32_t cp : s) {
    if (cp < 0x80) {
      out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
  }
  return out;
}

namespace {

char32_t lower(char32_t c) {
  if (c >= 'A' && c <= 'Z') return c + 32;
  if (c >= 0xC0 && c <= 0xDE && c != 0xD7) return c + 32;
  if ((c >= 0x100 && c <= 0x137) || (c >= 0x14A && c <= 0x177)) return (c % 2 == 0) ? c + 1 : c;
  if ((c >= 0x139 && c <= 0x148) || (c >= 0x179 && c <= 0x17E)) return (c % 2 == 1) ? c + 1 : c;
  if (c == 0x178) return 0xFF;
  return c;
}

char32_t upper(char32_t c) {
  if (c >= 'a' && c <= 'z') return c - 32;
  if (c >= 0xE0 && c <= 0xFE && c != 0xF7) return c - 32;
  if ((c >= 0x101 && c <= 0x137) || (c >= 0x14B && c <= 0x177)) return (c % 2 == 1) ? c - 1 : c;
  if ((c >= 0x13A && c <= 0x148) || (c >= 0x17A && c <= 0x17E)) return (c % 2 == 0) ? c - 1 : c;
  if (c == 0xFF) return 0x178;
  return c;
}

}  // namespace

std::string to_lower(std::string_view s) {
  auto cps = decode(s);
  for (auto& c : cps) c = lower(c);
  return encode(cps);
}

std::string capitalize(std::string_view s) {
  auto cps = decode(s);
  if (!cps.empty()) cps[0] = upper(cps[0]);
  return encode(cps);
}

}  // namespace utf8

std::string_view trim(std::string_view s) {
  auto ws = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && ws(s.front())) s.remove_prefix(1);
  while (!s.empty() && ws(s.back())) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  for (;;) {
    auto at = s.find(sep, start);
    if (at == std::string_view::npos) {
      parts.push_back(s.substr(start));
      return parts;
    }
    parts.push_back(s.substr(start, at - start));
    start = at + 1;
  }
}

}  // namespace lexigap
