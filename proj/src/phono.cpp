#include "lexigap/phono.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>

namespace lexigap {

std::size_t damerau_levenshtein(std::u32string_view a, std::u32string_view b) {
  const std::size_t n = a.size(), m = b.size();
  // Three rolling rows: i-2, i-1, i.
  std::vector<std::size_t> prev2(m + 1), prev(m + 1), cur(m + 1);
  std::iota(prev.begin(), prev.end(), 0);
  for (std::size_t i = 1; i <= n; ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= m; ++j) {
      const std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + cost});
      if (i > 1 && j > 1 && a[i - 1] == b[j - 2] && a[i - 2] == b[j - 1]) cur[j] = std::min(cur[j], prev2[j - 2] + 1);
    }
    std::swap(prev2, prev);
    std::swap(prev, cur);
  }
  return prev[m];
}

std::size_t damerau_levenshtein(std::string_view a, std::string_view b) {
  return damerau_levenshtein(utf8::decode(a), utf8::decode(b));
}

PronunciationMap load_pronunciations(std::istream& in) {
  PronunciationMap out;
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto line = trim(raw);
    if (line.empty() || line.starts_with('#')) continue;
    auto fields = split(line, '\t');
    if (fields.size() != 2 || trim(fields[1]).empty())
      throw ParseError(lineno, "malformed pronunciation line (expected lemma<TAB>phonemes)");
    try {
      out.insert_or_assign(Lemma(trim(fields[0]), Pos::Noun).text(), std::string(trim(fields[1])));
    } catch (const Error& e) {
      throw ParseError(lineno, e.what());
    }
  }
  return out;
}

PronunciationMap load_pronunciations_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open pronunciation file '" + path + "'");
  return load_pronunciations(in);
}

PhonoIndex::PhonoIndex(const std::set<Lemma>& lexemes, const PronunciationMap& pronunciations,
                       std::size_t prefix_length)
    : k_(prefix_length) {
  if (k_ == 0) throw Error("prefix length must be >= 1");
  for (const auto& l : lexemes) {
    auto it = pronunciations.find(l.text());
    auto form = utf8::decode(it == pronunciations.end() ? l.text() : it->second);
    buckets_[form.substr(0, k_)].insert(l);
    forms_.emplace(l, std::move(form));
  }
}

std::string PhonoIndex::form(const Lemma& l) const {
  auto it = forms_.find(l);
  return it == forms_.end() ? std::string{} : utf8::encode(it->second);
}

PhonoIndex build_phono_index(const std::set<Lemma>& lexemes, const PronunciationMap& pronunciations,
                             std::size_t prefix_length) {
  return PhonoIndex(lexemes, pronunciations, prefix_length);
}

namespace {

std::size_t shared_prefix(std::u32string_view a, std::u32string_view b) {
  std::size_t i = 0;
  while (i < a.size() && i < b.size() && a[i] == b[i]) ++i;
  return i;
}

}  // namespace

std::vector<PhonoMatch> similar_forms(const PhonoIndex& index, std::string_view hint_text, const PhonoParams& params) {
  const auto hint = utf8::decode(utf8::to_lower(trim(hint_text)));
  if (hint.empty()) throw Error("empty phonological hint");

  std::set<Lemma> pool;
  const std::size_t k = index.prefix_length();
  if (hint.size() < params.min_prefix) {
    // pool stays empty
  } else if (params.min_prefix >= k) {
    if (auto it = index.prefix_buckets().find(hint.substr(0, k)); it != index.prefix_buckets().end())
      for (const auto& l : it->second)
        if (shared_prefix(hint, index.forms().at(l)) >= params.min_prefix) pool.insert(l);
  } else {
    for (const auto& [l, form] : index.forms())
      if (shared_prefix(hint, form) >= params.min_prefix) pool.insert(l);
  }

  std::vector<PhonoMatch> out;
  for (const auto& [l, form] : index.forms()) {
    if (params.pos_filter && l.pos() != *params.pos_filter) continue;
    const bool pooled = pool.contains(l);
    const std::size_t len_gap = form.size() > hint.size() ? form.size() - hint.size() : hint.size() - form.size();
    if (!pooled && len_gap > params.max_dist) continue;
    const std::size_t dist = damerau_levenshtein(hint, form);
    if (!pooled && dist > params.max_dist) continue;
    const double longest = static_cast<double>(std::max(hint.size(), form.size()));
    const double sim = 1.0 - static_cast<double>(dist) / longest;
    if (sim > 0.0) out.push_back({l, sim});
  }
  std::sort(out.begin(), out.end(), [](const PhonoMatch& a, const PhonoMatch& b) {
    if (a.similarity != b.similarity) return a.similarity > b.similarity;
    return a.lemma < b.lemma;
  });
  return out;
}

}  // namespace lexigap
