#include "lexigap/resolver.hpp"

#include <algorithm>

namespace lexigap {

std::string_view mode_name(Mode m) {
  switch (m) {
    case Mode::Svetlan: return "svetlan";
    case Mode::Ewn: return "ewn";
    case Mode::Combined: return "combined";
  }
  return "?";
}

std::optional<Mode> parse_mode(std::string_view name) {
  for (Mode m : {Mode::Svetlan, Mode::Ewn, Mode::Combined})
    if (mode_name(m) == name) return m;
  return std::nullopt;
}

Slot Slot::parse(std::string_view text) {
  text = trim(text);
  Slot s;
  auto at = text.find('@');
  if (at != std::string_view::npos) {
    auto gov = trim(text.substr(0, at));
    if (gov.empty()) throw Error("empty slot governor");
    if (gov != "*") s.governor = Lemma(gov, Pos::Verb);
    text = text.substr(at + 1);
  }
  s.link = SyntacticLink::parse(text);
  return s;
}

std::string Slot::str() const { return (governor ? governor->text() : std::string("*")) + "@" + link.str(); }

void Query::validate() const {
  if (context.empty()) throw Error("empty context");
  if (!(coverage_threshold > 0.0 && coverage_threshold <= 1.0))
    throw Error("coverage threshold must be in (0, 1]");
  if (phono_hint && trim(*phono_hint).empty()) throw Error("empty phonological hint");
}

std::set<Lemma> lemma_set(const CandidateSet& c) {
  std::set<Lemma> out;
  for (const auto& [l, p] : c) out.insert(l);
  return out;
}

double score(const Provenance& provenance, const ScoringWeights& w) {
  double domain = 0, phono = 0;
  bool structure = false;
  std::optional<std::size_t> shortest;
  for (const auto& e : provenance) {
    if (auto* d = std::get_if<DomainEvidence>(&e)) {
      domain = std::max(domain, d->coverage * d->weight);
    } else if (std::holds_alternative<StructureEvidence>(e)) {
      structure = true;
    } else if (auto* p = std::get_if<ParadigmaticEvidence>(&e)) {
      shortest = std::min(shortest.value_or(p->path.size()), p->path.size());
    } else if (auto* f = std::get_if<PhonoEvidence>(&e)) {
      phono = std::max(phono, f->similarity);
    }
  }
  double s = w.domain * domain + w.phono * phono;
  if (structure) s += w.structure;
  if (shortest) s += w.paradigmatic / (1.0 + static_cast<double>(*shortest));
  return s;
}

std::vector<DomainSelection> select_domains(const DomainBase& base, const std::set<Lemma>& context, double threshold) {
  if (context.empty()) throw Error("empty context");
  if (!(threshold > 0.0 && threshold <= 1.0)) throw Error("coverage threshold must be in (0, 1]");
  std::map<DomainId, std::size_t> hits;
  for (const auto& l : context)
    for (DomainId id : base.domains_with(l)) ++hits[id];
  std::vector<DomainSelection> out;
  for (const auto& [id, n] : hits) {
    double coverage = static_cast<double>(n) / static_cast<double>(context.size());
    if (coverage >= threshold) out.push_back({id, coverage});
  }
  std::sort(out.begin(), out.end(), [](const DomainSelection& a, const DomainSelection& b) {
    if (a.coverage != b.coverage) return a.coverage > b.coverage;
    return a.id < b.id;
  });
  return out;
}

CandidateSet candidates_svetlan(const DomainBase& base, std::span<const DomainSelection> selections,
                                bool structure_restricted, const std::set<Lemma>& context) {
  CandidateSet out;
  for (const auto& sel : selections) {
    const Domain* d = base.find(sel.id);
    if (!d) continue;
    auto domain_evidence = [&](const Lemma& l) {
      return DomainEvidence{d->id, sel.coverage, d->words.at(l)};
    };
    if (!structure_restricted) {
      for (const auto& [l, w] : d->words) out[l].insert(domain_evidence(l));
      continue;
    }
    for (const auto& s : d->structures) {
      const auto lemmas = s.lemmas();
      if (std::none_of(lemmas.begin(), lemmas.end(), [&](const Lemma& l) { return context.contains(l); })) continue;
      for (const auto& l : lemmas) {
        out[l].insert(domain_evidence(l));
        out[l].insert(StructureEvidence{d->id, s.verb, s.link});
      }
    }
  }
  return out;
}

CandidateSet candidates_ewn(const ParadigmaticLexicon& lexicon, const CandidateSet& seeds,
                            const std::set<LinkType>& allowed, std::size_t depth) {
  CandidateSet out = seeds;
  for (const auto& [seed, evidence] : seeds)
    for (auto& n : neighbors(lexicon, seed, allowed, depth)) out[n.lemma].insert(ParadigmaticEvidence{seed, n.path});
  return out;
}

namespace {

void merge_into(CandidateSet& into, const CandidateSet& from) {
  for (const auto& [l, ev] : from) into[l].insert(ev.begin(), ev.end());
}

bool slot_matches(const Slot& slot, const Lemma& candidate, const Domain& d) {
  for (const auto& s : d.structures) {
    if (s.link != slot.link) continue;
    if (slot.governor) {
      if (s.verb == *slot.governor && s.noun_class.contains(candidate)) return true;
    } else if (s.contains(candidate)) {
      return true;
    }
  }
  return false;
}

struct Pass {
  std::vector<DomainSelection> selections;
  CandidateSet candidates;
};

Pass run_pass(const Query& q, const std::set<Lemma>& context, const DomainBase& base,
              const ParadigmaticLexicon& lexicon, const ResolverOptions& opt) {
  Pass p;
  if (q.mode == Mode::Ewn) {
    CandidateSet seeds;
    for (const auto& l : context) seeds[l].insert(ParadigmaticEvidence{l, {}});
    p.candidates = candidates_ewn(lexicon, seeds, opt.allowed_links, opt.expansion_depth);
    return p;
  }
  p.selections = select_domains(base, context, q.coverage_threshold);
  p.candidates = candidates_svetlan(base, p.selections, q.structure_restricted, context);
  if (q.mode == Mode::Combined) {
    auto seeds = q.structure_restricted ? p.candidates : candidates_svetlan(base, p.selections, true, context);
    merge_into(p.candidates, candidates_ewn(lexicon, seeds, opt.allowed_links, opt.expansion_depth));
  }
  return p;
}

}  // namespace

Resolution resolve(const Query& query, const DomainBase& base, const ParadigmaticLexicon& lexicon,
                   const PhonoIndex& phono, const ResolverOptions& options) {
  query.validate();

  std::vector<std::set<Lemma>> contexts;
  for (const auto& seg : query.segments)
    if (!seg.empty()) contexts.emplace_back(seg.begin(), seg.end());
  if (contexts.empty()) contexts.emplace_back(query.context.begin(), query.context.end());

  CandidateSet pool;
  std::map<DomainId, double> selected;
  for (const auto& ctx : contexts) {
    auto pass = run_pass(query, ctx, base, lexicon, options);
    merge_into(pool, pass.candidates);
    for (const auto& s : pass.selections) selected[s.id] = std::max(selected[s.id], s.coverage);
  }

  if (query.pos_filter) std::erase_if(pool, [&](const auto& kv) { return kv.first.pos() != *query.pos_filter; });

  std::map<Lemma, int> demotions;
  if (query.slot) {
    for (const auto& [l, ev] : pool) {
      bool ok = std::any_of(selected.begin(), selected.end(), [&](const auto& sel) {
        const Domain* d = base.find(sel.first);
        return d && slot_matches(*query.slot, l, *d);
      });
      if (!ok) ++demotions[l];
    }
  }
  if (query.phono_hint) {
    PhonoParams params = options.phono;
    params.pos_filter.reset();
    std::map<std::string, double, std::less<>> sims;
    for (const auto& m : similar_forms(phono, *query.phono_hint, params)) {
      auto& s = sims[m.lemma.text()];
      s = std::max(s, m.similarity);
    }
    for (auto& [l, ev] : pool) {
      if (auto it = sims.find(l.text()); it != sims.end())
        ev.insert(PhonoEvidence{it->second});
      else
        ++demotions[l];
    }
  }

  Resolution r;
  for (const auto& [id, coverage] : selected) r.selected.push_back({id, coverage});
  std::sort(r.selected.begin(), r.selected.end(), [](const DomainSelection& a, const DomainSelection& b) {
    if (a.coverage != b.coverage) return a.coverage > b.coverage;
    return a.id < b.id;
  });

  r.candidates.reserve(pool.size());
  for (const auto& [l, ev] : pool) {
    auto it = demotions.find(l);
    r.candidates.push_back({l, score(ev, options.weights), it == demotions.end() ? 0 : it->second,
                            std::vector<Evidence>(ev.begin(), ev.end())});
  }
  std::sort(r.candidates.begin(), r.candidates.end(), [](const Candidate& a, const Candidate& b) {
    if (a.demotions != b.demotions) return a.demotions < b.demotions;
    if (a.score != b.score) return a.score > b.score;
    return a.lemma < b.lemma;
  });
  return r;
}

PhonoIndex build_resource_phono_index(const DomainBase& base, const ParadigmaticLexicon& lexicon,
                                      const PronunciationMap& pronunciations, std::size_t prefix_length) {
  std::set<Lemma> lexemes;
  for (const auto& [l, ids] : base.lemma_index()) lexemes.insert(l);
  for (const auto& [text, links] : lexicon.entries()) lexemes.insert(Lemma(text, lexicon.pos_of(text).value_or(Pos::Noun)));
  return build_phono_index(lexemes, pronunciations, prefix_length);
}

}  // namespace lexigap
