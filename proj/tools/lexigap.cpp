// lexigap command line: build, resolve, eval, serve, generate.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "lexigap/eval.hpp"
#include "lexigap/service.hpp"
#include "lexigap/synthetic.hpp"

using namespace lexigap;

namespace {

struct UsageError : Error {
  using Error::Error;
};

std::vector<Lemma> parse_lemma_list(const std::string& text) {
  std::vector<Lemma> out;
  std::string item;
  for (char c : text + ",") {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n') {
      if (!trim(item).empty()) out.push_back(Lemma::parse(item));
      item.clear();
    } else {
      item += c;
    }
  }
  return out;
}

std::vector<Lemma> read_lemma_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open removed-word list '" + path + "'");
  std::vector<Lemma> out;
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (t.empty() || t.starts_with('#')) continue;
    out.push_back(Lemma::parse(t));
  }
  return out;
}

Mode mode_from(const std::string& name) {
  auto m = parse_mode(name);
  if (!m) throw UsageError("unknown mode '" + name + "' (expected svetlan, ewn or combined)");
  return *m;
}

struct Resources {
  DomainBase base;
  ParadigmaticLexicon lexicon;
  PhonoIndex phono;
};

Resources load_resources(const std::string& base, const std::string& lexicon, const std::string& pron) {
  Resources r{load_domain_base_file(base), load_lexicon_file(lexicon), {}};
  PronunciationMap p;
  if (!pron.empty()) p = load_pronunciations_file(pron);
  r.phono = build_resource_phono_index(r.base, r.lexicon, p);
  return r;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write '" + path + "'");
  out << content;
  if (!out) throw Error("cannot write '" + path + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tip-of-the-tongue word retrieval from thematic domains and a paradigmatic lexicon"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "Build a domain base from an annotated corpus");
  std::string corpus_path, config_path, out_path;
  build->add_option("--corpus", corpus_path, "Corpus file")->required();
  build->add_option("--config", config_path, "Build configuration (JSON)");
  build->add_option("--out", out_path, "Output domain base (JSON)")->required();

  // resolve
  auto* resolve_cmd = app.add_subcommand("resolve", "Rank candidate words for a context");
  std::string base_path, lexicon_path, pron_path, context_text, mode_name_text = "combined", pos_text, slot_text,
      phono_text;
  double threshold = 0.75;
  std::size_t top = 20;
  bool restricted = false, as_json = false;
  resolve_cmd->add_option("--base", base_path, "Domain base")->required();
  resolve_cmd->add_option("--lexicon", lexicon_path, "Paradigmatic lexicon")->required();
  resolve_cmd->add_option("--pron", pron_path, "Pronunciation table");
  resolve_cmd->add_option("--context", context_text, "Context lemmas, comma separated text:POS")->required();
  resolve_cmd->add_option("--mode", mode_name_text, "svetlan, ewn or combined");
  resolve_cmd->add_option("--threshold", threshold, "Domain coverage threshold");
  resolve_cmd->add_option("--pos", pos_text, "Part of speech of the sought word");
  resolve_cmd->add_option("--slot", slot_text, "[governor@]link, e.g. cod or abroger@cod");
  resolve_cmd->add_option("--phono", phono_text, "Approximate form of the sought word");
  resolve_cmd->add_option("--top", top, "Number of candidates to print");
  resolve_cmd->add_flag("--restricted", restricted, "Only words of structures touching the context");
  resolve_cmd->add_flag("--json", as_json, "Print the JSON document served by POST /resolve");

  // eval
  auto* eval_cmd = app.add_subcommand("eval", "Score retrieval on a text with removed words");
  std::string doc_path, removed_path;
  std::size_t n = 10;
  std::uint64_t seed = 0;
  bool per_segment = false;
  eval_cmd->add_option("--base", base_path, "Domain base")->required();
  eval_cmd->add_option("--lexicon", lexicon_path, "Paradigmatic lexicon")->required();
  eval_cmd->add_option("--pron", pron_path, "Pronunciation table");
  eval_cmd->add_option("--doc", doc_path, "Document (corpus format; the first document is used)")->required();
  eval_cmd->add_option("--n", n, "Number of words to remove");
  eval_cmd->add_option("--seed", seed, "Seed of the removal draw");
  eval_cmd->add_option("--mode", mode_name_text, "svetlan, ewn or combined");
  eval_cmd->add_option("--threshold", threshold, "Domain coverage threshold");
  eval_cmd->add_option("--removed-list", removed_path, "File of words to remove, one text:POS per line");
  eval_cmd->add_flag("--restricted", restricted, "Only words of structures touching the context");
  eval_cmd->add_flag("--per-segment", per_segment, "Resolve per thematic segment and print the report");
  eval_cmd->add_flag("--json", as_json, "Print JSON");

  // serve
  auto* serve_cmd = app.add_subcommand("serve", "Run the HTTP service");
  std::string service_config;
  serve_cmd->add_option("--config", service_config, "Service configuration (default: $LEXIGAP_CONFIG)");

  // generate
  auto* gen = app.add_subcommand("generate", "Write a synthetic planted-topic corpus");
  SyntheticParams sp;
  std::string gen_out;
  gen->add_option("--topics", sp.topics, "Number of topics");
  gen->add_option("--docs-per-topic", sp.docs_per_topic, "Documents per topic");
  gen->add_option("--sentences", sp.sentences_per_doc, "Sentences per document");
  gen->add_option("--seed", sp.seed, "Generator seed");
  gen->add_flag("--annotate", sp.annotate, "Emit triple annotations");
  gen->add_option("--out", gen_out, "Output corpus")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*build) {
      auto corpus = parse_corpus_file(corpus_path);
      BuildConfig config;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        if (!in) throw Error("cannot open config '" + config_path + "'");
        config = load_build_config(in);
      }
      auto base = build_domain_base(corpus, config);
      write_file(out_path, domain_base_to_string(base));
      std::size_t words = 0, structures = 0;
      for (const auto& d : base.domains()) {
        words += d.words.size();
        structures += d.structures.size();
      }
      std::cout << "domains: " << base.domains().size() << '\n';
      std::cout << "documents: " << corpus.size() << '\n';
      std::cout << "words: " << words << '\n';
      std::cout << "structures: " << structures << '\n';
      std::cout << "discarded clusters: " << base.discarded.size() << '\n';
      if (base.empty_warning) std::cerr << "lexigap: warning: every cluster was discarded; the base is empty\n";
      return 0;
    }

    if (*resolve_cmd) {
      Query q;
      q.context = parse_lemma_list(context_text);
      if (q.context.empty()) throw UsageError("--context must name at least one lemma");
      q.mode = mode_from(mode_name_text);
      q.coverage_threshold = threshold;
      q.structure_restricted = restricted;
      if (!pos_text.empty()) {
        auto p = parse_pos_tag(pos_text);
        if (!p) throw UsageError("unknown part of speech '" + pos_text + "'");
        q.pos_filter = *p;
      }
      if (!slot_text.empty()) q.slot = Slot::parse(slot_text);
      if (!phono_text.empty()) q.phono_hint = phono_text;
      q.validate();

      auto res = load_resources(base_path, lexicon_path, pron_path);
      Resolver resolver(res.base, res.lexicon, res.phono);
      auto r = resolver.resolve(q);
      if (as_json) {
        std::cout << resolution_json(r, res.base, top) << '\n';
        return 0;
      }
      for (std::size_t i = 0; i < std::min(top, r.candidates.size()); ++i) {
        const auto& c = r.candidates[i];
        char score[32];
        std::snprintf(score, sizeof score, "%.4f", c.score);
        std::cout << i + 1 << '\t' << c.lemma.str() << '\t' << score << '\t' << c.demotions << '\t'
                  << provenance_summary(c) << '\n';
      }
      return 0;
    }

    if (*eval_cmd) {
      Query q;
      q.mode = mode_from(mode_name_text);
      q.coverage_threshold = threshold;
      q.structure_restricted = restricted;
      auto res = load_resources(base_path, lexicon_path, pron_path);
      Resolver resolver(res.base, res.lexicon, res.phono);
      auto docs = parse_corpus_file(doc_path);
      if (docs.empty()) throw Error("no document in '" + doc_path + "'");
      const auto& seg = res.base.config().segmentation;
      ClozeInstance inst = removed_path.empty()
                               ? make_cloze(docs.front(), n, {Pos::Noun, Pos::Verb}, seed, seg)
                               : make_cloze_with(docs.front(), read_lemma_file(removed_path), seg);
      auto m = evaluate(inst, q, resolver, per_segment);
      std::optional<SegmentReport> report;
      if (per_segment && !inst.segments.empty()) report = segment_report(inst, q, resolver);
      if (as_json) {
        std::cout << eval_json(m, inst.removed, report ? &*report : nullptr) << '\n';
        return 0;
      }
      char buf[64];
      std::cout << "removed:";
      for (const auto& l : inst.removed) std::cout << ' ' << l.str();
      std::cout << "\nfound:";
      for (const auto& l : m.found) std::cout << ' ' << l.str();
      std::snprintf(buf, sizeof buf, "%.4f", m.recall);
      std::cout << "\nrecall: " << buf << (m.no_targets ? " (no targets)" : "") << '\n';
      std::snprintf(buf, sizeof buf, "%.4f", m.precision);
      std::cout << "precision: " << buf << '\n';
      std::cout << "returned: " << m.returned_count << '\n';
      if (report) std::cout << '\n' << report_tsv(*report);
      return 0;
    }

    if (*serve_cmd) {
      if (service_config.empty()) {
        const char* env = std::getenv("LEXIGAP_CONFIG");
        if (!env || !*env) throw UsageError("serve needs --config or LEXIGAP_CONFIG");
        service_config = env;
      }
      auto config = load_service_config(service_config);
      auto service = Service::load(config);
      std::cerr << "lexigap: listening on " << config.listen_address << '\n';
      serve(*service, config.host(), config.port());
      return 0;
    }

    if (*gen) {
      auto corpus = generate_corpus(sp);
      std::ofstream out(gen_out, std::ios::binary);
      if (!out) throw Error("cannot write '" + gen_out + "'");
      write_corpus(out, corpus.documents);
      std::cout << "documents: " << corpus.documents.size() << '\n';
      return 0;
    }
  } catch (const UsageError& e) {
    std::cerr << "lexigap: usage error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "lexigap: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
