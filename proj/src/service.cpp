#include "lexigap/service.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "httplib.h"
#include "json.hpp"

namespace lexigap {

using nlohmann::json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct BadRequest {
  std::string field;
  std::string message;
};

Response json_response(int status, const json& j) { return {status, j.dump()}; }

Response error_response(int status, const std::string& field, const std::string& message) {
  json j = {{"error", message}};
  if (!field.empty()) j["field"] = field;
  return json_response(status, j);
}

json parse_body(const std::string& body) {
  try {
    auto j = json::parse(body);
    if (!j.is_object()) throw BadRequest{"", "body must be a JSON object"};
    return j;
  } catch (const json::parse_error& e) {
    throw BadRequest{"", std::string("malformed JSON: ") + e.what()};
  }
}

std::vector<Lemma> lemma_list(const json& j, const std::string& field) {
  if (!j.is_array()) throw BadRequest{field, "expected an array of \"text:POS\" strings"};
  std::vector<Lemma> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw BadRequest{field, "expected an array of \"text:POS\" strings"};
    try {
      out.push_back(Lemma::parse(e.get<std::string>()));
    } catch (const Error& err) {
      throw BadRequest{field, err.what()};
    }
  }
  return out;
}

double fraction_field(const json& body, const std::string& field, double fallback) {
  if (!body.contains(field)) return fallback;
  const auto& v = body.at(field);
  if (!v.is_number()) throw BadRequest{field, "expected a number"};
  double d = v.get<double>();
  if (!(d > 0.0 && d <= 1.0)) throw BadRequest{field, "must be in (0, 1]"};
  return d;
}

std::uint64_t count_field(const json& body, const std::string& field, std::uint64_t fallback) {
  if (!body.contains(field)) return fallback;
  const auto& v = body.at(field);
  if (!v.is_number_integer() || v.get<std::int64_t>() < 0) throw BadRequest{field, "expected a non-negative integer"};
  return v.get<std::uint64_t>();
}

bool bool_field(const json& body, const std::string& field, bool fallback) {
  if (!body.contains(field)) return fallback;
  if (!body.at(field).is_boolean()) throw BadRequest{field, "expected true or false"};
  return body.at(field).get<bool>();
}

Mode mode_field(const json& body, Mode fallback) {
  if (!body.contains("mode")) return fallback;
  const auto& v = body.at("mode");
  if (!v.is_string()) throw BadRequest{"mode", "expected svetlan, ewn or combined"};
  auto m = parse_mode(v.get<std::string>());
  if (!m) throw BadRequest{"mode", "unknown mode '" + v.get<std::string>() + "'"};
  return *m;
}

Pos pos_value(const json& v, const std::string& field) {
  if (!v.is_string()) throw BadRequest{field, "expected N, V or ADJ"};
  auto p = parse_pos_tag(v.get<std::string>());
  if (!p) throw BadRequest{field, "unknown part of speech '" + v.get<std::string>() + "'"};
  return *p;
}

Slot slot_value(const json& v) {
  try {
    if (v.is_string()) return Slot::parse(v.get<std::string>());
    if (!v.is_object() || !v.contains("link") || !v.at("link").is_string())
      throw BadRequest{"slot", "expected {governor?, link}"};
    Slot s;
    s.link = SyntacticLink::parse(v.at("link").get<std::string>());
    if (v.contains("governor") && !v.at("governor").is_null()) {
      if (!v.at("governor").is_string()) throw BadRequest{"slot.governor", "expected a verb"};
      auto g = v.at("governor").get<std::string>();
      if (g != "*") s.governor = Lemma(g, Pos::Verb);
    }
    return s;
  } catch (const Error& e) {
    throw BadRequest{"slot", e.what()};
  }
}

json evidence_json(const Evidence& e) {
  return std::visit(
      [](const auto& ev) -> json {
        using T = std::decay_t<decltype(ev)>;
        if constexpr (std::is_same_v<T, DomainEvidence>) {
          return {{"type", "domain"}, {"domain", ev.domain}, {"coverage", ev.coverage}, {"weight", ev.weight}};
        } else if constexpr (std::is_same_v<T, StructureEvidence>) {
          return {{"type", "structure"}, {"domain", ev.domain}, {"verb", ev.verb.text()}, {"link", ev.link.str()}};
        } else if constexpr (std::is_same_v<T, ParadigmaticEvidence>) {
          json path = json::array();
          for (auto t : ev.path) path.push_back(std::string(link_type_name(t)));
          return {{"type", "paradigmatic"}, {"source", ev.source.str()}, {"path", path}};
        } else {
          return {{"type", "phono"}, {"similarity", ev.similarity}};
        }
      },
      e);
}

json domain_json(const Domain& d) {
  json words = json::object();
  for (const auto& [l, w] : d.words) words[l.str()] = w;
  json structures = json::array();
  for (const auto& s : d.structures) {
    json nouns = json::object();
    for (const auto& [n, w] : s.noun_class) nouns[n.text()] = w;
    structures.push_back({{"verb", s.verb.text()}, {"link", s.link.str()}, {"nouns", nouns}});
  }
  return {{"id", d.id},
          {"name", d.name},
          {"word_count", d.words.size()},
          {"structure_count", d.structures.size()},
          {"words", words},
          {"structures", structures}};
}

json metrics_json(const Metrics& m) {
  json found = json::array();
  for (const auto& l : m.found) found.push_back(l.str());
  return {{"recall", m.recall},         {"precision", m.precision},       {"found", found},
          {"returned_count", m.returned_count}, {"target_count", m.target_count}, {"no_targets", m.no_targets}};
}

json report_json(const SegmentReport& r) {
  json words = json::array();
  for (const auto& w : r.words) words.push_back({{"lemma", w.lemma.str()}, {"found", w.found}});
  json domains = json::array();
  for (const auto& d : r.domains)
    domains.push_back({{"id", d.id},
                       {"name", d.name},
                       {"word_count", d.word_count},
                       {"restricted_count", d.restricted_count},
                       {"reduction", d.reduction},
                       {"selected", d.selected}});
  json metrics = json::array();
  for (const auto& m : r.metrics) metrics.push_back(metrics_json(m));
  return {{"columns", r.columns}, {"words", words}, {"domains", domains}, {"metrics", metrics}};
}

template <class F>
Response guarded(F&& f) {
  try {
    return f();
  } catch (const BadRequest& e) {
    return error_response(400, e.field, e.message);
  } catch (const Error& e) {
    return error_response(400, "", e.what());
  }
}

std::string resolve_against(const std::filesystem::path& dir, const std::string& p) {
  std::filesystem::path path(p);
  return (path.is_absolute() ? path : dir / path).lexically_normal().string();
}

}  // namespace

std::string ServiceConfig::host() const {
  auto colon = listen_address.rfind(':');
  return colon == std::string::npos ? listen_address : listen_address.substr(0, colon);
}

int ServiceConfig::port() const {
  auto colon = listen_address.rfind(':');
  if (colon == std::string::npos) throw StartupError("listen_address: missing port in '" + listen_address + "'");
  try {
    std::size_t used = 0;
    int p = std::stoi(listen_address.substr(colon + 1), &used);
    if (used != listen_address.size() - colon - 1 || p < 0 || p > 65535) throw std::out_of_range("port");
    return p;
  } catch (const std::exception&) {
    throw StartupError("listen_address: invalid port in '" + listen_address + "'");
  }
}

ServiceConfig load_service_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw StartupError("config: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw StartupError("config: " + std::string(e.what()));
  }
  const auto dir = std::filesystem::path(path).parent_path();
  ServiceConfig c;
  try {
    if (!j.contains("base_path")) throw StartupError("config: missing base_path");
    if (!j.contains("lexicon_path")) throw StartupError("config: missing lexicon_path");
    c.base_path = resolve_against(dir, j.at("base_path").get<std::string>());
    c.lexicon_path = resolve_against(dir, j.at("lexicon_path").get<std::string>());
    if (j.contains("pronunciation_path") && !j.at("pronunciation_path").is_null())
      c.pronunciation_path = resolve_against(dir, j.at("pronunciation_path").get<std::string>());
    c.listen_address = j.value("listen_address", c.listen_address);
    if (j.contains("defaults")) {
      const auto& d = j.at("defaults");
      if (d.contains("mode")) {
        auto m = parse_mode(d.at("mode").get<std::string>());
        if (!m) throw StartupError("config: unknown default mode");
        c.defaults.mode = *m;
      }
      c.defaults.threshold = d.value("threshold", c.defaults.threshold);
      if (!(c.defaults.threshold > 0.0 && c.defaults.threshold <= 1.0))
        throw StartupError("config: default threshold must be in (0, 1]");
      c.defaults.top = d.value("top", c.defaults.top);
      c.defaults.restricted = d.value("restricted", c.defaults.restricted);
    }
  } catch (const json::exception& e) {
    throw StartupError("config: " + std::string(e.what()));
  }
  c.port();
  return c;
}

Service::Service(DomainBase base, ParadigmaticLexicon lexicon, PronunciationMap pronunciations,
                 QueryDefaults defaults)
    : base_(std::move(base)), lexicon_(std::move(lexicon)), defaults_(defaults) {
  phono_ = build_resource_phono_index(base_, lexicon_, pronunciations);
  resolver_ = std::make_unique<Resolver>(base_, lexicon_, phono_);
}

std::unique_ptr<Service> Service::load(const ServiceConfig& config) {
  auto stage = [](const char* name, auto&& f) {
    try {
      return f();
    } catch (const Error& e) {
      throw StartupError(std::string(name) + ": " + e.what());
    }
  };
  auto base = stage("base", [&] { return load_domain_base_file(config.base_path); });
  auto lexicon = stage("lexicon", [&] { return load_lexicon_file(config.lexicon_path); });
  PronunciationMap pron;
  if (config.pronunciation_path)
    pron = stage("pronunciations", [&] { return load_pronunciations_file(*config.pronunciation_path); });
  return std::make_unique<Service>(std::move(base), std::move(lexicon), std::move(pron), config.defaults);
}

Response Service::resolve(const std::string& body) const {
  return guarded([&] {
    const json j = parse_body(body);
    if (!j.contains("context")) throw BadRequest{"context", "required"};
    Query q;
    q.context = lemma_list(j.at("context"), "context");
    if (q.context.empty()) throw BadRequest{"context", "empty context"};
    if (j.contains("segments")) {
      if (!j.at("segments").is_array()) throw BadRequest{"segments", "expected an array of lemma arrays"};
      for (const auto& s : j.at("segments")) q.segments.push_back(lemma_list(s, "segments"));
    }
    q.mode = mode_field(j, defaults_.mode);
    q.coverage_threshold = fraction_field(j, "threshold", defaults_.threshold);
    q.structure_restricted = bool_field(j, "restricted", defaults_.restricted);
    if (j.contains("pos") && !j.at("pos").is_null()) q.pos_filter = pos_value(j.at("pos"), "pos");
    if (j.contains("slot") && !j.at("slot").is_null()) q.slot = slot_value(j.at("slot"));
    if (j.contains("phono") && !j.at("phono").is_null()) {
      if (!j.at("phono").is_string() || trim(j.at("phono").get<std::string>()).empty())
        throw BadRequest{"phono", "expected a non-empty string"};
      q.phono_hint = j.at("phono").get<std::string>();
    }
    auto top = count_field(j, "top", defaults_.top);
    return Response{200, resolution_json(resolver_->resolve(q), base_, top)};
  });
}

Response Service::domains() const {
  json out = json::array();
  for (const auto& d : base_.domains())
    out.push_back({{"id", d.id},
                   {"name", d.name},
                   {"word_count", d.words.size()},
                   {"structure_count", d.structures.size()}});
  return json_response(200, out);
}

Response Service::domain(const std::string& id) const {
  DomainId value = 0;
  try {
    std::size_t used = 0;
    auto v = std::stoull(id, &used);
    if (used != id.size()) throw std::invalid_argument(id);
    value = static_cast<DomainId>(v);
  } catch (const std::exception&) {
    return error_response(404, "id", "unknown domain '" + id + "'");
  }
  const Domain* d = base_.find(value);
  if (!d) return error_response(404, "id", "unknown domain " + id);
  return json_response(200, domain_json(*d));
}

Response Service::eval(const std::string& body) const {
  return guarded([&] {
    const json j = parse_body(body);
    if (!j.contains("document") || !j.at("document").is_string())
      throw BadRequest{"document", "required corpus-format text"};
    std::istringstream in(j.at("document").get<std::string>());
    std::vector<Document> docs;
    try {
      docs = parse_corpus(in);
    } catch (const Error& e) {
      throw BadRequest{"document", e.what()};
    }
    if (docs.empty()) throw BadRequest{"document", "no document"};

    Query q;
    q.mode = mode_field(j, defaults_.mode);
    q.coverage_threshold = fraction_field(j, "threshold", defaults_.threshold);
    q.structure_restricted = bool_field(j, "restricted", defaults_.restricted);
    const bool per_segment = bool_field(j, "per_segment", false);

    ClozeInstance inst;
    if (j.contains("removed")) {
      auto removed = lemma_list(j.at("removed"), "removed");
      try {
        inst = make_cloze_with(docs.front(), removed, base_.config().segmentation);
      } catch (const Error& e) {
        throw BadRequest{"removed", e.what()};
      }
    } else {
      std::set<Pos> pool = {Pos::Noun, Pos::Verb};
      if (j.contains("pos_pool")) {
        pool.clear();
        if (!j.at("pos_pool").is_array()) throw BadRequest{"pos_pool", "expected an array of N, V, ADJ"};
        for (const auto& p : j.at("pos_pool")) pool.insert(pos_value(p, "pos_pool"));
      }
      auto n = count_field(j, "n", 10);
      auto seed = count_field(j, "seed", 0);
      try {
        inst = make_cloze(docs.front(), n, pool, seed, base_.config().segmentation);
      } catch (const Error& e) {
        throw BadRequest{"n", e.what()};
      }
    }
    auto metrics = evaluate(inst, q, *resolver_, per_segment);
    std::optional<SegmentReport> report;
    if (per_segment && !inst.segments.empty()) report = segment_report(inst, q, *resolver_);
    return Response{200, eval_json(metrics, inst.removed, report ? &*report : nullptr)};
  });
}

Response Service::health() const {
  return json_response(200, {{"status", "ok"},
                             {"version", kVersion},
                             {"domains", base_.domains().size()},
                             {"lexicon_forms", lexicon_.variant_count()},
                             {"phono_forms", phono_.size()}});
}

void serve(const Service& service, const std::string& host, int port) {
  httplib::Server server;
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, "application/json");
  };
  server.Post("/resolve", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.resolve(req.body));
  });
  server.Get("/domains", [&](const httplib::Request&, httplib::Response& res) { reply(res, service.domains()); });
  server.Get(R"(/domains/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    reply(res, service.domain(req.matches[1]));
  });
  server.Post("/eval", [&](const httplib::Request& req, httplib::Response& res) { reply(res, service.eval(req.body)); });
  server.Get("/health", [&](const httplib::Request&, httplib::Response& res) { reply(res, service.health()); });
  if (!server.bind_to_port(host, port)) throw StartupError("listen_address: cannot bind " + host + ":" + std::to_string(port));
  server.listen_after_bind();
}

std::string provenance_summary(const Candidate& c) {
  std::ostringstream out;
  bool first = true;
  auto sep = [&] {
    if (!first) out << ',';
    first = false;
  };
  char buf[32];
  for (const auto& e : c.provenance) {
    sep();
    if (auto* d = std::get_if<DomainEvidence>(&e)) {
      std::snprintf(buf, sizeof buf, "%.3f", d->weight);
      out << "domain:" << d->domain << '=' << buf;
    } else if (auto* s = std::get_if<StructureEvidence>(&e)) {
      out << "structure:" << s->domain << '=' << s->verb.text() << '/' << s->link.str();
    } else if (auto* p = std::get_if<ParadigmaticEvidence>(&e)) {
      out << "lexicon:" << p->source.text();
      for (auto t : p->path) out << '>' << link_type_name(t);
    } else if (auto* f = std::get_if<PhonoEvidence>(&e)) {
      std::snprintf(buf, sizeof buf, "%.3f", f->similarity);
      out << "phono=" << buf;
    }
  }
  return out.str();
}

std::string resolution_json(const Resolution& r, const DomainBase& base, std::size_t top) {
  json candidates = json::array();
  for (std::size_t i = 0; i < std::min(top, r.candidates.size()); ++i) {
    const auto& c = r.candidates[i];
    json prov = json::array();
    for (const auto& e : c.provenance) prov.push_back(evidence_json(e));
    candidates.push_back({{"lemma", c.lemma.text()},
                          {"pos", std::string(pos_tag(c.lemma.pos()))},
                          {"score", c.score},
                          {"demotions", c.demotions},
                          {"provenance", prov}});
  }
  json selected = json::array();
  for (const auto& s : r.selected) {
    const Domain* d = base.find(s.id);
    selected.push_back({{"id", s.id}, {"name", d ? d->name : std::string()}, {"coverage", s.coverage}});
  }
  return json{{"candidates", candidates}, {"selected_domains", selected}}.dump();
}

std::string eval_json(const Metrics& m, const std::vector<Lemma>& removed, const SegmentReport* report) {
  json j = metrics_json(m);
  json targets = json::array();
  for (const auto& l : removed) targets.push_back(l.str());
  j["removed"] = targets;
  if (report) j["report"] = report_json(*report);
  return j.dump();
}

}  // namespace lexigap
