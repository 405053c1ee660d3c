#include <fstream>
#include <sstream>

#include "json.hpp"
#include "lexigap/domain.hpp"

namespace lexigap {

using nlohmann::json;

namespace {

json config_to_json(const BuildConfig& c) {
  return {{"segmentation",
           {{"window", c.segmentation.window},
            {"min_segment", c.segmentation.min_segment},
            {"boundary_quantile", c.segmentation.boundary_quantile}}},
          {"similarity_threshold", c.similarity_threshold},
          {"keep_threshold", c.keep_threshold},
          {"min_support", c.min_support}};
}

BuildConfig config_from_json(const json& j) {
  BuildConfig c;
  if (j.contains("segmentation")) {
    const auto& s = j.at("segmentation");
    c.segmentation.window = s.value("window", c.segmentation.window);
    c.segmentation.min_segment = s.value("min_segment", c.segmentation.min_segment);
    c.segmentation.boundary_quantile = s.value("boundary_quantile", c.segmentation.boundary_quantile);
  }
  c.similarity_threshold = j.value("similarity_threshold", c.similarity_threshold);
  c.keep_threshold = j.value("keep_threshold", c.keep_threshold);
  c.min_support = j.value("min_support", c.min_support);
  c.validate();
  return c;
}

json domain_to_json(const Domain& d) {
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
          {"words", words},
          {"structures", structures},
          {"segments", d.segment_ids}};
}

Domain domain_from_json(const json& j) {
  Domain d;
  d.id = j.at("id").get<DomainId>();
  d.name = j.at("name").get<std::string>();
  for (const auto& [key, w] : j.at("words").items()) d.words.emplace(Lemma::parse(key), w.get<double>());
  for (const auto& s : j.value("structures", json::array())) {
    Structure st{Lemma(s.at("verb").get<std::string>(), Pos::Verb),
                 SyntacticLink::parse(s.at("link").get<std::string>()),
                 {}};
    for (const auto& [noun, w] : s.at("nouns").items()) st.noun_class.emplace(Lemma(noun, Pos::Noun), w.get<double>());
    d.structures.push_back(std::move(st));
  }
  d.segment_ids = j.value("segments", std::vector<std::size_t>{});
  return d;
}

}  // namespace

void save_domain_base(std::ostream& out, const DomainBase& base) {
  json domains = json::array();
  for (const auto& d : base.domains()) domains.push_back(domain_to_json(d));
  json j = {{"config", config_to_json(base.config())}, {"domains", domains}};
  out << j.dump(1) << '\n';
}

std::string domain_base_to_string(const DomainBase& base) {
  std::ostringstream out;
  save_domain_base(out, base);
  return out.str();
}

DomainBase load_domain_base(std::istream& in) {
  try {
    json j = json::parse(in);
    std::vector<Domain> domains;
    for (const auto& d : j.at("domains")) domains.push_back(domain_from_json(d));
    return DomainBase(std::move(domains), config_from_json(j.value("config", json::object())));
  } catch (const json::exception& e) {
    throw Error(std::string("invalid domain base: ") + e.what());
  }
}

DomainBase load_domain_base_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open domain base '" + path + "'");
  return load_domain_base(in);
}

BuildConfig load_build_config(std::istream& in) {
  try {
    return config_from_json(json::parse(in));
  } catch (const json::exception& e) {
    throw Error(std::string("invalid build config: ") + e.what());
  }
}

}  // namespace lexigap
