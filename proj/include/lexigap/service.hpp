#pragma once

#include <memory>
#include <optional>
#include <string>

#include "lexigap/eval.hpp"
#include "lexigap/resolver.hpp"

namespace lexigap {

/// Startup failure; `what()` names the resource that failed.
class StartupError : public Error {
 public:
  using Error::Error;
};

/// Query parameters used when a request leaves them out.
struct QueryDefaults {
  Mode mode = Mode::Combined;
  double threshold = 0.75;
  std::size_t top = 50;
  bool restricted = false;
};

struct ServiceConfig {
  std::string base_path;
  std::string lexicon_path;
  std::optional<std::string> pronunciation_path;
  /// "host:port"
  std::string listen_address = "127.0.0.1:8080";
  QueryDefaults defaults;

  std::string host() const;
  int port() const;
};

/// Reads the JSON config; relative paths resolve against the config file's
/// directory. Throws StartupError.
ServiceConfig load_service_config(const std::string& path);

struct Response {
  int status = 200;
  std::string body;
};

/// Loaded resources and the request handlers. Handlers are const and share
/// no mutable state, so they may run concurrently.
class Service {
 public:
  Service(DomainBase base, ParadigmaticLexicon lexicon, PronunciationMap pronunciations = {},
          QueryDefaults defaults = {});
  /// Loads every resource named by `config`. Throws StartupError.
  static std::unique_ptr<Service> load(const ServiceConfig& config);

  Response resolve(const std::string& body) const;
  Response domains() const;
  Response domain(const std::string& id) const;
  Response eval(const std::string& body) const;
  Response health() const;

  const Resolver& resolver() const { return *resolver_; }

 private:
  DomainBase base_;
  ParadigmaticLexicon lexicon_;
  PhonoIndex phono_;
  QueryDefaults defaults_;
  std::unique_ptr<Resolver> resolver_;
};

/// Blocks serving HTTP until the process ends. Throws StartupError if the
/// address cannot be bound.
void serve(const Service& service, const std::string& host, int port);

/// One-line provenance summary, as printed by the command line tool.
std::string provenance_summary(const Candidate& c);

/// JSON document for a ranked resolution (at most `top` candidates).
std::string resolution_json(const Resolution& r, const DomainBase& base, std::size_t top);

/// JSON document for metrics and an optional report.
std::string eval_json(const Metrics& m, const std::vector<Lemma>& removed, const SegmentReport* report);

}  // namespace lexigap
