#include "awlssvm/run_config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "awlssvm/errors.hpp"

namespace awlssvm {

using nlohmann::json;

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed,
                    const std::string& where) {
  for (const auto& [key, value] : obj.items()) {
    if (!allowed.contains(key)) {
      throw ArgumentError("config: unknown key '" + where + key + "'");
    }
  }
}

template <typename T>
void read_key(const json& obj, const char* key, T& out, const std::string& where = "") {
  if (!obj.contains(key)) return;
  try {
    out = obj.at(key).get<T>();
  } catch (const json::exception&) {
    throw ArgumentError("config: key '" + where + key + "' has the wrong type");
  }
}

void read_interval(const json& obj, const char* key, LogInterval& out) {
  if (!obj.contains(key)) return;
  std::vector<double> pair;
  read_key(obj, key, pair, "search.");
  if (pair.size() != 2) {
    throw ArgumentError(std::string("config: 'search.") + key + "' must be [lo, hi]");
  }
  out = {pair[0], pair[1]};
}

}  // namespace

void RunConfig::validate() const {
  try {
    train.validate();
  } catch (const ArgumentError& e) {
    throw ArgumentError(std::string("config: ") + e.what());
  }
  search.validate();
  split.validate();
  if (folds < 2) throw ArgumentError("config: folds must be >= 2");
}

RunConfig parse_run_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ArgumentError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ArgumentError("config: top level must be an object");
  reject_unknown(doc,
                 {"gamma", "rho", "beta", "iterations", "kernel", "bandwidth", "standardize",
                  "test_fraction", "seeds", "folds", "search"},
                 "");

  RunConfig cfg;
  read_key(doc, "gamma", cfg.train.gamma);
  read_key(doc, "rho", cfg.train.rho);
  read_key(doc, "beta", cfg.train.beta);
  read_key(doc, "iterations", cfg.train.iterations);
  read_key(doc, "bandwidth", cfg.train.kernel.bandwidth);
  read_key(doc, "standardize", cfg.train.standardize);
  if (doc.contains("kernel")) {
    std::string family;
    read_key(doc, "kernel", family);
    cfg.train.kernel.family = kernel_family_from_string(family);
  }
  read_key(doc, "test_fraction", cfg.split.test_fraction);
  read_key(doc, "seeds", cfg.split.seeds);
  read_key(doc, "folds", cfg.folds);

  if (doc.contains("search")) {
    const json& search = doc.at("search");
    if (!search.is_object()) throw ArgumentError("config: 'search' must be an object");
    reject_unknown(search, {"gamma", "rho", "bandwidth", "budget", "seed"}, "search.");
    read_interval(search, "gamma", cfg.search.gamma);
    read_interval(search, "rho", cfg.search.rho);
    read_interval(search, "bandwidth", cfg.search.bandwidth);
    read_key(search, "budget", cfg.search.budget, "search.");
    read_key(search, "seed", cfg.search.seed, "search.");
  }
  cfg.validate();
  return cfg;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open config file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

}  // namespace awlssvm
