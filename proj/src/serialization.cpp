#include "awlssvm/serialization.hpp"

#include <fstream>
#include <sstream>

#include "awlssvm/errors.hpp"

namespace awlssvm {

using nlohmann::json;

namespace {

json matrix_to_json(const Matrix& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Matrix matrix_from_json(const json& j) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  const json& data = j.at("data");
  if (rows < 0 || cols < 0 || data.size() != static_cast<std::size_t>(rows * cols)) {
    throw ArgumentError("model file: matrix payload does not match its shape");
  }
  Matrix m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = data[k++].get<double>();
  return m;
}

json vector_to_json(const Vector& v) { return std::vector<double>(v.data(), v.data() + v.size()); }

Vector vector_from_json(const json& j) {
  const auto values = j.get<std::vector<double>>();
  return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ArgumentError("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ArgumentError("'" + path.string() + "' is not valid JSON: " + e.what());
  }
}

}  // namespace

json to_json(const TrainConfig& config) {
  return {{"gamma", config.gamma},
          {"rho", config.rho},
          {"beta", config.beta},
          {"iterations", config.iterations},
          {"kernel", {{"family", to_string(config.kernel.family)},
                      {"bandwidth", config.kernel.bandwidth}}},
          {"standardize", config.standardize}};
}

TrainConfig train_config_from_json(const json& j) {
  TrainConfig c;
  c.gamma = j.at("gamma").get<double>();
  c.rho = j.at("rho").get<double>();
  c.beta = j.at("beta").get<double>();
  c.iterations = j.at("iterations").get<int>();
  c.kernel.family = kernel_family_from_string(j.at("kernel").at("family").get<std::string>());
  c.kernel.bandwidth = j.at("kernel").at("bandwidth").get<double>();
  c.standardize = j.at("standardize").get<bool>();
  c.validate();
  return c;
}

json to_json(const SearchSpace& space) {
  return {{"gamma", {space.gamma.lo, space.gamma.hi}},
          {"rho", {space.rho.lo, space.rho.hi}},
          {"bandwidth", {space.bandwidth.lo, space.bandwidth.hi}},
          {"budget", space.budget},
          {"seed", space.seed}};
}

json to_json(const AwModel& model) {
  json views = json::array();
  for (const Matrix& x : model.train_views) views.push_back(matrix_to_json(x));
  json stats = json::array();
  for (const auto& s : model.stats) {
    stats.push_back({{"mean", vector_to_json(s.mean)}, {"scale", vector_to_json(s.scale)}});
  }
  json solutions = json::array();
  for (const auto& per_class : model.solutions) {
    json row = json::array();
    for (const DualSolution& sol : per_class) {
      row.push_back({{"alpha", vector_to_json(sol.alpha)}, {"b", sol.b}});
    }
    solutions.push_back(std::move(row));
  }
  return {{"config", to_json(model.config)},
          {"num_classes", model.num_classes},
          {"labels", argmax_rows(model.targets)},
          {"standardization", std::move(stats)},
          {"train_views", std::move(views)},
          {"solutions", std::move(solutions)}};
}

AwModel aw_model_from_json(const json& j) {
  AwModel m;
  m.config = train_config_from_json(j.at("config"));
  m.num_classes = j.at("num_classes").get<int>();
  const auto labels = j.at("labels").get<std::vector<int>>();
  m.targets = encode_one_vs_all(labels, m.num_classes);
  for (const json& s : j.at("standardization")) {
    m.stats.push_back({vector_from_json(s.at("mean")), vector_from_json(s.at("scale"))});
  }
  for (const json& x : j.at("train_views")) m.train_views.push_back(matrix_from_json(x));
  for (const json& row : j.at("solutions")) {
    std::vector<DualSolution> per_class;
    for (const json& sol : row) {
      DualSolution d;
      d.alpha = vector_from_json(sol.at("alpha"));
      d.b = sol.at("b").get<double>();
      per_class.push_back(std::move(d));
    }
    m.solutions.push_back(std::move(per_class));
  }

  const auto n = static_cast<Eigen::Index>(labels.size());
  if (m.solutions.size() != m.train_views.size() ||
      (m.config.standardize && m.stats.size() != m.train_views.size())) {
    throw ArgumentError("model file: view sections disagree in length");
  }
  for (std::size_t v = 0; v < m.train_views.size(); ++v) {
    if (m.train_views[v].rows() != n ||
        m.solutions[v].size() != static_cast<std::size_t>(m.num_classes)) {
      throw ArgumentError("model file: view " + std::to_string(v) + " is inconsistent");
    }
    for (const DualSolution& d : m.solutions[v]) {
      if (d.alpha.size() != n) throw ArgumentError("model file: alpha has the wrong length");
    }
  }
  return m;
}

json to_json(const TrainedModel& model) {
  json out;
  out["format_version"] = kFormatVersion;
  if (const auto* aw = std::get_if<AwModel>(&model)) {
    out["kind"] = "aw";
    out["model"] = to_json(*aw);
    return out;
  }
  const auto& base = std::get<BaselineModel>(model);
  out["kind"] = to_string(base.kind);
  out["num_views"] = base.num_views;
  out["selected_view"] = base.selected_view;
  out["view_scores"] = base.view_scores;
  json members = json::array();
  for (const AwModel& m : base.members) members.push_back(to_json(m));
  out["members"] = std::move(members);
  return out;
}

TrainedModel trained_model_from_json(const json& j) {
  try {
    if (j.at("format_version").get<int>() != kFormatVersion) {
      throw ArgumentError("model file: unsupported format_version");
    }
    const auto kind = j.at("kind").get<std::string>();
    if (kind == "aw") return aw_model_from_json(j.at("model"));
    BaselineModel base;
    base.kind = baseline_kind_from_string(kind);
    base.num_views = j.at("num_views").get<std::size_t>();
    base.selected_view = j.at("selected_view").get<std::size_t>();
    base.view_scores = j.at("view_scores").get<std::vector<double>>();
    for (const json& m : j.at("members")) base.members.push_back(aw_model_from_json(m));
    return base;
  } catch (const json::exception& e) {
    throw ArgumentError(std::string("model file: ") + e.what());
  }
}

void save_model(const TrainedModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ArgumentError("cannot write '" + path.string() + "'");
  out << to_json(model).dump() << "\n";
}

TrainedModel load_model(const std::filesystem::path& path) {
  return trained_model_from_json(read_json_file(path));
}

json to_json(const BenchmarkReport& report) {
  json splits = json::array();
  std::vector<std::uint64_t> seeds;
  for (const SplitRecord& s : report.splits) {
    seeds.push_back(s.seed);
    json trials = json::array();
    for (const Trial& t : s.tuning.trials) {
      trials.push_back({{"index", t.index},
                        {"gamma", t.config.gamma},
                        {"rho", t.config.rho},
                        {"bandwidth", t.config.kernel.bandwidth},
                        {"bandwidth_multiplier", t.bandwidth_multiplier},
                        {"cv_score", t.cv_score}});
    }
    splits.push_back({{"seed", s.seed},
                      {"score", s.score},
                      {"hyperparameters", to_json(s.tuning.best)},
                      {"cv_score", s.tuning.best_score},
                      {"best_trial", s.tuning.best_index},
                      {"median_distance", s.tuning.median_distance},
                      {"trials", std::move(trials)}});
  }
  return {{"dataset", report.dataset},
          {"method", report.method},
          {"seeds", seeds},
          {"scores", report.scores()},
          {"mean", report.mean},
          {"std", report.std},
          {"splits", std::move(splits)}};
}

json benchmark_document(const std::string& dataset, const SplitPlan& plan,
                        const SearchSpace& space, const TrainConfig& base, int folds,
                        std::span<const BenchmarkReport> reports) {
  json list = json::array();
  for (const BenchmarkReport& r : reports) list.push_back(to_json(r));
  return {{"format_version", kFormatVersion},
          {"dataset", dataset},
          {"protocol",
           {{"test_fraction", plan.test_fraction},
            {"seeds", plan.seeds},
            {"folds", folds},
            {"tuner", "log-uniform random search"},
            {"search", to_json(space)},
            {"base_config", to_json(base)}}},
          {"reports", std::move(list)}};
}

std::vector<ReportSummary> read_report_summaries(const json& doc) {
  std::vector<ReportSummary> out;
  auto read_one = [&](const json& d) {
    try {
      for (const json& r : d.at("reports")) {
        ReportSummary s;
        s.dataset = r.at("dataset").get<std::string>();
        s.method = r.at("method").get<std::string>();
        s.mean = r.at("mean").get<double>();
        s.std = r.at("std").get<double>();
        s.split_scores = r.at("scores").get<std::vector<double>>();
        out.push_back(std::move(s));
      }
    } catch (const json::exception& e) {
      throw ArgumentError(std::string("report document: ") + e.what());
    }
  };
  if (doc.is_array()) {
    for (const json& d : doc) read_one(d);
  } else {
    read_one(doc);
  }
  return out;
}

}  // namespace awlssvm
