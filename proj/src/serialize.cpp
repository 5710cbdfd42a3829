#include <pencil/serialize.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

namespace pencil {

namespace {

nlohmann::json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

}  // namespace

nlohmann::json grid_to_json(const Grid& g) {
  return {{"re0", g.re0()}, {"im0", g.im0()}, {"omega", g.omega}, {"s1", g.s1}, {"s2", g.s2}};
}

Grid grid_from_json(const nlohmann::json& j) {
  Grid g;
  g.z0 = Complex(j.at("re0").get<double>(), j.at("im0").get<double>());
  g.omega = j.at("omega").get<double>();
  g.s1 = j.at("s1").get<std::int64_t>();
  g.s2 = j.at("s2").get<std::int64_t>();
  if (!(g.omega > 0) || g.s1 < 1 || g.s2 < 1)
    throw std::invalid_argument("grid_from_json: invalid grid");
  return g;
}

nlohmann::json shatter_report_to_json(const ShatterReport& report) {
  nlohmann::json boxes = nlohmann::json::array();
  for (const auto& [lambda, loc] : report.eigenvalue_boxes) {
    nlohmann::json entry{{"re", lambda.real()}, {"im", lambda.imag()}};
    switch (loc.kind) {
      case BoxLocation::Kind::box:
        entry["box"] = {loc.i, loc.j};
        break;
      case BoxLocation::Kind::outside:
        entry["box"] = "outside";
        break;
      case BoxLocation::Kind::on_line:
        entry["box"] = "on_line";
        break;
    }
    boxes.push_back(std::move(entry));
  }
  return {{"shattered", report.shattered},
          {"min_grid_sigma_ratio", finite_or_null(report.min_grid_sigma_ratio)},
          {"eigenvalue_boxes", std::move(boxes)},
          {"violations", report.violations}};
}

nlohmann::json experiment_to_json(const ExperimentResult& result) {
  const auto& cfg = result.config;
  nlohmann::json config{{"recipe", recipe_name(cfg.name)},
                        {"n", cfg.n},
                        {"eps", cfg.eps_user},
                        {"runs", cfg.runs},
                        {"seed", cfg.seed},
                        {"cutoff", cfg.cutoff},
                        {"comparator", cfg.comparator},
                        {"mode", cfg.mode == Mode::practical ? "practical" : "theoretical"}};

  nlohmann::json runs = nlohmann::json::array();
  for (const auto& rec : result.runs) {
    nlohmann::json splits = nlohmann::json::array();
    for (const auto& s : rec.splits)
      splits.push_back({{"m", s.m},
                        {"k", s.k},
                        {"lines", s.lines_checked},
                        {"orientation", s.orientation == Orientation::vertical ? "v" : "h"},
                        {"depth", s.depth}});
    nlohmann::json eigs = nlohmann::json::array();
    for (const auto& ev : rec.eigenvalues) eigs.push_back({ev.real(), ev.imag()});
    runs.push_back({{"run", rec.index},
                    {"comparator", rec.comparator},
                    {"diag_error", finite_or_null(rec.diag_error)},
                    {"eigen_error", finite_or_null(rec.eigen_error)},
                    {"success", rec.success},
                    {"failure_reason", rec.failure_reason},
                    {"eigenvalues", std::move(eigs)},
                    {"splits", std::move(splits)},
                    {"efficiency", finite_or_null(rec.efficiency)},
                    {"wall_time_s", rec.wall_time_s}});
  }

  nlohmann::json histograms = nlohmann::json::object();
  for (const auto& h : result.histograms)
    histograms[h.name] = {{"edges", h.edges}, {"counts", h.counts}};

  return {{"config", std::move(config)},
          {"failures", result.failures},
          {"comparator_failures", result.comparator_failures},
          {"runs", std::move(runs)},
          {"histograms", std::move(histograms)}};
}

void write_file_atomic(const std::string& path, const std::string& text) {
  const std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw IoError("cannot open for writing: " + tmp);
    f << text;
    if (!f) throw IoError("write failed: " + tmp);
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw IoError("rename failed for " + path + ": " + ec.message());
}

}  // namespace pencil
