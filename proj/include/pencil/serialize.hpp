#pragma once

#include <pencil/grid.hpp>
#include <pencil/harness.hpp>
#include <pencil/pseudospectra.hpp>

#include <json.hpp>

namespace pencil {

nlohmann::json grid_to_json(const Grid& g);
Grid grid_from_json(const nlohmann::json& j);

nlohmann::json shatter_report_to_json(const ShatterReport& report);

nlohmann::json experiment_to_json(const ExperimentResult& result);

/// Write text to path atomically (temp file + rename).
void write_file_atomic(const std::string& path, const std::string& text);

}  // namespace pencil
