#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "sics/bounds.hpp"
#include "sics/model.hpp"
#include "sics/partition.hpp"
#include "sics/solver.hpp"
#include "sics/width.hpp"

namespace sics {

// Instance file: {n, s, m, seed_signal, seed_side, seed_ensemble, M,
// variance_mode, magnitude_law, x_star, w[, side_spec]}. The ensemble is
// regenerated from (seed_ensemble, M, n, variance_mode) on load.
nlohmann::json instance_to_json(const ProblemInstance& instance);
// Throws InvalidArgument naming the offending field.
ProblemInstance instance_from_json(const nlohmann::json& doc);

void save_instance(const ProblemInstance& instance, const std::filesystem::path& path);
ProblemInstance load_instance(const std::filesystem::path& path);

nlohmann::json to_json(const SideInfoProfile& profile);
nlohmann::json to_json(const BoundReport& report);
nlohmann::json to_json(const RecoveryResult& result);
nlohmann::json to_json(const WidthEstimate& estimate);

}  // namespace sics
