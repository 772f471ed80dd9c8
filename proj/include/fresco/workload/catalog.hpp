#pragma once

#include <random>
#include <string>

#include "fresco/workload/app.hpp"

namespace fresco::workload {

// Catalog DAG with mid-range instruction/payload values; fully deterministic.
AppDag build_app(AppName name);

// Catalog DAG with instruction counts and payloads drawn uniformly from each
// task kind's published ranges.
AppDag instantiate_app(AppName name, std::mt19937_64& rng);

// Structured-text application override: tasks, kinds, ram, offloadable,
// optional explicit edges (default: pipeline chain), deadline, per-tier
// constraint table.
AppDag parse_app_override(const std::string& json_text);
AppDag load_app_override(const std::string& path);

} // namespace fresco::workload
