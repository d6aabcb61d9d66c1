#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "config.hpp"
#include "strip_field.hpp"

namespace conedn {

struct Table {
  std::string name;
  std::vector<std::string> columns;
  std::vector<RealVec> data;  // one vector per column

  void write_csv(const std::string& path) const;
};

struct Report {
  std::string subcommand;
  bool pass = false;
  nlohmann::json metrics = nlohmann::json::object();
  std::string config_hash;
  std::vector<Table> tables;
  std::vector<std::pair<std::string, StripField>> fields;

  // {subcommand, pass, metrics, config_hash}
  nlohmann::json summary() const;
  // <dir>/<subcommand>.json, <subcommand>_<table>.csv, <subcommand>_<field>.{csv,bin}
  void write(const std::string& dir) const;
};

const std::vector<std::string>& subcommand_names();

// Throws Error subclasses; a failed numerical check is reported through pass = false.
Report run_subcommand(const std::string& name, const RunConfig& cfg);

}  // namespace conedn
