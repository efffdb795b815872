#pragma once

#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "cmpol/experiments.hpp"
#include "cmpol/scales.hpp"

namespace cmpol {

// Fully resolved run configuration. `raw` keeps every input exactly as
// parsed (file order lost, last duplicate wins) for provenance echoing.
struct ResolvedConfig {
    PhysicalParams params;
    ScenarioOptions options;
    std::string scenario = "fig3a";
    std::string out_dir = "out";
    std::map<std::string, std::string> raw;
    std::vector<std::string> defaulted;  // registry keys not set by the user
};

// Parses a flat key = value file ('#' comments, [section] lines tolerated and
// ignored) and applies `overrides` ("key=value") on top. An empty path means
// defaults only. Frequencies take hz/khz/mhz/ghz suffixes and are ordinary
// (converted to angular internally); lengths take nm/um/mm/m. Unknown keys,
// malformed values, and out-of-range values throw ConfigError. Notices about
// defaulted keys are printed to `notices`.
ResolvedConfig resolve_config(const std::string& path,
                              const std::vector<std::string>& overrides,
                              std::ostream& notices);

// One documentation line per known key: "name  default  description".
std::vector<std::string> config_key_docs();

}  // namespace cmpol
