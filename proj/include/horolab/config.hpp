#pragma once

// Flat key = value configuration files ('#' comments), the run manifest
// embedded at the top of every output file, and helpers that assemble an
// experiment configuration from parsed keys.

#include "horolab/experiment.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace horolab {

inline constexpr const char* kToolVersion = "horolab 0.1.0";

class KeyValues {
  public:
    static KeyValues parse_file(const std::string& path);
    static KeyValues parse_text(const std::string& text);

    bool has(const std::string& key) const { return values_.count(key) != 0; }
    std::string get(const std::string& key, const std::string& fallback) const;
    std::string require(const std::string& key) const;
    double get_double(const std::string& key, double fallback) const;
    long get_long(const std::string& key, long fallback) const;
    const std::map<std::string, std::string>& all() const { return values_; }

  private:
    std::map<std::string, std::string> values_;
};

struct RunManifest {
    std::string subcommand;
    std::string config_path;  // "-" when flags only
    std::vector<std::string> outputs;
    std::uint64_t seed = 0;
    std::string version = kToolVersion;

    // '# key: value' comment lines; deterministic (no timestamps).
    void write_header(std::ostream& os) const;
};

// "lo:hi:step" or a comma-separated list.
std::vector<double> parse_grid(const std::string& text);

// "identity" | "nzat(zre,zim,t)" | "mat(are,aim,bre,bim,cre,cim,dre,dim)"
GroupElement parse_point(const std::string& text);

// "square(x0,y0,w,h)" | "disk(cx,cy,rho)"
BoundaryCurve parse_piece(const std::string& text);

// "const" | "bump(lo,hi)" | "step(lo,hi,edge)"
TestFunction parse_profile(const std::string& text);

// Keys: d, point, piece, T_grid, profile, orders, haar_orders, s1, jobs.
ExperimentConfig parse_experiment_config(const KeyValues& kv);

}  // namespace horolab
