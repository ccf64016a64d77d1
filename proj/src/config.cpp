#include "horolab/config.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace horolab {

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// Parses "name(a,b,...)" into name + numeric arguments.
bool parse_call(const std::string& text, std::string& name, std::vector<double>& args) {
    size_t open = text.find('(');
    if (open == std::string::npos) {
        name = trim(text);
        args.clear();
        return !name.empty();
    }
    size_t close = text.rfind(')');
    if (close == std::string::npos || close < open) return false;
    name = trim(text.substr(0, open));
    args.clear();
    std::string body = text.substr(open + 1, close - open - 1);
    std::stringstream ss(body);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) return false;
        args.push_back(std::stod(item));
    }
    return true;
}

}  // namespace

KeyValues KeyValues::parse_text(const std::string& text) {
    KeyValues kv;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        std::string key = trim(s.substr(0, eq));
        std::string val = trim(s.substr(eq + 1));
        if (key.empty()) throw std::runtime_error("config line " + std::to_string(lineno) +
                                                  ": empty key");
        kv.values_[key] = val;
    }
    return kv;
}

KeyValues KeyValues::parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_text(ss.str());
}

std::string KeyValues::get(const std::string& key, const std::string& fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : it->second;
}

std::string KeyValues::require(const std::string& key) const {
    auto it = values_.find(key);
    if (it == values_.end()) throw std::runtime_error("missing config key: " + key);
    return it->second;
}

double KeyValues::get_double(const std::string& key, double fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : std::stod(it->second);
}

long KeyValues::get_long(const std::string& key, long fallback) const {
    auto it = values_.find(key);
    return it == values_.end() ? fallback : std::stol(it->second);
}

void RunManifest::write_header(std::ostream& os) const {
    os << "# tool: " << version << "\n";
    os << "# subcommand: " << subcommand << "\n";
    os << "# config: " << (config_path.empty() ? "-" : config_path) << "\n";
    os << "# seed: " << seed << "\n";
    for (const auto& out : outputs) os << "# output: " << out << "\n";
}

std::vector<double> parse_grid(const std::string& text) {
    std::vector<double> grid;
    if (text.find(':') != std::string::npos) {
        double lo, hi, step;
        char c1, c2;
        std::stringstream ss(text);
        if (!(ss >> lo >> c1 >> hi >> c2 >> step) || c1 != ':' || c2 != ':' || step <= 0)
            throw std::runtime_error("bad grid spec: " + text);
        for (double v = lo; v <= hi + 1e-12; v += step) grid.push_back(v);
        return grid;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) grid.push_back(std::stod(trim(item)));
    if (grid.empty()) throw std::runtime_error("empty grid spec");
    return grid;
}

GroupElement parse_point(const std::string& text) {
    std::string name;
    std::vector<double> args;
    if (!parse_call(text, name, args)) throw std::runtime_error("bad point spec: " + text);
    if (name == "identity") return GroupElement::identity();
    if (name == "nzat") {
        if (args.size() != 3) throw std::runtime_error("nzat needs (zre,zim,t)");
        return GroupElement::n_z(cplx(args[0], args[1])) * GroupElement::a_t(args[2]);
    }
    if (name == "mat") {
        if (args.size() != 8) throw std::runtime_error("mat needs 8 entries");
        GroupElement g(cplx(args[0], args[1]), cplx(args[2], args[3]), cplx(args[4], args[5]),
                       cplx(args[6], args[7]));
        if (std::abs(g.det() - cplx(1.0)) > 1e-9)
            throw std::runtime_error("matrix determinant must be 1");
        return g;
    }
    throw std::runtime_error("unknown point spec: " + text);
}

BoundaryCurve parse_piece(const std::string& text) {
    std::string name;
    std::vector<double> args;
    if (!parse_call(text, name, args)) throw std::runtime_error("bad piece spec: " + text);
    if (name == "square") {
        if (args.size() == 4) return BoundaryCurve::rectangle(args[2], args[3], cplx(args[0], args[1]));
        if (args.size() == 1) return BoundaryCurve::rectangle(args[0], args[0]);
        throw std::runtime_error("square needs (x0,y0,w,h) or (side)");
    }
    if (name == "disk") {
        if (args.size() == 3) return BoundaryCurve::disk(args[2], cplx(args[0], args[1]));
        if (args.size() == 1) return BoundaryCurve::disk(args[0]);
        throw std::runtime_error("disk needs (cx,cy,rho) or (rho)");
    }
    throw std::runtime_error("unknown piece spec: " + text);
}

TestFunction parse_profile(const std::string& text) {
    std::string name;
    std::vector<double> args;
    if (!parse_call(text, name, args)) throw std::runtime_error("bad profile spec: " + text);
    if (name == "const") return TestFunction::constant();
    if (name == "bump") {
        if (args.size() != 2) throw std::runtime_error("bump needs (lo,hi)");
        return TestFunction::height_bump(args[0], args[1]);
    }
    if (name == "step") {
        if (args.size() != 3) throw std::runtime_error("step needs (lo,hi,edge)");
        return TestFunction::height_indicator_smoothed(args[0], args[1], args[2]);
    }
    throw std::runtime_error("unknown profile spec: " + text);
}

ExperimentConfig parse_experiment_config(const KeyValues& kv) {
    ExperimentConfig cfg;
    cfg.d = static_cast<int>(kv.get_long("d", 1));
    cfg.base_point = parse_point(kv.get("point", "identity"));
    cfg.piece = parse_piece(kv.get("piece", "square(0,0,1,1)"));
    cfg.T_grid = parse_grid(kv.get("T_grid", "0:8:1"));
    cfg.f = parse_profile(kv.get("profile", "bump(2,4)"));
    cfg.order = static_cast<int>(kv.get_long("orders", 64));
    long hz = kv.get_long("haar_orders", 40);
    cfg.haar.z_order = static_cast<int>(hz);
    cfg.haar.r_order = static_cast<int>(hz);
    cfg.s1 = kv.get_double("s1", 1.0);
    cfg.jobs = static_cast<int>(kv.get_long("jobs", 1));
    if (cfg.order < 8) throw std::runtime_error("orders must be >= 8");
    if (!(cfg.s1 >= 1.0 && cfg.s1 < 2.0)) throw std::runtime_error("s1 must lie in [1, 2)");
    for (size_t i = 1; i < cfg.T_grid.size(); ++i)
        if (cfg.T_grid[i] <= cfg.T_grid[i - 1] || cfg.T_grid[i - 1] < 0)
            throw std::runtime_error("T_grid must be increasing and nonnegative");
    return cfg;
}

}  // namespace horolab
