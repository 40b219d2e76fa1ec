#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>
#include <cmath>
#include <set>
#include <sstream>

#include "blowup/cli.hpp"

namespace blowup::cli {

namespace pt = boost::property_tree;

namespace {

const std::set<std::string> kCommands = {"gen-data", "check", "burgers", "simulate", "verify-theorem"};
const std::set<std::string> kTheorems = {"thm2.2", "prop2.3", "thm2.5", "prop2.7"};
const std::set<std::string> kKinds = {"constant", "compressive_1d", "expansive_linear", "sideris_pulse",
                                      "example1", "example2", "example3", "file"};

// Wraps the tree so every key read is recorded; leftovers are typos.
class Reader {
public:
    explicit Reader(const pt::ptree& t) : t_(t) {}

    std::optional<std::string> raw(const std::string& key) {
        seen_.insert(key);
        auto v = t_.get_optional<std::string>(pt::ptree::path_type(key, '.'));
        if (!v) return std::nullopt;
        return trim(*v);
    }

    void num(const std::string& key, double& out) {
        if (auto v = raw(key)) out = parse_double(key, *v);
    }
    void num(const std::string& key, int& out) {
        if (auto v = raw(key)) {
            const double d = parse_double(key, *v);
            if (d != std::floor(d)) throw ConfigError(key + ": expected an integer, got '" + *v + "'");
            out = static_cast<int>(d);
        }
    }
    void num(const std::string& key, std::size_t& out) {
        int v = -1;
        num(key, v);
        if (v >= 0) out = static_cast<std::size_t>(v);
        else if (raw(key)) throw ConfigError(key + ": must be >= 0");
    }
    void flag(const std::string& key, bool& out) {
        if (auto v = raw(key)) {
            if (*v == "true" || *v == "1" || *v == "yes") out = true;
            else if (*v == "false" || *v == "0" || *v == "no") out = false;
            else throw ConfigError(key + ": expected true/false, got '" + *v + "'");
        }
    }
    void text(const std::string& key, std::string& out) {
        if (auto v = raw(key)) out = *v;
    }
    template <typename T>
    void list(const std::string& key, std::array<T, 3>& out) {
        auto v = raw(key);
        if (!v) return;
        std::vector<double> vals;
        std::stringstream ss(*v);
        std::string item;
        while (std::getline(ss, item, ',')) vals.push_back(parse_double(key, trim(item)));
        if (vals.empty() || vals.size() > 3) throw ConfigError(key + ": expected 1 to 3 comma-separated values");
        for (int a = 0; a < 3; ++a) out[a] = static_cast<T>(vals[std::min<std::size_t>(a, vals.size() - 1)]);
    }

    void reject_unknown() const {
        for (const auto& [section, body] : t_) {
            if (body.empty()) throw ConfigError("key outside any section: " + section);
            for (const auto& [key, _] : body)
                if (!seen_.count(section + "." + key)) throw ConfigError("unknown config key: " + section + "." + key);
        }
    }

    bool has_section(const std::string& s) const { return t_.find(s) != t_.not_found(); }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        const auto e = s.find_last_not_of(" \t\r\n");
        return b == std::string::npos ? "" : s.substr(b, e - b + 1);
    }
    static double parse_double(const std::string& key, const std::string& v) {
        try {
            std::size_t pos = 0;
            const double d = std::stod(v, &pos);
            if (pos != v.size()) throw std::invalid_argument(v);
            return d;
        } catch (const std::exception&) {
            throw ConfigError(key + ": not a number: '" + v + "'");
        }
    }

    const pt::ptree& t_;
    std::set<std::string> seen_;
};

}  // namespace

ExperimentConfig load_config(const std::string& command, const std::optional<std::filesystem::path>& file,
                             const std::vector<std::string>& overrides) {
    if (!kCommands.count(command)) throw ConfigError("unknown command: " + command);
    pt::ptree tree;
    if (file) {
        if (!std::filesystem::exists(*file)) throw ConfigError("config file not found: " + file->string());
        try {
            pt::read_ini(file->string(), tree);
        } catch (const pt::ini_parser_error& e) {
            throw ConfigError(std::string("cannot parse config: ") + e.what());
        }
    }
    for (const auto& o : overrides) {
        const auto eq = o.find('=');
        const auto dot = o.find('.');
        if (eq == std::string::npos || dot == std::string::npos || dot > eq)
            throw ConfigError("override must look like section.key=value: " + o);
        tree.put(pt::ptree::path_type(o.substr(0, eq), '.'), o.substr(eq + 1));
    }

    ExperimentConfig c;
    c.command = command;
    Reader r(tree);

    r.num("grid.dim", c.grid.dim);
    r.list("grid.n", c.grid.n);
    r.list("grid.lo", c.grid.lo);
    r.list("grid.hi", c.grid.hi);
    r.flag("grid.periodic", c.grid.periodic);

    auto& f = c.data.family;
    r.text("data.kind", c.data.kind);
    r.num("data.gamma", f.gamma);
    r.num("data.rho_bar", f.rho_bar);
    r.num("data.lambda0", f.lambda0);
    r.num("data.plateau_inner", f.plateau.inner);
    r.num("data.plateau_outer", f.plateau.outer);
    r.num("data.rho_amplitude", f.rho_amplitude);
    r.num("data.rho_width", f.rho_width);
    r.num("data.support_radius", f.support_radius);
    r.num("data.margin", f.margin);
    r.num("data.R", c.data.R);
    r.num("data.n", c.data.n);
    r.num("data.lambda", c.data.lambda);
    r.num("data.density_amplitude", c.data.density_amplitude);
    r.num("data.density_width", c.data.density_width);
    r.text("data.path", c.data.path);

    auto& s = c.solver;
    r.num("solver.cfl", s.cfl);
    r.num("solver.t_end", s.t_end);
    r.text("solver.flux", s.flux);
    r.text("solver.time_integrator", s.time_integrator);
    std::string rec = "none";
    r.text("solver.reconstruction", rec);
    if (rec == "none") s.reconstruction = Reconstruction::none;
    else if (rec == "muscl") s.reconstruction = Reconstruction::muscl;
    else throw ConfigError("solver.reconstruction must be none or muscl");
    r.num("solver.gradient_blowup_threshold", s.gradient_blowup_threshold);
    r.num("solver.snapshot_stride", s.snapshot_stride);
    r.num("solver.max_steps", s.max_steps);
    r.num("solver.diagnostic_density_floor", s.diagnostic_density_floor);

    double tmp = NAN;
    r.num("criteria.rho_bar", tmp);
    if (!std::isnan(tmp)) c.criteria_rho_bar = tmp;
    tmp = NAN;
    r.num("criteria.R", tmp);
    if (!std::isnan(tmp)) c.criteria_R = tmp;
    r.num("criteria.m", c.criteria.m);
    r.num("criteria.alpha", c.criteria.alpha);
    r.num("criteria.density_epsilon", c.criteria.density_epsilon);

    r.text("theorem.name", c.theorem.name);
    r.num("theorem.tolerance", c.theorem.tolerance);
    r.num("theorem.slope_max", c.theorem.slope_max);
    r.num("theorem.s", c.theorem.s);
    r.num("theorem.r", c.theorem.r);

    std::string dir = c.output.dir.string(), fmt = "bin";
    r.text("output.dir", dir);
    c.output.dir = dir;
    r.text("output.format", fmt);
    if (fmt == "bin" || fmt == "binary") c.output.format = SnapshotFormat::binary;
    else if (fmt == "csv") c.output.format = SnapshotFormat::csv;
    else throw ConfigError("output.format must be bin or csv");
    r.flag("output.snapshots", c.output.snapshots);

    r.num("burgers.t", c.burgers_t);

    r.reject_unknown();

    // consistency
    if (c.grid.dim < 1 || c.grid.dim > 3) throw ConfigError("grid.dim must be 1, 2 or 3");
    if (!kKinds.count(c.data.kind)) throw ConfigError("unknown data.kind: " + c.data.kind);
    if (c.data.kind == "file") {
        if (c.data.path.empty()) throw ConfigError("data.kind = file needs data.path");
        if (!std::filesystem::exists(c.data.path)) throw ConfigError("data.path not found: " + c.data.path);
    }
    if (command == "verify-theorem") {
        if (!kTheorems.count(c.theorem.name))
            throw ConfigError("verify-theorem needs theorem.name in {thm2.2, prop2.3, thm2.5, prop2.7}");
    } else if (r.has_section("theorem")) {
        throw ConfigError("theorem settings are only valid with verify-theorem");
    }
    try {
        c.solver.validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return c;
}

nlohmann::json to_json(const ExperimentConfig& c) {
    const int d = c.grid.dim;
    auto head = [d](const auto& a) { return std::vector<double>(a.begin(), a.begin() + d); };
    const auto& f = c.data.family;
    nlohmann::json j;
    j["command"] = c.command;
    j["grid"] = {{"dim", d},
                 {"n", head(c.grid.n)},
                 {"lo", head(c.grid.lo)},
                 {"hi", head(c.grid.hi)},
                 {"periodic", c.grid.periodic}};
    j["data"] = {{"kind", c.data.kind},
                 {"gamma", f.gamma},
                 {"rho_bar", f.rho_bar},
                 {"lambda0", f.lambda0},
                 {"plateau_inner", f.plateau.inner},
                 {"plateau_outer", f.plateau.outer},
                 {"rho_amplitude", f.rho_amplitude},
                 {"rho_width", f.rho_width},
                 {"support_radius", f.support_radius},
                 {"margin", f.margin},
                 {"R", c.data.R},
                 {"n", c.data.n},
                 {"lambda", c.data.lambda},
                 {"density_amplitude", c.data.density_amplitude},
                 {"density_width", c.data.density_width},
                 {"path", c.data.path}};
    const auto& s = c.solver;
    j["solver"] = {{"cfl", s.cfl},
                   {"t_end", s.t_end},
                   {"flux", s.flux},
                   {"time_integrator", s.time_integrator},
                   {"reconstruction", s.reconstruction == Reconstruction::muscl ? "muscl" : "none"},
                   {"gradient_blowup_threshold", s.gradient_blowup_threshold},
                   {"snapshot_stride", s.snapshot_stride},
                   {"max_steps", s.max_steps},
                   {"diagnostic_density_floor", s.diagnostic_density_floor}};
    j["criteria"] = {{"rho_bar", c.criteria_rho_bar ? nlohmann::json(*c.criteria_rho_bar) : nlohmann::json("from data")},
                     {"R", c.criteria_R ? nlohmann::json(*c.criteria_R) : nlohmann::json("from data")},
                     {"m", c.criteria.m},
                     {"alpha", c.criteria.alpha},
                     {"density_epsilon", c.criteria.density_epsilon}};
    if (c.command == "verify-theorem")
        j["theorem"] = {{"name", c.theorem.name},
                        {"tolerance", c.theorem.tolerance},
                        {"slope_max", c.theorem.slope_max},
                        {"s", c.theorem.s},
                        {"r", c.theorem.r}};
    j["output"] = {{"format", c.output.format == SnapshotFormat::csv ? "csv" : "bin"},
                   {"snapshots", c.output.snapshots}};
    j["burgers"] = {{"t", c.burgers_t}};
    return j;
}

}  // namespace blowup::cli
