#include "ginls/lab/config.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ginls {
namespace lab {

namespace {

std::string trim(const std::string& s) {
    auto a = s.find_first_not_of(" \t\r\n");
    if (a == std::string::npos) return {};
    auto b = s.find_last_not_of(" \t\r\n");
    return s.substr(a, b - a + 1);
}

bool parse_double(const std::string& v, double& out) {
    try {
        std::size_t pos = 0;
        out = std::stod(v, &pos);
        return pos == v.size();
    } catch (...) {
        return false;
    }
}

bool parse_long(const std::string& v, long& out) {
    try {
        std::size_t pos = 0;
        out = std::stol(v, &pos);
        return pos == v.size();
    } catch (...) {
        return false;
    }
}

bool parse_bool(const std::string& v, bool& out) {
    if (v == "true" || v == "1" || v == "on" || v == "yes") { out = true; return true; }
    if (v == "false" || v == "0" || v == "off" || v == "no") { out = false; return true; }
    return false;
}

template <typename Parse>
std::vector<double> parse_list(const std::string& v, bool& ok, Parse parse) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    ok = true;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (item.empty()) continue;
        double d;
        if (!parse(item, d)) { ok = false; return {}; }
        out.push_back(d);
    }
    if (out.empty()) ok = false;
    return out;
}

}  // namespace

std::map<std::string, std::string> parse_config_text(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::istringstream in(text);
    std::string line, section;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        auto pos = line.find('=');
        if (pos == std::string::npos) continue;
        const std::string key = trim(line.substr(0, pos));
        const std::string value = trim(line.substr(pos + 1));
        kv[section.empty() ? key : section + "." + key] = value;
    }
    return kv;
}

std::map<std::string, std::string> load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

void apply_override(std::map<std::string, std::string>& kv, const std::string& assignment,
                    std::vector<std::string>& errors) {
    auto pos = assignment.find('=');
    if (pos == std::string::npos) {
        errors.push_back("override '" + assignment + "': expected key=value");
        return;
    }
    kv[trim(assignment.substr(0, pos))] = trim(assignment.substr(pos + 1));
}

RunConfig build_config(const std::map<std::string, std::string>& kv,
                       std::vector<std::string>& errors) {
    RunConfig cfg;
    auto bad = [&](const std::string& key, const std::string& why) {
        errors.push_back("config field '" + key + "': " + why);
    };

    for (const auto& [key, value] : kv) {
        double d;
        long l;
        bool b;
        if (key == "grid.n") {
            if (parse_long(value, l) && l > 0) cfg.n = static_cast<std::size_t>(l);
            else bad(key, "expected positive integer, got '" + value + "'");
        } else if (key == "grid.length") {
            if (parse_double(value, d) && d > 0) cfg.length = d;
            else bad(key, "expected positive real, got '" + value + "'");
        } else if (key == "params.alpha") {
            if (parse_double(value, d)) cfg.params.alpha = d;
            else bad(key, "expected real, got '" + value + "'");
        } else if (key == "params.beta") {
            if (parse_double(value, d)) cfg.params.beta = d;
            else bad(key, "expected real, got '" + value + "'");
        } else if (key == "params.delta") {
            if (parse_double(value, d) && d > 0) cfg.params.delta = d;
            else bad(key, "expected positive real, got '" + value + "'");
        } else if (key == "params.rho") {
            if (parse_double(value, d) && d > 0) cfg.params.rho = d;
            else bad(key, "expected positive real, got '" + value + "'");
        } else if (key == "params.moll_level") {
            if (value == "none" || value == "unmollified") cfg.params.moll_level.reset();
            else if (parse_long(value, l) && l >= 0) cfg.params.moll_level = static_cast<int>(l);
            else bad(key, "expected nonnegative integer or 'none', got '" + value + "'");
        } else if (key == "params.dealias") {
            if (parse_bool(value, b)) cfg.params.dealias = b;
            else bad(key, "expected boolean, got '" + value + "'");
        } else if (key == "params.operator") {
            if (value == "tdelta") cfg.params.nonlocal = NonlocalKind::TDelta;
            else if (value == "hilbert") cfg.params.nonlocal = NonlocalKind::Hilbert;
            else bad(key, "expected 'tdelta' or 'hilbert', got '" + value + "'");
        } else if (key == "initial.kind") {
            static const char* kinds[] = {"constant", "plane_wave", "grey_pair",
                                          "bump_perturbation", "random_band"};
            if (std::find_if(std::begin(kinds), std::end(kinds),
                             [&](const char* k) { return value == k; }) != std::end(kinds))
                cfg.initial.kind = value;
            else bad(key, "unknown initial data kind '" + value + "'");
        } else if (key == "initial.mode") {
            if (parse_long(value, l)) cfg.initial.mode = static_cast<int>(l);
            else bad(key, "expected integer, got '" + value + "'");
        } else if (key == "initial.theta") {
            if (parse_double(value, d) && d > 0 && d < M_PI / 2) cfg.initial.theta = d;
            else bad(key, "expected real in (0, pi/2), got '" + value + "'");
        } else if (key == "initial.x0") {
            if (parse_double(value, d) && d >= 0) cfg.initial.x0 = d;
            else bad(key, "expected nonnegative real, got '" + value + "'");
        } else if (key == "initial.amp") {
            if (parse_double(value, d)) cfg.initial.amp = d;
            else bad(key, "expected real, got '" + value + "'");
        } else if (key == "initial.width") {
            if (parse_double(value, d) && d > 0) cfg.initial.width = d;
            else bad(key, "expected positive real, got '" + value + "'");
        } else if (key == "initial.band") {
            if (parse_long(value, l) && l >= 1) cfg.initial.band = static_cast<int>(l);
            else bad(key, "expected integer >= 1, got '" + value + "'");
        } else if (key == "run.T") {
            if (parse_double(value, d) && d > 0) cfg.T = d;
            else bad(key, "expected positive real, got '" + value + "'");
        } else if (key == "run.dt") {
            if (value == "auto") cfg.dt_auto = true;
            else if (parse_double(value, d) && d > 0) { cfg.dt = d; cfg.dt_auto = false; }
            else bad(key, "expected positive real or 'auto', got '" + value + "'");
        } else if (key == "run.record_every") {
            if (parse_long(value, l) && l >= 1) cfg.record_every = static_cast<int>(l);
            else bad(key, "expected integer >= 1, got '" + value + "'");
        } else if (key == "run.seam_tol") {
            if (parse_double(value, d) && d > 0) cfg.seam_tol = d;
            else bad(key, "expected positive real, got '" + value + "'");
        } else if (key == "run.seed") {
            if (parse_long(value, l) && l >= 0) cfg.seed = static_cast<std::uint64_t>(l);
            else bad(key, "expected nonnegative integer, got '" + value + "'");
        } else if (key == "run.threads") {
            if (parse_long(value, l) && l >= 0) cfg.threads = static_cast<int>(l);
            else bad(key, "expected nonnegative integer, got '" + value + "'");
        } else if (key == "experiment.levels") {
            bool ok;
            auto v = parse_list(value, ok, [](const std::string& s, double& o) {
                long li;
                if (!parse_long(s, li) || li < 0) return false;
                o = static_cast<double>(li);
                return true;
            });
            if (ok) {
                cfg.levels.clear();
                for (double x : v) cfg.levels.push_back(static_cast<int>(x));
            } else bad(key, "expected comma-separated nonnegative integers");
        } else if (key == "experiment.lmax") {
            if (parse_long(value, l) && l >= 0) cfg.lmax = static_cast<int>(l);
            else bad(key, "expected nonnegative integer, got '" + value + "'");
        } else if (key == "experiment.deltas") {
            bool ok;
            auto v = parse_list(value, ok, [](const std::string& s, double& o) {
                return parse_double(s, o) && o > 0;
            });
            if (ok) cfg.deltas = v;
            else bad(key, "expected comma-separated positive reals");
        } else if (key == "experiment.perturbations") {
            bool ok;
            auto v = parse_list(value, ok, [](const std::string& s, double& o) {
                return parse_double(s, o) && o > 0;
            });
            if (ok) cfg.perturbations = v;
            else bad(key, "expected comma-separated positive reals");
        } else if (key == "experiment.grid_double_check") {
            if (parse_bool(value, b)) cfg.grid_double_check = b;
            else bad(key, "expected boolean, got '" + value + "'");
        } else if (key == "experiment.drift_tol") {
            if (parse_double(value, d) && d > 0) cfg.drift_tol = d;
            else bad(key, "expected positive real, got '" + value + "'");
        } else {
            bad(key, "unknown field");
        }
    }
    return cfg;
}

std::vector<std::string> validate_config(const RunConfig& cfg) {
    std::vector<std::string> errors;
    if (cfg.n < 8 || (cfg.n & (cfg.n - 1)) != 0)
        errors.push_back("grid.n: must be a power of two with n >= 8");
    if (!(cfg.length > 0)) errors.push_back("grid.length: must be positive");
    try {
        cfg.params.validate();
    } catch (const std::exception& e) {
        errors.push_back(std::string("params: ") + e.what());
    }
    if (!(cfg.T > 0)) errors.push_back("run.T: must be positive");
    if (!cfg.dt_auto && !(cfg.dt > 0)) errors.push_back("run.dt: must be positive or 'auto'");
    if (cfg.record_every < 1) errors.push_back("run.record_every: must be >= 1");
    if (cfg.initial.kind == "random_band" &&
        static_cast<std::size_t>(cfg.initial.band) >= cfg.n / 2)
        errors.push_back("initial.band: exceeds grid modes");
    if (cfg.initial.kind == "grey_pair") {
        const double x0 = cfg.initial.x0 > 0 ? cfg.initial.x0 : cfg.length / 4;
        if (x0 >= 0.45 * cfg.length)
            errors.push_back("initial.x0: dip would sit inside the seam region");
    }
    return errors;
}

std::string config_echo(const RunConfig& cfg) {
    std::ostringstream os;
    os.precision(17);
    os << "n=" << cfg.n << " length=" << cfg.length << " alpha=" << cfg.params.alpha
       << " beta=" << cfg.params.beta << " delta=" << cfg.params.delta
       << " rho=" << cfg.params.rho << " moll=";
    if (cfg.params.moll_level) os << *cfg.params.moll_level;
    else os << "none";
    os << " dealias=" << (cfg.params.dealias ? 1 : 0) << " operator="
       << (cfg.params.nonlocal == NonlocalKind::TDelta ? "tdelta" : "hilbert")
       << " initial=" << cfg.initial.kind;
    if (cfg.initial.kind == "plane_wave") os << " mode=" << cfg.initial.mode;
    if (cfg.initial.kind == "grey_pair")
        os << " theta=" << cfg.initial.theta << " x0=" << cfg.initial.x0;
    if (cfg.initial.kind == "bump_perturbation")
        os << " amp=" << cfg.initial.amp << " width=" << cfg.initial.width;
    if (cfg.initial.kind == "random_band")
        os << " amp=" << cfg.initial.amp << " band=" << cfg.initial.band;
    os << " T=" << cfg.T << " dt=" << (cfg.dt_auto ? 0.0 : cfg.dt)
       << " record_every=" << cfg.record_every << " seed=" << cfg.seed;
    return os.str();
}

FieldState build_initial_data(const RunConfig& cfg, const GridPtr& grid) {
    const auto& in = cfg.initial;
    const double rho = cfg.params.rho;
    if (in.kind == "constant") return initial_constant(grid, rho);
    if (in.kind == "plane_wave") return initial_plane_wave(grid, rho, in.mode);
    if (in.kind == "grey_pair") {
        const double x0 = in.x0 > 0 ? in.x0 : grid->length() / 4;
        return initial_grey_pair(grid, rho, in.theta, x0);
    }
    if (in.kind == "bump_perturbation") return initial_bump(grid, rho, in.amp, in.width);
    if (in.kind == "random_band")
        return initial_random_band(grid, rho, cfg.seed, in.band, in.amp);
    throw std::invalid_argument("unknown initial data kind: " + in.kind);
}

}  // namespace lab
}  // namespace ginls
