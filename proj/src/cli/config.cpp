#include "mildns/errors.hpp"
#include "mildns/experiment.hpp"
#include "mildns/format.hpp"
#include "mildns/grid.hpp"

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace mildns::cli {

namespace pt = boost::property_tree;

namespace {

const std::map<std::string, std::set<std::string>>& schema() {
    static const std::map<std::string, std::set<std::string>> s{
        {"grid", {"dim", "modes", "length"}},
        {"initial_data", {"kind", "amplitude", "beta", "seed", "width", "mode"}},
        {"solver",
         {"method", "T", "n_steps", "mesh", "grading", "picard_tol", "picard_max_iter", "monitor",
          "converge_stages", "max_derivative_order"}},
        {"norms", {"specs", "data_p"}},
        {"decay", {"enabled", "t_lo", "t_hi", "slack", "trend_threshold"}},
        {"verify", {"suites", "modes", "seeds"}},
        {"output", {"dir", "checkpoint_stride"}},
    };
    return s;
}

const std::set<std::string>& known_suites() {
    static const std::set<std::string> s{"smoothing", "product", "riesz", "embedding", "besov",
                                         "beta"};
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream in(s);
    while (std::getline(in, item, sep)) {
        item = trim(item);
        if (!item.empty()) out.push_back(item);
    }
    return out;
}

std::vector<std::string> words(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

double to_double(const std::string& text, const std::string& path) {
    double v = 0.0;
    const auto* end = text.data() + text.size();
    const auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || p != end || !std::isfinite(v)) {
        throw ConfigError(path, "expected a finite number, got '" + text + "'");
    }
    return v;
}

long long to_integer(const std::string& text, const std::string& path) {
    long long v = 0;
    const auto* end = text.data() + text.size();
    const auto [p, ec] = std::from_chars(text.data(), end, v);
    if (ec != std::errc() || p != end) {
        throw ConfigError(path, "expected an integer, got '" + text + "'");
    }
    return v;
}

int to_int(const std::string& text, const std::string& path) {
    const auto v = to_integer(text, path);
    if (v < -1000000000LL || v > 1000000000LL) throw ConfigError(path, "integer out of range");
    return static_cast<int>(v);
}

bool to_bool(const std::string& text, const std::string& path) {
    if (text == "true") return true;
    if (text == "false") return false;
    throw ConfigError(path, "expected true or false, got '" + text + "'");
}

class Reader {
public:
    explicit Reader(const pt::ptree& tree) : tree_(tree) {}

    std::optional<std::string> get(const std::string& section, const std::string& key) const {
        const auto sec = tree_.get_child_optional(section);
        if (!sec) return std::nullopt;
        const auto v = sec->get_optional<std::string>(pt::ptree::path_type(key, '\0'));
        if (!v) return std::nullopt;
        return trim(*v);
    }

    template <class F>
    void with(const std::string& section, const std::string& key, F&& f) const {
        if (auto v = get(section, key)) f(*v, section + "." + key);
    }

private:
    const pt::ptree& tree_;
};

void check_keys(const pt::ptree& tree) {
    const auto& s = schema();
    for (const auto& [section, body] : tree) {
        if (!body.data().empty()) throw ConfigError(section, "key outside of any section");
        const auto it = s.find(section);
        if (it == s.end()) throw ConfigError(section, "unknown section");
        for (const auto& [key, value] : body) {
            if (!it->second.count(key)) throw ConfigError(section + "." + key, "unknown key");
        }
    }
}

bool power_of_two(int n) { return n > 0 && (n & (n - 1)) == 0; }

void validate(const ExperimentConfig& c) {
    try {
        spectral::GridSpec(c.grid.dim, c.grid.modes, c.grid.length);
    } catch (const Error& e) {
        throw ConfigError("grid", e.what());
    }
    const auto& in = c.initial;
    if (!(in.amplitude >= 0.0)) throw ConfigError("initial_data.amplitude", "must be >= 0");
    if (!(in.width > 0.0)) throw ConfigError("initial_data.width", "must be positive");
    if (in.mode < 1) throw ConfigError("initial_data.mode", "must be >= 1");
    if (3 * in.mode >= c.grid.modes) {
        throw ConfigError("initial_data.mode", "must lie inside the dealiased band (3 mode < N)");
    }
    try {
        c.solver.validate();
    } catch (const Error& e) {
        throw ConfigError("solver", e.what());
    }
    for (std::size_t i = 0; i < c.norm_specs.size(); ++i) {
        const std::string path = "norms.specs[" + std::to_string(i) + "]";
        try {
            c.norm_specs[i].validate(c.grid.dim);
        } catch (const Error& e) {
            throw ConfigError(path, e.what());
        }
        if (c.norm_specs[i].n > c.solver.max_derivative_order) {
            throw ConfigError(path + ".n", "exceeds solver.max_derivative_order");
        }
    }
    const auto& d = c.decay;
    if (d.t_lo && !(*d.t_lo > 0.0)) throw ConfigError("decay.t_lo", "must be positive");
    if (d.t_hi && !(*d.t_hi > 0.0)) throw ConfigError("decay.t_hi", "must be positive");
    if (d.t_lo && d.t_hi && !(*d.t_lo < *d.t_hi)) throw ConfigError("decay", "needs t_lo < t_hi");
    if (!(d.slack >= 0.0)) throw ConfigError("decay.slack", "must be >= 0");
    if (!(d.trend_threshold >= 0.0 && d.trend_threshold < 1.0)) {
        throw ConfigError("decay.trend_threshold", "must lie in [0, 1)");
    }
    for (const auto& s : c.verify.suites) {
        if (!known_suites().count(s)) throw ConfigError("verify.suites", "unknown suite '" + s + "'");
    }
    if (!power_of_two(c.verify.modes) || c.verify.modes < 8) {
        throw ConfigError("verify.modes", "must be a power of two >= 8");
    }
    if (c.verify.seeds < 1) throw ConfigError("verify.seeds", "must be >= 1");
    if (c.output.dir.empty()) throw ConfigError("output.dir", "must not be empty");
    if (c.output.checkpoint_stride < 1) throw ConfigError("output.checkpoint_stride", "must be >= 1");
}

spaces::NormSpec make_norm(double s, double q, const std::string& path) {
    if (!(q > 1.0)) {
        throw ConfigError(path + ".q", "q must lie in the open interval (1, inf), got " +
                                           format_double(q));
    }
    try {
        return spaces::NormSpec(s, q);
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
}

std::string fnv1a(const std::string& text) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

} // namespace

ExperimentConfig parse_config(std::istream& in) {
    pt::ptree tree;
    try {
        pt::read_ini(in, tree);
    } catch (const pt::ini_parser_error& e) {
        throw ConfigError("line " + std::to_string(e.line()), e.message());
    }
    check_keys(tree);
    const Reader r(tree);
    ExperimentConfig c;

    r.with("grid", "dim", [&](const auto& v, const auto& p) { c.grid.dim = to_int(v, p); });
    r.with("grid", "modes", [&](const auto& v, const auto& p) { c.grid.modes = to_int(v, p); });
    r.with("grid", "length", [&](const auto& v, const auto& p) { c.grid.length = to_double(v, p); });

    auto& in0 = c.initial;
    r.with("initial_data", "kind", [&](const auto& v, const auto& p) {
        try {
            in0.kind = spectral::parse_initial_kind(v);
        } catch (const Error& e) {
            throw ConfigError(p, e.what());
        }
    });
    r.with("initial_data", "amplitude", [&](const auto& v, const auto& p) { in0.amplitude = to_double(v, p); });
    r.with("initial_data", "beta", [&](const auto& v, const auto& p) { in0.beta = to_double(v, p); });
    r.with("initial_data", "seed", [&](const auto& v, const auto& p) {
        const auto s = to_integer(v, p);
        if (s < 0) throw ConfigError(p, "must be >= 0");
        in0.seed = static_cast<std::uint64_t>(s);
    });
    r.with("initial_data", "width", [&](const auto& v, const auto& p) { in0.width = to_double(v, p); });
    r.with("initial_data", "mode", [&](const auto& v, const auto& p) { in0.mode = to_int(v, p); });

    auto& s = c.solver;
    r.with("solver", "method", [&](const auto& v, const auto& p) {
        if (v == "picard") c.method = SolveMethod::picard;
        else if (v == "integrate") c.method = SolveMethod::integrate;
        else throw ConfigError(p, "expected picard or integrate, got '" + v + "'");
    });
    r.with("solver", "T", [&](const auto& v, const auto& p) { s.T = to_double(v, p); });
    r.with("solver", "n_steps", [&](const auto& v, const auto& p) { s.n_steps = to_int(v, p); });
    r.with("solver", "mesh", [&](const auto& v, const auto& p) {
        if (v == "uniform") s.mesh = solver::MeshKind::uniform;
        else if (v == "graded") s.mesh = solver::MeshKind::graded;
        else throw ConfigError(p, "expected uniform or graded, got '" + v + "'");
    });
    r.with("solver", "grading", [&](const auto& v, const auto& p) { s.grading = to_double(v, p); });
    r.with("solver", "picard_tol", [&](const auto& v, const auto& p) { s.picard_tol = to_double(v, p); });
    r.with("solver", "picard_max_iter",
           [&](const auto& v, const auto& p) { s.picard_max_iter = to_int(v, p); });
    r.with("solver", "converge_stages",
           [&](const auto& v, const auto& p) { s.converge_stages = to_bool(v, p); });
    r.with("solver", "max_derivative_order",
           [&](const auto& v, const auto& p) { s.max_derivative_order = to_int(v, p); });
    r.with("solver", "monitor", [&](const auto& v, const auto& p) {
        const auto items = split(v, ',');
        for (std::size_t i = 0; i < items.size(); ++i) {
            const std::string path = p + "[" + std::to_string(i) + "]";
            const auto w = words(items[i]);
            if (w.size() != 2) throw ConfigError(path, "expected 's q'");
            s.monitor_specs.push_back(
                make_norm(to_double(w[0], path + ".s"), to_double(w[1], path + ".q"), path));
        }
    });

    double data_p = 2.0;
    r.with("norms", "data_p", [&](const auto& v, const auto& p) {
        data_p = to_double(v, p);
        if (!(data_p > 1.0)) throw ConfigError(p, "data_p must lie in the open interval (1, inf)");
    });
    r.with("norms", "specs", [&](const auto& v, const auto& p) {
        const auto items = split(v, ',');
        for (std::size_t i = 0; i < items.size(); ++i) {
            const std::string path = "norms.specs[" + std::to_string(i) + "]";
            const auto w = words(items[i]);
            if (w.size() != 4) throw ConfigError(path, "expected 'kind s q n'");
            decay::ExponentSpec e;
            try {
                e.kind = decay::parse_quantity_kind(w[0]);
            } catch (const Error& err) {
                throw ConfigError(path + ".kind", err.what());
            }
            e.s = to_double(w[1], path + ".s");
            e.q = to_double(w[2], path + ".q");
            e.n = to_int(w[3], path + ".n");
            (void)make_norm(e.s, e.q, path);
            c.norm_specs.push_back(e);
        }
        (void)p;
    });
    for (auto& e : c.norm_specs) e.data_p = data_p;

    auto& d = c.decay;
    r.with("decay", "enabled", [&](const auto& v, const auto& p) { d.enabled = to_bool(v, p); });
    r.with("decay", "t_lo", [&](const auto& v, const auto& p) {
        if (v != "auto") d.t_lo = to_double(v, p);
    });
    r.with("decay", "t_hi", [&](const auto& v, const auto& p) {
        if (v != "auto") d.t_hi = to_double(v, p);
    });
    r.with("decay", "slack", [&](const auto& v, const auto& p) { d.slack = to_double(v, p); });
    r.with("decay", "trend_threshold",
           [&](const auto& v, const auto& p) { d.trend_threshold = to_double(v, p); });

    r.with("verify", "suites", [&](const auto& v, const auto&) { c.verify.suites = words(v); });
    r.with("verify", "modes", [&](const auto& v, const auto& p) { c.verify.modes = to_int(v, p); });
    r.with("verify", "seeds", [&](const auto& v, const auto& p) { c.verify.seeds = to_int(v, p); });

    r.with("output", "dir", [&](const auto& v, const auto&) { c.output.dir = v; });
    r.with("output", "checkpoint_stride",
           [&](const auto& v, const auto& p) { c.output.checkpoint_stride = to_int(v, p); });

    validate(c);
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(path.string(), "cannot open configuration file");
    return parse_config(in);
}

std::string to_ini(const ExperimentConfig& c) {
    std::ostringstream out;
    const auto num = [](double v) { return format_double(v); };
    out << "[grid]\n"
        << "dim = " << c.grid.dim << '\n'
        << "modes = " << c.grid.modes << '\n'
        << "length = " << num(c.grid.length) << "\n\n";
    out << "[initial_data]\n"
        << "kind = " << spectral::to_string(c.initial.kind) << '\n'
        << "amplitude = " << num(c.initial.amplitude) << '\n'
        << "beta = " << num(c.initial.beta) << '\n'
        << "seed = " << c.initial.seed << '\n'
        << "width = " << num(c.initial.width) << '\n'
        << "mode = " << c.initial.mode << "\n\n";
    const auto& s = c.solver;
    out << "[solver]\n"
        << "method = " << (c.method == SolveMethod::picard ? "picard" : "integrate") << '\n'
        << "T = " << num(s.T) << '\n'
        << "n_steps = " << s.n_steps << '\n'
        << "mesh = " << (s.mesh == solver::MeshKind::uniform ? "uniform" : "graded") << '\n'
        << "grading = " << num(s.grading) << '\n'
        << "picard_tol = " << num(s.picard_tol) << '\n'
        << "picard_max_iter = " << s.picard_max_iter << '\n'
        << "monitor = ";
    for (std::size_t i = 0; i < s.monitor_specs.size(); ++i) {
        if (i) out << ", ";
        out << num(s.monitor_specs[i].s()) << ' ' << num(s.monitor_specs[i].q());
    }
    out << '\n'
        << "converge_stages = " << (s.converge_stages ? "true" : "false") << '\n'
        << "max_derivative_order = " << s.max_derivative_order << "\n\n";
    out << "[norms]\n"
        << "data_p = " << num(c.norm_specs.empty() ? 2.0 : c.norm_specs.front().data_p) << '\n'
        << "specs = ";
    for (std::size_t i = 0; i < c.norm_specs.size(); ++i) {
        const auto& e = c.norm_specs[i];
        if (i) out << ", ";
        out << decay::to_string(e.kind) << ' ' << num(e.s) << ' ' << num(e.q) << ' ' << e.n;
    }
    out << "\n\n";
    out << "[decay]\n"
        << "enabled = " << (c.decay.enabled ? "true" : "false") << '\n'
        << "t_lo = " << (c.decay.t_lo ? num(*c.decay.t_lo) : "auto") << '\n'
        << "t_hi = " << (c.decay.t_hi ? num(*c.decay.t_hi) : "auto") << '\n'
        << "slack = " << num(c.decay.slack) << '\n'
        << "trend_threshold = " << num(c.decay.trend_threshold) << "\n\n";
    out << "[verify]\n"
        << "suites =";
    for (const auto& x : c.verify.suites) out << ' ' << x;
    out << '\n'
        << "modes = " << c.verify.modes << '\n'
        << "seeds = " << c.verify.seeds << "\n\n";
    out << "[output]\n"
        << "dir = " << c.output.dir << '\n'
        << "checkpoint_stride = " << c.output.checkpoint_stride << '\n';
    return out.str();
}

std::string config_hash(const ExperimentConfig& config) { return fnv1a(to_ini(config)); }

} // namespace mildns::cli
