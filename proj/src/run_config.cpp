#include "condfrag/run_config.hpp"

#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>

#include "condfrag/io.hpp"

namespace condfrag {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(const std::string& path, int line, const std::string& msg) {
    throw ConfigError(path + ":" + std::to_string(line) + ": " + msg);
}

double parse_double(const std::string& path, int line, const std::string& v) {
    try {
        size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) fail(path, line, "trailing characters in number '" + v + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(path, line, "expected a number, got '" + v + "'");
    }
}

long long parse_int(const std::string& path, int line, const std::string& v) {
    try {
        size_t used = 0;
        const long long d = std::stoll(v, &used);
        if (used != v.size()) fail(path, line, "trailing characters in integer '" + v + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(path, line, "expected an integer, got '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& path, int line, const std::string& v) {
    try {
        size_t used = 0;
        const unsigned long long d = std::stoull(v, &used);
        if (used != v.size()) fail(path, line, "trailing characters in integer '" + v + "'");
        return d;
    } catch (const ConfigError&) {
        throw;
    } catch (...) {
        fail(path, line, "expected an unsigned integer, got '" + v + "'");
    }
}

bool parse_bool(const std::string& path, int line, const std::string& v) {
    if (v == "true") return true;
    if (v == "false") return false;
    fail(path, line, "expected true or false, got '" + v + "'");
}

} // namespace

RunConfig RunConfig::parse_file(const std::string& path) {
    return parse_text(slurp_file(path), path);
}

RunConfig RunConfig::parse_text(const std::string& text, const std::string& path) {
    RunConfig cfg;
    cfg.config_hash = fnv1a64(text);

    using Setter = std::function<void(int, const std::string&)>;
    std::map<std::string, std::map<std::string, Setter>> schema;
    auto P = path;
    schema["run"]["seed"] = [&](int l, const std::string& v) { cfg.seed = parse_u64(P, l, v); };
    schema["grid"]["n_points"] = [&](int l, const std::string& v) {
        cfg.n_points = static_cast<int>(parse_int(P, l, v));
    };
    schema["grid"]["x_max"] = [&](int l, const std::string& v) { cfg.x_max = parse_double(P, l, v); };
    double x_min_val = 0.0;
    int x_min_line = 0; // validated after the full parse (key order independent)
    schema["grid"]["x_min"] = [&](int l, const std::string& v) {
        x_min_val = parse_double(P, l, v);
        x_min_line = l;
    };
    schema["trap"]["kind"] = [&](int l, const std::string& v) {
        try {
            cfg.trap_kind = potential_kind_from_string(v);
        } catch (const std::exception& e) {
            fail(P, l, e.what());
        }
    };
    schema["trap"]["barrier_height"] = [&](int l, const std::string& v) {
        cfg.barrier_height = parse_double(P, l, v);
    };
    schema["trap"]["barrier_width"] = [&](int l, const std::string& v) {
        cfg.barrier_width = parse_double(P, l, v);
    };
    schema["condensate"]["n_particles"] = [&](int l, const std::string& v) {
        cfg.n_particles = parse_int(P, l, v);
    };
    schema["condensate"]["g"] = [&](int l, const std::string& v) { cfg.g = parse_double(P, l, v); };
    schema["condensate"]["mode"] = [&](int l, const std::string& v) {
        if (v == "single")
            cfg.mode = DetectionMode::single;
        else if (v == "dual")
            cfg.mode = DetectionMode::dual;
        else
            fail(P, l, "mode must be single or dual, got '" + v + "'");
    };
    schema["solver"]["tol_energy"] = [&](int l, const std::string& v) {
        cfg.tol_energy = parse_double(P, l, v);
    };
    schema["solver"]["tol_gradient"] = [&](int l, const std::string& v) {
        cfg.tol_gradient = parse_double(P, l, v);
    };
    schema["solver"]["max_iters"] = [&](int l, const std::string& v) {
        cfg.max_iters = parse_int(P, l, v);
    };
    schema["solver"]["dt_imag"] = [&](int l, const std::string& v) {
        cfg.dt_imag = parse_double(P, l, v);
    };
    schema["sweep"]["b_min"] = [&](int l, const std::string& v) { cfg.b_min = parse_double(P, l, v); };
    schema["sweep"]["b_max"] = [&](int l, const std::string& v) { cfg.b_max = parse_double(P, l, v); };
    schema["sweep"]["b_step"] = [&](int l, const std::string& v) {
        cfg.b_step = parse_double(P, l, v);
    };
    schema["sweep"]["include_hard_wall"] = [&](int l, const std::string& v) {
        cfg.include_hard_wall = parse_bool(P, l, v);
    };
    schema["sweep"]["warm_start"] = [&](int l, const std::string& v) {
        cfg.warm_start = parse_bool(P, l, v);
    };
    schema["sweep"]["crossover_tolerance"] = [&](int l, const std::string& v) {
        cfg.crossover_tolerance = parse_double(P, l, v);
    };
    schema["sweep"]["bracket_lo"] = [&](int l, const std::string& v) {
        cfg.bracket_lo = parse_double(P, l, v);
    };
    schema["sweep"]["bracket_hi"] = [&](int l, const std::string& v) {
        cfg.bracket_hi = parse_double(P, l, v);
    };
    schema["interference"]["n_runs"] = [&](int l, const std::string& v) {
        cfg.n_runs = static_cast<int>(parse_int(P, l, v));
    };
    schema["interference"]["detections"] = [&](int l, const std::string& v) {
        cfg.detections = parse_int(P, l, v);
    };
    schema["interference"]["expansion_time"] = [&](int l, const std::string& v) {
        cfg.expansion_time = parse_double(P, l, v);
    };
    schema["interference"]["overlap_target"] = [&](int l, const std::string& v) {
        cfg.overlap_target = parse_double(P, l, v);
    };
    schema["interference"]["fringe_k"] = [&](int l, const std::string& v) {
        cfg.fringe_k = parse_double(P, l, v);
    };
    schema["interference"]["pad_factor"] = [&](int l, const std::string& v) {
        cfg.pad_factor = static_cast<int>(parse_int(P, l, v));
    };
    schema["interference"]["rayleigh_alpha"] = [&](int l, const std::string& v) {
        cfg.rayleigh_alpha = parse_double(P, l, v);
    };
    schema["interference"]["concentration_threshold"] = [&](int l, const std::string& v) {
        cfg.concentration_threshold = parse_double(P, l, v);
    };
    schema["interference"]["write_positions"] = [&](int l, const std::string& v) {
        cfg.write_positions = parse_bool(P, l, v);
    };

    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        // strip comments
        const auto hash = raw.find('#');
        std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(path, line_no, "malformed section header '" + line + "'");
            section = trim(line.substr(1, line.size() - 2));
            if (schema.find(section) == schema.end())
                fail(path, line_no, "unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            fail(path, line_no, "expected key = value, got '" + line + "'");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty()) fail(path, line_no, "key '" + key + "' outside any [section]");
        auto& keys = schema[section];
        const auto it = keys.find(key);
        if (it == keys.end())
            fail(path, line_no, "unknown key '" + key + "' in [" + section + "]");
        if (value.empty()) fail(path, line_no, "empty value for '" + key + "'");
        it->second(line_no, value);
    }
    if (x_min_line != 0 && x_min_val != -cfg.x_max)
        fail(path, x_min_line, "grid must be symmetric about 0: x_min must equal -x_max");
    return cfg;
}

std::string RunConfig::emit() const {
    std::ostringstream os;
    os << "[run]\n";
    os << "seed = " << seed << "\n";
    os << "\n[grid]\n";
    os << "n_points = " << n_points << "\n";
    os << "x_max = " << fmt_full(x_max) << "\n";
    os << "\n[trap]\n";
    os << "kind = " << to_string(trap_kind) << "\n";
    os << "barrier_height = " << fmt_full(barrier_height) << "\n";
    os << "barrier_width = " << fmt_full(barrier_width) << "\n";
    os << "\n[condensate]\n";
    os << "n_particles = " << n_particles << "\n";
    os << "g = " << fmt_full(g) << "\n";
    os << "mode = " << to_string(mode) << "\n";
    os << "\n[solver]\n";
    os << "tol_energy = " << fmt_full(tol_energy) << "\n";
    os << "tol_gradient = " << fmt_full(tol_gradient) << "\n";
    os << "max_iters = " << max_iters << "\n";
    os << "dt_imag = " << fmt_full(dt_imag) << "\n";
    os << "\n[sweep]\n";
    os << "b_min = " << fmt_full(b_min) << "\n";
    os << "b_max = " << fmt_full(b_max) << "\n";
    os << "b_step = " << fmt_full(b_step) << "\n";
    os << "include_hard_wall = " << (include_hard_wall ? "true" : "false") << "\n";
    os << "warm_start = " << (warm_start ? "true" : "false") << "\n";
    os << "crossover_tolerance = " << fmt_full(crossover_tolerance) << "\n";
    os << "bracket_lo = " << fmt_full(bracket_lo) << "\n";
    os << "bracket_hi = " << fmt_full(bracket_hi) << "\n";
    os << "\n[interference]\n";
    os << "n_runs = " << n_runs << "\n";
    os << "detections = " << detections << "\n";
    os << "expansion_time = " << fmt_full(expansion_time) << "\n";
    os << "overlap_target = " << fmt_full(overlap_target) << "\n";
    os << "fringe_k = " << fmt_full(fringe_k) << "\n";
    os << "pad_factor = " << pad_factor << "\n";
    os << "rayleigh_alpha = " << fmt_full(rayleigh_alpha) << "\n";
    os << "concentration_threshold = " << fmt_full(concentration_threshold) << "\n";
    os << "write_positions = " << (write_positions ? "true" : "false") << "\n";
    return os.str();
}

Grid RunConfig::make_grid() const {
    try {
        return Grid::symmetric(n_points, x_max);
    } catch (const std::exception& e) {
        throw ConfigError(std::string("[grid]: ") + e.what());
    }
}

PotentialSpec RunConfig::make_potential_spec() const {
    PotentialSpec spec;
    spec.kind = trap_kind;
    spec.barrier_height = barrier_height;
    spec.barrier_width = barrier_width;
    try {
        spec.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("[trap]: ") + e.what());
    }
    return spec;
}

CondensateConfig RunConfig::make_condensate() const {
    CondensateConfig c;
    c.n_particles = n_particles;
    c.g = g;
    if (mode == DetectionMode::dual) {
        if (n_particles % 2 != 0)
            throw ConfigError("[condensate]: mode = dual requires an even n_particles "
                              "(N1 = N2 = N/2)");
        c.n1 = n_particles / 2;
        c.n2 = n_particles / 2;
    } else {
        c.n1 = n_particles;
        c.n2 = 0;
    }
    c.tol_energy = tol_energy;
    c.tol_gradient = tol_gradient;
    c.max_iters = max_iters;
    c.dt_imag = dt_imag;
    try {
        c.validate();
    } catch (const std::exception& e) {
        throw ConfigError(std::string("[condensate]/[solver]: ") + e.what());
    }
    return c;
}

void RunConfig::validate_common() const {
    make_grid();
    make_potential_spec();
    make_condensate();
}

bool semantically_equal(const RunConfig& a, const RunConfig& b) {
    return a.seed == b.seed && a.n_points == b.n_points && a.x_max == b.x_max &&
           a.trap_kind == b.trap_kind && a.barrier_height == b.barrier_height &&
           a.barrier_width == b.barrier_width && a.n_particles == b.n_particles && a.g == b.g &&
           a.mode == b.mode && a.tol_energy == b.tol_energy && a.tol_gradient == b.tol_gradient &&
           a.max_iters == b.max_iters && a.dt_imag == b.dt_imag && a.b_min == b.b_min &&
           a.b_max == b.b_max && a.b_step == b.b_step &&
           a.include_hard_wall == b.include_hard_wall && a.warm_start == b.warm_start &&
           a.crossover_tolerance == b.crossover_tolerance && a.bracket_lo == b.bracket_lo &&
           a.bracket_hi == b.bracket_hi && a.n_runs == b.n_runs && a.detections == b.detections &&
           a.expansion_time == b.expansion_time && a.overlap_target == b.overlap_target &&
           a.fringe_k == b.fringe_k && a.pad_factor == b.pad_factor &&
           a.rayleigh_alpha == b.rayleigh_alpha &&
           a.concentration_threshold == b.concentration_threshold &&
           a.write_positions == b.write_positions;
}

} // namespace condfrag
