// SPDX-License-Identifier: Apache-2.0
#include "risim/config.hpp"

#include "risim/errors.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

namespace risim {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == ' ' || c == '\t' || c == ',') {
            if (!cur.empty()) out.push_back(std::move(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    if (!cur.empty()) out.push_back(std::move(cur));
    return out;
}

double parse_double(const std::string& key, const std::string& v) {
    if (v == "inf" || v == "+inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("config: bad numeric value for '" + key + "': " + v);
    }
}

std::uint64_t parse_uint(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const unsigned long long u = std::stoull(v, &pos);
        if (pos != v.size() || v.front() == '-') throw std::invalid_argument(v);
        return u;
    } catch (const std::exception&) {
        throw ConfigError("config: bad integer value for '" + key + "': " + v);
    }
}

bool parse_bool(const std::string& key, const std::string& v) {
    if (v == "true" || v == "1" || v == "yes") return true;
    if (v == "false" || v == "0" || v == "no") return false;
    throw ConfigError("config: bad boolean value for '" + key + "': " + v);
}

Vec3 parse_vec3(const std::string& key, const std::string& v) {
    const auto parts = split_list(v);
    if (parts.size() != 3) throw ConfigError("config: '" + key + "' needs three coordinates");
    return Vec3{parse_double(key, parts[0]), parse_double(key, parts[1]),
                parse_double(key, parts[2])};
}

std::vector<double> parse_double_list(const std::string& key, const std::string& v) {
    std::vector<double> out;
    for (const auto& p : split_list(v)) out.push_back(parse_double(key, p));
    return out;
}

std::vector<std::size_t> parse_uint_list(const std::string& key, const std::string& v) {
    std::vector<std::size_t> out;
    for (const auto& p : split_list(v)) out.push_back(parse_uint(key, p));
    return out;
}

CsiMode parse_estimator(const std::string& v) {
    if (v == "genie") return CsiMode::genie;
    if (v == "ls") return CsiMode::ls;
    if (v == "mmse") return CsiMode::mmse;
    throw ConfigError("config: unknown estimator '" + v + "' (genie|ls|mmse)");
}

RunMode parse_mode(const std::string& v) {
    if (v == "standard") return RunMode::standard;
    if (v == "theory") return RunMode::theory;
    if (v == "complexity") return RunMode::complexity;
    throw ConfigError("config: unknown mode '" + v + "' (standard|theory|complexity)");
}

void apply_key(ExperimentConfig& cfg, const std::string& section, const std::string& key,
               const std::string& value) {
    const std::string where = section + "." + key;
    if (section == "geometry") {
        if (key == "bs") cfg.geometry.bs = parse_vec3(where, value);
        else if (key == "ris") cfg.geometry.ris = parse_vec3(where, value);
        else if (key == "ue") cfg.geometry.ue = parse_vec3(where, value);
        else if (key == "bs_spacing") cfg.geometry.bs_spacing = parse_double(where, value);
        else if (key == "ris_spacing") cfg.geometry.ris_spacing = parse_double(where, value);
        else if (key == "n_x") cfg.geometry.n_x = parse_uint(where, value);
        else if (key == "planar_distances") cfg.planar_distances = parse_bool(where, value);
        else throw ConfigError("config: unknown key '" + where + "'");
    } else if (section == "path_loss") {
        if (key == "c0_db") cfg.path_loss.c0 = db_to_linear(parse_double(where, value));
        else if (key == "d0") cfg.path_loss.d0 = parse_double(where, value);
        else if (key == "alpha_g") cfg.path_loss.alpha_g = parse_double(where, value);
        else if (key == "alpha_r") cfg.path_loss.alpha_r = parse_double(where, value);
        else if (key == "alpha_d") cfg.path_loss.alpha_d = parse_double(where, value);
        else throw ConfigError("config: unknown key '" + where + "'");
    } else if (section == "channel") {
        if (key == "k_d_db") cfg.k_d_db = parse_double(where, value);
        else if (key == "k_r_db") cfg.k_r_db = parse_double(where, value);
        else if (key == "k_g_db") cfg.k_g_db = parse_double(where, value);
        else throw ConfigError("config: unknown key '" + where + "'");
    } else if (section == "power") {
        if (key == "p_d_dbm") cfg.p_d_dbm = parse_double(where, value);
        else if (key == "p_u_dbm") cfg.p_u_dbm = parse_double(where, value);
        else if (key == "sigma2_u_dbm") cfg.sigma2_u_dbm = parse_double(where, value);
        else if (key == "sigma2_d_dbm") cfg.sigma2_d_dbm = parse_double(where, value);
        else throw ConfigError("config: unknown key '" + where + "'");
    } else if (section == "system") {
        if (key == "m_antennas") cfg.m_antennas = parse_uint(where, value);
        else if (key == "n_elements") cfg.n_elements = parse_uint(where, value);
        else if (key == "bits") cfg.bits = static_cast<int>(parse_uint(where, value));
        else if (key == "m_ref") cfg.m_ref = parse_uint(where, value);
        else throw ConfigError("config: unknown key '" + where + "'");
    } else if (section == "experiment") {
        if (key == "schemes") {
            cfg.schemes.clear();
            for (const auto& s : split_list(value)) cfg.schemes.push_back(scheme_from_label(s));
        } else if (key == "sweep") cfg.sweep_var = value;
        else if (key == "grid") cfg.sweep_values = parse_double_list(where, value);
        else if (key == "t_words") cfg.t_words = parse_uint(where, value);
        else if (key == "trials") cfg.trials = parse_uint(where, value);
        else if (key == "seed") cfg.seed = parse_uint(where, value);
        else if (key == "estimator") cfg.estimator = parse_estimator(value);
        else if (key == "parallel") cfg.parallel = parse_bool(where, value);
        else if (key == "mode") cfg.mode = parse_mode(value);
        else throw ConfigError("config: unknown key '" + where + "'");
    } else if (section == "ao") {
        if (key == "n_iter") cfg.ao_iters = static_cast<int>(parse_uint(where, value));
        else if (key == "continuous") cfg.ao_continuous = parse_bool(where, value);
        else throw ConfigError("config: unknown key '" + where + "'");
    } else if (section == "estimation") {
        if (key == "covariance_samples") cfg.covariance_samples = parse_uint(where, value);
        else if (key == "shared_covariance") cfg.shared_covariance = parse_bool(where, value);
        else throw ConfigError("config: unknown key '" + where + "'");
    } else if (section == "codebook") {
        if (key == "attempt_cap") cfg.codebook_opts.attempt_cap = parse_uint(where, value);
        else if (key == "stall_limit") cfg.codebook_opts.stall_limit = parse_uint(where, value);
        else if (key == "random_fill") cfg.codebook_opts.random_fill = parse_bool(where, value);
        else if (key == "csi_angle_perturb") cfg.csi_angle_perturb = parse_double(where, value);
        else throw ConfigError("config: unknown key '" + where + "'");
    } else if (section == "theory") {
        if (key == "t_grid") cfg.theory_t_grid = parse_uint_list(where, value);
        else if (key == "kr_list_db") cfg.theory_kr_db = parse_double_list(where, value);
        else throw ConfigError("config: unknown key '" + where + "'");
    } else if (section == "complexity") {
        if (key == "n_grid") cfg.comp_n_grid = parse_uint_list(where, value);
        else if (key == "t_words") cfg.comp_t_words = parse_uint(where, value);
        else if (key == "a_bits") cfg.comp_a_bits = static_cast<int>(parse_uint(where, value));
        else if (key == "n_iter") cfg.comp_n_iter = static_cast<int>(parse_uint(where, value));
        else throw ConfigError("config: unknown key '" + where + "'");
    } else {
        throw ConfigError("config: unknown section '" + section + "'");
    }
}

}  // namespace

std::string scheme_label(Scheme s) {
    switch (s) {
        case Scheme::proposed: return "proposed";
        case Scheme::proposed_mmse: return "proposed_mmse";
        case Scheme::ao: return "ao";
        case Scheme::ao_est: return "ao_est";
        case Scheme::rand_cb: return "rand";
        case Scheme::dft: return "dft";
        case Scheme::rps: return "rps";
        case Scheme::scsi: return "scsi";
        case Scheme::no_ris: return "no_ris";
    }
    throw std::logic_error("scheme_label: unreachable");
}

Scheme scheme_from_label(const std::string& label) {
    if (label == "proposed") return Scheme::proposed;
    if (label == "proposed_mmse") return Scheme::proposed_mmse;
    if (label == "ao") return Scheme::ao;
    if (label == "ao_est") return Scheme::ao_est;
    if (label == "rand") return Scheme::rand_cb;
    if (label == "dft") return Scheme::dft;
    if (label == "rps") return Scheme::rps;
    if (label == "scsi") return Scheme::scsi;
    if (label == "no_ris") return Scheme::no_ris;
    throw ConfigError("config: unknown scheme '" + label + "'");
}

double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }

double db_to_linear(double db) {
    if (std::isinf(db) && db > 0.0) return db;
    return std::pow(10.0, db / 10.0);
}

void ExperimentConfig::validate() const {
    geometry.validate();
    path_loss.validate();
    if (m_antennas == 0 || n_elements == 0)
        throw ConfigError("config: m_antennas and n_elements must be positive");
    // Only standard runs build planar-array steering; theory-mode channels are
    // i.i.d. per element and the cost model never touches the array layout.
    if (mode == RunMode::standard && n_elements % geometry.n_x != 0)
        throw ConfigError("config: n_x must divide n_elements");
    if (bits < 1 || bits > 16) throw ConfigError("config: bits must be in [1, 16]");
    if (m_ref < 1 || m_ref > m_antennas) throw ConfigError("config: m_ref out of range");
    if (schemes.empty()) throw ConfigError("config: scheme list is empty");
    if (trials == 0) throw ConfigError("config: trials must be >= 1");
    if (t_words == 0) throw ConfigError("config: t_words must be >= 1");
    if (ao_iters < 1) throw ConfigError("config: ao n_iter must be >= 1");
    if (covariance_samples == 0) throw ConfigError("config: covariance_samples must be >= 1");
    if (csi_angle_perturb < 0.0) throw ConfigError("config: csi_angle_perturb must be >= 0");
    if (sweep_var != "t_words" && sweep_var != "k_r_db" && sweep_var != "p_u_dbm" &&
        sweep_var != "n_elements" && sweep_var != "none")
        throw ConfigError("config: unknown sweep variable '" + sweep_var + "'");
    if (sweep_var != "none" && sweep_values.empty())
        throw ConfigError("config: sweep grid is empty");
    if (mode == RunMode::theory) {
        if (theory_t_grid.empty() || theory_kr_db.empty())
            throw ConfigError("config: theory grids must be non-empty");
    }
    if (mode == RunMode::complexity) {
        if (comp_n_grid.empty()) throw ConfigError("config: complexity N grid is empty");
        if (comp_t_words == 0 || comp_a_bits < 1 || comp_a_bits > 16 || comp_n_iter < 1)
            throw ConfigError("config: bad complexity parameters");
    }
}

ExperimentConfig parse_config_text(const std::string& text) {
    ExperimentConfig cfg;
    std::istringstream in(text);
    std::string line;
    std::string section;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']')
                throw ConfigError("config: malformed section header at line " +
                                  std::to_string(line_no));
            section = trim(line.substr(1, line.size() - 2));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config: expected 'key = value' at line " + std::to_string(line_no));
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (section.empty())
            throw ConfigError("config: key '" + key + "' outside any section (line " +
                              std::to_string(line_no) + ")");
        if (key.empty() || value.empty())
            throw ConfigError("config: empty key or value at line " + std::to_string(line_no));
        apply_key(cfg, section, key, value);
    }
    cfg.validate();
    return cfg;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config: cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str());
}

}  // namespace risim
