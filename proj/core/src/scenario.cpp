#include "acosim/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace acosim {

const char* to_string(FaultSpec::Kind k) {
    switch (k) {
        case FaultSpec::Kind::OvershootTilt: return "overshoot_tilt";
        case FaultSpec::Kind::LimitedTilt: return "limited_tilt";
        case FaultSpec::Kind::PowerHole: return "power_hole";
        case FaultSpec::Kind::Rotated: return "rotated";
    }
    return "?";
}

std::string fmt_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        double d = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return d;
    } catch (...) {
        throw ScenarioError("expected a number, got '" + v + "'", line);
    }
}

int parse_int(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        int i = std::stoi(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return i;
    } catch (...) {
        throw ScenarioError("expected an integer, got '" + v + "'", line);
    }
}

std::uint64_t parse_u64(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        unsigned long long i = std::stoull(v, &used);
        if (used != v.size()) throw std::invalid_argument("");
        return i;
    } catch (...) {
        throw ScenarioError("expected an unsigned integer, got '" + v + "'", line);
    }
}

bool parse_bool(const std::string& v, int line) {
    std::string s = lower(v);
    if (s == "true" || s == "1" || s == "yes" || s == "on") return true;
    if (s == "false" || s == "0" || s == "no" || s == "off") return false;
    throw ScenarioError("expected a boolean, got '" + v + "'", line);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(trim(cur));
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(trim(cur));
    return out;
}

std::vector<int> parse_splits(const std::string& v, int line) {
    std::vector<int> out;
    for (const auto& tok : split(v, ','))
        out.push_back(parse_int(tok, line));
    return out;
}

DropSpec parse_drop(const std::string& v, int line) {
    DropSpec d;
    std::istringstream in(v);
    std::string kind;
    in >> kind;
    kind = lower(kind);
    if (kind == "uniform") {
        d.kind = DropSpec::Kind::Uniform;
        std::string r;
        in >> r;
        if (r.empty() || lower(r) == "auto")
            d.r_max_m = std::nullopt;
        else
            d.r_max_m = parse_double(r, line);
    } else if (kind == "rings") {
        d.kind = DropSpec::Kind::Rings;
        std::string rest;
        std::getline(in, rest);
        for (const auto& tok : split(trim(rest), ',')) {
            auto parts = split(tok, ':');
            if (parts.size() != 3)
                throw ScenarioError("drop ring must be r0:r1:count, got '" + tok + "'", line);
            DropRing ring;
            ring.r0_m = parse_double(parts[0], line);
            ring.r1_m = parse_double(parts[1], line);
            ring.count = parse_int(parts[2], line);
            d.rings.push_back(ring);
        }
        if (d.rings.empty()) throw ScenarioError("drop rings list is empty", line);
    } else {
        throw ScenarioError("unknown drop pattern '" + kind + "'", line);
    }
    return d;
}

std::string drop_to_string(const DropSpec& d) {
    if (d.kind == DropSpec::Kind::Uniform)
        return "uniform " + (d.r_max_m ? fmt_double(*d.r_max_m) : std::string("auto"));
    std::string out = "rings ";
    for (std::size_t i = 0; i < d.rings.size(); ++i) {
        if (i) out += ",";
        out += fmt_double(d.rings[i].r0_m) + ":" + fmt_double(d.rings[i].r1_m) + ":" +
               std::to_string(d.rings[i].count);
    }
    return out;
}

}  // namespace

Scenario default_scenario() { return Scenario{}; }

Scenario parse_scenario(const std::string& text, bool lenient,
                        std::vector<std::string>* warnings) {
    Scenario sc;
    SimulationConfig& c = sc.cfg;

    auto warn_or_throw = [&](const std::string& msg, int line) {
        if (lenient) {
            if (warnings) warnings->push_back("line " + std::to_string(line) + ": " + msg);
        } else {
            throw ScenarioError(msg, line);
        }
    };

    std::string section;
    int cell_section = -1;
    std::istringstream in(text);
    std::string raw;
    int line_no = 0;

    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw;
        std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']') throw ScenarioError("unterminated section header", line_no);
            section = lower(trim(line.substr(1, line.size() - 2)));
            cell_section = -1;
            if (section.rfind("cell.", 0) == 0) {
                cell_section = parse_int(section.substr(5), line_no);
                if (cell_section < 0)
                    throw ScenarioError("cell override index must be >= 0", line_no);
                section = "cell";
            } else if (section != "network" && section != "geometry" &&
                       section != "radio" && section != "array" &&
                       section != "thresholds" && section != "schedule" &&
                       section != "traffic" && section != "kpi" && section != "faults") {
                warn_or_throw("unknown section '" + section + "'", line_no);
                section = "!skip";
            }
            continue;
        }

        std::size_t eq = line.find('=');
        if (eq == std::string::npos) throw ScenarioError("expected key = value", line_no);
        std::string key = lower(trim(line.substr(0, eq)));
        std::string val = trim(line.substr(eq + 1));
        if (key.empty() || val.empty())
            throw ScenarioError("expected key = value", line_no);
        if (section == "!skip") continue;
        if (section.empty())
            throw ScenarioError("key outside of any section", line_no);

        if (section == "faults") {
            // cell <id> = <kind> [param]
            auto head = split(key, ' ');
            std::vector<std::string> words;
            for (auto& w : head)
                if (!w.empty()) words.push_back(w);
            if (words.size() != 2 || words[0] != "cell")
                throw ScenarioError("fault entries look like: cell <id> = <kind> [param]", line_no);
            FaultSpec::Fault f;
            f.cell = parse_int(words[1], line_no);
            std::istringstream vs(val);
            std::string kind, param;
            vs >> kind >> param;
            kind = lower(kind);
            if (kind == "overshoot_tilt")
                f.kind = FaultSpec::Kind::OvershootTilt;
            else if (kind == "limited_tilt")
                f.kind = FaultSpec::Kind::LimitedTilt;
            else if (kind == "power_hole")
                f.kind = FaultSpec::Kind::PowerHole;
            else if (kind == "rotated")
                f.kind = FaultSpec::Kind::Rotated;
            else {
                warn_or_throw("unknown fault kind '" + kind + "'", line_no);
                continue;
            }
            if (!param.empty()) f.param = parse_double(param, line_no);
            sc.faults.faults.push_back(f);
            continue;
        }

        if (section == "cell") {
            CellOverride& o = c.cell_overrides[cell_section];
            if (key == "r_exp_m") o.r_exp_m = parse_double(val, line_no);
            else if (key == "theta_geo_deg") o.theta_geo_deg = parse_double(val, line_no);
            else if (key == "theta_verb_deg") o.theta_verb_deg = parse_double(val, line_no);
            else if (key == "h_bs_m") o.h_bs_m = parse_double(val, line_no);
            else if (key == "tilt0_deg") o.tilt0_deg = parse_int(val, line_no);
            else if (key == "tilt_min_deg") o.tilt_min_deg = parse_int(val, line_no);
            else if (key == "tilt_max_deg") o.tilt_max_deg = parse_int(val, line_no);
            else if (key == "p_rs_dbm") o.p_rs_dbm = parse_double(val, line_no);
            else if (key == "p_rs_min_dbm") o.p_rs_min_dbm = parse_double(val, line_no);
            else if (key == "p_rs_max_dbm") o.p_rs_max_dbm = parse_double(val, line_no);
            else if (key == "drop") o.drop = parse_drop(val, line_no);
            else if (key == "ues") o.ues = parse_int(val, line_no);
            else warn_or_throw("unknown key '" + key + "' in cell override", line_no);
            continue;
        }

        if (section == "network") {
            if (key == "sites") c.sites = parse_int(val, line_no);
            else if (key == "sectors_per_site") c.sectors_per_site = parse_int(val, line_no);
            else if (key == "ues_per_cell") c.ues_per_cell = parse_int(val, line_no);
            else if (key == "isd_m") c.isd_m = parse_double(val, line_no);
            else if (key == "seed") c.seed = parse_u64(val, line_no);
            else warn_or_throw("unknown key '" + key + "' in [network]", line_no);
        } else if (section == "geometry") {
            if (key == "h_bs_m") c.h_bs_m = parse_double(val, line_no);
            else if (key == "h_ms_m") c.h_ms_m = parse_double(val, line_no);
            else if (key == "r_exp_m") {
                if (lower(val) == "auto") c.r_exp_m = std::nullopt;
                else c.r_exp_m = parse_double(val, line_no);
            }
            else if (key == "theta_geo_deg") c.theta_geo_deg = parse_double(val, line_no);
            else if (key == "theta_verb_deg") c.theta_verb_deg = parse_double(val, line_no);
            else if (key == "n_d") c.n_d = parse_int(val, line_no);
            else if (key == "splits") c.splits = parse_splits(val, line_no);
            else if (key == "drop_r_max_m") {
                if (lower(val) == "auto") c.drop_r_max_m = std::nullopt;
                else c.drop_r_max_m = parse_double(val, line_no);
            }
            else warn_or_throw("unknown key '" + key + "' in [geometry]", line_no);
        } else if (section == "radio") {
            if (key == "p_rs_dbm") c.p_rs_dbm = parse_double(val, line_no);
            else if (key == "p_rs_min_dbm") c.p_rs_min_dbm = parse_double(val, line_no);
            else if (key == "p_rs_max_dbm") c.p_rs_max_dbm = parse_double(val, line_no);
            else if (key == "pci_reuse") c.pci_reuse = parse_int(val, line_no);
            else if (key == "g_max_dbi") c.g_max_dbi = parse_double(val, line_no);
            else if (key == "phi_3db_deg") c.phi_3db_deg = parse_double(val, line_no);
            else if (key == "theta_3db_deg") c.theta_3db_deg = parse_double(val, line_no);
            else if (key == "sla_v_db") c.sla_v_db = parse_double(val, line_no);
            else if (key == "backlobe_db") c.backlobe_db = parse_double(val, line_no);
            else if (key == "pl_const_db") c.pl_const_db = parse_double(val, line_no);
            else if (key == "pl_slope_db_decade") c.pl_slope_db_decade = parse_double(val, line_no);
            else if (key == "pl_min_dist_m") c.pl_min_dist_m = parse_double(val, line_no);
            else if (key == "noise_dbm") c.noise_dbm = parse_double(val, line_no);
            else if (key == "sigma_sf_db") c.sigma_sf_db = parse_double(val, line_no);
            else if (key == "ul_snr_db") c.ul_snr_db = parse_double(val, line_no);
            else if (key == "ul_snapshots") c.ul_snapshots = parse_int(val, line_no);
            else if (key == "ul_subpaths") c.ul_subpaths = parse_int(val, line_no);
            else if (key == "ul_angle_spread_deg") c.ul_angle_spread_deg = parse_double(val, line_no);
            else if (key == "use_empirical_gain") c.use_empirical_gain = parse_bool(val, line_no);
            else if (key == "rsrp_linear_avg") c.rsrp_linear_avg = parse_bool(val, line_no);
            else if (key == "outage_floor_dbm") c.outage_floor_dbm = parse_double(val, line_no);
            else warn_or_throw("unknown key '" + key + "' in [radio]", line_no);
        } else if (section == "array") {
            if (key == "bs_antennas") c.bs_array.m = parse_int(val, line_no);
            else if (key == "spacing_wl") c.bs_array.spacing_wl = parse_double(val, line_no);
            else if (key == "f_ul_hz") c.bs_array.f_ul_hz = parse_double(val, line_no);
            else if (key == "f_dl_hz") c.bs_array.f_dl_hz = parse_double(val, line_no);
            else if (key == "f_ref_hz") c.bs_array.f0_hz = parse_double(val, line_no);
            else if (key == "ms_antennas") c.ms_antennas = parse_int(val, line_no);
            else if (key == "aod_mode") {
                std::string m = lower(val);
                if (m == "phi") c.aod_mode = AodMode::Phi;
                else if (m == "identity") c.aod_mode = AodMode::Identity;
                else warn_or_throw("aod_mode must be phi or identity", line_no);
            }
            else if (key == "capon_grid_step_deg") c.capon_grid_step_deg = parse_double(val, line_no);
            else warn_or_throw("unknown key '" + key + "' in [array]", line_no);
        } else if (section == "thresholds") {
            Thresholds& t = c.thresholds;
            if (key == "tau_rsrp_dbm") t.tau_rsrp_dbm = parse_double(val, line_no);
            else if (key == "tau_traffic_gb") t.tau_traffic_gb = parse_double(val, line_no);
            else if (key == "tau_user") t.tau_user = parse_int(val, line_no);
            else if (key == "partial_d") t.partial_d = parse_double(val, line_no);
            else if (key == "epsilon_cov") t.epsilon_cov = parse_double(val, line_no);
            else if (key == "delta_p_db") t.delta_p_db = parse_double(val, line_no);
            else if (key == "gamma_percentile") t.gamma_percentile = parse_double(val, line_no);
            else if (key == "x_rsrp_dbm") t.x_rsrp_dbm = parse_double(val, line_no);
            else if (key == "epsilon_rot_deg") t.epsilon_rot_deg = parse_double(val, line_no);
            else if (key == "cov_probe_percentile") t.cov_probe_percentile = parse_double(val, line_no);
            else if (key == "rotation_majority") t.rotation_majority = parse_double(val, line_no);
            else if (key == "branch1_decisive") t.branch1_decisive = parse_double(val, line_no);
            else warn_or_throw("unknown key '" + key + "' in [thresholds]", line_no);
        } else if (section == "schedule") {
            if (key == "t_mr_minutes") c.t_mr_minutes = parse_int(val, line_no);
            else if (key == "t_eopt_rounds") c.t_eopt_rounds = parse_int(val, line_no);
            else if (key == "window_w") c.window_w = parse_int(val, line_no);
            else if (key == "tilt_min_deg") c.tilt_min_deg = parse_int(val, line_no);
            else if (key == "tilt_max_deg") c.tilt_max_deg = parse_int(val, line_no);
            else warn_or_throw("unknown key '" + key + "' in [schedule]", line_no);
        } else if (section == "traffic") {
            if (key == "mean_gb_per_ue") c.traffic_mean_gb_per_ue = parse_double(val, line_no);
            else if (key == "sigma_log") c.traffic_sigma_log = parse_double(val, line_no);
            else warn_or_throw("unknown key '" + key + "' in [traffic]", line_no);
        } else if (section == "kpi") {
            if (key == "grid_step_m") c.kpi_grid_step_m = parse_double(val, line_no);
            else warn_or_throw("unknown key '" + key + "' in [kpi]", line_no);
        }
    }

    validate_scenario(sc);
    return sc;
}

std::string serialize_scenario(const Scenario& sc) {
    const SimulationConfig& c = sc.cfg;
    std::ostringstream out;
    out << "[network]\n";
    out << "sites = " << c.sites << "\n";
    out << "sectors_per_site = " << c.sectors_per_site << "\n";
    out << "ues_per_cell = " << c.ues_per_cell << "\n";
    out << "isd_m = " << fmt_double(c.isd_m) << "\n";
    out << "seed = " << c.seed << "\n\n";

    out << "[geometry]\n";
    out << "h_bs_m = " << fmt_double(c.h_bs_m) << "\n";
    out << "h_ms_m = " << fmt_double(c.h_ms_m) << "\n";
    out << "r_exp_m = " << (c.r_exp_m ? fmt_double(*c.r_exp_m) : "auto") << "\n";
    out << "theta_geo_deg = " << fmt_double(c.theta_geo_deg) << "\n";
    out << "theta_verb_deg = " << fmt_double(c.theta_verb_deg) << "\n";
    out << "n_d = " << c.n_d << "\n";
    out << "splits = ";
    for (std::size_t i = 0; i < c.splits.size(); ++i)
        out << (i ? "," : "") << c.splits[i];
    out << "\n";
    out << "drop_r_max_m = " << (c.drop_r_max_m ? fmt_double(*c.drop_r_max_m) : "auto")
        << "\n\n";

    out << "[radio]\n";
    out << "p_rs_dbm = " << fmt_double(c.p_rs_dbm) << "\n";
    out << "p_rs_min_dbm = " << fmt_double(c.p_rs_min_dbm) << "\n";
    out << "p_rs_max_dbm = " << fmt_double(c.p_rs_max_dbm) << "\n";
    out << "pci_reuse = " << c.pci_reuse << "\n";
    out << "g_max_dbi = " << fmt_double(c.g_max_dbi) << "\n";
    out << "phi_3db_deg = " << fmt_double(c.phi_3db_deg) << "\n";
    out << "theta_3db_deg = " << fmt_double(c.theta_3db_deg) << "\n";
    out << "sla_v_db = " << fmt_double(c.sla_v_db) << "\n";
    out << "backlobe_db = " << fmt_double(c.backlobe_db) << "\n";
    out << "pl_const_db = " << fmt_double(c.pl_const_db) << "\n";
    out << "pl_slope_db_decade = " << fmt_double(c.pl_slope_db_decade) << "\n";
    out << "pl_min_dist_m = " << fmt_double(c.pl_min_dist_m) << "\n";
    out << "noise_dbm = " << fmt_double(c.noise_dbm) << "\n";
    out << "sigma_sf_db = " << fmt_double(c.sigma_sf_db) << "\n";
    out << "ul_snr_db = " << fmt_double(c.ul_snr_db) << "\n";
    out << "ul_snapshots = " << c.ul_snapshots << "\n";
    out << "ul_subpaths = " << c.ul_subpaths << "\n";
    out << "ul_angle_spread_deg = " << fmt_double(c.ul_angle_spread_deg) << "\n";
    out << "use_empirical_gain = " << (c.use_empirical_gain ? "true" : "false") << "\n";
    out << "rsrp_linear_avg = " << (c.rsrp_linear_avg ? "true" : "false") << "\n";
    out << "outage_floor_dbm = " << fmt_double(c.outage_floor_dbm) << "\n\n";

    out << "[array]\n";
    out << "bs_antennas = " << c.bs_array.m << "\n";
    out << "spacing_wl = " << fmt_double(c.bs_array.spacing_wl) << "\n";
    out << "f_ul_hz = " << fmt_double(c.bs_array.f_ul_hz) << "\n";
    out << "f_dl_hz = " << fmt_double(c.bs_array.f_dl_hz) << "\n";
    out << "f_ref_hz = " << fmt_double(c.bs_array.f0_hz) << "\n";
    out << "ms_antennas = " << c.ms_antennas << "\n";
    out << "aod_mode = " << (c.aod_mode == AodMode::Phi ? "phi" : "identity") << "\n";
    out << "capon_grid_step_deg = " << fmt_double(c.capon_grid_step_deg) << "\n\n";

    const Thresholds& t = c.thresholds;
    out << "[thresholds]\n";
    out << "tau_rsrp_dbm = " << fmt_double(t.tau_rsrp_dbm) << "\n";
    out << "tau_traffic_gb = " << fmt_double(t.tau_traffic_gb) << "\n";
    out << "tau_user = " << t.tau_user << "\n";
    out << "partial_d = " << fmt_double(t.partial_d) << "\n";
    out << "epsilon_cov = " << fmt_double(t.epsilon_cov) << "\n";
    out << "delta_p_db = " << fmt_double(t.delta_p_db) << "\n";
    out << "gamma_percentile = " << fmt_double(t.gamma_percentile) << "\n";
    out << "x_rsrp_dbm = " << fmt_double(t.x_rsrp_dbm) << "\n";
    out << "epsilon_rot_deg = " << fmt_double(t.epsilon_rot_deg) << "\n";
    out << "cov_probe_percentile = " << fmt_double(t.cov_probe_percentile) << "\n";
    out << "rotation_majority = " << fmt_double(t.rotation_majority) << "\n";
    out << "branch1_decisive = " << fmt_double(t.branch1_decisive) << "\n\n";

    out << "[schedule]\n";
    out << "t_mr_minutes = " << c.t_mr_minutes << "\n";
    out << "t_eopt_rounds = " << c.t_eopt_rounds << "\n";
    out << "window_w = " << c.window_w << "\n";
    out << "tilt_min_deg = " << c.tilt_min_deg << "\n";
    out << "tilt_max_deg = " << c.tilt_max_deg << "\n\n";

    out << "[traffic]\n";
    out << "mean_gb_per_ue = " << fmt_double(c.traffic_mean_gb_per_ue) << "\n";
    out << "sigma_log = " << fmt_double(c.traffic_sigma_log) << "\n\n";

    out << "[kpi]\n";
    out << "grid_step_m = " << fmt_double(c.kpi_grid_step_m) << "\n";

    if (!c.cell_overrides.empty()) {
        for (const auto& [id, o] : c.cell_overrides) {
            out << "\n[cell." << id << "]\n";
            if (o.r_exp_m) out << "r_exp_m = " << fmt_double(*o.r_exp_m) << "\n";
            if (o.theta_geo_deg) out << "theta_geo_deg = " << fmt_double(*o.theta_geo_deg) << "\n";
            if (o.theta_verb_deg) out << "theta_verb_deg = " << fmt_double(*o.theta_verb_deg) << "\n";
            if (o.h_bs_m) out << "h_bs_m = " << fmt_double(*o.h_bs_m) << "\n";
            if (o.tilt0_deg) out << "tilt0_deg = " << *o.tilt0_deg << "\n";
            if (o.tilt_min_deg) out << "tilt_min_deg = " << *o.tilt_min_deg << "\n";
            if (o.tilt_max_deg) out << "tilt_max_deg = " << *o.tilt_max_deg << "\n";
            if (o.p_rs_dbm) out << "p_rs_dbm = " << fmt_double(*o.p_rs_dbm) << "\n";
            if (o.p_rs_min_dbm) out << "p_rs_min_dbm = " << fmt_double(*o.p_rs_min_dbm) << "\n";
            if (o.p_rs_max_dbm) out << "p_rs_max_dbm = " << fmt_double(*o.p_rs_max_dbm) << "\n";
            if (o.drop) out << "drop = " << drop_to_string(*o.drop) << "\n";
            if (o.ues) out << "ues = " << *o.ues << "\n";
        }
    }

    if (!sc.faults.faults.empty()) {
        out << "\n[faults]\n";
        for (const auto& f : sc.faults.faults) {
            out << "cell " << f.cell << " = " << to_string(f.kind);
            if (f.param) out << " " << fmt_double(*f.param);
            out << "\n";
        }
    }
    return out.str();
}

void SimulationConfig::validate() const {
    if (sites != 1 && sites != 7)
        throw std::invalid_argument("network: supported cluster sizes are 1 or 7 sites");
    if (sectors_per_site != 3)
        throw std::invalid_argument("network: layout uses 3 sectors per site");
    if (cell_count() % 3 != 0)
        throw std::invalid_argument("network: cell count must be divisible by 3");
    if (ues_per_cell < 0) throw std::invalid_argument("network: ues_per_cell must be >= 0");
    if (!(isd_m > 0.0)) throw std::invalid_argument("network: isd must be positive");
    if (!(h_bs_m > h_ms_m) || !(h_ms_m > 0.0))
        throw std::invalid_argument("geometry: requires h_bs > h_ms > 0");
    if (r_exp_m && !(*r_exp_m > 0.0))
        throw std::invalid_argument("geometry: r_exp must be positive");
    if (n_d < 1) throw std::invalid_argument("geometry: n_d must be >= 1");
    if (static_cast<int>(splits.size()) != n_d)
        throw std::invalid_argument("geometry: splits list length must equal n_d");
    int prev = 0;
    for (int s : splits) {
        if (s < 1) throw std::invalid_argument("geometry: splits must be >= 1");
        if (s < prev)
            throw std::invalid_argument("geometry: splits must be non-decreasing");
        prev = s;
    }
    if (drop_r_max_m && !(*drop_r_max_m > 0.0))
        throw std::invalid_argument("geometry: drop_r_max must be positive");
    if (p_rs_min_dbm > p_rs_max_dbm)
        throw std::invalid_argument("radio: p_rs bounds inverted");
    if (p_rs_dbm < p_rs_min_dbm || p_rs_dbm > p_rs_max_dbm)
        throw std::invalid_argument("radio: p_rs outside its bounds");
    if (pci_reuse < 1) throw std::invalid_argument("radio: pci_reuse must be >= 1");
    if (!(theta_3db_deg > 0.0) || !(phi_3db_deg > 0.0))
        throw std::invalid_argument("radio: beamwidths must be positive");
    if (ul_snapshots < 1) throw std::invalid_argument("radio: ul_snapshots must be >= 1");
    if (ul_subpaths < 1) throw std::invalid_argument("radio: ul_subpaths must be >= 1");
    bs_array.validate();
    if (ms_antennas < 1) throw std::invalid_argument("array: ms_antennas must be >= 1");
    if (!(capon_grid_step_deg > 0.0))
        throw std::invalid_argument("array: capon grid step must be positive");
    thresholds.validate();
    if (t_mr_minutes < 1) throw std::invalid_argument("schedule: t_mr must be >= 1 minute");
    if (t_eopt_rounds < 1 || t_eopt_rounds > 8)
        throw std::invalid_argument("schedule: t_eopt_rounds must lie in [1, 8]");
    if (window_w < 1) throw std::invalid_argument("schedule: window_w must be >= 1");
    if (tilt_min_deg > tilt_max_deg)
        throw std::invalid_argument("schedule: tilt bounds inverted");
    if (!(traffic_mean_gb_per_ue >= 0.0))
        throw std::invalid_argument("traffic: mean volume must be >= 0");
    if (!(kpi_grid_step_m > 0.0))
        throw std::invalid_argument("kpi: grid step must be positive");

    for (const auto& [id, o] : cell_overrides) {
        if (id < 0 || id >= cell_count())
            throw std::invalid_argument("cell override targets unknown cell " +
                                        std::to_string(id));
        if (o.ues && *o.ues < 0)
            throw std::invalid_argument("cell override: ues must be >= 0");
        if (o.drop && o.drop->kind == DropSpec::Kind::Rings) {
            for (const auto& r : o.drop->rings) {
                if (!(r.r0_m >= 0.0) || !(r.r1_m > r.r0_m) || r.count < 0)
                    throw std::invalid_argument("cell override: malformed drop ring");
            }
        }
    }
}

void validate_scenario(const Scenario& sc) {
    sc.cfg.validate();
    for (const auto& f : sc.faults.faults) {
        if (f.cell < 0 || f.cell >= sc.cfg.cell_count())
            throw std::invalid_argument("fault targets unknown cell " +
                                        std::to_string(f.cell));
        if (f.kind == FaultSpec::Kind::LimitedTilt && !f.param)
            throw std::invalid_argument("limited_tilt fault needs a tilt parameter");
        if (f.kind == FaultSpec::Kind::Rotated && !f.param)
            throw std::invalid_argument("rotated fault needs an offset parameter");
    }
}

}  // namespace acosim
