#include "acosim/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace acosim {

namespace fs = std::filesystem;

void atomic_write(const fs::path& dir, const std::string& name,
                  const std::string& content) {
    fs::path tmp = dir / (".tmp-" + name);
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("short write to " + tmp.string());
    }
    fs::rename(tmp, dir / name);
}

std::string kpi_csv(const KpiReport& rep) {
    std::ostringstream out;
    out << "metric,value\n";
    out << "coverage_prob_85dbm," << fmt_double(rep.coverage_at_85) << "\n";
    out << "coverage_prob_80dbm," << fmt_double(rep.coverage_at_80) << "\n";
    out << "hole_count," << rep.hole_count << "\n";
    out << "mean_throughput_proxy_bps_hz," << fmt_double(rep.mean_tput_proxy) << "\n";
    out << "rrc_failure_fraction," << fmt_double(rep.rrc_fail_frac) << "\n";
    for (int p = 1; p <= 99; ++p) {
        double pos = (p / 100.0) * static_cast<double>(rep.rsrp_sorted_dbm.size() - 1);
        std::size_t lo = static_cast<std::size_t>(std::floor(pos));
        std::size_t hi = std::min(lo + 1, rep.rsrp_sorted_dbm.size() - 1);
        double frac = pos - static_cast<double>(lo);
        double v = rep.rsrp_sorted_dbm[lo] +
                   (rep.rsrp_sorted_dbm[hi] - rep.rsrp_sorted_dbm[lo]) * frac;
        out << "rsrp_cdf_p" << (p < 10 ? "0" : "") << p << "," << fmt_double(v) << "\n";
    }
    return out.str();
}

std::string map_csv(const AggregatedMap& agg) {
    std::ostringstream out;
    out << "cell_id,ring,angle_bin,inner_radius_m,outer_radius_m,start_deg,end_deg,"
           "count,mean_rsrp_dbm,mean_range_m\n";
    for (const auto& s : agg.subareas) {
        out << agg.cell_id << "," << s.idx.ring << "," << s.idx.bin << ","
            << fmt_double(s.bounds.inner_m) << "," << fmt_double(s.bounds.outer_m) << ","
            << fmt_double(s.bounds.start_off_deg) << ","
            << fmt_double(s.bounds.end_off_deg) << "," << s.count << ",";
        if (s.count > 0)
            out << fmt_double(s.mean_rsrp_dbm) << "," << fmt_double(s.mean_range_m);
        else
            out << "nan,nan";
        out << "\n";
    }
    return out.str();
}

std::string grid_csv(const KpiReport& rep) {
    std::ostringstream out;
    out << "x_m,y_m,rsrp_dbm,sinr_db\n";
    for (std::size_t i = 0; i < rep.grid_pos.size(); ++i) {
        out << fmt_double(rep.grid_pos[i].x) << "," << fmt_double(rep.grid_pos[i].y)
            << "," << fmt_double(rep.grid_rsrp_dbm[i]) << ","
            << fmt_double(rep.grid_sinr_db[i]) << "\n";
    }
    return out.str();
}

std::string spectrum_csv(const SpatialSpectrum& spec) {
    std::ostringstream out;
    out << "angle_deg,power\n";
    for (std::size_t i = 0; i < spec.angle_deg.size(); ++i)
        out << fmt_double(spec.angle_deg[i]) << "," << fmt_double(spec.power[i]) << "\n";
    return out.str();
}

std::string heatmap_pgm(const KpiReport& rep) {
    std::ostringstream out;
    out << "P5\n";
    out << "# best-server RSRP, gray = clamp((rsrp_dbm + 140) / 70, 0, 1) * 255\n";
    out << rep.grid_na << " " << rep.grid_nb << "\n255\n";
    for (int ib = rep.grid_nb - 1; ib >= 0; --ib) {  // north-up raster
        for (int ia = 0; ia < rep.grid_na; ++ia) {
            double v = rep.grid_rsrp_dbm[static_cast<std::size_t>(ib * rep.grid_na + ia)];
            double g = std::clamp((v + 140.0) / 70.0, 0.0, 1.0);
            out.put(static_cast<char>(std::lround(g * 255.0)));
        }
    }
    return out.str();
}

std::string actions_jsonl(const std::vector<RoundLogEntry>& log) {
    std::ostringstream out;
    for (const auto& e : log) {
        nlohmann::ordered_json j;
        j["round"] = e.round;
        j["cell_id"] = e.cell;
        if (!e.evaluated) {
            j["gate_result"] = "eopt_wait";
        } else if (e.gate.proceed) {
            j["gate_result"] = "proceed";
        } else {
            j["gate_result"] = std::string("gated:") + to_string(e.gate.reason);
        }
        j["classification"] = e.evaluated && e.gate.proceed
                                  ? to_string(e.classification)
                                  : "none";
        auto fmt_action = [](const Action& a) {
            std::string s = to_string(a.kind);
            if (a.kind != ActionKind::NoOp) {
                s += "(" + fmt_double(a.magnitude);
                if (a.kind == ActionKind::RotateBeam)
                    s += a.sign >= 0 ? ",right" : ",left";
                s += ")";
            }
            return s;
        };
        j["proposed_action"] = fmt_action(e.proposed);
        j["applied_action"] = fmt_action(e.applied);
        j["cause"] = to_string(e.applied.cause);
        j["tilt_deg"] = e.after.tilt_deg;
        j["p_rs_dbm"] = e.after.p_rs_dbm;
        j["rotation_deg"] = e.after.rotation_deg;
        j["clamped"] = e.applied.clamped;
        j["substituted"] = e.applied.substituted;
        j["exhausted"] = e.applied.exhausted;
        out << j.dump() << "\n";
    }
    return out.str();
}

int run_manifest(const RunManifest& manifest, std::ostream& out, std::ostream& err) {
    try {
        Scenario sc;
        if (manifest.scenario_path.empty()) {
            sc = default_scenario();
        } else {
            std::ifstream f(manifest.scenario_path);
            if (!f) {
                err << "error: cannot read scenario file '" << manifest.scenario_path
                    << "'\n";
                return 1;
            }
            std::stringstream buf;
            buf << f.rdbuf();
            std::vector<std::string> warnings;
            sc = parse_scenario(buf.str(), manifest.lenient, &warnings);
            for (const auto& w : warnings) err << "warning: " << w << "\n";
        }
        if (manifest.seed_override) sc.cfg.seed = *manifest.seed_override;
        if (manifest.rounds < 1) {
            err << "error: rounds must be >= 1\n";
            return 1;
        }

        fs::path dir(manifest.out_dir);
        fs::create_directories(dir);

        Network net = drop_network(sc.cfg, sc.faults);
        RunResult res = run_rounds(net, manifest.rounds, sc.cfg.kpi_grid_step_m,
                                   manifest.emit_spectra);

        for (std::size_t r = 0; r < res.kpis.size(); ++r) {
            atomic_write(dir, "kpi_round_" + std::to_string(r) + ".csv",
                         kpi_csv(res.kpis[r]));
            if (manifest.emit_heatmaps) {
                atomic_write(dir, "heatmap_round_" + std::to_string(r) + ".pgm",
                             heatmap_pgm(res.kpis[r]));
                atomic_write(dir, "grid_round_" + std::to_string(r) + ".csv",
                             grid_csv(res.kpis[r]));
            }
        }
        atomic_write(dir, "actions.jsonl", actions_jsonl(res.log));

        if (manifest.emit_maps) {
            for (std::size_t r = 0; r < res.windows.size(); ++r) {
                for (const auto& cw : res.windows[r].cells) {
                    atomic_write(dir,
                                 "map_cell_" + std::to_string(cw.agg.cell_id) +
                                     "_round_" + std::to_string(r + 1) + ".csv",
                                 map_csv(cw.agg));
                }
            }
        }
        if (manifest.emit_spectra) {
            for (std::size_t r = 0; r < res.windows.size(); ++r) {
                const auto& spectra = res.windows[r].spectra;
                for (std::size_t c = 0; c < spectra.size(); ++c) {
                    if (!spectra[c]) continue;
                    atomic_write(dir,
                                 "spectrum_cell_" + std::to_string(c) + "_round_" +
                                     std::to_string(r + 1) + ".csv",
                                 spectrum_csv(*spectra[c]));
                }
            }
        }

        out << "round,coverage_prob_85dbm,coverage_prob_80dbm,hole_count,"
               "mean_throughput_proxy_bps_hz,rrc_failure_fraction\n";
        for (std::size_t r = 0; r < res.kpis.size(); ++r) {
            const KpiReport& k = res.kpis[r];
            out << r << "," << fmt_double(k.coverage_at_85) << ","
                << fmt_double(k.coverage_at_80) << "," << k.hole_count << ","
                << fmt_double(k.mean_tput_proxy) << "," << fmt_double(k.rrc_fail_frac)
                << "\n";
        }
        return 0;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace acosim
