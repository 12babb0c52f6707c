#include "acosim/sim.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "acosim/gold.hpp"
#include "acosim/rng.hpp"

namespace acosim {

namespace {

constexpr double kSqrt3 = 1.7320508075688772;

Vec2 axial_to_xy(double i, double j, double isd) {
    return {isd * (i + 0.5 * j), isd * (kSqrt3 / 2.0) * j};
}

}  // namespace

HexLattice HexLattice::for_cluster(int sites, double isd_m) {
    HexLattice lat;
    if (sites == 1) {
        lat.t1 = axial_to_xy(1, 0, isd_m);
        lat.t2 = axial_to_xy(0, 1, isd_m);
    } else if (sites == 7) {
        // Cluster shift (2,1): |shift| = sqrt(7) * isd.
        lat.t1 = axial_to_xy(2, 1, isd_m);
        lat.t2 = axial_to_xy(-1, 3, isd_m);
    } else {
        throw std::invalid_argument("hex lattice: supported cluster sizes are 1 or 7");
    }
    return lat;
}

Vec2 HexLattice::reduce(Vec2 d) const {
    // Solve [t1 t2] (a, b)^T = d, subtract the nearest lattice point, then
    // refine over the neighbouring images (the Voronoi cell is hexagonal).
    double det = t1.x * t2.y - t1.y * t2.x;
    double a = (d.x * t2.y - d.y * t2.x) / det;
    double b = (t1.x * d.y - t1.y * d.x) / det;
    Vec2 base = d - std::round(a) * t1 - std::round(b) * t2;

    Vec2 best = base;
    double best_n = base.norm();
    for (int m = -1; m <= 1; ++m) {
        for (int n = -1; n <= 1; ++n) {
            Vec2 cand = base - static_cast<double>(m) * t1 - static_cast<double>(n) * t2;
            double cn = cand.norm();
            if (cn < best_n - 1e-12) {
                best_n = cn;
                best = cand;
            }
        }
    }
    return best;
}

namespace {

std::vector<Vec2> site_positions(int sites, double isd) {
    std::vector<Vec2> out;
    out.push_back({0.0, 0.0});
    if (sites == 7) {
        const int ring[6][2] = {{1, 0}, {0, 1}, {-1, 1}, {-1, 0}, {0, -1}, {1, -1}};
        for (const auto& ij : ring) out.push_back(axial_to_xy(ij[0], ij[1], isd));
    }
    return out;
}

double sector_boresight_deg(int sector) { return 120.0 * sector; }

AntennaPattern pattern_for(const Network& net, const CellRuntime& c, bool data_beam) {
    AntennaPattern p;
    p.g_max_dbi = net.cfg.g_max_dbi;
    p.tilt_deg = static_cast<double>(c.state.tilt_deg);
    p.theta_3db_deg = net.cfg.theta_3db_deg;
    p.phi_3db_deg = net.cfg.phi_3db_deg;
    p.sla_v_db = net.cfg.sla_v_db;
    p.backlobe_db = net.cfg.backlobe_db;
    if (net.cfg.use_empirical_gain) {
        double arg = c.geom.h_bs_m - std::pow(c.plan.r_exp_m, 0.8);
        if (arg > 0.0 && c.geom.theta_verb_deg > 1.0)
            p.extra_gain_db = empirical_gain(c.geom.h_bs_m, c.plan.r_exp_m,
                                             c.geom.theta_verb_deg);
    }
    (void)data_beam;
    return p;
}

double physical_boresight(const CellRuntime& c, bool data_beam) {
    double b = c.geom.boresight_deg + c.boresight_fault_offset_deg;
    if (data_beam) b += c.state.rotation_deg;
    return b;
}

}  // namespace

double cell_distance_m(const Network& net, int cell, const Vec2& pos) {
    Vec2 d = net.lattice.reduce(pos - net.cells[static_cast<std::size_t>(cell)].geom.site);
    return d.norm();
}

double cell_rsrp_dbm(const Network& net, int cell, const Vec2& pos, double shadow_db,
                     bool data_beam) {
    const CellRuntime& c = net.cells[static_cast<std::size_t>(cell)];
    Vec2 d = net.lattice.reduce(pos - c.geom.site);
    double dist = d.norm();
    PathlossModel pl{net.cfg.pl_const_db, net.cfg.pl_slope_db_decade, net.cfg.pl_min_dist_m};
    AntennaPattern pat = pattern_for(net, c, data_beam);
    double az_off = wrap_deg(d.azimuth_deg() - physical_boresight(c, data_beam));
    double elev = rad2deg(std::atan2(c.geom.h_bs_m - c.geom.h_ms_m, std::max(dist, 1.0)));
    double gain = pat.gain_dbi(az_off, elev);
    return c.state.p_rs_dbm - pl(dist) + gain + shadow_db;
}

int serving_cell(const Network& net, const Vec2& pos, const double* shadow_col) {
    int best = -1;
    double best_rsrp = -1e300;
    for (int c = 0; c < static_cast<int>(net.cells.size()); ++c) {
        double sh = shadow_col ? shadow_col[c] : 0.0;
        double r = cell_rsrp_dbm(net, c, pos, sh);
        if (r > best_rsrp) {
            best_rsrp = r;
            best = c;
        }
    }
    return best;
}

Network drop_network(const SimulationConfig& cfg, const FaultSpec& faults) {
    cfg.validate();
    Network net;
    net.cfg = cfg;
    net.lattice = HexLattice::for_cluster(cfg.sites, cfg.isd_m);

    auto sites = site_positions(cfg.sites, cfg.isd_m);
    int cell_id = 0;
    for (const Vec2& site : sites) {
        for (int s = 0; s < cfg.sectors_per_site; ++s, ++cell_id) {
            const CellOverride* ov = nullptr;
            if (auto it = cfg.cell_overrides.find(cell_id); it != cfg.cell_overrides.end())
                ov = &it->second;

            CellGeometry g;
            g.site = site;
            g.boresight_deg = sector_boresight_deg(s);
            g.h_bs_m = ov && ov->h_bs_m ? *ov->h_bs_m : cfg.h_bs_m;
            g.h_ms_m = cfg.h_ms_m;
            g.theta_geo_deg = ov && ov->theta_geo_deg ? *ov->theta_geo_deg : cfg.theta_geo_deg;
            g.theta_verb_deg =
                ov && ov->theta_verb_deg ? *ov->theta_verb_deg : cfg.theta_verb_deg;

            std::optional<double> r_exp = cfg.r_exp_m;
            if (ov && ov->r_exp_m) r_exp = *ov->r_exp_m;
            IdealCoverage plan =
                r_exp ? ideal_coverage_from_range(g.h_bs_m, g.h_ms_m, *r_exp, cfg.n_d)
                      : ideal_coverage(g, cfg.n_d);

            CellState st;
            st.cell_id = cell_id;
            st.tilt_min_deg = ov && ov->tilt_min_deg ? *ov->tilt_min_deg : cfg.tilt_min_deg;
            st.tilt_max_deg = ov && ov->tilt_max_deg ? *ov->tilt_max_deg : cfg.tilt_max_deg;
            int tilt0 = ov && ov->tilt0_deg
                            ? *ov->tilt0_deg
                            : static_cast<int>(std::llround(plan.theta_tilt_deg));
            st.tilt_deg = std::clamp(tilt0, st.tilt_min_deg, st.tilt_max_deg);
            st.p_rs_min_dbm = ov && ov->p_rs_min_dbm ? *ov->p_rs_min_dbm : cfg.p_rs_min_dbm;
            st.p_rs_max_dbm = ov && ov->p_rs_max_dbm ? *ov->p_rs_max_dbm : cfg.p_rs_max_dbm;
            st.p_rs_dbm = ov && ov->p_rs_dbm ? *ov->p_rs_dbm : cfg.p_rs_dbm;
            st.rotation_deg = 0.0;
            st.r_exp_m = plan.r_exp_m;
            st.h_bs_m = g.h_bs_m;
            st.h_ms_m = g.h_ms_m;

            RingSpec rings = RingSpec::uniform(plan, cfg.splits);

            CellRuntime cr{g,
                           plan,
                           st,
                           CoverageMap(cell_id, rings,
                                       cfg.rsrp_linear_avg ? RsrpAveraging::Linear
                                                           : RsrpAveraging::Dbm),
                           cell_id,
                           0.0,
                           ActionWindow(static_cast<std::size_t>(cfg.window_w)),
                           cfg.t_eopt_rounds,
                           cfg.t_eopt_rounds,
                           0,
                           ov && ov->ues ? *ov->ues : cfg.ues_per_cell,
                           ov && ov->drop ? *ov->drop : DropSpec{}};
            cr.state.validate();
            net.cells.push_back(std::move(cr));
        }
    }

    // Faults perturb the initial state.
    for (const auto& f : faults.faults) {
        if (f.cell < 0 || f.cell >= static_cast<int>(net.cells.size()))
            throw std::invalid_argument("fault targets unknown cell " + std::to_string(f.cell));
        CellRuntime& c = net.cells[static_cast<std::size_t>(f.cell)];
        switch (f.kind) {
            case FaultSpec::Kind::OvershootTilt: {
                int t = f.param ? static_cast<int>(*f.param) : 0;
                if (t < c.state.tilt_min_deg || t > c.state.tilt_max_deg)
                    throw std::invalid_argument("overshoot_tilt fault outside tilt bounds");
                c.state.tilt_deg = t;
                break;
            }
            case FaultSpec::Kind::LimitedTilt: {
                int t = static_cast<int>(*f.param);
                if (t < c.state.tilt_min_deg || t > c.state.tilt_max_deg)
                    throw std::invalid_argument("limited_tilt fault outside tilt bounds");
                c.state.tilt_deg = t;
                break;
            }
            case FaultSpec::Kind::PowerHole: {
                double p = f.param ? *f.param : c.state.p_rs_min_dbm;
                if (p < c.state.p_rs_min_dbm || p > c.state.p_rs_max_dbm)
                    throw std::invalid_argument("power_hole fault outside power bounds");
                c.state.p_rs_dbm = p;
                break;
            }
            case FaultSpec::Kind::Rotated:
                c.boresight_fault_offset_deg = *f.param;
                break;
        }
    }

    // Drop users per cell wedge, area-uniform inside each radial band.
    double default_rmax = cfg.drop_r_max_m ? *cfg.drop_r_max_m : 0.5 * cfg.isd_m;
    for (int c = 0; c < static_cast<int>(net.cells.size()); ++c) {
        const CellRuntime& cell = net.cells[static_cast<std::size_t>(c)];
        std::vector<std::pair<DropRing, int>> bands;
        if (cell.drop.kind == DropSpec::Kind::Uniform) {
            double rmax = cell.drop.r_max_m ? *cell.drop.r_max_m : default_rmax;
            bands.push_back({DropRing{0.0, rmax, cell.ue_count}, cell.ue_count});
        } else {
            for (const auto& ring : cell.drop.rings) bands.push_back({ring, ring.count});
        }
        int idx = 0;
        for (const auto& [band, count] : bands) {
            for (int u = 0; u < count; ++u, ++idx) {
                auto rng = make_stream(cfg.seed, Stream::UeDrop,
                                       static_cast<std::uint64_t>(c),
                                       static_cast<std::uint64_t>(idx));
                std::uniform_real_distribution<double> uni(0.0, 1.0);
                double frac = uni(rng);
                double r = std::sqrt(band.r0_m * band.r0_m +
                                     (band.r1_m * band.r1_m - band.r0_m * band.r0_m) * frac);
                double off = -60.0 + 120.0 * uni(rng);
                double az = cell.geom.boresight_deg + off;
                Vec2 pos = cell.geom.site +
                           Vec2{r * std::cos(deg2rad(az)), r * std::sin(deg2rad(az))};
                net.ues.push_back({pos, c});
            }
        }
    }

    // Shadow realizations, one per (cell, ue) pair, fixed for the run.
    net.shadow_db.assign(net.cells.size(), std::vector<double>(net.ues.size(), 0.0));
    if (cfg.sigma_sf_db > 0.0) {
        for (std::size_t c = 0; c < net.cells.size(); ++c) {
            for (std::size_t u = 0; u < net.ues.size(); ++u) {
                auto rng = make_stream(cfg.seed, Stream::Shadow, c, u);
                std::normal_distribution<double> nd(0.0, cfg.sigma_sf_db);
                net.shadow_db[c][u] = nd(rng);
            }
        }
    }

    // UL->DL signature transform estimated once from steering signatures at
    // calibration angles spanning the sector.
    {
        std::vector<double> cal;
        for (double a = -60.0; a <= 60.0 + 1e-9; a += 15.0) cal.push_back(a);
        Eigen::MatrixXcd a_ul(cfg.bs_array.m, static_cast<Eigen::Index>(cal.size()));
        Eigen::MatrixXcd a_dl(cfg.bs_array.m, static_cast<Eigen::Index>(cal.size()));
        for (std::size_t i = 0; i < cal.size(); ++i) {
            a_ul.col(static_cast<Eigen::Index>(i)) =
                steering_vector(cal[i], cfg.bs_array, Link::Ul);
            a_dl.col(static_cast<Eigen::Index>(i)) =
                steering_vector(cal[i], cfg.bs_array, Link::Dl);
        }
        net.phi = estimate_phi(a_dl, a_ul);
    }

    return net;
}

namespace {

// UL receive snapshots for one user: the receive manifold across BS elements
// is the conjugate of the transmit phasing.
Eigen::MatrixXcd ul_snapshots(const Network& net, int serving, double aoa_off_deg,
                              std::uint64_t ue, int round) {
    const SimulationConfig& cfg = net.cfg;
    const double c_mps = 299792458.0;
    double lambda_ul = c_mps / cfg.bs_array.f_ul_hz;
    double lambda_ref = c_mps / cfg.bs_array.f0_hz;

    ChannelParams p;
    p.p_n = 1.0;
    p.sigma_sf = 1.0;
    p.wavenumber = 2.0 * kPi / lambda_ul;
    p.tx_spacing_m = cfg.bs_array.spacing_wl * lambda_ref;
    p.rx_spacing_m = 0.0;

    auto phase_rng = make_stream(cfg.seed, Stream::UlPhase, ue,
                                 static_cast<std::uint64_t>(round));
    std::uniform_real_distribution<double> uphase(0.0, 2.0 * kPi);
    std::normal_distribution<double> nspread(0.0, cfg.ul_angle_spread_deg);
    for (int m = 0; m < cfg.ul_subpaths; ++m) {
        SubPath sp;
        sp.aod_deg = aoa_off_deg;
        sp.aoa_deg = aoa_off_deg;
        if (cfg.ul_subpaths > 1 && cfg.ul_angle_spread_deg > 0.0) {
            double d = nspread(phase_rng);
            sp.aod_deg += d;
            sp.aoa_deg += d;
        }
        sp.phase_rad = cfg.ul_subpaths > 1 || cfg.ul_angle_spread_deg > 0.0
                           ? uphase(phase_rng)
                           : 0.0;
        p.sub.push_back(sp);
    }

    // Deterministic QPSK pilots per user and round.
    GoldSequence gold(static_cast<std::uint32_t>(
        derive_seed(cfg.seed, Stream::UlPhase, ue + 1, static_cast<std::uint64_t>(round)) &
        0x7fffffffu));
    auto bits = gold.take(2 * static_cast<std::size_t>(cfg.ul_snapshots));
    auto pilots = rs_waveform(bits, static_cast<std::size_t>(cfg.ul_snapshots));

    double noise_sigma = std::sqrt(0.5 * db_to_linear(-cfg.ul_snr_db));
    auto noise_rng = make_stream(cfg.seed, Stream::UlNoise, ue,
                                 static_cast<std::uint64_t>(round));
    std::normal_distribution<double> nd(0.0, noise_sigma);

    Eigen::MatrixXcd x(cfg.bs_array.m, cfg.ul_snapshots);
    for (int n = 0; n < cfg.ul_snapshots; ++n) {
        for (int s = 0; s < cfg.bs_array.m; ++s) {
            std::complex<double> h =
                std::conj(spatial_channel(p, 0.0, 0, s));
            x(s, n) = h * pilots[static_cast<std::size_t>(n)] +
                      std::complex<double>(nd(noise_rng), nd(noise_rng));
        }
    }
    (void)serving;
    return x;
}

}  // namespace

WindowResult simulate_window(Network& net, bool record_spectra) {
    const SimulationConfig& cfg = net.cfg;
    const int n_cells = static_cast<int>(net.cells.size());
    WindowResult out;
    out.cells.resize(static_cast<std::size_t>(n_cells));
    out.spectra.resize(static_cast<std::size_t>(n_cells));

    std::vector<double> traffic(static_cast<std::size_t>(n_cells), 0.0);
    std::vector<int> served(static_cast<std::size_t>(n_cells), 0);

    // Shadow column scratch for serving decisions.
    std::vector<double> shadow_col(static_cast<std::size_t>(n_cells), 0.0);

    double t_now = static_cast<double>(net.round) * cfg.t_mr_minutes * 60.0;
    double lognorm_mu = std::log(std::max(cfg.traffic_mean_gb_per_ue, 1e-12)) -
                        0.5 * cfg.traffic_sigma_log * cfg.traffic_sigma_log;

    for (std::size_t u = 0; u < net.ues.size(); ++u) {
        for (int c = 0; c < n_cells; ++c)
            shadow_col[static_cast<std::size_t>(c)] = net.shadow_db[static_cast<std::size_t>(c)][u];
        int sc = serving_cell(net, net.ues[u].pos, shadow_col.data());
        double level = cell_rsrp_dbm(net, sc, net.ues[u].pos,
                                     shadow_col[static_cast<std::size_t>(sc)]);
        if (level < cfg.outage_floor_dbm) continue;  // unserved, no report

        CellRuntime& cell = net.cells[static_cast<std::size_t>(sc)];
        served[static_cast<std::size_t>(sc)] += 1;

        // Traffic volume for the window.
        {
            auto rng = make_stream(cfg.seed, Stream::Traffic, u,
                                   static_cast<std::uint64_t>(net.round));
            std::normal_distribution<double> nd(lognorm_mu, cfg.traffic_sigma_log);
            traffic[static_cast<std::size_t>(sc)] += std::exp(nd(rng));
        }

        Vec2 d = net.lattice.reduce(net.ues[u].pos - cell.geom.site);
        double true_range = d.norm();
        double true_off = wrap_deg(d.azimuth_deg() - cell.geom.boresight_deg);
        if (std::abs(true_off) > 85.0) {
            // Far outside the array's unambiguous field of view; the report
            // cannot be localized and is dropped.
            out.cells[static_cast<std::size_t>(sc)].dropped_out_of_sector += 1;
            continue;
        }

        auto snaps = ul_snapshots(net, sc, true_off, u, net.round);
        auto spectrum = capon_estimate(SnapshotSet::from_snapshots(std::move(snaps)),
                                       cfg.bs_array, cfg.capon_grid_step_deg);
        double aoa_est = spectrum.peak_deg;
        double aod_est = cfg.aod_mode == AodMode::Phi
                             ? aod_from_aoa(net.phi, aoa_est, cfg.bs_array,
                                            cfg.capon_grid_step_deg)
                             : aoa_est;

        if (record_spectra && !out.spectra[static_cast<std::size_t>(sc)])
            out.spectra[static_cast<std::size_t>(sc)] = spectrum;

        MeasurementReport mr;
        mr.rsrp_dbm = level;
        mr.range_m = measure_ta(true_range).range_m;
        mr.azimuth_deg = wrap_deg_360(cell.geom.boresight_deg + aod_est);
        mr.t_s = t_now;

        auto idx = cell.map.project(cell.geom, mr);
        if (idx) {
            out.cells[static_cast<std::size_t>(sc)].accepted.push_back(mr);
        } else {
            out.cells[static_cast<std::size_t>(sc)].dropped_out_of_sector += 1;
        }
    }

    for (int c = 0; c < n_cells; ++c) {
        CellWindow& w = out.cells[static_cast<std::size_t>(c)];
        CellRuntime& cell = net.cells[static_cast<std::size_t>(c)];
        w.agg = cell.map.window_average();
        w.stats = build_window_stats(w.accepted, cell.geom.boresight_deg,
                                     traffic[static_cast<std::size_t>(c)],
                                     served[static_cast<std::size_t>(c)],
                                     cell.state.r_exp_m, cfg.thresholds);
    }
    return out;
}

KpiReport kpi(const Network& net, double grid_step_m) {
    const SimulationConfig& cfg = net.cfg;
    KpiReport rep;
    const Vec2 t1 = net.lattice.t1;
    const Vec2 t2 = net.lattice.t2;
    int na = std::max(1, static_cast<int>(std::ceil(t1.norm() / grid_step_m)));
    int nb = std::max(1, static_cast<int>(std::ceil(t2.norm() / grid_step_m)));
    rep.grid_na = na;
    rep.grid_nb = nb;
    rep.grid_pos.reserve(static_cast<std::size_t>(na) * nb);
    rep.grid_rsrp_dbm.reserve(rep.grid_pos.capacity());
    rep.grid_sinr_db.reserve(rep.grid_pos.capacity());

    int n_cells = static_cast<int>(net.cells.size());
    double sum_tput = 0.0;
    int fail = 0, cov85 = 0, cov80 = 0;

    for (int ib = 0; ib < nb; ++ib) {
        for (int ia = 0; ia < na; ++ia) {
            double fa = (ia + 0.5) / na - 0.5;
            double fb = (ib + 0.5) / nb - 0.5;
            Vec2 pos = fa * t1 + fb * t2;

            int best = -1;
            double best_rsrp = -1e300;
            for (int c = 0; c < n_cells; ++c) {
                double r = cell_rsrp_dbm(net, c, pos);
                if (r > best_rsrp) {
                    best_rsrp = r;
                    best = c;
                }
            }

            // RS SINR with co-PCI interferers, data beams applied.
            const CellRuntime& sc = net.cells[static_cast<std::size_t>(best)];
            LinkBudget serving;
            serving.noise_dbm = cfg.noise_dbm;
            serving.pathloss_db = -cell_rsrp_dbm(net, best, pos, 0.0, true) +
                                  sc.state.p_rs_dbm;  // folds pattern into pathloss
            std::vector<std::pair<LinkBudget, double>> interf;
            for (int c = 0; c < n_cells; ++c) {
                if (c == best) continue;
                const CellRuntime& ic = net.cells[static_cast<std::size_t>(c)];
                if (!pci_interferes(sc.pci, ic.pci, cfg.pci_reuse)) continue;
                LinkBudget l;
                l.noise_dbm = cfg.noise_dbm;
                l.pathloss_db = -cell_rsrp_dbm(net, c, pos, 0.0, true) + ic.state.p_rs_dbm;
                interf.push_back({l, ic.state.p_rs_dbm});
            }
            double sinr = rs_sinr(serving, sc.state.p_rs_dbm, interf);
            double sinr_db = linear_to_db(sinr);

            rep.grid_pos.push_back(pos);
            rep.grid_rsrp_dbm.push_back(best_rsrp);
            rep.grid_sinr_db.push_back(sinr_db);
            if (best_rsrp >= -85.0) ++cov85;
            if (best_rsrp >= -80.0) ++cov80;
            if (sinr_db < -6.0) ++fail;
            sum_tput += std::min(std::log2(1.0 + sinr), 6.0);
        }
    }

    int total = na * nb;
    rep.coverage_at_85 = static_cast<double>(cov85) / total;
    rep.coverage_at_80 = static_cast<double>(cov80) / total;
    rep.rrc_fail_frac = static_cast<double>(fail) / total;
    rep.mean_tput_proxy = sum_tput / total;

    rep.rsrp_sorted_dbm = rep.grid_rsrp_dbm;
    std::sort(rep.rsrp_sorted_dbm.begin(), rep.rsrp_sorted_dbm.end());

    // Contiguous sub -110 dBm bins on the torus, 4-adjacency flood fill.
    std::vector<int> label(static_cast<std::size_t>(total), 0);
    int holes = 0;
    auto at = [&](int ia, int ib) { return ib * na + ia; };
    for (int start = 0; start < total; ++start) {
        if (label[static_cast<std::size_t>(start)] != 0) continue;
        if (rep.grid_rsrp_dbm[static_cast<std::size_t>(start)] >= -110.0) {
            label[static_cast<std::size_t>(start)] = -1;
            continue;
        }
        ++holes;
        std::vector<int> stack{start};
        label[static_cast<std::size_t>(start)] = holes;
        while (!stack.empty()) {
            int cur = stack.back();
            stack.pop_back();
            int ia = cur % na, ib = cur / na;
            const int nbr[4][2] = {{(ia + 1) % na, ib},
                                   {(ia + na - 1) % na, ib},
                                   {ia, (ib + 1) % nb},
                                   {ia, (ib + nb - 1) % nb}};
            for (const auto& nn : nbr) {
                int j = at(nn[0], nn[1]);
                if (label[static_cast<std::size_t>(j)] != 0) continue;
                if (rep.grid_rsrp_dbm[static_cast<std::size_t>(j)] >= -110.0) {
                    label[static_cast<std::size_t>(j)] = -1;
                    continue;
                }
                label[static_cast<std::size_t>(j)] = holes;
                stack.push_back(j);
            }
        }
    }
    rep.hole_count = holes;
    return rep;
}

RunResult run_rounds(Network& net, int rounds, double kpi_grid_step_m,
                     bool record_spectra) {
    if (rounds < 1) throw std::invalid_argument("run_rounds: rounds must be >= 1");
    RunResult out;
    out.kpis.push_back(kpi(net, kpi_grid_step_m));

    for (int r = 1; r <= rounds; ++r) {
        net.round = r;
        WindowResult win = simulate_window(net, record_spectra);

        for (int c = 0; c < static_cast<int>(net.cells.size()); ++c) {
            CellRuntime& cell = net.cells[static_cast<std::size_t>(c)];
            RoundLogEntry e;
            e.round = r;
            e.cell = c;

            cell.eopt_countdown -= 1;
            if (cell.eopt_countdown > 0) {
                e.evaluated = false;
                e.applied.kind = ActionKind::NoOp;
                e.applied.cause = ActionCause::Gated;
                e.proposed = e.applied;
                e.after = cell.state;
                out.log.push_back(e);
                continue;
            }

            const CellWindow& w = win.cells[static_cast<std::size_t>(c)];
            RoundOutcome rc = run_cell_round(cell.state, cell.window, w.stats, w.agg,
                                             net.cfg.thresholds,
                                             static_cast<std::uint64_t>(r));
            cell.state = rc.state;

            // Adaptive evaluation period: two consecutive gated evaluations
            // double it (bounded), any proceed resets it.
            if (!rc.gate.proceed) {
                cell.gated_streak += 1;
                if (cell.gated_streak >= 2)
                    cell.eopt_period = std::min(cell.eopt_period * 2, 8);
            } else {
                cell.gated_streak = 0;
                cell.eopt_period = net.cfg.t_eopt_rounds;
            }
            cell.eopt_countdown = cell.eopt_period;

            e.evaluated = true;
            e.gate = rc.gate;
            e.classification = rc.classification;
            e.proposed = rc.proposed;
            e.applied = rc.applied;
            e.after = cell.state;
            out.log.push_back(e);
        }

        out.windows.push_back(std::move(win));
        out.kpis.push_back(kpi(net, kpi_grid_step_m));
    }
    return out;
}

}  // namespace acosim
