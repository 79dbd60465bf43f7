#include "skyrelay/io.hpp"

#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace skyrelay {

using json = nlohmann::ordered_json;

std::string format_g9(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;  // %g never emits a locale separator for C locale digits
}

namespace {

/// Every object walk goes through this guard so an unknown or misspelled key
/// is an error anywhere in the document, not just at the top level.
void reject_unknown_keys(const json& obj, const std::set<std::string>& known,
                         const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it)
        if (!known.count(it.key()))
            throw std::invalid_argument("unknown key '" + where + it.key() + "'");
}

double get_num(const json& obj, const char* key, double fallback) {
    if (!obj.contains(key)) return fallback;
    const json& v = obj.at(key);
    if (!v.is_number()) throw std::invalid_argument(std::string("key '") + key + "' must be a number");
    return v.get<double>();
}

json vec3_to_json(const Vec3& v) { return json::array({v.x, v.y, v.z}); }

Vec3 vec3_from_json(const json& a, const std::string& where) {
    if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
        !a[2].is_number())
        throw std::invalid_argument("'" + where + "' must be [x_km, y_km, z_km]");
    return Vec3{a[0].get<double>(), a[1].get<double>(), a[2].get<double>()};
}

json rect_to_json(const Rect& r) {
    return json{{"x0_km", r.x0}, {"y0_km", r.y0}, {"x1_km", r.x1}, {"y1_km", r.y1}};
}

Rect rect_from_json(const json& o, const std::string& where) {
    if (!o.is_object()) throw std::invalid_argument("'" + where + "' must be an object");
    reject_unknown_keys(o, {"x0_km", "y0_km", "x1_km", "y1_km"}, where + ".");
    Rect r;
    r.x0 = get_num(o, "x0_km", 0.0);
    r.y0 = get_num(o, "y0_km", 0.0);
    r.x1 = get_num(o, "x1_km", 0.0);
    r.y1 = get_num(o, "y1_km", 0.0);
    return r;
}

json mission_to_json(const Mission& m) {
    return json{{"start", vec3_to_json(m.start)},
                {"finish", vec3_to_json(m.finish)},
                {"duration_s", m.duration_s},
                {"v_max_mps", m.v_max_mps},
                {"h_min_m", m.h_min_m},
                {"h_max_m", m.h_max_m}};
}

Mission mission_from_json(const json& o) {
    if (!o.is_object()) throw std::invalid_argument("'mission' must be an object");
    reject_unknown_keys(
        o, {"start", "finish", "duration_s", "v_max_mps", "h_min_m", "h_max_m"}, "mission.");
    Mission m;
    if (o.contains("start")) m.start = vec3_from_json(o.at("start"), "mission.start");
    if (o.contains("finish")) m.finish = vec3_from_json(o.at("finish"), "mission.finish");
    m.duration_s = get_num(o, "duration_s", m.duration_s);
    m.v_max_mps = get_num(o, "v_max_mps", m.v_max_mps);
    m.h_min_m = get_num(o, "h_min_m", m.h_min_m);
    m.h_max_m = get_num(o, "h_max_m", m.h_max_m);
    return m;
}

json mplm_to_json(const MplmParams& p) {
    return json{{"alpha_los", p.alpha_los},
                {"alpha_nlos", p.alpha_nlos},
                {"a_hat", p.a_hat},
                {"b_hat", p.b_hat},
                {"c_hat", p.c_hat},
                {"los_variant", p.los_variant == LosVariant::kLiteral ? "literal" : "standard"}};
}

MplmParams mplm_from_json(const json& o) {
    if (!o.is_object()) throw std::invalid_argument("'mplm' must be an object");
    reject_unknown_keys(
        o, {"alpha_los", "alpha_nlos", "a_hat", "b_hat", "c_hat", "los_variant"}, "mplm.");
    MplmParams p;
    p.alpha_los = get_num(o, "alpha_los", p.alpha_los);
    p.alpha_nlos = get_num(o, "alpha_nlos", p.alpha_nlos);
    p.a_hat = get_num(o, "a_hat", p.a_hat);
    p.b_hat = get_num(o, "b_hat", p.b_hat);
    p.c_hat = get_num(o, "c_hat", p.c_hat);
    if (o.contains("los_variant")) {
        const std::string v = o.at("los_variant").get<std::string>();
        if (v == "literal")
            p.los_variant = LosVariant::kLiteral;
        else if (v == "standard")
            p.los_variant = LosVariant::kStandard;
        else
            throw std::invalid_argument("mplm.los_variant must be 'literal' or 'standard'");
    }
    return p;
}

json mbs_to_json(const Mbs& m) {
    return json{{"x_km", m.x_km},
                {"y_km", m.y_km},
                {"height_m", m.height_m},
                {"tx_power_dbm", m.tx_power_dbm},
                {"sector_bearings_deg", m.sector_bearings_deg},
                {"downtilt_deg", m.downtilt_deg}};
}

Mbs mbs_from_json(const json& o, const std::string& where) {
    if (!o.is_object()) throw std::invalid_argument("'" + where + "' must be an object");
    reject_unknown_keys(o,
                        {"x_km", "y_km", "height_m", "tx_power_dbm", "sector_bearings_deg",
                         "downtilt_deg"},
                        where + ".");
    Mbs m;
    m.x_km = get_num(o, "x_km", 0.0);
    m.y_km = get_num(o, "y_km", 0.0);
    m.height_m = get_num(o, "height_m", m.height_m);
    m.tx_power_dbm = get_num(o, "tx_power_dbm", m.tx_power_dbm);
    m.downtilt_deg = get_num(o, "downtilt_deg", m.downtilt_deg);
    if (o.contains("sector_bearings_deg")) {
        const json& a = o.at("sector_bearings_deg");
        if (!a.is_array() || a.size() != 3)
            throw std::invalid_argument(where +
                                        ".sector_bearings_deg must be an array of 3 numbers");
        for (std::size_t i = 0; i < 3; ++i) {
            if (!a[i].is_number())
                throw std::invalid_argument(where + ".sector_bearings_deg must hold numbers");
            m.sector_bearings_deg[i] = a[i].get<double>();
        }
    }
    return m;
}

json ue_to_json(const Ue& u) {
    return json{{"x_km", u.x_km}, {"y_km", u.y_km}, {"height_m", u.height_m}};
}

Ue ue_from_json(const json& o, const std::string& where) {
    if (!o.is_object()) throw std::invalid_argument("'" + where + "' must be an object");
    reject_unknown_keys(o, {"x_km", "y_km", "height_m"}, where + ".");
    Ue u;
    u.x_km = get_num(o, "x_km", 0.0);
    u.y_km = get_num(o, "y_km", 0.0);
    u.height_m = get_num(o, "height_m", u.height_m);
    return u;
}

}  // namespace

std::string scenario_to_json(const Scenario& s) {
    json mbs = json::array();
    for (const Mbs& m : s.mbs_list) mbs.push_back(mbs_to_json(m));
    json ue = json::array();
    for (const Ue& u : s.ue_list) ue.push_back(ue_to_json(u));
    json doc{{"area", rect_to_json(s.area)},
             {"flight_area", rect_to_json(s.flight_area)},
             {"mbs", mbs},
             {"ue", ue},
             {"mission", mission_to_json(s.mission)},
             {"uav_tx_power_dbm", s.uav_tx_power_dbm},
             {"carrier_freq_mhz", s.carrier_freq_mhz},
             {"mplm", mplm_to_json(s.mplm_params)},
             {"qos_threshold", s.qos_threshold},
             {"rng_seed", s.rng_seed}};
    return doc.dump(2) + "\n";
}

Scenario scenario_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("scenario JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("scenario document must be an object");
    reject_unknown_keys(doc,
                        {"area", "flight_area", "mbs", "ue", "mission", "uav_tx_power_dbm",
                         "carrier_freq_mhz", "mplm", "qos_threshold", "rng_seed"},
                        "");
    Scenario s;
    if (!doc.contains("area")) throw std::invalid_argument("missing key 'area'");
    s.area = rect_from_json(doc.at("area"), "area");
    s.flight_area =
        doc.contains("flight_area") ? rect_from_json(doc.at("flight_area"), "flight_area") : s.area;
    if (doc.contains("mbs")) {
        const json& arr = doc.at("mbs");
        if (!arr.is_array()) throw std::invalid_argument("'mbs' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            s.mbs_list.push_back(mbs_from_json(arr[i], "mbs[" + std::to_string(i) + "]"));
    }
    if (doc.contains("ue")) {
        const json& arr = doc.at("ue");
        if (!arr.is_array()) throw std::invalid_argument("'ue' must be an array");
        for (std::size_t i = 0; i < arr.size(); ++i)
            s.ue_list.push_back(ue_from_json(arr[i], "ue[" + std::to_string(i) + "]"));
    }
    if (doc.contains("mission")) s.mission = mission_from_json(doc.at("mission"));
    s.uav_tx_power_dbm = get_num(doc, "uav_tx_power_dbm", s.uav_tx_power_dbm);
    s.carrier_freq_mhz = get_num(doc, "carrier_freq_mhz", s.carrier_freq_mhz);
    if (doc.contains("mplm")) s.mplm_params = mplm_from_json(doc.at("mplm"));
    s.qos_threshold = get_num(doc, "qos_threshold", s.qos_threshold);
    if (doc.contains("rng_seed")) {
        const json& v = doc.at("rng_seed");
        if (!v.is_number_unsigned())
            throw std::invalid_argument("key 'rng_seed' must be a non-negative integer");
        s.rng_seed = v.get<std::uint64_t>();
    }
    validate(s);
    return s;
}

Scenario load_scenario(const std::string& path) { return scenario_from_json(read_text_file(path)); }

void save_scenario(const Scenario& s, const std::string& path) {
    write_text_file(path, scenario_to_json(s));
}

void apply_override(Scenario& s, const std::string& assignment) {
    const std::size_t eq = assignment.find('=');
    if (eq == std::string::npos)
        throw std::invalid_argument("override '" + assignment + "' must look like path=value");
    const std::string path = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    auto num = [&]() {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(text, &used);
        } catch (const std::exception&) {
            throw std::invalid_argument("override '" + path + "': bad number '" + text + "'");
        }
        if (used != text.size())
            throw std::invalid_argument("override '" + path + "': bad number '" + text + "'");
        return v;
    };

    if (path == "mission.duration_s") s.mission.duration_s = num();
    else if (path == "mission.v_max_mps") s.mission.v_max_mps = num();
    else if (path == "mission.h_min_m") s.mission.h_min_m = num();
    else if (path == "mission.h_max_m") s.mission.h_max_m = num();
    else if (path == "mission.start.x_km") s.mission.start.x = num();
    else if (path == "mission.start.y_km") s.mission.start.y = num();
    else if (path == "mission.start.z_km") s.mission.start.z = num();
    else if (path == "mission.finish.x_km") s.mission.finish.x = num();
    else if (path == "mission.finish.y_km") s.mission.finish.y = num();
    else if (path == "mission.finish.z_km") s.mission.finish.z = num();
    else if (path == "uav_tx_power_dbm") s.uav_tx_power_dbm = num();
    else if (path == "carrier_freq_mhz") s.carrier_freq_mhz = num();
    else if (path == "qos_threshold") s.qos_threshold = num();
    else if (path == "rng_seed") s.rng_seed = std::uint64_t(num());
    else if (path == "mplm.alpha_los") s.mplm_params.alpha_los = num();
    else if (path == "mplm.alpha_nlos") s.mplm_params.alpha_nlos = num();
    else if (path == "mplm.a_hat") s.mplm_params.a_hat = num();
    else if (path == "mplm.b_hat") s.mplm_params.b_hat = num();
    else if (path == "mplm.c_hat") s.mplm_params.c_hat = num();
    else if (path == "mplm.los_variant") {
        if (text == "literal") s.mplm_params.los_variant = LosVariant::kLiteral;
        else if (text == "standard") s.mplm_params.los_variant = LosVariant::kStandard;
        else throw std::invalid_argument("override 'mplm.los_variant': want literal|standard");
    } else if (path == "downtilt_deg") {
        const double v = num();
        for (Mbs& m : s.mbs_list) m.downtilt_deg = v;
    } else if (path == "mbs_tx_power_dbm") {
        const double v = num();
        for (Mbs& m : s.mbs_list) m.tx_power_dbm = v;
    } else {
        throw std::invalid_argument("unknown override path '" + path + "'");
    }
}

namespace {

json metrics_to_json(const SnapshotMetrics& m) {
    json sir = json::array();
    json se = json::array();
    json outage = json::array();
    for (double v : m.sir) sir.push_back(v);
    for (double v : m.se) se.push_back(v);
    for (bool b : m.outage) outage.push_back(b);
    return json{{"sum_rate", m.sum_rate},
                {"backhaul_sir", m.backhaul_sir},
                {"backhaul_sector", m.backhaul_sector},
                {"sir", sir},
                {"se", se},
                {"outage", outage}};
}

}  // namespace

std::string snapshot_to_json(const Scenario& s, const SnapshotReport& r) {
    json server = json::array();
    for (int v : r.assoc.server) server.push_back(v);
    json load = json::array();
    for (int v : r.assoc.load) load.push_back(v);
    json doc{{"uav_pos", vec3_to_json(r.uav_pos)},
             {"n_mbs", s.mbs_list.size()},
             {"n_ue", s.ue_list.size()},
             {"server", server},
             {"load", load},
             {"uav_id", r.assoc.uav_id},
             {"with_uav", metrics_to_json(r.with_uav)},
             {"without_uav", metrics_to_json(r.without_uav)}};
    return doc.dump(2) + "\n";
}

std::string trajectory_to_csv(const Trajectory& t) {
    std::string out = "step,t_seconds,x_km,y_km,z_m,sum_rate,backhaul_sir_db\n";
    for (std::size_t i = 0; i < t.waypoints.size(); ++i) {
        const Vec3& p = t.waypoints[i];
        out += std::to_string(i);
        out += ',';
        out += format_g9(double(i) * t.delta_s);
        out += ',';
        out += format_g9(p.x);
        out += ',';
        out += format_g9(p.y);
        out += ',';
        out += format_g9(p.z_m());
        out += ',';
        out += format_g9(i < t.step_sum_rate.size() ? t.step_sum_rate[i] : 0.0);
        out += ',';
        out += format_g9(i < t.step_backhaul_sir_db.size() ? t.step_backhaul_sir_db[i] : 0.0);
        out += '\n';
    }
    return out;
}

std::string trajectory_to_json(const Scenario& s, const Trajectory& t, const Grid* grid,
                               double wall_time_s) {
    json waypoints = json::array();
    for (std::size_t i = 0; i < t.waypoints.size(); ++i) {
        const Vec3& p = t.waypoints[i];
        json w{{"step", i},
               {"t_seconds", double(i) * t.delta_s},
               {"x_km", p.x},
               {"y_km", p.y},
               {"z_m", p.z_m()}};
        if (i < t.step_sum_rate.size()) w["sum_rate"] = t.step_sum_rate[i];
        if (i < t.step_backhaul_sir_db.size())
            w["backhaul_sir_db"] = t.step_backhaul_sir_db[i];
        waypoints.push_back(w);
    }
    json doc{{"n_steps", t.states.empty() ? 0 : t.states.size() - 1},
             {"delta_s", t.delta_s},
             {"total_value", t.total_value},
             {"time_avg_sum_rate", t.time_avg_sum_rate},
             {"snap_error_start_m", t.snap_error_start_m},
             {"snap_error_finish_m", t.snap_error_finish_m},
             {"wall_time_s", wall_time_s},
             {"config_hash", config_hash(s)},
             {"waypoints", waypoints}};
    if (grid != nullptr) {
        doc["grid"] = json{{"nx", grid->nx},
                           {"ny", grid->ny},
                           {"nz", grid->nz},
                           {"step_xy_m", grid->step_xy_m},
                           {"heights_m", grid->zs_m}};
    }
    return doc.dump(2) + "\n";
}

std::string study_to_csv(const StudyResult& r) {
    std::string out =
        "density,duration_s,mode,metric,mean,std_error,n,infeasible,downtilt_deg,area_km\n";
    for (const StudyRow& row : r.rows) {
        out += format_g9(row.density);
        out += ',';
        out += format_g9(row.duration_s);
        out += ',';
        out += row.mode;
        out += ',';
        out += row.metric;
        out += ',';
        out += format_g9(row.mean);
        out += ',';
        out += format_g9(row.std_error);
        out += ',';
        out += std::to_string(row.n);
        out += ',';
        out += std::to_string(row.infeasible);
        out += ',';
        out += format_g9(row.extra);
        out += ',';
        out += format_g9(row.extra2);
        out += '\n';
    }
    return out;
}

namespace {

const char* study_kind_name(StudyKind k) {
    switch (k) {
        case StudyKind::kSeGain: return "se_gain";
        case StudyKind::kOutage: return "outage";
        case StudyKind::kFifthPercentile: return "fifth_percentile";
        case StudyKind::kDowntiltSweep: return "downtilt_sweep";
        case StudyKind::kRuntimeScaling: return "runtime_scaling";
    }
    return "se_gain";
}

StudyKind study_kind_parse(const std::string& name) {
    if (name == "se_gain") return StudyKind::kSeGain;
    if (name == "outage") return StudyKind::kOutage;
    if (name == "fifth_percentile") return StudyKind::kFifthPercentile;
    if (name == "downtilt_sweep") return StudyKind::kDowntiltSweep;
    if (name == "runtime_scaling") return StudyKind::kRuntimeScaling;
    throw std::invalid_argument("unknown study kind '" + name + "'");
}

std::vector<double> num_list(const json& o, const char* key, std::vector<double> fallback) {
    if (!o.contains(key)) return fallback;
    const json& a = o.at(key);
    if (!a.is_array()) throw std::invalid_argument(std::string("key '") + key + "' must be an array");
    std::vector<double> out;
    for (const auto& v : a) {
        if (!v.is_number())
            throw std::invalid_argument(std::string("key '") + key + "' must hold numbers");
        out.push_back(v.get<double>());
    }
    return out;
}

}  // namespace

std::string study_spec_to_json(const StudySpec& spec) {
    json modes = json::array();
    for (const Mode& m : spec.modes) modes.push_back(m.label());
    json doc{{"kind", study_kind_name(spec.kind)},
             {"mbs_densities", spec.mbs_densities},
             {"ue_density", spec.ue_density},
             {"realizations", spec.realizations},
             {"durations_s", spec.durations_s},
             {"modes", modes},
             {"base_seed", spec.base_seed},
             {"area_km", spec.area_km},
             {"delta_s", spec.delta_s},
             {"qos_threshold", spec.qos_threshold},
             {"downtilts_deg", spec.downtilts_deg},
             {"downtilt_area_sizes_km", spec.downtilt_area_sizes_km},
             {"jobs", spec.jobs}};
    return doc.dump(2) + "\n";
}

StudySpec study_spec_from_json(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("study spec JSON parse error: ") + e.what());
    }
    if (!doc.is_object()) throw std::invalid_argument("study spec must be an object");
    reject_unknown_keys(doc,
                        {"kind", "mbs_densities", "ue_density", "realizations", "durations_s",
                         "modes", "base_seed", "area_km", "delta_s", "qos_threshold",
                         "downtilts_deg", "downtilt_area_sizes_km", "jobs"},
                        "");
    StudySpec spec;
    if (doc.contains("kind")) spec.kind = study_kind_parse(doc.at("kind").get<std::string>());
    spec.mbs_densities = num_list(doc, "mbs_densities", spec.mbs_densities);
    spec.ue_density = get_num(doc, "ue_density", spec.ue_density);
    spec.realizations = int(get_num(doc, "realizations", spec.realizations));
    spec.durations_s = num_list(doc, "durations_s", spec.durations_s);
    if (doc.contains("modes")) {
        const json& a = doc.at("modes");
        if (!a.is_array()) throw std::invalid_argument("key 'modes' must be an array");
        spec.modes.clear();
        for (const auto& v : a) spec.modes.push_back(Mode::parse(v.get<std::string>()));
    }
    if (doc.contains("base_seed")) {
        const json& v = doc.at("base_seed");
        if (!v.is_number_unsigned())
            throw std::invalid_argument("key 'base_seed' must be a non-negative integer");
        spec.base_seed = v.get<std::uint64_t>();
    }
    spec.area_km = get_num(doc, "area_km", spec.area_km);
    spec.delta_s = get_num(doc, "delta_s", spec.delta_s);
    spec.qos_threshold = get_num(doc, "qos_threshold", spec.qos_threshold);
    spec.downtilts_deg = num_list(doc, "downtilts_deg", spec.downtilts_deg);
    spec.downtilt_area_sizes_km =
        num_list(doc, "downtilt_area_sizes_km", spec.downtilt_area_sizes_km);
    spec.jobs = int(get_num(doc, "jobs", spec.jobs));
    return spec;
}

std::string runtime_scaling_to_csv(const RuntimeScalingResult& r) {
    std::string out = "sweep,grid_step_m,n_steps,n_states,n_heights,seconds\n";
    auto emit = [&](const char* sweep, const RuntimeScalingResult::Row& row) {
        out += sweep;
        out += ',';
        out += format_g9(row.grid_step_m);
        out += ',';
        out += std::to_string(row.n_steps);
        out += ',';
        out += std::to_string(row.n_states);
        out += ',';
        out += std::to_string(row.height_count);
        out += ',';
        out += format_g9(row.wall_s);
        out += '\n';
    };
    for (const auto& row : r.vs_horizon) emit("horizon", row);
    for (const auto& row : r.vs_heights) emit("heights", row);
    return out;
}

std::uint64_t fnv1a64(const std::string& text) {
    std::uint64_t h = 1469598103934665603ull;  // FNV-1a 64-bit offset basis
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::uint64_t config_hash(const Scenario& s) { return fnv1a64(scenario_to_json(s)); }

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
    f << content;
    if (!f) throw std::runtime_error("write failed for '" + path + "'");
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

}  // namespace skyrelay
