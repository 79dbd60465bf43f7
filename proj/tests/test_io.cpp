#include <doctest.h>

#include <cstdio>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "skyrelay/io.hpp"
#include "skyrelay/planner.hpp"

using namespace skyrelay;

namespace {

Scenario seeded(std::uint64_t seed = 5) {
    Mission m;
    m.start = {0.0, 0.0, 0.04};
    m.finish = {1.2, 1.2, 0.04};
    return generate_scenario(Rect{0.0, 0.0, 1.2, 1.2}, 2.0, 20.0, m, seed);
}

}  // namespace

TEST_CASE("nine-significant-digit formatting") {
    CHECK(format_g9(0.1) == "0.1");
    CHECK(format_g9(5.0) == "5");
    CHECK(format_g9(-2.5) == "-2.5");
    CHECK(format_g9(121.01161297909187) == "121.011613");
    CHECK(format_g9(1e-07) == "1e-07");
    CHECK(format_g9(123456789.0) == "123456789");
    CHECK(format_g9(0.0) == "0");
}

TEST_CASE("scenario json round trip is the identity") {
    const Scenario s = seeded();
    const std::string text = scenario_to_json(s);
    const Scenario back = scenario_from_json(text);
    CHECK(scenario_to_json(back) == text);

    REQUIRE(back.mbs_list.size() == s.mbs_list.size());
    REQUIRE(back.ue_list.size() == s.ue_list.size());
    for (std::size_t i = 0; i < s.ue_list.size(); ++i) {
        CHECK(back.ue_list[i].x_km == s.ue_list[i].x_km);
        CHECK(back.ue_list[i].y_km == s.ue_list[i].y_km);
    }
    CHECK(back.mission.duration_s == s.mission.duration_s);
    CHECK(back.rng_seed == s.rng_seed);
    CHECK(back.carrier_freq_mhz == s.carrier_freq_mhz);
}

TEST_CASE("unknown keys are rejected at every level") {
    const Scenario s = seeded();
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(scenario_to_json(s));

    SUBCASE("top level") {
        doc["bogus"] = 1;
        CHECK_THROWS_WITH_AS(scenario_from_json(doc.dump()),
                             doctest::Contains("bogus"), std::invalid_argument);
    }
    SUBCASE("inside mission") {
        doc["mission"]["vmax"] = 20;
        CHECK_THROWS_WITH_AS(scenario_from_json(doc.dump()),
                             doctest::Contains("mission.vmax"), std::invalid_argument);
    }
    SUBCASE("inside an mbs entry") {
        doc["mbs"][0]["power"] = 50;
        CHECK_THROWS_WITH_AS(scenario_from_json(doc.dump()),
                             doctest::Contains("mbs[0].power"), std::invalid_argument);
    }
    SUBCASE("inside a ue entry") {
        doc["ue"][1]["z"] = 3;
        CHECK_THROWS_WITH_AS(scenario_from_json(doc.dump()),
                             doctest::Contains("ue[1].z"), std::invalid_argument);
    }
    SUBCASE("inside the area") {
        doc["area"]["w_km"] = 2;
        CHECK_THROWS_WITH_AS(scenario_from_json(doc.dump()),
                             doctest::Contains("area.w_km"), std::invalid_argument);
    }
    SUBCASE("inside mplm") {
        doc["mplm"]["dhat"] = 2;
        CHECK_THROWS_WITH_AS(scenario_from_json(doc.dump()),
                             doctest::Contains("mplm.dhat"), std::invalid_argument);
    }
}

TEST_CASE("malformed scenario documents") {
    CHECK_THROWS_AS(scenario_from_json("{not json"), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json("[1,2,3]"), std::invalid_argument);
    CHECK_THROWS_AS(scenario_from_json("{}"), std::invalid_argument);  // no area
    const Scenario s = seeded();
    nlohmann::ordered_json doc = nlohmann::ordered_json::parse(scenario_to_json(s));
    doc["carrier_freq_mhz"] = "fast";
    CHECK_THROWS_AS(scenario_from_json(doc.dump()), std::invalid_argument);
    doc = nlohmann::ordered_json::parse(scenario_to_json(s));
    doc["mission"]["start"] = {1.0, 2.0};
    CHECK_THROWS_AS(scenario_from_json(doc.dump()), std::invalid_argument);
}

TEST_CASE("dotted-path overrides") {
    Scenario s = seeded();

    apply_override(s, "mission.duration_s=320");
    CHECK(s.mission.duration_s == 320.0);
    apply_override(s, "uav_tx_power_dbm=27.5");
    CHECK(s.uav_tx_power_dbm == 27.5);
    apply_override(s, "mission.start.x_km=0.1");
    CHECK(s.mission.start.x == 0.1);
    apply_override(s, "mplm.los_variant=standard");
    CHECK(s.mplm_params.los_variant == LosVariant::kStandard);
    apply_override(s, "downtilt_deg=10");
    for (const Mbs& m : s.mbs_list) CHECK(m.downtilt_deg == 10.0);

    CHECK_THROWS_AS(apply_override(s, "mission.duration_s"), std::invalid_argument);
    CHECK_THROWS_AS(apply_override(s, "nope=3"), std::invalid_argument);
    CHECK_THROWS_AS(apply_override(s, "mission.duration_s=abc"), std::invalid_argument);
    CHECK_THROWS_AS(apply_override(s, "mission.duration_s=12x"), std::invalid_argument);
}

TEST_CASE("trajectory export") {
    const Scenario s = seeded(3);
    const Grid g = build_grid(s);
    DpResult r = solve_dp(s, g, 30, 8.0);
    annotate_trajectory(s, r.trajectory);

    const std::string csv = trajectory_to_csv(r.trajectory);
    CHECK(csv.rfind("step,t_seconds,x_km,y_km,z_m,sum_rate,backhaul_sir_db\n", 0) == 0);
    int lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == 32);  // header + 31 waypoints
    CHECK(csv.find("\n1,8,") != std::string::npos);  // second waypoint at t = 8 s

    const std::string json_text = trajectory_to_json(s, r.trajectory);
    const auto doc = nlohmann::json::parse(json_text);
    CHECK(doc.at("n_steps") == 30);
    CHECK(doc.at("delta_s") == 8.0);
    CHECK(doc.at("waypoints").size() == 31);
    CHECK(doc.at("config_hash") == config_hash(s));
}

TEST_CASE("snapshot export is valid json") {
    const Scenario s = seeded();
    SnapshotReport rep;
    rep.uav_pos = {0.6, 0.6, 0.08};
    auto [assoc, with] = associate_and_score(s, rep.uav_pos);
    rep.assoc = assoc;
    rep.with_uav = with;
    rep.without_uav = score_no_uav(s).second;

    const auto doc = nlohmann::json::parse(snapshot_to_json(s, rep));
    CHECK(doc.at("n_ue") == s.ue_list.size());
    CHECK(doc.at("with_uav").at("sum_rate").get<double>() > 0.0);
    CHECK(doc.at("server").size() == s.ue_list.size());
}

TEST_CASE("study spec json round trip") {
    StudySpec spec;
    spec.kind = StudyKind::kOutage;
    spec.realizations = 7;
    spec.mbs_densities = {2.0, 3.0};
    spec.modes = {Mode::parse("3d"), Mode::parse("2d@80"), Mode::parse("no_uav")};
    spec.base_seed = 99;

    const StudySpec back = study_spec_from_json(study_spec_to_json(spec));
    CHECK(back.kind == StudyKind::kOutage);
    CHECK(back.realizations == 7);
    CHECK(back.mbs_densities == spec.mbs_densities);
    REQUIRE(back.modes.size() == 3);
    CHECK(back.modes[1].label() == "2d@80");
    CHECK(back.base_seed == 99);

    CHECK_THROWS_AS(study_spec_from_json("{\"kind\":\"sideways\"}"), std::invalid_argument);
    CHECK_THROWS_AS(study_spec_from_json("{\"surprise\":1}"), std::invalid_argument);
}

TEST_CASE("study csv shape") {
    StudySpec spec;
    spec.realizations = 2;
    const StudyResult r = run_study(spec);
    const std::string csv = study_to_csv(r);
    CHECK(csv.rfind("density,duration_s,mode,metric,mean,std_error,n,infeasible,"
                    "downtilt_deg,area_km\n", 0) == 0);
    int lines = 0;
    for (char c : csv)
        if (c == '\n') ++lines;
    CHECK(lines == int(r.rows.size()) + 1);
}

TEST_CASE("config hash tracks content") {
    const Scenario a = seeded(5);
    const Scenario b = seeded(5);
    const Scenario c = seeded(6);
    CHECK(config_hash(a) == config_hash(b));
    CHECK(config_hash(a) != config_hash(c));

    Scenario tweaked = a;
    tweaked.qos_threshold = 0.06;
    CHECK(config_hash(tweaked) != config_hash(a));
}

TEST_CASE("text file round trip") {
    const std::string path = "/tmp/skyrelay_io_test.txt";
    write_text_file(path, "alpha\nbeta\n");
    CHECK(read_text_file(path) == "alpha\nbeta\n");
    std::remove(path.c_str());
    CHECK_THROWS_AS(read_text_file("/tmp/does_not_exist_skyrelay"), std::runtime_error);
}
