#include <doctest.h>

#include <cmath>
#include <string>

#include "gesim/config.hpp"
#include "gesim/errors.hpp"
#include "gesim/series.hpp"

using namespace gesim;

namespace {

const std::string kPexConfig = R"({
  "schema": "gesim-config/1",
  "mode": "pex",
  "model": {"dimensionless": {"g": 1e-3, "Omega0": 0.8, "Omega1": 1.2, "alpha_re": 0.5}},
  "sweep": {"t_start": 0.5, "t_end": 30.0, "n_points": 12, "scale": "log"}
})";

}  // namespace

TEST_CASE("value formatting uses 15 significant digits") {
    CHECK(format_value(1.0 / 3.0) == "0.333333333333333");
    CHECK(format_value(0.0) == "0");
    CHECK(format_value(1.5e-7) == "1.5e-07");
}

TEST_CASE("config errors carry diagnostics") {
    CHECK_THROWS_AS(parse_config("{"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"schema": "nope", "mode": "pex"})"), ConfigError);
    CHECK_THROWS_AS(parse_config(R"({"schema": "gesim-config/1", "mode": "warp"})"), ConfigError);
    // n_points = 1 is an empty sweep
    CHECK_THROWS_AS(parse_config(R"({"schema": "gesim-config/1", "mode": "pex",
        "model": {"dimensionless": {"g": 1e-3, "Omega0": 0.8, "Omega1": 1.2, "alpha_re": 0.5}},
        "sweep": {"t_start": 0.0, "t_end": 1.0, "n_points": 1}})"),
                    ConfigError);
    // dimensionless and si at once
    CHECK_THROWS_AS(parse_config(R"({"schema": "gesim-config/1", "mode": "pex",
        "model": {"dimensionless": {}, "si": {}}})"),
                    ConfigError);
}

TEST_CASE("physics errors surface from configs") {
    CHECK_THROWS_AS(parse_config(R"({"schema": "gesim-config/1", "mode": "pex",
        "model": {"dimensionless": {"g": 1e-3, "Omega0": 1.2, "Omega1": 1.4, "alpha_re": 0.5}}})"),
                    ResonanceOrderingError);
}

TEST_CASE("every table carries the version and config hash") {
    const auto tables = run_to_tables(parse_config(kPexConfig));
    REQUIRE(!tables.empty());
    const std::string csv = tables.front().second.to_csv();
    CHECK(csv.find("# gesim ") != std::string::npos);
    CHECK(csv.find("# config_hash=") != std::string::npos);
    CHECK(csv.find("\r") == std::string::npos);  // LF only
}

TEST_CASE("identical configs emit identical bytes") {
    const auto a = run_to_tables(parse_config(kPexConfig));
    const auto b = run_to_tables(parse_config(kPexConfig));
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].second.to_csv() == b[i].second.to_csv());
}

TEST_CASE("presets parse and reproduce their headline shapes") {
    SUBCASE("fig2: visibility oscillates between the coherent floor and one") {
        const auto runs = preset("fig2");
        REQUIRE(runs.size() == 1);
        const auto tables = run_to_tables(runs.front().second);
        const auto& tab = tables.front().second;
        double lo = 2.0, hi = -1.0;
        for (const auto& row : tab.rows) {
            lo = std::min(lo, row[1]);
            hi = std::max(hi, row[1]);
            CHECK(row[2] == 0.0);  // detected visibility collapses
        }
        CHECK(hi == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(lo == doctest::Approx(std::exp(-0.5)).epsilon(1e-6));
    }
    SUBCASE("fig5: numeric excitation rises monotonically") {
        for (const auto& [stem, cfg] : preset("fig5")) {
            (void)stem;
            const auto tables = run_to_tables(cfg);
            const auto& tab = tables.front().second;
            for (std::size_t i = 1; i < tab.rows.size(); ++i)
                CHECK(tab.rows[i][2] >= tab.rows[i - 1][2]);
        }
    }
    SUBCASE("eq24: campaign numbers") {
        const auto runs = preset("eq24");
        const auto out = run_config(runs.front().second);
        REQUIRE(!out.tables.empty());
        const auto& row = out.tables.front().second.rows.front();
        CHECK(row[2] > 0.8);   // total_linear
        CHECK(row[2] < 1.0);
        REQUIRE(!out.documents.empty());
    }
}

TEST_CASE("unknown preset is a config error") {
    CHECK_THROWS_AS(preset("fig9"), ConfigError);
}
