#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>

#include "qfisher/sweep.hpp"

using namespace qfisher;

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

bool triples_equal(const std::vector<CorrelationTriple>& a,
                   const std::vector<CorrelationTriple>& b) {
    if (a.size() != b.size()) return false;
    for (size_t i = 0; i < a.size(); ++i)
        if (a[i].x != b[i].x || a[i].y != b[i].y || a[i].z != b[i].z) return false;
    return true;
}

} // namespace

TEST_CASE("preset manifest covers every figure parameter set") {
    CHECK(SweepConfig::preset_names() ==
          std::vector<std::string>{"fig1a", "fig1b", "fig2", "fig3", "fig4", "fig5a", "fig5b",
                                   "fig6a", "fig6b"});

    const SweepConfig fig1a = SweepConfig::preset("fig1a");
    CHECK(fig1a.kind == StateKind::XState);
    CHECK(fig1a.estimand == Estimand::Z);
    CHECK(triples_equal(fig1a.x_parameters,
                        {{-0.3, -0.6, -0.3}, {-0.3, -0.6, -0.5}, {-0.3, -0.6, -0.6}}));

    const SweepConfig fig1b = SweepConfig::preset("fig1b");
    CHECK(fig1b.estimand == Estimand::X);
    CHECK(triples_equal(fig1b.x_parameters,
                        {{-0.4, -0.6, -0.5}, {-0.5, -0.6, -0.5}, {-0.7, -0.6, -0.5}}));

    const SweepConfig fig2 = SweepConfig::preset("fig2");
    CHECK(fig2.estimand == Estimand::X);
    CHECK(triples_equal(fig2.x_parameters, {{-0.5, -0.6, -0.5}}));
    CHECK(fig2.outputs.closed_forms);

    const SweepConfig fig3 = SweepConfig::preset("fig3");
    CHECK(fig3.outputs.populations);
    CHECK(triples_equal(fig3.x_parameters, {{-0.5, -0.6, -0.5}}));

    const SweepConfig fig4 = SweepConfig::preset("fig4");
    CHECK(fig4.estimand == Estimand::R);
    CHECK(triples_equal(fig4.x_parameters,
                        {{-0.2, -0.6, -0.5}, {-0.4, -0.6, -0.5}, {-0.5, -0.6, -0.5}}));

    const SweepConfig fig5a = SweepConfig::preset("fig5a");
    CHECK(fig5a.kind == StateKind::Werner);
    CHECK(fig5a.estimand == Estimand::X);
    CHECK(fig5a.werner_parameters == std::vector<double>{-0.9, -0.8, -0.7, -0.6, -0.5});

    CHECK(SweepConfig::preset("fig5b").werner_parameters == std::vector<double>{-0.6});
    CHECK(SweepConfig::preset("fig6a").werner_parameters ==
          std::vector<double>{-0.9, -0.8, -0.7, -0.6});
    const SweepConfig fig6b = SweepConfig::preset("fig6b");
    CHECK(fig6b.estimand == Estimand::R);
    CHECK(fig6b.werner_parameters == std::vector<double>{-0.6});

    // every preset uses the 46-point grid over [0, pi/4]
    for (const std::string& name : SweepConfig::preset_names()) {
        const SweepConfig cfg = SweepConfig::preset(name);
        CHECK(cfg.r_grid.count == 46);
        CHECK(cfg.r_grid.start == 0.0);
        CHECK(cfg.r_grid.stop == doctest::Approx(kQuarterPi).epsilon(1e-15));
    }

    CHECK_THROWS_AS(SweepConfig::preset("fig7"), ConfigError);
}

TEST_CASE("sweep rows are consistent") {
    const SweepResult result = run_sweep(SweepConfig::preset("fig2"));
    REQUIRE(result.rows.size() == 46);
    for (const SweepRow& row : result.rows) {
        CHECK_FALSE(row.flagged);
        CHECK_FALSE(row.sld_only);
        CHECK(row.residual < 1e-8);
        CHECK(row.fisher.total -
                  (row.fisher.classical + row.fisher.pure_part - row.fisher.mixture) ==
              0.0);
        double psum = 0.0;
        for (double p : row.populations) psum += p;
        CHECK(psum == doctest::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("csv output is deterministic and well-formed") {
    const SweepConfig cfg = SweepConfig::preset("fig5a");
    const std::string a = sweep_csv(run_sweep(cfg));
    const std::string b = sweep_csv(run_sweep(cfg));
    CHECK(a == b);

    // header + 5 curves x 46 points, LF endings only
    size_t lines = 0;
    for (char ch : a)
        if (ch == '\n') ++lines;
    CHECK(lines == 1 + 5 * 46);
    CHECK(a.find('\r') == std::string::npos);
    CHECK(a.rfind("label,kind,estimand,curve,x,y,z,r,F_c,F_p,F_m,F_I,F_sld,residual", 0) == 0);
}

TEST_CASE("populations columns appear when requested") {
    const std::string text = sweep_csv(run_sweep(SweepConfig::preset("fig3")));
    CHECK(text.find("lambda1") != std::string::npos);
    CHECK(text.find(",P1,P2,P3,P4") != std::string::npos);
}

TEST_CASE("closed-form columns appear when requested") {
    const std::string text = sweep_csv(run_sweep(SweepConfig::preset("fig6b")));
    CHECK(text.find(",cf_F_c,cf_F_p,cf_F_m,cf_F_I") != std::string::npos);
}

TEST_CASE("config parsing") {
    SUBCASE("valid X-state config") {
        const SweepConfig cfg = SweepConfig::from_json_text(R"({
            "label": "custom",
            "state_kind": "x",
            "estimand": "z",
            "parameters": [[-0.3, -0.6, -0.5]],
            "r_grid": {"start": 0.0, "stop": 0.7, "count": 11},
            "outputs": ["concurrence", "populations"]
        })");
        CHECK(cfg.kind == StateKind::XState);
        CHECK(cfg.r_grid.count == 11);
        CHECK(cfg.outputs.populations);
        CHECK_FALSE(cfg.outputs.closed_forms);
    }
    SUBCASE("valid Werner config") {
        const SweepConfig cfg = SweepConfig::from_json_text(R"({
            "label": "wtest",
            "state_kind": "werner",
            "estimand": "r",
            "parameters": [-0.9, -0.6]
        })");
        CHECK(cfg.kind == StateKind::Werner);
        CHECK(cfg.r_grid.count == 46);
    }
    SUBCASE("rejections") {
        CHECK_THROWS_AS(SweepConfig::from_json_text("{"), ConfigError);
        CHECK_THROWS_AS(SweepConfig::from_json_text(R"({
            "label": "bad", "state_kind": "x", "estimand": "q",
            "parameters": [[-0.3, -0.6, -0.5]]})"),
                        ConfigError);
        CHECK_THROWS_AS(SweepConfig::from_json_text(R"({
            "label": "bad", "state_kind": "werner", "estimand": "z",
            "parameters": [-0.5]})"),
                        ConfigError);
        CHECK_THROWS_AS(SweepConfig::from_json_text(R"({
            "label": "bad", "state_kind": "x", "estimand": "z",
            "parameters": [[-0.3, -0.6, -0.5]], "r_grid": {"count": 1}})"),
                        ConfigError);
        CHECK_THROWS_AS(SweepConfig::from_json_text(R"({
            "label": "bad", "state_kind": "x", "estimand": "z",
            "parameters": [[-0.3, -0.6, -0.5]], "r_grid": {"stop": 1.0}})"),
                        ConfigError);
        CHECK_THROWS_AS(SweepConfig::from_json_text(R"({
            "label": "bad dir/", "state_kind": "x", "estimand": "z",
            "parameters": [[-0.3, -0.6, -0.5]]})"),
                        ConfigError);
        CHECK_THROWS_AS(SweepConfig::from_json_text(R"({
            "label": "bad", "state_kind": "x", "estimand": "z",
            "parameters": [[2.0, 0.0, 0.0]]})"),
                        DomainError);
    }
}

TEST_CASE("degenerate point evaluates to SLD only") {
    // fully mixed state at r = 0: eigenvector derivatives for estimand x are
    // undefined, the SLD value (= 1) is still reported
    const PointEvaluation point =
        evaluate_x_state({0, 0, 0}, AccelerationParameter(0.0), Estimand::X);
    CHECK(point.sld_only);
    CHECK(point.fallback);
    CHECK(point.sld == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::isnan(point.fisher.total));
}

TEST_CASE("write_sweep_csv produces the same bytes as sweep_csv") {
    const SweepConfig cfg = SweepConfig::preset("fig2");
    const std::filesystem::path dir =
        std::filesystem::temp_directory_path() / "qfisher_sweep_test";
    std::filesystem::create_directories(dir);
    const std::string path = write_sweep_csv(cfg, dir.string());
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::string contents((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
    CHECK(contents == sweep_csv(run_sweep(cfg)));
    std::filesystem::remove_all(dir);
}
