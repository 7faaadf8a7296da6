// qfisher command-line front end: point evaluations, figure-style parameter
// sweeps as CSV, and the verification suite.  Links the shared C API only.

#include <cinttypes>
#include <cstdio>
#include <cstdlib>
#include <string>

#include <CLI11.hpp>

#include "qfisher/qfisher.h"

namespace {

// exit codes: 0 ok, 1 invariant/internal failure, 2 domain or config error,
// 3 not estimable
int exit_code_for(qf_status status) {
    switch (status) {
    case QF_OK: return 0;
    case QF_ERR_DOMAIN:
    case QF_ERR_CONFIG:
    case QF_ERR_INVALID_ARGUMENT: return 2;
    case QF_ERR_NOT_ESTIMABLE: return 3;
    default: return 1;
    }
}

int fail(qf_status status) {
    std::fprintf(stderr, "error: %s: %s\n", qf_status_name(status), qf_last_error());
    return exit_code_for(status);
}

bool parse_triple(const std::string& text, double out[3]) {
    return std::sscanf(text.c_str(), "%lf,%lf,%lf", &out[0], &out[1], &out[2]) == 3;
}

qf_estimand parse_estimand(const std::string& text, bool& ok) {
    ok = true;
    if (text == "x") return QF_ESTIMAND_X;
    if (text == "y") return QF_ESTIMAND_Y;
    if (text == "z") return QF_ESTIMAND_Z;
    if (text == "r") return QF_ESTIMAND_R;
    ok = false;
    return QF_ESTIMAND_X;
}

void print_value(const char* key, double value) { std::printf("%s=%.17g\n", key, value); }

int run_point(const std::string& x_state, double werner_x, bool have_werner, double r,
              const std::string& estimand_text) {
    bool ok = false;
    const qf_estimand estimand = parse_estimand(estimand_text, ok);
    if (!ok) {
        std::fprintf(stderr, "error: unknown estimand '%s'\n", estimand_text.c_str());
        return 2;
    }

    qf_state* state = nullptr;
    qf_status status;
    if (have_werner) {
        status = qf_state_create_werner(werner_x, &state);
    } else {
        double t[3];
        if (!parse_triple(x_state, t)) {
            std::fprintf(stderr, "error: --x-state expects x,y,z\n");
            return 2;
        }
        status = qf_state_create_x(t[0], t[1], t[2], &state);
    }
    if (status != QF_OK) return fail(status);

    qf_evaluation eval;
    status = qf_evaluate(state, r, estimand, &eval);
    qf_state_destroy(state);
    if (status != QF_OK) return fail(status);

    std::printf("kind=%s\n", have_werner ? "werner" : "x");
    if (have_werner) {
        print_value("x", werner_x);
    } else {
        double t[3];
        parse_triple(x_state, t);
        print_value("x", t[0]);
        print_value("y", t[1]);
        print_value("z", t[2]);
    }
    print_value("r", r);
    std::printf("estimand=%s\n", estimand_text.c_str());
    print_value("F_c", eval.f_classical);
    print_value("F_p", eval.f_pure);
    print_value("F_m", eval.f_mixture);
    print_value("F_I", eval.f_total);
    print_value("F_sld", eval.f_sld);
    print_value("residual", eval.residual);
    for (int i = 0; i < 4; ++i) {
        char key[16];
        std::snprintf(key, sizeof(key), "lambda%d", i + 1);
        print_value(key, eval.eigenvalues[i]);
    }
    for (int i = 0; i < 4; ++i) {
        char key[8];
        std::snprintf(key, sizeof(key), "P%d", i + 1);
        print_value(key, eval.populations[i]);
    }
    print_value("concurrence", eval.concurrence);
    std::printf("fallback=%d\n", eval.fallback);
    std::printf("sld_only=%d\n", eval.sld_only);

    // internal consistency gate: both engines must agree on emitted rows
    if (!eval.sld_only && !(eval.residual < 1e-8)) {
        std::fprintf(stderr, "error: engine residual %.3g breaches 1e-8\n", eval.residual);
        return 1;
    }
    return 0;
}

int run_sweep(const std::string& preset, const std::string& config, const std::string& output,
              uint64_t seed) {
    if (preset.empty() == config.empty()) {
        std::fprintf(stderr, "error: give exactly one of --preset or --config\n");
        return 2;
    }
    char path[4096];
    const qf_status status =
        preset.empty()
            ? qf_sweep_config(config.c_str(), output.c_str(), seed, path, sizeof(path))
            : qf_sweep_preset(preset.c_str(), output.c_str(), seed, path, sizeof(path));
    if (status != QF_OK) return fail(status);
    std::printf("wrote %s\n", path);
    return 0;
}

int run_verify(uint64_t seed, int samples, bool grid_only, const std::string& output) {
    qf_verify_options options{seed, samples, grid_only ? 1 : 0};
    qf_verify_summary summary;
    char* report = nullptr;
    const qf_status status =
        qf_verify(&options, output.empty() ? nullptr : output.c_str(), &summary, &report);
    if (status != QF_OK) return fail(status);
    std::fputs(report, stdout);
    qf_string_free(report);
    return summary.checks_failed > 0 ? 1 : 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quantum Fisher information for accelerated two-qubit X and Werner states"};
    app.require_subcommand(1);

    // point
    auto* point = app.add_subcommand("point", "evaluate one (state, r, estimand) point");
    std::string x_state_text;
    double werner_x = 0.0;
    double r_value = 0.0;
    std::string estimand_text = "z";
    auto* x_opt = point->add_option("--x-state", x_state_text, "correlations x,y,z");
    auto* w_opt = point->add_option("--werner", werner_x, "Werner parameter x in [-1, 1/3]");
    x_opt->excludes(w_opt);
    w_opt->excludes(x_opt);
    point->add_option("--r", r_value, "acceleration parameter in [0, pi/4]")->required();
    point->add_option("--estimand", estimand_text, "x, y, z or r")->required();

    // sweep
    auto* sweep = app.add_subcommand("sweep", "write a parameter sweep as CSV");
    std::string preset, config, output = ".";
    uint64_t seed = 0;
    sweep->add_option("--preset", preset, "bundled figure scenario (fig1a .. fig6b)");
    sweep->add_option("--config", config, "JSON sweep configuration file");
    sweep->add_option("--output", output, "output directory (default: .)");
    sweep->add_option("--seed", seed, "recorded seed; sweeps are deterministic");

    // verify
    auto* verify = app.add_subcommand("verify", "run the verification and errata suite");
    uint64_t verify_seed = 42;
    int samples = 1000;
    bool grid_only = false;
    std::string verify_output;
    verify->add_option("--seed", verify_seed, "sampling seed (default 42)");
    verify->add_option("--samples", samples, "engine-equivalence sample count (default 1000)");
    verify->add_flag("--grid-only", grid_only, "closed-form verdicts only, no random sampling");
    verify->add_option("--output", verify_output, "directory for report files");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2; // flag misuse is a configuration error
    }

    if (point->parsed()) {
        if (x_state_text.empty() && w_opt->count() == 0) {
            std::fprintf(stderr, "error: give --x-state or --werner\n");
            return 2;
        }
        return run_point(x_state_text, werner_x, w_opt->count() > 0, r_value, estimand_text);
    }
    if (sweep->parsed()) return run_sweep(preset, config, output, seed);
    if (verify->parsed()) return run_verify(verify_seed, samples, grid_only, verify_output);
    return 2;
}
