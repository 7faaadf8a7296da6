#include "qfisher/qfisher.h"

#include <cstring>
#include <exception>
#include <fstream>
#include <new>
#include <string>

#include "qfisher/sweep.hpp"
#include "qfisher/verify.hpp"

using namespace qfisher;

// Opaque handle: an inertial state specification.
struct qf_state {
    StateKind kind;
    CorrelationTriple triple; // XState
    double werner_x;          // Werner
};

namespace {

thread_local std::string t_last_error;

void set_error(const std::string& message) { t_last_error = message; }

qf_status to_status(const std::exception& e) {
    set_error(e.what());
    if (dynamic_cast<const NotEstimableError*>(&e)) return QF_ERR_NOT_ESTIMABLE;
    if (dynamic_cast<const DegeneracyError*>(&e)) return QF_ERR_DEGENERATE;
    if (dynamic_cast<const SingularDenominatorError*>(&e)) return QF_ERR_SINGULAR;
    if (dynamic_cast<const FallbackRegionError*>(&e)) return QF_ERR_SINGULAR;
    if (dynamic_cast<const ConfigError*>(&e)) return QF_ERR_CONFIG;
    if (dynamic_cast<const DomainError*>(&e)) return QF_ERR_DOMAIN;
    if (dynamic_cast<const std::bad_alloc*>(&e)) return QF_ERR_INTERNAL;
    return QF_ERR_INTERNAL;
}

template <typename Fn> qf_status guarded(Fn&& fn) {
    try {
        t_last_error.clear();
        return fn();
    } catch (const std::exception& e) {
        return to_status(e);
    } catch (...) {
        set_error("unknown error");
        return QF_ERR_INTERNAL;
    }
}

qf_status copy_path(const std::string& path, char* out, size_t out_size) {
    if (out == nullptr || out_size == 0) return QF_OK;
    std::strncpy(out, path.c_str(), out_size - 1);
    out[out_size - 1] = '\0';
    return QF_OK;
}

Estimand to_estimand(qf_estimand e) {
    switch (e) {
    case QF_ESTIMAND_X: return Estimand::X;
    case QF_ESTIMAND_Y: return Estimand::Y;
    case QF_ESTIMAND_Z: return Estimand::Z;
    case QF_ESTIMAND_R: return Estimand::R;
    }
    throw DomainError("invalid estimand value");
}

} // namespace

extern "C" {

const char* qf_version(void) { return "1.0.0"; }

const char* qf_status_name(qf_status status) {
    switch (status) {
    case QF_OK: return "ok";
    case QF_ERR_DOMAIN: return "domain error";
    case QF_ERR_NOT_ESTIMABLE: return "not estimable";
    case QF_ERR_DEGENERATE: return "degenerate point";
    case QF_ERR_SINGULAR: return "singular closed form";
    case QF_ERR_CONFIG: return "configuration error";
    case QF_ERR_IO: return "io error";
    case QF_ERR_INVALID_ARGUMENT: return "invalid argument";
    case QF_ERR_INTERNAL: return "internal error";
    }
    return "unknown status";
}

const char* qf_last_error(void) { return t_last_error.c_str(); }

qf_status qf_state_create_x(double x, double y, double z, qf_state** out_state) {
    if (out_state == nullptr) {
        set_error("out_state is null");
        return QF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        CorrelationTriple t{x, y, z};
        t.validate();
        *out_state = new qf_state{StateKind::XState, t, 0.0};
        return QF_OK;
    });
}

qf_status qf_state_create_werner(double x, qf_state** out_state) {
    if (out_state == nullptr) {
        set_error("out_state is null");
        return QF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        if (x < -1.0 || x > 1.0 / 3.0)
            throw DomainError("Werner parameter outside [-1, 1/3]");
        *out_state = new qf_state{StateKind::Werner, CorrelationTriple{x, x, x}, x};
        return QF_OK;
    });
}

void qf_state_destroy(qf_state* state) { delete state; }

qf_status qf_rindler_parameter(double acceleration, double frequency, double* out_r) {
    if (out_r == nullptr) {
        set_error("out_r is null");
        return QF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        *out_r = rindler_parameter(PhysicalAcceleration{acceleration, frequency}).r();
        return QF_OK;
    });
}

qf_status qf_evaluate(const qf_state* state, double r, qf_estimand estimand, qf_evaluation* out) {
    if (state == nullptr || out == nullptr) {
        set_error("state or out is null");
        return QF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const AccelerationParameter ap(r);
        const Estimand e = to_estimand(estimand);
        const PointEvaluation point = state->kind == StateKind::XState
                                          ? evaluate_x_state(state->triple, ap, e)
                                          : evaluate_werner(state->werner_x, ap, e);
        out->f_classical = point.fisher.classical;
        out->f_pure = point.fisher.pure_part;
        out->f_mixture = point.fisher.mixture;
        out->f_total = point.fisher.total;
        out->f_sld = point.sld;
        out->residual = point.residual;
        for (int i = 0; i < 4; ++i) {
            out->eigenvalues[i] = point.lambda[i];
            out->populations[i] = point.populations[i];
        }
        out->concurrence = point.concurrence;
        out->fallback = point.fallback ? 1 : 0;
        out->sld_only = point.sld_only ? 1 : 0;
        return QF_OK;
    });
}

qf_status qf_density_matrix(const qf_state* state, double r, double out_entries[16]) {
    if (state == nullptr || out_entries == nullptr) {
        set_error("state or out_entries is null");
        return QF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const AccelerationParameter ap(r);
        const XStateCoefficients coeffs = XStateCoefficients::from(state->triple);
        const DensityMatrix4 rho = accelerate(coeffs, ap);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) out_entries[4 * i + j] = rho(i, j).real();
        return QF_OK;
    });
}

qf_status qf_sweep_preset(const char* preset, const char* output_dir, uint64_t seed,
                          char* out_csv_path, size_t out_csv_path_size) {
    (void)seed; // sweeps are deterministic; the seed is part of the interface contract
    if (preset == nullptr) {
        set_error("preset is null");
        return QF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const SweepConfig config = SweepConfig::preset(preset);
        const std::string path =
            write_sweep_csv(config, output_dir == nullptr ? "" : output_dir);
        return copy_path(path, out_csv_path, out_csv_path_size);
    });
}

qf_status qf_sweep_config(const char* config_path, const char* output_dir, uint64_t seed,
                          char* out_csv_path, size_t out_csv_path_size) {
    (void)seed;
    if (config_path == nullptr) {
        set_error("config_path is null");
        return QF_ERR_INVALID_ARGUMENT;
    }
    return guarded([&] {
        const SweepConfig config = SweepConfig::from_json_file(config_path);
        const std::string path =
            write_sweep_csv(config, output_dir == nullptr ? "" : output_dir);
        return copy_path(path, out_csv_path, out_csv_path_size);
    });
}

qf_status qf_preset_names(char* out_names, size_t out_names_size) {
    if (out_names == nullptr || out_names_size == 0) {
        set_error("out_names is null or empty");
        return QF_ERR_INVALID_ARGUMENT;
    }
    std::string names;
    for (const std::string& name : SweepConfig::preset_names()) {
        if (!names.empty()) names += ' ';
        names += name;
    }
    return copy_path(names, out_names, out_names_size);
}

qf_status qf_verify(const qf_verify_options* options, const char* report_dir,
                    qf_verify_summary* out_summary, char** out_report) {
    return guarded([&] {
        VerifyOptions opts;
        if (options != nullptr) {
            opts.seed = options->seed;
            opts.samples = options->samples;
            opts.grid_only = options->grid_only != 0;
        }
        if (opts.samples <= 0) throw ConfigError("samples must be positive");

        const VerifySummary summary = run_verification(opts);
        const std::string report = summary.report_text();

        if (report_dir != nullptr) {
            const std::string dir(report_dir);
            std::ofstream verification(dir + "/verification.txt", std::ios::binary);
            if (!verification) throw ConfigError("cannot write verification.txt");
            verification << report;

            std::ofstream errata(dir + "/errata_report.txt", std::ios::binary);
            if (!errata) throw ConfigError("cannot write errata_report.txt");
            for (const FormulaVerdict& v : summary.verdicts) {
                errata << v.formula_id << '\t' << to_string(v.status) << '\t'
                       << v.max_rel_error << '\t' << v.grid_size << '\t' << v.note << '\n';
            }
        }

        if (out_summary != nullptr) {
            out_summary->checks_total = static_cast<int>(summary.checks.size());
            out_summary->checks_failed = summary.hard_failures();
            out_summary->warnings = summary.warnings();
            out_summary->verdicts_total = static_cast<int>(summary.verdicts.size());
            int errata_count = 0;
            for (const FormulaVerdict& v : summary.verdicts)
                if (v.status == FormulaStatus::Erratum) ++errata_count;
            out_summary->verdicts_errata = errata_count;
            out_summary->elapsed_seconds = summary.elapsed_seconds;
        }

        if (out_report != nullptr) {
            char* text = new char[report.size() + 1];
            std::memcpy(text, report.c_str(), report.size() + 1);
            *out_report = text;
        }
        return QF_OK;
    });
}

void qf_string_free(char* text) { delete[] text; }

} // extern "C"
