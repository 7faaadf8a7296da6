#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qfisher/closed_forms.hpp"
#include "qfisher/fisher.hpp"

namespace qfisher {

struct RGrid {
    double start = 0.0;
    double stop = 0.0;
    int count = 0;

    double at(int k) const { return start + k * (stop - start) / (count - 1); }
    void validate() const;
};

struct SweepOutputs {
    bool populations = false;
    bool concurrence = true;
    bool closed_forms = false;
};

enum class StateKind { XState, Werner };

struct SweepConfig {
    std::string label;
    StateKind kind = StateKind::XState;
    std::vector<CorrelationTriple> x_parameters; // kind == XState
    std::vector<double> werner_parameters;       // kind == Werner
    Estimand estimand = Estimand::Z;
    RGrid r_grid;
    SweepOutputs outputs;

    void validate() const; // throws ConfigError / DomainError

    static SweepConfig from_json_text(const std::string& text);
    static SweepConfig from_json_file(const std::string& path);
    static SweepConfig preset(const std::string& name); // throws ConfigError
    static std::vector<std::string> preset_names();
};

// Full evaluation of one (state, r, estimand) point: both engines, spectrum,
// populations and concurrence.  At degenerate points the decomposition is
// unavailable and sld_only is set (fisher/residual become NaN).
struct PointEvaluation {
    FisherDecomposition fisher;
    double sld = 0.0;
    double residual = 0.0;
    std::array<double, 4> lambda{};
    std::array<Vector4, 4> psi;
    std::array<double, 4> populations{};
    double concurrence = 0.0;
    bool fallback = false;
    bool sld_only = false;
};

PointEvaluation evaluate_x_state(const CorrelationTriple& t, const AccelerationParameter& r,
                                 Estimand e);
PointEvaluation evaluate_werner(double x, const AccelerationParameter& r, Estimand e);

// One evaluated sweep point.  Rows where the decomposition is unavailable
// (degenerate point) carry sld_only = 1 and NaN components; rows whose
// engine-vs-SLD residual exceeds 1e-8 carry flagged = 1.
struct SweepRow {
    int curve = 0;
    double x = 0.0, y = 0.0, z = 0.0;
    double r = 0.0;
    FisherDecomposition fisher;
    double sld = 0.0;
    double residual = 0.0;
    std::array<double, 4> lambda{};
    std::array<double, 4> populations{};
    double concurrence = 0.0;
    std::optional<FisherDecomposition> closed;
    bool fallback = false;
    bool sld_only = false;
    bool flagged = false;
};

struct SweepResult {
    SweepConfig config;
    std::vector<SweepRow> rows;
};

SweepResult run_sweep(const SweepConfig& config);

// CSV serialization: header row, fixed column order, 17 significant digits,
// '.' decimal separator, LF line endings.
std::string sweep_csv(const SweepResult& result);

// Writes <label>.csv under dir and returns its path.
std::string write_sweep_csv(const SweepConfig& config, const std::string& dir);

} // namespace qfisher
