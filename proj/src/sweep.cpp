#include "qfisher/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

namespace qfisher {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;
const double kNaN = std::numeric_limits<double>::quiet_NaN();

PointEvaluation evaluate_common(const DensityMatrix4& rho, const Matrix4& drho,
                                const std::array<double, 4>& lambda,
                                const std::array<Vector4, 4>& psi, bool fallback,
                                const FisherDecomposition* fisher) {
    PointEvaluation out;
    out.lambda = lambda;
    out.psi = psi;
    out.populations = populations(lambda).p;
    out.concurrence = concurrence(rho);
    out.fallback = fallback;
    out.sld = qfi_sld(rho, drho);
    if (fisher) {
        out.fisher = *fisher;
        out.residual = std::abs(out.fisher.total - out.sld) / std::max(std::abs(out.sld), 1e-6);
    } else {
        out.sld_only = true;
        out.fisher = FisherDecomposition{kNaN, kNaN, kNaN, kNaN};
        out.residual = kNaN;
    }
    return out;
}

std::optional<FisherDecomposition> closed_columns(const SweepConfig& config,
                                                  const CorrelationTriple& t, double werner_x,
                                                  const AccelerationParameter& r) {
    try {
        if (config.kind == StateKind::XState) {
            switch (config.estimand) {
            case Estimand::Z: {
                const double fz = closed_Fz(t, r);
                return FisherDecomposition{fz, 0.0, 0.0, fz};
            }
            case Estimand::X: return closed_Fx_components(t, r);
            case Estimand::R: return closed_Fr_components(t, r);
            default: return std::nullopt; // no closed form for estimand y
            }
        }
        if (config.estimand == Estimand::X) return closed_werner_Fx(werner_x, r);
        if (config.estimand == Estimand::R) return closed_werner_Fr(werner_x, r);
        return std::nullopt;
    } catch (const Error&) {
        // singular denominator or fallback region: annotation unavailable
        return std::nullopt;
    }
}

// Reorders the current eigen-system so each slot follows its predecessor by
// maximal eigenvector overlap (population curves stay continuous across
// eigenvalue crossings).
struct ContinuityTracker {
    bool active = false;
    std::array<Vector4, 4> previous;

    void apply(PointEvaluation& point) {
        if (active) {
            std::array<int, 4> perm{0, 1, 2, 3};
            std::array<int, 4> best = perm;
            double best_score = -1.0;
            std::sort(perm.begin(), perm.end());
            do {
                double score = 0.0;
                for (int i = 0; i < 4; ++i)
                    score += std::norm((previous[i].adjoint() * point.psi[perm[i]])(0));
                if (score > best_score) {
                    best_score = score;
                    best = perm;
                }
            } while (std::next_permutation(perm.begin(), perm.end()));

            PointEvaluation reordered = point;
            for (int i = 0; i < 4; ++i) {
                reordered.lambda[i] = point.lambda[best[i]];
                reordered.psi[i] = point.psi[best[i]];
                reordered.populations[i] = point.populations[best[i]];
            }
            point = reordered;
        }
        previous = point.psi;
        active = true;
    }
};

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

bool label_ok(const std::string& label) {
    if (label.empty()) return false;
    for (char ch : label) {
        const bool ok = (ch >= 'a' && ch <= 'z') || (ch >= 'A' && ch <= 'Z') ||
                        (ch >= '0' && ch <= '9') || ch == '_' || ch == '-' || ch == '.';
        if (!ok) return false;
    }
    return true;
}

SweepConfig figure_preset(const std::string& label, StateKind kind,
                          std::vector<CorrelationTriple> x_params, std::vector<double> w_params,
                          Estimand estimand, SweepOutputs outputs) {
    SweepConfig cfg;
    cfg.label = label;
    cfg.kind = kind;
    cfg.x_parameters = std::move(x_params);
    cfg.werner_parameters = std::move(w_params);
    cfg.estimand = estimand;
    cfg.r_grid = RGrid{0.0, kQuarterPi, 46};
    cfg.outputs = outputs;
    return cfg;
}

} // namespace

PointEvaluation evaluate_x_state(const CorrelationTriple& t, const AccelerationParameter& r,
                                 Estimand e) {
    const XStateCoefficients coeffs = XStateCoefficients::from(t);
    const DensityMatrix4 rho = accelerate(coeffs, r);
    const Matrix4 drho = accelerated_state_derivative(coeffs, r, e);
    const Spectrum4 spec = x_state_spectrum(t, r);
    if (spec.degenerate[static_cast<int>(e)])
        return evaluate_common(rho, drho, spec.lambda, spec.psi, spec.fallback, nullptr);
    const FisherDecomposition fisher = qfi_decomposed(spec, e);
    return evaluate_common(rho, drho, spec.lambda, spec.psi, spec.fallback, &fisher);
}

PointEvaluation evaluate_werner(double x, const AccelerationParameter& r, Estimand e) {
    if (e != Estimand::X && e != Estimand::R)
        throw DomainError("Werner states support estimands x (joint) and r only");
    const XStateCoefficients coeffs = XStateCoefficients::from(CorrelationTriple{x, x, x});
    const DensityMatrix4 rho = accelerate(coeffs, r);
    const Matrix4 drho = werner_state_derivative(x, r, e);
    const WernerSpectrum spec = werner_spectrum(x, r);
    if (spec.degenerate[e == Estimand::X ? 0 : 1])
        return evaluate_common(rho, drho, spec.lambda, spec.psi, spec.fallback, nullptr);
    const FisherDecomposition fisher = qfi_decomposed(spec, e);
    return evaluate_common(rho, drho, spec.lambda, spec.psi, spec.fallback, &fisher);
}

void RGrid::validate() const {
    if (count < 2) throw ConfigError("r grid needs at least 2 points");
    if (!(start >= 0.0)) throw ConfigError("r grid start must be >= 0");
    if (!(stop <= kQuarterPi + 1e-15)) throw ConfigError("r grid stop must be <= pi/4");
    if (!(start <= stop)) throw ConfigError("r grid start must not exceed stop");
}

void SweepConfig::validate() const {
    if (!label_ok(label))
        throw ConfigError("sweep label must be nonempty and use [A-Za-z0-9_.-] only");
    r_grid.validate();
    if (kind == StateKind::XState) {
        if (x_parameters.empty()) throw ConfigError("no X-state parameter sets given");
        for (const CorrelationTriple& t : x_parameters) t.validate();
    } else {
        if (werner_parameters.empty()) throw ConfigError("no Werner parameters given");
        for (double x : werner_parameters) {
            if (x < -1.0 || x > 1.0 / 3.0)
                throw ConfigError("Werner parameter " + std::to_string(x) + " outside [-1, 1/3]");
        }
        if (estimand != Estimand::X && estimand != Estimand::R)
            throw ConfigError("Werner sweeps support estimands x and r only");
    }
}

SweepConfig SweepConfig::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }

    SweepConfig cfg;
    try {
        cfg.label = j.at("label").get<std::string>();
        const std::string kind = j.at("state_kind").get<std::string>();
        if (kind == "x")
            cfg.kind = StateKind::XState;
        else if (kind == "werner")
            cfg.kind = StateKind::Werner;
        else
            throw ConfigError("state_kind must be 'x' or 'werner'");
        cfg.estimand = estimand_from_string(j.at("estimand").get<std::string>());

        for (const auto& p : j.at("parameters")) {
            if (cfg.kind == StateKind::XState) {
                if (!p.is_array() || p.size() != 3)
                    throw ConfigError("X-state parameters must be [x, y, z] triples");
                cfg.x_parameters.push_back(
                    CorrelationTriple{p[0].get<double>(), p[1].get<double>(), p[2].get<double>()});
            } else {
                cfg.werner_parameters.push_back(p.get<double>());
            }
        }

        cfg.r_grid.start = 0.0;
        cfg.r_grid.stop = kQuarterPi;
        cfg.r_grid.count = 46;
        if (j.contains("r_grid")) {
            const auto& g = j.at("r_grid");
            if (g.contains("start")) cfg.r_grid.start = g.at("start").get<double>();
            if (g.contains("stop")) cfg.r_grid.stop = g.at("stop").get<double>();
            if (g.contains("count")) cfg.r_grid.count = g.at("count").get<int>();
        }

        cfg.outputs = SweepOutputs{};
        if (j.contains("outputs")) {
            cfg.outputs.concurrence = false;
            for (const auto& o : j.at("outputs")) {
                const std::string name = o.get<std::string>();
                if (name == "populations")
                    cfg.outputs.populations = true;
                else if (name == "concurrence")
                    cfg.outputs.concurrence = true;
                else if (name == "closed_forms")
                    cfg.outputs.closed_forms = true;
                else if (name == "total" || name == "components")
                    ; // always emitted
                else
                    throw ConfigError("unknown output '" + name + "'");
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("config field error: ") + e.what());
    }

    cfg.validate();
    return cfg;
}

SweepConfig SweepConfig::from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return from_json_text(buffer.str());
}

std::vector<std::string> SweepConfig::preset_names() {
    return {"fig1a", "fig1b", "fig2", "fig3", "fig4", "fig5a", "fig5b", "fig6a", "fig6b"};
}

SweepConfig SweepConfig::preset(const std::string& name) {
    const SweepOutputs plain{false, true, false};
    const SweepOutputs with_closed{false, true, true};
    const SweepOutputs with_pops{true, true, false};

    if (name == "fig1a")
        return figure_preset(name, StateKind::XState,
                             {{-0.3, -0.6, -0.3}, {-0.3, -0.6, -0.5}, {-0.3, -0.6, -0.6}}, {},
                             Estimand::Z, with_closed);
    if (name == "fig1b")
        return figure_preset(name, StateKind::XState,
                             {{-0.4, -0.6, -0.5}, {-0.5, -0.6, -0.5}, {-0.7, -0.6, -0.5}}, {},
                             Estimand::X, plain);
    if (name == "fig2")
        return figure_preset(name, StateKind::XState, {{-0.5, -0.6, -0.5}}, {}, Estimand::X,
                             with_closed);
    if (name == "fig3")
        return figure_preset(name, StateKind::XState, {{-0.5, -0.6, -0.5}}, {}, Estimand::X,
                             with_pops);
    if (name == "fig4")
        return figure_preset(name, StateKind::XState,
                             {{-0.2, -0.6, -0.5}, {-0.4, -0.6, -0.5}, {-0.5, -0.6, -0.5}}, {},
                             Estimand::R, plain);
    if (name == "fig5a")
        return figure_preset(name, StateKind::Werner, {}, {-0.9, -0.8, -0.7, -0.6, -0.5},
                             Estimand::X, plain);
    if (name == "fig5b")
        return figure_preset(name, StateKind::Werner, {}, {-0.6}, Estimand::X, with_closed);
    if (name == "fig6a")
        return figure_preset(name, StateKind::Werner, {}, {-0.9, -0.8, -0.7, -0.6}, Estimand::R,
                             plain);
    if (name == "fig6b")
        return figure_preset(name, StateKind::Werner, {}, {-0.6}, Estimand::R, with_closed);
    throw ConfigError("unknown preset '" + name + "'");
}

SweepResult run_sweep(const SweepConfig& config) {
    config.validate();
    SweepResult result;
    result.config = config;

    const int curves = config.kind == StateKind::XState
                           ? static_cast<int>(config.x_parameters.size())
                           : static_cast<int>(config.werner_parameters.size());

    for (int curve = 0; curve < curves; ++curve) {
        ContinuityTracker tracker;
        for (int k = 0; k < config.r_grid.count; ++k) {
            const AccelerationParameter r(config.r_grid.at(k));

            SweepRow row;
            row.curve = curve;
            row.r = r.r();

            CorrelationTriple t{};
            double werner_x = 0.0;
            PointEvaluation point;
            if (config.kind == StateKind::XState) {
                t = config.x_parameters[curve];
                point = evaluate_x_state(t, r, config.estimand);
                row.x = t.x;
                row.y = t.y;
                row.z = t.z;
            } else {
                werner_x = config.werner_parameters[curve];
                point = evaluate_werner(werner_x, r, config.estimand);
                row.x = row.y = row.z = werner_x;
            }

            tracker.apply(point);

            row.fisher = point.fisher;
            row.sld = point.sld;
            row.residual = point.residual;
            row.lambda = point.lambda;
            row.populations = point.populations;
            row.concurrence = point.concurrence;
            row.fallback = point.fallback;
            row.sld_only = point.sld_only;
            row.flagged = point.sld_only || !(point.residual < 1e-8);

            if (config.outputs.closed_forms)
                row.closed = closed_columns(config, t, werner_x, r);

            result.rows.push_back(row);
        }
    }
    return result;
}

std::string sweep_csv(const SweepResult& result) {
    const SweepConfig& cfg = result.config;
    std::ostringstream os;

    os << "label,kind,estimand,curve,x,y,z,r,F_c,F_p,F_m,F_I,F_sld,residual";
    if (cfg.outputs.populations) os << ",lambda1,lambda2,lambda3,lambda4,P1,P2,P3,P4";
    if (cfg.outputs.concurrence) os << ",concurrence";
    if (cfg.outputs.closed_forms) os << ",cf_F_c,cf_F_p,cf_F_m,cf_F_I";
    os << ",fallback,sld_only,flagged\n";

    const char* kind = cfg.kind == StateKind::XState ? "x" : "werner";
    for (const SweepRow& row : result.rows) {
        os << cfg.label << ',' << kind << ',' << to_string(cfg.estimand) << ',' << row.curve
           << ',' << format_value(row.x) << ',' << format_value(row.y) << ','
           << format_value(row.z) << ',' << format_value(row.r) << ','
           << format_value(row.fisher.classical) << ',' << format_value(row.fisher.pure_part)
           << ',' << format_value(row.fisher.mixture) << ',' << format_value(row.fisher.total)
           << ',' << format_value(row.sld) << ',' << format_value(row.residual);
        if (cfg.outputs.populations) {
            for (double l : row.lambda) os << ',' << format_value(l);
            for (double p : row.populations) os << ',' << format_value(p);
        }
        if (cfg.outputs.concurrence) os << ',' << format_value(row.concurrence);
        if (cfg.outputs.closed_forms) {
            const FisherDecomposition cf =
                row.closed.value_or(FisherDecomposition{kNaN, kNaN, kNaN, kNaN});
            os << ',' << format_value(cf.classical) << ',' << format_value(cf.pure_part) << ','
               << format_value(cf.mixture) << ',' << format_value(cf.total);
        }
        os << ',' << (row.fallback ? 1 : 0) << ',' << (row.sld_only ? 1 : 0) << ','
           << (row.flagged ? 1 : 0) << '\n';
    }
    return os.str();
}

std::string write_sweep_csv(const SweepConfig& config, const std::string& dir) {
    const SweepResult result = run_sweep(config);
    const std::string text = sweep_csv(result);
    const std::string path = dir.empty() ? config.label + ".csv"
                                         : dir + "/" + config.label + ".csv";
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ConfigError("cannot write CSV file '" + path + "'");
    out << text;
    if (!out) throw ConfigError("failed while writing CSV file '" + path + "'");
    return path;
}

} // namespace qfisher
