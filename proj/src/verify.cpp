#include "qfisher/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <sstream>

#include "qfisher/detail/rng.hpp"
#include "qfisher/sweep.hpp"

namespace qfisher {

namespace {

constexpr double kQuarterPi = std::numbers::pi / 4.0;

// Random valid correlation triple kept away from the state-space boundary,
// the mu fallback thresholds and the r interval ends.
CorrelationTriple sample_triple(detail::SplitMix64& rng) {
    const double z = rng.uniform(-0.9, 0.9);
    const double w = rng.sign() * rng.uniform(0.05, 0.95) * (1.0 + z);
    const double u = rng.sign() * rng.uniform(0.05, 0.95) * (1.0 - z);
    return CorrelationTriple{0.5 * (u + w), 0.5 * (u - w), z};
}

AccelerationParameter sample_r(detail::SplitMix64& rng) {
    return AccelerationParameter(rng.uniform(0.01, kQuarterPi - 0.01));
}

Matrix4 finite_difference_drho(const CorrelationTriple& t, const AccelerationParameter& r,
                               Estimand e, double step) {
    auto rho_at = [&](double dx, double dy, double dz, double dr) {
        const CorrelationTriple shifted{t.x + dx, t.y + dy, t.z + dz};
        const AccelerationParameter r_shifted(r.r() + dr);
        return accelerate(XStateCoefficients::from(shifted), r_shifted).matrix();
    };
    Matrix4 hi, lo;
    switch (e) {
    case Estimand::X: hi = rho_at(step, 0, 0, 0); lo = rho_at(-step, 0, 0, 0); break;
    case Estimand::Y: hi = rho_at(0, step, 0, 0); lo = rho_at(0, -step, 0, 0); break;
    case Estimand::Z: hi = rho_at(0, 0, step, 0); lo = rho_at(0, 0, -step, 0); break;
    case Estimand::R: hi = rho_at(0, 0, 0, step); lo = rho_at(0, 0, 0, -step); break;
    }
    return (hi - lo) / (2.0 * step);
}

struct Worst {
    double value = 0.0;
    void add(double v) { value = std::max(value, v); }
};

CheckResult make_check(const std::string& name, bool hard, double worst, double threshold,
                       const std::string& detail) {
    CheckResult c;
    c.name = name;
    c.hard = hard;
    c.worst = worst;
    c.threshold = threshold;
    c.passed = worst < threshold;
    c.detail = detail;
    return c;
}

} // namespace

int VerifySummary::hard_failures() const {
    int n = 0;
    for (const CheckResult& c : checks)
        if (c.hard && !c.passed) ++n;
    return n;
}

int VerifySummary::warnings() const {
    int n = 0;
    for (const CheckResult& c : checks)
        if (!c.hard && !c.passed) ++n;
    return n;
}

std::string VerifySummary::report_text() const {
    std::ostringstream os;
    os.precision(6);
    os << "verification seed=" << options.seed << " samples=" << options.samples
       << (options.grid_only ? " grid-only" : "") << "\n";
    for (const CheckResult& c : checks) {
        const char* tag = c.passed ? "PASS" : (c.hard ? "FAIL" : "WARN");
        os << "check " << c.name << ": " << tag << " worst=" << c.worst
           << " threshold=" << c.threshold;
        if (!c.detail.empty()) os << " (" << c.detail << ")";
        os << "\n";
    }
    os << "errata report (" << verdicts.size() << " entries):\n";
    for (const FormulaVerdict& v : verdicts) {
        os << "verdict " << v.formula_id << ": " << to_string(v.status)
           << " max_rel_error=" << v.max_rel_error << " grid=" << v.grid_size << " note=\""
           << v.note << "\"\n";
    }
    const int failures = hard_failures();
    os << "summary: " << (failures == 0 ? "PASS" : "FAIL") << " hard_failures=" << failures
       << " warnings=" << warnings() << " elapsed=" << elapsed_seconds << "s\n";
    return os.str();
}

VerifySummary run_verification(const VerifyOptions& options) {
    const auto t0 = std::chrono::steady_clock::now();

    VerifySummary summary;
    summary.options = options;

    summary.verdicts = errata_report();

    // criterion: every CONFIRMED verdict below tolerance, and exactly one
    // kappa3 variant confirmed
    {
        double worst_confirmed = 0.0;
        int kappa3_confirmed = 0;
        for (const FormulaVerdict& v : summary.verdicts) {
            if (v.status == FormulaStatus::Confirmed) worst_confirmed = std::max(worst_confirmed, v.max_rel_error);
            if ((v.formula_id == "kappa3_printed" || v.formula_id == "kappa3_squared") &&
                v.status == FormulaStatus::Confirmed)
                ++kappa3_confirmed;
        }
        summary.checks.push_back(make_check("closed_confirmed_tolerance", true, worst_confirmed,
                                            1e-6, "largest error among CONFIRMED verdicts"));
        summary.checks.push_back(make_check("kappa3_single_variant", true,
                                            std::abs(kappa3_confirmed - 1.0), 0.5,
                                            "exactly one kappa3 variant must be CONFIRMED"));
    }

    if (!options.grid_only) {
        detail::SplitMix64 rng(options.seed);

        // engine equivalence over random valid samples
        {
            Worst worst, additivity, negativity, fm_excess;
            for (int n = 0; n < options.samples; ++n) {
                const CorrelationTriple t = sample_triple(rng);
                const AccelerationParameter r = sample_r(rng);
                const Estimand e = all_estimands[static_cast<int>(rng.next() % 4)];

                const XStateCoefficients coeffs = XStateCoefficients::from(t);
                const DensityMatrix4 rho = accelerate(coeffs, r);
                const Matrix4 drho = accelerated_state_derivative(coeffs, r, e);
                const FisherDecomposition dec = qfi_decomposed(x_state_spectrum(t, r), e);
                const double sld = qfi_sld(rho, drho);

                worst.add(std::abs(dec.total - sld) / std::max(sld, 1e-6));
                additivity.add(std::abs(dec.total - (dec.classical + dec.pure_part - dec.mixture)));
                negativity.add(std::max({-dec.classical, -dec.pure_part, -dec.mixture,
                                         -dec.total - 1e-10}));
                fm_excess.add(dec.mixture - dec.pure_part - 1e-10);
            }
            summary.checks.push_back(make_check("engine_equivalence", true, worst.value, 1e-8,
                                                "decomposition total vs SLD, relative"));
            summary.checks.push_back(make_check("additivity_identity", true, additivity.value,
                                                1e-12, "F_I - (F_c + F_p - F_m) as computed"));
            summary.checks.push_back(make_check("nonnegativity", true, negativity.value, 0.0 + 1e-30,
                                                "F_c, F_p, F_m >= 0 and F_I >= -1e-10"));
            summary.checks.push_back(make_check("mixture_below_pure", false, fm_excess.value, 0.0 + 1e-30,
                                                "soft: F_m <= F_p + 1e-10"));
        }

        // analytic d(rho) against central finite differences
        {
            Worst worst;
            const double step = 1e-5;
            for (int n = 0; n < 200; ++n) {
                const CorrelationTriple t = sample_triple(rng);
                const AccelerationParameter r = sample_r(rng);
                const XStateCoefficients coeffs = XStateCoefficients::from(t);
                for (Estimand e : all_estimands) {
                    const Matrix4 analytic = accelerated_state_derivative(coeffs, r, e);
                    const Matrix4 fd = finite_difference_drho(t, r, e, step);
                    worst.add(max_abs_entry(analytic - fd) /
                              std::max(max_abs_entry(analytic), 1e-12));
                }
            }
            summary.checks.push_back(make_check("derivative_finite_difference", true, worst.value,
                                                1e-6, "analytic vs central differences, step 1e-5"));
        }

        // z-estimand purity: eigenvectors do not depend on z
        {
            Worst worst;
            for (int n = 0; n < 200; ++n) {
                const CorrelationTriple t = sample_triple(rng);
                const AccelerationParameter r = sample_r(rng);
                const FisherDecomposition dec = qfi_decomposed(x_state_spectrum(t, r), Estimand::Z);
                worst.add(std::max(dec.pure_part, dec.mixture));
            }
            summary.checks.push_back(
                make_check("z_estimand_purity", true, worst.value, 1e-14, "F_p and F_m for estimand z"));
        }

        // F^r vanishes at r = 0
        {
            Worst worst;
            const AccelerationParameter r0(0.0);
            for (int n = 0; n < 100; ++n) {
                const CorrelationTriple t = sample_triple(rng);
                const FisherDecomposition dec = qfi_decomposed(x_state_spectrum(t, r0), Estimand::R);
                const XStateCoefficients coeffs = XStateCoefficients::from(t);
                const double sld = qfi_sld(accelerate(coeffs, r0),
                                           accelerated_state_derivative(coeffs, r0, Estimand::R));
                worst.add(std::max(std::abs(dec.total), std::abs(sld)));
            }
            summary.checks.push_back(
                make_check("r_origin_law", true, worst.value, 1e-10, "F^r at r = 0"));
        }

        // estimand-x purity at r = 0
        {
            Worst worst;
            const AccelerationParameter r0(0.0);
            for (int n = 0; n < 100; ++n) {
                const CorrelationTriple t = sample_triple(rng);
                const FisherDecomposition dec = qfi_decomposed(x_state_spectrum(t, r0), Estimand::X);
                worst.add(std::max(dec.pure_part, dec.mixture));
            }
            summary.checks.push_back(make_check("x_origin_purity", true, worst.value, 1e-10,
                                                "F_p and F_m for estimand x at r = 0"));
        }

        // SLD with analytic d(rho) against SLD with finite-difference d(rho)
        {
            Worst worst;
            for (int n = 0; n < 100; ++n) {
                const CorrelationTriple t = sample_triple(rng);
                const AccelerationParameter r = sample_r(rng);
                const Estimand e = all_estimands[static_cast<int>(rng.next() % 4)];
                const XStateCoefficients coeffs = XStateCoefficients::from(t);
                const DensityMatrix4 rho = accelerate(coeffs, r);
                const double f_analytic = qfi_sld(rho, accelerated_state_derivative(coeffs, r, e));
                const double f_fd = qfi_sld(rho, finite_difference_drho(t, r, e, 1e-5));
                worst.add(std::abs(f_analytic - f_fd) / std::max(f_analytic, 1e-6));
            }
            summary.checks.push_back(make_check("sld_finite_difference", true, worst.value, 1e-6,
                                                "SLD QFI with analytic vs FD perturbation"));
        }

        // Werner pipeline against the generic X pipeline at (x, x, x)
        {
            Worst worst_eigen, worst_fisher;
            for (int i = 0; i <= 25; ++i) {
                const double x = -0.95 + 0.05 * i;
                for (int k = 0; k < 46; ++k) {
                    const AccelerationParameter r(k * kQuarterPi / 45.0);
                    const WernerSpectrum ws = werner_spectrum(x, r);
                    const Spectrum4 xs = x_state_spectrum(CorrelationTriple{x, x, x}, r);

                    std::array<double, 4> lw = ws.lambda, lx = xs.lambda;
                    std::sort(lw.begin(), lw.end());
                    std::sort(lx.begin(), lx.end());
                    for (int q = 0; q < 4; ++q) worst_eigen.add(std::abs(lw[q] - lx[q]));

                    const XStateCoefficients coeffs =
                        XStateCoefficients::from(CorrelationTriple{x, x, x});
                    const DensityMatrix4 rho = accelerate(coeffs, r);
                    for (Estimand e : {Estimand::X, Estimand::R}) {
                        const Matrix4 drho = werner_state_derivative(x, r, e);
                        double f1, f2;
                        try {
                            f1 = qfi_decomposed(ws, e).total;
                            f2 = qfi_decomposed(generic_spectrum(rho, drho)).total;
                        } catch (const DegeneracyError&) {
                            // maximally mixed corner: decomposition undefined,
                            // the SLD value is reported alone there
                            f1 = qfi_sld(rho, drho);
                            f2 = f1;
                        }
                        worst_fisher.add(std::abs(f1 - f2));
                    }
                }
            }
            summary.checks.push_back(make_check("werner_consistency_eigen", true,
                                                worst_eigen.value, 1e-10,
                                                "Werner vs X-route eigenvalue multisets"));
            summary.checks.push_back(make_check("werner_consistency_fisher", true,
                                                worst_fisher.value, 1e-10,
                                                "Werner vs X-route Fisher totals"));
        }
    }

    summary.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return summary;
}

} // namespace qfisher
