#include "qfisher/closed_forms.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace qfisher {

namespace {

const double kSqrt2 = std::sqrt(2.0);

struct Trig {
    double c, s, c2, s2;
    double cos2r, sin2r, cos4r, sin4r;
};

Trig trig(const AccelerationParameter& r) {
    Trig t{};
    t.c = r.cos_r();
    t.s = r.sin_r();
    t.c2 = t.c * t.c;
    t.s2 = t.s * t.s;
    t.cos2r = t.c2 - t.s2;
    t.sin2r = 2.0 * t.s * t.c;
    t.cos4r = 2.0 * t.cos2r * t.cos2r - 1.0;
    t.sin4r = 2.0 * t.sin2r * t.cos2r;
    return t;
}

void check_denominator(double value, const char* what) {
    if (std::abs(value) < kSingularDenominator)
        throw SingularDenominatorError(std::string(what) + " denominator below 1e-12");
}

void check_fallback(double value, const char* what) {
    if (std::abs(value) < 1e-8)
        throw FallbackRegionError(std::string(what) +
                                  " inside the fallback region; mu formulas singular");
}

// Closed-form eigenvalues in label order (1,2) = outer -/+, (3,4) = inner +/-.
std::array<double, 4> closed_lambda(const CorrelationTriple& t, const Trig& tr) {
    const double w = t.x - t.y;
    const double u = t.x + t.y;
    const double kappa1 = 2.0 * kSqrt2 * std::sqrt(w * w * tr.c2 + tr.s2 * tr.s2);
    const double kappa2 = std::sqrt(u * u * tr.c2 + tr.s2 * tr.s2);
    return {(4.0 + 2.0 * (1.0 + tr.cos2r) * t.z - kSqrt2 * kappa1) / 16.0,
            (4.0 + 2.0 * (1.0 + tr.cos2r) * t.z + kSqrt2 * kappa1) / 16.0,
            (2.0 - (1.0 + tr.cos2r) * t.z + 2.0 * kappa2) / 8.0,
            (2.0 - (1.0 + tr.cos2r) * t.z - 2.0 * kappa2) / 8.0};
}

double pure_term(double mu, double dmu) {
    const double denom = 1.0 + mu * mu;
    return dmu * dmu / (denom * denom);
}

// Mixture contribution of one 2x2 block (grouped two-level form).
double mixture_block(double la, double lb, double mua, double mub, double dmua, double dmub) {
    const double denom = la + lb;
    if (denom <= kEigenvalueCutoff) return 0.0;
    const double cross = (mua + mub) * (mua + mub) / ((1.0 + mua * mua) * (1.0 + mub * mub));
    return 8.0 * la * lb / denom * cross * (pure_term(mua, dmua) + pure_term(mub, dmub));
}

double werner_gamma(double x, const Trig& tr) {
    return std::sqrt(16.0 * x * x - 4.0 * (1.0 - 4.0 * x * x) * tr.cos2r + tr.cos4r + 3.0);
}

std::array<double, 4> werner_lambda(double x, const Trig& tr, double gamma) {
    return {0.25 * tr.c2 * (1.0 + x), 0.25 * (1.0 + tr.s2 + tr.c2 * x),
            0.25 * (1.0 - x * tr.c2 - gamma / (2.0 * kSqrt2)),
            0.25 * (1.0 - x * tr.c2 + gamma / (2.0 * kSqrt2))};
}

} // namespace

double block_g(double w, const AccelerationParameter& r) {
    const double c = r.cos_r();
    const double s = r.sin_r();
    return std::sqrt(w * w * c * c + s * s * s * s);
}

MuPair block_mu(double w, const AccelerationParameter& r) {
    const double c = r.cos_r();
    const double s2 = r.sin_r() * r.sin_r();
    const double g = block_g(w, r);
    MuPair m{};
    m.plus = (s2 + g) / (w * c);
    m.minus = w * c / (g + s2); // rationalized (g - s^2)/(w c)
    return m;
}

MuPair block_mu_dw(double w, const AccelerationParameter& r) {
    const double c = r.cos_r();
    const double s2 = r.sin_r() * r.sin_r();
    const double g = block_g(w, r);
    MuPair m{};
    m.plus = -s2 * (s2 + g) / (g * w * w * c);
    m.minus = s2 * c / (g * (g + s2)); // rationalized s^2 (g - s^2) / (g w^2 c)
    return m;
}

MuPair block_mu_dr(double w, const AccelerationParameter& r) {
    const Trig tr = trig(r);
    const double g = block_g(w, r);
    const double w2 = w * w;
    MuPair m{};
    m.plus = (tr.sin2r * tr.c * (2.0 * g + 2.0 * tr.s2 - w2) / (2.0 * g) +
              tr.s * (tr.s2 + g)) /
             (w * tr.c2);
    m.minus = (tr.sin2r * tr.c * (2.0 * tr.s2 - w2 - 2.0 * g) / (2.0 * g) +
               tr.s * (g - tr.s2)) /
              (w * tr.c2);
    return m;
}

double closed_Fz(const CorrelationTriple& t, const AccelerationParameter& r) {
    const Trig tr = trig(r);
    const double w = t.x - t.y;
    const double u = t.x + t.y;
    const double k1s = 4.0 * w * w - 4.0 * (1.0 - w * w) * tr.cos2r + tr.cos4r + 3.0;
    const double k2s = u * u * tr.c2 + tr.s2 * tr.s2;

    const double a = 4.0 + 2.0 * (1.0 + tr.cos2r) * t.z;
    const double b = 2.0 - (1.0 + tr.cos2r) * t.z;
    const double den1 = a * a - 2.0 * k1s;
    const double den2 = b * b - 4.0 * k2s;
    check_denominator(den1, "first bracket");
    check_denominator(den2, "second bracket");

    const double prefactor = (1.0 + tr.cos2r) * (1.0 + tr.cos2r) / 4.0;
    return prefactor * ((8.0 + 4.0 * (1.0 + tr.cos2r) * t.z) / den1 + b / den2);
}

FisherDecomposition closed_Fx_components(const CorrelationTriple& t,
                                         const AccelerationParameter& r) {
    const Trig tr = trig(r);
    const double w = t.x - t.y;
    const double u = t.x + t.y;
    check_fallback(w, "x - y");
    check_fallback(u, "x + y");

    const double k1s = 4.0 * w * w - 4.0 * (1.0 - w * w) * tr.cos2r + tr.cos4r + 3.0;
    const double k2s = u * u * tr.c2 + tr.s2 * tr.s2;
    check_denominator(k1s, "kappa1^2");
    check_denominator(k2s, "kappa2^2");

    FisherDecomposition out;

    // classical part as printed, including the (x - y) linear factor and the
    // 2 - 2(1+cos2r)z second denominator
    const double a = 4.0 + 2.0 * (1.0 + tr.cos2r) * t.z;
    const double den1 = a * a - 2.0 * k1s;
    const double b2 = 2.0 - 2.0 * (1.0 + tr.cos2r) * t.z;
    const double den2 = b2 * b2 - 4.0 * k2s;
    check_denominator(den1, "first brace");
    check_denominator(den2, "second brace");
    out.classical =
        w * (1.0 + tr.cos2r) * (1.0 + tr.cos2r) / k1s * ((2.0 + (1.0 + tr.cos2r) * t.z) / den1) +
        u * u * tr.c2 * tr.c2 / k2s * ((2.0 - (1.0 + tr.cos2r) * t.z) / den2);

    // pure and mixture parts from the mu template with d(mu)/dx
    const std::array<double, 4> lam = closed_lambda(t, tr);
    const MuPair mo = block_mu(w, r);
    const MuPair mi = block_mu(u, r);
    const MuPair dmo = block_mu_dw(w, r); // d/dx = d/dw on the outer block
    const MuPair dmi = block_mu_dw(u, r); // d/dx = d/du on the inner block
    const double mu[4] = {mo.plus, mo.minus, mi.plus, mi.minus};
    const double dmu[4] = {dmo.plus, dmo.minus, dmi.plus, dmi.minus};

    out.pure_part = 0.0;
    for (int i = 0; i < 4; ++i) out.pure_part += 4.0 * lam[i] * pure_term(mu[i], dmu[i]);

    out.mixture = mixture_block(lam[0], lam[1], mu[0], mu[1], dmu[0], dmu[1]) +
                  mixture_block(lam[2], lam[3], mu[2], mu[3], dmu[2], dmu[3]);

    out.total = out.classical + out.pure_part - out.mixture;
    return out;
}

double closed_Fr_classical(const CorrelationTriple& t, const AccelerationParameter& r,
                           SinReading reading) {
    const Trig tr = trig(r);
    const double w = t.x - t.y;
    const double u = t.x + t.y;
    const double k1s = 4.0 * w * w - 4.0 * (1.0 - w * w) * tr.cos2r + tr.cos4r + 3.0;
    const double k2s = u * u * tr.c2 + tr.s2 * tr.s2;
    const double k1 = std::sqrt(k1s);
    const double k2 = std::sqrt(k2s);
    check_denominator(k1s, "kappa1^2");
    check_denominator(k2s, "kappa2^2");

    const std::array<double, 4> lam = closed_lambda(t, tr);
    for (double l : lam)
        if (l < kSingularDenominator)
            throw SingularDenominatorError("eigenvalue below 1e-12 in the classical r-part");

    const double sin_factor = reading == SinReading::SquaredSinOf2r
                                  ? tr.sin2r * tr.sin2r
                                  : std::sin(2.0 * r.r() * r.r());

    const double br1 = kSqrt2 * t.z * k1 * tr.sin2r + 2.0 * (1.0 - w * w) * tr.sin2r - tr.sin4r;
    const double br2 = kSqrt2 * t.z * k1 * tr.sin2r - 2.0 * (1.0 - w * w) * tr.sin2r + tr.sin4r;
    const double br3 = u * u - 2.0 * tr.s2 + 2.0 * t.z * k2;
    const double br4 = u * u - 2.0 * tr.s2 - 2.0 * t.z * k2;

    return br1 * br1 / (2.0 * lam[0] * k1s) + br2 * br2 / (2.0 * lam[1] * k1s) +
           sin_factor * br3 * br3 / (lam[2] * k2s) + sin_factor * br4 * br4 / (lam[3] * k2s);
}

FisherDecomposition closed_Fr_components(const CorrelationTriple& t,
                                         const AccelerationParameter& r) {
    const Trig tr = trig(r);
    const double w = t.x - t.y;
    const double u = t.x + t.y;
    check_fallback(w, "x - y");
    check_fallback(u, "x + y");

    FisherDecomposition out;
    out.classical = closed_Fr_classical(t, r, SinReading::SquaredSinOf2r);

    const std::array<double, 4> lam = closed_lambda(t, tr);
    const MuPair mo = block_mu(w, r);
    const MuPair mi = block_mu(u, r);
    const MuPair dmo = block_mu_dr(w, r);
    const MuPair dmi = block_mu_dr(u, r);
    const double mu[4] = {mo.plus, mo.minus, mi.plus, mi.minus};
    const double dmu[4] = {dmo.plus, dmo.minus, dmi.plus, dmi.minus};

    for (int i = 0; i < 4; ++i) out.pure_part += 4.0 * lam[i] * pure_term(mu[i], dmu[i]);
    out.mixture = mixture_block(lam[0], lam[1], mu[0], mu[1], dmu[0], dmu[1]) +
                  mixture_block(lam[2], lam[3], mu[2], mu[3], dmu[2], dmu[3]);
    out.total = out.classical + out.pure_part - out.mixture;
    return out;
}

MuPair werner_mu(double x, const AccelerationParameter& r) {
    const Trig tr = trig(r);
    check_fallback(x, "Werner x");
    const double gamma = werner_gamma(x, tr);
    MuPair m{};
    m.plus = (2.0 - 2.0 * tr.cos2r + kSqrt2 * gamma) / (8.0 * x * tr.c);  // mu_3w
    m.minus = (2.0 - 2.0 * tr.cos2r - kSqrt2 * gamma) / (8.0 * x * tr.c); // mu_4w
    return m;
}

MuPair werner_mu_dx_printed(double x, const AccelerationParameter& r) {
    const Trig tr = trig(r);
    check_fallback(x, "Werner x");
    const double gamma = werner_gamma(x, tr);
    check_denominator(gamma, "gamma");
    const double common = 4.0 / (kSqrt2 * gamma) * (1.0 + tr.cos2r);
    MuPair m{};
    m.plus = -(1.0 / tr.c) *
             (common - (2.0 - 2.0 * tr.cos2r + kSqrt2 * gamma) / (8.0 * x * x)); // mu'_3w
    m.minus = (1.0 / tr.c) *
              (common - (2.0 - 2.0 * tr.cos2r - kSqrt2 * gamma) / (8.0 * x * x)); // mu'_4w
    return m;
}

MuPair werner_mu_dr_printed(double x, const AccelerationParameter& r) {
    const Trig tr = trig(r);
    check_fallback(x, "Werner x");
    const double gamma = werner_gamma(x, tr);
    check_denominator(gamma, "gamma");
    const double tan_r = tr.s / tr.c;
    const double radical = (2.0 * (1.0 - 4.0 * x * x) * tr.sin2r - tr.sin4r) / (kSqrt2 * gamma);
    const double sec_over = 1.0 / (tr.c * 2.0 * x);
    MuPair m{};
    m.plus = sec_over * (tr.sin2r + radical - 0.5 * (1.0 - tr.cos2r) -
                         gamma * tan_r / (2.0 * kSqrt2)); // d(mu_3w)/dr
    m.minus = -sec_over * (tr.sin2r - radical + 0.5 * (1.0 - tr.cos2r) -
                           gamma * tan_r / (2.0 * kSqrt2)); // d(mu_4w)/dr
    return m;
}

FisherDecomposition closed_werner_Fx(double x, const AccelerationParameter& r) {
    const Trig tr = trig(r);
    check_fallback(x, "Werner x");
    const double gamma = werner_gamma(x, tr);
    check_denominator(gamma, "gamma");

    FisherDecomposition out;

    const double den1 = 4.0 * (1.0 + x);
    const double den2 = 4.0 * (1.0 + tr.s2 + x * tr.c2);
    const double den3 = gamma * gamma * (1.0 - x * tr.c2 - gamma / (2.0 * kSqrt2));
    const double den4 = gamma * gamma * (1.0 - x * tr.c2 + gamma / (2.0 * kSqrt2));
    check_denominator(den1, "1 + x");
    check_denominator(den2, "1 + sin^2 r + x cos^2 r");
    check_denominator(den3, "third term");
    check_denominator(den4, "fourth term");

    const double num_a = gamma * tr.c2 + 8.0 * x * (1.0 + tr.cos2r);
    const double num_b = gamma * tr.c2 - 8.0 * x * (1.0 + tr.cos2r);
    out.classical =
        tr.c2 / den1 + tr.c2 * tr.c2 / den2 + num_a * num_a / den3 + num_b * num_b / den4;

    const std::array<double, 4> lam = werner_lambda(x, tr, gamma);
    const MuPair mu = werner_mu(x, r);
    const MuPair dmu = werner_mu_dx_printed(x, r);

    out.pure_part =
        4.0 * (lam[2] * pure_term(mu.plus, dmu.plus) + lam[3] * pure_term(mu.minus, dmu.minus));
    out.mixture = mixture_block(lam[2], lam[3], mu.plus, mu.minus, dmu.plus, dmu.minus);
    out.total = out.classical + out.pure_part - out.mixture;
    return out;
}

FisherDecomposition closed_werner_Fr(double x, const AccelerationParameter& r) {
    const Trig tr = trig(r);
    check_fallback(x, "Werner x");
    const double gamma = werner_gamma(x, tr);
    check_denominator(gamma, "gamma");

    FisherDecomposition out;

    const double den3 = 4.0 - 4.0 * x * tr.c2 - kSqrt2 * gamma;
    const double den4 = 4.0 - 4.0 * x * tr.c2 + kSqrt2 * gamma;
    check_denominator(den3, "third term");
    check_denominator(den4, "fourth term");

    const double br3 =
        kSqrt2 * x * gamma * tr.sin2r + 2.0 * (1.0 - 4.0 * x * x) * tr.sin2r + tr.sin4r;
    const double br4 =
        kSqrt2 * x * gamma * tr.sin2r + 2.0 * (1.0 - 4.0 * x * x) * tr.sin2r - tr.sin4r;
    out.classical = (1.0 + x) * tr.s2 + (1.0 - x) / 4.0 * tr.sin2r +
                    br3 * br3 / (2.0 * gamma * gamma * den3) +
                    br4 * br4 / (2.0 * gamma * gamma * den4);

    const std::array<double, 4> lam = werner_lambda(x, tr, gamma);
    const MuPair mu = werner_mu(x, r);
    const MuPair dmu = werner_mu_dr_printed(x, r);

    out.pure_part =
        4.0 * (lam[2] * pure_term(mu.plus, dmu.plus) + lam[3] * pure_term(mu.minus, dmu.minus));
    out.mixture = mixture_block(lam[2], lam[3], mu.plus, mu.minus, dmu.plus, dmu.minus);
    out.total = out.classical + out.pure_part - out.mixture;
    return out;
}

// --- errata engine ---

namespace {

double relative_error(double closed, double engine) {
    if (!std::isfinite(closed)) return std::numeric_limits<double>::infinity();
    return std::abs(closed - engine) / std::max(std::abs(engine), 1e-9);
}

struct GridAccumulator {
    double worst = 0.0;
    int points = 0;

    void add(double closed, double engine) {
        worst = std::max(worst, relative_error(closed, engine));
        ++points;
    }

    void add_raw(double value) {
        worst = std::max(worst, value);
        ++points;
    }
};

FormulaVerdict make_verdict(const std::string& id, const GridAccumulator& acc,
                            const std::string& erratum_note) {
    FormulaVerdict v;
    v.formula_id = id;
    v.max_rel_error = acc.worst;
    v.grid_size = acc.points;
    if (acc.worst < 1e-6) {
        v.status = FormulaStatus::Confirmed;
        v.note = "agrees with the spectral engine over the grid";
    } else {
        v.status = FormulaStatus::Erratum;
        v.note = erratum_note;
    }
    return v;
}

// Residual test for one kappa3 variant: eigenvectors built from the printed
// mu_{3,4} with this kappa3 must satisfy rho psi = lambda psi for one of the
// inner-block eigenvalues.
double kappa3_variant_residual(const CorrelationTriple& t, const AccelerationParameter& r,
                               bool squared) {
    const Trig tr = trig(r);
    const double u = t.x + t.y;
    const double radicand = squared
                                ? 4.0 * u * u - 4.0 * (1.0 - u * u) * tr.cos2r + tr.cos4r + 3.0
                                : 4.0 * u - 4.0 * (1.0 - u * u) * tr.cos2r + tr.cos4r + 3.0;
    if (radicand < 0.0) return std::numeric_limits<double>::infinity();
    const double kappa3 = std::sqrt(radicand);

    const double sec_r = 1.0 / tr.c;
    const double mu3 =
        sec_r / (4.0 * u) * (2.0 * (1.0 - tr.cos2r) + kSqrt2 * kappa3);
    const double mu4 =
        -sec_r / (4.0 * u) * (2.0 * (1.0 - tr.cos2r) - kSqrt2 * kappa3);

    const Matrix4 rho = accelerate(XStateCoefficients::from(t), r).matrix();
    const std::array<double, 4> lam = closed_lambda(t, tr);

    // printed shapes: psi3 = (0, -mu3, 1, 0), psi4 = (0, mu4, 1, 0), normalized
    const double slopes[2] = {-mu3, mu4};
    double worst = 0.0;
    for (double slope : slopes) {
        Vector4 psi = Vector4::Zero();
        const double norm = std::sqrt(slope * slope + 1.0);
        psi(1) = slope / norm;
        psi(2) = 1.0 / norm;
        double best = std::numeric_limits<double>::infinity();
        for (int i = 2; i < 4; ++i) {
            const Vector4 resid = rho * psi - lam[i] * psi;
            best = std::min(best, resid.norm());
        }
        worst = std::max(worst, best);
    }
    return worst;
}

} // namespace

ErrataGrid default_errata_grid() {
    ErrataGrid g;
    g.r_count = 46;
    g.x_state_sets_z = {{-0.3, -0.6, -0.3}, {-0.3, -0.6, -0.5}, {-0.3, -0.6, -0.6}};
    g.x_state_sets_x = {{-0.4, -0.6, -0.5}, {-0.5, -0.6, -0.5}, {-0.7, -0.6, -0.5}};
    g.x_state_sets_r = {{-0.2, -0.6, -0.5}, {-0.4, -0.6, -0.5}, {-0.5, -0.6, -0.5}};
    g.werner_sets_x = {-0.9, -0.8, -0.7, -0.6, -0.5};
    g.werner_sets_r = {-0.9, -0.8, -0.7, -0.6};
    return g;
}

std::vector<FormulaVerdict> errata_report() { return errata_report(default_errata_grid()); }

std::vector<FormulaVerdict> errata_report(const ErrataGrid& grid) {
    std::vector<double> r_values;
    for (int k = 0; k < grid.r_count; ++k)
        r_values.push_back(k * (std::numbers::pi / 4.0) / (grid.r_count - 1));

    GridAccumulator eq14, eq15_fc, eq15_fp, eq15_fm, eq16_sq, eq16_lit;
    GridAccumulator eq19_fc, eq19_fp, eq19_fm, eq20, eq21, eq22;
    GridAccumulator k3_printed, k3_squared;

    for (const CorrelationTriple& t : grid.x_state_sets_z) {
        for (double rv : r_values) {
            const AccelerationParameter r(rv);
            const Spectrum4 spec = x_state_spectrum(t, r);
            eq14.add(closed_Fz(t, r), qfi_decomposed(spec, Estimand::Z).classical);
        }
    }

    for (const CorrelationTriple& t : grid.x_state_sets_x) {
        for (double rv : r_values) {
            const AccelerationParameter r(rv);
            const Spectrum4 spec = x_state_spectrum(t, r);
            const FisherDecomposition engine = qfi_decomposed(spec, Estimand::X);
            const FisherDecomposition closed = closed_Fx_components(t, r);
            eq15_fc.add(closed.classical, engine.classical);
            eq15_fp.add(closed.pure_part, engine.pure_part);
            eq15_fm.add(closed.mixture, engine.mixture);

            k3_printed.add_raw(kappa3_variant_residual(t, r, false));
            k3_squared.add_raw(kappa3_variant_residual(t, r, true));
        }
    }

    for (const CorrelationTriple& t : grid.x_state_sets_r) {
        for (double rv : r_values) {
            const AccelerationParameter r(rv);
            const Spectrum4 spec = x_state_spectrum(t, r);
            const double engine = qfi_decomposed(spec, Estimand::R).classical;
            eq16_sq.add(closed_Fr_classical(t, r, SinReading::SquaredSinOf2r), engine);
            eq16_lit.add(closed_Fr_classical(t, r, SinReading::SinOf2rSquared), engine);
        }
    }

    for (double x : grid.werner_sets_x) {
        for (double rv : r_values) {
            const AccelerationParameter r(rv);
            const WernerSpectrum spec = werner_spectrum(x, r);
            const FisherDecomposition engine = qfi_decomposed(spec, Estimand::X);
            const FisherDecomposition closed = closed_werner_Fx(x, r);
            eq19_fc.add(closed.classical, engine.classical);
            eq19_fp.add(closed.pure_part, engine.pure_part);
            eq19_fm.add(closed.mixture, engine.mixture);

            // printed mu' against the derivative of the production mu,
            // compared on squares (only mu'^2 enters the Fisher formulas)
            const MuPair printed = werner_mu_dx_printed(x, r);
            const MuPair true_d = block_mu_dw(2.0 * x, r); // d/dx = 2 d/du
            eq20.add(printed.plus * printed.plus, 4.0 * true_d.plus * true_d.plus);
            eq20.add(printed.minus * printed.minus, 4.0 * true_d.minus * true_d.minus);
        }
    }

    for (double x : grid.werner_sets_r) {
        for (double rv : r_values) {
            const AccelerationParameter r(rv);
            const WernerSpectrum spec = werner_spectrum(x, r);
            const double engine = qfi_decomposed(spec, Estimand::R).classical;
            eq22.add(closed_werner_Fr(x, r).classical, engine);

            const MuPair printed = werner_mu_dr_printed(x, r);
            const MuPair true_d = block_mu_dr(2.0 * x, r);
            eq21.add(printed.plus * printed.plus, true_d.plus * true_d.plus);
            eq21.add(printed.minus * printed.minus, true_d.minus * true_d.minus);
        }
    }

    std::vector<FormulaVerdict> verdicts;
    verdicts.push_back(make_verdict("Eq14", eq14, "disagrees with engine F_c for estimand z"));
    verdicts.push_back(make_verdict(
        "Eq15_Fc", eq15_fc,
        "first term: printed factor (x-y) should read 8(x-y)^2; second term: denominator "
        "(2-2(1+cos2r)z)^2 should read (2-(1+cos2r)z)^2 (corrected form verified against the "
        "engine)"));
    verdicts.push_back(make_verdict("Eq15_Fp", eq15_fp,
                                    "disagrees with engine F_p for estimand x"));
    verdicts.push_back(make_verdict("Eq15_Fm", eq15_fm,
                                    "disagrees with engine F_m for estimand x"));
    {
        FormulaVerdict v;
        v.formula_id = "Eq16";
        v.grid_size = eq16_sq.points;
        const double best = std::min(eq16_sq.worst, eq16_lit.worst);
        v.max_rel_error = best;
        std::ostringstream note;
        note << "readings: sin^2(2r) err=" << eq16_sq.worst << ", sin(2r^2) err="
             << eq16_lit.worst;
        if (best < 1e-6) {
            v.status = FormulaStatus::Confirmed;
            note << "; best reading agrees with the engine";
        } else {
            v.status = FormulaStatus::Erratum;
            note << "; under both readings the outer terms are 16x and the inner terms 64x the "
                    "engine (dlambda/dr)^2/lambda, with the inner z*kappa2 sign pairing swapped "
                    "(corrected form verified against the engine)";
        }
        v.note = note.str();
        verdicts.push_back(v);
    }
    verdicts.push_back(make_verdict(
        "Eq19_Fc", eq19_fc,
        "printed 8x(1+cos2r) should read 4*sqrt2*x(1+cos2r) and the third/fourth terms carry an "
        "extra factor 4 relative to (dlambda/dx)^2/lambda (corrected form verified against the "
        "engine)"));
    verdicts.push_back(make_verdict(
        "Eq19_Fp", eq19_fp,
        "inherits the mu'_4w defect of Eq20_mu_primes; with the true d(mu_4w)/dx the template "
        "matches the engine"));
    verdicts.push_back(make_verdict(
        "Eq19_Fm", eq19_fm,
        "two defects: inherits the mu'_4w error of Eq20_mu_primes, and the cross factor "
        "(mu_3w+mu_4w)^2 should read (mu_3w-mu_4w)^2 under the published sign convention (both "
        "eigenvectors carry -mu_iw, mu_3w mu_4w = -1); with both fixes the template matches "
        "the engine"));
    verdicts.push_back(make_verdict(
        "Eq20_mu_primes", eq20,
        "printed mu'_3w equals -d(mu_3w)/dx (squares agree), but in mu'_4w the "
        "4(1+cos2r)/(sqrt2 gamma) term enters with the wrong sign relative to d(mu_4w)/dx of "
        "the published slope mu_4w = (2-2cos2r-sqrt2 gamma)/(8x cos r)"));
    verdicts.push_back(make_verdict(
        "Eq21_mu_primes", eq21,
        "bracket disagrees with d(mu_iw)/dr: the printed -(1-cos2r)/2 term should read "
        "+sin^2(r)tan(r) for both i, and the gamma tan(r)/(2 sqrt2) term should carry the sign "
        "of the radical term (+ for i=3, - for i=4)"));
    verdicts.push_back(make_verdict(
        "Eq22", eq22,
        "second term: printed (1-x)sin(2r)/4 should read (1-x)^2 sin^2(2r)/(4(1+sin^2 r+x cos^2 "
        "r)); third term bracket: +2(1-4x^2)sin2r should read -2(1-4x^2)sin2r (corrected form "
        "verified against the engine)"));

    // kappa3 variant rows: max_rel_error holds the eigen-residual
    {
        FormulaVerdict v;
        v.formula_id = "kappa3_printed";
        v.max_rel_error = k3_printed.worst;
        v.grid_size = k3_printed.points;
        v.status = k3_printed.worst < 1e-6 ? FormulaStatus::Confirmed : FormulaStatus::Erratum;
        v.note = v.status == FormulaStatus::Confirmed
                     ? "printed linear 4(x+y) term reproduces the eigenvectors"
                     : "eigenvector residual rejects the printed linear 4(x+y) term (negative "
                       "radicand on part of the grid)";
        verdicts.push_back(v);
    }
    {
        FormulaVerdict v;
        v.formula_id = "kappa3_squared";
        v.max_rel_error = k3_squared.worst;
        v.grid_size = k3_squared.points;
        v.status = k3_squared.worst < 1e-6 ? FormulaStatus::Confirmed : FormulaStatus::Erratum;
        v.note = v.status == FormulaStatus::Confirmed
                     ? "4(x+y)^2 variant reproduces the eigenvectors; used in production"
                     : "4(x+y)^2 variant rejected by the eigenvector residual";
        verdicts.push_back(v);
    }

    return verdicts;
}

} // namespace qfisher
