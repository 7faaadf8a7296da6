#pragma once

#include <string>
#include <vector>

#include "qfisher/fisher.hpp"

namespace qfisher {

// Denominator threshold for the literal closed-form evaluations.
inline constexpr double kSingularDenominator = 1e-12;

// --- eigenvector slope functions of one 2x2 block (corrected kappa3) ---
//
// For a block with correlation parameter w (w = x - y for the outer
// {|00>,|11>} block, w = x + y for the inner {|01>,|10>} block) define
//   g(w, r) = sqrt(w^2 cos^2 r + sin^4 r).
// The closed-form eigenvector slopes are
//   mu_plus  = (sin^2 r + g) / (w cos r)   (minus-branch eigenvector)
//   mu_minus = (g - sin^2 r) / (w cos r)   (plus-branch eigenvector)
// with mu_plus * mu_minus = 1.
struct MuPair {
    double plus;
    double minus;
};

double block_g(double w, const AccelerationParameter& r);
MuPair block_mu(double w, const AccelerationParameter& r);
MuPair block_mu_dw(double w, const AccelerationParameter& r); // d/dw at fixed r
MuPair block_mu_dr(double w, const AccelerationParameter& r); // d/dr at fixed w

// --- literal transcriptions of the printed Fisher expressions ---

// Classical Fisher information for estimand z (total, since the
// eigenvectors do not depend on z).
double closed_Fz(const CorrelationTriple& t, const AccelerationParameter& r);

// Components for estimand x: classical term as printed, pure/mixture terms
// from the mu-template with d(mu)/dx.
FisherDecomposition closed_Fx_components(const CorrelationTriple& t,
                                         const AccelerationParameter& r);

// Classical part for estimand r.  The printed "sin 2r^2" factor is
// ambiguous; both readings are available.
enum class SinReading { SinOf2rSquared, SquaredSinOf2r };
double closed_Fr_classical(const CorrelationTriple& t, const AccelerationParameter& r,
                           SinReading reading);

// Components for estimand r: classical part under the squared-sin reading
// plus the mu-template with d(mu)/dr.  Report-only (sweep annotation).
FisherDecomposition closed_Fr_components(const CorrelationTriple& t,
                                         const AccelerationParameter& r);

// Werner closed forms: components for estimand x (classical as printed,
// pure/mixture with the printed d(mu_iw)/dx) and for estimand r (classical
// as printed, pure/mixture with the printed d(mu_iw)/dr).
FisherDecomposition closed_werner_Fx(double x, const AccelerationParameter& r);
FisherDecomposition closed_werner_Fr(double x, const AccelerationParameter& r);

// Printed Werner eigenvector-slope derivatives (for the errata grid).
MuPair werner_mu(double x, const AccelerationParameter& r);
MuPair werner_mu_dx_printed(double x, const AccelerationParameter& r);
MuPair werner_mu_dr_printed(double x, const AccelerationParameter& r);

// --- errata engine ---

enum class FormulaStatus { Confirmed, Erratum };

struct FormulaVerdict {
    std::string formula_id;
    FormulaStatus status = FormulaStatus::Erratum;
    double max_rel_error = 0.0;
    int grid_size = 0;
    std::string note;
};

inline const char* to_string(FormulaStatus s) {
    return s == FormulaStatus::Confirmed ? "CONFIRMED" : "ERRATUM";
}

struct ErrataGrid {
    int r_count = 46; // r = 0, pi/180, ..., pi/4
    std::vector<CorrelationTriple> x_state_sets_z;   // estimand-z grid
    std::vector<CorrelationTriple> x_state_sets_x;   // estimand-x grid
    std::vector<CorrelationTriple> x_state_sets_r;   // estimand-r grid
    std::vector<double> werner_sets_x;
    std::vector<double> werner_sets_r;
};

ErrataGrid default_errata_grid();

// One verdict per printed formula (11 ids) plus the two kappa3 variant
// rows.  Deterministic given the grid.  Values are compared against the
// spectral/SLD engine with relative tolerance 1e-6 and absolute floor 1e-9.
std::vector<FormulaVerdict> errata_report(const ErrataGrid& grid);
std::vector<FormulaVerdict> errata_report();

} // namespace qfisher
