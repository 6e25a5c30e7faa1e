#pragma once

#include <optional>
#include <vector>

#include "rank1/ambient.hpp"
#include "rank1/frames.hpp"

namespace rank1 {

// Second fundamental form at a point: k symmetric m x m component matrices
// h^alpha in an orthonormal frame, plus every scalar built from them.
struct ShapeData {
    int m = 0, k = 0;
    std::vector<MatrixXd> h;
    VectorXd H;        // traces
    double h2 = 0.0;   // ||h||^2
    double H2 = 0.0;   // ||H||^2
    double h02 = 0.0;  // ||h_o||^2 = ||h||^2 - ||H||^2/m

    // splitting in a first-kind frame; defined only when H != 0
    bool has_type1 = false;
    double h1o2 = 0.0;     // ||h_o along H||^2
    double hminus2 = 0.0;  // remaining traceless norm
    double h1_2 = 0.0;     // ||h^{m+1}||^2
};

ShapeData derive_scalars(std::vector<MatrixXd> h);
// h^alpha = T^alpha + (H^alpha/m) id for traceless T
ShapeData shape_from_traceless(const std::vector<MatrixXd>& T, const VectorXd& H);
ShapeData hypersurface_shape(const VectorXd& eigenvalues);

// samplers (all deterministic in the SampleRng stream)
std::vector<MatrixXd> random_sff(int m, int k, SampleRng& rng);
std::vector<MatrixXd> random_traceless(int m, int k, SampleRng& rng);
ShapeData sample_shape(int m, int k, SampleRng& rng);
ShapeData sample_traceless_shape(int m, int k, SampleRng& rng);  // H = 0
// projects onto ||h||^2 = a ||H||^2 + b by rescaling the trace part;
// requires a > 1/m; throws if the constraint surface is unreachable
ShapeData sample_constrained_shape(int m, int k, double a, double b, SampleRng& rng);
// satisfies ||h||^2 <= a_eps ||H||^2 + b_eps with strict slack
ShapeData sample_pinched_shape(int m, int k, double a_eps, double b_eps, SampleRng& rng);

// ---- derived quantities ----

struct R12 {
    double r1;        // sum <h^a,h^b>^2 + sum ||[h^a,h^b]||^2
    double r2;        // || sum_a H^a h^a ||^2
    double r2_split;  // ||h_1||^2 ||H||^2 (0 when H = 0)
};
R12 r1_r2(const ShapeData& s);

double z_quantity(const ShapeData& s);

// reaction terms of the pinching-quantity evolution, evaluated exactly from
// the ambient curvature in the bases of `pair`
struct ReactionTerms {
    double P_I = 0.0;
    double P_II = 0.0;   // at the supplied a
    double P_III = 0.0;
    double P_total = 0.0;
    double R1 = 0.0, R2 = 0.0;
    double R = 0.0;      // 2R1 - 2aR2 + P_total
};
ReactionTerms reaction_terms(const PointAlgebra& alg, const SubspacePair& pair,
                             const ShapeData& s, double a);

// slow reference evaluation by explicit component sums (tests)
ReactionTerms reaction_terms_reference(const PointAlgebra& alg, const SubspacePair& pair,
                                       const ShapeData& s, double a);

// ---- pinching constants and functionals ----

struct PinchConstants {
    SpaceSpec space;
    int m = 0, k = 0;
    double eps = 0.0;
    double sigma = 0.0;

    static PinchConstants for_space(const SpaceSpec& space, int m, int k, double eps,
                                    double sigma);

    double a() const { return 1.0 / (m - 1); }
    double b() const;
    double a_eps() const { return 1.0 / (m - 1 + eps); }
    double b_eps() const { return (space.sign > 0 ? 1.0 - eps : 1.0 + eps) * b(); }
    double alpha() const;
    double beta() const { return b(); }
    bool alpha_positive() const { return alpha() > 0.0; }
    double W(double H2) const { return alpha() * H2 + beta(); }

    double C1() const;
    double C4() const;
    double C7() const;
    double C8() const;
    double C13(double C12) const;
    double C14(double C12) const;

    // implied lower bound on ||H||^2 when b < 0
    double H2_lower_bound() const { return b() < 0.0 ? -b() * m * (m - 1) : 0.0; }
};

struct PinchReport {
    double q0_margin = 0.0;  // ||H||^2/(m-1) + b - ||h||^2; condition holds iff > 0
    bool star_satisfied = false;
    double q_eps = 0.0;
    double W = 0.0;
    bool W_positive = false;
    bool alpha_defined = false;
    double f_sigma = 0.0;  // NaN when undefined
    double f0 = 0.0;
    double H2_lower_bound = 0.0;
};

PinchReport pinch_eval(const ShapeData& s, const PinchConstants& pc);

// composite smoothing quantities; C12 and C5 have no printed formulas and
// enter as supplied ledger values
double g_quantity(const ShapeData& s, const PinchConstants& pc, double C12);
// f = ||grad H||^2 + (1/C4)(C5+1) g - eta ||H||^4
double f_quantity(double gradH2, double g, const PinchConstants& pc, double C5, double eta,
                  double H2);

struct ConstrainedReactionBounds {
    double lhs = 0.0;   // 2R1 - 2aR2
    double rhs1 = 0.0;  // unconditional bound (type-I splitting)
    double rhs2 = 0.0;  // bound on the constraint surface
    bool rhs2_valid = false;
};
// rhs2 requires a > 1/m and ||h||^2 = a||H||^2 + b; throws invalid_argument
// when ma - 1 = 0 is hit for the second form
ConstrainedReactionBounds constrained_reaction_bounds(const ShapeData& s, double a, double b, bool want_rhs2);

// effective gradient-coefficient profile entries
double omega_term_coefficient(int d, int m);     // omega-term coefficient
double gradient_gap_coefficient(int d, int m, double eps);
double alpha_k2_formula(int d, int m);              // ((11-2d)m-19)/(9m(m+2))

}  // namespace rank1
