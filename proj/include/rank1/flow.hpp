#pragma once

#include <functional>
#include <string>
#include <vector>

#include "rank1/shape.hpp"

namespace rank1 {

// Geodesic sphere of radius r about a point: the one exactly reducible
// higher-dimensional flow. Two principal curvatures, multiplicities
// d(n-1) and d-1.
struct SphereState {
    SpaceSpec space;
    double r = 0.0;

    int m() const { return space.real_dim() - 1; }
    double kappa1() const;  // multiplicity d(n-1)
    double kappa2() const;  // multiplicity d-1
    double mean_curvature() const;
    double norm_h2() const;
    double norm_h02() const;
    ShapeData shape() const;  // diagonal hypersurface shape
    // min intrinsic sectional curvature over principal-plane classes
    double intrinsic_K_min() const;
    double max_radius() const;  // +inf for noncompact, focal barrier otherwise
};

SphereState make_sphere_state(const SpaceSpec& space, double r);

struct FlowSample {
    double t = 0.0;
    double r = 0.0;
    double H2 = 0.0, h2 = 0.0, h02 = 0.0;
    double Q0 = 0.0, Qeps = 0.0;
    double W = 0.0, f_sigma = 0.0;
    double K_min = 0.0;
    double myers_diam = 0.0;  // pi / sqrt(K_min), inf if K_min <= 0
    double decay_ratio = 0.0;  // ||h_o||^2 / (||H||^2 + 1)^{1 - sigma}
    double muW = 0.0;          // threshold channel
    double g = 0.0;            // composite smoothing quantity (C12 slot)
};

struct FlowTrace {
    std::vector<FlowSample> samples;
    bool blew_up = false;
    double t_collapse = 0.0;   // defined when blew_up
    double collapse_bound = 0.0;  // r0 / ((n+1)d - 2) for the noncompact families
    std::string note;
};

struct SphereFlowOptions {
    double eps = 0.05;
    double sigma = 0.1;
    double safety = 0.1;      // dt <= safety / ||h||^2
    double dt_max = 1e-3;
    double t_end = 1e9;       // stop earlier at collapse
    double r_switch = 1e-4;   // below this, finish with the separable-ODE tail
    double mu_fraction = 0.5; // mu = fraction * min{1/(2 alpha m(m-1)), 1/|beta|}
    double C12 = 1.0;         // empirical slot feeding the g channel
    int stride = 1;           // record every stride-th accepted step
};

FlowTrace sphere_flow(const SpaceSpec& space, double r0, const SphereFlowOptions& opt = {});

// Independent reference: high-order quadrature of dt = -dr/||H(r)||.
struct SphereOracle {
    double t_collapse = 0.0;
    // r(t) for t in [0, t_collapse]; monotone bisection on the time integral
    std::function<double(double)> r_at;
    // time to flow from r0 down to r
    std::function<double(double)> time_to;
};
SphereOracle sphere_flow_oracle(const SpaceSpec& space, double r0);

// residuals of the reduced evolution identities along a sphere flow.
// The ||h||^2 channel checks the exact reduced identity
//   d||h||^2/dt = 2||H|| (tr h^3 + <h, R(., nu, nu, .)>),
// which follows from the radial shape-operator equation; the compressed
// tangential-contraction variant printed in the source material does not
// specialize correctly and its residual is reported separately.
struct EvolutionResiduals {
    double dH2_rel = 0.0;     // finite-difference d||H||^2/dt vs reaction
    double dh2_rel = 0.0;
    double dvol_rel = 0.0;    // volume law
    double dh2_tangential_variant_rel = 0.0;  // informational
    bool grad_bound_ok = false;  // trivially satisfied on homogeneous states
};
EvolutionResiduals evolution_consistency(const SpaceSpec& space, double r0,
                                         const std::vector<double>& times);

// ---- curve shortening on the two-sphere model of CP^1(4c) ----

struct Polyline {
    double sphere_radius = 0.5;  // 1/(2 sqrt(c))
    Eigen::Matrix<double, Eigen::Dynamic, 3> pts;  // rows on the sphere

    int size() const { return static_cast<int>(pts.rows()); }
};

Polyline geodesic_circle(double c, double r0, int vertices);
Polyline great_circle(double c, int vertices);

struct CurveFlowOptions {
    double cfl = 0.35;           // dt = cfl * min edge^2
    double t_end = 1e9;
    double stop_diameter = 1e-6;
    bool euclidean_tail = true;  // add the round-limit remaining time at stop
    int check_stride = 200;      // self-intersection check cadence
    int record_stride = 50;
    int snapshot_stride = 0;     // 0: keep no per-vertex snapshots
};

struct CurveSample {
    double t = 0.0;
    double length = 0.0;
    double diameter = 0.0;
    double kappa2_ds = 0.0;   // sum kappa^2 ds (discrete shortening rate)
    double roundness = 0.0;   // max/min osculating radius ratio
};

struct CurveSnapshot {
    double t = 0.0;
    Eigen::Matrix<double, Eigen::Dynamic, 3> pts;
};

struct CurveTrace {
    std::vector<CurveSample> samples;
    std::vector<CurveSnapshot> snapshots;  // per-vertex states at the stride
    bool collapsed = false;
    bool halted = false;       // self-intersection or vertex collision
    std::string note;
    double t_collapse = 0.0;
    Polyline final_state;
};

CurveTrace curve_flow(const Polyline& start, const CurveFlowOptions& opt = {});

// geodesic-circle collapse time on S^2(4c): (1/(4c)) log(1/cos(2 sqrt(c) r0))
double circle_collapse_time(double c, double r0);

// ---- pinching scans over sphere radii ----

struct PinchScanRow {
    double r = 0.0;
    double H2 = 0.0, h2 = 0.0, h02 = 0.0;
    double star_margin = 0.0;  // ||H||^2/(m-1) + b - ||h||^2
    double q_eps = 0.0;
    double K_min = 0.0;
    double muW = 0.0;
    double myers_diam = 0.0;
};

struct PinchScan {
    std::vector<PinchScanRow> rows;
    bool has_critical = false;
    double r_critical = 0.0;  // star_margin root, bisected to 1e-10
    double r_lo = 0.0, r_hi = 0.0;
};

PinchScan pinch_monitor_scan(const SpaceSpec& space, const std::vector<double>& radii,
                             double eps = 0.05, double mu_fraction = 0.5);

}  // namespace rank1
