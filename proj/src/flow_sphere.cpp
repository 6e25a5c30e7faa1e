#include <cmath>
#include <limits>

#include "rank1/flow.hpp"

namespace rank1 {

namespace {

constexpr double kPi = 3.14159265358979323846;

void check_flow_family(const SpaceSpec& space) {
    if (space.family == Family::O)
        throw std::domain_error("pointwise-only family: no reduced flows for the octonionic plane");
}

double cot(double x) { return std::cos(x) / std::sin(x); }

}  // namespace

SphereState make_sphere_state(const SpaceSpec& space, double r) {
    check_flow_family(space);
    SphereState st{space, r};
    if (!(r > 0.0)) throw std::invalid_argument("sphere radius must be positive");
    if (r >= st.max_radius())
        throw std::invalid_argument("sphere radius beyond the focal barrier of the compact model");
    return st;
}

double SphereState::max_radius() const {
    if (space.sign < 0) return std::numeric_limits<double>::infinity();
    return kPi / (4.0 * std::sqrt(space.c));
}

double SphereState::kappa1() const {
    const double sc = std::sqrt(space.c);
    return space.sign < 0 ? sc / std::tanh(sc * r) : sc * cot(sc * r);
}

double SphereState::kappa2() const {
    const double sc = std::sqrt(space.c);
    return space.sign < 0 ? 2.0 * sc / std::tanh(2.0 * sc * r) : 2.0 * sc * cot(2.0 * sc * r);
}

double SphereState::mean_curvature() const {
    const int d = space.d();
    return d * (space.n - 1) * kappa1() + (d - 1) * kappa2();
}

double SphereState::norm_h2() const {
    const int d = space.d();
    const double k1 = kappa1(), k2 = kappa2();
    return d * (space.n - 1) * k1 * k1 + (d - 1) * k2 * k2;
}

double SphereState::norm_h02() const {
    // cancellation-free closed form: only the eigenvalue gap contributes
    const int d = space.d();
    const double gap = kappa1() - kappa2();
    return static_cast<double>(d * (space.n - 1)) * (d - 1) / m() * gap * gap;
}

ShapeData SphereState::shape() const {
    const int d = space.d();
    VectorXd lam(m());
    int idx = 0;
    for (int i = 0; i < d * (space.n - 1); ++i) lam(idx++) = kappa1();
    for (int i = 0; i < d - 1; ++i) lam(idx++) = kappa2();
    return hypersurface_shape(lam);
}

double SphereState::intrinsic_K_min() const {
    // Gauss equation: K = Kbar + det of the shape compression. The plane
    // minimizing the compression determinant carries the two smallest
    // principal curvatures; the ambient term is bounded by the extreme
    // sectional values. Exact for the noncompact families (the extremes are
    // attained on one plane), a lower bound on the compact side.
    if (m() < 2) throw std::domain_error("no 2-planes on a 1-dimensional sphere");
    const double k1 = kappa1(), k2 = kappa2();
    const int mult1 = space.d() * (space.n - 1);
    const int mult2 = space.d() - 1;
    double det_min;
    if (k1 <= k2) {
        det_min = mult1 >= 2 ? k1 * k1 : k1 * k2;
    } else {
        det_min = mult2 >= 2 ? k2 * k2 : k1 * k2;
    }
    const double amb_min = space.sign > 0 ? space.c : -4.0 * space.c;
    return amb_min + det_min;
}

namespace {

FlowSample monitor_sample(const SphereState& st, double t, const PinchConstants& pc,
                          double mu_fraction, double C12) {
    FlowSample s;
    s.t = t;
    s.r = st.r;
    const double H = st.mean_curvature();
    s.H2 = H * H;
    s.h2 = st.norm_h2();
    s.h02 = st.norm_h02();
    s.Q0 = s.h2 - s.H2 / (st.m() - 1) - pc.b();
    s.Qeps = s.h2 - pc.a_eps() * s.H2 - pc.b_eps();
    s.W = pc.W(s.H2);
    s.f_sigma = s.W > 0.0 ? s.h02 / std::pow(s.W, 1.0 - pc.sigma) : std::nan("");
    s.K_min = st.intrinsic_K_min();
    s.myers_diam =
        s.K_min > 0.0 ? kPi / std::sqrt(s.K_min) : std::numeric_limits<double>::infinity();
    s.decay_ratio = s.h02 / std::pow(s.H2 + 1.0, 1.0 - pc.sigma);
    const double mu =
        mu_fraction * std::min(1.0 / (2.0 * pc.alpha() * st.m() * (st.m() - 1)),
                               1.0 / std::abs(pc.beta()));
    s.muW = mu * s.W;
    s.g = s.H2 * s.h02 + 0.5 * (C12 / pc.C4() + 1.0) * s.h02;
    return s;
}

// 40-node Gauss-Legendre nodes/weights on [-1, 1] built from the 20 positive
// roots by symmetry (Newton on Legendre polynomials).
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double xi = std::cos(kPi * (i + 0.75) / (n + 0.5));
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1);
            }
            const double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
            const double dx = p0 / dp;
            xi -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        double p0 = 1.0, p1 = 0.0;
        for (int j = 0; j < n; ++j) {
            const double p2 = p1;
            p1 = p0;
            p0 = ((2.0 * j + 1.0) * xi * p1 - j * p2) / (j + 1);
        }
        const double dp = n * (xi * p0 - p1) / (xi * xi - 1.0);
        x[i] = -xi;
        x[n - 1 - i] = xi;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - xi * xi) * dp * dp);
    }
}

// integral of dr / ||H(r)|| over [lo, hi]; the integrand extends smoothly
// through r = 0
double time_integral(const SpaceSpec& space, double lo, double hi) {
    static thread_local std::vector<double> gx, gw;
    if (gx.empty()) gauss_legendre(40, gx, gw);
    const int segments = std::max(4, static_cast<int>(std::ceil((hi - lo) * 8.0)));
    double acc = 0.0;
    for (int s = 0; s < segments; ++s) {
        const double a = lo + (hi - lo) * s / segments;
        const double b = lo + (hi - lo) * (s + 1) / segments;
        for (size_t q = 0; q < gx.size(); ++q) {
            const double rr = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
            double inv;
            if (rr < 1e-12) {
                inv = 0.0;
            } else {
                inv = 1.0 / SphereState{space, rr}.mean_curvature();
            }
            acc += 0.5 * (b - a) * gw[q] * inv;
        }
    }
    return acc;
}

}  // namespace

SphereOracle sphere_flow_oracle(const SpaceSpec& space, double r0) {
    check_flow_family(space);
    make_sphere_state(space, r0);  // validates the range
    SphereOracle o;
    o.t_collapse = time_integral(space, 0.0, r0);
    o.time_to = [space, r0](double r) {
        if (r < 0.0 || r > r0) throw std::invalid_argument("oracle: radius outside [0, r0]");
        return time_integral(space, r, r0);
    };
    o.r_at = [space, r0, T = o.t_collapse](double t) {
        if (t < 0.0 || t > T) throw std::invalid_argument("oracle: time outside [0, T]");
        double lo = 0.0, hi = r0;
        for (int it = 0; it < 80; ++it) {
            const double mid = 0.5 * (lo + hi);
            if (time_integral(space, mid, r0) > t)
                lo = mid;
            else
                hi = mid;
        }
        return 0.5 * (lo + hi);
    };
    return o;
}

FlowTrace sphere_flow(const SpaceSpec& space, double r0, const SphereFlowOptions& opt) {
    check_flow_family(space);
    SphereState st = make_sphere_state(space, r0);
    const PinchConstants pc =
        PinchConstants::for_space(space, st.m(), 1, opt.eps, opt.sigma);
    FlowTrace trace;
    if (space.sign < 0) trace.collapse_bound = r0 / ((space.n + 1) * space.d() - 2);

    auto rhs = [&](double r) { return -SphereState{space, r}.mean_curvature(); };

    double t = 0.0;
    std::uint64_t step = 0;
    trace.samples.push_back(monitor_sample(st, t, pc, opt.mu_fraction, opt.C12));
    while (st.r > opt.r_switch && t < opt.t_end) {
        const double dt = std::min(opt.safety / st.norm_h2(), opt.dt_max);
        if (dt < 1e-16) {
            trace.note = "step size underflow: blow-up resolution limit";
            break;
        }
        const double k1 = rhs(st.r);
        const double k2 = rhs(st.r + 0.5 * dt * k1);
        const double k3 = rhs(st.r + 0.5 * dt * k2);
        const double k4 = rhs(std::max(st.r + dt * k3, 1e-15));
        double rn = st.r + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (rn <= opt.r_switch) {
            // land exactly on the switch radius by shrinking the step
            double lo = 0.0, hi = dt;
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (lo + hi);
                const double q1 = rhs(st.r);
                const double q2 = rhs(st.r + 0.5 * mid * q1);
                const double q3 = rhs(st.r + 0.5 * mid * q2);
                const double q4 = rhs(std::max(st.r + mid * q3, 1e-15));
                const double rm = st.r + mid / 6.0 * (q1 + 2.0 * q2 + 2.0 * q3 + q4);
                if (rm > opt.r_switch)
                    lo = mid;
                else
                    hi = mid;
            }
            t += 0.5 * (lo + hi);
            st.r = opt.r_switch;
            trace.samples.push_back(monitor_sample(st, t, pc, opt.mu_fraction, opt.C12));
            break;
        }
        st.r = rn;
        t += dt;
        if (++step % opt.stride == 0)
            trace.samples.push_back(monitor_sample(st, t, pc, opt.mu_fraction, opt.C12));
    }
    if (st.r <= opt.r_switch + 1e-15) {
        // finish with the separable-ODE quadrature for the final interval
        trace.blew_up = true;
        trace.t_collapse = t + time_integral(space, 0.0, st.r);
        if (trace.samples.back().t < t)
            trace.samples.push_back(monitor_sample(st, t, pc, opt.mu_fraction, opt.C12));
    }
    return trace;
}

EvolutionResiduals evolution_consistency(const SpaceSpec& space, double r0,
                                         const std::vector<double>& times) {
    if (times.size() < 5)
        throw std::invalid_argument("evolution_consistency: trace too short (< 5 samples)");
    const SphereOracle oracle = sphere_flow_oracle(space, r0);
    const double rbar = space.einstein_const();
    const int d = space.d();
    const double epsc = space.sign * space.c;
    const int mult_mixed = d * (space.n - 1) * (d - 1);

    auto H2_at = [&](double t) {
        const double H = SphereState{space, oracle.r_at(t)}.mean_curvature();
        return H * H;
    };
    auto h2_at = [&](double t) { return SphereState{space, oracle.r_at(t)}.norm_h2(); };
    auto logvol_at = [&](double t) {
        const double sc = std::sqrt(space.c);
        const double r = oracle.r_at(t);
        if (space.sign < 0)
            return d * (space.n - 1) * std::log(std::sinh(sc * r)) +
                   (d - 1) * std::log(std::sinh(2.0 * sc * r));
        return d * (space.n - 1) * std::log(std::sin(sc * r)) +
               (d - 1) * std::log(std::sin(2.0 * sc * r));
    };
    auto fd4 = [](const std::function<double(double)>& f, double t, double dlt) {
        return (-f(t + 2 * dlt) + 8 * f(t + dlt) - 8 * f(t - dlt) + f(t - 2 * dlt)) / (12 * dlt);
    };

    EvolutionResiduals res;
    res.grad_bound_ok = true;  // grad H vanishes identically on these states
    for (double t : times) {
        const double dlt = 0.01 * std::min(t, oracle.t_collapse - t);
        if (!(dlt > 1e-10)) throw std::invalid_argument("evolution_consistency: time too close to the endpoints");
        const SphereState st{space, oracle.r_at(t)};
        const double H = st.mean_curvature();
        const double H2 = H * H;
        const double h2 = st.norm_h2();
        const double k1 = st.kappa1(), k2 = st.kappa2();
        const int m1 = d * (space.n - 1), m2 = d - 1;
        // d||H||^2/dt = 2 ||H||^2 (||h||^2 + Ric(nu,nu)) on homogeneous states
        const double rhs_H2 = 2.0 * H2 * (h2 + rbar);
        const double fd_H2 = fd4(H2_at, t, dlt);
        res.dH2_rel = std::max(res.dH2_rel, std::abs(fd_H2 - rhs_H2) / std::abs(rhs_H2));
        // exact reduced identity: d||h||^2/dt = 2||H||(tr h^3 + <h, R_nu>);
        // the radial Jacobi-operator components are eps*c on the first group
        // and 4*eps*c on the structure directions
        const double trh3 = m1 * k1 * k1 * k1 + m2 * k2 * k2 * k2;
        const double hRnu = epsc * (m1 * k1 + 4.0 * m2 * k2);
        const double rhs_h2 = 2.0 * H * (trh3 + hRnu);
        const double fd_h2 = fd4(h2_at, t, dlt);
        res.dh2_rel = std::max(res.dh2_rel, std::abs(fd_h2 - rhs_h2) / std::abs(rhs_h2));
        // the compressed tangential-contraction variant (informational)
        const double gap = k1 - k2;
        const double variant = 2.0 * h2 * (h2 + rbar) - 4.0 * epsc * mult_mixed * gap * gap;
        res.dh2_tangential_variant_rel =
            std::max(res.dh2_tangential_variant_rel, std::abs(fd_h2 - variant) / std::abs(fd_h2));
        // d(log vol)/dt = -||H||^2
        const double fd_v = fd4(logvol_at, t, dlt);
        res.dvol_rel = std::max(res.dvol_rel, std::abs(fd_v + H2) / H2);
    }
    return res;
}

PinchScan pinch_monitor_scan(const SpaceSpec& space, const std::vector<double>& radii,
                             double eps, double mu_fraction) {
    check_flow_family(space);
    PinchScan scan;
    const int m = space.real_dim() - 1;
    const PinchConstants pc = PinchConstants::for_space(space, m, 1, eps, 0.1);
    auto margin_at = [&](double r) {
        const SphereState st{space, r};
        const double H = st.mean_curvature();
        return H * H / (m - 1) + pc.b() - st.norm_h2();
    };
    for (double r : radii) {
        const SphereState st = make_sphere_state(space, r);
        PinchScanRow row;
        row.r = r;
        const double H = st.mean_curvature();
        row.H2 = H * H;
        row.h2 = st.norm_h2();
        row.h02 = row.h2 - row.H2 / m;
        row.star_margin = row.H2 / (m - 1) + pc.b() - row.h2;
        row.q_eps = row.h2 - pc.a_eps() * row.H2 - pc.b_eps();
        row.K_min = st.intrinsic_K_min();
        const double W = pc.W(row.H2);
        const double mu = mu_fraction * std::min(1.0 / (2.0 * pc.alpha() * m * (m - 1)),
                                                 1.0 / std::abs(pc.beta()));
        row.muW = mu * W;
        row.myers_diam = row.K_min > 0.0 ? kPi / std::sqrt(row.K_min)
                                         : std::numeric_limits<double>::infinity();
        scan.rows.push_back(row);
    }
    // bracket a sign change of the pinching margin and refine by bisection
    for (size_t i = 0; i + 1 < scan.rows.size(); ++i) {
        const double a = scan.rows[i].star_margin, b = scan.rows[i + 1].star_margin;
        if (a > 0.0 && b < 0.0) {
            double lo = scan.rows[i].r, hi = scan.rows[i + 1].r;
            scan.r_lo = lo;
            scan.r_hi = hi;
            while (hi - lo > 1e-10) {
                const double mid = 0.5 * (lo + hi);
                if (margin_at(mid) > 0.0)
                    lo = mid;
                else
                    hi = mid;
            }
            scan.has_critical = true;
            scan.r_critical = 0.5 * (lo + hi);
            break;
        }
    }
    return scan;
}

}  // namespace rank1
