#include <cmath>
#include <limits>

#include "rank1/flow.hpp"

namespace rank1 {

namespace {

constexpr double kPi = 3.14159265358979323846;

using Pts = Eigen::Matrix<double, Eigen::Dynamic, 3>;
using Vec3 = Eigen::Vector3d;

double geo_dist(const Vec3& a, const Vec3& b, double R) {
    const double cosang = std::clamp(a.dot(b) / (R * R), -1.0, 1.0);
    return R * std::acos(cosang);
}

// unit tangent at a of the geodesic from a toward b
Vec3 geo_dir(const Vec3& a, const Vec3& b, double R) {
    Vec3 v = b - (a.dot(b) / (R * R)) * a;
    const double n = v.norm();
    if (n < 1e-15) return Vec3::Zero();
    return v / n;
}

struct CurvatureData {
    std::vector<Vec3> kvec;
    std::vector<double> kappa;
    std::vector<double> ds_avg;
    double length = 0.0;
    double min_edge = 0.0;
};

CurvatureData discrete_curvature(const Pts& p, double R) {
    const int n = static_cast<int>(p.rows());
    CurvatureData cd;
    cd.kvec.resize(n);
    cd.kappa.resize(n);
    cd.ds_avg.resize(n);
    std::vector<double> edge(n);  // edge i: p_i -> p_{i+1}
    cd.min_edge = std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
        edge[i] = geo_dist(p.row(i), p.row((i + 1) % n), R);
        cd.length += edge[i];
        cd.min_edge = std::min(cd.min_edge, edge[i]);
    }
    for (int i = 0; i < n; ++i) {
        const int prev = (i + n - 1) % n;
        const Vec3 pi = p.row(i);
        const Vec3 tin = -geo_dir(pi, p.row(prev), R);
        const Vec3 tout = geo_dir(pi, p.row((i + 1) % n), R);
        const double theta = std::acos(std::clamp(tin.dot(tout), -1.0, 1.0));
        cd.ds_avg[i] = 0.5 * (edge[prev] + edge[i]);
        Vec3 w = tout - tin;
        // keep the turning direction inside the tangent plane
        w -= (w.dot(pi) / (R * R)) * pi;
        const double wn = w.norm();
        if (wn < 1e-14 || cd.ds_avg[i] < 1e-300) {
            cd.kvec[i].setZero();
            cd.kappa[i] = 0.0;
        } else {
            cd.kappa[i] = theta / cd.ds_avg[i];
            cd.kvec[i] = cd.kappa[i] * (w / wn);
        }
    }
    return cd;
}

double chordal_diameter_bound(const Pts& p) {
    const Vec3 centroid = p.colwise().mean();
    double mx = 0.0;
    for (int i = 0; i < p.rows(); ++i)
        mx = std::max(mx, (Vec3(p.row(i)) - centroid).norm());
    return 2.0 * mx;
}

// chordal distance from a point to a segment
double point_segment_dist(const Vec3& q, const Vec3& a, const Vec3& b) {
    const Vec3 ab = b - a;
    const double len2 = ab.squaredNorm();
    if (len2 < 1e-300) return (q - a).norm();
    const double t = std::clamp((q - a).dot(ab) / len2, 0.0, 1.0);
    return (q - (a + t * ab)).norm();
}

bool self_intersects(const Pts& p) {
    // a transversal crossing leaves some vertex within half of its local
    // edge length of the other strand, so a per-vertex tolerance at that
    // scale detects crossings at the first check
    const int n = static_cast<int>(p.rows());
    std::vector<double> edge(n);
    for (int i = 0; i < n; ++i) edge[i] = (Vec3(p.row((i + 1) % n)) - Vec3(p.row(i))).norm();
    for (int i = 0; i < n; ++i) {
        const Vec3 q = p.row(i);
        const double tol = 0.5 * std::max(edge[i], edge[(i + n - 1) % n]);
        for (int j = 0; j < n; ++j) {
            // segment j runs p_j -> p_{j+1}; skip the two segments touching
            // vertex i and their immediate neighbors
            const int d = std::min((j - i + n) % n, (i - j + n) % n);
            if (d <= 2) continue;
            if (point_segment_dist(q, p.row(j), p.row((j + 1) % n)) < tol) return true;
        }
    }
    return false;
}

CurveSample record(const Pts& p, double t, double R) {
    const CurvatureData cd = discrete_curvature(p, R);
    CurveSample s;
    s.t = t;
    s.length = cd.length;
    s.diameter = chordal_diameter_bound(p);
    double k2ds = 0.0;
    double rmin = std::numeric_limits<double>::infinity(), rmax = 0.0;
    for (size_t i = 0; i < cd.kappa.size(); ++i) {
        k2ds += cd.kappa[i] * cd.kappa[i] * cd.ds_avg[i];
        if (cd.kappa[i] > 1e-9) {
            rmin = std::min(rmin, 1.0 / cd.kappa[i]);
            rmax = std::max(rmax, 1.0 / cd.kappa[i]);
        }
    }
    s.kappa2_ds = k2ds;
    s.roundness = (rmin < rmax && rmin > 0.0) ? rmax / rmin : 1.0;
    return s;
}

}  // namespace

Polyline geodesic_circle(double c, double r0, int vertices) {
    const double R = 1.0 / (2.0 * std::sqrt(c));
    const double phi = r0 / R;
    if (!(phi > 0.0 && phi < kPi)) throw std::invalid_argument("circle radius outside the sphere");
    Polyline pl;
    pl.sphere_radius = R;
    pl.pts.resize(vertices, 3);
    for (int i = 0; i < vertices; ++i) {
        const double th = 2.0 * kPi * i / vertices;
        pl.pts.row(i) << R * std::sin(phi) * std::cos(th), R * std::sin(phi) * std::sin(th),
            R * std::cos(phi);
    }
    return pl;
}

Polyline great_circle(double c, int vertices) {
    return geodesic_circle(c, kPi / (4.0 * std::sqrt(c)), vertices);
}

double circle_collapse_time(double c, double r0) {
    const double u0 = std::cos(2.0 * std::sqrt(c) * r0);
    if (!(u0 > 1e-12)) throw std::invalid_argument("circle does not shrink: radius at or beyond the equator");
    return std::log(1.0 / u0) / (4.0 * c);
}

CurveTrace curve_flow(const Polyline& start, const CurveFlowOptions& opt) {
    const int n = start.size();
    if (n < 16) throw std::invalid_argument("curve flow needs a closed polyline with >= 16 vertices");
    const double R = start.sphere_radius;
    for (int i = 0; i < n; ++i) {
        if (std::abs(Vec3(start.pts.row(i)).norm() - R) > 1e-12 * std::max(1.0, R))
            throw std::invalid_argument("polyline vertices must lie on the sphere");
    }
    const double c = 1.0 / (4.0 * R * R);

    CurveTrace trace;
    Pts p = start.pts;
    double t = 0.0;
    std::uint64_t step = 0;
    trace.samples.push_back(record(p, t, R));
    if (opt.snapshot_stride > 0) trace.snapshots.push_back(CurveSnapshot{t, p});
    const int check_stride = std::max(opt.check_stride, n);

    while (t < opt.t_end) {
        const CurvatureData cd = discrete_curvature(p, R);
        const double min_edge = cd.min_edge;
        if (min_edge < 1e-12) {
            trace.halted = true;
            trace.note = "vertex collision";
            break;
        }
        const double dt = opt.cfl * min_edge * min_edge;
        if (dt < 1e-13) {
            trace.halted = true;
            trace.note = "step size underflow: pinching configuration beyond resolution";
            break;
        }
        for (int i = 0; i < n; ++i) {
            Vec3 q = Vec3(p.row(i)) + dt * cd.kvec[i];
            p.row(i) = q * (R / q.norm());
        }
        t += dt;
        ++step;
        if (step % opt.record_stride == 0) trace.samples.push_back(record(p, t, R));
        if (opt.snapshot_stride > 0 && step % opt.snapshot_stride == 0)
            trace.snapshots.push_back(CurveSnapshot{t, p});
        if (step % 8 != 0) continue;
        const double diam = chordal_diameter_bound(p);
        if (diam < opt.stop_diameter ||
            (opt.euclidean_tail && diam < std::max(opt.stop_diameter, 2e-3))) {
            trace.collapsed = true;
            if (opt.euclidean_tail) {
                // remaining time for the (by now nearly round) small circle
                Vec3 centroid = p.colwise().mean();
                centroid *= R / centroid.norm();
                double r_geo = 0.0;
                for (int i = 0; i < n; ++i) r_geo += geo_dist(p.row(i), centroid, R);
                r_geo /= n;
                trace.t_collapse = t + circle_collapse_time(c, r_geo);
            } else {
                trace.t_collapse = t;
            }
            break;
        }
        if (step % static_cast<std::uint64_t>(check_stride) == 0 && self_intersects(p)) {
            trace.halted = true;
            trace.note = "self-intersection detected";
            break;
        }
    }
    if (trace.samples.back().t < t) trace.samples.push_back(record(p, t, R));
    trace.final_state.sphere_radius = R;
    trace.final_state.pts = p;
    return trace;
}

}  // namespace rank1
