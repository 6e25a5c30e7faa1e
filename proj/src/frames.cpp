#include "rank1/frames.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <optional>

namespace rank1 {

SubspacePair make_subspace_pair(MatrixXd tangent, MatrixXd normal) {
    if (tangent.rows() != normal.rows()) throw std::invalid_argument("subspace pair: row mismatch");
    const int dim = static_cast<int>(tangent.rows());
    if (tangent.cols() + normal.cols() != dim)
        throw std::invalid_argument("subspace pair: m + k must equal the model dimension");
    MatrixXd all(dim, dim);
    all << tangent, normal;
    if ((all.transpose() * all - MatrixXd::Identity(dim, dim)).cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("subspace pair: bases not orthonormal");
    return SubspacePair{std::move(tangent), std::move(normal)};
}

SubspacePair random_subspace_pair(int dim, int m, SampleRng& rng) {
    if (m < 1 || m >= dim) throw std::invalid_argument("random_subspace_pair: need 1 <= m < dim");
    MatrixXd A(dim, dim);
    for (int j = 0; j < dim; ++j)
        for (int i = 0; i < dim; ++i) A(i, j) = rng.normal();
    // Gram-Schmidt (deterministic, no pivoting)
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < j; ++i) A.col(j) -= A.col(i).dot(A.col(j)) * A.col(i);
        double nrm = A.col(j).norm();
        while (nrm < 1e-8) {  // essentially never; regenerate the column
            for (int i = 0; i < dim; ++i) A(i, j) = rng.normal();
            for (int i = 0; i < j; ++i) A.col(j) -= A.col(i).dot(A.col(j)) * A.col(i);
            nrm = A.col(j).norm();
        }
        A.col(j) /= nrm;
    }
    // second orthogonalization pass tightens the defect to ~1e-15
    for (int j = 0; j < dim; ++j) {
        for (int i = 0; i < j; ++i) A.col(j) -= A.col(i).dot(A.col(j)) * A.col(i);
        A.col(j).normalize();
    }
    return SubspacePair{A.leftCols(m), A.rightCols(dim - m)};
}

FrameTypeI build_type1(const VectorXd& H) {
    const double n = H.norm();
    if (!(n > 1e-12)) throw std::domain_error("frame of type (I) undefined: H = 0");
    const int k = static_cast<int>(H.size());
    MatrixXd R(k, k);
    R.row(0) = H.transpose() / n;
    int got = 1;
    for (int j = 0; j < k && got < k; ++j) {
        VectorXd cand = VectorXd::Zero(k);
        cand(j) = 1.0;
        for (int i = 0; i < got; ++i) cand -= R.row(i).dot(cand) * R.row(i).transpose();
        const double nn = cand.norm();
        if (nn > 1e-8) R.row(got++) = cand.transpose() / nn;
    }
    if (got != k) throw std::runtime_error("type (I) frame completion failed");
    return FrameTypeI{std::move(R)};
}

namespace {

struct AnglePair {
    double tau, nu;
    VectorXd u, w;  // normal-space coordinates (k-vectors); w unused for the odd slot
    bool filler;    // tangent partners unconstrained (tau ~ 0)
};

}  // namespace

FrameTypeII build_type2(const PointAlgebra& alg, const SubspacePair& pair, int xi) {
    const int m = pair.m();
    const int k = pair.k();
    if (k > m) throw std::invalid_argument("second-kind frame requires k <= m");
    if (xi < 0 || xi >= static_cast<int>(alg.structure_ops().size()))
        throw std::invalid_argument("structure operator index out of range");
    const MatrixXd& J = alg.structure_ops()[xi];
    const MatrixXd JN = J * pair.normal;
    const MatrixXd fmat = pair.normal.transpose() * JN;  // k x k skew

    // paired rotation angles of the skew operator f: eigen-decompose -f^2
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(-(fmat * fmat));
    const VectorXd mu = es.eigenvalues();  // ascending, in [0, 1]
    const MatrixXd V = es.eigenvectors();

    // extract rotation 2-planes from one pool of eigenvectors; every
    // iteration consumes exactly two vectors (or moves one to the kernel),
    // so degenerate eigenvalue clusters cannot break the pairing parity
    std::vector<AnglePair> pairs;
    std::vector<VectorXd> kernel;
    const double nu_floor = 1e-7;
    std::vector<VectorXd> pool;
    for (int i = k - 1; i >= 0; --i) {  // descending rotation angle
        if (mu(i) > nu_floor * nu_floor)
            pool.push_back(V.col(i));
        else
            kernel.push_back(V.col(i));
    }
    while (!pool.empty()) {
        VectorXd u = pool.front();
        pool.erase(pool.begin());
        const VectorXd fu = fmat * u;
        const double nu = fu.norm();
        if (nu <= nu_floor) {
            kernel.push_back(std::move(u));
            continue;
        }
        VectorXd w = fu / nu;
        // w spans one direction of the remaining pool; deflate it and drop
        // the single vector that collapses
        std::vector<VectorXd> keep;
        for (auto& v : pool) {
            v -= w.dot(v) * w;
            for (const auto& kv : keep) v -= kv.dot(v) * kv;
            if (v.norm() > 0.5) keep.push_back(v.normalized());
        }
        if (keep.size() + 1 != pool.size())
            throw std::runtime_error("skew canonical form deflation failed");
        pool = std::move(keep);
        const double tau = std::sqrt(std::max(0.0, 1.0 - nu * nu));
        pairs.push_back(AnglePair{tau, nu, std::move(u), std::move(w), tau < nu_floor});
    }
    // kernel vectors pair among themselves (tau = 1); odd leftover is the
    // final normal vector with J e_{m+k} = e_k
    std::optional<VectorXd> odd_slot;
    while (kernel.size() >= 2) {
        VectorXd u = kernel[kernel.size() - 2];
        VectorXd w = kernel[kernel.size() - 1];
        kernel.pop_back();
        kernel.pop_back();
        pairs.push_back(AnglePair{1.0, 0.0, std::move(u), std::move(w), false});
    }
    if (!kernel.empty()) odd_slot = kernel.front();
    if ((k % 2 == 0) != !odd_slot.has_value())
        throw std::runtime_error("skew canonical form parity mismatch");

    std::stable_sort(pairs.begin(), pairs.end(),
                     [](const AnglePair& a, const AnglePair& b) { return a.tau > b.tau; });

    FrameTypeII out;
    out.tangent.resize(pair.dim(), m);
    out.normal.resize(pair.dim(), k);
    std::vector<int> filler_slots;

    auto tangent_partner = [&](const VectorXd& coords) {
        // tangent part of J applied to a normal-space vector
        const VectorXd amb = JN * coords;
        return (amb - pair.normal * (pair.normal.transpose() * amb)).eval();
    };

    for (size_t r = 0; r < pairs.size(); ++r) {
        const auto& ap = pairs[r];
        out.normal.col(2 * r) = pair.normal * ap.u;
        out.normal.col(2 * r + 1) = pair.normal * ap.w;
        out.tau.push_back(ap.filler ? 0.0 : ap.tau);
        out.nu.push_back(ap.filler ? 1.0 : ap.nu);
        if (ap.filler) {
            filler_slots.push_back(static_cast<int>(r));
        } else {
            out.tangent.col(2 * r) = tangent_partner(ap.u).normalized();
            out.tangent.col(2 * r + 1) = tangent_partner(ap.w).normalized();
        }
    }
    if (odd_slot) {
        out.normal.col(k - 1) = pair.normal * (*odd_slot);
        out.tangent.col(k - 1) = tangent_partner(*odd_slot).normalized();
        out.tau.push_back(1.0);
        out.nu.push_back(0.0);
    }

    // remaining tangent slots: J-invariant complement, complex pairs
    std::vector<int> open;
    for (int r : filler_slots) {
        open.push_back(2 * r);
        open.push_back(2 * r + 1);
    }
    for (int i = k; i < m; ++i) open.push_back(i);

    if (!open.empty()) {
        std::vector<VectorXd> used;  // assigned tangent columns
        for (int i = 0; i < m; ++i) {
            if (std::find(open.begin(), open.end(), i) == open.end())
                used.push_back(out.tangent.col(i));
        }
        auto project_open = [&](VectorXd v) {
            v = pair.tangent * (pair.tangent.transpose() * v);
            for (const auto& uvec : used) v -= uvec.dot(v) * uvec;
            return v;
        };
        size_t oi = 0;
        int seed_col = 0;
        while (oi < open.size()) {
            // find a unit vector in the open tangent complement
            VectorXd v;
            double nrm = 0.0;
            while (nrm < 1e-6 && seed_col < pair.dim()) {
                VectorXd cand = VectorXd::Zero(pair.dim());
                cand(seed_col++) = 1.0;
                v = project_open(cand);
                nrm = v.norm();
            }
            if (nrm < 1e-6) throw std::runtime_error("tangent completion failed");
            v.normalize();
            VectorXd Jv = J * v;
            Jv = project_open(Jv);  // already in the complement up to roundoff
            Jv.normalize();
            const bool is_filler_pair = oi + 1 < open.size() && open[oi] < k;
            if (is_filler_pair) {
                // complex-invariant slot: J e_{2r-1} = -nu e_{2r} with nu = 1
                out.tangent.col(open[oi]) = v;
                out.tangent.col(open[oi + 1]) = -Jv;
            } else {
                // trailing slots: J e_{l} = e_{l+1}
                out.tangent.col(open[oi]) = v;
                out.tangent.col(open[oi + 1]) = Jv;
            }
            used.push_back(out.tangent.col(open[oi]));
            used.push_back(out.tangent.col(open[oi + 1]));
            oi += 2;
        }
    }
    return out;
}

SplitOperators split_operators(const PointAlgebra& alg, const SubspacePair& pair) {
    SplitOperators ops;
    const auto& Js = alg.structure_ops();
    const double epsc = alg.space().sign * alg.space().c;
    MatrixXd fp_sum = MatrixXd::Zero(pair.k(), pair.m());
    for (const auto& J : Js) {
        const MatrixXd JT = J * pair.tangent;
        const MatrixXd JN = J * pair.normal;
        MatrixXd P = pair.tangent.transpose() * JT;
        MatrixXd F = pair.normal.transpose() * JT;
        MatrixXd t = pair.tangent.transpose() * JN;
        MatrixXd f = pair.normal.transpose() * JN;
        const MatrixXd FP = F * P;
        ops.P2.push_back(P.squaredNorm());
        ops.F2.push_back(F.squaredNorm());
        ops.t2.push_back(t.squaredNorm());
        ops.FP2.push_back(FP.squaredNorm());
        fp_sum += FP;
        ops.P.push_back(std::move(P));
        ops.F.push_back(std::move(F));
        ops.t.push_back(std::move(t));
        ops.f.push_back(std::move(f));
    }
    // omega(alpha, i) = sum_j R(e_alpha, e_j, e_j, e_i) = -3 eps c (sum_xi F_xi P_xi)(alpha, i)
    ops.omega = -3.0 * epsc * fp_sum;
    ops.omega2 = ops.omega.squaredNorm();
    const double c2 = alg.space().c * alg.space().c;
    ops.bound310_rhs =
        9.0 * (alg.space().d() - 1) * c2 * std::accumulate(ops.FP2.begin(), ops.FP2.end(), 0.0);
    return ops;
}

}  // namespace rank1
