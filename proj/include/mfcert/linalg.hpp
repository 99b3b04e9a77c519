#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "mfcert/errors.hpp"
#include "mfcert/rng.hpp"

namespace mfcert {

using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kRankRelTol = 1e-8;

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phase
/// correction that makes the factor unique (diagonal of R real positive).
inline CMatrix haar_unitary(int n, std::uint64_t seed) {
    if (n < 1) throw usage_error("haar_unitary: n must be >= 1");
    Rng rng(seed);
    CMatrix a(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) a(i, j) = rng.complex_gaussian();
    Eigen::HouseholderQR<CMatrix> qr(a);
    CMatrix q = qr.householderQ();
    CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) {
        std::complex<double> d = r(j, j);
        double m = std::abs(d);
        q.col(j) *= m > 0 ? d / m : 1.0;
    }
    return q;
}

/// Haar-distributed real orthogonal matrix (same construction over R).
inline RMatrix haar_orthogonal(int n, std::uint64_t seed) {
    if (n < 1) throw usage_error("haar_orthogonal: n must be >= 1");
    Rng rng(seed);
    RMatrix a(n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) a(i, j) = rng.gaussian();
    Eigen::HouseholderQR<RMatrix> qr(a);
    RMatrix q = qr.householderQ();
    RMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int j = 0; j < n; ++j) q.col(j) *= r(j, j) >= 0 ? 1.0 : -1.0;
    return q;
}

struct SvdResult {
    CMatrix u;
    RVector sigma; // non-negative, non-increasing
    CMatrix v;

    CMatrix reconstruct() const { return u * sigma.asDiagonal() * v.adjoint(); }
};

inline SvdResult svd(const CMatrix& a) {
    Eigen::JacobiSVD<CMatrix> s(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {s.matrixU(), s.singularValues(), s.matrixV()};
}

/// Orthonormal basis of the joint null space of the stacked operators,
/// via the eigendecomposition of sum_i A_i^* A_i. Columns of the result
/// span {x : A_i x = 0 for all i}. Rank cut at kRankRelTol relative to the
/// largest singular value of the stack.
inline CMatrix nullspace(const std::vector<CMatrix>& ops, int dim) {
    CMatrix gram = CMatrix::Zero(dim, dim);
    for (const CMatrix& a : ops) {
        if (a.cols() != dim) throw usage_error("nullspace: operator column mismatch");
        gram += a.adjoint() * a;
    }
    Eigen::SelfAdjointEigenSolver<CMatrix> es(gram);
    const RVector& ev = es.eigenvalues(); // ascending
    const double lmax = ev.size() ? std::max(0.0, ev(ev.size() - 1)) : 0.0;
    const double cut = lmax * kRankRelTol * kRankRelTol;
    int k = 0;
    while (k < ev.size() && ev(k) <= cut) ++k;
    return es.eigenvectors().leftCols(k);
}

/// Gauge-invariant distance between the column spans of two orthonormal
/// frames: sqrt(sum_i sin^2 theta_i) over the principal angles.
inline double span_distance(const CMatrix& a, const CMatrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols())
        throw usage_error("span_distance: frame shape mismatch");
    const auto k = a.cols();
    const double c2 = (a.adjoint() * b).squaredNorm();
    return std::sqrt(std::max(0.0, static_cast<double>(k) - c2));
}

/// Principal logarithm of a unitary matrix, via its Schur form (diagonal for
/// normal matrices). Output is skew-Hermitian.
inline CMatrix unitary_log(const CMatrix& u) {
    Eigen::ComplexSchur<CMatrix> schur(u);
    const CMatrix& q = schur.matrixU();
    CVector d = schur.matrixT().diagonal();
    for (int i = 0; i < d.size(); ++i) {
        d(i) = std::complex<double>(0.0, std::atan2(d(i).imag(), d(i).real()));
    }
    CMatrix x = q * d.asDiagonal() * q.adjoint();
    return 0.5 * (x - x.adjoint()); // enforce exact skew-Hermitian symmetry
}

/// exp(X) for skew-Hermitian X, via the eigendecomposition of -iX.
inline CMatrix exp_skew(const CMatrix& x) {
    const std::complex<double> mi(0.0, -1.0);
    Eigen::SelfAdjointEigenSolver<CMatrix> es(mi * x);
    CVector phases(es.eigenvalues().size());
    for (int i = 0; i < phases.size(); ++i) {
        const double t = es.eigenvalues()(i);
        phases(i) = std::complex<double>(std::cos(t), std::sin(t));
    }
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

struct CsDecomposition {
    CMatrix h;            // block-diagonal unitary, split (p, n-p)
    CMatrix b;            // real orthogonal angle core
    CMatrix k;            // block-diagonal unitary, split (p, n-p)
    RVector angles;       // theta_1 >= ... >= theta_min(p,q), in [0, pi/2]

    CMatrix reconstruct() const { return h * b * k; }
};

namespace detail {

// Angle core for split (p, q), p <= q: rotation by theta_i in the coordinate
// plane (i, p+i), identity elsewhere.
inline RMatrix cs_core(const RVector& theta, int p, int n) {
    RMatrix b = RMatrix::Identity(n, n);
    for (int i = 0; i < theta.size(); ++i) {
        const double c = std::cos(theta(i));
        const double s = std::sin(theta(i));
        b(i, i) = c;
        b(i, p + i) = -s;
        b(p + i, i) = s;
        b(p + i, p + i) = c;
    }
    return b;
}

// Deterministically extend `have` orthonormal columns of height n to a full
// unitary by Gram-Schmidt over the standard basis.
inline CMatrix complete_unitary(const CMatrix& have, int n) {
    CMatrix out(n, n);
    int filled = static_cast<int>(have.cols());
    out.leftCols(filled) = have;
    for (int e = 0; e < n && filled < n; ++e) {
        CVector v = CVector::Zero(n);
        v(e) = 1.0;
        for (int j = 0; j < filled; ++j) v -= out.col(j) * (out.col(j).adjoint() * v);
        const double nrm = v.norm();
        if (nrm > 1e-6) {
            out.col(filled++) = v / nrm;
        }
    }
    if (filled != n) throw certificate_error("complete_unitary: completion failed");
    return out;
}

// Core CS decomposition for p <= q. See cs_decompose for the contract.
inline CsDecomposition cs_decompose_core(const CMatrix& g, int p) {
    const int n = static_cast<int>(g.rows());
    const int q = n - p;

    const CMatrix g11 = g.topLeftCorner(p, p);
    const CMatrix g12 = g.topRightCorner(p, q);
    const CMatrix g21 = g.bottomLeftCorner(q, p);
    const CMatrix g22 = g.bottomRightCorner(q, q);

    Eigen::JacobiSVD<CMatrix> s11(g11, Eigen::ComputeFullU | Eigen::ComputeFullV);
    // Reorder so cosines ascend: angles theta_i = acos(c_i) descend. The sort
    // is stable so exactly tied clusters keep their column order.
    std::vector<int> order(static_cast<std::size_t>(p));
    for (int i = 0; i < p; ++i) order[static_cast<std::size_t>(i)] = i;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return s11.singularValues()(a) < s11.singularValues()(b);
    });
    CMatrix u1(p, p), v1(p, p);
    RVector c(p);
    for (int i = 0; i < p; ++i) {
        u1.col(i) = s11.matrixU().col(order[static_cast<std::size_t>(i)]);
        v1.col(i) = s11.matrixV().col(order[static_cast<std::size_t>(i)]);
        c(i) = std::min(1.0, s11.singularValues()(order[static_cast<std::size_t>(i)]));
    }

    RVector theta(p), sv(p);
    for (int i = 0; i < p; ++i) {
        sv(i) = std::sqrt(std::max(0.0, 1.0 - c(i) * c(i)));
        theta(i) = std::atan2(sv(i), c(i));
    }

    const double degenerate = 1e-8;

    // columns of g21*v1 are orthogonal with norms sin(theta_i)
    const CMatrix w = g21 * v1;
    CMatrix u2 = CMatrix::Zero(q, q);
    std::vector<int> pending;
    int placed = 0;
    CMatrix determined(q, 0);
    for (int i = 0; i < p; ++i) {
        if (sv(i) > degenerate) {
            CVector col = w.col(i) / sv(i);
            // polish orthogonality against already placed columns
            for (int j = 0; j < placed; ++j)
                col -= determined.col(j) * (determined.col(j).adjoint() * col);
            col.normalize();
            determined.conservativeResize(q, placed + 1);
            determined.col(placed) = col;
            u2.col(i) = col;
            ++placed;
        } else {
            pending.push_back(i);
        }
    }
    // Fill the theta ~ 0 columns and the trailing q-p columns by completion.
    const CMatrix completion = complete_unitary(determined, q).rightCols(q - placed);
    int next = 0;
    for (int i : pending) u2.col(i) = completion.col(next++);
    for (int i = p; i < q; ++i) u2.col(i) = completion.col(next++);

    // k1 = v1^*; k2 row by row
    const CMatrix k1 = v1.adjoint();
    CMatrix k2(q, q);
    const CMatrix u1g12 = u1.adjoint() * g12;
    const CMatrix u2g22 = u2.adjoint() * g22;
    for (int i = 0; i < p; ++i) {
        if (sv(i) > degenerate) {
            k2.row(i) = -u1g12.row(i) / sv(i);
        } else {
            k2.row(i) = u2g22.row(i) / c(i); // c ~ 1 here
        }
    }
    for (int i = p; i < q; ++i) k2.row(i) = u2g22.row(i);

    CsDecomposition out;
    out.h = CMatrix::Zero(n, n);
    out.h.topLeftCorner(p, p) = u1;
    out.h.bottomRightCorner(q, q) = u2;
    out.k = CMatrix::Zero(n, n);
    out.k.topLeftCorner(p, p) = k1;
    out.k.bottomRightCorner(q, q) = k2;
    out.b = cs_core(theta, p, n).cast<std::complex<double>>();
    out.angles = theta;
    return out;
}

} // namespace detail

/// CS decomposition of a unitary g with block split (p, n-p):
/// g = h * b * k with h, k block-diagonal unitary and b a real orthogonal
/// core of plane rotations by the principal angles (non-increasing, in
/// [0, pi/2]). Near-degenerate angles are resolved by subspace completion.
inline CsDecomposition cs_decompose(const CMatrix& g, int p) {
    const int n = static_cast<int>(g.rows());
    if (g.cols() != n) throw usage_error("cs_decompose: matrix must be square");
    if (p < 1 || p >= n) throw usage_error("cs_decompose: need 1 <= p < n");
    if ((g.adjoint() * g - CMatrix::Identity(n, n)).norm() > 1e-10)
        throw usage_error("cs_decompose: input is not unitary");

    const int q = n - p;
    if (p <= q) return detail::cs_decompose_core(g, p);

    // p > q: swap the two blocks, decompose, and swap back.
    CMatrix perm = CMatrix::Zero(n, n);
    for (int i = 0; i < q; ++i) perm(i, p + i) = 1.0;
    for (int i = 0; i < p; ++i) perm(q + i, i) = 1.0;
    CsDecomposition inner = detail::cs_decompose_core(perm * g * perm.adjoint(), q);
    CsDecomposition out;
    out.h = perm.adjoint() * inner.h * perm;
    out.b = perm.adjoint() * inner.b * perm;
    out.k = perm.adjoint() * inner.k * perm;
    out.angles = inner.angles;
    return out;
}

/// Orthonormal basis (trace inner product) of the algebra commuting with
/// every generator. Generators need not be Hermitian or unitary.
struct CommutantBasis {
    int dim = 0;
    std::vector<CMatrix> basis;

    int size() const { return static_cast<int>(basis.size()); }
};

inline CommutantBasis commutant_basis(int dim, const std::vector<CMatrix>& generators) {
    if (dim < 1) throw usage_error("commutant_basis: dimension must be >= 1");
    CommutantBasis out;
    out.dim = dim;
    if (generators.empty()) {
        // full matrix algebra: elementary matrices
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                CMatrix e = CMatrix::Zero(dim, dim);
                e(i, j) = 1.0;
                out.basis.push_back(e);
            }
        return out;
    }
    const int d2 = dim * dim;
    std::vector<CMatrix> ops;
    const CMatrix id = CMatrix::Identity(dim, dim);
    for (const CMatrix& g : generators) {
        if (g.rows() != dim || g.cols() != dim)
            throw usage_error("commutant_basis: generator shape mismatch");
        // vec(AG - GA) = (G^T kron I - I kron G) vec(A), column-major vec
        CMatrix op = CMatrix::Zero(d2, d2);
        for (int jc = 0; jc < dim; ++jc)
            for (int ic = 0; ic < dim; ++ic)
                op.block(ic * dim, jc * dim, dim, dim) =
                    g.transpose()(ic, jc) * id - (ic == jc ? 1.0 : 0.0) * g;
        ops.push_back(std::move(op));
    }
    CMatrix null = nullspace(ops, d2);
    for (int c = 0; c < null.cols(); ++c) {
        CMatrix a(dim, dim);
        for (int j = 0; j < dim; ++j) a.col(j) = null.col(c).segment(j * dim, dim);
        out.basis.push_back(a);
    }
    // invariant: every element commutes with every generator
    for (const CMatrix& a : out.basis)
        for (const CMatrix& g : generators)
            if ((a * g - g * a).norm() > 1e-9)
                throw certificate_error("commutant_basis: residual commutator too large");
    return out;
}

/// Largest normalized commutator norm over basis pairs. At most 1e-9 exactly
/// when the algebra spanned by the basis is commutative.
inline double commutativity_defect(const CommutantBasis& cb) {
    double worst = 0.0;
    for (std::size_t i = 0; i < cb.basis.size(); ++i) {
        for (std::size_t j = i + 1; j < cb.basis.size(); ++j) {
            const CMatrix& a = cb.basis[i];
            const CMatrix& b = cb.basis[j];
            const double denom = a.norm() * b.norm();
            if (denom == 0.0) continue;
            worst = std::max(worst, (a * b - b * a).norm() / denom);
        }
    }
    return worst;
}

} // namespace mfcert
