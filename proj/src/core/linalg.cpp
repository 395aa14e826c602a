// SPDX-License-Identifier: Apache-2.0
//
// wmimo - Weichselberger massive MIMO channel statistics
// Copyright (C) 2026 the wmimo authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>

#include "core/errors.hpp"

namespace wmimo {

CVec hadamard(const CVec &a, const CVec &b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("hadamard: size mismatch");
    CVec out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        out[i] = a[i] * b[i];
    return out;
}

Complex trace_product(const CMat &a, const CMat &b)
{
    if (a.cols() != b.rows() || b.cols() != a.rows())
        throw std::invalid_argument("trace_product: incompatible shapes");
    Complex acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Complex *ra = a.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc += ra[j] * b(j, i);
    }
    return acc;
}

CVec matvec(const CMat &a, const CVec &x)
{
    if (a.cols() != x.size())
        throw std::invalid_argument("matvec: size mismatch");
    CVec y(a.rows(), Complex(0.0));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Complex *ra = a.row(i);
        Complex acc = 0.0;
        for (std::size_t j = 0; j < a.cols(); ++j)
            acc += ra[j] * x[j];
        y[i] = acc;
    }
    return y;
}

CVec adjoint_matvec(const CMat &a, const CVec &x)
{
    if (a.rows() != x.size())
        throw std::invalid_argument("adjoint_matvec: size mismatch");
    CVec y(a.cols(), Complex(0.0));
    // accumulate row by row, keeps the access pattern contiguous
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Complex *ra = a.row(i);
        const Complex xi = x[i];
        for (std::size_t j = 0; j < a.cols(); ++j)
            y[j] += std::conj(ra[j]) * xi;
    }
    return y;
}

CMat matmul(const CMat &a, const CMat &b)
{
    if (a.cols() != b.rows())
        throw std::invalid_argument("matmul: incompatible shapes");
    CMat c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        const Complex *ra = a.row(i);
        Complex *rc = c.row(i);
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = ra[k];
            const Complex *rb = b.row(k);
            for (std::size_t j = 0; j < b.cols(); ++j)
                rc[j] += aik * rb[j];
        }
    }
    return c;
}

CMat adjoint_times(const CMat &a, const CMat &b)
{
    if (a.rows() != b.rows())
        throw std::invalid_argument("adjoint_times: incompatible shapes");
    CMat c(a.cols(), b.cols());
    for (std::size_t k = 0; k < a.rows(); ++k) {
        const Complex *ra = a.row(k);
        const Complex *rb = b.row(k);
        for (std::size_t i = 0; i < a.cols(); ++i) {
            const Complex aki = std::conj(ra[i]);
            Complex *rc = c.row(i);
            for (std::size_t j = 0; j < b.cols(); ++j)
                rc[j] += aki * rb[j];
        }
    }
    return c;
}

CMat adjoint(const CMat &a)
{
    CMat t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            t(j, i) = std::conj(a(i, j));
    return t;
}

double unitarity_defect(const CMat &u)
{
    if (!u.square())
        throw std::invalid_argument("unitarity_defect: matrix not square");
    const CMat g = adjoint_times(u, u);
    double worst = 0.0;
    for (std::size_t i = 0; i < g.rows(); ++i)
        for (std::size_t j = 0; j < g.cols(); ++j) {
            const Complex d = g(i, j) - (i == j ? Complex(1.0) : Complex(0.0));
            worst = std::max(worst, std::abs(d));
        }
    return worst;
}

CMat haar_unitary(std::size_t m, RngStream &rng)
{
    if (m == 0)
        throw std::invalid_argument("haar_unitary: m must be positive");

    // a = i.i.d. CN(0,1); reduce a to R by Householder reflections while
    // accumulating the same reflections into q (so q^H a = R, q unitary).
    CMat a(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        Complex *ra = a.row(i);
        for (std::size_t j = 0; j < m; ++j)
            ra[j] = rng.complex_normal();
    }

    CMat q = CMat::identity(m);
    CVec v(m);

    for (std::size_t k = 0; k + 1 < m; ++k) {
        double nx2 = 0.0;
        for (std::size_t i = k; i < m; ++i)
            nx2 += std::norm(a(i, k));
        const double nx = std::sqrt(nx2);
        if (nx == 0.0)
            continue; // zero column, probability zero but stay safe

        const Complex x0 = a(k, k);
        const double ax0 = std::abs(x0);
        // alpha = -e^{i arg(x0)} * ||x||: maximizes ||v||, no cancellation
        const Complex phase = (ax0 > 0.0) ? x0 / ax0 : Complex(1.0);
        const Complex alpha = -phase * nx;

        double nv2 = 0.0;
        for (std::size_t i = k; i < m; ++i) {
            v[i] = a(i, k);
            if (i == k)
                v[i] -= alpha;
            nv2 += std::norm(v[i]);
        }
        if (nv2 == 0.0)
            continue;
        const double beta = 2.0 / nv2;

        // a <- (I - beta v v^H) a on the trailing block
        for (std::size_t j = k; j < m; ++j) {
            Complex s = 0.0;
            for (std::size_t i = k; i < m; ++i)
                s += std::conj(v[i]) * a(i, j);
            s *= beta;
            for (std::size_t i = k; i < m; ++i)
                a(i, j) -= s * v[i];
        }
        // q <- q (I - beta v v^H), accumulates the product of reflectors
        for (std::size_t i = 0; i < m; ++i) {
            Complex *rq = q.row(i);
            Complex s = 0.0;
            for (std::size_t j = k; j < m; ++j)
                s += rq[j] * v[j];
            s *= beta;
            for (std::size_t j = k; j < m; ++j)
                rq[j] -= s * std::conj(v[j]);
        }
    }

    // Fix the column phases so the factorization is the unique one with a
    // positive-real diagonal of R; that q is exactly Haar.
    for (std::size_t j = 0; j < m; ++j) {
        const Complex rjj = a(j, j);
        const double arjj = std::abs(rjj);
        const Complex ph = (arjj > 0.0) ? std::conj(rjj) / arjj : Complex(1.0);
        for (std::size_t i = 0; i < m; ++i)
            q(i, j) *= ph;
    }
    return q;
}

namespace {

// One cyclic sweep of complex Jacobi rotations over the strict upper
// triangle.  a is overwritten (stays Hermitian up to roundoff), the applied
// rotations are accumulated into the columns of vecs.
void jacobi_sweep(CMat &a, CMat &vecs, double threshold)
{
    const std::size_t n = a.rows();
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
            const Complex g = a(p, q);
            const double ag = std::abs(g);
            if (ag <= threshold)
                continue;

            const double app = a(p, p).real();
            const double aqq = a(q, q).real();
            const Complex eit = g / ag; // e^{i theta}

            const double tau = (app - aqq) / (2.0 * ag);
            const double t = (tau >= 0.0 ? 1.0 : -1.0)
                             / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
            const double c = 1.0 / std::sqrt(1.0 + t * t);
            const double s = t * c;

            const Complex se = s * eit;        // s e^{i theta}
            const Complex sec = std::conj(se); // s e^{-i theta}

            // row update: a <- J^H a
            for (std::size_t j = 0; j < n; ++j) {
                const Complex arp = a(p, j);
                const Complex arq = a(q, j);
                a(p, j) = c * arp + se * arq;
                a(q, j) = -sec * arp + c * arq;
            }
            // column update: a <- a J
            for (std::size_t i = 0; i < n; ++i) {
                const Complex aip = a(i, p);
                const Complex aiq = a(i, q);
                a(i, p) = c * aip + sec * aiq;
                a(i, q) = -se * aip + c * aiq;
            }
            // the rotation annihilates a(p,q) exactly in exact arithmetic
            a(p, q) = 0.0;
            a(q, p) = 0.0;
            a(p, p) = Complex(a(p, p).real());
            a(q, q) = Complex(a(q, q).real());

            for (std::size_t i = 0; i < n; ++i) {
                const Complex vip = vecs(i, p);
                const Complex viq = vecs(i, q);
                vecs(i, p) = c * vip + sec * viq;
                vecs(i, q) = -se * vip + c * viq;
            }
        }
    }
}

double offdiag_max(const CMat &a)
{
    double worst = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j)
                worst = std::max(worst, std::abs(a(i, j)));
    return worst;
}

} // namespace

EigResult hermitian_eig(const CMat &q)
{
    if (!q.square())
        throw std::invalid_argument("hermitian_eig: matrix not square");
    if (!q.is_hermitian())
        throw std::invalid_argument("hermitian_eig: matrix not Hermitian");

    const std::size_t n = q.rows();
    const double scale = q.max_abs();

    CMat a = q;
    // exact symmetrization kills the representational skew before rotating
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = Complex(a(i, i).real());
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex h = 0.5 * (a(i, j) + std::conj(a(j, i)));
            a(i, j) = h;
            a(j, i) = std::conj(h);
        }
    }

    CMat vecs = CMat::identity(n);
    const double tol = 1e-12 * std::max(scale, 1e-300);

    bool converged = (offdiag_max(a) <= tol);
    for (int sweep = 0; sweep < 100 && !converged; ++sweep) {
        jacobi_sweep(a, vecs, tol);
        converged = (offdiag_max(a) <= tol);
    }
    if (!converged)
        throw numeric_error("hermitian_eig: Jacobi iteration failed to converge");

    EigResult out;
    out.values.resize(n);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i)
        diag[i] = a(i, i).real();
    std::stable_sort(order.begin(), order.end(),
                     [&diag](std::size_t x, std::size_t y) { return diag[x] > diag[y]; });

    out.vectors = CMat(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        out.values[j] = diag[order[j]];
        for (std::size_t i = 0; i < n; ++i)
            out.vectors(i, j) = vecs(i, order[j]);
    }
    return out;
}

std::vector<double> clip_psd_eigenvalues(const std::vector<double> &values)
{
    double lmax = 0.0;
    for (double v : values)
        lmax = std::max(lmax, v);
    const double floor = -1e-10 * std::max(lmax, 1.0);

    std::vector<double> out;
    out.reserve(values.size());
    for (double v : values) {
        if (v < floor)
            throw numeric_error("clip_psd_eigenvalues: matrix is not positive semidefinite");
        out.push_back(v < 0.0 ? 0.0 : v);
    }
    return out;
}

} // namespace wmimo
