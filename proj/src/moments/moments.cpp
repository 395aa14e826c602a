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

#include "moments/moments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "core/errors.hpp"
#include "core/linalg.hpp"

namespace wmimo {

namespace {

double sum_sq(const std::vector<double> &omega)
{
    double acc = 0.0;
    for (double w : omega)
        acc += w * w;
    return acc;
}

// v^H diag(omega) v accumulated as sum of nonnegative terms
double weighted_norm_sq(const std::vector<double> &omega, const CVec &v)
{
    double acc = 0.0;
    for (std::size_t i = 0; i < omega.size(); ++i)
        acc += omega[i] * std::norm(v[i]);
    return acc;
}

struct TraceOverlap {
    double trace = 0.0;   // tr(Q_k Q_l) via the coupling expansion
    double vmax_sq = 0.0; // max_{mn} |V(m,n)|^2, V = U_l^H U_k
};

TraceOverlap trace_overlap(const CMat &u_k, const std::vector<double> &omega_k,
                           const CMat &u_l, const std::vector<double> &omega_l)
{
    const CMat v = adjoint_times(u_l, u_k);
    TraceOverlap out;
    for (std::size_t mi = 0; mi < v.rows(); ++mi) {
        const Complex *row = v.row(mi);
        for (std::size_t ni = 0; ni < v.cols(); ++ni) {
            const double w = std::norm(row[ni]);
            out.trace += omega_l[mi] * omega_k[ni] * w;
            out.vmax_sq = std::max(out.vmax_sq, w);
        }
    }
    return out;
}

} // namespace

double fourth_moment(const UserChannelSpec &spec)
{
    const double md = static_cast<double>(spec.m);
    const double g2 = spec.gamma * spec.gamma;
    const double e2 = spec.eta * spec.eta;
    return g2 * g2 * sum_sq(spec.omega) + md * md
           + 2.0 * e2 * g2 * weighted_norm_sq(spec.omega, spec.v);
}

double nlos_fourth_moment(const std::vector<double> &omega)
{
    double tr = 0.0;
    for (double w : omega) {
        if (!(w >= 0.0))
            throw std::invalid_argument("nlos_fourth_moment: omega entries must be nonnegative");
        tr += w;
    }
    return sum_sq(omega) + tr * tr;
}

CrossMoment cross_moment(const UserChannelSpec &spec_k, const UserChannelSpec &spec_l)
{
    if (spec_k.m != spec_l.m)
        throw std::invalid_argument("cross_moment: antenna counts differ");

    const double ek2 = spec_k.eta * spec_k.eta;
    const double el2 = spec_l.eta * spec_l.eta;
    const double gk2 = spec_k.gamma * spec_k.gamma;
    const double gl2 = spec_l.gamma * spec_l.gamma;

    CrossMoment cm;
    cm.term_los_los = ek2 * el2 * std::norm(dot(spec_k.hbar, spec_l.hbar));
    cm.term_nlos_nlos =
        gk2 * gl2
        * trace_overlap(spec_k.u, spec_k.omega, spec_l.u, spec_l.omega).trace;
    cm.term_k_los = ek2 * gl2
                    * weighted_norm_sq(spec_l.omega,
                                       adjoint_matvec(spec_l.u, spec_k.hbar));
    cm.term_l_los = gk2 * el2
                    * weighted_norm_sq(spec_k.omega,
                                       adjoint_matvec(spec_k.u, spec_l.hbar));
    cm.value = cm.term_los_los + cm.term_nlos_nlos + cm.term_k_los + cm.term_l_los;
    return cm;
}

HardeningReport hardening_variance(const UserChannelSpec &spec)
{
    const double md = static_cast<double>(spec.m);
    const double g2 = spec.gamma * spec.gamma;
    const double e2 = spec.eta * spec.eta;

    HardeningReport rep;
    rep.los_term = 2.0 * e2 * weighted_norm_sq(spec.omega, spec.v);
    rep.nlos_term = g2 * sum_sq(spec.omega);
    rep.variance = g2 / (md * md) * (rep.los_term + rep.nlos_term);
    const auto mm = std::minmax_element(spec.omega.begin(), spec.omega.end());
    rep.rr_lower = *mm.first / md;
    rep.rr_upper = *mm.second / md;
    return rep;
}

std::pair<double, double> rayleigh_ritz_bounds(const UserChannelSpec &spec)
{
    const double md = static_cast<double>(spec.m);
    const auto mm = std::minmax_element(spec.omega.begin(), spec.omega.end());
    return {*mm.first / md, *mm.second / md};
}

double quadratic_form_alignment(const std::vector<double> &omega)
{
    if (omega.size() < 2)
        throw std::invalid_argument("quadratic_form_alignment: need at least two eigenvalues");
    return (omega[0] + omega[1]) / (2.0 * static_cast<double>(omega.size()));
}

double quadratic_form_alignment_explicit(const CMat &u, const std::vector<double> &omega)
{
    if (!u.square() || u.rows() != omega.size() || omega.size() < 2)
        throw std::invalid_argument("quadratic_form_alignment_explicit: bad dimensions");
    const std::size_t m = u.rows();
    const double md = static_cast<double>(m);

    CVec hbar(m);
    const double amp = std::sqrt(md / 2.0);
    for (std::size_t i = 0; i < m; ++i)
        hbar[i] = amp * (u(i, 0) + u(i, 1));

    // the long way round, on purpose: assemble Q and take the form
    CMat q(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Complex acc = 0.0;
            for (std::size_t k = 0; k < m; ++k)
                acc += omega[k] * u(i, k) * std::conj(u(j, k));
            q(i, j) = acc;
        }
    const CVec y = matvec(q, hbar);
    return dot(hbar, y).real() / (md * md);
}

TraceInterference trace_interference(const CMat &q_k, const CMat &q_l)
{
    if (!q_k.square() || !q_l.square() || q_k.rows() != q_l.rows())
        throw std::invalid_argument("trace_interference: need square matrices of equal size");

    const double md = static_cast<double>(q_k.rows());
    TraceInterference out;
    out.value = trace_product(q_k, q_l).real();

    if (!q_k.is_hermitian() || !q_l.is_hermitian())
        return out;
    if (std::abs(q_k.trace().real() - md) > 1e-6 * md
        || std::abs(q_l.trace().real() - md) > 1e-6 * md)
        return out;

    try {
        const CovarianceMatrix ck = with_eigendecomposition(q_k);
        const CovarianceMatrix cl = with_eigendecomposition(q_l);
        const TraceOverlap ov = trace_overlap(ck.u, ck.omega, cl.u, cl.omega);
        out.upper = md * md * ov.vmax_sq;
        out.lower = md;
        out.has_bounds = true;
    } catch (const numeric_error &) {
        // not PSD within the clipping rule: value stands, bounds do not
    }
    return out;
}

FpReport fp_variance(const UserChannelSpec &spec_k, const UserChannelSpec &spec_l)
{
    const CrossMoment cm = cross_moment(spec_k, spec_l);
    const double md = static_cast<double>(spec_k.m);
    const TraceOverlap ov =
        trace_overlap(spec_k.u, spec_k.omega, spec_l.u, spec_l.omega);

    FpReport rep;
    rep.variance = cm.value / (md * md);
    rep.term_los_los = cm.term_los_los;
    rep.term_nlos_nlos = cm.term_nlos_nlos;
    rep.term_k_los = cm.term_k_los;
    rep.term_l_los = cm.term_l_los;
    rep.trace_value = ov.trace;
    rep.trace_lower = md;
    rep.trace_upper = md * md * ov.vmax_sq;
    return rep;
}

ScalingMetrics scaling_metrics(const UserChannelSpec &spec_k, const UserChannelSpec &spec_l)
{
    if (spec_k.m != spec_l.m)
        throw std::invalid_argument("scaling_metrics: antenna counts differ");

    ScalingMetrics sm;
    sm.omega_max = *std::max_element(spec_k.omega.begin(), spec_k.omega.end());
    for (const Complex &x : spec_k.v)
        sm.v_max_sq = std::max(sm.v_max_sq, std::norm(x));
    sm.omega_outer_max =
        sm.omega_max * *std::max_element(spec_l.omega.begin(), spec_l.omega.end());

    const CMat r = adjoint_times(spec_k.u, spec_l.u);
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            sm.r_max = std::max(sm.r_max, std::abs(r(i, j)));

    const CVec nu = adjoint_matvec(spec_l.u, spec_k.hbar);
    for (const Complex &x : nu)
        sm.nu_max = std::max(sm.nu_max, std::abs(x));

    sm.hbar_align = std::abs(dot(spec_k.hbar, spec_l.hbar));
    return sm;
}

ScalingDiagnostic assess_scaling(const std::string &metric,
                                 const std::vector<double> &m_values,
                                 const std::vector<double> &values)
{
    if (m_values.size() != values.size())
        throw std::invalid_argument("assess_scaling: size mismatch");
    if (m_values.size() < 3)
        throw std::invalid_argument("assess_scaling: need at least 3 antenna counts");

    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const double n = static_cast<double>(m_values.size());
    for (std::size_t i = 0; i < m_values.size(); ++i) {
        if (!(m_values[i] > 0.0) || !(values[i] > 0.0))
            throw std::invalid_argument("assess_scaling: need positive antenna counts and values");
        const double x = std::log(m_values[i]);
        const double y = std::log(values[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }

    ScalingDiagnostic diag;
    diag.metric = metric;
    diag.m_values = m_values;
    diag.values = values;
    diag.epsilon = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return diag;
}

} // namespace wmimo
