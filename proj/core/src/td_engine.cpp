#include "slowlight/td_engine.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "bloch_kernel.hpp"
#include "slowlight/errors.hpp"
#include "slowlight/response.hpp"

namespace slowlight {

namespace {

// Per-class constants and state, split into plain arrays so the class loop
// vectorizes. q folds the quadrature weight, the burnt class density and
// the 1/pi of the polarization integral into one coupling factor.
struct WeakBank {
    std::size_t m = 0;
    std::vector<double> e_re, e_im;
    std::vector<double> a_re, a_im;  // (i/2) * ia
    std::vector<double> b_re, b_im;  // (i/2) * ib
    std::vector<double> q;
    std::vector<double> s_re, s_im;

    void reset() {
        std::fill(s_re.begin(), s_re.end(), 0.0);
        std::fill(s_im.begin(), s_im.end(), 0.0);
    }
};

WeakBank make_weak_bank(const DetuningGrid& grid, const Medium& medium, double dt) {
    WeakBank bank;
    bank.m = grid.size();
    bank.e_re.resize(bank.m);
    bank.e_im.resize(bank.m);
    bank.a_re.resize(bank.m);
    bank.a_im.resize(bank.m);
    bank.b_re.resize(bank.m);
    bank.b_im.resize(bank.m);
    bank.q.resize(bank.m);
    bank.s_re.assign(bank.m, 0.0);
    bank.s_im.assign(bank.m, 0.0);
    for (std::size_t j = 0; j < bank.m; ++j) {
        const detail::IfCoeffs c = detail::if_coeffs(dt, grid.nodes[j], medium.t2);
        const cplx a = cplx(0.0, 0.5) * c.ia;
        const cplx b = cplx(0.0, 0.5) * c.ib;
        bank.e_re[j] = c.e.real();
        bank.e_im[j] = c.e.imag();
        bank.a_re[j] = a.real();
        bank.a_im[j] = a.imag();
        bank.b_re[j] = b.real();
        bank.b_im[j] = b.imag();
        bank.q[j] = grid.weights[j] * (1.0 - hole_profile(grid.nodes[j], medium.hole)) / pi;
    }
    return bank;
}

// Drive every class across the record with the field of one z slice and
// write the polarization source S(t) = sum_j q_j sigma_j(t). The WithPee
// variant also accumulates pee[t] += pee_scale * sum_j q_j |sigma_j|^2
// (the weak-field excited-population proxy). Summation order over j is
// fixed, keeping runs bit-reproducible.
template <bool WithPee>
void sweep_weak(WeakBank& bank, const std::vector<cplx>& omega, std::vector<cplx>& src,
                double* pee, double pee_scale) {
    bank.reset();
    const std::size_t n = omega.size();
    const std::size_t m = bank.m;
    const double* __restrict er = bank.e_re.data();
    const double* __restrict ei = bank.e_im.data();
    const double* __restrict ar = bank.a_re.data();
    const double* __restrict ai = bank.a_im.data();
    const double* __restrict br = bank.b_re.data();
    const double* __restrict bi = bank.b_im.data();
    const double* __restrict q = bank.q.data();
    double* __restrict sr = bank.s_re.data();
    double* __restrict si = bank.s_im.data();

    src[0] = cplx(0.0, 0.0);
    for (std::size_t t = 1; t < n; ++t) {
        const double o0r = omega[t - 1].real();
        const double o0i = omega[t - 1].imag();
        const double o1r = omega[t].real();
        const double o1i = omega[t].imag();
        double acc_r = 0.0, acc_i = 0.0, acc_p = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double dr = ar[j] * o0r - ai[j] * o0i + br[j] * o1r - bi[j] * o1i;
            const double di = ar[j] * o0i + ai[j] * o0r + br[j] * o1i + bi[j] * o1r;
            const double nr = er[j] * sr[j] - ei[j] * si[j] + dr;
            const double ni = er[j] * si[j] + ei[j] * sr[j] + di;
            sr[j] = nr;
            si[j] = ni;
            acc_r += q[j] * nr;
            acc_i += q[j] * ni;
            if constexpr (WithPee) acc_p += q[j] * (nr * nr + ni * ni);
        }
        src[t] = cplx(acc_r, acc_i);
        if constexpr (WithPee) pee[t] += pee_scale * acc_p;
    }
}

struct FullBank {
    std::size_t m = 0;
    std::vector<double> delta;
    std::vector<double> q;
    std::vector<cplx> sigma;
    std::vector<double> w;
};

FullBank make_full_bank(const DetuningGrid& grid, const Medium& medium) {
    FullBank bank;
    bank.m = grid.size();
    bank.delta = grid.nodes;
    bank.q.resize(bank.m);
    bank.sigma.assign(bank.m, cplx(0.0, 0.0));
    bank.w.assign(bank.m, 1.0);
    for (std::size_t j = 0; j < bank.m; ++j)
        bank.q[j] = grid.weights[j] * (1.0 - hole_profile(grid.nodes[j], medium.hole)) / pi;
    return bank;
}

template <bool WithPee>
void sweep_full(FullBank& bank, const Medium& medium, double dt,
                const std::vector<cplx>& omega, std::vector<cplx>& src, double* pee,
                double pee_scale) {
    std::fill(bank.sigma.begin(), bank.sigma.end(), cplx(0.0, 0.0));
    std::fill(bank.w.begin(), bank.w.end(), 1.0);
    const std::size_t n = omega.size();
    src[0] = cplx(0.0, 0.0);
    for (std::size_t t = 1; t < n; ++t) {
        cplx acc(0.0, 0.0);
        double acc_p = 0.0;
        for (std::size_t j = 0; j < bank.m; ++j) {
            detail::bloch_rk4_step(bank.sigma[j], bank.w[j], omega[t - 1], omega[t], dt,
                                   bank.delta[j], medium.t1, medium.t2);
            acc += bank.q[j] * bank.sigma[j];
            if constexpr (WithPee) acc_p += bank.q[j] * 0.5 * (1.0 - bank.w[j]);
        }
        src[t] = acc;
        if constexpr (WithPee) pee[t] += pee_scale * acc_p;
    }
}

} // namespace

LedgerSummary summarize_ledger(const EnergyLedger& ledger, const Medium& medium) {
    const std::size_t n = ledger.times.size();
    if (n < 2 || ledger.em_inside.size() != n || ledger.at_inside.size() != n ||
        ledger.entered.size() != n || ledger.emitted.size() != n)
        throw std::invalid_argument("energy ledger: inconsistent series lengths");

    const double total = ledger.entered.back();
    if (!(total > 0.0)) throw std::invalid_argument("energy ledger: no energy entered");

    LedgerSummary s;
    s.expected_ratio =
        c_light * medium.hole.depth * medium.alpha0 / medium.hole.width_fwhm;

    std::size_t best = 0;
    double best_outside = std::numeric_limits<double>::max();
    for (std::size_t t = 0; t < n; ++t) {
        const double outside = (total - ledger.entered[t]) + ledger.emitted[t];
        if (outside < best_outside) {
            best_outside = outside;
            best = t;
        }
    }
    s.best_time = ledger.times[best];
    s.em_inside_best = ledger.em_inside[best];
    s.at_inside_best = ledger.at_inside[best];
    s.outside_fraction = best_outside / total;
    s.partial_containment = s.outside_fraction > 0.01;
    s.partition_ratio =
        s.em_inside_best > 0.0 ? s.at_inside_best / s.em_inside_best : 0.0;

    // Conservation drift is only meaningful once the input flux has wound
    // down; during entry the instantaneous balance is dominated by the
    // half-sample ambiguity of the boundary integrals.
    std::size_t entry_end = n - 1;
    for (std::size_t t = 0; t < n; ++t) {
        if (ledger.entered[t] >= 0.999 * total) {
            entry_end = t;
            break;
        }
    }
    double drift = 0.0;
    for (std::size_t t = entry_end; t < n; ++t) {
        const double balance = ledger.entered[t] - ledger.em_inside[t] -
                               ledger.at_inside[t] - ledger.emitted[t];
        drift = std::max(drift, std::abs(balance) / total);
    }
    s.drift = drift;
    return s;
}

TdResult propagate_time_domain(const Pulse& input, const Medium& medium,
                               const DetuningGrid& grid, const TdConfig& config) {
    input.validate();
    medium.validate();
    const std::size_t n = input.size();
    const double dt = input.dt;

    const double alpha_l = medium.alpha0 * medium.length;
    const std::size_t z_min =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(100.0 * alpha_l / two_pi)));
    const std::size_t zs = config.z_steps == 0 ? z_min : config.z_steps;
    if (zs < z_min)
        throw NumericalError("td_engine", "propagate_time_domain",
                             "absorption length unresolved: need z_steps >= " +
                                 std::to_string(z_min));
    const double dz = medium.length / static_cast<double>(zs);

    // Group-characteristic analogue of a CFL bound: the delay picked up
    // across one z step must stay below the time resolution.
    const double slowness =
        medium.hole.depth * medium.alpha0 / medium.hole.width_fwhm;  // 1/v_g - 1/c
    if (dz * slowness > dt) {
        const std::size_t need = static_cast<std::size_t>(
            std::ceil(medium.length * slowness / dt));
        throw NumericalError("td_engine", "propagate_time_domain",
                             "group delay per z step exceeds the time step; "
                             "increase z_steps to at least " + std::to_string(need));
    }

    double delta_max = 0.0;
    for (double d : grid.nodes) delta_max = std::max(delta_max, std::abs(d));
    if (config.mode == BlochMode::full) {
        const double bound = detail::full_mode_step_bound(delta_max, medium.t2);
        if (dt > bound)
            throw NumericalError("td_engine", "propagate_time_domain",
                                 "time step cannot resolve the fastest class; reduce dt "
                                 "to at most " + std::to_string(bound) + " s");
    }

    // z nodes carrying the ledger integrals and the z-profile snapshots.
    const std::size_t stride =
        config.ledger_z_stride > 0 ? config.ledger_z_stride
                                   : std::max<std::size_t>(1, zs / 4096);
    std::vector<std::size_t> node_of_step(zs + 1, static_cast<std::size_t>(-1));
    std::vector<double> node_z;
    for (std::size_t k = 0; k <= zs; k += stride) {
        node_of_step[k] = node_z.size();
        node_z.push_back(dz * static_cast<double>(k));
    }
    if (node_of_step[zs] == static_cast<std::size_t>(-1)) {
        node_of_step[zs] = node_z.size();
        node_z.push_back(medium.length);
    }
    std::vector<double> node_wz(node_z.size(), 0.0);
    if (node_z.size() == 1) {
        node_wz[0] = medium.length;  // degenerate L = 0 case
    } else {
        node_wz[0] = 0.5 * (node_z[1] - node_z[0]);
        node_wz.back() = 0.5 * (node_z[node_z.size() - 1] - node_z[node_z.size() - 2]);
        for (std::size_t i = 1; i + 1 < node_z.size(); ++i)
            node_wz[i] = 0.5 * (node_z[i + 1] - node_z[i - 1]);
    }

    // Snapshot time indices from the configured cadence.
    std::vector<std::size_t> snap_t;
    if (config.snapshot_interval > 0.0) {
        for (double ts = 0.0; ts <= input.record_length() + 0.5 * dt;
             ts += config.snapshot_interval) {
            const std::size_t idx = std::min(
                n - 1, static_cast<std::size_t>(std::llround(ts / dt)));
            if (snap_t.empty() || snap_t.back() != idx) snap_t.push_back(idx);
        }
    }

    std::vector<std::size_t> probe_step;
    for (double f : config.probe_fractions) {
        if (!(f >= 0.0 && f <= 1.0))
            throw std::invalid_argument("td config: probe fractions must lie in [0, 1]");
        probe_step.push_back(static_cast<std::size_t>(
            std::llround(f * static_cast<double>(zs))));
    }

    TdResult result;
    result.grid = grid;
    result.z_steps = zs;
    result.snapshots.resize(snap_t.size());
    for (std::size_t s = 0; s < snap_t.size(); ++s) {
        result.snapshots[s].time = input.time_at(snap_t[s]);
        result.snapshots[s].z = node_z;
        result.snapshots[s].omega.assign(node_z.size(), cplx(0.0, 0.0));
    }
    result.probes.resize(probe_step.size());
    for (std::size_t p = 0; p < probe_step.size(); ++p)
        result.probes[p].z = dz * static_cast<double>(probe_step[p]);

    result.ledger.times.resize(n);
    for (std::size_t t = 0; t < n; ++t) result.ledger.times[t] = input.time_at(t);
    result.ledger.em_inside.assign(n, 0.0);
    result.ledger.at_inside.assign(n, 0.0);
    result.ledger.entered.assign(n, 0.0);
    result.ledger.emitted.assign(n, 0.0);

    WeakBank weak;
    FullBank full;
    if (config.mode == BlochMode::weak)
        weak = make_weak_bank(grid, medium, dt);
    else
        full = make_full_bank(grid, medium);

    const double at_scale = 2.0 * c_light * medium.alpha0;
    std::vector<cplx> field = input.envelope;
    std::vector<cplx> predictor(n), src(n), src2(n);
    const cplx step_gain = iunit * medium.alpha0 * dz;

    auto run_sweep = [&](const std::vector<cplx>& omega, std::vector<cplx>& out,
                         bool with_pee, double wz) {
        double* pee = result.ledger.at_inside.data();
        const double scale = at_scale * wz;
        if (config.mode == BlochMode::weak) {
            if (with_pee)
                sweep_weak<true>(weak, omega, out, pee, scale);
            else
                sweep_weak<false>(weak, omega, out, nullptr, 0.0);
        } else {
            if (with_pee)
                sweep_full<true>(full, medium, dt, omega, out, pee, scale);
            else
                sweep_full<false>(full, medium, dt, omega, out, nullptr, 0.0);
        }
    };

    auto record_slice = [&](std::size_t k, const std::vector<cplx>& omega) {
        const std::size_t node = node_of_step[k];
        if (node != static_cast<std::size_t>(-1)) {
            const double wz = node_wz[node];
            for (std::size_t t = 0; t < n; ++t)
                result.ledger.em_inside[t] += wz * std::norm(omega[t]);
            for (std::size_t s = 0; s < snap_t.size(); ++s)
                result.snapshots[s].omega[node] = omega[snap_t[s]];
        }
        for (std::size_t p = 0; p < probe_step.size(); ++p)
            if (probe_step[p] == k) result.probes[p].omega = omega;
    };

    for (std::size_t k = 0; k < zs; ++k) {
        const std::size_t node = node_of_step[k];
        const bool is_node = node != static_cast<std::size_t>(-1);
        run_sweep(field, src, is_node, is_node ? node_wz[node] : 0.0);
        record_slice(k, field);
        for (std::size_t t = 0; t < n; ++t)
            predictor[t] = field[t] + step_gain * src[t];
        run_sweep(predictor, src2, false, 0.0);
        for (std::size_t t = 0; t < n; ++t)
            field[t] += 0.5 * step_gain * (src[t] + src2[t]);
    }
    // Final slice: the atomic share at z = L needs one more class sweep.
    run_sweep(field, src, true, node_wz[node_of_step[zs]]);
    record_slice(zs, field);

    const std::vector<cplx>& in_face = input.envelope;
    for (std::size_t t = 1; t < n; ++t) {
        result.ledger.entered[t] =
            result.ledger.entered[t - 1] +
            0.5 * c_light * dt * (std::norm(in_face[t - 1]) + std::norm(in_face[t]));
        result.ledger.emitted[t] =
            result.ledger.emitted[t - 1] +
            0.5 * c_light * dt * (std::norm(field[t - 1]) + std::norm(field[t]));
    }

    result.output.t0 = input.t0;
    result.output.dt = dt;
    result.output.envelope = std::move(field);
    result.summary = summarize_ledger(result.ledger, medium);
    return result;
}

TdResult propagate_time_domain(const Pulse& input, const Medium& medium,
                               const TdConfig& config) {
    GridConfig gc = config.grid;
    if (gc.record_length == 0.0) gc.record_length = input.record_length();
    const DetuningGrid grid = build_detuning_grid(medium.hole, gc);
    return propagate_time_domain(input, medium, grid, config);
}

} // namespace slowlight
