// Copyright 2026 The sawloc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "sawloc/noise.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "sawloc/errors.h"
#include "sawloc/rng.h"
#include "sawloc/simd/kernels.h"

namespace sawloc {
namespace {

std::array<Eigen::Matrix2cd, 4> paulis() {
    Eigen::Matrix2cd i = Eigen::Matrix2cd::Identity();
    Eigen::Matrix2cd x;
    x << 0, 1, 1, 0;
    Eigen::Matrix2cd y;
    y << 0, Complex(0, -1), Complex(0, 1), 0;
    Eigen::Matrix2cd z;
    z << 1, 0, 0, -1;
    return {i, x, y, z};
}

Eigen::MatrixXcd kron(const Eigen::MatrixXcd& a, const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i) {
        for (Eigen::Index j = 0; j < a.cols(); ++j) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

void check_unit_interval(double p, const char* what) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw ConfigError(std::string(what) + " must lie in [0, 1], got " + std::to_string(p));
    }
}

bool is_identity_channel(const NoiseChannel& c) {
    return c.kraus.size() == 1 && c.kraus.front().isIdentity(0.0);
}

double gate_duration_ns(const Gate& g, const DeviceModel& d) {
    switch (g.kind) {
        case GateKind::kH:
        case GateKind::kP:
            return d.dur_1q_ns;
        case GateKind::kCP:
            return d.dur_2q_ns;
        case GateKind::kSwap:
            return 3.0 * d.dur_2q_ns;
    }
    return 0.0;
}

std::vector<double> slot_to_logical(std::span<const double> slot_probs, int n, std::span<const int> relabel) {
    std::vector<double> out(slot_probs.size());
    for (std::size_t w = 0; w < slot_probs.size(); ++w) {
        out[relabel_index(w, n, relabel)] = slot_probs[w];
    }
    return out;
}

}  // namespace

NoiseChannel NoiseChannel::depolarizing(int arity, double p) {
    check_unit_interval(p, "depolarizing probability");
    NoiseChannel c;
    c.arity = arity;
    const auto ps = paulis();
    if (arity == 1) {
        c.kind = ChannelKind::kDepolarizing1q;
        if (p == 0.0) {
            c.kraus.push_back(Eigen::MatrixXcd::Identity(2, 2));
            return c;
        }
        c.kraus.push_back(std::sqrt(1.0 - 0.75 * p) * Eigen::MatrixXcd(ps[0]));
        for (int k = 1; k < 4; ++k) {
            c.kraus.push_back(std::sqrt(0.25 * p) * Eigen::MatrixXcd(ps[static_cast<std::size_t>(k)]));
        }
        return c;
    }
    if (arity == 2) {
        c.kind = ChannelKind::kDepolarizing2q;
        if (p == 0.0) {
            c.kraus.push_back(Eigen::MatrixXcd::Identity(4, 4));
            return c;
        }
        for (int a = 0; a < 4; ++a) {
            for (int b = 0; b < 4; ++b) {
                const double w = (a == 0 && b == 0) ? 1.0 - 15.0 * p / 16.0 : p / 16.0;
                c.kraus.push_back(std::sqrt(w) * kron(ps[static_cast<std::size_t>(a)], ps[static_cast<std::size_t>(b)]));
            }
        }
        return c;
    }
    throw DomainError("depolarizing channel supports 1 or 2 qubits");
}

NoiseChannel NoiseChannel::thermal_relaxation(double t1_us, double t2_us, double duration_ns) {
    if (!(t1_us > 0.0) || !(t2_us > 0.0)) {
        throw ConfigError("thermal relaxation needs T1 > 0 and T2 > 0");
    }
    if (t2_us > 2.0 * t1_us) {
        throw ConfigError("unphysical relaxation: T2 = " + std::to_string(t2_us) + " us exceeds 2*T1 = " +
                          std::to_string(2.0 * t1_us) + " us");
    }
    if (!(duration_ns >= 0.0)) {
        throw DomainError("relaxation duration must be >= 0");
    }
    NoiseChannel c;
    c.kind = ChannelKind::kThermalRelaxation;
    c.arity = 1;
    const double d_us = duration_ns / 1000.0;
    const double gamma = std::isinf(t1_us) ? 0.0 : -std::expm1(-d_us / t1_us);
    const double inv_tphi = 1.0 / t2_us - 0.5 / t1_us;
    const double coherence = std::exp(-d_us * std::max(inv_tphi, 0.0));
    const double lambda = 1.0 - coherence * coherence;
    if (gamma == 0.0 && lambda == 0.0) {
        c.kraus.push_back(Eigen::MatrixXcd::Identity(2, 2));
        return c;
    }
    Eigen::MatrixXcd ad0(2, 2), ad1(2, 2), pd0(2, 2), pd1(2, 2);
    ad0 << 1, 0, 0, std::sqrt(1.0 - gamma);
    ad1 << 0, std::sqrt(gamma), 0, 0;
    pd0 << 1, 0, 0, std::sqrt(1.0 - lambda);
    pd1 << 0, 0, 0, std::sqrt(lambda);
    for (const auto* pd : {&pd0, &pd1}) {
        for (const auto* ad : {&ad0, &ad1}) {
            c.kraus.push_back((*pd) * (*ad));
        }
    }
    return c;
}

NoiseChannel NoiseChannel::readout_confusion(double p01, double p10) {
    check_unit_interval(p01, "readout_p01");
    check_unit_interval(p10, "readout_p10");
    NoiseChannel c;
    c.kind = ChannelKind::kReadoutConfusion;
    c.arity = 1;
    Eigen::MatrixXcd k00 = Eigen::MatrixXcd::Zero(2, 2), k10 = k00, k01 = k00, k11 = k00;
    k00(0, 0) = std::sqrt(1.0 - p01);  // 0 read as 0
    k10(1, 0) = std::sqrt(p01);        // 0 read as 1
    k01(0, 1) = std::sqrt(p10);        // 1 read as 0
    k11(1, 1) = std::sqrt(1.0 - p10);  // 1 read as 1
    c.kraus = {k00, k10, k01, k11};
    return c;
}

double NoiseChannel::completeness_error() const {
    const auto d = kraus.front().rows();
    Eigen::MatrixXcd sum = Eigen::MatrixXcd::Zero(d, d);
    for (const auto& k : kraus) {
        sum += k.adjoint() * k;
    }
    return (sum - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff();
}

Eigen::MatrixXcd NoiseChannel::superoperator() const {
    const auto d = kraus.front().rows();
    Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d * d, d * d);
    for (const auto& k : kraus) {
        for (Eigen::Index rp = 0; rp < d; ++rp) {
            for (Eigen::Index cp = 0; cp < d; ++cp) {
                for (Eigen::Index r = 0; r < d; ++r) {
                    for (Eigen::Index c = 0; c < d; ++c) {
                        s(rp * d + cp, r * d + c) += k(rp, r) * std::conj(k(cp, c));
                    }
                }
            }
        }
    }
    return s;
}

void apply_channel(DensityMatrix& rho, const NoiseChannel& channel, std::span<const int> qubits) {
    if (static_cast<int>(qubits.size()) != channel.arity) {
        throw DomainError("channel arity does not match the number of target qubits");
    }
    if (is_identity_channel(channel)) {
        return;
    }
    const int n = rho.num_qubits();
    std::vector<unsigned> bits;
    for (int q : qubits) {
        if (q < 0 || q >= n) throw DomainError("channel qubit out of range");
        bits.push_back(static_cast<unsigned>(n - 1 - q));
    }
    for (int q : qubits) {
        bits.push_back(static_cast<unsigned>(n + n - 1 - q));
    }
    const Eigen::MatrixXcd s = channel.superoperator();
    std::vector<Complex> flat(static_cast<std::size_t>(s.size()));
    for (Eigen::Index r = 0; r < s.rows(); ++r) {
        for (Eigen::Index c = 0; c < s.cols(); ++c) {
            flat[static_cast<std::size_t>(r * s.cols() + c)] = s(r, c);
        }
    }
    simd::kernels().apply_matrix(rho.mutable_flat(), bits, flat);
}

void apply_gate(DensityMatrix& rho, const Gate& gate) {
    const int n = rho.num_qubits();
    apply_gate(rho.mutable_flat(), n, gate, false, 0);
    apply_gate(rho.mutable_flat(), n, gate, true, static_cast<unsigned>(n));
}

NoisyExecutor::NoisyExecutor(const DeviceModel& device, std::vector<int> slots)
    : device_(device),
      slots_(std::move(slots)),
      depol_1q_(NoiseChannel::depolarizing(1, device.err_1q)),
      depol_2q_(NoiseChannel::depolarizing(2, device.err_2q)) {
    device_.validate();
    for (double d : {device.dur_1q_ns, device.dur_2q_ns, 3.0 * device.dur_2q_ns}) {
        std::vector<NoiseChannel> per_slot;
        for (int phys : slots_) {
            const auto& cal = device.qubits.at(static_cast<std::size_t>(phys));
            per_slot.push_back(NoiseChannel::thermal_relaxation(cal.t1_us, cal.t2_us, d));
        }
        relaxation_cache_.emplace(d, std::move(per_slot));
    }
}

int NoisyExecutor::slot_of(int physical) const {
    const auto it = std::find(slots_.begin(), slots_.end(), physical);
    if (it == slots_.end()) {
        throw DomainError("physical qubit " + std::to_string(physical) + " is outside the simulated register");
    }
    return static_cast<int>(it - slots_.begin());
}

void NoisyExecutor::relax_all(DensityMatrix& rho, double duration_ns) const {
    const auto& channels = relaxation_cache_.at(duration_ns);
    for (std::size_t s = 0; s < slots_.size(); ++s) {
        const int q = static_cast<int>(s);
        apply_channel(rho, channels[s], std::span<const int>(&q, 1));
    }
}

void NoisyExecutor::run(DensityMatrix& rho, const RoutedCircuit& routed) const {
    if (rho.num_qubits() != static_cast<int>(slots_.size())) {
        throw DomainError("density matrix width does not match the simulated register");
    }
    for (const Gate& g : routed.circuit.gates) {
        Gate local = g;
        local.qubits[0] = slot_of(g.qubits[0]);
        local.qubits[1] = g.is_two_qubit() ? slot_of(g.qubits[1]) : local.qubits[0];
        apply_gate(rho, local);
        if (local.is_two_qubit()) {
            const std::array<int, 2> pair{local.qubits[0], local.qubits[1]};
            const int repeats = local.kind == GateKind::kSwap ? 3 : 1;
            for (int r = 0; r < repeats; ++r) {
                apply_channel(rho, depol_2q_, pair);
            }
        } else {
            apply_channel(rho, depol_1q_, std::span<const int>(&local.qubits[0], 1));
        }
        relax_all(rho, gate_duration_ns(g, device_));
    }
}

DensityMatrix apply_circuit_noisy(const DensityMatrix& rho, const RoutedCircuit& routed, const DeviceModel& device) {
    const int n = routed.num_logical();
    if (rho.num_qubits() != n) {
        throw DomainError("apply_circuit_noisy: density matrix has " + std::to_string(rho.num_qubits()) +
                          " qubits, routed circuit has " + std::to_string(n));
    }
    NoisyExecutor exec(device, routed.placement);
    DensityMatrix work = rho;
    exec.run(work, routed);

    std::vector<int> relabel(static_cast<std::size_t>(n));
    for (int l = 0; l < n; ++l) {
        relabel[static_cast<std::size_t>(l)] = exec.slot_of(routed.final_layout[static_cast<std::size_t>(l)]);
    }
    const auto dim = static_cast<Eigen::Index>(work.dim());
    Eigen::MatrixXcd out(dim, dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const auto li = static_cast<Eigen::Index>(relabel_index(static_cast<std::size_t>(i), n, relabel));
        for (Eigen::Index j = 0; j < dim; ++j) {
            const auto lj = static_cast<Eigen::Index>(relabel_index(static_cast<std::size_t>(j), n, relabel));
            out(li, lj) = work.matrix()(i, j);
        }
    }
    return DensityMatrix(std::move(out));
}

MomentumDistribution measure_readout(const MomentumDistribution& dist, const DeviceModel& device,
                                     std::span<const int> physical_of_logical) {
    dist.validate();
    const int n = log2_exact(dist.dim());
    if (static_cast<int>(physical_of_logical.size()) != n) {
        throw DomainError("measure_readout: need one physical qubit per logical qubit");
    }
    std::vector<double> p(dist.weights().begin(), dist.weights().end());
    for (int l = 0; l < n; ++l) {
        const auto& cal = device.qubits.at(static_cast<std::size_t>(physical_of_logical[static_cast<std::size_t>(l)]));
        const std::size_t stride = std::size_t{1} << (n - 1 - l);
        for (std::size_t base = 0; base < p.size(); base += 2 * stride) {
            for (std::size_t i = base; i < base + stride; ++i) {
                const double p0 = p[i];
                const double p1 = p[i + stride];
                p[i] = (1.0 - cal.readout_p01) * p0 + cal.readout_p10 * p1;
                p[i + stride] = cal.readout_p01 * p0 + (1.0 - cal.readout_p10) * p1;
            }
        }
    }
    return MomentumDistribution(std::move(p));
}

std::vector<std::int64_t> sample_shots(const MomentumDistribution& dist, std::int64_t shots, std::uint64_t seed) {
    if (shots < 1) {
        throw DomainError("shots must be >= 1");
    }
    const auto w = dist.weights();
    std::vector<double> cumulative(w.size());
    double acc = 0.0;
    std::size_t last_nonzero = 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        acc += w[i];
        cumulative[i] = acc;
        if (w[i] > 0.0) last_nonzero = i;
    }
    std::vector<std::int64_t> counts(w.size(), 0);
    for (std::int64_t s = 0; s < shots; ++s) {
        const double u = uniform01(derive_seed(seed, static_cast<std::uint64_t>(s))) * acc;
        auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
        std::size_t idx = it == cumulative.end() ? last_nonzero : static_cast<std::size_t>(it - cumulative.begin());
        if (w[idx] == 0.0) idx = last_nonzero;
        ++counts[idx];
    }
    return counts;
}

bool peak_visible(std::span<const double> sampled, double peak_stderr, std::size_t peak_index) {
    double others = 0.0;
    for (std::size_t i = 0; i < sampled.size(); ++i) {
        if (i != peak_index) others += sampled[i];
    }
    const double mean_other = others / static_cast<double>(sampled.size() - 1);
    const double margin = sampled[peak_index] - mean_other;
    return margin > 0.0 && margin >= 3.0 * peak_stderr;
}

NoisyRunResult noisy_localization_run(const MapParams& params, const DeviceModel& device, int initial_momentum,
                                      int steps, std::int64_t shots, int repetitions, std::uint64_t seed) {
    if (steps < 0) throw DomainError("steps must be >= 0");
    if (shots < 1) throw DomainError("shots must be >= 1");
    if (repetitions < 1) throw DomainError("repetitions must be >= 1");
    device.validate();

    const Circuit step = build_step_circuit(params);
    const RoutedCircuit first = route_circuit(step, device);
    const int n = params.num_qubits;
    const std::size_t peak_index = index_of_momentum(initial_momentum, params.dim);

    NoisyRunResult result;
    result.params = params;
    result.device = device.name;
    result.initial_momentum = initial_momentum;
    result.steps = steps;
    result.shots = shots;
    result.repetitions = repetitions;
    result.seed = seed;
    result.placement = first.placement;
    result.swap_count = first.swap_count;
    result.avg_decoherence_us = avg_decoherence(device, first.placement);
    result.total_error = total_relative_error(first, device);
    result.execution_time_us = execution_time(first, device);

    NoisyExecutor exec(device, first.placement);
    DensityMatrix rho = DensityMatrix::pure(basis_state(params, initial_momentum));
    std::vector<int> layout = first.placement;  // logical qubit -> physical qubit
    std::map<std::vector<int>, RoutedCircuit> routed_from;
    routed_from.emplace(first.placement, first);

    for (int t = 0; t <= steps; ++t) {
        if (t > 0) {
            auto it = routed_from.find(layout);
            if (it == routed_from.end()) {
                it = routed_from.emplace(layout, route_with_placement(step, device, layout)).first;
            }
            exec.run(rho, it->second);
            layout = it->second.final_layout;
        }
        std::vector<double> slot_probs(rho.dim());
        for (std::size_t b = 0; b < rho.dim(); ++b) {
            slot_probs[b] = rho.matrix()(static_cast<Eigen::Index>(b), static_cast<Eigen::Index>(b)).real();
        }
        std::vector<int> relabel(static_cast<std::size_t>(n));
        for (int l = 0; l < n; ++l) {
            relabel[static_cast<std::size_t>(l)] = exec.slot_of(layout[static_cast<std::size_t>(l)]);
        }
        const MomentumDistribution logical(slot_to_logical(slot_probs, n, relabel));
        const MomentumDistribution modeled = measure_readout(logical, device, layout);

        StepRecord rec;
        rec.t = t;
        rec.modeled.assign(modeled.weights().begin(), modeled.weights().end());
        rec.peak_modeled = rec.modeled[peak_index];
        std::vector<std::vector<double>> freqs;
        for (int r = 0; r < repetitions; ++r) {
            const auto task = static_cast<std::uint64_t>(t) * static_cast<std::uint64_t>(repetitions) +
                              static_cast<std::uint64_t>(r);
            const auto counts = sample_shots(modeled, shots, derive_seed(seed, task));
            std::vector<double> f(counts.size());
            for (std::size_t b = 0; b < counts.size(); ++b) {
                f[b] = static_cast<double>(counts[b]) / static_cast<double>(shots);
            }
            freqs.push_back(std::move(f));
        }
        const std::size_t dim = params.dim;
        rec.sampled.assign(dim, 0.0);
        rec.stderr_.assign(dim, 0.0);
        for (const auto& f : freqs) {
            for (std::size_t b = 0; b < dim; ++b) rec.sampled[b] += f[b];
        }
        for (double& v : rec.sampled) v /= static_cast<double>(repetitions);
        for (std::size_t b = 0; b < dim; ++b) {
            if (repetitions >= 2) {
                double ss = 0.0;
                for (const auto& f : freqs) ss += (f[b] - rec.sampled[b]) * (f[b] - rec.sampled[b]);
                rec.stderr_[b] = std::sqrt(ss / static_cast<double>(repetitions - 1) / static_cast<double>(repetitions));
            } else {
                rec.stderr_[b] = std::sqrt(rec.sampled[b] * (1.0 - rec.sampled[b]) / static_cast<double>(shots));
            }
        }
        rec.peak = rec.sampled[peak_index];
        rec.peak_stderr = rec.stderr_[peak_index];
        rec.visible = peak_visible(rec.sampled, rec.peak_stderr, peak_index);
        result.per_step.push_back(std::move(rec));
    }
    return result;
}

}  // namespace sawloc
