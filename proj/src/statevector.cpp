#include "qll/statevector.hpp"

#include <algorithm>
#include <cmath>

#include "qll/errors.hpp"
#include "qll/rng.hpp"

namespace qll {

namespace {

constexpr double kNormTolerance = 1e-9;

struct TwoByTwo {
    Amplitude u00, u01, u10, u11;
};

TwoByTwo base_matrix(GateKind kind)
{
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const Amplitude i(0.0, 1.0);
    const Amplitude t_phase = std::polar(1.0, M_PI / 4.0);
    switch (kind) {
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
        return {0, 1, 1, 0};
    case GateKind::Y:
        return {0, -i, i, 0};
    case GateKind::Z:
        return {1, 0, 0, -1};
    case GateKind::H:
        return {inv_sqrt2, inv_sqrt2, inv_sqrt2, -inv_sqrt2};
    case GateKind::S:
        return {1, 0, 0, i};
    case GateKind::Sdg:
        return {1, 0, 0, -i};
    case GateKind::T:
        return {1, 0, 0, t_phase};
    case GateKind::Tdg:
        return {1, 0, 0, std::conj(t_phase)};
    case GateKind::Measure:
        break;
    }
    throw MeasureInUnitaryRunError("measure has no unitary");
}

void apply_two_by_two(AmplitudeVector& amps, const TwoByTwo& u, int target,
                      std::uint64_t control_mask)
{
    const std::uint64_t dim = static_cast<std::uint64_t>(amps.size());
    const std::uint64_t target_bit = 1ULL << target;
    for (std::uint64_t idx = 0; idx < dim; ++idx) {
        if ((idx & target_bit) != 0 || (idx & control_mask) != control_mask) {
            continue;
        }
        const std::uint64_t pair = idx | target_bit;
        const Amplitude a0 = amps[static_cast<Eigen::Index>(idx)];
        const Amplitude a1 = amps[static_cast<Eigen::Index>(pair)];
        amps[static_cast<Eigen::Index>(idx)] = u.u00 * a0 + u.u01 * a1;
        amps[static_cast<Eigen::Index>(pair)] = u.u10 * a0 + u.u11 * a1;
    }
}

void check_norm(const Statevector& state)
{
    if (std::abs(state.norm_squared() - 1.0) > kNormTolerance) {
        throw Error("statevector norm drifted beyond tolerance");
    }
}

// Measured (qubit, clbit) pairs in clbit order; empty means "no measures".
std::vector<std::pair<int, int>> measure_map(const QuantumCircuit& circuit)
{
    std::vector<std::pair<int, int>> pairs;
    bool seen_measure = false;
    for (const Gate& g : circuit.gates) {
        if (g.is_measure()) {
            seen_measure = true;
            pairs.emplace_back(g.targets[0], *g.classical_target);
        } else if (seen_measure) {
            throw UnsupportedOperationError("mid-circuit measurement is not supported");
        }
    }
    return pairs;
}

QuantumCircuit strip_measures(const QuantumCircuit& circuit)
{
    QuantumCircuit out;
    out.num_qubits = circuit.num_qubits;
    out.num_clbits = circuit.num_clbits;
    out.qubit_labels = circuit.qubit_labels;
    for (const Gate& g : circuit.gates) {
        if (!g.is_measure()) {
            out.gates.push_back(g);
        }
    }
    return out;
}

std::uint64_t extract_outcome(std::uint64_t basis_index,
                              const std::vector<std::pair<int, int>>& pairs)
{
    if (pairs.empty()) {
        return basis_index;
    }
    std::uint64_t outcome = 0;
    for (const auto& [qubit, clbit] : pairs) {
        if ((basis_index >> qubit) & 1ULL) {
            outcome |= 1ULL << clbit;
        }
    }
    return outcome;
}

void apply_pauli(Statevector& state, int pauli, int qubit)
{
    static const TwoByTwo x = {0, 1, 1, 0};
    static const TwoByTwo y = {0, Amplitude(0, -1), Amplitude(0, 1), 0};
    static const TwoByTwo z = {1, 0, 0, -1};
    switch (pauli) {
    case 1:
        apply_two_by_two(state.amplitudes, x, qubit, 0);
        break;
    case 2:
        apply_two_by_two(state.amplitudes, y, qubit, 0);
        break;
    case 3:
        apply_two_by_two(state.amplitudes, z, qubit, 0);
        break;
    default:
        break;
    }
}

void apply_depolarizing_event(Statevector& state, const Gate& gate,
                              const NoiseSpec& noise, RngStream& rng)
{
    const auto qubits = gate.qubits();
    const double p = qubits.size() == 1 ? noise.depolarizing_prob_1q
                                        : noise.depolarizing_prob_2q;
    if (p <= 0.0 || rng.next_unit() >= p) {
        return;
    }
    // uniform non-identity Pauli string on the acted-on qubits
    const std::uint64_t strings = 1ULL << (2 * qubits.size());
    const std::uint64_t pick = 1 + rng.next_below(strings - 1);
    for (std::size_t i = 0; i < qubits.size(); ++i) {
        apply_pauli(state, static_cast<int>((pick >> (2 * i)) & 3ULL), qubits[i]);
    }
}

std::uint64_t draw_index(const std::vector<double>& cumulative, double u)
{
    auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    if (it == cumulative.end()) {
        return cumulative.size() - 1;
    }
    return static_cast<std::uint64_t>(it - cumulative.begin());
}

} // namespace

Statevector::Statevector(int qubits) : num_qubits(qubits)
{
    amplitudes = AmplitudeVector::Zero(1LL << qubits);
    amplitudes[0] = 1.0;
}

Statevector Statevector::basis_state(int qubits, std::uint64_t index)
{
    Statevector state;
    state.num_qubits = qubits;
    state.amplitudes = AmplitudeVector::Zero(1LL << qubits);
    state.amplitudes[static_cast<Eigen::Index>(index)] = 1.0;
    return state;
}

void apply_gate(Statevector& state, const Gate& gate)
{
    if (gate.is_measure()) {
        throw MeasureInUnitaryRunError("measure gate in a unitary run");
    }
    const TwoByTwo u = base_matrix(gate.kind);
    std::uint64_t control_mask = 0;
    for (int c : gate.controls) {
        control_mask |= 1ULL << c;
    }
    apply_two_by_two(state.amplitudes, u, gate.targets[0], control_mask);
}

Statevector run_statevector(const QuantumCircuit& circuit,
                            const std::optional<Statevector>& initial)
{
    Statevector state = initial.value_or(Statevector(circuit.num_qubits));
    if (state.num_qubits != circuit.num_qubits) {
        throw DimensionMismatchError("initial state size does not match the circuit");
    }
    for (const Gate& g : circuit.gates) {
        apply_gate(state, g);
        check_norm(state);
    }
    return state;
}

int measured_bits(const QuantumCircuit& circuit)
{
    return measure_map(circuit).empty() ? circuit.num_qubits : circuit.num_clbits;
}

std::vector<double> exact_probabilities(const QuantumCircuit& circuit)
{
    const auto pairs = measure_map(circuit);
    const Statevector state = run_statevector(strip_measures(circuit));
    const int bits = pairs.empty() ? circuit.num_qubits : circuit.num_clbits;
    std::vector<double> probs(1ULL << bits, 0.0);
    for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
        const double p = std::norm(state.amplitudes[i]);
        if (p > 0.0) {
            probs[extract_outcome(static_cast<std::uint64_t>(i), pairs)] += p;
        }
    }
    return probs;
}

CountsDistribution sample_counts(const QuantumCircuit& circuit, std::uint64_t shots,
                                 std::uint64_t seed,
                                 const std::optional<NoiseSpec>& noise)
{
    if (shots == 0) {
        throw ZeroShotsError("sampling requires at least one shot");
    }
    if (noise && (noise->depolarizing_prob_1q < 0.0 || noise->depolarizing_prob_1q > 1.0 ||
                  noise->depolarizing_prob_2q < 0.0 || noise->depolarizing_prob_2q > 1.0)) {
        throw Error("depolarizing probabilities must lie in [0, 1]");
    }
    const auto pairs = measure_map(circuit);
    const int bits = pairs.empty() ? circuit.num_qubits : circuit.num_clbits;
    const QuantumCircuit body = strip_measures(circuit);

    CountsDistribution dist;
    dist.num_bits = bits;
    RngStream shot_rng = RngStream(seed).derive("shots");

    const bool noisy = noise.has_value() && (noise->depolarizing_prob_1q > 0.0 ||
                                             noise->depolarizing_prob_2q > 0.0);
    if (!noisy) {
        const Statevector state = run_statevector(body);
        std::vector<double> cumulative(state.amplitudes.size());
        double acc = 0.0;
        for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
            acc += std::norm(state.amplitudes[i]);
            cumulative[static_cast<std::size_t>(i)] = acc;
        }
        for (std::uint64_t s = 0; s < shots; ++s) {
            const std::uint64_t idx = draw_index(cumulative, shot_rng.next_unit() * acc);
            dist.add(outcome_to_bitstring(extract_outcome(idx, pairs), bits));
        }
        return dist;
    }

    RngStream noise_root(noise->seed);
    for (std::uint64_t s = 0; s < shots; ++s) {
        RngStream trajectory = noise_root.derive("trajectory", s);
        Statevector state(circuit.num_qubits);
        for (const Gate& g : body.gates) {
            apply_gate(state, g);
            apply_depolarizing_event(state, g, *noise, trajectory);
        }
        std::vector<double> cumulative(state.amplitudes.size());
        double acc = 0.0;
        for (Eigen::Index i = 0; i < state.amplitudes.size(); ++i) {
            acc += std::norm(state.amplitudes[i]);
            cumulative[static_cast<std::size_t>(i)] = acc;
        }
        const std::uint64_t idx = draw_index(cumulative, shot_rng.next_unit() * acc);
        dist.add(outcome_to_bitstring(extract_outcome(idx, pairs), bits));
    }
    return dist;
}

UnitaryMatrix unitary_of(const QuantumCircuit& circuit)
{
    if (circuit.num_qubits > 10) {
        throw TooLargeError("unitary extraction is limited to 10 qubits");
    }
    for (const Gate& g : circuit.gates) {
        if (g.is_measure()) {
            throw MeasureInUnitaryRunError("measure gate in a unitary run");
        }
    }
    const Eigen::Index dim = 1LL << circuit.num_qubits;
    UnitaryMatrix u(dim, dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        const Statevector column = run_statevector(
            circuit, Statevector::basis_state(circuit.num_qubits,
                                              static_cast<std::uint64_t>(col)));
        u.col(col) = column.amplitudes;
    }
    return u;
}

bool unitaries_equal_up_to_phase(const UnitaryMatrix& a, const UnitaryMatrix& b,
                                 double tol)
{
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw DimensionMismatchError("matrices have different shapes");
    }
    // Reference entry: the first one if it is usable, otherwise the largest.
    Eigen::Index ref_row = 0;
    Eigen::Index ref_col = 0;
    if (std::abs(b(0, 0)) <= tol) {
        b.cwiseAbs().maxCoeff(&ref_row, &ref_col);
    }
    if (std::abs(b(ref_row, ref_col)) <= tol) {
        return a.cwiseAbs().maxCoeff() <= tol;
    }
    Amplitude c = a(ref_row, ref_col) / b(ref_row, ref_col);
    const double mag = std::abs(c);
    if (std::abs(mag - 1.0) > tol) {
        return false;
    }
    c /= mag;
    return (a - c * b).cwiseAbs().maxCoeff() <= tol;
}

} // namespace qll
