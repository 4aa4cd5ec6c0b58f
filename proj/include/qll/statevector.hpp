#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "qll/circuit.hpp"
#include "qll/counts.hpp"

namespace qll {

using Amplitude = std::complex<double>;
using AmplitudeVector = Eigen::VectorXcd;
using UnitaryMatrix = Eigen::MatrixXcd;

/// Full 2^n amplitude vector. Basis index bit i corresponds to qubit i.
struct Statevector {
    int num_qubits = 0;
    AmplitudeVector amplitudes;

    Statevector() = default;

    /// |0...0> on `qubits` wires.
    explicit Statevector(int qubits);

    /// Basis state |index>.
    static Statevector basis_state(int qubits, std::uint64_t index);

    double norm_squared() const { return amplitudes.squaredNorm(); }
};

/// Two-parameter depolarizing trajectory noise. After each gate a depolarizing
/// event hits the acted-on qubits with the arity-matched probability.
struct NoiseSpec {
    double depolarizing_prob_1q = 0.0;
    double depolarizing_prob_2q = 0.0;
    std::uint64_t seed = 0;
};

/// Applies one gate in place. Extra controls restrict the base unitary to the
/// all-ones control subspace. Throws MeasureInUnitaryRunError for Measure.
void apply_gate(Statevector& state, const Gate& gate);

/// Runs the whole circuit from `initial` (default |0...0>). The circuit must
/// not contain Measure gates.
Statevector run_statevector(const QuantumCircuit& circuit,
                            const std::optional<Statevector>& initial = std::nullopt);

/// Exact outcome probabilities over the measured bits (the circuit's Measure
/// gates; all qubits when there are none), indexed by outcome value.
std::vector<double> exact_probabilities(const QuantumCircuit& circuit);

/// Number of measured bits of a circuit as used by sample_counts.
int measured_bits(const QuantumCircuit& circuit);

/// Samples `shots` measurement outcomes. Deterministic for a fixed seed.
/// Noiseless runs draw from the exact final distribution; with a NoiseSpec
/// every shot is an independent trajectory.
CountsDistribution sample_counts(const QuantumCircuit& circuit, std::uint64_t shots,
                                 std::uint64_t seed,
                                 const std::optional<NoiseSpec>& noise = std::nullopt);

/// Full 2^q x 2^q matrix of the circuit, built column-by-column. Limited to
/// 10 qubits; throws TooLargeError beyond that.
UnitaryMatrix unitary_of(const QuantumCircuit& circuit);

/// True iff a == c*b for some unit-modulus scalar c, in max norm.
bool unitaries_equal_up_to_phase(const UnitaryMatrix& a, const UnitaryMatrix& b,
                                 double tol = 1e-9);

} // namespace qll
