#pragma once

#include <string>
#include <vector>

#include "qll/gate.hpp"

namespace qll {

/// Ordered gate list over one qubit register and one classical register.
/// Gate order is execution order. Values are immutable by convention once
/// built; every operation below returns a fresh circuit.
struct QuantumCircuit {
    int num_qubits = 0;
    int num_clbits = 0;
    std::vector<Gate> gates;
    std::vector<std::string> qubit_labels;

    QuantumCircuit() = default;
    explicit QuantumCircuit(int qubits, int clbits = 0);

    /// Validates the gate against the register sizes and appends it.
    void append(Gate gate);
};

/// Number of logic gates; Measure operations are not counted.
int gate_count(const QuantumCircuit& circuit);

/// Longest chain of qubit-sharing gates (as-soon-as-possible layering);
/// Measure operations are excluded.
int depth(const QuantumCircuit& circuit);

/// Same gate with one more control. The kind is never changed; the control
/// is appended to the control list. Throws ControlOverlapError if the qubit
/// already appears in the gate, UnsupportedOperationError for Measure.
Gate controlled_of(const Gate& gate, int control_qubit);

/// Removes qubit `q`; indices above it shift down. Throws QubitInUseError
/// if any gate still touches `q`.
QuantumCircuit remove_qubit(const QuantumCircuit& circuit, int q);

/// Inserts an idle qubit so that it gets index `position`; existing indices
/// at or above `position` shift up. Inverse of remove_qubit on idle wires.
QuantumCircuit insert_idle_qubit(const QuantumCircuit& circuit, int position,
                                 const std::string& label = "");

/// Structural equality: register sizes and element-wise gate identity.
/// Commuting-gate reorderings compare unequal on purpose.
bool circuits_equal(const QuantumCircuit& a, const QuantumCircuit& b);

} // namespace qll
