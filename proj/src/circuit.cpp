#include "qll/circuit.hpp"

#include <algorithm>

#include "qll/errors.hpp"

namespace qll {

QuantumCircuit::QuantumCircuit(int qubits, int clbits)
    : num_qubits(qubits), num_clbits(clbits)
{
    qubit_labels.reserve(qubits);
    for (int i = 0; i < qubits; ++i) {
        qubit_labels.push_back("q" + std::to_string(i));
    }
}

void QuantumCircuit::append(Gate gate)
{
    validate_gate(gate);
    for (int q : gate.qubits()) {
        if (q < 0 || q >= num_qubits) {
            throw Error("qubit index " + std::to_string(q) + " out of range");
        }
    }
    if (gate.classical_target &&
        (*gate.classical_target < 0 || *gate.classical_target >= num_clbits)) {
        throw Error("classical index " + std::to_string(*gate.classical_target) +
                    " out of range");
    }
    gates.push_back(std::move(gate));
}

int gate_count(const QuantumCircuit& circuit)
{
    int count = 0;
    for (const Gate& g : circuit.gates) {
        if (!g.is_measure()) {
            ++count;
        }
    }
    return count;
}

int depth(const QuantumCircuit& circuit)
{
    std::vector<int> level(circuit.num_qubits, 0);
    int max_level = 0;
    for (const Gate& g : circuit.gates) {
        if (g.is_measure()) {
            continue;
        }
        int layer = 0;
        for (int q : g.qubits()) {
            layer = std::max(layer, level[q]);
        }
        ++layer;
        for (int q : g.qubits()) {
            level[q] = layer;
        }
        max_level = std::max(max_level, layer);
    }
    return max_level;
}

Gate controlled_of(const Gate& gate, int control_qubit)
{
    if (gate.is_measure()) {
        throw UnsupportedOperationError("measure cannot be controlled");
    }
    if (gate.touches(control_qubit)) {
        throw ControlOverlapError("control qubit " + std::to_string(control_qubit) +
                                  " already used by the gate");
    }
    Gate out = gate;
    out.controls.push_back(control_qubit);
    return out;
}

QuantumCircuit remove_qubit(const QuantumCircuit& circuit, int q)
{
    if (q < 0 || q >= circuit.num_qubits) {
        throw Error("qubit index " + std::to_string(q) + " out of range");
    }
    for (const Gate& g : circuit.gates) {
        if (g.touches(q)) {
            throw QubitInUseError("qubit " + std::to_string(q) +
                                  " is still referenced by a gate");
        }
    }
    QuantumCircuit out;
    out.num_qubits = circuit.num_qubits - 1;
    out.num_clbits = circuit.num_clbits;
    out.qubit_labels = circuit.qubit_labels;
    if (q < static_cast<int>(out.qubit_labels.size())) {
        out.qubit_labels.erase(out.qubit_labels.begin() + q);
    }
    auto shift = [q](int index) { return index > q ? index - 1 : index; };
    for (const Gate& g : circuit.gates) {
        Gate moved = g;
        for (int& t : moved.targets) {
            t = shift(t);
        }
        for (int& c : moved.controls) {
            c = shift(c);
        }
        out.gates.push_back(std::move(moved));
    }
    return out;
}

QuantumCircuit insert_idle_qubit(const QuantumCircuit& circuit, int position,
                                 const std::string& label)
{
    if (position < 0 || position > circuit.num_qubits) {
        throw Error("insertion position " + std::to_string(position) + " out of range");
    }
    QuantumCircuit out;
    out.num_qubits = circuit.num_qubits + 1;
    out.num_clbits = circuit.num_clbits;
    out.qubit_labels = circuit.qubit_labels;
    out.qubit_labels.insert(out.qubit_labels.begin() + position,
                            label.empty() ? "q" + std::to_string(position) : label);
    auto shift = [position](int index) { return index >= position ? index + 1 : index; };
    for (const Gate& g : circuit.gates) {
        Gate moved = g;
        for (int& t : moved.targets) {
            t = shift(t);
        }
        for (int& c : moved.controls) {
            c = shift(c);
        }
        out.gates.push_back(std::move(moved));
    }
    return out;
}

bool circuits_equal(const QuantumCircuit& a, const QuantumCircuit& b)
{
    return a.num_qubits == b.num_qubits && a.num_clbits == b.num_clbits &&
           a.gates == b.gates;
}

} // namespace qll
