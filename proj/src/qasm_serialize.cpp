#include <algorithm>
#include <set>
#include <sstream>

#include "qll/qasm.hpp"
#include "qasm_helpers.hpp"

namespace qll {

namespace {

using qasm_detail::HelperGate;

// Helper gate needed to express the gate, or nullopt for named gates.
// Throws when the (kind, controls) pair has no exact representation.
std::optional<HelperGate> helper_for(const Gate& gate)
{
    const int controls = static_cast<int>(gate.controls.size());
    switch (gate.kind) {
    case GateKind::Measure:
        return std::nullopt;
    case GateKind::X:
    case GateKind::CX:
    case GateKind::CCX:
        if (controls <= 2) {
            return std::nullopt;
        }
        if (controls == 3) {
            return qasm_detail::find_helper("mcx3");
        }
        throw UnsupportedOperationError(
            "gates with more than three controls cannot be serialized");
    case GateKind::H:
    case GateKind::Y:
    case GateKind::Z:
    case GateKind::S:
    case GateKind::Sdg:
        if (controls == 0) {
            return std::nullopt;
        }
        if (controls == 1) {
            switch (gate.kind) {
            case GateKind::H:
                return qasm_detail::find_helper("chx");
            case GateKind::Y:
                return qasm_detail::find_helper("cyx");
            case GateKind::Z:
                return qasm_detail::find_helper("czx");
            case GateKind::S:
                return qasm_detail::find_helper("csx");
            default:
                return qasm_detail::find_helper("csdgx");
            }
        }
        throw UnsupportedOperationError("controlled '" + kind_name(gate.kind) +
                                        "' with more than one control cannot be serialized");
    case GateKind::T:
    case GateKind::Tdg:
        if (controls == 0) {
            return std::nullopt;
        }
        // controlled-T is outside the exactly expressible subset
        throw UnsupportedOperationError("controlled '" + kind_name(gate.kind) +
                                        "' has no exact decomposition in the subset");
    }
    return std::nullopt;
}

int scratch_wire(const Gate& gate, int num_qubits)
{
    const auto used = gate.qubits();
    for (int q = 0; q < num_qubits; ++q) {
        if (std::find(used.begin(), used.end(), q) == used.end()) {
            return q;
        }
    }
    throw UnsupportedOperationError(
        "a 3-control gate needs an idle wire to serialize");
}

std::string qubit_ref(int index)
{
    return "q[" + std::to_string(index) + "]";
}

} // namespace

std::string serialize_qasm(const QuantumCircuit& circuit)
{
    // first pass: which helpers does the circuit need?
    std::set<std::string_view> needed;
    for (const Gate& g : circuit.gates) {
        if (auto helper = helper_for(g)) {
            needed.insert(helper->name);
        }
    }

    std::ostringstream out;
    out << "OPENQASM 2.0;\n";
    out << "include \"qelib1.inc\";\n";
    for (const HelperGate& h : qasm_detail::kHelperGates) {
        if (needed.count(h.name)) {
            out << "gate " << h.name << " " << h.params << " { " << h.body << " }\n";
        }
    }
    if (circuit.num_qubits > 0) {
        out << "qreg q[" << circuit.num_qubits << "];\n";
    }
    if (circuit.num_clbits > 0) {
        out << "creg c[" << circuit.num_clbits << "];\n";
    }

    for (const Gate& g : circuit.gates) {
        if (g.is_measure()) {
            out << "measure " << qubit_ref(g.targets[0]) << " -> c["
                << *g.classical_target << "];\n";
            continue;
        }
        const auto helper = helper_for(g);
        if (!helper) {
            // named form; the spelling depends only on the total control count
            const int controls = static_cast<int>(g.controls.size());
            std::string name = kind_name(g.kind);
            if (g.kind == GateKind::X || g.kind == GateKind::CX ||
                g.kind == GateKind::CCX) {
                name = controls == 0 ? "x" : (controls == 1 ? "cx" : "ccx");
            }
            out << name << " ";
            for (int c : g.controls) {
                out << qubit_ref(c) << ",";
            }
            out << qubit_ref(g.targets[0]) << ";\n";
            continue;
        }
        out << helper->name << " ";
        for (int c : g.controls) {
            out << qubit_ref(c) << ",";
        }
        if (helper->has_scratch) {
            out << qubit_ref(scratch_wire(g, circuit.num_qubits)) << ",";
        }
        out << qubit_ref(g.targets[0]) << ";\n";
    }
    return out.str();
}

} // namespace qll
