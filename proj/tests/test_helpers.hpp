#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "qll/circuit.hpp"
#include "qll/qasm.hpp"
#include "qll/rng.hpp"

namespace qll_test {

inline std::string benchmarks_dir()
{
    return QLL_BENCHMARKS_DIR;
}

inline std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open " + path);
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline qll::QuantumCircuit load_benchmark(const std::string& name)
{
    return qll::parse_qasm(read_file(benchmarks_dir() + "/" + name + ".qasm"));
}

inline const std::vector<std::string>& benchmark_names()
{
    static const std::vector<std::string> names = {
        "adder_1bit", "4mod5", "4gt13", "mini_alu",
        "4gt11",      "rd53",  "rd73",  "rd84",
    };
    return names;
}

/// Random circuit over the classical-reversible kinds, every index valid.
inline qll::QuantumCircuit random_classical_circuit(int qubits, int gates,
                                                    qll::RngStream& rng)
{
    qll::QuantumCircuit circuit(qubits);
    for (int i = 0; i < gates; ++i) {
        const int pick = qubits >= 3 ? rng.uniform_int(0, 2)
                                     : rng.uniform_int(0, qubits - 1);
        if (pick == 0) {
            circuit.append(qll::Gate::x(rng.uniform_int(0, qubits - 1)));
        } else if (pick == 1) {
            int c = rng.uniform_int(0, qubits - 1);
            int t = rng.uniform_int(0, qubits - 2);
            if (t >= c) {
                ++t;
            }
            circuit.append(qll::Gate::cx(c, t));
        } else {
            int a = rng.uniform_int(0, qubits - 1);
            int b = rng.uniform_int(0, qubits - 2);
            if (b >= a) {
                ++b;
            }
            int t = rng.uniform_int(0, qubits - 3);
            for (int q : {std::min(a, b), std::max(a, b)}) {
                if (t >= q) {
                    ++t;
                }
            }
            circuit.append(qll::Gate::ccx(a, b, t));
        }
    }
    return circuit;
}

/// Random circuit that also draws superposition and phase kinds.
inline qll::QuantumCircuit random_unitary_circuit(int qubits, int gates,
                                                  qll::RngStream& rng)
{
    using qll::Gate;
    using qll::GateKind;
    static const std::vector<GateKind> singles = {
        GateKind::X, GateKind::Y,   GateKind::Z,  GateKind::H,
        GateKind::S, GateKind::Sdg, GateKind::T,  GateKind::Tdg,
    };
    qll::QuantumCircuit circuit(qubits);
    for (int i = 0; i < gates; ++i) {
        if (qubits >= 2 && rng.uniform_int(0, 2) == 0) {
            int c = rng.uniform_int(0, qubits - 1);
            int t = rng.uniform_int(0, qubits - 2);
            if (t >= c) {
                ++t;
            }
            circuit.append(Gate::cx(c, t));
        } else {
            const auto kind = singles[static_cast<std::size_t>(
                rng.uniform_int(0, static_cast<int>(singles.size()) - 1))];
            circuit.append(Gate::single(kind, rng.uniform_int(0, qubits - 1)));
        }
    }
    return circuit;
}

/// Reversed circuit with every gate inverted; C followed by it is identity.
inline qll::QuantumCircuit inverse_of(const qll::QuantumCircuit& circuit)
{
    using qll::GateKind;
    qll::QuantumCircuit out;
    out.num_qubits = circuit.num_qubits;
    out.num_clbits = circuit.num_clbits;
    out.qubit_labels = circuit.qubit_labels;
    for (auto it = circuit.gates.rbegin(); it != circuit.gates.rend(); ++it) {
        qll::Gate g = *it;
        switch (g.kind) {
        case GateKind::S:
            g.kind = GateKind::Sdg;
            break;
        case GateKind::Sdg:
            g.kind = GateKind::S;
            break;
        case GateKind::T:
            g.kind = GateKind::Tdg;
            break;
        case GateKind::Tdg:
            g.kind = GateKind::T;
            break;
        default:
            break; // X, Y, Z, H, CX, CCX are involutions
        }
        out.gates.push_back(std::move(g));
    }
    return out;
}

} // namespace qll_test
