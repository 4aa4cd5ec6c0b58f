#pragma once

#include <optional>
#include <string>
#include <vector>

namespace qll {

/// The gate alphabet understood by the whole toolkit.
enum class GateKind {
    X,
    Y,
    Z,
    H,
    S,
    T,
    Sdg,
    Tdg,
    CX,
    CCX,
    Measure,
};

/// Number of control qubits the kind carries by construction (extra controls
/// may be appended on top of these).
int base_control_count(GateKind kind);

/// Number of target qubits; 1 for every kind in the alphabet.
int target_count(GateKind kind);

/// Lower-case mnemonic, matching the QASM spelling ("x", "ccx", ...).
const std::string& kind_name(GateKind kind);

/// One circuit operation: a kind plus the qubits it acts on. Controls may
/// exceed the kind's base arity (a key-controlled CX carries two controls).
struct Gate {
    GateKind kind = GateKind::X;
    std::vector<int> targets;
    std::vector<int> controls;
    std::optional<int> classical_target; // Measure only

    Gate() = default;
    Gate(GateKind k, std::vector<int> t, std::vector<int> c = {},
         std::optional<int> cl = std::nullopt);

    /// All qubit indices touched by the gate, controls first.
    std::vector<int> qubits() const;
    bool touches(int qubit) const;
    bool is_measure() const { return kind == GateKind::Measure; }

    bool operator==(const Gate& other) const;

    // Convenience constructors.
    static Gate single(GateKind k, int target);
    static Gate x(int target) { return single(GateKind::X, target); }
    static Gate h(int target) { return single(GateKind::H, target); }
    static Gate cx(int control, int target);
    static Gate ccx(int control0, int control1, int target);
    static Gate measure(int qubit, int clbit);
};

/// Validates arities and index distinctness; throws Error on violation.
void validate_gate(const Gate& gate);

} // namespace qll
