#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qll/circuit.hpp"
#include "qll/key.hpp"

namespace qll {

/// One key-controlled slot of a locked circuit.
struct LockSlot {
    int position = 0; // gate index in the locked circuit
    bool real = false;
    std::optional<int> original_gate_index; // real slots only
    std::optional<GateKind> dummy_kind;     // dummy slots only
};

/// Everything the lock owner needs to audit a locked circuit. Stored apart
/// from the locked QASM: the circuit file itself carries no key material.
struct LockRecord {
    Key key;
    int key_qubit = 0;
    std::vector<LockSlot> slots;
    std::uint64_t seed = 0;
    std::vector<int> h_mask_positions;

    nlohmann::json to_json() const;
    static LockRecord from_json(const nlohmann::json& j);
};

struct EncryptOptions {
    /// Gate kinds dummies are drawn from. CX inserts a key-controlled NOT on
    /// a random data qubit; H inserts a key-controlled Hadamard.
    std::vector<GateKind> dummy_palette = {GateKind::CX};

    /// Test hook: fixes which original gates become real slots (ascending
    /// indices, one per 1-bit of the key). Random selection when unset.
    std::optional<std::vector<int>> forced_selection;
};

/// Locks a circuit under the key: appends the key qubit as the highest wire,
/// converts one existing gate per 1-bit into a key-controlled gate, inserts
/// one key-controlled dummy per 0-bit, and H-masks every slot. The locked
/// circuit has m + n0 + n gates. Throws KeyTooLongError when the key has
/// more 1-bits than the circuit has gates, MeasurePresentError on Measure.
std::pair<QuantumCircuit, LockRecord> encrypt(const QuantumCircuit& circuit,
                                              const Key& key, std::uint64_t seed,
                                              const EncryptOptions& options = {});

/// Unlocks with a key of the right length (correct or guessed): removes the
/// H masks and inserts an X on the key qubit wherever the key bit sequence
/// changes (plus a leading X when bit 0 is 1). key_qubit < 0 means the
/// highest wire. Throws MalformedLockedCircuitError if the H-mask scaffold
/// is broken, KeyLengthMismatchError on a wrong-length key.
QuantumCircuit decrypt(const QuantumCircuit& locked, const Key& key,
                       int key_qubit = -1);

/// Constant-propagates the key qubit after decrypt: drops controls of slots
/// reached in state |1>, deletes slots reached in |0> and the X gates, then
/// removes the key qubit. Throws ResidualSuperpositionError when anything
/// but X gates and controls still touches the key qubit.
QuantumCircuit simplify(const QuantumCircuit& unlocked, int key_qubit = -1);

struct RoundtripReport {
    bool structural = false;
    std::optional<bool> unitary; // empty when the circuit is too wide to check
};

/// encrypt -> decrypt -> simplify with the same key; reports structural
/// equality and (up to 10 qubits) unitary equality up to global phase.
RoundtripReport verify_roundtrip(const QuantumCircuit& circuit, const Key& key,
                                 std::uint64_t seed,
                                 const EncryptOptions& options = {});

/// Locked-circuit scaffold: the n slot gate indices controlled by the key
/// qubit, each immediately preceded on the key qubit by its H mask.
struct LockScaffold {
    std::vector<int> slot_positions;
    std::vector<int> mask_positions;
};

/// Validates and returns the H-mask scaffold of a locked circuit. Throws
/// MalformedLockedCircuitError when the wire carries anything else.
LockScaffold read_scaffold(const QuantumCircuit& locked, int key_qubit = -1);

} // namespace qll
