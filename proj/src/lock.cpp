#include "qll/lock.hpp"

#include <algorithm>
#include <map>

#include "qll/errors.hpp"
#include "qll/rng.hpp"
#include "qll/statevector.hpp"

namespace qll {

namespace {

int resolve_key_qubit(const QuantumCircuit& circuit, int key_qubit)
{
    if (key_qubit < 0) {
        key_qubit = circuit.num_qubits - 1;
    }
    if (key_qubit < 0 || key_qubit >= circuit.num_qubits) {
        throw Error("key qubit index out of range");
    }
    return key_qubit;
}

bool is_plain_x_on(const Gate& gate, int qubit)
{
    return gate.kind == GateKind::X && gate.controls.empty() &&
           gate.targets[0] == qubit;
}

bool is_plain_h_on(const Gate& gate, int qubit)
{
    return gate.kind == GateKind::H && gate.controls.empty() &&
           gate.targets[0] == qubit;
}

bool controls_contain(const Gate& gate, int qubit)
{
    return std::find(gate.controls.begin(), gate.controls.end(), qubit) !=
           gate.controls.end();
}

// A dummy is the palette gate with the key qubit as its (only) control.
Gate make_dummy(GateKind kind, int target, int key_qubit)
{
    return Gate(kind, {target}, {key_qubit});
}

void validate_palette(const std::vector<GateKind>& palette)
{
    if (palette.empty()) {
        throw Error("dummy palette must not be empty");
    }
    for (GateKind kind : palette) {
        if (kind == GateKind::Measure || base_control_count(kind) > 1) {
            throw Error("dummy palette entries must be single-qubit or "
                        "singly-controlled gates");
        }
    }
}

// Drops one control and, for the X family, renames the kind to the matching
// base arity so the gate stays well-formed.
Gate without_control(const Gate& gate, int qubit)
{
    Gate out = gate;
    out.controls.erase(std::find(out.controls.begin(), out.controls.end(), qubit));
    if (out.kind == GateKind::CX && out.controls.empty()) {
        out.kind = GateKind::X;
    } else if (out.kind == GateKind::CCX && out.controls.size() == 1) {
        out.kind = GateKind::CX;
    }
    return out;
}

} // namespace

std::pair<QuantumCircuit, LockRecord> encrypt(const QuantumCircuit& circuit,
                                              const Key& key, std::uint64_t seed,
                                              const EncryptOptions& options)
{
    for (const Gate& g : circuit.gates) {
        if (g.is_measure()) {
            throw MeasurePresentError("circuits must be locked before measurement "
                                      "is appended");
        }
    }
    validate_palette(options.dummy_palette);

    const int m = static_cast<int>(circuit.gates.size());
    const int n = key.length();
    const int n1 = key.ones();
    const int n0 = n - n1;
    if (n1 > m) {
        throw KeyTooLongError("key has " + std::to_string(n1) +
                              " one-bits but the circuit has only " +
                              std::to_string(m) + " gates");
    }
    if (n0 > 0 && circuit.num_qubits == 0) {
        throw Error("dummy gates need at least one data qubit");
    }

    RngStream root(seed);
    RngStream select_rng = root.derive("select");
    RngStream place_rng = root.derive("place");
    RngStream content_rng = root.derive("content");

    // which original gates become real slots, ascending; the r-th 1-bit of
    // the key maps to the r-th selected gate
    std::vector<int> selection;
    if (options.forced_selection) {
        selection = *options.forced_selection;
        if (static_cast<int>(selection.size()) != n1 ||
            !std::is_sorted(selection.begin(), selection.end()) ||
            std::adjacent_find(selection.begin(), selection.end()) != selection.end() ||
            (!selection.empty() && (selection.front() < 0 || selection.back() >= m))) {
            throw Error("forced selection must be " + std::to_string(n1) +
                        " distinct ascending gate indices");
        }
    } else {
        selection = select_rng.sample_distinct(m, n1);
    }

    // dummies: each 0-bit lives in the gap range between its neighbouring
    // real slots (before the first / after the last for the outer runs)
    struct DummyDraw {
        int key_index;
        GateKind kind;
        int target;
        int gap; // insert immediately before original gate `gap`; m appends
    };
    std::vector<DummyDraw> dummies;
    int ones_seen = 0;
    for (int j = 0; j < n; ++j) {
        if (key.bits[j]) {
            ++ones_seen;
            continue;
        }
        const int lo = ones_seen == 0 ? 0 : selection[ones_seen - 1] + 1;
        const int hi = ones_seen == n1 ? m : selection[ones_seen];
        DummyDraw draw;
        draw.key_index = j;
        draw.gap = place_rng.uniform_int(lo, hi);
        const int palette_size = static_cast<int>(options.dummy_palette.size());
        draw.kind = options.dummy_palette[static_cast<std::size_t>(
            content_rng.uniform_int(0, palette_size - 1))];
        draw.target = content_rng.uniform_int(0, circuit.num_qubits - 1);
        dummies.push_back(draw);
    }
    // order within a run follows the drawn gaps; ties keep key order
    std::stable_sort(dummies.begin(), dummies.end(),
                     [](const DummyDraw& a, const DummyDraw& b) {
                         return a.gap < b.gap;
                     });

    const int key_qubit = circuit.num_qubits;
    QuantumCircuit locked;
    locked.num_qubits = circuit.num_qubits + 1;
    locked.num_clbits = circuit.num_clbits;
    locked.qubit_labels = circuit.qubit_labels;
    locked.qubit_labels.push_back("q" + std::to_string(key_qubit));

    LockRecord record;
    record.key = key;
    record.key_qubit = key_qubit;
    record.seed = seed;
    record.slots.resize(static_cast<std::size_t>(n));

    auto emit_slot = [&](const Gate& slot_gate, LockSlot meta) {
        record.h_mask_positions.push_back(static_cast<int>(locked.gates.size()));
        locked.append(Gate::h(key_qubit));
        meta.position = static_cast<int>(locked.gates.size());
        locked.append(slot_gate);
        // slots come out in circuit order, which by construction is key order
        const std::size_t key_index = record.h_mask_positions.size() - 1;
        record.slots[key_index] = meta;
    };

    std::size_t next_dummy = 0;
    int reals_emitted = 0;
    for (int g = 0; g <= m; ++g) {
        while (next_dummy < dummies.size() && dummies[next_dummy].gap == g) {
            const DummyDraw& draw = dummies[next_dummy];
            LockSlot meta;
            meta.real = false;
            meta.dummy_kind = draw.kind;
            emit_slot(make_dummy(draw.kind, draw.target, key_qubit), meta);
            ++next_dummy;
        }
        if (g == m) {
            break;
        }
        if (reals_emitted < n1 && selection[reals_emitted] == g) {
            LockSlot meta;
            meta.real = true;
            meta.original_gate_index = g;
            emit_slot(controlled_of(circuit.gates[g], key_qubit), meta);
            ++reals_emitted;
        } else {
            locked.append(circuit.gates[g]);
        }
    }

    for (int j = 0; j < n; ++j) {
        if (record.slots[j].real != static_cast<bool>(key.bits[j])) {
            throw Error("internal error: slot order does not spell the key");
        }
    }
    if (static_cast<int>(locked.gates.size()) != m + n0 + n) {
        throw Error("internal error: locked gate census mismatch");
    }
    return {std::move(locked), std::move(record)};
}

LockScaffold read_scaffold(const QuantumCircuit& locked, int key_qubit)
{
    const int qk = resolve_key_qubit(locked, key_qubit);
    LockScaffold scaffold;
    std::optional<int> pending_mask;
    for (std::size_t i = 0; i < locked.gates.size(); ++i) {
        const Gate& g = locked.gates[i];
        if (!g.touches(qk)) {
            continue;
        }
        if (is_plain_h_on(g, qk)) {
            if (pending_mask) {
                throw MalformedLockedCircuitError(
                    "two consecutive H masks on the key qubit");
            }
            pending_mask = static_cast<int>(i);
        } else if (controls_contain(g, qk)) {
            if (!pending_mask) {
                throw MalformedLockedCircuitError(
                    "key-controlled gate without a preceding H mask");
            }
            scaffold.mask_positions.push_back(*pending_mask);
            scaffold.slot_positions.push_back(static_cast<int>(i));
            pending_mask.reset();
        } else {
            throw MalformedLockedCircuitError(
                "unexpected gate on the key qubit");
        }
    }
    if (pending_mask) {
        throw MalformedLockedCircuitError("trailing H mask without a slot");
    }
    return scaffold;
}

QuantumCircuit decrypt(const QuantumCircuit& locked, const Key& key, int key_qubit)
{
    const int qk = resolve_key_qubit(locked, key_qubit);
    const LockScaffold scaffold = read_scaffold(locked, qk);
    const int n = static_cast<int>(scaffold.slot_positions.size());
    if (n != key.length()) {
        throw KeyLengthMismatchError("locked circuit has " + std::to_string(n) +
                                     " key slots but the key has " +
                                     std::to_string(key.length()) + " bits");
    }

    QuantumCircuit out;
    out.num_qubits = locked.num_qubits;
    out.num_clbits = locked.num_clbits;
    out.qubit_labels = locked.qubit_labels;

    std::size_t next_slot = 0;
    for (std::size_t i = 0; i < locked.gates.size(); ++i) {
        if (next_slot < scaffold.mask_positions.size() &&
            static_cast<int>(i) == scaffold.mask_positions[next_slot]) {
            // the key bit sequence is driven by X gates where the masks were:
            // one before slot 0 if the key starts with 1, then one wherever
            // the next bit differs from the current one
            const std::size_t j = next_slot;
            const bool flip = j == 0 ? key.bits[0] != 0
                                     : key.bits[j] != key.bits[j - 1];
            if (flip) {
                out.append(Gate::x(qk));
            }
            ++next_slot;
            continue;
        }
        out.append(locked.gates[i]);
    }
    return out;
}

QuantumCircuit simplify(const QuantumCircuit& unlocked, int key_qubit)
{
    const int qk = resolve_key_qubit(unlocked, key_qubit);
    QuantumCircuit kept;
    kept.num_qubits = unlocked.num_qubits;
    kept.num_clbits = unlocked.num_clbits;
    kept.qubit_labels = unlocked.qubit_labels;

    bool state = false; // the key qubit starts in |0>
    for (const Gate& g : unlocked.gates) {
        if (!g.touches(qk)) {
            kept.append(g);
            continue;
        }
        if (is_plain_x_on(g, qk)) {
            state = !state;
            continue;
        }
        if (controls_contain(g, qk)) {
            if (state) {
                kept.append(without_control(g, qk));
            }
            continue;
        }
        throw ResidualSuperpositionError(
            "key qubit still carries non-classical gates; run decrypt first");
    }
    return remove_qubit(kept, qk);
}

RoundtripReport verify_roundtrip(const QuantumCircuit& circuit, const Key& key,
                                 std::uint64_t seed, const EncryptOptions& options)
{
    auto [locked, record] = encrypt(circuit, key, seed, options);
    const QuantumCircuit unlocked = decrypt(locked, key, record.key_qubit);
    const QuantumCircuit restored = simplify(unlocked, record.key_qubit);

    RoundtripReport report;
    report.structural = circuits_equal(restored, circuit);
    if (circuit.num_qubits <= 10) {
        report.unitary = unitaries_equal_up_to_phase(unitary_of(restored),
                                                     unitary_of(circuit), 1e-9);
    }
    return report;
}

nlohmann::json LockRecord::to_json() const
{
    nlohmann::json slots_json = nlohmann::json::array();
    for (const LockSlot& slot : slots) {
        nlohmann::json s;
        s["position"] = slot.position;
        s["role"] = slot.real ? "real" : "dummy";
        if (slot.original_gate_index) {
            s["original_gate_index"] = *slot.original_gate_index;
        }
        if (slot.dummy_kind) {
            s["dummy_kind"] = kind_name(*slot.dummy_kind);
        }
        slots_json.push_back(std::move(s));
    }
    return nlohmann::json{{"key", key.to_json()},
                          {"key_qubit", key_qubit},
                          {"seed", seed},
                          {"slots", std::move(slots_json)},
                          {"h_mask_positions", h_mask_positions}};
}

LockRecord LockRecord::from_json(const nlohmann::json& j)
{
    LockRecord record;
    record.key = Key::from_json(j.at("key"));
    record.key_qubit = j.at("key_qubit").get<int>();
    record.seed = j.at("seed").get<std::uint64_t>();
    record.h_mask_positions = j.at("h_mask_positions").get<std::vector<int>>();
    for (const auto& s : j.at("slots")) {
        LockSlot slot;
        slot.position = s.at("position").get<int>();
        slot.real = s.at("role").get<std::string>() == "real";
        if (s.contains("original_gate_index")) {
            slot.original_gate_index = s.at("original_gate_index").get<int>();
        }
        if (s.contains("dummy_kind")) {
            const std::string name = s.at("dummy_kind").get<std::string>();
            for (GateKind kind : {GateKind::X, GateKind::Y, GateKind::Z, GateKind::H,
                                  GateKind::S, GateKind::T, GateKind::Sdg,
                                  GateKind::Tdg, GateKind::CX, GateKind::CCX}) {
                if (kind_name(kind) == name) {
                    slot.dummy_kind = kind;
                }
            }
            if (!slot.dummy_kind) {
                throw Error("unknown dummy kind '" + name + "'");
            }
        }
        record.slots.push_back(std::move(slot));
    }
    return record;
}

} // namespace qll
