#include "qll/gate.hpp"

#include <algorithm>
#include <unordered_map>

#include "qll/errors.hpp"

namespace qll {

int base_control_count(GateKind kind)
{
    switch (kind) {
    case GateKind::CX:
        return 1;
    case GateKind::CCX:
        return 2;
    default:
        return 0;
    }
}

int target_count(GateKind)
{
    return 1;
}

const std::string& kind_name(GateKind kind)
{
    static const std::unordered_map<GateKind, std::string> names = {
        {GateKind::X, "x"},     {GateKind::Y, "y"},   {GateKind::Z, "z"},
        {GateKind::H, "h"},     {GateKind::S, "s"},   {GateKind::T, "t"},
        {GateKind::Sdg, "sdg"}, {GateKind::Tdg, "tdg"}, {GateKind::CX, "cx"},
        {GateKind::CCX, "ccx"}, {GateKind::Measure, "measure"},
    };
    return names.at(kind);
}

Gate::Gate(GateKind k, std::vector<int> t, std::vector<int> c, std::optional<int> cl)
    : kind(k), targets(std::move(t)), controls(std::move(c)), classical_target(cl)
{
    validate_gate(*this);
}

std::vector<int> Gate::qubits() const
{
    std::vector<int> qs = controls;
    qs.insert(qs.end(), targets.begin(), targets.end());
    return qs;
}

bool Gate::touches(int qubit) const
{
    return std::find(targets.begin(), targets.end(), qubit) != targets.end() ||
           std::find(controls.begin(), controls.end(), qubit) != controls.end();
}

bool Gate::operator==(const Gate& other) const
{
    return kind == other.kind && targets == other.targets &&
           controls == other.controls && classical_target == other.classical_target;
}

Gate Gate::single(GateKind k, int target)
{
    return Gate(k, {target});
}

Gate Gate::cx(int control, int target)
{
    return Gate(GateKind::CX, {target}, {control});
}

Gate Gate::ccx(int control0, int control1, int target)
{
    return Gate(GateKind::CCX, {target}, {control0, control1});
}

Gate Gate::measure(int qubit, int clbit)
{
    return Gate(GateKind::Measure, {qubit}, {}, clbit);
}

void validate_gate(const Gate& gate)
{
    if (static_cast<int>(gate.targets.size()) != target_count(gate.kind)) {
        throw Error("gate '" + kind_name(gate.kind) + "' expects " +
                    std::to_string(target_count(gate.kind)) + " target(s)");
    }
    if (static_cast<int>(gate.controls.size()) < base_control_count(gate.kind)) {
        throw Error("gate '" + kind_name(gate.kind) + "' expects at least " +
                    std::to_string(base_control_count(gate.kind)) + " control(s)");
    }
    if (gate.kind == GateKind::Measure) {
        if (!gate.controls.empty()) {
            throw Error("measure cannot be controlled");
        }
        if (!gate.classical_target.has_value()) {
            throw Error("measure requires a classical target");
        }
    } else if (gate.classical_target.has_value()) {
        throw Error("only measure carries a classical target");
    }
    auto qs = gate.qubits();
    std::sort(qs.begin(), qs.end());
    if (std::adjacent_find(qs.begin(), qs.end()) != qs.end()) {
        throw Error("gate qubit indices must be distinct");
    }
}

} // namespace qll
