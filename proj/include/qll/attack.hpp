#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

#include "qll/circuit.hpp"
#include "qll/key.hpp"
#include "qll/metrics.hpp"

namespace qll {

/// Per-candidate-key result of a key-guessing sweep.
struct GuessRateResult {
    Key key;
    double byte_rate = 0.0; // whole-outcome agreement with the correct key
    double bit_rate = 0.0;  // per-bit agreement, averaged over bits
    std::vector<double> per_input; // byte rate per swept input
    double eq4_distance = 0.0; // raw absolute-count distance, for transparency

    nlohmann::json to_json() const;
};

/// Adversary strategy one: unlock with a guessed key (equivalent to turning
/// a subset of the masking H gates into X gates), then compare against the
/// correct unlock. Returns metrics of the guessed circuit's samples vs the
/// noiseless reference of the correct one. `measured_qubits` restricts the
/// output word; all data qubits when unset.
MetricsReport xgate_attack_eval(
    const QuantumCircuit& locked, const Key& true_key, const Key& guessed_key,
    std::uint64_t shots, std::uint64_t seed, int key_qubit = -1,
    const std::optional<std::vector<int>>& measured_qubits = std::nullopt);

/// Adversary strategy two: run the still-masked locked circuit as is and
/// accept the 50% per-slot error rate. Measures the data qubits only.
/// `original` supplies the noiseless reference distribution.
MetricsReport hgate_attack_eval(
    const QuantumCircuit& locked, const QuantumCircuit& original,
    std::uint64_t shots, std::uint64_t seed, int key_qubit = -1,
    const std::optional<std::vector<int>>& measured_qubits = std::nullopt);

struct SweepOptions {
    int max_key_bits = 12;
    /// Data qubits read out as the output word; all of them when unset.
    std::optional<std::vector<int>> measured_qubits;
    int key_qubit = -1;
};

/// Unlocks with every candidate key, prepares every listed basis input, and
/// scores byte- and bit-level agreement with the correct key's outputs.
/// Results come back in candidate order (the key read as a binary number).
/// Throws SweepTooLargeError when 2^n exceeds the guard.
std::vector<GuessRateResult> key_sweep(const QuantumCircuit& locked,
                                       const Key& true_key,
                                       const std::vector<std::uint64_t>& inputs,
                                       std::uint64_t shots, std::uint64_t seed,
                                       const SweepOptions& options = {});

/// `count` distinct uniformly random keys of the same length, none equal to
/// `true_key`. Deterministic for a fixed seed.
std::vector<Key> random_wrong_keys(const Key& true_key, int count,
                                   std::uint64_t seed);

/// All basis states of `data_qubits` wires, 0 .. 2^x - 1.
std::vector<std::uint64_t> all_basis_inputs(int data_qubits);

/// Aggregated wrong-key evaluation for one locked circuit.
struct WrongKeySummary {
    std::vector<Key> keys;
    std::vector<MetricsReport> reports;
    double mean_tvd = 0.0;
    double max_tvd = 0.0;
};

WrongKeySummary run_wrong_key_suite(
    const QuantumCircuit& locked, const Key& true_key, int count,
    std::uint64_t shots, std::uint64_t seed, int key_qubit = -1,
    const std::optional<std::vector<int>>& measured_qubits = std::nullopt);

} // namespace qll
