#include "qll/attack.hpp"

#include <algorithm>
#include <set>

#include "qll/errors.hpp"
#include "qll/lock.hpp"
#include "qll/rng.hpp"
#include "qll/statevector.hpp"

namespace qll {

namespace {

// Unique argmax of the exact (noiseless) outcome distribution.
std::string exact_correct_outcome(const QuantumCircuit& circuit)
{
    const std::vector<double> probs = exact_probabilities(circuit);
    std::size_t best = 0;
    for (std::size_t i = 1; i < probs.size(); ++i) {
        if (probs[i] > probs[best]) {
            best = i;
        }
    }
    for (std::size_t i = 0; i < probs.size(); ++i) {
        if (i != best && std::abs(probs[i] - probs[best]) < 1e-12) {
            throw AmbiguousOutcomeError(
                "the noiseless distribution has no unique correct outcome");
        }
    }
    const int bits = measured_bits(circuit);
    return outcome_to_bitstring(best, bits);
}

QuantumCircuit with_measures(const QuantumCircuit& circuit,
                             const std::vector<int>& qubits)
{
    QuantumCircuit out = circuit;
    out.num_clbits = static_cast<int>(qubits.size());
    for (std::size_t j = 0; j < qubits.size(); ++j) {
        out.append(Gate::measure(qubits[j], static_cast<int>(j)));
    }
    return out;
}

QuantumCircuit with_input(const QuantumCircuit& circuit, std::uint64_t input)
{
    QuantumCircuit out;
    out.num_qubits = circuit.num_qubits;
    out.num_clbits = circuit.num_clbits;
    out.qubit_labels = circuit.qubit_labels;
    for (int q = 0; q < circuit.num_qubits; ++q) {
        if ((input >> q) & 1ULL) {
            out.append(Gate::x(q));
        }
    }
    for (const Gate& g : circuit.gates) {
        out.append(g);
    }
    return out;
}

Key key_from_index(std::uint64_t index, int n)
{
    Key key;
    key.bits.resize(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j) {
        key.bits[static_cast<std::size_t>(j)] =
            static_cast<std::uint8_t>((index >> (n - 1 - j)) & 1ULL);
    }
    return key;
}

} // namespace

MetricsReport xgate_attack_eval(const QuantumCircuit& locked, const Key& true_key,
                                const Key& guessed_key, std::uint64_t shots,
                                std::uint64_t seed, int key_qubit,
                                const std::optional<std::vector<int>>& measured_qubits)
{
    if (true_key.length() != guessed_key.length()) {
        throw KeyLengthMismatchError("guessed key length differs from the true key");
    }
    QuantumCircuit original = simplify(decrypt(locked, true_key, key_qubit), key_qubit);
    QuantumCircuit guessed = simplify(decrypt(locked, guessed_key, key_qubit), key_qubit);
    if (measured_qubits) {
        original = with_measures(original, *measured_qubits);
        guessed = with_measures(guessed, *measured_qubits);
    }

    const CountsDistribution orig_dist =
        sample_counts(original, shots, derive_seed(seed, "orig"));
    const CountsDistribution guess_dist =
        sample_counts(guessed, shots, derive_seed(seed, "guess"));
    return metrics_report(guess_dist, orig_dist, exact_correct_outcome(original));
}

MetricsReport hgate_attack_eval(const QuantumCircuit& locked,
                                const QuantumCircuit& original, std::uint64_t shots,
                                std::uint64_t seed, int key_qubit,
                                const std::optional<std::vector<int>>& measured_qubits)
{
    const LockScaffold scaffold = read_scaffold(locked, key_qubit);
    if (scaffold.mask_positions.empty()) {
        throw MalformedLockedCircuitError("circuit carries no H masks");
    }
    if (original.num_qubits != locked.num_qubits - 1) {
        throw DimensionMismatchError(
            "original circuit does not match the locked circuit's data register");
    }
    // measure the data qubits only; the key qubit stays unread
    std::vector<int> readout;
    if (measured_qubits) {
        readout = *measured_qubits;
    } else {
        for (int q = 0; q < locked.num_qubits - 1; ++q) {
            readout.push_back(q);
        }
    }
    const CountsDistribution masked_dist = sample_counts(
        with_measures(locked, readout), shots, derive_seed(seed, "masked"));
    const CountsDistribution orig_dist = sample_counts(
        with_measures(original, readout), shots, derive_seed(seed, "orig"));
    return metrics_report(masked_dist, orig_dist,
                          exact_correct_outcome(with_measures(original, readout)));
}

std::vector<GuessRateResult> key_sweep(const QuantumCircuit& locked,
                                       const Key& true_key,
                                       const std::vector<std::uint64_t>& inputs,
                                       std::uint64_t shots, std::uint64_t seed,
                                       const SweepOptions& options)
{
    const int n = true_key.length();
    if (n > options.max_key_bits) {
        throw SweepTooLargeError("a " + std::to_string(n) +
                                 "-bit key sweep exceeds the guard of " +
                                 std::to_string(options.max_key_bits) + " bits");
    }
    if (inputs.empty()) {
        throw Error("key sweep needs at least one input");
    }
    const int data_qubits = locked.num_qubits - 1;
    std::vector<int> measured;
    if (options.measured_qubits) {
        measured = *options.measured_qubits;
        for (int q : measured) {
            if (q < 0 || q >= data_qubits) {
                throw Error("measured qubit out of range");
            }
        }
    } else {
        for (int q = 0; q < data_qubits; ++q) {
            measured.push_back(q);
        }
    }
    for (std::uint64_t x : inputs) {
        if (data_qubits < 64 && x >= (1ULL << data_qubits)) {
            throw Error("swept input exceeds the data register");
        }
    }

    const std::uint64_t num_keys = 1ULL << n;
    const int bits = static_cast<int>(measured.size());

    // reference: the correct key's unlocked circuit per input
    const QuantumCircuit correct_circuit =
        simplify(decrypt(locked, true_key, options.key_qubit), options.key_qubit);
    std::uint64_t true_index = 0;
    for (int j = 0; j < n; ++j) {
        true_index = (true_index << 1) | true_key.bits[static_cast<std::size_t>(j)];
    }
    std::vector<std::string> ref_outcome(inputs.size());
    std::vector<CountsDistribution> ref_sampled(inputs.size());
    for (std::size_t xi = 0; xi < inputs.size(); ++xi) {
        const QuantumCircuit prepared =
            with_measures(with_input(correct_circuit, inputs[xi]), measured);
        ref_outcome[xi] = exact_correct_outcome(prepared);
        ref_sampled[xi] = sample_counts(
            prepared, shots, derive_seed(seed, "sweep", true_index * inputs.size() + xi));
    }

    std::vector<GuessRateResult> results;
    results.reserve(num_keys);
    for (std::uint64_t k = 0; k < num_keys; ++k) {
        const Key candidate = key_from_index(k, n);
        const QuantumCircuit unlocked =
            simplify(decrypt(locked, candidate, options.key_qubit), options.key_qubit);
        GuessRateResult result;
        result.key = candidate;
        double byte_sum = 0.0;
        double bit_sum = 0.0;
        double eq4_sum = 0.0;
        for (std::size_t xi = 0; xi < inputs.size(); ++xi) {
            const QuantumCircuit prepared =
                with_measures(with_input(unlocked, inputs[xi]), measured);
            const CountsDistribution dist = sample_counts(
                prepared, shots, derive_seed(seed, "sweep", k * inputs.size() + xi));

            const std::string& ref = ref_outcome[xi];
            double byte_hits = 0.0;
            std::vector<double> bit_hits(static_cast<std::size_t>(bits), 0.0);
            for (const auto& [outcome, count] : dist.counts) {
                if (outcome == ref) {
                    byte_hits += static_cast<double>(count);
                }
                for (int b = 0; b < bits; ++b) {
                    const std::size_t pos = static_cast<std::size_t>(bits - 1 - b);
                    if (outcome[pos] == ref[pos]) {
                        bit_hits[static_cast<std::size_t>(b)] +=
                            static_cast<double>(count);
                    }
                }
            }
            const double byte_rate = byte_hits / static_cast<double>(shots);
            double bit_rate = 0.0;
            for (double h : bit_hits) {
                bit_rate += h / static_cast<double>(shots);
            }
            bit_rate /= bits;

            result.per_input.push_back(byte_rate);
            byte_sum += byte_rate;
            bit_sum += bit_rate;

            std::uint64_t abs_diff = 0;
            for (const auto& [outcome, count] : dist.counts) {
                const std::uint64_t ref_count = ref_sampled[xi].count_of(outcome);
                abs_diff += count > ref_count ? count - ref_count : ref_count - count;
            }
            for (const auto& [outcome, count] : ref_sampled[xi].counts) {
                if (!dist.counts.count(outcome)) {
                    abs_diff += count;
                }
            }
            eq4_sum += static_cast<double>(abs_diff);
        }
        const double nx = static_cast<double>(inputs.size());
        result.byte_rate = byte_sum / nx;
        result.bit_rate = bit_sum / nx;
        result.eq4_distance = eq4_sum / (static_cast<double>(shots) * nx);
        results.push_back(std::move(result));
    }
    return results;
}

std::vector<Key> random_wrong_keys(const Key& true_key, int count, std::uint64_t seed)
{
    const int n = true_key.length();
    if (n < 64 && static_cast<std::uint64_t>(count) > (1ULL << n) - 1) {
        throw Error("not enough distinct wrong keys of this length");
    }
    RngStream rng = RngStream(seed).derive("wrong-keys");
    std::set<std::string> seen;
    std::vector<Key> keys;
    while (static_cast<int>(keys.size()) < count) {
        Key key;
        key.bits.resize(static_cast<std::size_t>(n));
        for (int j = 0; j < n; ++j) {
            key.bits[static_cast<std::size_t>(j)] = rng.fair_bit() ? 1 : 0;
        }
        if (key == true_key || !seen.insert(key.to_string()).second) {
            continue;
        }
        keys.push_back(std::move(key));
    }
    return keys;
}

std::vector<std::uint64_t> all_basis_inputs(int data_qubits)
{
    if (data_qubits < 0 || data_qubits > 20) {
        throw SweepTooLargeError("input enumeration is limited to 20 qubits");
    }
    std::vector<std::uint64_t> inputs(1ULL << data_qubits);
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        inputs[i] = i;
    }
    return inputs;
}

WrongKeySummary run_wrong_key_suite(const QuantumCircuit& locked, const Key& true_key,
                                    int count, std::uint64_t shots,
                                    std::uint64_t seed, int key_qubit,
                                    const std::optional<std::vector<int>>& measured_qubits)
{
    WrongKeySummary summary;
    summary.keys = random_wrong_keys(true_key, count, seed);
    double total = 0.0;
    for (std::size_t i = 0; i < summary.keys.size(); ++i) {
        MetricsReport report = xgate_attack_eval(
            locked, true_key, summary.keys[i], shots,
            derive_seed(seed, "wrong-key-eval", i), key_qubit, measured_qubits);
        total += report.tvd;
        summary.max_tvd = std::max(summary.max_tvd, report.tvd);
        summary.reports.push_back(report);
    }
    summary.mean_tvd = summary.reports.empty() ? 0.0 : total / summary.reports.size();
    return summary;
}

nlohmann::json GuessRateResult::to_json() const
{
    return nlohmann::json{{"key", key.to_string()},
                          {"byte_rate", byte_rate},
                          {"bit_rate", bit_rate},
                          {"per_input", per_input},
                          {"eq4_distance", eq4_distance}};
}

} // namespace qll
