#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qll/attack.hpp"
#include "qll/circuit.hpp"
#include "qll/errors.hpp"
#include "qll/key.hpp"
#include "qll/lock.hpp"
#include "qll/metrics.hpp"
#include "qll/qasm.hpp"
#include "qll/rng.hpp"
#include "qll/statevector.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

// exit codes shared by every subcommand
constexpr int kExitParse = 2;
constexpr int kExitKeyTooLong = 3;
constexpr int kExitIo = 4;
constexpr int kExitMalformed = 5;
constexpr int kExitSweepTooLarge = 6;

struct CliError {
    int code;
    std::string message;
};

std::string read_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CliError{kExitIo, "cannot open '" + path + "'"};
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw CliError{kExitIo, "cannot write '" + path + "'"};
    }
    out << content;
    if (!out) {
        throw CliError{kExitIo, "write to '" + path + "' failed"};
    }
}

qll::QuantumCircuit parse_file(const std::string& path)
{
    const std::string source = read_file(path);
    try {
        return qll::parse_qasm(source);
    } catch (const qll::ParseError& e) {
        throw CliError{kExitParse, qll::format_diagnostic(path, e.diagnostic)};
    }
}

qll::Key load_key(const std::string& path)
{
    const std::string text = read_file(path);
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw CliError{kExitIo, path + ": not a valid key file: " + e.what()};
    }
    try {
        return qll::Key::from_json(j);
    } catch (const qll::Error& e) {
        throw CliError{kExitIo, path + ": " + e.what()};
    }
}

std::string stem_of(const std::string& path)
{
    return fs::path(path).stem().string();
}

std::string out_path(const std::string& dir, const std::string& name)
{
    fs::create_directories(dir);
    return (fs::path(dir) / name).string();
}

struct LockArgs {
    std::string input;
    int key_length = 6;
    std::uint64_t seed = 1;
    std::string palette = "cx";
    std::string out_dir = ".";
};

int run_lock(const LockArgs& args)
{
    const qll::QuantumCircuit circuit = parse_file(args.input);
    const qll::Key key = qll::gen_key(args.key_length, args.seed);

    qll::EncryptOptions options;
    if (args.palette == "h") {
        options.dummy_palette = {qll::GateKind::H};
    } else if (args.palette != "cx") {
        throw CliError{1, "unknown palette '" + args.palette + "' (use cx or h)"};
    }

    qll::QuantumCircuit locked;
    qll::LockRecord record;
    try {
        auto result = qll::encrypt(circuit, key, qll::derive_seed(args.seed, "encrypt"),
                                   options);
        locked = std::move(result.first);
        record = std::move(result.second);
    } catch (const qll::KeyTooLongError& e) {
        throw CliError{kExitKeyTooLong, e.what()};
    }

    const std::string stem = stem_of(args.input);
    write_file(out_path(args.out_dir, stem + ".locked.qasm"), qll::serialize_qasm(locked));
    write_file(out_path(args.out_dir, stem + ".key.json"), key.to_json().dump(2) + "\n");
    write_file(out_path(args.out_dir, stem + ".lockrecord.json"),
               record.to_json().dump(2) + "\n");

    std::cout << "m=" << qll::gate_count(circuit) << " n=" << key.length()
              << " n1=" << key.ones() << " n0=" << key.zeros()
              << " locked_gates=" << qll::gate_count(locked) << "\n";
    return 0;
}

struct UnlockArgs {
    std::string locked;
    std::string key_file;
    std::string original;
    std::string out_dir = ".";
    int key_qubit = -1;
};

int run_unlock(const UnlockArgs& args)
{
    const qll::QuantumCircuit locked = parse_file(args.locked);
    const qll::Key key = load_key(args.key_file);

    qll::QuantumCircuit unlocked;
    qll::QuantumCircuit simplified;
    try {
        unlocked = qll::decrypt(locked, key, args.key_qubit);
        simplified = qll::simplify(unlocked, args.key_qubit);
    } catch (const qll::MalformedLockedCircuitError& e) {
        throw CliError{kExitMalformed, e.what()};
    } catch (const qll::KeyLengthMismatchError& e) {
        throw CliError{kExitMalformed, e.what()};
    } catch (const qll::ResidualSuperpositionError& e) {
        throw CliError{kExitMalformed, e.what()};
    }

    const std::string stem = stem_of(args.locked);
    write_file(out_path(args.out_dir, stem + ".unlocked.qasm"),
               qll::serialize_qasm(unlocked));
    write_file(out_path(args.out_dir, stem + ".simplified.qasm"),
               qll::serialize_qasm(simplified));

    if (!args.original.empty()) {
        const qll::QuantumCircuit original = parse_file(args.original);
        const bool structural = qll::circuits_equal(simplified, original);
        std::string unitary = "skipped";
        if (original.num_qubits <= 10 &&
            original.num_qubits == simplified.num_qubits) {
            unitary = qll::unitaries_equal_up_to_phase(qll::unitary_of(simplified),
                                                       qll::unitary_of(original))
                          ? "yes"
                          : "no";
        }
        std::cout << "verification: structural=" << (structural ? "yes" : "no")
                  << " unitary=" << unitary << "\n";
    }
    return 0;
}

struct SimulateArgs {
    std::string input;
    std::uint64_t shots = 1000;
    std::uint64_t seed = 1;
    double noise_1q = 0.0;
    double noise_2q = 0.0;
    std::string out;
};

int run_simulate(const SimulateArgs& args)
{
    const qll::QuantumCircuit circuit = parse_file(args.input);
    std::optional<qll::NoiseSpec> noise;
    if (args.noise_1q > 0.0 || args.noise_2q > 0.0) {
        noise = qll::NoiseSpec{args.noise_1q, args.noise_2q,
                               qll::derive_seed(args.seed, "noise")};
    }
    const qll::CountsDistribution dist =
        qll::sample_counts(circuit, args.shots, args.seed, noise);
    const std::string text = dist.to_json().dump(2) + "\n";
    if (args.out.empty()) {
        std::cout << text;
    } else {
        write_file(args.out, text);
    }
    return 0;
}

struct EvaluateArgs {
    std::string original;
    std::string locked;
    std::string key_file;
    std::uint64_t shots = 1000;
    std::uint64_t seed = 1;
    int wrong_keys = 50;
    bool sweep = false;
    std::vector<int> outputs;
    std::string out_dir = ".";
    int key_qubit = -1;
    double noise_1q = 0.0;
    double noise_2q = 0.0;
};

int run_evaluate(const EvaluateArgs& args)
{
    const qll::QuantumCircuit original = parse_file(args.original);
    const qll::QuantumCircuit locked = parse_file(args.locked);
    const qll::Key key = load_key(args.key_file);
    const std::optional<std::vector<int>> outputs =
        args.outputs.empty() ? std::nullopt
                             : std::optional<std::vector<int>>(args.outputs);

    json report;
    report["circuit"] = stem_of(args.original);
    report["shots"] = args.shots;
    report["seed"] = args.seed;
    report["structural"] = {
        {"original", {{"gate_count", qll::gate_count(original)},
                      {"depth", qll::depth(original)}}},
        {"locked", {{"gate_count", qll::gate_count(locked)},
                    {"depth", qll::depth(locked)}}},
    };

    try {
        // correct-key verification
        const qll::QuantumCircuit restored =
            qll::simplify(qll::decrypt(locked, key, args.key_qubit), args.key_qubit);
        const bool structural = qll::circuits_equal(restored, original);
        json correct;
        correct["structural"] = structural;
        if (original.num_qubits <= 10 &&
            original.num_qubits == restored.num_qubits) {
            correct["unitary"] = qll::unitaries_equal_up_to_phase(
                qll::unitary_of(restored), qll::unitary_of(original));
        }
        report["correct_key"] = correct;

        // the correct key reproduces the noiseless reference by construction
        const qll::MetricsReport self = qll::xgate_attack_eval(
            locked, key, key, args.shots, qll::derive_seed(args.seed, "self"),
            args.key_qubit, outputs);
        report["dfc_original"] = self.dfc;
        report["accuracy_original"] = self.accuracy;

        // accuracy of the correctly unlocked circuit on a noisy backend,
        // against the same noiseless reference outcome
        if (args.noise_1q > 0.0 || args.noise_2q > 0.0) {
            const qll::NoiseSpec noise{args.noise_1q, args.noise_2q,
                                       qll::derive_seed(args.seed, "noise")};
            const std::vector<double> exact = qll::exact_probabilities(original);
            std::size_t best = 0;
            for (std::size_t i = 1; i < exact.size(); ++i) {
                if (exact[i] > exact[best]) {
                    best = i;
                }
            }
            const qll::CountsDistribution noisy = qll::sample_counts(
                restored, args.shots, qll::derive_seed(args.seed, "noisy-run"), noise);
            report["accuracy_after_noise"] = qll::accuracy(
                noisy, qll::outcome_to_bitstring(best, original.num_qubits));
        }

        // strategy one: guessed keys (never more than the population holds)
        int wrong_count = args.wrong_keys;
        if (key.length() < 20) {
            const int population = (1 << key.length()) - 1;
            wrong_count = std::min(wrong_count, population);
        }
        const qll::WrongKeySummary xgate = qll::run_wrong_key_suite(
            locked, key, wrong_count, args.shots,
            qll::derive_seed(args.seed, "xgate"), args.key_qubit, outputs);
        json xgate_json;
        xgate_json["mean_tvd"] = xgate.mean_tvd;
        xgate_json["max_tvd"] = xgate.max_tvd;
        xgate_json["per_key"] = json::array();
        double mean_hvd = 0.0;
        double min_dfc = 1.0;
        for (std::size_t i = 0; i < xgate.keys.size(); ++i) {
            json row = xgate.reports[i].to_json();
            row["key"] = xgate.keys[i].to_string();
            xgate_json["per_key"].push_back(std::move(row));
            mean_hvd += xgate.reports[i].hvd;
            min_dfc = std::min(min_dfc, xgate.reports[i].dfc);
        }
        if (!xgate.reports.empty()) {
            mean_hvd /= static_cast<double>(xgate.reports.size());
        }
        xgate_json["mean_hvd"] = mean_hvd;
        xgate_json["min_dfc"] = min_dfc;
        report["xgate"] = xgate_json;

        // strategy two: leave the masks in place
        const qll::MetricsReport hgate = qll::hgate_attack_eval(
            locked, original, args.shots, qll::derive_seed(args.seed, "hgate"),
            args.key_qubit, outputs);
        report["hgate"] = hgate.to_json();

        const std::string stem = stem_of(args.original);
        write_file(out_path(args.out_dir, stem + ".metrics.json"),
                   report.dump(2) + "\n");

        // plot-ready summaries
        std::ostringstream vd;
        vd << "circuit,strategy,tvd,hvd\n";
        vd << stem << ",original,0,0\n";
        vd << stem << ",xgate," << xgate.mean_tvd << "," << mean_hvd << "\n";
        vd << stem << ",hgate," << hgate.tvd << "," << hgate.hvd << "\n";
        write_file(out_path(args.out_dir, stem + ".vd_summary.csv"), vd.str());

        std::ostringstream dfc_csv;
        dfc_csv << "circuit,series,dfc\n";
        dfc_csv << stem << ",original," << self.dfc << "\n";
        dfc_csv << stem << ",altered_min," << min_dfc << "\n";
        write_file(out_path(args.out_dir, stem + ".dfc_summary.csv"), dfc_csv.str());

        if (args.sweep) {
            qll::SweepOptions sweep_options;
            sweep_options.key_qubit = args.key_qubit;
            if (outputs) {
                sweep_options.measured_qubits = outputs;
            }
            const auto inputs = qll::all_basis_inputs(locked.num_qubits - 1);
            const auto results = qll::key_sweep(locked, key, inputs, args.shots,
                                                qll::derive_seed(args.seed, "sweep"),
                                                sweep_options);
            std::ostringstream jsonl;
            std::ostringstream csv;
            csv << "key,byte_rate,bit_rate,eq4_distance\n";
            for (const auto& r : results) {
                jsonl << r.to_json().dump() << "\n";
                csv << r.key.to_string() << "," << r.byte_rate << "," << r.bit_rate
                    << "," << r.eq4_distance << "\n";
            }
            write_file(out_path(args.out_dir, stem + ".guess_rates.jsonl"),
                       jsonl.str());
            write_file(out_path(args.out_dir, stem + ".guess_rates.csv"), csv.str());
        }
    } catch (const qll::MalformedLockedCircuitError& e) {
        throw CliError{kExitMalformed, e.what()};
    } catch (const qll::KeyLengthMismatchError& e) {
        throw CliError{kExitMalformed, e.what()};
    } catch (const qll::SweepTooLargeError& e) {
        throw CliError{kExitSweepTooLarge, e.what()};
    }

    std::cout << "evaluation written to " << args.out_dir << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"quantum logic locking toolkit"};
    app.require_subcommand(1);

    LockArgs lock_args;
    CLI::App* lock = app.add_subcommand("lock", "lock a circuit under a fresh key");
    lock->add_option("input", lock_args.input, "circuit to lock (QASM)")->required();
    lock->add_option("--key-length", lock_args.key_length, "key bits")
        ->check(CLI::PositiveNumber);
    lock->add_option("--seed", lock_args.seed, "RNG seed");
    lock->add_option("--palette", lock_args.palette, "dummy gate palette: cx or h");
    lock->add_option("--out-dir", lock_args.out_dir, "output directory");

    UnlockArgs unlock_args;
    CLI::App* unlock = app.add_subcommand("unlock", "decrypt and simplify");
    unlock->add_option("locked", unlock_args.locked, "locked circuit (QASM)")->required();
    unlock->add_option("key", unlock_args.key_file, "key file (JSON)")->required();
    unlock->add_option("--original", unlock_args.original,
                       "original circuit to verify against");
    unlock->add_option("--out-dir", unlock_args.out_dir, "output directory");
    unlock->add_option("--key-qubit", unlock_args.key_qubit,
                       "key qubit index (default: highest wire)");

    SimulateArgs sim_args;
    CLI::App* simulate = app.add_subcommand("simulate", "sample a circuit");
    simulate->add_option("input", sim_args.input, "circuit (QASM)")->required();
    simulate->add_option("--shots", sim_args.shots, "shot count");
    simulate->add_option("--seed", sim_args.seed, "RNG seed");
    simulate->add_option("--noise-1q", sim_args.noise_1q,
                         "single-qubit depolarizing probability");
    simulate->add_option("--noise-2q", sim_args.noise_2q,
                         "multi-qubit depolarizing probability");
    simulate->add_option("--out", sim_args.out, "write counts JSON here");

    EvaluateArgs eval_args;
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "run both attack strategies and the metrics");
    evaluate->add_option("original", eval_args.original, "original circuit (QASM)")
        ->required();
    evaluate->add_option("locked", eval_args.locked, "locked circuit (QASM)")
        ->required();
    evaluate->add_option("key", eval_args.key_file, "key file (JSON)")->required();
    evaluate->add_option("--shots", eval_args.shots, "shot count");
    evaluate->add_option("--seed", eval_args.seed, "RNG seed");
    evaluate->add_option("--wrong-keys", eval_args.wrong_keys,
                         "guessed keys per circuit");
    evaluate->add_flag("--sweep", eval_args.sweep, "run the full key sweep");
    evaluate->add_option("--outputs", eval_args.outputs,
                         "output qubits to read (default: all)")
        ->delimiter(',');
    evaluate->add_option("--out-dir", eval_args.out_dir, "output directory");
    evaluate->add_option("--key-qubit", eval_args.key_qubit,
                         "key qubit index (default: highest wire)");
    evaluate->add_option("--noise-1q", eval_args.noise_1q,
                         "single-qubit depolarizing probability for the "
                         "unlocked-accuracy row");
    evaluate->add_option("--noise-2q", eval_args.noise_2q,
                         "multi-qubit depolarizing probability for the "
                         "unlocked-accuracy row");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*lock) {
            return run_lock(lock_args);
        }
        if (*unlock) {
            return run_unlock(unlock_args);
        }
        if (*simulate) {
            return run_simulate(sim_args);
        }
        if (*evaluate) {
            return run_evaluate(eval_args);
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const qll::SweepTooLargeError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitSweepTooLarge;
    } catch (const qll::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
