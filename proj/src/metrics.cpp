#include "qll/metrics.hpp"

#include <cstdlib>

#include "qll/errors.hpp"

namespace qll {

namespace {

void check_comparable(const CountsDistribution& lock, const CountsDistribution& orig)
{
    if (lock.shots != orig.shots) {
        throw ShotMismatchError("distributions have different shot totals");
    }
    if (lock.shots == 0) {
        throw ZeroShotsError("distributions are empty");
    }
    if (lock.num_bits != orig.num_bits) {
        throw WidthMismatchError("distributions have different bit widths");
    }
    for (const auto* dist : {&lock, &orig}) {
        for (const auto& [outcome, count] : dist->counts) {
            if (static_cast<int>(outcome.size()) != dist->num_bits) {
                throw WidthMismatchError("outcome '" + outcome +
                                         "' does not match the declared width");
            }
        }
    }
}

std::int64_t signed_count(std::uint64_t v)
{
    return static_cast<std::int64_t>(v);
}

} // namespace

double tvd(const CountsDistribution& lock, const CountsDistribution& orig)
{
    check_comparable(lock, orig);
    std::uint64_t abs_diff = 0;
    for (const auto& [outcome, count] : lock.counts) {
        abs_diff += static_cast<std::uint64_t>(
            std::llabs(signed_count(count) - signed_count(orig.count_of(outcome))));
    }
    for (const auto& [outcome, count] : orig.counts) {
        if (!lock.counts.count(outcome)) {
            abs_diff += count; // outcomes absent on the lock side
        }
    }
    return static_cast<double>(abs_diff) / (2.0 * static_cast<double>(lock.shots));
}

double hvd(const CountsDistribution& lock, const CountsDistribution& orig)
{
    check_comparable(lock, orig);
    const int bits = lock.num_bits;
    std::uint64_t abs_diff = 0;
    for (int j = 0; j < bits; ++j) {
        // bit j is the (b-1-j)-th character: bit 0 is rightmost
        const std::size_t pos = static_cast<std::size_t>(bits - 1 - j);
        std::uint64_t lock_ones = 0;
        std::uint64_t orig_ones = 0;
        for (const auto& [outcome, count] : lock.counts) {
            if (outcome[pos] == '1') {
                lock_ones += count;
            }
        }
        for (const auto& [outcome, count] : orig.counts) {
            if (outcome[pos] == '1') {
                orig_ones += count;
            }
        }
        const std::uint64_t lock_zeros = lock.shots - lock_ones;
        const std::uint64_t orig_zeros = orig.shots - orig_ones;
        abs_diff += static_cast<std::uint64_t>(
            std::llabs(signed_count(lock_ones) - signed_count(orig_ones)));
        abs_diff += static_cast<std::uint64_t>(
            std::llabs(signed_count(lock_zeros) - signed_count(orig_zeros)));
    }
    return static_cast<double>(abs_diff) / (2.0 * static_cast<double>(lock.shots));
}

double dfc(const CountsDistribution& dist, const std::string& correct_outcome)
{
    if (dist.shots == 0) {
        throw ZeroShotsError("distribution is empty");
    }
    const std::uint64_t correct = dist.count_of(correct_outcome);
    std::uint64_t highest_wrong = 0;
    for (const auto& [outcome, count] : dist.counts) {
        if (outcome != correct_outcome && count > highest_wrong) {
            highest_wrong = count;
        }
    }
    return static_cast<double>(signed_count(correct) - signed_count(highest_wrong)) /
           static_cast<double>(dist.shots);
}

double accuracy(const CountsDistribution& dist, const std::string& correct_outcome)
{
    if (dist.shots == 0) {
        throw ZeroShotsError("distribution is empty");
    }
    return static_cast<double>(dist.count_of(correct_outcome)) /
           static_cast<double>(dist.shots);
}

std::string argmax_outcome(const CountsDistribution& dist)
{
    if (dist.shots == 0) {
        throw ZeroShotsError("distribution is empty");
    }
    std::string best;
    std::uint64_t best_count = 0;
    bool tied = false;
    for (const auto& [outcome, count] : dist.counts) {
        if (count > best_count) {
            best = outcome;
            best_count = count;
            tied = false;
        } else if (count == best_count) {
            tied = true;
        }
    }
    if (tied) {
        throw AmbiguousOutcomeError("distribution has no unique most-likely outcome");
    }
    return best;
}

nlohmann::json MetricsReport::to_json() const
{
    return nlohmann::json{{"tvd", tvd},           {"hvd", hvd},
                          {"dfc", dfc},           {"accuracy", accuracy},
                          {"shots", shots},       {"output_bits", output_bits}};
}

MetricsReport metrics_report(const CountsDistribution& lock,
                             const CountsDistribution& orig,
                             const std::string& correct_outcome)
{
    MetricsReport report;
    report.tvd = tvd(lock, orig);
    report.hvd = hvd(lock, orig);
    report.dfc = dfc(lock, correct_outcome);
    report.accuracy = accuracy(lock, correct_outcome);
    report.shots = lock.shots;
    report.output_bits = lock.num_bits;
    return report;
}

} // namespace qll
