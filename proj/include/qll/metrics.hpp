#pragma once

#include <string>

#include <json.hpp>

#include "qll/counts.hpp"

namespace qll {

/// Total variation distance between two equal-shot distributions:
/// sum_i |y_i,lock - y_i,orig| / 2N. In [0, 1].
double tvd(const CountsDistribution& lock, const CountsDistribution& orig);

/// Hamming variation distance: the per-bit marginal TVD summed over output
/// bits, sum_j sum_i |y_ji,lock - y_ji,orig| / 2N. In [0, b].
double hvd(const CountsDistribution& lock, const CountsDistribution& orig);

/// Degree of functional corruption: (count of the correct outcome minus the
/// highest count among all other outcomes) / N. In [-1, 1].
double dfc(const CountsDistribution& dist, const std::string& correct_outcome);

/// Fraction of shots landing in the correct bin.
double accuracy(const CountsDistribution& dist, const std::string& correct_outcome);

/// The unique most-likely outcome; throws AmbiguousOutcomeError on ties.
std::string argmax_outcome(const CountsDistribution& dist);

/// One evaluation row: the four metrics of a distribution against the
/// noiseless reference of the original circuit.
struct MetricsReport {
    double tvd = 0.0;
    double hvd = 0.0;
    double dfc = 0.0;
    double accuracy = 0.0;
    std::uint64_t shots = 0;
    int output_bits = 0;

    nlohmann::json to_json() const;
};

MetricsReport metrics_report(const CountsDistribution& lock,
                             const CountsDistribution& orig,
                             const std::string& correct_outcome);

} // namespace qll
