#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlsmell/rules.hpp"

namespace mlsmell {

struct SamplingError {
    std::string message;
};

// n = round(N / (1 + N * e^2)); e defaults to a 5% margin.
std::size_t total_sample_size(std::size_t population, double margin = 0.05);

struct StratumPlan {
    std::string stratum_id;
    std::size_t population = 0;
    double proportion = 0.0; // of the total population
    std::size_t sample_size = 0;
};

// Largest-remainder (Hamilton) apportionment of n across strata, proportional
// to population. Ties on the fractional remainder break toward the smaller
// stratum id. Population order is preserved in the returned plan.
std::vector<StratumPlan> allocate(
    const std::vector<std::pair<std::string, std::size_t>>& populations,
    std::size_t n);

// Uniform selection of k of n without replacement; deterministic for a given
// stream seed, portable across platforms. Returns sorted indices.
std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                        std::uint64_t stream_seed);

// Per-stratum seeded sampling of findings; same seed, same sample. Throws
// SamplingError when a stratum's sample_size exceeds its population.
std::vector<const Finding*> draw_sample(std::span<const Finding> findings,
                                        const std::vector<StratumPlan>& plan,
                                        std::uint64_t seed);

enum class Verdict : std::uint8_t { TP, FP, Pending };

struct ValidationRecord {
    std::string key; // path:line:col:rule_id
    std::string rule_id;
    Classification classification = Classification::CS;
    std::size_t stratum_population = 0;
    Verdict verdict = Verdict::Pending;
    std::string note;
};

struct PrecisionRow {
    std::string id;
    std::size_t population = 0;
    double proportion = 0.0;
    std::size_t sample = 0;
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::optional<double> precision; // unset when no validated records
};

struct PrecisionReport {
    std::vector<PrecisionRow> per_rule; // CS rows first, then CSA, id order
    PrecisionRow cs_total;
    PrecisionRow csa_total;
    std::optional<double> overall_micro;    // pooled TP/(TP+FP)
    std::optional<double> overall_weighted; // population-weighted category mean
};

// Precision over non-pending records. Throws SamplingError when records of
// one rule disagree on the stratum population.
PrecisionReport compute_precision(std::span<const ValidationRecord> records);

// Flat tab-separated worksheet: key, rule_id, classification, population,
// verdict (TP/FP/pending), note. One header comment line.
void write_worksheet(std::ostream& out,
                     std::span<const ValidationRecord> records);
std::vector<ValidationRecord> read_worksheet(std::istream& in); // throws

// Natural ordering for rule ids: CS before CSA, then numeric.
bool rule_id_less(const std::string& a, const std::string& b);

} // namespace mlsmell
