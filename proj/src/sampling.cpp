#include "mlsmell/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <map>
#include <numeric>
#include <ostream>
#include <random>
#include <sstream>

namespace mlsmell {

std::size_t total_sample_size(std::size_t population, double margin) {
    if (population == 0) return 0;
    double n = static_cast<double>(population) /
               (1.0 + static_cast<double>(population) * margin * margin);
    return static_cast<std::size_t>(std::llround(n));
}

std::vector<StratumPlan> allocate(
    const std::vector<std::pair<std::string, std::size_t>>& populations,
    std::size_t n) {
    std::size_t total = 0;
    for (const auto& [id, pop] : populations) total += pop;
    if (n > total) {
        throw SamplingError{"sample size exceeds total population"};
    }
    std::vector<StratumPlan> plan;
    plan.reserve(populations.size());
    std::vector<std::pair<long double, std::size_t>> remainders; // (frac, index)
    std::size_t allocated = 0;
    for (const auto& [id, pop] : populations) {
        StratumPlan p;
        p.stratum_id = id;
        p.population = pop;
        p.proportion = total == 0 ? 0.0
                                  : static_cast<double>(pop) /
                                        static_cast<double>(total);
        long double quota = total == 0
                                ? 0.0L
                                : static_cast<long double>(n) *
                                      static_cast<long double>(pop) /
                                      static_cast<long double>(total);
        auto floor_part = static_cast<std::size_t>(std::floor(quota));
        p.sample_size = floor_part;
        allocated += floor_part;
        remainders.emplace_back(quota - static_cast<long double>(floor_part),
                                plan.size());
        plan.push_back(std::move(p));
    }
    std::sort(remainders.begin(), remainders.end(),
              [&](const auto& a, const auto& b) {
                  if (a.first != b.first) return a.first > b.first;
                  return plan[a.second].stratum_id < plan[b.second].stratum_id;
              });
    for (std::size_t i = 0; allocated < n && i < remainders.size(); ++i) {
        ++plan[remainders[i].second].sample_size;
        ++allocated;
    }
    return plan;
}

namespace {

std::uint64_t fnv1a(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

// Rejection-sampled bound keeps the draw unbiased and identical across
// standard library implementations (mt19937_64 output is specified; the
// distributions are not).
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
        x = rng();
    } while (x >= limit);
    return x % n;
}

} // namespace

std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k,
                                        std::uint64_t stream_seed) {
    if (k > n) throw SamplingError{"sample size exceeds stratum population"};
    std::mt19937_64 rng(stream_seed);
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    for (std::size_t i = 0; i < k; ++i) {
        std::size_t j = i + static_cast<std::size_t>(bounded(rng, n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(k);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<const Finding*> draw_sample(std::span<const Finding> findings,
                                        const std::vector<StratumPlan>& plan,
                                        std::uint64_t seed) {
    std::vector<const Finding*> out;
    for (const auto& stratum : plan) {
        std::vector<const Finding*> members;
        for (const auto& f : findings) {
            if (f.rule_id == stratum.stratum_id) members.push_back(&f);
        }
        if (stratum.sample_size > members.size()) {
            throw SamplingError{"stratum " + stratum.stratum_id +
                                ": sample size " +
                                std::to_string(stratum.sample_size) +
                                " exceeds population " +
                                std::to_string(members.size())};
        }
        auto picks = sample_indices(members.size(), stratum.sample_size,
                                    seed ^ fnv1a(stratum.stratum_id));
        for (std::size_t i : picks) out.push_back(members[i]);
    }
    return out;
}

namespace {

std::optional<double> precision_of(std::size_t tp, std::size_t fp) {
    if (tp + fp == 0) return std::nullopt;
    return static_cast<double>(tp) / static_cast<double>(tp + fp);
}

} // namespace

bool rule_id_less(const std::string& a, const std::string& b) {
    bool a_csa = a.rfind("CSA", 0) == 0;
    bool b_csa = b.rfind("CSA", 0) == 0;
    if (a_csa != b_csa) return !a_csa;
    auto num = [](const std::string& id, bool csa) {
        return std::atoi(id.c_str() + (csa ? 3 : 2));
    };
    int an = num(a, a_csa), bn = num(b, b_csa);
    if (an != bn) return an < bn;
    return a < b;
}

PrecisionReport compute_precision(std::span<const ValidationRecord> records) {
    struct Agg {
        Classification cls = Classification::CS;
        std::size_t population = 0;
        std::size_t sample = 0, tp = 0, fp = 0;
    };
    std::map<std::string, Agg> by_rule;
    for (const auto& r : records) {
        auto [it, fresh] = by_rule.try_emplace(r.rule_id);
        Agg& agg = it->second;
        if (fresh) {
            agg.cls = r.classification;
            agg.population = r.stratum_population;
        } else if (agg.population != r.stratum_population) {
            throw SamplingError{"inconsistent stratum population for rule " +
                                r.rule_id};
        }
        if (r.verdict == Verdict::Pending) continue;
        ++agg.sample;
        if (r.verdict == Verdict::TP) ++agg.tp;
        else ++agg.fp;
    }
    PrecisionReport report;
    report.cs_total.id = "CS";
    report.csa_total.id = "CSA";
    std::vector<std::string> ids;
    ids.reserve(by_rule.size());
    for (const auto& [id, agg] : by_rule) ids.push_back(id);
    std::sort(ids.begin(), ids.end(), rule_id_less);
    for (const auto& id : ids) {
        const Agg& agg = by_rule[id];
        PrecisionRow row;
        row.id = id;
        row.population = agg.population;
        row.sample = agg.sample;
        row.tp = agg.tp;
        row.fp = agg.fp;
        row.precision = precision_of(agg.tp, agg.fp);
        report.per_rule.push_back(row);
        PrecisionRow& total = agg.cls == Classification::CS ? report.cs_total
                                                            : report.csa_total;
        total.population += agg.population;
        total.sample += agg.sample;
        total.tp += agg.tp;
        total.fp += agg.fp;
    }
    // proportions are within the rule's own category
    for (auto& row : report.per_rule) {
        const Agg& agg = by_rule[row.id];
        const PrecisionRow& total = agg.cls == Classification::CS
                                        ? report.cs_total
                                        : report.csa_total;
        row.proportion = total.population == 0
                             ? 0.0
                             : static_cast<double>(row.population) /
                                   static_cast<double>(total.population);
    }
    report.cs_total.proportion = report.cs_total.population > 0 ? 1.0 : 0.0;
    report.csa_total.proportion = report.csa_total.population > 0 ? 1.0 : 0.0;
    report.cs_total.precision =
        precision_of(report.cs_total.tp, report.cs_total.fp);
    report.csa_total.precision =
        precision_of(report.csa_total.tp, report.csa_total.fp);
    std::size_t pooled_tp = report.cs_total.tp + report.csa_total.tp;
    std::size_t pooled = pooled_tp + report.cs_total.fp + report.csa_total.fp;
    if (pooled > 0) {
        report.overall_micro =
            static_cast<double>(pooled_tp) / static_cast<double>(pooled);
    }
    double weighted_num = 0.0, weighted_den = 0.0;
    for (const PrecisionRow* cat : {&report.cs_total, &report.csa_total}) {
        if (cat->precision && cat->population > 0) {
            weighted_num += static_cast<double>(cat->population) * *cat->precision;
            weighted_den += static_cast<double>(cat->population);
        }
    }
    if (weighted_den > 0) report.overall_weighted = weighted_num / weighted_den;
    return report;
}

namespace {

const char* verdict_name(Verdict v) {
    switch (v) {
    case Verdict::TP: return "TP";
    case Verdict::FP: return "FP";
    default: return "pending";
    }
}

} // namespace

void write_worksheet(std::ostream& out,
                     std::span<const ValidationRecord> records) {
    out << "# key\trule_id\tclassification\tstratum_population\tverdict\tnote\n";
    for (const auto& r : records) {
        out << r.key << '\t' << r.rule_id << '\t'
            << classification_name(r.classification) << '\t'
            << r.stratum_population << '\t' << verdict_name(r.verdict) << '\t'
            << r.note << '\n';
    }
}

std::vector<ValidationRecord> read_worksheet(std::istream& in) {
    std::vector<ValidationRecord> records;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> cols;
        std::size_t start = 0;
        for (;;) {
            std::size_t tab = line.find('\t', start);
            if (tab == std::string::npos) {
                cols.push_back(line.substr(start));
                break;
            }
            cols.push_back(line.substr(start, tab - start));
            start = tab + 1;
        }
        if (cols.size() < 5) {
            throw SamplingError{"worksheet line " + std::to_string(lineno) +
                                ": expected at least 5 tab-separated columns"};
        }
        ValidationRecord r;
        r.key = cols[0];
        r.rule_id = cols[1];
        if (cols[2] == "CS") r.classification = Classification::CS;
        else if (cols[2] == "CSA") r.classification = Classification::CSA;
        else {
            throw SamplingError{"worksheet line " + std::to_string(lineno) +
                                ": classification must be CS or CSA"};
        }
        try {
            r.stratum_population = std::stoull(cols[3]);
        } catch (...) {
            throw SamplingError{"worksheet line " + std::to_string(lineno) +
                                ": bad population"};
        }
        std::string v = cols[4];
        if (v == "TP" || v == "tp") r.verdict = Verdict::TP;
        else if (v == "FP" || v == "fp") r.verdict = Verdict::FP;
        else if (v == "pending" || v.empty()) r.verdict = Verdict::Pending;
        else {
            throw SamplingError{"worksheet line " + std::to_string(lineno) +
                                ": verdict must be TP, FP or pending"};
        }
        for (std::size_t c = 5; c < cols.size(); ++c) {
            if (c > 5) r.note += '\t';
            r.note += cols[c];
        }
        records.push_back(std::move(r));
    }
    return records;
}

} // namespace mlsmell
