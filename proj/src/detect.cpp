#include "adrsig/detect.hpp"

#include <algorithm>

#include "adrsig/error.hpp"

namespace adrsig {

void DetectionConfig::validate() const {
    if (window_days < 1) throw Error(Errc::InvalidArgument, "window_days must be >= 1");
    if (group_size < 1) throw Error(Errc::GroupSizeZero, "group_size must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0)) throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1)");
    if (top_k < 1) throw Error(Errc::InvalidArgument, "top_k must be >= 1");
}

void sort_signals(std::vector<SignalRow>& rows, RankMode mode) {
    auto by_p = [](const SignalRow& a, const SignalRow& b) {
        if (a.p_value != b.p_value) return a.p_value < b.p_value;
        if (a.r1 != b.r1) return a.r1 > b.r1;
        return a.key < b.key;
    };
    auto by_r1 = [](const SignalRow& a, const SignalRow& b) {
        if (a.r1 != b.r1) return a.r1 > b.r1;
        if (a.p_value != b.p_value) return a.p_value < b.p_value;
        return a.key < b.key;
    };
    if (mode == RankMode::ByP) {
        std::sort(rows.begin(), rows.end(), by_p);
    } else {
        std::sort(rows.begin(), rows.end(), by_r1);
    }
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].rank = i + 1;
}

std::vector<SignalRow> detect_signals(const GroupedFeatureMatrix& before, const GroupedFeatureMatrix& after,
                                      const CodeDictionary& dict, const DetectionConfig& cfg) {
    cfg.validate();
    if (before.groups() != after.groups() || before.population() != after.population() ||
        (before.vocabulary() != after.vocabulary() && *before.vocabulary() != *after.vocabulary())) {
        throw Error(Errc::VocabularyMismatch, "before/after matrices differ in vocabulary, groups or population");
    }
    const auto& vocab = *before.vocabulary();
    std::vector<SignalRow> rows;
    if (vocab.size() == 0) return rows;
    if (before.groups() < 2) {
        throw Error(Errc::TooFewGroups, "need at least 2 groups for the t-test, got " +
                                            std::to_string(before.groups()) + " (cohort of " +
                                            std::to_string(before.population()) + ")");
    }

    const std::size_t g = before.groups();
    std::vector<double> x(g), y(g);
    for (std::size_t c = 0; c < vocab.size(); ++c) {
        auto xb = before.column(c);
        auto ya = after.column(c);
        std::uint64_t nb = 0, na = 0;
        for (std::size_t i = 0; i < g; ++i) {
            x[i] = xb[i];
            y[i] = ya[i];
            nb += xb[i];
            na += ya[i];
        }
        if (!cfg.include_decreases && na <= nb) continue;
        if (na < cfg.min_na) continue;
        const TTestResult tt = student_t_test(x, y, cfg.test_mode);
        if (!(tt.p_value < cfg.alpha)) continue;
        if (cfg.prefix_filter && !vocab.key(c).starts_with(*cfg.prefix_filter)) continue;
        const RatioStats rs = ratio_stats(nb, na, before.population());
        rows.push_back(SignalRow{
            .rank = 0,
            .key = vocab.key(c),
            .description = std::string(dict.describe_key(vocab.key(c))),
            .nb = nb,
            .na = na,
            .r1 = rs.r1,
            .r2_percent = rs.r2_percent,
            .p_value = tt.p_value,
            .t_stat = tt.t_stat,
        });
    }
    sort_signals(rows, cfg.rank_mode);
    if (rows.size() > cfg.top_k) rows.resize(cfg.top_k);
    return rows;
}

std::vector<SignalRow> filter_by_prefix(std::span<const SignalRow> rows, std::string_view prefix) {
    std::vector<SignalRow> out;
    for (const auto& row : rows) {
        if (row.key.starts_with(prefix)) out.push_back(row);
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i].rank = i + 1;
    return out;
}

PipelineResult run_pipeline(std::span<const PatientRecord> patients, std::vector<PrescriptionRecord> prescriptions,
                            std::span<const EventRecord> events, const CodeDictionary& dict,
                            const DetectionConfig& cfg) {
    cfg.validate();
    PipelineResult out;
    if (!patients.empty()) out.counters.prescriptions_unknown_patient = restrict_to_patients(prescriptions, patients);
    out.cohort = build_cohort(prescriptions, cfg.window_days);

    Assignments assigned = assign_events(out.cohort, events);
    out.counters.events_non_cohort = assigned.non_cohort;
    out.counters.events_outside_windows = assigned.outside_windows;
    out.counters.events_before = assigned.before.size();
    out.counters.events_after = assigned.after.size();

    out.vocabulary = build_vocabulary(assigned.before, assigned.after, cfg.level_mode);
    {
        PatientFeatureMatrix a = build_patient_matrix(assigned.before, out.cohort, out.vocabulary);
        out.before = group_patients(a, cfg.group_size, cfg.shuffle_seed);
    }
    {
        PatientFeatureMatrix b = build_patient_matrix(assigned.after, out.cohort, out.vocabulary);
        out.after = group_patients(b, cfg.group_size, cfg.shuffle_seed);
    }
    out.signals = detect_signals(*out.before, *out.after, dict, cfg);
    return out;
}

}  // namespace adrsig
