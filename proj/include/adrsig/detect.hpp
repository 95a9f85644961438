#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "adrsig/cohort.hpp"
#include "adrsig/featmat.hpp"
#include "adrsig/ingest.hpp"
#include "adrsig/readcode.hpp"
#include "adrsig/stats.hpp"

namespace adrsig {

enum class RankMode {
    ByP,   // ascending p, then descending R1, then key
    ByR1,  // descending R1, then ascending p, then key
};

struct DetectionConfig {
    int window_days = kDefaultWindowDays;
    std::size_t group_size = kDefaultGroupSize;
    LevelMode level_mode = LevelMode::Full;
    double alpha = 0.05;
    RankMode rank_mode = RankMode::ByP;
    std::optional<std::string> prefix_filter;
    std::size_t top_k = 30;
    TTestMode test_mode = TTestMode::TwoSamplePooled;
    std::uint64_t min_na = 0;
    std::optional<std::uint64_t> shuffle_seed;
    bool include_decreases = false;

    // Throws Errc::InvalidArgument naming the offending field.
    void validate() const;
};

struct SignalRow {
    std::size_t rank = 0;
    std::string key;
    std::string description;
    std::uint64_t nb = 0;
    std::uint64_t na = 0;
    double r1 = 0.0;
    double r2_percent = 0.0;
    double p_value = 1.0;
    double t_stat = 0.0;
};

// Tests every vocabulary column of before (X) against after (Y). Keeps
// columns with p < alpha, NA > NB (unless include_decreases) and NA >= min_na,
// then applies the prefix filter, sorts, truncates to top_k and ranks from 1.
// N for R2 is the population before the grouping remainder was dropped.
// Throws Errc::VocabularyMismatch.
std::vector<SignalRow> detect_signals(const GroupedFeatureMatrix& before, const GroupedFeatureMatrix& after,
                                      const CodeDictionary& dict, const DetectionConfig& cfg);

// Rows whose key starts with `prefix`, re-ranked densely from 1.
std::vector<SignalRow> filter_by_prefix(std::span<const SignalRow> rows, std::string_view prefix);

void sort_signals(std::vector<SignalRow>& rows, RankMode mode);

struct PipelineCounters {
    std::size_t prescriptions_unknown_patient = 0;
    std::size_t events_non_cohort = 0;
    std::size_t events_outside_windows = 0;
    std::size_t events_before = 0;
    std::size_t events_after = 0;
};

struct PipelineResult {
    Cohort cohort;
    VocabularyPtr vocabulary;
    std::optional<GroupedFeatureMatrix> before;  // X
    std::optional<GroupedFeatureMatrix> after;   // Y
    std::vector<SignalRow> signals;
    PipelineCounters counters;
};

// Cohort -> windows -> A/B -> X/Y -> signals. When `patients` is non-empty,
// prescriptions of unlisted patients are dropped before indexing.
PipelineResult run_pipeline(std::span<const PatientRecord> patients, std::vector<PrescriptionRecord> prescriptions,
                            std::span<const EventRecord> events, const CodeDictionary& dict,
                            const DetectionConfig& cfg);

}  // namespace adrsig
