#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "adrsig/date.hpp"
#include "adrsig/ingest.hpp"

namespace adrsig {

struct CodePrevalence {
    std::string code;
    double baseline_prevalence = 0.0;  // per-window Bernoulli probability
};

struct PlantedEffect {
    std::string code;
    double risk_multiplier = 1.0;
};

struct SynthSpec {
    std::size_t n_patients = 0;
    std::vector<CodePrevalence> vocabulary;
    std::vector<PlantedEffect> planted_effects;
    int window_days = 60;
    std::uint64_t seed = 0;
    std::string drug_code = "simvastatin";
    // Index dates are uniform over [start_date, start_date + span_days).
    Date start_date = *Date::from_ymd(2005, 1, 1);
    int span_days = 1826;
};

struct LedgerEntry {
    std::string code;
    double multiplier = 1.0;
    std::uint64_t true_nb = 0;
    std::uint64_t true_na = 0;
};

struct SynthDataset {
    std::vector<PatientRecord> patients;
    std::vector<PrescriptionRecord> prescriptions;
    std::vector<EventRecord> events;
    std::vector<LedgerEntry> ledger;  // vocabulary order
};

// One prescription per patient. Per code, the before window fires with the
// baseline probability and the after window with min(1, baseline * multiplier);
// each firing becomes one event on a uniform day of that window.
// Throws Errc::InvalidPrevalence, Errc::InvalidMultiplier, Errc::InvalidArgument.
SynthDataset generate(const SynthSpec& spec);

// Writes patients.csv, prescriptions.csv, events.csv and ledger.csv into `dir`.
void write_dataset(const SynthDataset& data, const std::filesystem::path& dir);

// `n` distinct level-5 codes cycling through twelve chapter letters
// ("A000000", "B000000", ..., "A000100", ...). Codes of one chapter share a
// level-3 key in runs of 100 serials.
std::vector<std::string> synthetic_codes(std::size_t n);

// Compact parameterisation used by the CLI: random baselines in
// [prevalence_min, prevalence_max] and `n_planted` codes with `multiplier`.
struct SynthDesign {
    std::size_t n_patients = 1000;
    std::size_t n_codes = 200;
    double prevalence_min = 0.005;
    double prevalence_max = 0.05;
    std::size_t n_planted = 10;
    double multiplier = 4.0;
    // Planted codes draw their baseline from [max(prevalence_min, this), prevalence_max].
    double planted_prevalence_min = 0.01;
    int window_days = 60;
    std::uint64_t seed = 1;
    std::string drug_code = "simvastatin";
    Date start_date = *Date::from_ymd(2005, 1, 1);
    int span_days = 1826;
};

SynthSpec make_spec(const SynthDesign& design);

}  // namespace adrsig
