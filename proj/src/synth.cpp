#include "adrsig/synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <unordered_map>

#include "adrsig/error.hpp"
#include "adrsig/rng.hpp"

namespace adrsig {

namespace {

void validate(const SynthSpec& spec) {
    if (spec.n_patients == 0) throw Error(Errc::InvalidArgument, "n_patients must be >= 1");
    if (spec.window_days < 1) throw Error(Errc::InvalidArgument, "window_days must be >= 1");
    if (spec.span_days < 1) throw Error(Errc::InvalidArgument, "span_days must be >= 1");
    if (spec.drug_code.empty()) throw Error(Errc::InvalidArgument, "drug_code must be non-empty");
    for (const auto& cp : spec.vocabulary) {
        if (!(cp.baseline_prevalence >= 0.0 && cp.baseline_prevalence <= 1.0)) {
            throw Error(Errc::InvalidPrevalence, "prevalence of '" + cp.code + "' must lie in [0, 1]");
        }
    }
    for (const auto& pe : spec.planted_effects) {
        if (!(pe.risk_multiplier >= 0.0) || !std::isfinite(pe.risk_multiplier)) {
            throw Error(Errc::InvalidMultiplier, "multiplier of '" + pe.code + "' must be finite and >= 0");
        }
    }
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::ofstream open_out(const std::filesystem::path& p) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw Error(Errc::Io, "cannot write " + p.string());
    return out;
}

}  // namespace

SynthDataset generate(const SynthSpec& spec) {
    validate(spec);

    std::unordered_map<std::string_view, std::size_t> index;
    std::vector<ReadCode> codes;
    codes.reserve(spec.vocabulary.size());
    for (std::size_t j = 0; j < spec.vocabulary.size(); ++j) {
        const auto& code = spec.vocabulary[j].code;
        if (!index.emplace(code, j).second) throw Error(Errc::InvalidArgument, "duplicate code '" + code + "'");
        codes.push_back(ReadCode::parse(code));
    }
    std::vector<double> multiplier(codes.size(), 1.0);
    for (const auto& pe : spec.planted_effects) {
        auto it = index.find(pe.code);
        if (it == index.end()) {
            throw Error(Errc::InvalidArgument, "planted code '" + pe.code + "' is not in the vocabulary");
        }
        multiplier[it->second] = pe.risk_multiplier;
    }

    SynthDataset data;
    data.ledger.reserve(codes.size());
    std::vector<double> p_before(codes.size()), p_after(codes.size());
    for (std::size_t j = 0; j < codes.size(); ++j) {
        p_before[j] = spec.vocabulary[j].baseline_prevalence;
        p_after[j] = std::min(1.0, p_before[j] * multiplier[j]);
        data.ledger.push_back({spec.vocabulary[j].code, multiplier[j], 0, 0});
    }

    Rng rng(spec.seed);
    const auto window = static_cast<std::uint64_t>(spec.window_days);
    data.patients.reserve(spec.n_patients);
    data.prescriptions.reserve(spec.n_patients);
    char id_buf[32];
    for (std::size_t i = 0; i < spec.n_patients; ++i) {
        std::snprintf(id_buf, sizeof id_buf, "P%07zu", i + 1);
        std::string id = id_buf;
        const Date index_date = spec.start_date + static_cast<long>(rng.below(static_cast<std::uint64_t>(spec.span_days)));
        data.patients.push_back({id});
        data.prescriptions.push_back({id, spec.drug_code, index_date});
        for (std::size_t j = 0; j < codes.size(); ++j) {
            if (rng.bernoulli(p_before[j])) {
                const long offset = static_cast<long>(rng.below(window));
                data.events.push_back({id, codes[j], index_date - spec.window_days + offset});
                ++data.ledger[j].true_nb;
            }
            if (rng.bernoulli(p_after[j])) {
                const long offset = static_cast<long>(rng.below(window));
                data.events.push_back({id, codes[j], index_date + 1 + offset});
                ++data.ledger[j].true_na;
            }
        }
    }
    return data;
}

void write_dataset(const SynthDataset& data, const std::filesystem::path& dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw Error(Errc::Io, "cannot create " + dir.string() + ": " + ec.message());

    auto patients = open_out(dir / "patients.csv");
    patients << "patient_id\n";
    for (const auto& p : data.patients) patients << p.patient_id << '\n';

    auto rx = open_out(dir / "prescriptions.csv");
    rx << "patient_id,drug_code,date\n";
    for (const auto& r : data.prescriptions) rx << r.patient_id << ',' << r.drug_code << ',' << r.date.iso() << '\n';

    auto events = open_out(dir / "events.csv");
    events << "patient_id,readcode,date\n";
    for (const auto& e : data.events) {
        events << e.patient_id << ',' << e.readcode.raw() << ',' << e.date.iso() << '\n';
    }

    auto ledger = open_out(dir / "ledger.csv");
    ledger << "code,multiplier,true_NB,true_NA\n";
    for (const auto& l : data.ledger) {
        ledger << l.code << ',' << format_double(l.multiplier) << ',' << l.true_nb << ',' << l.true_na << '\n';
    }
    for (auto* s : {&patients, &rx, &events, &ledger}) {
        s->flush();
        if (!*s) throw Error(Errc::Io, "write failed in " + dir.string());
    }
}

std::vector<std::string> synthetic_codes(std::size_t n) {
    static constexpr std::string_view kChapters = "ABCDEFGHJKMN";
    std::vector<std::string> out;
    out.reserve(n);
    char buf[16];
    for (std::size_t i = 0; i < n; ++i) {
        const std::size_t serial = i / kChapters.size();
        std::snprintf(buf, sizeof buf, "%c%04zu00", kChapters[i % kChapters.size()], serial % 10000);
        if (serial >= 10000) throw Error(Errc::InvalidArgument, "too many synthetic codes requested");
        out.emplace_back(buf);
    }
    return out;
}

SynthSpec make_spec(const SynthDesign& d) {
    if (!(d.prevalence_min >= 0.0 && d.prevalence_min <= d.prevalence_max && d.prevalence_max <= 1.0)) {
        throw Error(Errc::InvalidPrevalence, "need 0 <= prevalence_min <= prevalence_max <= 1");
    }
    if (d.n_planted > d.n_codes) throw Error(Errc::InvalidArgument, "n_planted exceeds n_codes");
    if (!(d.multiplier >= 0.0) || !std::isfinite(d.multiplier)) {
        throw Error(Errc::InvalidMultiplier, "multiplier must be finite and >= 0");
    }

    SynthSpec spec;
    spec.n_patients = d.n_patients;
    spec.window_days = d.window_days;
    spec.seed = d.seed;
    spec.drug_code = d.drug_code;
    spec.start_date = d.start_date;
    spec.span_days = d.span_days;

    // Design draws use their own stream so the cohort stream depends only on `seed`.
    Rng rng(d.seed ^ 0x9E3779B97F4A7C15ULL);
    const auto codes = synthetic_codes(d.n_codes);

    std::vector<std::size_t> order(codes.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    for (std::size_t i = 0; i < d.n_planted; ++i) std::swap(order[i], order[i + rng.below(order.size() - i)]);
    std::vector<bool> planted(codes.size(), false);
    for (std::size_t i = 0; i < d.n_planted; ++i) planted[order[i]] = true;

    const double planted_lo = std::min(std::max(d.prevalence_min, d.planted_prevalence_min), d.prevalence_max);
    for (std::size_t j = 0; j < codes.size(); ++j) {
        const double lo = planted[j] ? planted_lo : d.prevalence_min;
        spec.vocabulary.push_back({codes[j], lo + (d.prevalence_max - lo) * rng.uniform()});
    }
    for (std::size_t j = 0; j < codes.size(); ++j) {
        if (planted[j]) spec.planted_effects.push_back({codes[j], d.multiplier});
    }
    return spec;
}

}  // namespace adrsig
