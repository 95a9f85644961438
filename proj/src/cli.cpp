#include "adrsig/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <optional>

#include "adrsig/detect.hpp"
#include "adrsig/error.hpp"
#include "adrsig/ingest.hpp"
#include "adrsig/report.hpp"
#include "adrsig/synth.hpp"

namespace adrsig::cli {

namespace {

// Thrown for flag combinations CLI11 cannot check on its own.
struct FlagError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path, const char* flag) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw FlagError(std::string(flag) + ": cannot open '" + path + "'");
    return in;
}

// CLI11 wants argv order reversed when fed a vector.
std::vector<std::string> reversed(const std::vector<std::string>& args) {
    return {args.rbegin(), args.rend()};
}

int exit_code_for(Errc code) {
    switch (code) {
        case Errc::UnknownKey:
        case Errc::UnknownPatient:
        case Errc::VocabularyMismatch: return kInternalError;
        default: return kValidationError;
    }
}

template <class Body>
int guarded(CLI::App& app, const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
            Body&& body) {
    try {
        app.parse(reversed(args));
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    }
    try {
        return body();
    } catch (const FlagError& e) {
        err << "error: " << e.what() << '\n';
        return kValidationError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        err << "internal error: " << e.what() << '\n';
        return kInternalError;
    }
}

}  // namespace

int run_detect(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Detect candidate adverse drug reactions from before/after event windows", "adrsig detect"};

    std::string patients_path, prescriptions_path, events_path, dictionary_path, drug;
    std::string level = "5", rank_by = "p", test = "pooled", format = "text", out_path, dump_dir;
    std::optional<std::string> prefix;
    std::optional<std::uint64_t> shuffle_seed;
    DetectionConfig cfg;
    int window_days = cfg.window_days;
    std::size_t group_size = cfg.group_size, top_k = cfg.top_k;
    std::uint64_t min_na = cfg.min_na;
    double alpha = cfg.alpha;
    bool include_decreases = false;

    app.add_option("--patients", patients_path, "patients table (patient_id)");
    app.add_option("--prescriptions", prescriptions_path, "prescriptions table (patient_id,drug_code,date)")
        ->required();
    app.add_option("--events", events_path, "medical events table (patient_id,readcode,date)")->required();
    app.add_option("--dictionary", dictionary_path, "code dictionary (code,description)");
    app.add_option("--drug", drug, "study drug code, matched exactly")->required();
    app.add_option("--window-days", window_days, "observation window length in days")->capture_default_str();
    app.add_option("--group-size", group_size, "patients per group")->capture_default_str();
    app.add_option("--level", level, "5 = full codes, 3 = level-3 keys")
        ->check(CLI::IsMember({"5", "3"}))
        ->capture_default_str();
    app.add_option("--alpha", alpha, "significance threshold")->capture_default_str();
    app.add_option("--rank-by", rank_by, "ranking: p or r1")->check(CLI::IsMember({"p", "r1"}))->capture_default_str();
    app.add_option("--prefix", prefix, "keep only keys starting with this prefix");
    app.add_option("--top", top_k, "rows to report")->capture_default_str();
    app.add_option("--test", test, "t-test variant: pooled or paired")
        ->check(CLI::IsMember({"pooled", "paired"}))
        ->capture_default_str();
    app.add_option("--min-na", min_na, "minimum after-window patient count")->capture_default_str();
    app.add_option("--shuffle-seed", shuffle_seed, "randomize patient grouping with this seed");
    app.add_option("--format", format, "text, csv or markdown")
        ->check(CLI::IsMember({"text", "csv", "markdown"}))
        ->capture_default_str();
    app.add_option("--out", out_path, "write the table here instead of stdout");
    app.add_flag("--include-decreases", include_decreases, "also report events with NA <= NB");
    app.add_option("--dump-dir", dump_dir, "write X/Y as sparse group,key,count triplets");

    return guarded(app, args, out, err, [&]() -> int {
        if (window_days < 1) throw FlagError("--window-days must be >= 1");
        if (group_size < 1) throw FlagError("--group-size must be >= 1");
        if (!(alpha > 0.0 && alpha < 1.0)) throw FlagError("--alpha must lie in (0, 1)");
        if (top_k < 1) throw FlagError("--top must be >= 1");
        if (drug.empty()) throw FlagError("--drug must be non-empty");

        cfg.window_days = window_days;
        cfg.group_size = group_size;
        cfg.level_mode = level == "3" ? LevelMode::Level3 : LevelMode::Full;
        cfg.alpha = alpha;
        cfg.rank_mode = rank_by == "r1" ? RankMode::ByR1 : RankMode::ByP;
        cfg.prefix_filter = prefix;
        cfg.top_k = top_k;
        cfg.test_mode = test == "paired" ? TTestMode::Paired : TTestMode::TwoSamplePooled;
        cfg.min_na = min_na;
        cfg.shuffle_seed = shuffle_seed;
        cfg.include_decreases = include_decreases;
        const ReportFormat fmt = *parse_report_format(format);

        std::vector<PatientRecord> patients;
        if (!patients_path.empty()) {
            auto in = open_in(patients_path, "--patients");
            auto loaded = load_patients(in);
            if (loaded.stats.duplicates) err << "patients: " << loaded.stats.duplicates << " duplicate ids skipped\n";
            patients = std::move(loaded.records);
        }
        auto rx_in = open_in(prescriptions_path, "--prescriptions");
        auto rx = load_prescriptions(rx_in, drug);
        auto ev_in = open_in(events_path, "--events");
        auto ev = load_events(ev_in);
        CodeDictionary dict;
        if (!dictionary_path.empty()) {
            auto in = open_in(dictionary_path, "--dictionary");
            CodeDictionary::LoadStats ds;
            dict = CodeDictionary::load(in, &ds);
            err << "dictionary: " << dict.size() << " codes";
            if (ds.duplicates) err << " (" << ds.duplicates << " duplicates ignored)";
            err << '\n';
        }

        PipelineResult res = run_pipeline(patients, std::move(rx.records), ev.records, dict, cfg);
        const auto& c = res.counters;
        err << "prescriptions: " << rx.stats.parsed << " for '" << drug << "', " << rx.stats.filtered
            << " other drugs";
        if (c.prescriptions_unknown_patient) err << ", " << c.prescriptions_unknown_patient << " unknown patients";
        err << '\n'
            << "cohort: " << res.cohort.size() << " patients, " << res.before->groups() << " groups of "
            << cfg.group_size << ", " << res.before->dropped() << " dropped\n"
            << "events: " << ev.stats.parsed << " read, " << c.events_before << " before, " << c.events_after
            << " after, " << c.events_outside_windows << " outside windows, " << c.events_non_cohort
            << " non-cohort\n"
            << "matrix: " << res.before->groups() << "x" << res.vocabulary->size() << ", " << res.signals.size()
            << " signals reported\n";

        if (!dump_dir.empty()) {
            std::filesystem::create_directories(dump_dir);
            std::ofstream x(std::filesystem::path(dump_dir) / "X_before.csv", std::ios::binary);
            std::ofstream y(std::filesystem::path(dump_dir) / "Y_after.csv", std::ios::binary);
            if (!x || !y) throw FlagError("--dump-dir: cannot write into '" + dump_dir + "'");
            write_triplets(x, *res.before);
            write_triplets(y, *res.after);
        }

        const std::string table = render(res.signals, fmt);
        if (out_path.empty()) {
            out << table;
        } else {
            std::ofstream f(out_path, std::ios::binary);
            if (!(f << table)) throw FlagError("--out: cannot write '" + out_path + "'");
        }
        return kOk;
    });
}

int run_synth(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Generate a synthetic cohort with planted adverse reactions", "adrsig synth"};
    SynthDesign d;
    std::string out_dir, start_date = d.start_date.iso();
    long long n_patients = static_cast<long long>(d.n_patients);

    app.set_config("--spec", "", "key=value file with any of the options below");
    app.add_option("--out-dir", out_dir, "directory for the four CSV files")->required();
    app.add_option("--n-patients", n_patients, "cohort size")->capture_default_str();
    app.add_option("--n-codes", d.n_codes, "vocabulary size")->capture_default_str();
    app.add_option("--prevalence-min", d.prevalence_min, "lowest baseline prevalence")->capture_default_str();
    app.add_option("--prevalence-max", d.prevalence_max, "highest baseline prevalence")->capture_default_str();
    app.add_option("--n-planted", d.n_planted, "codes with a planted effect")->capture_default_str();
    app.add_option("--multiplier", d.multiplier, "risk multiplier of planted codes")->capture_default_str();
    app.add_option("--planted-prevalence-min", d.planted_prevalence_min, "lowest baseline of planted codes")
        ->capture_default_str();
    app.add_option("--window-days", d.window_days, "observation window length")->capture_default_str();
    app.add_option("--seed", d.seed, "random seed")->capture_default_str();
    app.add_option("--drug", d.drug_code, "drug code written to prescriptions")->capture_default_str();
    app.add_option("--start-date", start_date, "first possible index date")->capture_default_str();
    app.add_option("--span-days", d.span_days, "index dates span this many days")->capture_default_str();

    return guarded(app, args, out, err, [&]() -> int {
        if (n_patients < 1) throw FlagError("--n-patients must be >= 1");
        if (d.window_days < 1) throw FlagError("--window-days must be >= 1");
        if (d.span_days < 1) throw FlagError("--span-days must be >= 1");
        if (d.n_planted > d.n_codes) throw FlagError("--n-planted must not exceed --n-codes");
        auto start = Date::parse(start_date);
        if (!start) throw FlagError("--start-date must be YYYY-MM-DD");
        d.start_date = *start;
        d.n_patients = static_cast<std::size_t>(n_patients);

        const SynthDataset data = generate(make_spec(d));
        write_dataset(data, out_dir);
        err << "synth: " << data.patients.size() << " patients, " << data.ledger.size() << " codes, "
            << data.events.size() << " events written to " << out_dir << '\n';
        return kOk;
    });
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    const char* usage =
        "usage: adrsig <command> [options]\n"
        "commands:\n"
        "  detect   rank candidate adverse reactions for one drug\n"
        "  synth    write a synthetic cohort with a ground-truth ledger\n"
        "run 'adrsig <command> --help' for options\n";
    if (args.empty()) {
        err << usage;
        return kValidationError;
    }
    const std::vector<std::string> rest(args.begin() + 1, args.end());
    if (args[0] == "detect") return run_detect(rest, out, err);
    if (args[0] == "synth") return run_synth(rest, out, err);
    if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        out << usage;
        return kOk;
    }
    err << "error: unknown command '" << args[0] << "'\n" << usage;
    return kValidationError;
}

}  // namespace adrsig::cli
