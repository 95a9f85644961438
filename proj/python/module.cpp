#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <fstream>
#include <sstream>

#include "adrsig/cli.hpp"
#include "adrsig/detect.hpp"
#include "adrsig/error.hpp"
#include "adrsig/ingest.hpp"
#include "adrsig/readcode.hpp"
#include "adrsig/report.hpp"
#include "adrsig/stats.hpp"
#include "adrsig/synth.hpp"

namespace py = pybind11;
using namespace adrsig;

namespace {

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::Io, "cannot open '" + path + "'");
    return in;
}

TTestMode parse_test_mode(const std::string& name) {
    if (name == "pooled") return TTestMode::TwoSamplePooled;
    if (name == "paired") return TTestMode::Paired;
    throw Error(Errc::InvalidArgument, "test mode must be 'pooled' or 'paired'");
}

ReportFormat parse_format(const std::string& name) {
    if (auto f = parse_report_format(name)) return *f;
    throw Error(Errc::InvalidArgument, "format must be text, csv or markdown");
}

std::vector<SignalRow> detect_files(const std::string& prescriptions, const std::string& events,
                                    const std::string& drug, const std::optional<std::string>& patients,
                                    const std::optional<std::string>& dictionary, const DetectionConfig& cfg) {
    std::vector<PatientRecord> pts;
    if (patients) {
        auto in = open_or_throw(*patients);
        pts = load_patients(in).records;
    }
    auto rx_in = open_or_throw(prescriptions);
    auto rx = load_prescriptions(rx_in, drug);
    auto ev_in = open_or_throw(events);
    auto ev = load_events(ev_in);
    CodeDictionary dict;
    if (dictionary) {
        auto in = open_or_throw(*dictionary);
        dict = CodeDictionary::load(in);
    }
    return run_pipeline(pts, std::move(rx.records), ev.records, dict, cfg).signals;
}

}  // namespace

PYBIND11_MODULE(_adrsig, m) {
    m.doc() = "Before/after window adverse drug reaction signal detection";
    m.attr("__version__") = ADRSIG_VERSION;

    py::register_exception<Error>(m, "AdrsigError", PyExc_ValueError);

    py::class_<ReadCode>(m, "ReadCode")
        .def_property_readonly("raw", &ReadCode::raw)
        .def_property_readonly("stem", [](const ReadCode& c) { return std::string(c.stem()); })
        .def_property_readonly("term_suffix", [](const ReadCode& c) { return std::string(c.term_suffix()); })
        .def_property_readonly("level", &ReadCode::level)
        .def("key_at_level", &ReadCode::key_at_level, py::arg("k"))
        .def("__repr__", [](const ReadCode& c) { return "ReadCode('" + c.raw() + "')"; });

    m.def("parse_code", &ReadCode::parse, py::arg("token"));
    m.def(
        "key_at_level", [](const std::string& token, int k) { return ReadCode::parse(token).key_at_level(k); },
        py::arg("code"), py::arg("k"));

    m.def("t_cdf", &t_cdf, py::arg("t"), py::arg("df"));
    m.def("incomplete_beta", &incomplete_beta, py::arg("a"), py::arg("b"), py::arg("x"));

    py::class_<TTestResult>(m, "TTestResult")
        .def_readonly("t_stat", &TTestResult::t_stat)
        .def_readonly("df", &TTestResult::df)
        .def_readonly("p_value", &TTestResult::p_value)
        .def_readonly("mean_before", &TTestResult::mean_before)
        .def_readonly("mean_after", &TTestResult::mean_after);
    m.def(
        "student_t_test",
        [](const std::vector<double>& before, const std::vector<double>& after, const std::string& mode) {
            return student_t_test(before, after, parse_test_mode(mode));
        },
        py::arg("before"), py::arg("after"), py::arg("mode") = "pooled");

    py::class_<RatioStats>(m, "RatioStats")
        .def_readonly("nb", &RatioStats::nb)
        .def_readonly("na", &RatioStats::na)
        .def_readonly("population", &RatioStats::population)
        .def_readonly("r1", &RatioStats::r1)
        .def_readonly("r2_percent", &RatioStats::r2_percent);
    m.def("ratio_stats", &ratio_stats, py::arg("nb"), py::arg("na"), py::arg("population"));

    py::class_<DetectionConfig>(m, "DetectionConfig")
        .def(py::init<>())
        .def_readwrite("window_days", &DetectionConfig::window_days)
        .def_readwrite("group_size", &DetectionConfig::group_size)
        .def_property(
            "level", [](const DetectionConfig& c) { return c.level_mode == LevelMode::Level3 ? 3 : 5; },
            [](DetectionConfig& c, int level) {
                if (level != 3 && level != 5) throw Error(Errc::InvalidArgument, "level must be 3 or 5");
                c.level_mode = level == 3 ? LevelMode::Level3 : LevelMode::Full;
            })
        .def_readwrite("alpha", &DetectionConfig::alpha)
        .def_property(
            "rank_by", [](const DetectionConfig& c) { return c.rank_mode == RankMode::ByR1 ? "r1" : "p"; },
            [](DetectionConfig& c, const std::string& v) {
                if (v != "p" && v != "r1") throw Error(Errc::InvalidArgument, "rank_by must be 'p' or 'r1'");
                c.rank_mode = v == "r1" ? RankMode::ByR1 : RankMode::ByP;
            })
        .def_readwrite("prefix", &DetectionConfig::prefix_filter)
        .def_readwrite("top_k", &DetectionConfig::top_k)
        .def_property(
            "test", [](const DetectionConfig& c) { return c.test_mode == TTestMode::Paired ? "paired" : "pooled"; },
            [](DetectionConfig& c, const std::string& v) { c.test_mode = parse_test_mode(v); })
        .def_readwrite("min_na", &DetectionConfig::min_na)
        .def_readwrite("shuffle_seed", &DetectionConfig::shuffle_seed)
        .def_readwrite("include_decreases", &DetectionConfig::include_decreases);

    py::class_<SignalRow>(m, "SignalRow")
        .def_readonly("rank", &SignalRow::rank)
        .def_readonly("key", &SignalRow::key)
        .def_readonly("description", &SignalRow::description)
        .def_readonly("nb", &SignalRow::nb)
        .def_readonly("na", &SignalRow::na)
        .def_readonly("r1", &SignalRow::r1)
        .def_readonly("r2_percent", &SignalRow::r2_percent)
        .def_readonly("p_value", &SignalRow::p_value)
        .def_readonly("t_stat", &SignalRow::t_stat)
        .def("__repr__", [](const SignalRow& r) {
            return "SignalRow(rank=" + std::to_string(r.rank) + ", key='" + r.key + "', NB=" + std::to_string(r.nb) +
                   ", NA=" + std::to_string(r.na) + ")";
        });

    m.def("detect_files", &detect_files, py::arg("prescriptions"), py::arg("events"), py::arg("drug"),
          py::arg("patients") = py::none(), py::arg("dictionary") = py::none(),
          py::arg("config") = DetectionConfig{}, "Run the full pipeline on CSV/TSV tables.");

    m.def(
        "render",
        [](const std::vector<SignalRow>& rows, const std::string& format) {
            return render(rows, parse_format(format));
        },
        py::arg("rows"), py::arg("format") = "text");

    py::class_<LedgerEntry>(m, "LedgerEntry")
        .def_readonly("code", &LedgerEntry::code)
        .def_readonly("multiplier", &LedgerEntry::multiplier)
        .def_readonly("true_nb", &LedgerEntry::true_nb)
        .def_readonly("true_na", &LedgerEntry::true_na);

    m.def(
        "synthesize",
        [](const std::filesystem::path& out_dir, std::size_t n_patients, std::size_t n_codes, std::size_t n_planted,
           double multiplier, double prevalence_min, double prevalence_max, int window_days, std::uint64_t seed,
           const std::string& drug) {
            SynthDesign d;
            d.n_patients = n_patients;
            d.n_codes = n_codes;
            d.n_planted = n_planted;
            d.multiplier = multiplier;
            d.prevalence_min = prevalence_min;
            d.prevalence_max = prevalence_max;
            d.window_days = window_days;
            d.seed = seed;
            d.drug_code = drug;
            SynthDataset data = generate(make_spec(d));
            write_dataset(data, out_dir);
            return data.ledger;
        },
        py::arg("out_dir"), py::arg("n_patients") = 1000, py::arg("n_codes") = 200, py::arg("n_planted") = 10,
        py::arg("multiplier") = 4.0, py::arg("prevalence_min") = 0.005, py::arg("prevalence_max") = 0.05,
        py::arg("window_days") = 60, py::arg("seed") = 1, py::arg("drug") = "simvastatin",
        "Write a synthetic cohort and return its ground-truth ledger.");

    m.def(
        "cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out, err;
            int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "Run the command-line interface in-process; returns (exit_code, stdout, stderr).");
}
