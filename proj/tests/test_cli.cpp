#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "adrsig/cli.hpp"
#include "adrsig/csv.hpp"

namespace fs = std::filesystem;
using adrsig::cli::run;

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome invoke(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

fs::path scratch(const std::string& name) {
    auto dir = fs::temp_directory_path() / ("adrsig_cli_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) {
    std::ofstream(p, std::ios::binary) << text;
}

// Planted synthetic cohort shared by several cases.
const fs::path& planted_dir() {
    static const fs::path dir = [] {
        auto d = scratch("planted");
        auto r = invoke({"synth", "--out-dir", d.string(), "--n-patients", "3000", "--n-codes", "80",
                         "--n-planted", "4", "--multiplier", "6", "--seed", "11"});
        REQUIRE(r.code == 0);
        return d;
    }();
    return dir;
}

std::vector<std::string> detect_args(const fs::path& d) {
    return {"detect", "--prescriptions", (d / "prescriptions.csv").string(), "--events",
            (d / "events.csv").string(), "--patients", (d / "patients.csv").string(), "--drug", "simvastatin"};
}

std::vector<std::string> planted_codes(const fs::path& d) {
    std::ifstream in(d / "ledger.csv");
    adrsig::csv::TableReader t(in);
    std::vector<std::string> row, codes;
    while (t.next(row)) {
        if (row[1] != "1") codes.push_back(row[0]);
    }
    return codes;
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("missing required flag names the flag") {
    auto r = invoke({"detect", "--prescriptions", "a.csv", "--events", "b.csv"});
    CHECK(r.code == 1);
    CHECK(r.err.find("--drug") != std::string::npos);
}

TEST_CASE("flag validation") {
    auto d = scratch("validate");
    CHECK(invoke({"synth", "--out-dir", d.string(), "--n-patients", "0"}).code == 1);
    CHECK(invoke({"synth", "--out-dir", d.string(), "--n-planted", "5", "--n-codes", "3"}).code == 1);
    CHECK(invoke({"synth", "--out-dir", d.string(), "--start-date", "2005-13-01"}).code == 1);
    CHECK(invoke({"synth", "--out-dir", d.string(), "--prevalence-max", "2"}).code == 1);

    auto base = detect_args(planted_dir());
    auto with = [&](std::vector<std::string> extra) {
        auto a = base;
        a.insert(a.end(), extra.begin(), extra.end());
        return invoke(a);
    };
    auto lvl = with({"--level", "4"});
    CHECK(lvl.code == 1);
    CHECK(lvl.err.find("--level") != std::string::npos);
    CHECK(with({"--group-size", "0"}).code == 1);
    CHECK(with({"--alpha", "1.5"}).code == 1);
    CHECK(with({"--rank-by", "q"}).code == 1);
    CHECK(with({"--format", "html"}).code == 1);
    CHECK(with({"--window-days", "0"}).code == 1);

    auto missing = invoke({"detect", "--prescriptions", (d / "none.csv").string(), "--events",
                           (d / "none.csv").string(), "--drug", "x"});
    CHECK(missing.code == 1);
    CHECK(invoke({"frobnicate"}).code == 1);
    CHECK(invoke({}).code == 1);
}

TEST_CASE("help exits cleanly") {
    auto r = invoke({"detect", "--help"});
    CHECK(r.code == 0);
    CHECK(r.out.find("--prescriptions") != std::string::npos);
}

TEST_CASE("synth with the same seed writes identical files") {
    auto a = scratch("seed_a"), b = scratch("seed_b");
    REQUIRE(invoke({"synth", "--out-dir", a.string(), "--n-patients", "400", "--seed", "42"}).code == 0);
    REQUIRE(invoke({"synth", "--out-dir", b.string(), "--n-patients", "400", "--seed", "42"}).code == 0);
    for (const char* f : {"patients.csv", "prescriptions.csv", "events.csv", "ledger.csv"}) {
        CHECK(slurp(a / f) == slurp(b / f));
    }
}

TEST_CASE("spec file is equivalent to flags") {
    auto a = scratch("spec_a"), b = scratch("spec_b");
    write(b / "run.spec", "n-patients = 350\nn-codes = 40\nseed = 9\nmultiplier = 3.5\n");
    REQUIRE(invoke({"synth", "--out-dir", a.string(), "--n-patients", "350", "--n-codes", "40", "--seed", "9",
                    "--multiplier", "3.5"})
                .code == 0);
    REQUIRE(invoke({"synth", "--out-dir", b.string(), "--spec", (b / "run.spec").string()}).code == 0);
    for (const char* f : {"events.csv", "ledger.csv"}) CHECK(slurp(a / f) == slurp(b / f));
}

TEST_CASE("detect with defaults surfaces the planted codes") {
    const auto& d = planted_dir();
    auto r = invoke(detect_args(d));
    REQUIRE(r.code == 0);
    CHECK(r.err.find("cohort: 3000 patients, 30 groups of 100, 0 dropped") != std::string::npos);
    const auto planted = planted_codes(d);
    REQUIRE(planted.size() == 4);
    for (const auto& code : planted) CHECK_MESSAGE(r.out.find(code) != std::string::npos, code);

    auto again = invoke(detect_args(d));
    CHECK(again.out == r.out);
    CHECK(again.err == r.err);
}

TEST_CASE("output options") {
    const auto& d = planted_dir();
    auto dir = scratch("outputs");
    auto args = detect_args(d);
    for (const char* s : {"--format", "csv", "--out"}) args.push_back(s);
    args.push_back((dir / "signals.csv").string());
    args.push_back("--dump-dir");
    args.push_back((dir / "dump").string());
    auto r = invoke(args);
    REQUIRE(r.code == 0);
    CHECK(r.out.empty());
    CHECK(slurp(dir / "signals.csv").starts_with("rank,readcode,description,NB,NA,R1,R2,p\r\n"));
    CHECK(slurp(dir / "dump" / "X_before.csv").starts_with("group,key,count\n"));
    CHECK(slurp(dir / "dump" / "Y_after.csv").starts_with("group,key,count\n"));

    auto md = detect_args(d);
    for (const char* s : {"--format", "markdown", "--top", "2"}) md.push_back(s);
    auto m = invoke(md);
    REQUIRE(m.code == 0);
    CHECK(std::count(m.out.begin(), m.out.end(), '\n') == 4);
}

TEST_CASE("level 3 collapses a mixed-depth vocabulary") {
    auto d = scratch("levels");
    std::ostringstream rx, ev;
    rx << "patient_id,drug_code,date\n";
    ev << "patient_id,readcode,date\n";
    const char* codes[] = {"N245.00", "N2451", "N245.16", "N24..00", "F46..00", "C34..00"};
    for (int i = 0; i < 400; ++i) {
        rx << "P" << i << ",simvastatin,2010-06-15\n";
        ev << "P" << i << "," << codes[i % 6] << ",2010-06-" << (i % 2 ? "20" : "10") << '\n';
    }
    write(d / "rx.csv", rx.str());
    write(d / "ev.csv", ev.str());
    std::vector<std::string> base = {"detect", "--prescriptions", (d / "rx.csv").string(), "--events",
                                     (d / "ev.csv").string(), "--drug", "simvastatin"};
    auto full = invoke(base);
    base.insert(base.end(), {"--level", "3"});
    auto l3 = invoke(base);
    REQUIRE(full.code == 0);
    REQUIRE(l3.code == 0);
    CHECK(full.err.find("matrix: 4x6,") != std::string::npos);
    CHECK(l3.err.find("matrix: 4x3,") != std::string::npos);
}

}  // TEST_SUITE
