#include <doctest.h>

#include <sstream>

#include "adrsig/csv.hpp"
#include "adrsig/error.hpp"
#include "adrsig/ingest.hpp"

using namespace adrsig;

namespace {

Errc error_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    FAIL("expected an adrsig::Error");
    return Errc::InvalidArgument;
}

}  // namespace

TEST_SUITE("ingest") {

TEST_CASE("dates are strict ISO-8601") {
    CHECK(Date::parse("2009-03-02")->iso() == "2009-03-02");
    CHECK(Date::parse("2008-02-29").has_value());
    CHECK_FALSE(Date::parse("2009-02-29").has_value());
    CHECK_FALSE(Date::parse("2010-13-01").has_value());
    CHECK_FALSE(Date::parse("2010-1-01").has_value());
    CHECK_FALSE(Date::parse("2010/01/01").has_value());
    CHECK_FALSE(Date::parse("2010-01-01 ").has_value());
    CHECK(*Date::parse("2009-03-01") - *Date::parse("2009-02-28") == 1);
}

TEST_CASE("load_patients") {
    std::istringstream distinct("patient_id\np1\np2\np3\n");
    auto a = load_patients(distinct);
    CHECK(a.records.size() == 3);
    CHECK(a.stats.duplicates == 0);

    std::istringstream dup("patient_id,practice\np1,x\np2,x\np1,y\n");
    auto b = load_patients(dup);
    REQUIRE(b.records.size() == 2);
    CHECK(b.records[0].patient_id == "p1");
    CHECK(b.records[1].patient_id == "p2");
    CHECK(b.stats.duplicates == 1);
    CHECK(b.stats.data_rows == b.stats.parsed + b.stats.filtered + b.stats.duplicates);

    std::istringstream empty_id("patient_id,practice\np1,x\n,y\n");
    try {
        load_patients(empty_id);
        FAIL("expected MalformedRow");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::MalformedRow);
        CHECK(e.line() == 3);
    }

    std::istringstream no_header("");
    CHECK(error_of([&] { load_patients(no_header); }) == Errc::MissingHeader);
    std::istringstream wrong_header("id\np1\n");
    CHECK(error_of([&] { load_patients(wrong_header); }) == Errc::MissingHeader);
}

TEST_CASE("load_prescriptions filters and sorts") {
    std::istringstream in("patient_id,drug_code,date,dose\n"
                          "p2,X,2009-08-01,10\n"
                          "p1,Y,2009-01-01,10\n"
                          "p2,X,2009-05-10,10\n"
                          "p1,X,2010-01-01,20\n");
    auto rx = load_prescriptions(in, "X");
    REQUIRE(rx.records.size() == 3);
    CHECK(rx.records[0].patient_id == "p1");
    CHECK(rx.records[1].patient_id == "p2");
    CHECK(rx.records[1].date.iso() == "2009-05-10");
    CHECK(rx.records[2].date.iso() == "2009-08-01");
    CHECK(rx.stats.filtered == 1);
    CHECK(rx.stats.data_rows == rx.stats.parsed + rx.stats.filtered + rx.stats.duplicates);

    std::istringstream case_sensitive("patient_id,drug_code,date\np1,x,2009-01-01\n");
    CHECK(load_prescriptions(case_sensitive, "X").records.empty());
}

TEST_CASE("load_prescriptions errors") {
    std::istringstream bad_month("patient_id,drug_code,date\np1,X,2010-13-01\n");
    try {
        load_prescriptions(bad_month, "X");
        FAIL("expected BadDate");
    } catch (const Error& e) {
        CHECK(e.code() == Errc::BadDate);
        CHECK(e.line() == 2);
    }
    std::istringstream missing("patient_id,date\np1,2010-01-01\n");
    CHECK(error_of([&] { load_prescriptions(missing, "X"); }) == Errc::MissingHeader);
    std::istringstream empty_drug("patient_id,drug_code,date\np1,,2010-01-01\n");
    CHECK(error_of([&] { load_prescriptions(empty_drug, "X"); }) == Errc::MalformedRow);
    std::istringstream ok("patient_id,drug_code,date\n");
    CHECK(error_of([&] { load_prescriptions(ok, ""); }) == Errc::InvalidArgument);
}

TEST_CASE("load_events") {
    std::istringstream in("patient_id,readcode,date\np1,N245.17,2009-03-02\nghost,F46..00,2009-03-03\n");
    auto ev = load_events(in);
    REQUIRE(ev.records.size() == 2);
    CHECK(ev.records[0].readcode.stem() == "N245.");
    CHECK(ev.records[0].date.iso() == "2009-03-02");
    CHECK(ev.records[1].patient_id == "ghost");

    std::istringstream header_only("patient_id,readcode,date\n");
    CHECK(load_events(header_only).records.empty());

    std::istringstream missing_col("patient_id,readcode,date\np1,2009-03-02\n");
    CHECK(error_of([&] { load_events(missing_col); }) == Errc::MalformedRow);

    std::istringstream bad_code("patient_id,readcode,date\np1,B1 z..00,2009-03-02\n");
    CHECK(error_of([&] { load_events(bad_code); }) == Errc::MalformedRow);

    std::istringstream bad_date("patient_id,readcode,date\np1,A,02/03/2009\n");
    CHECK(error_of([&] { load_events(bad_date); }) == Errc::BadDate);
}

TEST_CASE("tsv, CRLF, BOM and blank lines") {
    std::istringstream in("\xEF\xBB\xBFpatient_id\treadcode\tdate\r\np1\tA\t2009-03-02\r\n\r\np2\tB\t2009-03-03\r\n");
    auto ev = load_events(in);
    REQUIRE(ev.records.size() == 2);
    CHECK(ev.records[1].readcode.raw() == "B");
}

TEST_CASE("loading is deterministic") {
    const std::string text = "patient_id,readcode,date\np2,B,2009-03-03\np1,A,2009-03-02\n";
    std::istringstream a(text), b(text);
    auto x = load_events(a);
    auto y = load_events(b);
    REQUIRE(x.records.size() == y.records.size());
    for (std::size_t i = 0; i < x.records.size(); ++i) {
        CHECK(x.records[i].patient_id == y.records[i].patient_id);
        CHECK(x.records[i].readcode == y.records[i].readcode);
        CHECK(x.records[i].date == y.records[i].date);
    }
}

TEST_CASE("csv reader handles multi-line quoted fields") {
    std::istringstream in("a,b\n\"line1\nline2\",x\n\"unterminated,y\n");
    csv::TableReader reader(in);
    std::vector<std::string> f;
    REQUIRE(reader.next(f));
    CHECK(f[0] == "line1\nline2");
    CHECK(f[1] == "x");
    CHECK(reader.line() == 2);
    CHECK_THROWS_AS(reader.next(f), Error);
}

TEST_CASE("csv escape") {
    CHECK(csv::escape("plain") == "plain");
    CHECK(csv::escape("a,b") == "\"a,b\"");
    CHECK(csv::escape("say \"hi\"") == "\"say \"\"hi\"\"\"");
}

}  // TEST_SUITE
