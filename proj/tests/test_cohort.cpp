#include <doctest.h>

#include <random>

#include "adrsig/cohort.hpp"
#include "adrsig/error.hpp"
#include "oracles.hpp"

using namespace adrsig;

namespace {

Date d(const char* iso) { return *Date::parse(iso); }

EventRecord ev(const char* pid, const char* code, Date date) { return {pid, ReadCode::parse(code), date}; }

}  // namespace

TEST_SUITE("cohort") {

TEST_CASE("index date and windows") {
    std::vector<PrescriptionRecord> rx = {{"p", "X", d("2009-05-10")}, {"p", "X", d("2009-08-01")}};
    Cohort c = build_cohort(rx, 60);
    REQUIRE(c.size() == 1);
    CHECK(c[0].index_date.iso() == "2009-05-10");
    CHECK(c[0].before_start.iso() == "2009-03-11");
    CHECK(c[0].before_end.iso() == "2009-05-09");
    CHECK(c[0].after_start.iso() == "2009-05-11");
    CHECK(c[0].after_end.iso() == "2009-07-09");
}

TEST_CASE("window boundaries agree with day-by-day enumeration") {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 300; ++i) {
        const oracle::Ymd start{1990 + static_cast<int>(rng() % 40), 1 + static_cast<int>(rng() % 12),
                                1 + static_cast<int>(rng() % 28)};
        const int shift = static_cast<int>(rng() % 2000);
        const oracle::Ymd idx = oracle::step(start, shift);
        const int window = 1 + static_cast<int>(rng() % 120);
        CohortWindows w = make_windows("p", *Date::parse(oracle::iso(idx)), window);
        CHECK(w.before_start.iso() == oracle::iso(oracle::step(idx, -window)));
        CHECK(w.before_end.iso() == oracle::iso(oracle::step(idx, -1)));
        CHECK(w.after_start.iso() == oracle::iso(oracle::step(idx, 1)));
        CHECK(w.after_end.iso() == oracle::iso(oracle::step(idx, window)));
        CHECK(w.before_end - w.before_start + 1 == window);
        CHECK(w.after_end - w.after_start + 1 == window);
    }
}

TEST_CASE("single prescription and one-day windows") {
    std::vector<PrescriptionRecord> rx = {{"q", "X", d("2012-03-01")}};
    Cohort c = build_cohort(rx, 1);
    CHECK(c[0].index_date.iso() == "2012-03-01");
    CHECK(c[0].before_start == c[0].before_end);
    CHECK(c[0].before_start.iso() == "2012-02-29");
    CHECK(c[0].after_start.iso() == "2012-03-02");
    CHECK(c[0].after_end == c[0].after_start);
    CHECK_THROWS_AS(build_cohort(rx, 0), Error);
}

TEST_CASE("cohort order follows first appearance; earliest date wins") {
    std::vector<PrescriptionRecord> rx = {
        {"b", "X", d("2010-01-05")}, {"a", "X", d("2010-01-09")}, {"b", "X", d("2010-01-01")}};
    Cohort c = build_cohort(rx);
    REQUIRE(c.size() == 2);
    CHECK(c[0].patient_id == "b");
    CHECK(c[0].index_date.iso() == "2010-01-01");
    CHECK(c[1].patient_id == "a");
    CHECK(build_cohort(std::vector<PrescriptionRecord>{}).empty());
}

TEST_CASE("assign_events boundaries") {
    std::vector<PrescriptionRecord> rx = {{"p", "X", d("2009-05-10")}};
    Cohort c = build_cohort(rx, 60);
    const Date idx = c[0].index_date;
    std::vector<EventRecord> events = {
        ev("p", "A", idx),            // index day: neither window
        ev("p", "B", idx - 60),       // before_start: BEFORE
        ev("p", "C", idx - 61),       // too early
        ev("p", "D", idx + 60),       // after_end: AFTER
        ev("p", "E", idx + 61),       // too late
        ev("p", "F", idx - 1),        // BEFORE
        ev("other", "G", idx + 5),    // non-cohort
    };
    Assignments a = assign_events(c, events);
    REQUIRE(a.before.size() == 2);
    CHECK(a.before[0].readcode.raw() == "B");
    CHECK(a.before[1].readcode.raw() == "F");
    REQUIRE(a.after.size() == 1);
    CHECK(a.after[0].readcode.raw() == "D");
    CHECK(a.outside_windows == 3);
    CHECK(a.non_cohort == 1);
}

TEST_CASE("partition, shift invariance and per-patient determinism") {
    std::mt19937_64 rng(5);
    std::vector<PrescriptionRecord> rx;
    std::vector<EventRecord> events;
    const Date base = d("2008-01-01");
    for (int p = 0; p < 40; ++p) {
        const std::string id = "p" + std::to_string(p);
        rx.push_back({id, "X", base + static_cast<long>(rng() % 700)});
        for (int e = 0; e < 30; ++e) {
            events.push_back({id, ReadCode::parse(std::string(1, "ABCDE"[rng() % 5])), base + static_cast<long>(rng() % 900) - 100});
        }
    }
    events.push_back({"stranger", ReadCode::parse("A"), base});
    Cohort c = build_cohort(rx, 60);
    Assignments a = assign_events(c, events);
    CHECK(a.before.size() + a.after.size() + a.outside_windows + a.non_cohort == events.size());

    auto shifted_rx = rx;
    auto shifted_ev = events;
    for (auto& r : shifted_rx) r.date = r.date + 1234;
    for (auto& e : shifted_ev) e.date = e.date + 1234;
    Assignments b = assign_events(build_cohort(shifted_rx, 60), shifted_ev);
    REQUIRE(a.before.size() == b.before.size());
    REQUIRE(a.after.size() == b.after.size());
    for (std::size_t i = 0; i < a.before.size(); ++i) {
        CHECK(a.before[i].patient_row == b.before[i].patient_row);
        CHECK(a.before[i].readcode == b.before[i].readcode);
    }
    CHECK(a.outside_windows == b.outside_windows);

    // Dropping every other patient's events leaves the rest untouched.
    std::vector<EventRecord> subset;
    for (const auto& e : events) {
        if (e.patient_id == "p3") subset.push_back(e);
    }
    Assignments only = assign_events(c, subset);
    std::size_t before_p3 = 0;
    for (const auto& x : a.before) before_p3 += c[x.patient_row].patient_id == "p3";
    CHECK(only.before.size() == before_p3);
}

TEST_CASE("restrict_to_patients") {
    std::vector<PrescriptionRecord> rx = {{"a", "X", d("2010-01-01")}, {"b", "X", d("2010-01-01")}};
    std::vector<PatientRecord> pts = {{"a"}};
    CHECK(restrict_to_patients(rx, pts) == 1);
    REQUIRE(rx.size() == 1);
    CHECK(rx[0].patient_id == "a");
}

}  // TEST_SUITE
