#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "adrsig/date.hpp"
#include "adrsig/ingest.hpp"

namespace adrsig {

inline constexpr int kDefaultWindowDays = 60;

// Observation windows around one patient's index date. Both windows are
// closed and hold exactly window_days days; the index date is in neither.
struct CohortWindows {
    std::string patient_id;
    Date index_date;
    Date before_start;
    Date before_end;
    Date after_start;
    Date after_end;
    int window_days = kDefaultWindowDays;
};

class Cohort {
public:
    Cohort() = default;
    explicit Cohort(std::vector<CohortWindows> windows);

    std::size_t size() const noexcept { return windows_.size(); }
    bool empty() const noexcept { return windows_.empty(); }
    const CohortWindows& operator[](std::size_t row) const { return windows_[row]; }
    std::span<const CohortWindows> windows() const noexcept { return windows_; }
    auto begin() const noexcept { return windows_.begin(); }
    auto end() const noexcept { return windows_.end(); }

    // Row of a patient, or npos.
    std::size_t find(const std::string& patient_id) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

private:
    std::vector<CohortWindows> windows_;
    std::unordered_map<std::string, std::size_t> row_of_;
};

CohortWindows make_windows(std::string patient_id, Date index_date, int window_days);

// One entry per distinct patient, indexed at the earliest prescription, in
// order of first appearance. Throws Errc::InvalidArgument if window_days < 1.
Cohort build_cohort(std::span<const PrescriptionRecord> prescriptions, int window_days = kDefaultWindowDays);

// Drops prescriptions whose patient is not in `patients`; returns the number dropped.
std::size_t restrict_to_patients(std::vector<PrescriptionRecord>& prescriptions,
                                 std::span<const PatientRecord> patients);

// An event placed in a window. `patient_row` indexes the cohort.
struct AssignedEvent {
    std::size_t patient_row;
    ReadCode readcode;
};

struct Assignments {
    std::vector<AssignedEvent> before;
    std::vector<AssignedEvent> after;
    std::size_t outside_windows = 0;  // cohort patients, dated outside both windows
    std::size_t non_cohort = 0;       // patient not in the cohort
};

Assignments assign_events(const Cohort& cohort, std::span<const EventRecord> events);

}  // namespace adrsig
