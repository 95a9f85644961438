#include "adrsig/cohort.hpp"

#include <unordered_set>

#include "adrsig/error.hpp"

namespace adrsig {

Cohort::Cohort(std::vector<CohortWindows> windows) : windows_(std::move(windows)) {
    row_of_.reserve(windows_.size());
    for (std::size_t i = 0; i < windows_.size(); ++i) {
        if (!row_of_.emplace(windows_[i].patient_id, i).second) {
            throw Error(Errc::InvalidArgument, "patient '" + windows_[i].patient_id + "' appears twice in cohort");
        }
    }
}

std::size_t Cohort::find(const std::string& patient_id) const {
    auto it = row_of_.find(patient_id);
    return it == row_of_.end() ? npos : it->second;
}

CohortWindows make_windows(std::string patient_id, Date index_date, int window_days) {
    if (window_days < 1) {
        throw Error(Errc::InvalidArgument, "window_days must be >= 1, got " + std::to_string(window_days));
    }
    return CohortWindows{
        .patient_id = std::move(patient_id),
        .index_date = index_date,
        .before_start = index_date - window_days,
        .before_end = index_date - 1,
        .after_start = index_date + 1,
        .after_end = index_date + window_days,
        .window_days = window_days,
    };
}

Cohort build_cohort(std::span<const PrescriptionRecord> prescriptions, int window_days) {
    if (window_days < 1) {
        throw Error(Errc::InvalidArgument, "window_days must be >= 1, got " + std::to_string(window_days));
    }
    std::vector<std::string> order;
    std::unordered_map<std::string, Date> first;
    for (const auto& rx : prescriptions) {
        auto [it, inserted] = first.try_emplace(rx.patient_id, rx.date);
        if (inserted) {
            order.push_back(rx.patient_id);
        } else if (rx.date < it->second) {
            it->second = rx.date;
        }
    }
    std::vector<CohortWindows> windows;
    windows.reserve(order.size());
    for (auto& id : order) {
        Date index = first.at(id);
        windows.push_back(make_windows(std::move(id), index, window_days));
    }
    return Cohort(std::move(windows));
}

std::size_t restrict_to_patients(std::vector<PrescriptionRecord>& prescriptions,
                                 std::span<const PatientRecord> patients) {
    std::unordered_set<std::string_view> known;
    known.reserve(patients.size());
    for (const auto& p : patients) known.insert(p.patient_id);
    return std::erase_if(prescriptions, [&](const PrescriptionRecord& rx) { return !known.contains(rx.patient_id); });
}

Assignments assign_events(const Cohort& cohort, std::span<const EventRecord> events) {
    Assignments out;
    for (const auto& ev : events) {
        const std::size_t row = cohort.find(ev.patient_id);
        if (row == Cohort::npos) {
            ++out.non_cohort;
            continue;
        }
        const CohortWindows& w = cohort[row];
        if (ev.date >= w.before_start && ev.date <= w.before_end) {
            out.before.push_back({row, ev.readcode});
        } else if (ev.date >= w.after_start && ev.date <= w.after_end) {
            out.after.push_back({row, ev.readcode});
        } else {
            ++out.outside_windows;
        }
    }
    return out;
}

}  // namespace adrsig
