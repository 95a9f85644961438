#pragma once

#include <cstddef>
#include <istream>
#include <string>
#include <string_view>
#include <vector>

#include "adrsig/date.hpp"
#include "adrsig/readcode.hpp"

namespace adrsig {

struct PatientRecord {
    std::string patient_id;
};

struct PrescriptionRecord {
    std::string patient_id;
    std::string drug_code;
    Date date;
};

struct EventRecord {
    std::string patient_id;
    ReadCode readcode;
    Date date;
};

// Row accounting for one loaded table:
// data_rows == parsed + filtered + duplicates.
struct LoadStats {
    std::size_t data_rows = 0;
    std::size_t parsed = 0;
    std::size_t filtered = 0;    // rows for other drugs
    std::size_t duplicates = 0;  // repeated patient ids
};

template <class Record>
struct Loaded {
    std::vector<Record> records;
    LoadStats stats;
};

// Header `patient_id`. Order-preserving; duplicate ids are dropped and counted.
Loaded<PatientRecord> load_patients(std::istream& in);

// Header `patient_id,drug_code,date`. Keeps rows whose drug_code equals
// `drug_filter` exactly, sorted by (patient_id, date).
Loaded<PrescriptionRecord> load_prescriptions(std::istream& in, std::string_view drug_filter);

// Header `patient_id,readcode,date`. All rows are kept, including those of
// patients missing from the patients table.
Loaded<EventRecord> load_events(std::istream& in);

}  // namespace adrsig
