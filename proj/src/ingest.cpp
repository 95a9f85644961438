#include "adrsig/ingest.hpp"

#include <algorithm>
#include <unordered_set>

#include "adrsig/csv.hpp"
#include "adrsig/error.hpp"

namespace adrsig {

namespace {

csv::TableReader open_table(std::istream& in, std::string_view what) {
    csv::TableReader reader(in);
    if (reader.empty()) throw Error(Errc::MissingHeader, std::string(what) + " table has no header line");
    return reader;
}

const std::string& field(const std::vector<std::string>& fields, std::size_t col, std::string_view name,
                         std::size_t line) {
    if (col >= fields.size()) {
        throw Error(Errc::MalformedRow, "missing column '" + std::string(name) + "'", line);
    }
    if (fields[col].empty()) {
        throw Error(Errc::MalformedRow, "empty value in column '" + std::string(name) + "'", line);
    }
    return fields[col];
}

Date parse_date(const std::string& text, std::size_t line) {
    auto d = Date::parse(text);
    if (!d) throw Error(Errc::BadDate, "invalid date '" + text + "' (expected YYYY-MM-DD)", line);
    return *d;
}

}  // namespace

Loaded<PatientRecord> load_patients(std::istream& in) {
    auto reader = open_table(in, "patients");
    const std::size_t id_col = reader.require_column("patient_id");

    Loaded<PatientRecord> out;
    std::unordered_set<std::string> seen;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        ++out.stats.data_rows;
        const std::string& id = field(fields, id_col, "patient_id", reader.line());
        if (!seen.insert(id).second) {
            ++out.stats.duplicates;
            continue;
        }
        out.records.push_back({id});
        ++out.stats.parsed;
    }
    return out;
}

Loaded<PrescriptionRecord> load_prescriptions(std::istream& in, std::string_view drug_filter) {
    if (drug_filter.empty()) throw Error(Errc::InvalidArgument, "drug filter must be non-empty");
    auto reader = open_table(in, "prescriptions");
    const std::size_t id_col = reader.require_column("patient_id");
    const std::size_t drug_col = reader.require_column("drug_code");
    const std::size_t date_col = reader.require_column("date");

    Loaded<PrescriptionRecord> out;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        ++out.stats.data_rows;
        const std::size_t line = reader.line();
        const std::string& id = field(fields, id_col, "patient_id", line);
        const std::string& drug = field(fields, drug_col, "drug_code", line);
        Date date = parse_date(field(fields, date_col, "date", line), line);
        if (drug != drug_filter) {
            ++out.stats.filtered;
            continue;
        }
        out.records.push_back({id, drug, date});
        ++out.stats.parsed;
    }
    std::stable_sort(out.records.begin(), out.records.end(), [](const auto& a, const auto& b) {
        if (a.patient_id != b.patient_id) return a.patient_id < b.patient_id;
        return a.date < b.date;
    });
    return out;
}

Loaded<EventRecord> load_events(std::istream& in) {
    auto reader = open_table(in, "events");
    const std::size_t id_col = reader.require_column("patient_id");
    const std::size_t code_col = reader.require_column("readcode");
    const std::size_t date_col = reader.require_column("date");

    Loaded<EventRecord> out;
    std::vector<std::string> fields;
    while (reader.next(fields)) {
        ++out.stats.data_rows;
        const std::size_t line = reader.line();
        const std::string& id = field(fields, id_col, "patient_id", line);
        const std::string& token = field(fields, code_col, "readcode", line);
        Date date = parse_date(field(fields, date_col, "date", line), line);
        try {
            out.records.push_back({id, ReadCode::parse(token), date});
        } catch (const Error& e) {
            throw Error(Errc::MalformedRow, e.what(), line);
        }
        ++out.stats.parsed;
    }
    return out;
}

}  // namespace adrsig
