#include "adrsig/featmat.hpp"

#include <algorithm>
#include <numeric>

#include "adrsig/csv.hpp"
#include "adrsig/error.hpp"
#include "adrsig/rng.hpp"

namespace adrsig {

EventVocabulary::EventVocabulary(std::vector<std::string> keys, LevelMode mode)
    : keys_(std::move(keys)), mode_(mode) {
    std::sort(keys_.begin(), keys_.end());
    keys_.erase(std::unique(keys_.begin(), keys_.end()), keys_.end());
    index_.reserve(keys_.size());
    for (std::size_t i = 0; i < keys_.size(); ++i) index_.emplace(keys_[i], i);
}

std::optional<std::size_t> EventVocabulary::find(std::string_view key) const {
    auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    return it->second;
}

std::size_t EventVocabulary::index(std::string_view key) const {
    if (auto i = find(key)) return *i;
    throw Error(Errc::UnknownKey, "key '" + std::string(key) + "' is not in the vocabulary");
}

VocabularyPtr build_vocabulary(std::span<const AssignedEvent> before, std::span<const AssignedEvent> after,
                               LevelMode mode) {
    std::vector<std::string> keys;
    keys.reserve(before.size() + after.size());
    for (const auto& ev : before) keys.push_back(aggregation_key(ev.readcode, mode));
    for (const auto& ev : after) keys.push_back(aggregation_key(ev.readcode, mode));
    return std::make_shared<const EventVocabulary>(std::move(keys), mode);
}

PatientFeatureMatrix::PatientFeatureMatrix(VocabularyPtr vocab, std::vector<std::size_t> row_ptr,
                                           std::vector<std::uint32_t> cols)
    : vocab_(std::move(vocab)), row_ptr_(std::move(row_ptr)), cols_(std::move(cols)) {
    if (row_ptr_.empty()) row_ptr_.push_back(0);
}

bool PatientFeatureMatrix::at(std::size_t r, std::size_t c) const {
    auto cells = row(r);
    return std::binary_search(cells.begin(), cells.end(), static_cast<std::uint32_t>(c));
}

PatientFeatureMatrix build_patient_matrix(std::span<const AssignedEvent> assignments, const Cohort& cohort,
                                          const VocabularyPtr& vocab) {
    const std::size_t n = cohort.size();
    std::vector<std::vector<std::uint32_t>> per_row(n);
    for (const auto& ev : assignments) {
        if (ev.patient_row >= n) {
            throw Error(Errc::UnknownPatient, "assignment refers to row " + std::to_string(ev.patient_row) +
                                                  " of a " + std::to_string(n) + "-patient cohort");
        }
        per_row[ev.patient_row].push_back(
            static_cast<std::uint32_t>(vocab->index(aggregation_key(ev.readcode, vocab->mode()))));
    }
    std::vector<std::size_t> row_ptr(n + 1, 0);
    std::vector<std::uint32_t> cols;
    for (std::size_t r = 0; r < n; ++r) {
        auto& cells = per_row[r];
        std::sort(cells.begin(), cells.end());
        cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
        cols.insert(cols.end(), cells.begin(), cells.end());
        row_ptr[r + 1] = cols.size();
        std::vector<std::uint32_t>().swap(cells);
    }
    return PatientFeatureMatrix(vocab, std::move(row_ptr), std::move(cols));
}

GroupedFeatureMatrix::GroupedFeatureMatrix(VocabularyPtr vocab, std::size_t groups, std::size_t group_size,
                                           std::size_t population, std::vector<std::uint32_t> counts)
    : vocab_(std::move(vocab)),
      groups_(groups),
      group_size_(group_size),
      population_(population),
      counts_(std::move(counts)) {}

std::uint64_t GroupedFeatureMatrix::column_sum(std::size_t c) const {
    auto col = column(c);
    return std::accumulate(col.begin(), col.end(), std::uint64_t{0});
}

GroupedFeatureMatrix group_patients(const PatientFeatureMatrix& m, std::size_t group_size,
                                    std::optional<std::uint64_t> shuffle_seed) {
    if (group_size == 0) throw Error(Errc::GroupSizeZero, "group size must be >= 1");
    const std::size_t n = m.rows();
    const std::size_t groups = n / group_size;

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    if (shuffle_seed) {
        Rng rng(*shuffle_seed);
        for (std::size_t i = n; i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
    }

    std::vector<std::uint32_t> counts(groups * m.cols(), 0);
    for (std::size_t pos = 0; pos < groups * group_size; ++pos) {
        const std::size_t g = pos / group_size;
        for (std::uint32_t c : m.row(order[pos])) ++counts[c * groups + g];
    }
    return GroupedFeatureMatrix(m.vocabulary(), groups, group_size, n, std::move(counts));
}

ColumnTotals column_totals(const GroupedFeatureMatrix& before, const GroupedFeatureMatrix& after,
                           std::string_view key) {
    if (before.groups() != after.groups() ||
        (before.vocabulary() != after.vocabulary() && *before.vocabulary() != *after.vocabulary())) {
        throw Error(Errc::VocabularyMismatch, "before/after matrices differ in vocabulary or group count");
    }
    const std::size_t c = before.vocabulary()->index(key);
    return {before.column_sum(c), after.column_sum(c)};
}

void write_triplets(std::ostream& out, const GroupedFeatureMatrix& m) {
    out << "group,key,count\n";
    const auto& vocab = *m.vocabulary();
    for (std::size_t g = 0; g < m.groups(); ++g) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (auto v = m.at(g, c)) out << g << ',' << csv::escape(vocab.key(c)) << ',' << v << '\n';
        }
    }
}

}  // namespace adrsig
