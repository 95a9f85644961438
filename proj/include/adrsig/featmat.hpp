#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "adrsig/cohort.hpp"
#include "adrsig/readcode.hpp"

namespace adrsig {

inline constexpr std::size_t kDefaultGroupSize = 100;

// Sorted distinct aggregation keys; a key's column is its position.
class EventVocabulary {
public:
    EventVocabulary(std::vector<std::string> keys, LevelMode mode);

    LevelMode mode() const noexcept { return mode_; }
    std::size_t size() const noexcept { return keys_.size(); }
    const std::vector<std::string>& keys() const noexcept { return keys_; }
    const std::string& key(std::size_t col) const { return keys_[col]; }

    std::optional<std::size_t> find(std::string_view key) const;
    // Throws Errc::UnknownKey.
    std::size_t index(std::string_view key) const;

    friend bool operator==(const EventVocabulary& a, const EventVocabulary& b) {
        return a.mode_ == b.mode_ && a.keys_ == b.keys_;
    }

private:
    std::vector<std::string> keys_;
    std::unordered_map<std::string_view, std::size_t> index_;
    LevelMode mode_;
};

using VocabularyPtr = std::shared_ptr<const EventVocabulary>;

// Union of the aggregation keys over both windows.
VocabularyPtr build_vocabulary(std::span<const AssignedEvent> before, std::span<const AssignedEvent> after,
                               LevelMode mode);

// Binary patients x keys matrix in compressed-row form; only ones are stored.
class PatientFeatureMatrix {
public:
    PatientFeatureMatrix(VocabularyPtr vocab, std::vector<std::size_t> row_ptr, std::vector<std::uint32_t> cols);

    std::size_t rows() const noexcept { return row_ptr_.size() - 1; }
    std::size_t cols() const noexcept { return vocab_->size(); }
    std::size_t nonzeros() const noexcept { return cols_.size(); }
    const VocabularyPtr& vocabulary() const noexcept { return vocab_; }

    // Sorted column indices set in `row`.
    std::span<const std::uint32_t> row(std::size_t r) const {
        return std::span<const std::uint32_t>(cols_).subspan(row_ptr_[r], row_ptr_[r + 1] - row_ptr_[r]);
    }
    bool at(std::size_t r, std::size_t c) const;

private:
    VocabularyPtr vocab_;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::uint32_t> cols_;
};

// Patient row p has a one in column e iff p has at least one assigned event
// with key e. Throws Errc::UnknownKey / Errc::UnknownPatient when the inputs
// do not match the vocabulary or cohort.
PatientFeatureMatrix build_patient_matrix(std::span<const AssignedEvent> assignments, const Cohort& cohort,
                                          const VocabularyPtr& vocab);

// Groups x keys patient counts, stored column-major.
class GroupedFeatureMatrix {
public:
    GroupedFeatureMatrix(VocabularyPtr vocab, std::size_t groups, std::size_t group_size, std::size_t population,
                         std::vector<std::uint32_t> counts);

    std::size_t groups() const noexcept { return groups_; }
    std::size_t cols() const noexcept { return vocab_->size(); }
    std::size_t group_size() const noexcept { return group_size_; }
    // Patients before grouping; population - groups * group_size were dropped.
    std::size_t population() const noexcept { return population_; }
    std::size_t dropped() const noexcept { return population_ - groups_ * group_size_; }
    const VocabularyPtr& vocabulary() const noexcept { return vocab_; }

    std::span<const std::uint32_t> column(std::size_t c) const {
        return std::span<const std::uint32_t>(counts_).subspan(c * groups_, groups_);
    }
    std::uint32_t at(std::size_t g, std::size_t c) const { return counts_[c * groups_ + g]; }
    std::uint64_t column_sum(std::size_t c) const;

private:
    VocabularyPtr vocab_;
    std::size_t groups_;
    std::size_t group_size_;
    std::size_t population_;
    std::vector<std::uint32_t> counts_;
};

// Sums consecutive blocks of `group_size` patient rows; the trailing
// remainder is dropped. With a shuffle seed, rows are permuted first by a
// seeded Fisher-Yates shuffle that depends only on (seed, rows).
// Throws Errc::GroupSizeZero.
GroupedFeatureMatrix group_patients(const PatientFeatureMatrix& m, std::size_t group_size = kDefaultGroupSize,
                                    std::optional<std::uint64_t> shuffle_seed = std::nullopt);

struct ColumnTotals {
    std::uint64_t before = 0;  // NB
    std::uint64_t after = 0;   // NA
};

// Throws Errc::VocabularyMismatch or Errc::UnknownKey.
ColumnTotals column_totals(const GroupedFeatureMatrix& before, const GroupedFeatureMatrix& after,
                           std::string_view key);

// Sparse `group,key,count` dump of the nonzero cells.
void write_triplets(std::ostream& out, const GroupedFeatureMatrix& m);

}  // namespace adrsig
