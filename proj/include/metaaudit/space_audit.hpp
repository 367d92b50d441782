#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "metaaudit/def_model.hpp"
#include "metaaudit/exact_int.hpp"

namespace metaaudit {

enum class CountSource { abstract_counts, text_counts };

const char* count_source_name(CountSource s);

// Count of distinct outcome x predictor x covariate-subset analyses.
struct SpaceSize {
    ExactInt value;
    CountSource source = CountSource::text_counts;
};

enum class GateRule { SPACE_GT_100, OP_GT_10 };

const char* gate_rule_name(GateRule r);

// Thresholds of the reliability gate. The defaults are the protocol's
// values; they are configurable so other audits can tune them.
struct GateConfig {
    ExactInt space_limit{100};   // study unreliable when space > limit
    ExactInt op_limit{10};       // ... or when outcomes x predictors > limit
    std::uint64_t meta_num = 1;  // meta unreliable when unreliable fraction
    std::uint64_t meta_den = 4;  // strictly exceeds meta_num/meta_den
};

struct ReliabilityVerdict {
    std::string study_id;
    CountSet counts; // the counts the verdict was computed from
    SpaceSize space;
    ExactInt op_product;
    bool unreliable = false;
    std::vector<GateRule> triggered_rules;
};

struct MetaVerdict {
    std::vector<ReliabilityVerdict> per_study;
    std::uint64_t unreliable_count = 0;
    std::uint64_t study_count = 0;
    bool meta_unreliable = false;

    std::string fraction_str() const {
        return std::to_string(unreliable_count) + "/" + std::to_string(study_count);
    }
};

// Printed vs recomputed space size for one (study, source) cell.
struct TableDiscrepancy {
    std::string study_id;
    CountSource source = CountSource::abstract_counts;
    ExactInt reported;
    ExactInt recomputed;
    bool consistent = false;
};

// outcomes x predictors x 2^covariates, exact. Throws DomainError for zero
// outcomes/predictors and OverflowError past the 128-bit limit.
SpaceSize compute_search_space(const CountSet& counts,
                               CountSource source = CountSource::text_counts);

ReliabilityVerdict gate_study(const StudyRecord& record, CountSource source,
                              const GateConfig& config = {});

// Throws DomainError on an empty study list. Exact rational comparison:
// unreliable_count * meta_den > meta_num * study_count.
MetaVerdict gate_meta(const MetaRecord& meta, CountSource source,
                      const GateConfig& config = {});

// Re-derives every annotated printed cell with the formula; cells without a
// reported annotation are skipped.
std::vector<TableDiscrepancy> audit_reported_tables(const MetaRecord& meta);

} // namespace metaaudit
