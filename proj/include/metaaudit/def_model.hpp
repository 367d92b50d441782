#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace metaaudit {

// Relative risk (or hazard ratio) with its confidence limits.
struct EffectEstimate {
    double rr = 0.0;
    double cl_low = 0.0;
    double cl_high = 0.0;
    double level = 0.95;

    bool operator==(const EffectEstimate&) const = default;
};

// Reported p-values come both as exact numbers and as bounds ("<0.001");
// the two are kept distinct instead of coercing bounds to numbers.
struct PValueBound {
    enum class Kind { exact, less_than };
    Kind kind = Kind::exact;
    double value = 1.0; // in (0,1]

    bool operator==(const PValueBound&) const = default;
};

struct SampleGroup {
    std::string label;
    std::uint64_t size = 0; // subjects, >= 1

    bool operator==(const SampleGroup&) const = default;
};

// Outcome / predictor / covariate counts extracted from one location
// (abstract or full text) of a primary paper.
struct CountSet {
    std::uint64_t outcomes = 0;
    std::uint64_t predictors = 0;
    std::uint64_t covariates = 0;

    bool operator==(const CountSet&) const = default;
};

enum class Funding { government, non_government, mixed, unfunded, unknown };

// One primary study's extracted data-extraction-form fields.
struct StudyRecord {
    std::string id;
    std::string citation;
    std::string journal_year;
    std::uint64_t overall_n = 0;
    std::vector<SampleGroup> groups;
    CountSet abstract_counts;
    CountSet text_counts;
    std::uint64_t ffq_items = 0; // foods on the questionnaire, >= 1
    std::uint64_t tcovars = 0;   // covariate count per the meta-analysis table
    std::uint64_t n_groups = 0;  // predictor groupings used
    std::uint64_t n_tests = 0;   // reported p-values counted in the paper
    PValueBound smallest_p;
    EffectEstimate largest_effect;
    std::optional<EffectEstimate> meta_effect;     // row contributed to the meta-analysis
    std::optional<EffectEstimate> meta_effect_alt; // second endpoint row, if reported
    bool multiplicity_adjusted = false;
    Funding funding = Funding::unknown;
    // Space sizes as printed in the audited tables, kept verbatim for the
    // discrepancy audit (the printed numbers are data, not ground truth).
    std::optional<std::uint64_t> reported_space_abstract;
    std::optional<std::uint64_t> reported_space_text;

    bool operator==(const StudyRecord&) const = default;
};

struct MetaRecord {
    std::string id;
    std::string citation;
    std::vector<StudyRecord> studies; // non-empty, unique ids

    bool operator==(const MetaRecord&) const = default;

    const StudyRecord* find(const std::string& study_id) const;
};

enum class Severity { error, warning, info };

struct ValidationFinding {
    Severity severity = Severity::info;
    std::string code;    // e.g. "RR_OUTSIDE_CI"
    std::string field;   // field the finding is about
    std::string message;

    bool operator==(const ValidationFinding&) const = default;
};

// Strict DEF parser: unknown keys, missing required fields, type mismatches,
// duplicate ids and rejection-severity invariant violations all throw
// ParseError.
MetaRecord parse_def_file(const std::string& bytes);

std::string serialize_def(const MetaRecord& meta);

// Pure, deterministic; findings ordered by field name then code.
std::vector<ValidationFinding> validate_study(const StudyRecord& record);

// The ten-study extraction of the Malik et al. 2010 sugar-sweetened-beverage
// meta-analysis, transcribed verbatim including the internally inconsistent
// printed space sizes.
const MetaRecord& bundled_malik_dataset();

const char* funding_name(Funding f);
std::optional<Funding> funding_from_name(const std::string& name);

} // namespace metaaudit
