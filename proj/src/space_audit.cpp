#include "metaaudit/space_audit.hpp"

#include "metaaudit/errors.hpp"

namespace metaaudit {

const char* count_source_name(CountSource s) {
    return s == CountSource::abstract_counts ? "abstract" : "text";
}

const char* gate_rule_name(GateRule r) {
    return r == GateRule::SPACE_GT_100 ? "SPACE_GT_100" : "OP_GT_10";
}

namespace {

const CountSet& select_counts(const StudyRecord& record, CountSource source) {
    return source == CountSource::abstract_counts ? record.abstract_counts
                                                  : record.text_counts;
}

} // namespace

SpaceSize compute_search_space(const CountSet& counts, CountSource source) {
    if (counts.outcomes == 0) throw DomainError("search space undefined for zero outcomes");
    if (counts.predictors == 0) throw DomainError("search space undefined for zero predictors");
    if (counts.covariates > UINT32_MAX)
        throw OverflowError("covariate count exceeds the representation limit");
    ExactInt value = ExactInt(counts.outcomes)
                         .mul(ExactInt(counts.predictors))
                         .mul(ExactInt::pow2(static_cast<std::uint32_t>(counts.covariates)));
    return SpaceSize{value, source};
}

ReliabilityVerdict gate_study(const StudyRecord& record, CountSource source,
                              const GateConfig& config) {
    const CountSet& counts = select_counts(record, source);
    ReliabilityVerdict v;
    v.study_id = record.id;
    v.space = compute_search_space(counts, source);
    v.op_product = ExactInt(counts.outcomes).mul(ExactInt(counts.predictors));
    if (v.space.value > config.space_limit) v.triggered_rules.push_back(GateRule::SPACE_GT_100);
    if (v.op_product > config.op_limit) v.triggered_rules.push_back(GateRule::OP_GT_10);
    v.unreliable = !v.triggered_rules.empty();
    return v;
}

MetaVerdict gate_meta(const MetaRecord& meta, CountSource source, const GateConfig& config) {
    if (meta.studies.empty()) throw DomainError("cannot gate a meta-analysis with no studies");
    MetaVerdict out;
    out.study_count = meta.studies.size();
    for (const auto& s : meta.studies) {
        out.per_study.push_back(gate_study(s, source, config));
        if (out.per_study.back().unreliable) ++out.unreliable_count;
    }
    // strict "over num/den", evaluated exactly on integers
    out.meta_unreliable =
        static_cast<unsigned __int128>(out.unreliable_count) * config.meta_den >
        static_cast<unsigned __int128>(config.meta_num) * out.study_count;
    return out;
}

std::vector<TableDiscrepancy> audit_reported_tables(const MetaRecord& meta) {
    std::vector<TableDiscrepancy> out;
    auto audit_cell = [&](const StudyRecord& s, CountSource source,
                          const std::optional<std::uint64_t>& reported) {
        if (!reported) return;
        TableDiscrepancy d;
        d.study_id = s.id;
        d.source = source;
        d.reported = ExactInt(*reported);
        d.recomputed = compute_search_space(select_counts(s, source), source).value;
        d.consistent = d.reported == d.recomputed;
        out.push_back(std::move(d));
    };
    for (const auto& s : meta.studies) {
        audit_cell(s, CountSource::abstract_counts, s.reported_space_abstract);
        audit_cell(s, CountSource::text_counts, s.reported_space_text);
    }
    return out;
}

} // namespace metaaudit
