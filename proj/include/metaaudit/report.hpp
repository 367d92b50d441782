#pragma once

#include <optional>
#include <string>
#include <vector>

#include "metaaudit/def_model.hpp"
#include "metaaudit/space_audit.hpp"
#include "metaaudit/stat_engine.hpp"

namespace metaaudit {

struct ZTableRow {
    std::string study_id;
    std::string endpoint; // "primary" or "secondary"
    EffectEstimate effect;
    ZTestResult result;
};

// The z-table requires meta_effect, ffq_items and tcovars on every study;
// throws DomainError naming the offending field otherwise. Secondary
// endpoint rows are appended after the per-study rows.
std::vector<ZTableRow> build_ztable(const MetaRecord& meta);

enum class AuditSource { abstract_only, text_only, both };

struct AuditOptions {
    AuditSource source = AuditSource::both;
    std::optional<std::string> timestamp; // RFC 3339 UTC; generated when unset
    bool with_order_stats = false;
    GateConfig gate;
};

struct AuditReport {
    std::string meta_id;
    std::string generated_at;
    std::optional<MetaVerdict> abstract_verdict;
    std::optional<MetaVerdict> text_verdict;
    std::vector<ZTableRow> ztable;
    std::vector<TableDiscrepancy> discrepancies;
    std::vector<OrderStatRow> order_stats; // empty unless requested
    std::vector<std::string> notes;

    bool unreliable() const {
        return (abstract_verdict && abstract_verdict->meta_unreliable) ||
               (text_verdict && text_verdict->meta_unreliable);
    }
};

AuditReport build_audit_report(const MetaRecord& meta, const AuditOptions& options);

std::string report_to_json(const AuditReport& report);
std::string report_to_text(const AuditReport& report, bool color = false);

std::string ztable_to_json(const std::vector<ZTableRow>& rows);
std::string ztable_to_text(const std::vector<ZTableRow>& rows);
std::string ztable_to_csv(const std::vector<ZTableRow>& rows);

// RFC 3339 UTC timestamp for "now"; reports accept injected values so runs
// can be reproduced byte for byte.
std::string current_timestamp_utc();
bool is_rfc3339_utc(const std::string& ts);

} // namespace metaaudit
