#include "metaaudit/report.hpp"

#include <chrono>
#include <cstdio>
#include <ctime>

#include <json.hpp>

#include "metaaudit/errors.hpp"

namespace metaaudit {

using json = nlohmann::ordered_json;

std::vector<ZTableRow> build_ztable(const MetaRecord& meta) {
    std::vector<ZTableRow> rows;
    std::vector<ZTableRow> secondary;
    for (const auto& s : meta.studies) {
        if (!s.meta_effect)
            throw DomainError("study '" + s.id + "' lacks meta_effect, cannot build the z-table");
        ExactInt factor =
            bonferroni_factor(s.ffq_items, static_cast<std::uint32_t>(s.tcovars));
        rows.push_back({s.id, "primary", *s.meta_effect, z_test(*s.meta_effect, factor)});
        if (s.meta_effect_alt)
            secondary.push_back(
                {s.id, "secondary", *s.meta_effect_alt, z_test(*s.meta_effect_alt, factor)});
    }
    rows.insert(rows.end(), secondary.begin(), secondary.end());
    return rows;
}

std::string current_timestamp_utc() {
    auto now = std::chrono::system_clock::now();
    std::time_t t = std::chrono::system_clock::to_time_t(now);
    std::tm tm{};
    gmtime_r(&t, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

bool is_rfc3339_utc(const std::string& ts) {
    if (ts.size() != 20) return false;
    auto digit = [&](std::size_t i) { return ts[i] >= '0' && ts[i] <= '9'; };
    for (std::size_t i : {0u, 1u, 2u, 3u, 5u, 6u, 8u, 9u, 11u, 12u, 14u, 15u, 17u, 18u})
        if (!digit(i)) return false;
    return ts[4] == '-' && ts[7] == '-' && ts[10] == 'T' && ts[13] == ':' && ts[16] == ':' &&
           ts[19] == 'Z';
}

AuditReport build_audit_report(const MetaRecord& meta, const AuditOptions& options) {
    AuditReport report;
    report.meta_id = meta.id;
    if (options.timestamp) {
        if (!is_rfc3339_utc(*options.timestamp))
            throw DomainError("timestamp must be RFC 3339 UTC, e.g. 2026-01-02T03:04:05Z");
        report.generated_at = *options.timestamp;
    } else {
        report.generated_at = current_timestamp_utc();
    }

    if (options.source != AuditSource::text_only)
        report.abstract_verdict = gate_meta(meta, CountSource::abstract_counts, options.gate);
    if (options.source != AuditSource::abstract_only)
        report.text_verdict = gate_meta(meta, CountSource::text_counts, options.gate);

    bool all_effects = true;
    for (const auto& s : meta.studies)
        if (!s.meta_effect) all_effects = false;
    if (all_effects) report.ztable = build_ztable(meta);

    report.discrepancies = audit_reported_tables(meta);

    if (options.with_order_stats) {
        auto ns = table5_default_ns();
        report.order_stats = order_stat_table(ns);
    }

    std::uint64_t adjusted = 0;
    for (const auto& s : meta.studies)
        if (s.multiplicity_adjusted) ++adjusted;
    report.notes.push_back(std::to_string(adjusted) + " of " +
                           std::to_string(meta.studies.size()) +
                           " studies report adjusting for multiple testing.");
    if (!report.discrepancies.empty()) {
        std::uint64_t bad = 0;
        for (const auto& d : report.discrepancies)
            if (!d.consistent) ++bad;
        report.notes.push_back("Recomputed search spaces disagree with " + std::to_string(bad) +
                               " of " + std::to_string(report.discrepancies.size()) +
                               " reported table cells.");
    }
    if (!report.ztable.empty()) {
        std::uint64_t significant = 0;
        for (const auto& row : report.ztable)
            if (row.result.adj_p < 0.05) ++significant;
        report.notes.push_back(std::to_string(significant) + " of " +
                               std::to_string(report.ztable.size()) +
                               " z-table rows stay below 0.05 after adjustment.");
    }
    return report;
}

namespace {

json verdict_json(const MetaVerdict& verdict, CountSource source, const MetaRecord* meta) {
    json section;
    section["per_study"] = json::array();
    for (const auto& v : verdict.per_study) {
        const StudyRecord* rec = meta ? meta->find(v.study_id) : nullptr;
        const CountSet* counts = nullptr;
        if (rec)
            counts = source == CountSource::abstract_counts ? &rec->abstract_counts
                                                            : &rec->text_counts;
        json entry;
        entry["id"] = v.study_id;
        entry["source"] = count_source_name(source);
        if (counts) {
            entry["outcomes"] = counts->outcomes;
            entry["predictors"] = counts->predictors;
            entry["covariates"] = counts->covariates;
        }
        entry["space"] = v.space.value.str();
        entry["op_product"] = v.op_product.fits_u64() ? json(v.op_product.as_u64())
                                                      : json(v.op_product.str());
        entry["unreliable"] = v.unreliable;
        entry["triggered_rules"] = json::array();
        for (GateRule r : v.triggered_rules)
            entry["triggered_rules"].push_back(gate_rule_name(r));
        section["per_study"].push_back(std::move(entry));
    }
    section["meta"] = {{"unreliable_fraction", verdict.fraction_str()},
                       {"meta_unreliable", verdict.meta_unreliable}};
    return section;
}

json report_json_doc(const AuditReport& report, const MetaRecord* meta) {
    json doc;
    doc["meta_id"] = report.meta_id;
    doc["generated_at"] = report.generated_at;
    doc["space_section"] = json::object();
    if (report.abstract_verdict)
        doc["space_section"]["abstract"] =
            verdict_json(*report.abstract_verdict, CountSource::abstract_counts, meta);
    if (report.text_verdict)
        doc["space_section"]["text"] =
            verdict_json(*report.text_verdict, CountSource::text_counts, meta);
    doc["ztest_section"] = json::array();
    for (const auto& row : report.ztable) {
        doc["ztest_section"].push_back({{"id", row.study_id},
                                        {"endpoint", row.endpoint},
                                        {"rr", row.effect.rr},
                                        {"cl_low", row.effect.cl_low},
                                        {"cl_high", row.effect.cl_high},
                                        {"beta", row.result.beta},
                                        {"beta_se", row.result.beta_se},
                                        {"z", row.result.z},
                                        {"p_one_sided", row.result.p_one_sided},
                                        {"adj_factor", row.result.adj_factor.str()},
                                        {"adj_p", row.result.adj_p}});
    }
    doc["discrepancy_section"] = json::array();
    for (const auto& d : report.discrepancies) {
        doc["discrepancy_section"].push_back({{"id", d.study_id},
                                              {"source", count_source_name(d.source)},
                                              {"reported", d.reported.str()},
                                              {"recomputed", d.recomputed.str()},
                                              {"consistent", d.consistent}});
    }
    if (!report.order_stats.empty()) {
        doc["order_stat_section"] = json::array();
        for (const auto& row : report.order_stats)
            doc["order_stat_section"].push_back(
                {{"n", row.n}, {"expected_max", row.expected_max}, {"p_two_sided", row.p_two_sided}});
    }
    doc["notes"] = report.notes;
    return doc;
}

} // namespace

std::string report_to_json(const AuditReport& report) {
    return report_json_doc(report, nullptr).dump(2) + "\n";
}

namespace {

// AuditReport does not keep the source record; the JSON with per-study
// counts is produced by the CLI which still holds the MetaRecord.
std::string paint(const std::string& word, const char* code, bool color) {
    if (!color) return word;
    return std::string("\x1b[") + code + "m" + word + "\x1b[0m";
}

void append_verdict_text(std::string& out, const MetaVerdict& verdict, CountSource source,
                         bool color) {
    out += std::string("  ") + count_source_name(source) + " counts:\n";
    char buf[160];
    for (const auto& v : verdict.per_study) {
        std::snprintf(buf, sizeof buf, "    %-12s space %-14s op %-8s", v.study_id.c_str(),
                      v.space.value.str().c_str(), v.op_product.str().c_str());
        out += buf;
        out += v.unreliable ? paint("UNRELIABLE", "31", color) : paint("reliable", "32", color);
        for (GateRule r : v.triggered_rules)
            out += std::string(" ") + gate_rule_name(r);
        out += "\n";
    }
    out += "    meta verdict: " + verdict.fraction_str() + " unreliable -> " +
           (verdict.meta_unreliable ? paint("UNRELIABLE", "31", color)
                                    : paint("reliable", "32", color)) +
           "\n";
}

} // namespace

std::string report_to_text(const AuditReport& report, bool color) {
    std::string out;
    out += "audit report: " + report.meta_id + "\n";
    out += "generated at: " + report.generated_at + "\n\n";
    out += "search-space verdicts\n";
    if (report.abstract_verdict)
        append_verdict_text(out, *report.abstract_verdict, CountSource::abstract_counts, color);
    if (report.text_verdict)
        append_verdict_text(out, *report.text_verdict, CountSource::text_counts, color);

    if (!report.ztable.empty()) {
        out += "\nz-tests of the meta-analysis rows\n";
        out += ztable_to_text(report.ztable);
    }

    if (!report.discrepancies.empty()) {
        out += "\nreported-vs-recomputed space sizes\n";
        char buf[200];
        for (const auto& d : report.discrepancies) {
            std::snprintf(buf, sizeof buf, "  %-12s %-8s reported %-14s recomputed %-14s %s\n",
                          d.study_id.c_str(), count_source_name(d.source), d.reported.str().c_str(),
                          d.recomputed.str().c_str(),
                          d.consistent ? "consistent" : "INCONSISTENT");
            out += buf;
        }
    }

    if (!report.order_stats.empty()) {
        out += "\nexpected maxima of iid standard normal samples\n";
        char buf[96];
        for (const auto& row : report.order_stats) {
            std::snprintf(buf, sizeof buf, "  n %-5d E[max] %8.5f  two-sided p %8.5f\n", row.n,
                          row.expected_max, row.p_two_sided);
            out += buf;
        }
    }

    out += "\nnotes\n";
    for (const auto& note : report.notes) out += "  - " + note + "\n";
    return out;
}

std::string ztable_to_text(const std::vector<ZTableRow>& rows) {
    std::string out =
        "  id           endpoint   RR    CLL   CLH   Beta    BetaSE  Z       Prob    AdjFactor  AdjP\n";
    char buf[240];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf,
                      "  %-12s %-9s  %-5.2f %-5.2f %-5.2f %-7.3f %-7.3f %-7.3f %-7.4f %-10s %.3f\n",
                      r.study_id.c_str(), r.endpoint.c_str(), r.effect.rr, r.effect.cl_low,
                      r.effect.cl_high, r.result.beta, r.result.beta_se, r.result.z,
                      r.result.p_one_sided, r.result.adj_factor.str().c_str(), r.result.adj_p);
        out += buf;
    }
    std::uint64_t significant = 0;
    for (const auto& r : rows)
        if (r.result.adj_p < 0.05) ++significant;
    out += "  rows with adjusted p < 0.05: " + std::to_string(significant) + " of " +
           std::to_string(rows.size()) + "\n";
    return out;
}

std::string ztable_to_json(const std::vector<ZTableRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows) {
        arr.push_back({{"id", r.study_id},
                       {"endpoint", r.endpoint},
                       {"rr", r.effect.rr},
                       {"cl_low", r.effect.cl_low},
                       {"cl_high", r.effect.cl_high},
                       {"beta", r.result.beta},
                       {"beta_se", r.result.beta_se},
                       {"z", r.result.z},
                       {"p_one_sided", r.result.p_one_sided},
                       {"adj_factor", r.result.adj_factor.str()},
                       {"adj_p", r.result.adj_p}});
    }
    return arr.dump(2) + "\n";
}

std::string ztable_to_csv(const std::vector<ZTableRow>& rows) {
    std::string out = "id,endpoint,rr,cl_low,cl_high,beta,beta_se,z,p_one_sided,adj_factor,adj_p\n";
    char buf[240];
    for (const auto& r : rows) {
        std::snprintf(buf, sizeof buf, "%s,%s,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g,%s,%.10g\n",
                      r.study_id.c_str(), r.endpoint.c_str(), r.effect.rr, r.effect.cl_low,
                      r.effect.cl_high, r.result.beta, r.result.beta_se, r.result.z,
                      r.result.p_one_sided, r.result.adj_factor.str().c_str(), r.result.adj_p);
        out += buf;
    }
    return out;
}

} // namespace metaaudit
