#include "metaaudit/def_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <unordered_set>

#include <json.hpp>

#include "metaaudit/errors.hpp"

namespace metaaudit {

using json = nlohmann::ordered_json;

const StudyRecord* MetaRecord::find(const std::string& study_id) const {
    for (const auto& s : studies)
        if (s.id == study_id) return &s;
    return nullptr;
}

const char* funding_name(Funding f) {
    switch (f) {
        case Funding::government: return "government";
        case Funding::non_government: return "non_government";
        case Funding::mixed: return "mixed";
        case Funding::unfunded: return "unfunded";
        case Funding::unknown: return "unknown";
    }
    return "unknown";
}

std::optional<Funding> funding_from_name(const std::string& name) {
    for (Funding f : {Funding::government, Funding::non_government, Funding::mixed,
                      Funding::unfunded, Funding::unknown})
        if (name == funding_name(f)) return f;
    return std::nullopt;
}

namespace {

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw ParseError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                const std::set<std::string>& allowed) {
    if (!obj.is_object()) fail(where, "expected an object");
    for (const auto& [key, _] : obj.items())
        if (!allowed.contains(key)) fail(where, "unknown key '" + key + "'");
}

const json& require(const json& obj, const std::string& where, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end()) fail(where, "missing required field '" + key + "'");
    return *it;
}

std::string get_string(const json& obj, const std::string& where, const std::string& key) {
    const json& v = require(obj, where, key);
    if (!v.is_string()) fail(where, "field '" + key + "' must be a string");
    return v.get<std::string>();
}

std::uint64_t get_uint(const json& obj, const std::string& where, const std::string& key) {
    const json& v = require(obj, where, key);
    if (!v.is_number_unsigned()) fail(where, "field '" + key + "' must be a non-negative integer");
    return v.get<std::uint64_t>();
}

double get_real(const json& obj, const std::string& where, const std::string& key) {
    const json& v = require(obj, where, key);
    if (!v.is_number()) fail(where, "field '" + key + "' must be a number");
    return v.get<double>();
}

bool get_bool(const json& obj, const std::string& where, const std::string& key) {
    const json& v = require(obj, where, key);
    if (!v.is_boolean()) fail(where, "field '" + key + "' must be a boolean");
    return v.get<bool>();
}

EffectEstimate parse_effect(const json& obj, const std::string& where) {
    check_keys(obj, where, {"rr", "cl_low", "cl_high", "level"});
    EffectEstimate e;
    e.rr = get_real(obj, where, "rr");
    e.cl_low = get_real(obj, where, "cl_low");
    e.cl_high = get_real(obj, where, "cl_high");
    e.level = obj.contains("level") ? get_real(obj, where, "level") : 0.95;
    if (!(e.rr > 0.0)) fail(where, "rr must be positive");
    if (!(e.cl_low > 0.0)) fail(where, "cl_low must be positive");
    if (!(e.cl_high > e.cl_low)) fail(where, "inverted interval: cl_high must exceed cl_low");
    if (!(e.level > 0.0 && e.level < 1.0)) fail(where, "level must lie in (0,1)");
    return e;
}

PValueBound parse_pbound(const json& obj, const std::string& where) {
    check_keys(obj, where, {"kind", "value"});
    PValueBound b;
    std::string kind = get_string(obj, where, "kind");
    if (kind == "exact") b.kind = PValueBound::Kind::exact;
    else if (kind == "less_than") b.kind = PValueBound::Kind::less_than;
    else fail(where, "kind must be 'exact' or 'less_than'");
    b.value = get_real(obj, where, "value");
    if (!(b.value > 0.0 && b.value <= 1.0)) fail(where, "p-value must lie in (0,1]");
    return b;
}

CountSet parse_counts(const json& obj, const std::string& where) {
    check_keys(obj, where, {"outcomes", "predictors", "covariates"});
    CountSet c;
    c.outcomes = get_uint(obj, where, "outcomes");
    c.predictors = get_uint(obj, where, "predictors");
    c.covariates = get_uint(obj, where, "covariates");
    return c;
}

StudyRecord parse_study(const json& obj, const std::string& where) {
    check_keys(obj, where,
               {"id", "citation", "journal_year", "overall_n", "groups", "abstract_counts",
                "text_counts", "ffq_items", "tcovars", "n_groups", "n_tests", "smallest_p",
                "largest_effect", "meta_effect", "meta_effect_alt", "multiplicity_adjusted",
                "funding", "reported_space_abstract", "reported_space_text"});
    StudyRecord s;
    s.id = get_string(obj, where, "id");
    s.citation = get_string(obj, where, "citation");
    s.journal_year = get_string(obj, where, "journal_year");
    s.overall_n = get_uint(obj, where, "overall_n");
    if (s.overall_n == 0) fail(where, "overall_n must be positive");

    const json& groups = require(obj, where, "groups");
    if (!groups.is_array()) fail(where, "groups must be an array");
    for (const auto& g : groups) {
        check_keys(g, where + ".groups", {"label", "size"});
        SampleGroup sg;
        sg.label = get_string(g, where + ".groups", "label");
        sg.size = get_uint(g, where + ".groups", "size");
        if (sg.size == 0) fail(where, "non-positive sample size in group '" + sg.label + "'");
        s.groups.push_back(std::move(sg));
    }
    for (const auto& g : s.groups)
        if (g.size > s.overall_n)
            fail(where, "group '" + g.label + "' exceeds overall_n");

    s.abstract_counts = parse_counts(require(obj, where, "abstract_counts"), where + ".abstract_counts");
    s.text_counts = parse_counts(require(obj, where, "text_counts"), where + ".text_counts");
    s.ffq_items = get_uint(obj, where, "ffq_items");
    if (s.ffq_items == 0) fail(where, "ffq_items must be positive");
    s.tcovars = get_uint(obj, where, "tcovars");
    s.n_groups = get_uint(obj, where, "n_groups");
    if (s.n_groups == 0) fail(where, "n_groups must be positive");
    s.n_tests = get_uint(obj, where, "n_tests");
    if (s.n_tests == 0) fail(where, "n_tests must be positive");
    s.smallest_p = parse_pbound(require(obj, where, "smallest_p"), where + ".smallest_p");
    s.largest_effect = parse_effect(require(obj, where, "largest_effect"), where + ".largest_effect");
    if (obj.contains("meta_effect"))
        s.meta_effect = parse_effect(obj["meta_effect"], where + ".meta_effect");
    if (obj.contains("meta_effect_alt"))
        s.meta_effect_alt = parse_effect(obj["meta_effect_alt"], where + ".meta_effect_alt");
    s.multiplicity_adjusted = get_bool(obj, where, "multiplicity_adjusted");
    std::string funding = get_string(obj, where, "funding");
    auto f = funding_from_name(funding);
    if (!f) fail(where, "unknown funding value '" + funding + "'");
    s.funding = *f;
    if (obj.contains("reported_space_abstract"))
        s.reported_space_abstract = get_uint(obj, where, "reported_space_abstract");
    if (obj.contains("reported_space_text"))
        s.reported_space_text = get_uint(obj, where, "reported_space_text");
    return s;
}

json effect_json(const EffectEstimate& e) {
    return json{{"rr", e.rr}, {"cl_low", e.cl_low}, {"cl_high", e.cl_high}, {"level", e.level}};
}

json counts_json(const CountSet& c) {
    return json{{"outcomes", c.outcomes}, {"predictors", c.predictors}, {"covariates", c.covariates}};
}

} // namespace

MetaRecord parse_def_file(const std::string& bytes) {
    json doc = json::parse(bytes, nullptr, false);
    if (doc.is_discarded()) throw ParseError("malformed JSON document");
    check_keys(doc, "document", {"id", "citation", "studies"});

    MetaRecord meta;
    meta.id = get_string(doc, "document", "id");
    meta.citation = get_string(doc, "document", "citation");
    const json& studies = require(doc, "document", "studies");
    if (!studies.is_array()) fail("document", "studies must be an array");
    if (studies.empty()) fail("document", "empty-meta: at least one study is required");

    std::unordered_set<std::string> seen;
    for (const auto& s : studies) {
        StudyRecord rec = parse_study(s, "study");
        if (!seen.insert(rec.id).second)
            fail("document", "duplicate study id '" + rec.id + "'");
        meta.studies.push_back(std::move(rec));
    }
    return meta;
}

std::string serialize_def(const MetaRecord& meta) {
    json doc;
    doc["id"] = meta.id;
    doc["citation"] = meta.citation;
    doc["studies"] = json::array();
    for (const auto& s : meta.studies) {
        json obj;
        obj["id"] = s.id;
        obj["citation"] = s.citation;
        obj["journal_year"] = s.journal_year;
        obj["overall_n"] = s.overall_n;
        obj["groups"] = json::array();
        for (const auto& g : s.groups)
            obj["groups"].push_back(json{{"label", g.label}, {"size", g.size}});
        obj["abstract_counts"] = counts_json(s.abstract_counts);
        obj["text_counts"] = counts_json(s.text_counts);
        obj["ffq_items"] = s.ffq_items;
        obj["tcovars"] = s.tcovars;
        obj["n_groups"] = s.n_groups;
        obj["n_tests"] = s.n_tests;
        obj["smallest_p"] =
            json{{"kind", s.smallest_p.kind == PValueBound::Kind::exact ? "exact" : "less_than"},
                 {"value", s.smallest_p.value}};
        obj["largest_effect"] = effect_json(s.largest_effect);
        if (s.meta_effect) obj["meta_effect"] = effect_json(*s.meta_effect);
        if (s.meta_effect_alt) obj["meta_effect_alt"] = effect_json(*s.meta_effect_alt);
        obj["multiplicity_adjusted"] = s.multiplicity_adjusted;
        obj["funding"] = funding_name(s.funding);
        if (s.reported_space_abstract) obj["reported_space_abstract"] = *s.reported_space_abstract;
        if (s.reported_space_text) obj["reported_space_text"] = *s.reported_space_text;
        doc["studies"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

std::vector<ValidationFinding> validate_study(const StudyRecord& record) {
    std::vector<ValidationFinding> out;

    auto check_counts = [&](const CountSet& c, const std::string& field) {
        if (c.outcomes == 0)
            out.push_back({Severity::error, "ZERO_OUTCOMES", field,
                           "study cannot be audited with zero outcomes"});
        if (c.predictors == 0)
            out.push_back({Severity::error, "ZERO_PREDICTORS", field,
                           "study cannot be audited with zero predictors"});
    };
    auto check_effect = [&](const EffectEstimate& e, const std::string& field) {
        if (e.rr < e.cl_low || e.rr > e.cl_high)
            out.push_back({Severity::warning, "RR_OUTSIDE_CI", field,
                           "estimate " + std::to_string(e.rr) + " lies outside its interval (" +
                               std::to_string(e.cl_low) + ", " + std::to_string(e.cl_high) + ")"});
    };

    check_counts(record.abstract_counts, "abstract_counts");
    std::uint64_t sum = 0;
    for (const auto& g : record.groups) sum += g.size;
    if (!record.groups.empty() && sum != record.overall_n)
        out.push_back({Severity::info, "GROUP_SUM_MISMATCH", "groups",
                       "group sizes sum to " + std::to_string(sum) + ", overall_n is " +
                           std::to_string(record.overall_n)});
    check_effect(record.largest_effect, "largest_effect");
    if (record.meta_effect) check_effect(*record.meta_effect, "meta_effect");
    if (record.meta_effect_alt) check_effect(*record.meta_effect_alt, "meta_effect_alt");
    check_counts(record.text_counts, "text_counts");

    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        return a.field != b.field ? a.field < b.field : a.code < b.code;
    });
    return out;
}

namespace {

MetaRecord build_bundled() {
    MetaRecord m;
    m.id = "malik2010";
    m.citation =
        "Malik VS, Popkin BM, Bray GA, Despres J-P, Willett WC, Hu FB. Sugar-sweetened "
        "beverages and risk of metabolic syndrome and type 2 diabetes. Diabetes Care "
        "2010;33(11):2477-83.";

    auto effect = [](double rr, double lo, double hi) {
        return EffectEstimate{rr, lo, hi, 0.95};
    };
    auto less_than = [](double v) { return PValueBound{PValueBound::Kind::less_than, v}; };
    auto exact = [](double v) { return PValueBound{PValueBound::Kind::exact, v}; };

    {
        StudyRecord s;
        s.id = "Nettleton";
        s.citation =
            "Nettleton JA, Lutsey PL, Wang Y, Lima JA, Michos ED, Jacobs DR. Diet soda intake "
            "and risk of incident metabolic syndrome and type 2 diabetes in the Multi-Ethnic "
            "Study of Atherosclerosis (MESA). Diabetes Care 2009;32(4):688-94.";
        s.journal_year = "Diabetes Care 2009";
        s.overall_n = 6814;
        s.groups = {{"Rare or never", 2961},
                    {">rare/never but <1 servings per week", 455},
                    {">=1 servings/week to <1 servings/day", 914},
                    {">=1 serving/day", 681}};
        s.abstract_counts = {2, 1, 3};
        s.text_counts = {2, 2, 15};
        s.ffq_items = 114;
        s.tcovars = 10;
        s.n_groups = 4;
        s.n_tests = 88;
        s.smallest_p = less_than(0.001);
        s.largest_effect = effect(2.2, 1.1, 4.51);
        s.meta_effect = effect(0.86, 0.62, 1.17);
        s.meta_effect_alt = effect(1.15, 0.92, 1.42);
        s.funding = Funding::government;
        s.reported_space_abstract = 24;
        s.reported_space_text = 196608;
        m.studies.push_back(std::move(s));
    }
    {
        StudyRecord s;
        s.id = "Lutsey";
        s.citation =
            "Lutsey PL, Steffen LM, Stevens J. Dietary intake and the development of the "
            "metabolic syndrome. Circulation 2008;117(6):754-61.";
        s.journal_year = "Circulation 2008";
        s.overall_n = 9514;
        s.groups = {{"Men", 4197}, {"Women", 5317}};
        s.abstract_counts = {1, 2, 4};
        s.text_counts = {1, 2, 14};
        s.ffq_items = 66;
        s.tcovars = 13;
        s.n_groups = 5;
        s.n_tests = 85;
        s.smallest_p = less_than(0.001);
        s.largest_effect = effect(1.34, 1.24, 1.44);
        s.meta_effect = effect(1.09, 0.99, 1.19);
        s.funding = Funding::government;
        s.reported_space_abstract = 32;
        s.reported_space_text = 32678;
        m.studies.push_back(std::move(s));
    }
    {
        StudyRecord s;
        s.id = "Dhingra";
        s.citation =
            "Dhingra R, Sullivan L, Jacques PF, Wang TJ, Fox CS, Meigs JB, D'Agostino RB, "
            "Gaziano JM, Vasan RS. Soft drink consumption and risk of developing "
            "cardiometabolic risk factors and the metabolic syndrome in middle-aged adults "
            "in the community. Circulation 2007;116(5):480-8.";
        s.journal_year = "Circulation 2007";
        s.overall_n = 8997;
        s.groups = {{"<1 soft drinks per day", 5840},
                    {"1 soft drinks per day", 1918},
                    {">=2 soft drinks per day", 1239}};
        s.abstract_counts = {7, 1, 10};
        s.text_counts = {7, 1, 24};
        s.ffq_items = 61;
        s.tcovars = 2;
        s.n_groups = 3;
        s.n_tests = 101;
        s.smallest_p = less_than(0.0001);
        s.largest_effect = effect(2.31, 1.77, 3.01);
        s.meta_effect = effect(1.39, 1.21, 1.59);
        s.funding = Funding::mixed;
        s.reported_space_abstract = 7168;
        s.reported_space_text = 117117952;
        m.studies.push_back(std::move(s));
    }
    {
        StudyRecord s;
        s.id = "Montonen";
        s.citation =
            "Montonen J, Jarvinen R, Knekt P, Heliovaara M, Reunanen A. Consumption of "
            "sweetened beverages and intakes of fructose and glucose predict type 2 diabetes "
            "occurrence. The Journal of Nutrition 2007;137(6):1447-54.";
        s.journal_year = "J Nutr 2007";
        s.overall_n = 4304;
        s.groups = {{"1st quartile", 1076},
                    {"2nd quartile", 1076},
                    {"3rd quartile", 1076},
                    {"4th quartile", 1076}};
        s.abstract_counts = {1, 5, 0};
        s.text_counts = {1, 12, 15};
        s.ffq_items = 100;
        s.tcovars = 10;
        s.n_groups = 4;
        s.n_tests = 63;
        s.smallest_p = less_than(0.001);
        s.largest_effect = effect(5.06, 1.87, 3.71); // printed interval excludes its own estimate
        s.meta_effect = effect(1.67, 0.98, 2.87);
        s.funding = Funding::unfunded;
        s.reported_space_abstract = 5;
        s.reported_space_text = 392396;
        m.studies.push_back(std::move(s));
    }
    {
        StudyRecord s;
        s.id = "Paynter";
        s.citation =
            "Paynter NP, Yeh H-C, Voutilainen S, Schmidt MI, Heiss G, Folsom AR, Brancati FL, "
            "Kao WL. Coffee and sweetened beverage consumption and the risk of type 2 diabetes "
            "mellitus the atherosclerosis risk in communities study. American Journal of "
            "Epidemiology 2006;164(11):1075-84.";
        s.journal_year = "Am J Epidem 2006";
        s.overall_n = 12204;
        s.groups = {{"Men", 5414}, {"Women", 6790}};
        s.abstract_counts = {1, 2, 0};
        s.text_counts = {1, 2, 14};
        s.ffq_items = 61;
        s.tcovars = 2;
        s.n_groups = 5;
        s.n_tests = 60;
        s.smallest_p = less_than(0.01);
        s.largest_effect = effect(1.23, 0.93, 1.62);
        s.meta_effect = effect(1.17, 0.92, 1.39);
        s.funding = Funding::government;
        s.reported_space_abstract = 2;
        s.reported_space_text = 32678;
        m.studies.push_back(std::move(s));
    }
    {
        StudyRecord s;
        s.id = "Schulze";
        s.citation =
            "Schulze MB, Manson JE, Ludwig DS, Colditz GA, Stampfer MJ, Willett WC, Hu FB. "
            "Sugar-sweetened beverages, weight gain, and incidence of type 2 diabetes in young "
            "and middle-aged women. JAMA 2004;292(8):927-34.";
        s.journal_year = "JAMA 2004";
        s.overall_n = 91249;
        s.groups = {{"1991 <1/mo", 49203},
                    {"1991 1-4/mo", 23398},
                    {"1991 2-6/wk", 9950},
                    {"1991 <1/d", 8698},
                    {"1991-1995 <=1/wk", 38737},
                    {"1991-1995 >=1/d", 2366},
                    {"1991-1995 <=1/wk to >=1/d", 1007},
                    {"1991-1995 >=1/d to <=1/wk", 1020}};
        s.abstract_counts = {2, 1, 2};
        s.text_counts = {2, 3, 9};
        s.ffq_items = 133;
        s.tcovars = 14;
        s.n_groups = 4;
        s.n_tests = 54;
        s.smallest_p = less_than(0.001);
        s.largest_effect = effect(2.31, 1.55, 3.45);
        s.meta_effect = effect(1.83, 1.42, 2.36);
        s.funding = Funding::government;
        s.reported_space_abstract = 8;
        s.reported_space_text = 3072;
        m.studies.push_back(std::move(s));
    }
    {
        StudyRecord s;
        s.id = "Palmer";
        s.citation =
            "Palmer JR, Boggs DA, Krishnan S, Hu FB, Singer M, Rosenberg L. Sugar-sweetened "
            "beverages and incidence of type 2 diabetes mellitus in African American women. "
            "Archives of Internal Medicine 2008;168(14):1487-92.";
        s.journal_year = "Arch Intern Med 2008";
        s.overall_n = 43960;
        s.groups = {{"Soft drinks per week <1", 25971},
                    {"Soft drinks per week 2-6", 10521},
                    {"Soft drinks per week >=1", 7468},
                    {"Fruit drinks per week <1", 15455},
                    {"Fruit drinks per week 2-6", 13722},
                    {"Fruit drinks per week >=1", 13644}};
        s.abstract_counts = {1, 1, 2};
        s.text_counts = {2, 3, 15};
        s.ffq_items = 68;
        s.tcovars = 15;
        s.n_groups = 3;
        s.n_tests = 87;
        s.smallest_p = exact(0.001);
        s.largest_effect = effect(1.51, 1.31, 1.75);
        s.meta_effect = effect(1.24, 1.06, 1.45);
        s.funding = Funding::government;
        s.reported_space_abstract = 4;
        s.reported_space_text = 196608;
        m.studies.push_back(std::move(s));
    }
    {
        StudyRecord s;
        s.id = "Bazzano";
        s.citation =
            "Bazzano LA, Li TY, Joshipura KJ, Hu FB. Intake of fruit, vegetables, and fruit "
            "juices and risk of diabetes in women. Diabetes Care 2008;31(7):1311-7.";
        s.journal_year = "Diabetes Care 2008";
        s.overall_n = 71346;
        s.groups = {{"quintile 1", 14573},
                    {"quintile 2", 14408},
                    {"quintile 3", 14337},
                    {"quintile 4", 14118},
                    {"quintile 5", 13913}};
        s.abstract_counts = {1, 3, 0};
        s.text_counts = {1, 5, 13};
        s.ffq_items = 88;
        s.tcovars = 7;
        s.n_groups = 5;
        s.n_tests = 114;
        s.smallest_p = less_than(0.001);
        s.largest_effect = effect(4.47, 2.35, 7.66);
        s.meta_effect = effect(1.31, 0.99, 1.74);
        s.funding = Funding::government;
        s.reported_space_abstract = 3;
        s.reported_space_text = 40960;
        m.studies.push_back(std::move(s));
    }
    {
        StudyRecord s;
        s.id = "Odegaard";
        s.citation =
            "Odegaard AO, Koh W-P, Arakawa K, Mimi CY, Pereira MA. Soft drink and juice "
            "consumption and risk of physician-diagnosed incident type 2 diabetes: the "
            "Singapore Chinese Health Study. American Journal of Epidemiology 2010:kwp452.";
        s.journal_year = "Am J Epidem 2010";
        s.overall_n = 43580;
        s.groups = {{"Soft drink almost never", 32060},
                    {"Soft drink 1-3/month", 4514},
                    {"Soft drink 1/week", 2389},
                    {"Soft drink 2-3/week", 4617},
                    {"Juice almost never", 35719},
                    {"Juice 1-3/month", 4399},
                    {"Juice 1/week", 1791},
                    {"Juice 2-3/week", 1671}};
        s.abstract_counts = {1, 2, 2};
        s.text_counts = {2, 2, 16};
        s.ffq_items = 165;
        s.tcovars = 13;
        s.n_groups = 4;
        s.n_tests = 50;
        s.smallest_p = less_than(0.0001);
        s.largest_effect = effect(1.7, 1.34, 2.16);
        s.meta_effect = effect(1.42, 1.25, 1.62);
        s.funding = Funding::government;
        s.reported_space_abstract = 8;
        s.reported_space_text = 262144;
        m.studies.push_back(std::move(s));
    }
    {
        StudyRecord s;
        s.id = "deKoning";
        s.citation =
            "De Koning L, Malik VS, Rimm EB, Willett WC, Hu FB. Sugar-sweetened and "
            "artificially sweetened beverage consumption and risk of type 2 diabetes in men. "
            "The American Journal of Clinical Nutrition 2011;93(6):1321-7.";
        s.journal_year = "Am J Epidem 2011";
        s.overall_n = 40389;
        s.groups = {{"Sugar-sweetened Q1", 13675},
                    {"Sugar-sweetened Q2", 5022},
                    {"Sugar-sweetened Q3", 11729},
                    {"Sugar-sweetened Q4", 9963},
                    {"Artificially sweetened Q1", 18442},
                    {"Artificially sweetened Q2", 2681},
                    {"Artificially sweetened Q3", 9448},
                    {"Artificially sweetened Q4", 9818}};
        s.abstract_counts = {1, 3, 10};
        s.text_counts = {1, 3, 24};
        s.ffq_items = 131;
        s.tcovars = 6;
        s.n_groups = 4;
        s.n_tests = 84;
        s.smallest_p = less_than(0.01);
        s.largest_effect = effect(1.94, 1.75, 2.14);
        s.meta_effect = effect(1.14, 1.03, 1.28);
        s.funding = Funding::government;
        s.reported_space_abstract = 12288;
        s.reported_space_text = 6291456;
        m.studies.push_back(std::move(s));
    }
    return m;
}

} // namespace

const MetaRecord& bundled_malik_dataset() {
    static const MetaRecord meta = build_bundled();
    return meta;
}

} // namespace metaaudit
