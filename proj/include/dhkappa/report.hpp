#pragma once

// Text and JSON renderings of agreement results. Both go through
// format_number(), so they print identical digits for every value.

#include <cstdio>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "dhkappa/core_metrics.hpp"
#include "dhkappa/types.hpp"

namespace dhkappa {

/// 12 significant digits, shortest of fixed/exponent form. Negative zero
/// prints as "0".
inline std::string format_number(double value) {
    if (value == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", value);
    return buf;
}

struct AgreementResults {
    std::optional<MetricReport> dh;
    std::optional<FleissResult> fleiss;
};

struct OracleCheck {
    double max_abs_diff = 0.0;
    bool passed = true;
};

struct ReportContext {
    const CategorySet* categories = nullptr;
    const std::vector<std::string>* item_ids = nullptr;
    const AnnotationCounts* counts = nullptr;
    const ProposedLabels* labels = nullptr;
    bool per_item = false;
    std::optional<OracleCheck> oracle;
};

namespace detail {

inline std::string quoted(const std::string& s) { return nlohmann::json(s).dump(); }

inline std::string number_list(std::span<const double> values, const char* sep) {
    std::string out;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (k) out += sep;
        out += format_number(values[k]);
    }
    return out;
}

// Collects "key": value lines and joins them with the right commas.
class JsonObject {
public:
    explicit JsonObject(int indent) : indent_(indent) {}
    void add(const std::string& key, const std::string& rendered) {
        entries_.push_back(std::string(indent_ + 2, ' ') + quoted(key) + ": " + rendered);
    }
    void add_number(const std::string& key, double v) { add(key, format_number(v)); }
    void add_numbers(const std::string& key, std::span<const double> v) {
        add(key, "[" + number_list(v, ", ") + "]");
    }
    std::string str() const {
        std::string out = "{\n";
        for (std::size_t k = 0; k < entries_.size(); ++k) {
            out += entries_[k];
            out += k + 1 < entries_.size() ? ",\n" : "\n";
        }
        return out + std::string(indent_, ' ') + "}";
    }

private:
    int indent_;
    std::vector<std::string> entries_;
};

}  // namespace detail

inline std::string render_json(const AgreementResults& results, const ReportContext& ctx) {
    detail::JsonObject root(0);
    root.add_number("n", static_cast<double>(ctx.counts->items()));
    root.add_number("m", static_cast<double>(ctx.counts->categories()));
    root.add_number("N", static_cast<double>(ctx.counts->annotators()));
    {
        std::string names = "[";
        for (std::size_t j = 0; j < ctx.categories->size(); ++j) {
            if (j) names += ", ";
            names += detail::quoted(ctx.categories->name(j));
        }
        root.add("categories", names + "]");
    }
    const std::vector<double> proportions =
        results.dh ? results.dh->category_proportions : category_proportions(*ctx.counts);
    root.add_numbers("C", proportions);

    if (const auto& dh = results.dh) {
        root.add_numbers("L", dh->label_proportions);
        root.add_number("C_E", dh->expected_correct);
        root.add_number("C_F", dh->expected_incorrect);
        root.add_number("R_bar", dh->observed_correct_mean);
        root.add_number("S_bar", dh->observed_incorrect_mean);
        root.add_number("kappa_dh", dh->kappa_dh);
    }
    if (const auto& f = results.fleiss) {
        detail::JsonObject fleiss(2);
        fleiss.add_number("expected", f->expected);
        fleiss.add_number("observed", f->observed_mean);
        fleiss.add_number("kappa", f->kappa);
        root.add("fleiss", fleiss.str());
    }
    if (ctx.per_item) {
        detail::JsonObject items(2);
        std::string ids = "[", labels = "[";
        for (std::size_t i = 0; i < ctx.item_ids->size(); ++i) {
            if (i) {
                ids += ", ";
                labels += ", ";
            }
            ids += detail::quoted((*ctx.item_ids)[i]);
            labels += detail::quoted(ctx.categories->name((*ctx.labels)[i]));
        }
        items.add("item_id", ids + "]");
        items.add("label", labels + "]");
        if (results.dh) {
            items.add_numbers("R", results.dh->observed_correct_per_item);
            items.add_numbers("S", results.dh->observed_incorrect_per_item);
        }
        if (results.fleiss) items.add_numbers("fleiss_observed", results.fleiss->observed_per_item);
        root.add("per_item", items.str());
    }
    if (ctx.oracle) {
        detail::JsonObject oracle(2);
        oracle.add_number("max_abs_diff", ctx.oracle->max_abs_diff);
        oracle.add("passed", ctx.oracle->passed ? "true" : "false");
        root.add("oracle", oracle.str());
    }
    return root.str() + "\n";
}

inline std::string render_text(const AgreementResults& results, const ReportContext& ctx) {
    std::string out;
    auto line = [&out](const std::string& key, const std::string& value) { out += key + ": " + value + "\n"; };

    line("n", std::to_string(ctx.counts->items()));
    line("m", std::to_string(ctx.counts->categories()));
    line("N", std::to_string(ctx.counts->annotators()));
    {
        std::string names;
        for (std::size_t j = 0; j < ctx.categories->size(); ++j) names += (j ? " " : "") + ctx.categories->name(j);
        line("categories", names);
    }
    const std::vector<double> proportions =
        results.dh ? results.dh->category_proportions : category_proportions(*ctx.counts);
    line("C", detail::number_list(proportions, " "));
    if (const auto& dh = results.dh) {
        line("L", detail::number_list(dh->label_proportions, " "));
        line("C_E", format_number(dh->expected_correct));
        line("C_F", format_number(dh->expected_incorrect));
        line("R_bar", format_number(dh->observed_correct_mean));
        line("S_bar", format_number(dh->observed_incorrect_mean));
        line("kappa_dh", format_number(dh->kappa_dh));
    }
    if (const auto& f = results.fleiss) {
        line("fleiss.expected", format_number(f->expected));
        line("fleiss.observed", format_number(f->observed_mean));
        line("fleiss.kappa", format_number(f->kappa));
    }
    if (ctx.per_item) {
        std::string head = "item_id label";
        if (results.dh) head += " R S";
        if (results.fleiss) head += " fleiss_observed";
        out += "\n" + head + "\n";
        for (std::size_t i = 0; i < ctx.item_ids->size(); ++i) {
            out += (*ctx.item_ids)[i] + " " + ctx.categories->name((*ctx.labels)[i]);
            if (results.dh)
                out += " " + format_number(results.dh->observed_correct_per_item[i]) + " " +
                       format_number(results.dh->observed_incorrect_per_item[i]);
            if (results.fleiss) out += " " + format_number(results.fleiss->observed_per_item[i]);
            out += "\n";
        }
    }
    if (ctx.oracle) {
        out += "\n";
        line("oracle.max_abs_diff", format_number(ctx.oracle->max_abs_diff));
        line("oracle.passed", ctx.oracle->passed ? "true" : "false");
    }
    return out;
}

}  // namespace dhkappa
