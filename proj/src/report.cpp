#include "tss3/report.hpp"

#include <algorithm>
#include <cstdio>
#include <string_view>

#include "tss3/errors.hpp"

namespace tss3 {
namespace {

std::string escape_html(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            case '\'': out += "&#39;"; break;
            default: out += c; break;
        }
    }
    return out;
}

std::string fmt(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", value);
    return buf;
}

struct LevelMaxima {
    double paragraph = 0.0;
    double sentence = 0.0;
    double ngram = 0.0;
};

void scan_maxima(const BlockNode& node, std::size_t category, LevelMaxima& maxima) {
    const double value = node.confidence.empty() ? 0.0 : node.confidence[category];
    switch (node.level) {
        case BlockLevel::paragraph: maxima.paragraph = std::max(maxima.paragraph, value); break;
        case BlockLevel::sentence: maxima.sentence = std::max(maxima.sentence, value); break;
        case BlockLevel::ngram: maxima.ngram = std::max(maxima.ngram, value); break;
        case BlockLevel::document: break;
    }
    for (const auto& child : node.children) scan_maxima(child, category, maxima);
}

// Linear 0..max alpha within each block level; flat documents stay unshaded.
std::string shade(double value, double level_max, double strongest_alpha) {
    const double alpha = level_max > 0.0 ? std::clamp(value / level_max, 0.0, 1.0) : 0.0;
    return "background:rgba(27,145,82," + fmt(alpha * strongest_alpha) + ");";
}

const char* kStyle = R"css(
  body { font-family: Georgia, 'Times New Roman', serif; margin: 0; background: #f5f5f2; color: #222; }
  .wrap { max-width: 880px; margin: 24px auto; background: #fff; padding: 28px 36px; border: 1px solid #ddd; }
  h1 { font-size: 20px; margin: 0 0 4px 0; }
  .meta { font-size: 13px; color: #555; margin-bottom: 4px; }
  .legend { font-size: 12px; color: #666; border-left: 3px solid #1b9152; padding-left: 10px; margin: 14px 0 22px 0; }
  .paragraph { padding: 10px 12px; margin-bottom: 12px; border-radius: 3px; }
  .sentence { padding: 2px 3px; border-radius: 3px; }
  .ngram { padding: 1px 3px; border-radius: 3px; white-space: nowrap; }
  .ngram.multi { border: 1px solid #1b9152; padding: 1px 5px; border-radius: 8px; }
)css";

}  // namespace

std::string render_html_report(const Classifier& classifier,
                               const Classifier::DocumentResult& result,
                               std::size_t category) {
    const Model& model = classifier.model();
    if (category >= model.category_count())
        throw ConfigurationError("render_html_report: unknown category index");
    const std::string& category_name = model.category_name(category);

    LevelMaxima maxima;
    scan_maxima(result.blocks, category, maxima);

    std::string html;
    html += "<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n";
    html += "<title>classification report: " + escape_html(category_name) + "</title>\n";
    html += "<style>";
    html += kStyle;
    html += "</style>\n</head>\n<body>\n<div class=\"wrap\">\n";
    html += "<h1>Classification report</h1>\n";

    html += "<div class=\"meta\">predicted: <b>" +
            escape_html(classifier.predict_label(result.confidence)) + "</b> &mdash; confidence ";
    for (std::size_t c = 0; c < model.category_count(); ++c) {
        if (c > 0) html += ", ";
        html += escape_html(model.category_name(c)) + "=" + fmt(result.confidence[c]);
    }
    html += "</div>\n";

    html += "<div class=\"legend\">Blocks are shaded for category <b>" +
            escape_html(category_name) +
            "</b>. Intensity maps linearly from zero to the strongest block of the same kind "
            "in this document (paragraph, sentence and n-gram scales are independent). "
            "Multi-word n-grams appear as single outlined units; hover any block for its "
            "exact confidence.</div>\n";

    for (const auto& paragraph : result.blocks.children) {
        const double p = paragraph.confidence.empty() ? 0.0 : paragraph.confidence[category];
        html += "<div class=\"paragraph\" style=\"" + shade(p, maxima.paragraph, 0.18) +
                "\" title=\"paragraph " + category_name + "=" + fmt(p) + "\">\n";
        for (const auto& sentence : paragraph.children) {
            const double s = sentence.confidence.empty() ? 0.0 : sentence.confidence[category];
            html += "  <span class=\"sentence\" style=\"" + shade(s, maxima.sentence, 0.25) +
                    "\" title=\"sentence " + category_name + "=" + fmt(s) + "\">";
            bool first = true;
            for (const auto& ngram : sentence.children) {
                if (!first) html += ' ';
                first = false;
                const double g = ngram.confidence.empty() ? 0.0 : ngram.confidence[category];
                const bool multi = ngram.content.find(' ') != std::string::npos;
                html += "<span class=\"ngram";
                if (multi) html += " multi";
                html += "\" style=\"" + shade(g, maxima.ngram, 0.75) + "\" title=\"" +
                        category_name + "=" + fmt(g) + "\">" + escape_html(ngram.content) +
                        "</span>";
            }
            html += "</span>\n";
        }
        html += "</div>\n";
    }

    html += "</div>\n</body>\n</html>\n";
    return html;
}

}  // namespace tss3
