#include "tmd/io.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <utility>

namespace tmd {

namespace {

void write_comment(std::ostream& out, std::string_view comment) {
    if (!comment.empty()) out << "# " << comment << "\n";
}

std::string next_data_line(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        return line;
    }
    throw std::runtime_error("unexpected end of CSV input");
}

std::pair<std::string_view, std::string_view> split_two(std::string_view line) {
    const std::size_t comma = line.find(',');
    if (comma == std::string_view::npos) {
        throw std::runtime_error("expected two comma-separated fields, got: " + std::string(line));
    }
    return {line.substr(0, comma), line.substr(comma + 1)};
}

long long parse_int(std::string_view text) {
    long long value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("not an integer: " + std::string(text));
    }
    return value;
}

double parse_double(std::string_view text) {
    double value = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc{} || ptr != text.data() + text.size()) {
        throw std::runtime_error("not a number: " + std::string(text));
    }
    return value;
}

}  // namespace

std::string format_double(double value) {
    char buffer[32];
    for (int precision = 1; precision <= 17; ++precision) {
        const int written = std::snprintf(buffer, sizeof buffer, "%.*g", precision, value);
        if (written <= 0) break;
        double parsed = 0.0;
        std::from_chars(buffer, buffer + written, parsed);
        if (parsed == value) break;
    }
    return buffer;
}

void write_distribution_csv(std::ostream& out, const ClickDistribution& dist,
                            std::string_view comment) {
    write_comment(out, comment);
    out << "m,probability\n";
    for (int m = 0; m <= dist.max_clicks(); ++m) {
        out << m << "," << format_double(dist[m]) << "\n";
    }
}

std::vector<double> read_distribution_csv(std::istream& in) {
    if (next_data_line(in) != "m,probability") {
        throw std::runtime_error("expected header 'm,probability'");
    }
    std::vector<double> probs;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto [m_text, p_text] = split_two(line);
        if (parse_int(m_text) != static_cast<long long>(probs.size())) {
            throw std::runtime_error("click counts must run 0,1,2,... without gaps");
        }
        probs.push_back(parse_double(p_text));
    }
    if (probs.empty()) throw std::runtime_error("distribution CSV holds no rows");
    return probs;
}

void write_histogram_csv(std::ostream& out, const ClickHistogram& hist, std::string_view comment) {
    write_comment(out, comment);
    out << "m,count\n";
    for (int m = 0; m < ClickHistogram::kBins; ++m) {
        out << m << "," << hist.counts[static_cast<std::size_t>(m)] << "\n";
    }
}

ClickHistogram read_histogram_csv(std::istream& in) {
    if (next_data_line(in) != "m,count") {
        throw std::runtime_error("expected header 'm,count'");
    }
    ClickHistogram hist;
    for (int m = 0; m < ClickHistogram::kBins; ++m) {
        const std::string line = next_data_line(in);
        const auto [m_text, count_text] = split_two(line);
        if (parse_int(m_text) != m) {
            throw std::runtime_error("histogram rows must run m = 0..16 in order");
        }
        const long long count = parse_int(count_text);
        if (count < 0) throw std::runtime_error("histogram counts must be non-negative");
        hist.counts[static_cast<std::size_t>(m)] = count;
    }
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty() && line.front() != '#') {
            throw std::runtime_error("histogram CSV must hold exactly 17 data rows");
        }
    }
    return hist;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     std::string_view comment) {
    write_comment(out, comment);
    out << "eta,n,p_correct\n";
    for (const SweepRow& row : rows) {
        out << format_double(row.eta) << "," << row.photon_number << ","
            << format_double(row.p_correct) << "\n";
    }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
    if (next_data_line(in) != "eta,n,p_correct") {
        throw std::runtime_error("expected header 'eta,n,p_correct'");
    }
    std::vector<SweepRow> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;
        const auto [eta_text, rest] = split_two(line);
        const auto [n_text, p_text] = split_two(rest);
        rows.push_back(SweepRow{parse_double(eta_text), static_cast<int>(parse_int(n_text)),
                                parse_double(p_text)});
    }
    if (rows.empty()) throw std::runtime_error("sweep CSV holds no rows");
    return rows;
}

nlohmann::json distribution_to_json(const ClickDistribution& dist) {
    return nlohmann::json{{"m_max", dist.max_clicks()}, {"probabilities", dist.probs()}};
}

nlohmann::json fit_result_to_json(const FitResult& result) {
    return nlohmann::json{
        {"normalization", result.normalization}, {"mu_prime", result.mu_prime},
        {"eta_l_mu0", result.eta_l_mu0},         {"rss", result.rss},
        {"iterations", result.iterations},       {"boundary_warning", result.boundary_warning},
    };
}

nlohmann::json layout_to_json(const TmdLayout& layout) {
    nlohmann::json detection = nlohmann::json::array();
    for (int mode : layout.detection_modes()) {
        detection.push_back({
            {"mode", mode},
            {"detector", layout.detector_of(mode) == Detector::A ? "A" : "B"},
            {"time_bin", layout.time_bin_of(mode)},
            {"loop_exponent", layout.loop_exponent(layout.time_bin_of(mode))},
        });
    }
    nlohmann::json loss = nlohmann::json::array();
    for (const TmdLayout::LossTap& tap : layout.loss_taps()) {
        loss.push_back({
            {"mode", tap.mode},
            {"stage", tap.stage},
            {"tapped_bin", tap.tapped_bin},
            {"fiber_lengths", tap.fiber_lengths},
        });
    }
    return nlohmann::json{
        {"total_modes", TmdLayout::kTotalModes},
        {"time_bins", TmdLayout::kTimeBins},
        {"detection_modes", detection},
        {"loss_modes", loss},
    };
}

}  // namespace tmd
