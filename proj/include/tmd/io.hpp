#ifndef TMD_IO_HPP
#define TMD_IO_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "tmd/click_histogram.hpp"
#include "tmd/detection.hpp"
#include "tmd/fit.hpp"
#include "tmd/network.hpp"

namespace tmd {

// CSV files open with a `# <invocation> | tool/version` comment line when a
// comment is supplied; readers skip any number of leading comment lines.

void write_distribution_csv(std::ostream& out, const ClickDistribution& dist,
                            std::string_view comment);
std::vector<double> read_distribution_csv(std::istream& in);

void write_histogram_csv(std::ostream& out, const ClickHistogram& hist, std::string_view comment);
ClickHistogram read_histogram_csv(std::istream& in);

struct SweepRow {
    double eta;
    int photon_number;
    double p_correct;
};
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows,
                     std::string_view comment);
std::vector<SweepRow> read_sweep_csv(std::istream& in);

nlohmann::json distribution_to_json(const ClickDistribution& dist);
nlohmann::json fit_result_to_json(const FitResult& result);
nlohmann::json layout_to_json(const TmdLayout& layout);

// shortest decimal form that parses back to the identical double
std::string format_double(double value);

}  // namespace tmd

#endif
