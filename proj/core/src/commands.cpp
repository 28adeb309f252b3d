#include "pairedfd/commands.hpp"

#include <algorithm>
#include <cstdio>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "pairedfd/error.hpp"
#include "pairedfd/format.hpp"
#include "pairedfd/fpca.hpp"
#include "pairedfd/paired_csv.hpp"

namespace pairedfd {

namespace {

std::vector<Method> requested_methods(const std::string& text) {
    if (text == "all") return {std::begin(kAllMethods), std::end(kAllMethods)};
    return {parse_method(text)};
}

std::string fixed4(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4f", p);
    return buf;
}

std::string significant(double p) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", p);
    return buf;
}

}  // namespace

std::vector<MethodOutcome> run_tests(const PairedSample& paired, const TestOptions& options) {
    std::vector<Method> wanted;
    try {
        wanted = requested_methods(options.method);
    } catch (const ManifestError& e) {
        throw SchemaError(e.what());
    }

    DifferenceSample d = [&] {
        if (options.no_preprocess) {
            if (paired.condition0().has_missing() || paired.condition1().has_missing()) {
                throw PreprocessRequired(
                    "input has NA cells; drop --no-preprocess so FPCA can fill them");
            }
            return difference(paired);
        }
        const double h = options.bandwidth.value_or(default_bandwidth(paired.grid()));
        return difference(preprocess_paired(paired, options.pve, h));
    }();

    std::vector<MethodOutcome> outcomes;
    for (Method m : kAllMethods) {
        if (std::find(wanted.begin(), wanted.end(), m) == wanted.end()) continue;
        MethodOutcome o;
        o.method = m;
        try {
            o.report = apply_method(d, m, options.alternative);
        } catch (const AllZeroScores& e) {
            o.error = std::string("AllZeroScores: ") + e.what();
        }
        outcomes.push_back(std::move(o));
    }
    return outcomes;
}

void render_outcomes(std::ostream& out, const std::vector<MethodOutcome>& outcomes) {
    const auto row = [&](const std::vector<std::string>& cells) {
        static const int widths[] = {10, 6, 12, 11, 12, 15, 6, 7, 0};
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c + 1 < cells.size()) out << std::left << std::setw(widths[c]) << cells[c];
            else out << cells[c];
        }
        out << '\n';
    };
    row({"method", "stat", "observed", "null_mean", "p_value", "p_method", "n_eff", "n_zero",
         "summary"});
    for (const auto& o : outcomes) {
        if (!o.report) {
            out << std::left << std::setw(10) << to_string(o.method) << "error: " << o.error << '\n';
            continue;
        }
        const TestReport& r = *o.report;
        const auto colon = r.statistic_name.find(':');
        const std::string stat = colon == std::string::npos ? r.statistic_name
                                                            : r.statistic_name.substr(colon + 1);
        row({to_string(o.method), stat, format_real(r.observed), format_real(r.null_mean),
             significant(r.p_value), to_string(r.method), std::to_string(r.n_effective),
             std::to_string(r.n_zero_scores),
             format_real(r.observed) + " (" + fixed4(r.p_value) + ")"});
    }
}

int cmd_test(const std::filesystem::path& file, const TestOptions& options, std::ostream& out) {
    const PairedSample paired = read_paired_csv(file);
    const auto outcomes = run_tests(paired, options);
    out << "# " << paired.subjects() << " subjects, " << paired.grid().size()
        << " grid points, alternative " << to_string(options.alternative)
        << (options.no_preprocess ? ", raw curves" : ", FPCA-smoothed (pve " + format_real(options.pve) + ")")
        << '\n';
    render_outcomes(out, outcomes);
    const bool all_ok = std::all_of(outcomes.begin(), outcomes.end(),
                                    [](const MethodOutcome& o) { return o.report.has_value(); });
    return all_ok ? 0 : 1;
}

int cmd_simulate(const Manifest& manifest, unsigned threads, std::ostream& out) {
    std::vector<CellResult> results;
    for (const SimConfig& config : manifest.configs) {
        auto cells = run_cells(config, manifest.methods, manifest.alpha, threads);
        results.insert(results.end(), cells.begin(), cells.end());
    }
    write_cell_table(out, results);
    return 0;
}

int cmd_smooth(const std::filesystem::path& file, double pve, std::optional<double> bandwidth,
               std::ostream& out) {
    const PairedSample paired = read_paired_csv(file);
    const double h = bandwidth.value_or(default_bandwidth(paired.grid()));
    write_paired_csv(out, preprocess_paired(paired, pve, h));
    return 0;
}

int cmd_generate(const SimConfig& config, std::size_t replicate, std::ostream& out) {
    write_paired_csv(out, replay_replicate(config, replicate));
    return 0;
}

}  // namespace pairedfd
