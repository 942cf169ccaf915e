#include "edgefutures/report.hpp"

#include "edgefutures/format.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace edgefutures {

namespace {

void metrics_columns(std::ostream& out, const MetricsReport& m) {
    out << m.n_trading << ',' << m.tfail << ',' << format_double(m.abar) << ',' << m.nc_total
        << ',' << format_double(m.nc_mean) << ',' << format_double(m.tfair) << ','
        << format_double(m.sum_buyer) << ',' << format_double(m.sum_seller);
}

constexpr std::string_view kMetricsHeader = "n_trading,TFail,ABAR,NC,NC_mean,TFair,Sum(Ub),Sum(Us)";

}  // namespace

std::string trading_csv(std::span<const StrategyRun> runs, bool with_timing) {
    std::ostringstream out;
    out << "strategy,trading,n_l,gamma,amount,price,seller_utility,buyer_utility,failed,nc";
    if (with_timing) out << ",nl_ms";
    out << '\n';
    for (const auto& run : runs) {
        for (std::size_t i = 0; i < run.outcomes.size(); ++i) {
            const auto& o = run.outcomes[i];
            out << to_string(run.strategy) << ',' << i << ',' << o.sample.n_l << ','
                << format_double(o.sample.gamma) << ',' << o.term.amount << ','
                << format_double(o.term.price) << ',' << format_double(o.seller_utility) << ','
                << format_double(o.buyer_utility) << ',' << (o.failed ? 1 : 0) << ',' << o.nc;
            if (with_timing) out << ',' << format_double(o.nl_ms);
            out << '\n';
        }
    }
    return out.str();
}

std::string summary_csv(std::span<const StrategyRun> runs, const MetricsOptions& options,
                        bool with_timing) {
    std::ostringstream out;
    out << "method," << kMetricsHeader;
    if (with_timing) out << ",NL_mean";
    out << '\n';
    for (const auto& run : runs) {
        const MetricsReport m = compute_metrics(run.outcomes, options);
        out << to_string(run.strategy) << ',';
        metrics_columns(out, m);
        if (with_timing) out << ',' << format_double(m.nl_mean);
        out << '\n';
    }
    return out.str();
}

std::string sweep_csv(SweepAxis axis, std::span<const SweepRow> rows, bool with_log10,
                      bool with_timing) {
    std::ostringstream out;
    out << "axis,value,method," << kMetricsHeader;
    if (with_log10) out << ",log10_NC_mean";
    if (with_timing) out << (with_log10 ? ",NL_mean,log10_NL_mean" : ",NL_mean");
    out << '\n';
    for (const auto& row : rows) {
        out << to_string(axis) << ',' << format_double(row.value) << ','
            << to_string(row.strategy) << ',';
        metrics_columns(out, row.report);
        if (with_log10) out << ',' << format_double(std::log10(row.report.nc_mean));
        if (with_timing) {
            out << ',' << format_double(row.report.nl_mean);
            if (with_log10) out << ',' << format_double(std::log10(row.report.nl_mean));
        }
        out << '\n';
    }
    return out.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("write failed: " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

}  // namespace edgefutures
