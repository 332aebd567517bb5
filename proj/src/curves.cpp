#include "alkit/curves.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "alkit/number_format.hpp"

namespace alkit {

void LearningCurve::validate() const {
    if (x.size() != value.size())
        throw std::invalid_argument("curve: x and value length mismatch");
    for (std::size_t i = 1; i < x.size(); ++i)
        if (!(x[i] > x[i - 1]))
            throw std::invalid_argument("curve: x values must be strictly increasing");
}

namespace {

AggregateCurve reduce(const std::vector<double>& grid,
                      const std::vector<std::vector<double>>& values_per_curve) {
    AggregateCurve out;
    out.grid = grid;
    out.n_curves = static_cast<int>(values_per_curve.size());
    out.mean.resize(grid.size());
    out.std_dev.resize(grid.size());
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double sum = 0.0;
        for (const auto& vals : values_per_curve) sum += vals[g];
        const double mean = sum / static_cast<double>(out.n_curves);
        double ss = 0.0;
        for (const auto& vals : values_per_curve) ss += (vals[g] - mean) * (vals[g] - mean);
        out.mean[g] = mean;
        out.std_dev[g] = out.n_curves > 1
                             ? std::sqrt(ss / static_cast<double>(out.n_curves - 1))
                             : 0.0;
    }
    return out;
}

}  // namespace

AggregateCurve aggregate_aligned(const std::vector<LearningCurve>& curves) {
    if (curves.empty()) throw std::invalid_argument("aggregate: no curves");
    for (const auto& c : curves) c.validate();
    const auto& grid = curves.front().x;
    std::vector<std::vector<double>> values;
    values.reserve(curves.size());
    for (const auto& c : curves) {
        if (c.x != grid) throw std::invalid_argument("aggregate: mismatched round grids");
        values.push_back(c.value);
    }
    return reduce(grid, values);
}

double interpolate_at(const LearningCurve& curve, double x) {
    const auto& xs = curve.x;
    if (xs.empty()) throw std::invalid_argument("interpolate: empty curve");
    if (x < xs.front() || x > xs.back())
        throw std::invalid_argument("interpolate: x outside curve range");
    // Exact at knots.
    auto it = std::lower_bound(xs.begin(), xs.end(), x);
    if (it != xs.end() && *it == x)
        return curve.value[static_cast<std::size_t>(it - xs.begin())];
    const auto hi = static_cast<std::size_t>(it - xs.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - xs[lo]) / (xs[hi] - xs[lo]);
    return curve.value[lo] + t * (curve.value[hi] - curve.value[lo]);
}

AggregateCurve interpolate_cost_curves(const std::vector<LearningCurve>& curves,
                                       int grid_size) {
    if (curves.empty()) throw std::invalid_argument("interpolate: no curves");
    if (grid_size < 2) throw std::invalid_argument("interpolate: grid_size must be >= 2");
    double lo = -std::numeric_limits<double>::infinity();
    double hi = std::numeric_limits<double>::infinity();
    for (const auto& c : curves) {
        c.validate();
        if (c.size() < 2)
            throw std::invalid_argument("interpolate: each curve needs >= 2 points");
        lo = std::max(lo, c.x.front());
        hi = std::min(hi, c.x.back());
    }
    if (lo > hi) throw std::invalid_argument("interpolate: curves have no overlapping x range");

    std::vector<double> grid(static_cast<std::size_t>(grid_size));
    for (int g = 0; g < grid_size; ++g) {
        const double t = static_cast<double>(g) / static_cast<double>(grid_size - 1);
        grid[static_cast<std::size_t>(g)] = lo + t * (hi - lo);
    }
    grid.front() = lo;
    grid.back() = hi;

    std::vector<std::vector<double>> values;
    values.reserve(curves.size());
    for (const auto& c : curves) {
        std::vector<double> row;
        row.reserve(grid.size());
        for (double x : grid) row.push_back(interpolate_at(c, x));
        values.push_back(std::move(row));
    }
    return reduce(grid, values);
}

std::string render_csv(const AggregateCurve& aggregate) {
    std::string out = "x,mean,std,n\n";
    for (std::size_t i = 0; i < aggregate.grid.size(); ++i) {
        out += format_double(aggregate.grid[i]);
        out += ',';
        out += format_double(aggregate.mean[i]);
        out += ',';
        out += format_double(aggregate.std_dev[i]);
        out += ',';
        out += std::to_string(aggregate.n_curves);
        out += '\n';
    }
    return out;
}

namespace {

// Plot geometry: fixed 800x600 canvas with margins for axes.
constexpr double kWidth = 800.0, kHeight = 600.0;
constexpr double kLeft = 70.0, kRight = 780.0, kTop = 40.0, kBottom = 560.0;

std::string coord(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, 2);
    return std::string(buf, res.ptr);
}

std::string tick_label(double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 6);
    return std::string(buf, res.ptr);
}

}  // namespace

std::string render_svg(const AggregateCurve& aggregate, const std::string& title) {
    const auto& grid = aggregate.grid;
    if (grid.empty()) throw std::invalid_argument("svg: empty aggregate");

    double xmin = grid.front(), xmax = grid.back();
    if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }
    double ymin = std::numeric_limits<double>::infinity();
    double ymax = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < grid.size(); ++i) {
        ymin = std::min(ymin, aggregate.mean[i] - aggregate.std_dev[i]);
        ymax = std::max(ymax, aggregate.mean[i] + aggregate.std_dev[i]);
    }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    auto sx = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * (kRight - kLeft); };
    auto sy = [&](double y) { return kBottom - (y - ymin) / (ymax - ymin) * (kBottom - kTop); };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 800 600\" "
           "width=\"800\" height=\"600\">\n";
    svg << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"600\" fill=\"white\"/>\n";
    svg << "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
           "font-size=\"16\">" << title << "</text>\n";

    // Axes.
    svg << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kBottom) << "\" x2=\""
        << coord(kRight) << "\" y2=\"" << coord(kBottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    svg << "<line x1=\"" << coord(kLeft) << "\" y1=\"" << coord(kTop) << "\" x2=\""
        << coord(kLeft) << "\" y2=\"" << coord(kBottom)
        << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
    for (int t = 0; t <= 4; ++t) {
        const double fx = xmin + (xmax - xmin) * t / 4.0;
        const double fy = ymin + (ymax - ymin) * t / 4.0;
        svg << "<line x1=\"" << coord(sx(fx)) << "\" y1=\"" << coord(kBottom) << "\" x2=\""
            << coord(sx(fx)) << "\" y2=\"" << coord(kBottom + 5)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << coord(sx(fx)) << "\" y=\"" << coord(kBottom + 20)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(fx) << "</text>\n";
        svg << "<line x1=\"" << coord(kLeft - 5) << "\" y1=\"" << coord(sy(fy)) << "\" x2=\""
            << coord(kLeft) << "\" y2=\"" << coord(sy(fy))
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << coord(kLeft - 8) << "\" y=\"" << coord(sy(fy) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << tick_label(fy) << "</text>\n";
    }

    // +-1 std band as a closed path.
    if (grid.size() > 1) {
        std::ostringstream band;
        band << "M";
        for (std::size_t i = 0; i < grid.size(); ++i)
            band << " " << coord(sx(grid[i])) << " "
                 << coord(sy(aggregate.mean[i] + aggregate.std_dev[i]));
        for (std::size_t i = grid.size(); i-- > 0;)
            band << " L " << coord(sx(grid[i])) << " "
                 << coord(sy(aggregate.mean[i] - aggregate.std_dev[i]));
        band << " Z";
        svg << "<path class=\"band\" d=\"" << band.str()
            << "\" fill=\"#4878cf\" fill-opacity=\"0.25\" stroke=\"none\"/>\n";
    }

    // Mean curve.
    std::ostringstream line;
    for (std::size_t i = 0; i < grid.size(); ++i)
        line << (i == 0 ? "M " : " L ") << coord(sx(grid[i])) << " "
             << coord(sy(aggregate.mean[i]));
    svg << "<path class=\"mean\" d=\"" << line.str()
        << "\" fill=\"none\" stroke=\"#4878cf\" stroke-width=\"2\"/>\n";

    svg << "</svg>\n";
    return svg.str();
}

std::vector<std::string> export_results(const AggregateCurve& aggregate,
                                        const std::string& out_dir, const std::string& name) {
    namespace fs = std::filesystem;
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (!fs::is_directory(out_dir))
        throw std::runtime_error("export: cannot create output directory '" + out_dir + "'");

    const std::string csv_path = (fs::path(out_dir) / (name + ".csv")).string();
    const std::string svg_path = (fs::path(out_dir) / (name + ".svg")).string();
    {
        std::ofstream csv(csv_path, std::ios::binary | std::ios::trunc);
        if (!csv) throw std::runtime_error("export: cannot write '" + csv_path + "'");
        csv << render_csv(aggregate);
    }
    {
        std::ofstream svg(svg_path, std::ios::binary | std::ios::trunc);
        if (!svg) throw std::runtime_error("export: cannot write '" + svg_path + "'");
        svg << render_svg(aggregate, name);
    }
    return {csv_path, svg_path};
}

}  // namespace alkit
