#ifndef ALKIT_CURVES_HPP
#define ALKIT_CURVES_HPP

#include <string>
#include <vector>

namespace alkit {

enum class CurveAxis { round, cost };

// One fold's performance trace as a function of the round index or of
// cumulative annotation cost. x values are strictly increasing.
struct LearningCurve {
    std::vector<double> x;
    std::vector<double> value;
    CurveAxis x_kind = CurveAxis::round;

    std::size_t size() const { return x.size(); }
    void validate() const;
};

// Pointwise mean and sample standard deviation over a set of curves
// on a shared grid.
struct AggregateCurve {
    std::vector<double> grid;
    std::vector<double> mean;
    std::vector<double> std_dev;
    int n_curves = 0;
};

// Pointwise aggregation of round-indexed curves that share identical
// grids. Throws on mismatched grids. A single curve aggregates with
// std 0 (the n-1 convention with n = 1 is defined as 0).
AggregateCurve aggregate_aligned(const std::vector<LearningCurve>& curves);

// Aggregation of cost-indexed curves with unaligned x values: each
// curve is evaluated by piecewise-linear interpolation on a common
// grid of grid_size evenly spaced points spanning the overlap
// [max of per-curve min x, min of per-curve max x]. Interpolation is
// exact at knots; there is no extrapolation. Throws when the overlap
// interval is empty.
AggregateCurve interpolate_cost_curves(const std::vector<LearningCurve>& curves, int grid_size);

// Piecewise-linear evaluation of one curve at x (must lie within the
// curve's x range). Exact when x equals a knot.
double interpolate_at(const LearningCurve& curve, double x);

// Writes "<prefix>.csv" (header "x,mean,std,n") and "<prefix>.svg"
// (800x600, mean line plus +-1 std band). Output bytes are a pure
// function of the aggregate. Returns the two file paths.
std::vector<std::string> export_results(const AggregateCurve& aggregate,
                                        const std::string& out_dir, const std::string& name);

std::string render_csv(const AggregateCurve& aggregate);
std::string render_svg(const AggregateCurve& aggregate, const std::string& title);

}  // namespace alkit

#endif  // ALKIT_CURVES_HPP
