#include "riesz/radial_field.hpp"

#include "riesz/errors.hpp"

#include <algorithm>
#include <cmath>

namespace riesz {

RadialGrid::RadialGrid(std::vector<double> r) : nodes(std::move(r)) {}

RadialGrid RadialGrid::uniform(double r_min, double r_max, std::size_t count)
{
    require(count >= 2 && r_max > r_min, "uniform grid needs count >= 2 and r_max > r_min");
    std::vector<double> r(count);
    for (std::size_t i = 0; i < count; ++i)
        r[i] = r_min + (r_max - r_min) * static_cast<double>(i) / static_cast<double>(count - 1);
    r.back() = r_max;
    return RadialGrid(std::move(r));
}

RadialGrid RadialGrid::geometric(double r_min, double r_max, std::size_t count)
{
    require(count >= 2 && r_max > r_min && r_min > 0.0, "geometric grid needs 0 < r_min < r_max");
    std::vector<double> r(count);
    const double q = std::log(r_max / r_min) / static_cast<double>(count - 1);
    for (std::size_t i = 0; i < count; ++i) r[i] = r_min * std::exp(q * static_cast<double>(i));
    r.back() = r_max;
    return RadialGrid(std::move(r));
}

RadialField::RadialField(RadialGrid g, std::vector<double> v) : grid(std::move(g)), values(std::move(v))
{
    require(grid.size() == values.size(), "field values must match the grid length");
}

RadialField RadialField::sample(const RadialGrid& g, const std::function<double(double)>& f)
{
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
    return RadialField(g, std::move(v));
}

double RadialField::interpolate(double r) const
{
    const auto& x = grid.nodes;
    if (r <= x.front()) return values.front();
    if (r > x.back()) return 0.0;
    const auto it = std::upper_bound(x.begin(), x.end(), r);
    const std::size_t i = static_cast<std::size_t>(it - x.begin());
    if (i >= x.size()) return values.back();
    const double w = (r - x[i - 1]) / (x[i] - x[i - 1]);
    return (1.0 - w) * values[i - 1] + w * values[i];
}

double CellDensity::volume(std::size_t k, int n) const
{
    return (std::pow(edges[k + 1], n) - std::pow(edges[k], n)) / n;
}

double CellDensity::value_at(double r) const
{
    if (r < edges.front() || r > edges.back()) return 0.0;
    auto it = std::upper_bound(edges.begin(), edges.end(), r);
    std::size_t k = static_cast<std::size_t>(it - edges.begin());
    k = std::min(k == 0 ? 0 : k - 1, cells() - 1);
    return values[k];
}

CellDensity CellDensity::resample(const std::vector<double>& refined) const
{
    CellDensity out;
    out.edges = refined;
    out.values.resize(refined.size() - 1);
    std::size_t k = 0;
    for (std::size_t j = 0; j + 1 < refined.size(); ++j) {
        const double mid = 0.5 * (refined[j] + refined[j + 1]);
        if (mid < edges.front() || mid > edges.back()) {
            out.values[j] = 0.0;
            continue;
        }
        while (k + 1 < cells() && edges[k + 1] <= mid) ++k;
        out.values[j] = values[k];
    }
    return out;
}

std::vector<double> merge_edges(const std::vector<double>& a, const std::vector<double>& b)
{
    std::vector<double> out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

CellDensity to_cells(const RadialField& f)
{
    CellDensity c;
    const auto& r = f.grid.nodes;
    c.edges.reserve(r.size() + 1);
    c.edges.push_back(0.0);
    c.edges.insert(c.edges.end(), r.begin(), r.end());
    c.values.reserve(r.size());
    c.values.push_back(f.values.front());
    for (std::size_t i = 0; i + 1 < r.size(); ++i) c.values.push_back(0.5 * (f.values[i] + f.values[i + 1]));
    return c;
}

std::vector<double> cumulative_radial_integral(const RadialField& g, int n)
{
    const auto& r = g.grid.nodes;
    std::vector<double> out(r.size());
    double acc = g.values.front() * std::pow(r.front(), n) / n;
    out[0] = acc;
    for (std::size_t i = 0; i + 1 < r.size(); ++i) {
        acc += 0.5 * (g.values[i] + g.values[i + 1]) * (std::pow(r[i + 1], n) - std::pow(r[i], n)) / n;
        out[i + 1] = acc;
    }
    return out;
}

double radial_integral(const RadialField& g, int n) { return cumulative_radial_integral(g, n).back(); }

void validate_field(const RadialField& f)
{
    const auto& r = f.grid.nodes;
    require(r.size() >= 2, "grid needs at least two nodes");
    require(r.size() == f.values.size(), "field values must match the grid length");
    require(r.front() >= 1e-12, "grid must stay away from the origin (r_0 >= 1e-12)");
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
        require(r[i + 1] > r[i], "grid nodes must be strictly increasing");
    for (double v : f.values) require(std::isfinite(v), "field values must be finite");
}

} // namespace riesz
