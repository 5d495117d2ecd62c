#pragma once

#include <functional>
#include <vector>

namespace riesz {

struct RadialGrid {
    std::vector<double> nodes;

    RadialGrid() = default;
    explicit RadialGrid(std::vector<double> r);

    std::size_t size() const { return nodes.size(); }
    double operator[](std::size_t i) const { return nodes[i]; }

    static RadialGrid uniform(double r_min, double r_max, std::size_t count);
    static RadialGrid geometric(double r_min, double r_max, std::size_t count);
};

struct RadialField {
    RadialGrid grid;
    std::vector<double> values;

    RadialField() = default;
    RadialField(RadialGrid g, std::vector<double> v);

    std::size_t size() const { return values.size(); }
    static RadialField sample(const RadialGrid& g, const std::function<double(double)>& f);

    // Piecewise-linear interpolation, constant below the first node and zero past the last.
    double interpolate(double r) const;
};

// Radially symmetric density that is constant on shells (edges[k], edges[k+1]).
// edges[0] may be 0, in which case the first cell is a ball.
struct CellDensity {
    std::vector<double> edges;
    std::vector<double> values;

    std::size_t cells() const { return values.size(); }
    // Shell volume per unit solid angle, (r_{k+1}^n - r_k^n) / n.
    double volume(std::size_t k, int n) const;
    double value_at(double r) const;

    // Same function on a refined edge set (a superset of edges, zero outside the support).
    CellDensity resample(const std::vector<double>& refined) const;
};

// Sorted union of two edge sets with duplicates merged.
std::vector<double> merge_edges(const std::vector<double>& a, const std::vector<double>& b);

// Cell model of nodal samples: value (f_i + f_{i+1})/2 on [r_i, r_{i+1}], with the first
// sample extended down to the origin.
CellDensity to_cells(const RadialField& f);

// int_0^{r_max} g(r) r^{n-1} dr under the same cell model, for g given at the nodes.
double radial_integral(const RadialField& g, int n);

// Running version: value at node i is the integral from 0 to r_i.
std::vector<double> cumulative_radial_integral(const RadialField& g, int n);

// Raises DomainError unless the grid is strictly increasing with r_0 >= 1e-12 and values finite.
void validate_field(const RadialField& f);

} // namespace riesz
