#pragma once

#include <vector>

#include "subdiff/errors.hpp"

namespace subdiff {

// Uniform partition of [0, T] into M steps (M+1 nodes).
struct TimeGrid {
    double T = 1.0;
    int M = 1;

    TimeGrid() = default;
    TimeGrid(double horizon, int steps) : T(horizon), M(steps) {
        if (!(T > 0.0)) throw DomainError("TimeGrid: T must be positive");
        if (M < 1) throw DomainError("TimeGrid: M must be >= 1");
    }

    double dt() const { return T / M; }
    // node(M) == T exactly; no accumulated increment error.
    double node(int m) const { return (T * m) / M; }

    friend bool operator==(const TimeGrid& a, const TimeGrid& b) {
        return a.T == b.T && a.M == b.M;
    }
};

// Samples of a scalar function at the nodes of a TimeGrid.
struct GridFunction {
    TimeGrid grid;
    std::vector<double> values; // size M+1, values[m] at grid.node(m)

    GridFunction() = default;
    GridFunction(TimeGrid g, std::vector<double> v) : grid(g), values(std::move(v)) {
        if (values.size() != static_cast<size_t>(grid.M) + 1)
            throw ShapeError("GridFunction: values must have M+1 entries");
    }
};

} // namespace subdiff
