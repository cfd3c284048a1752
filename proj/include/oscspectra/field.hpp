#pragma once

#include <functional>
#include <span>
#include <stdexcept>
#include <vector>

namespace oscspectra {

/// A real-valued function on R^n given as a pure point evaluator.
struct ScalarField {
    int n = 1;
    std::function<double(std::span<double const>)> eval;

    double operator()(std::span<double const> x) const { return eval(x); }
    double operator()(std::vector<double> const& x) const { return eval(std::span<double const>(x)); }
};

/// A radial profile f0(r), r >= 0.
using RadialFunction = std::function<double(double)>;

/// A harmonic polynomial homogeneous of the given degree.
struct SolidHarmonic {
    int n = 1;
    int degree = 0;
    std::function<double(std::span<double const>)> eval;
};

}  // namespace oscspectra
