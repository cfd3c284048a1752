#pragma once

// Named test functions for the command line and the verification suites.
//
//   gauss                       e^{-|x|^2}
//   bump                        exp(-1/(1-|x|^2)) on |x| < 1
//   truncgauss                  e^{-|x|^2} on |x| < 1
//   hermite:gamma=(g1,...,gn)   h_gamma
//   polar:k=K,s=S,j=J           phi_{K,S,J}
//   hecke:M=M,K=K,f0=gauss|poly f0(|x|) Y(x), Y the normalized sum of the
//                               degree-M basis; f0 = e^{-r^2} or (1 + r^2/2) e^{-4r^2/5}

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>

#include "oscspectra/field.hpp"

namespace oscspectra {

struct CatalogError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct HeckeSpec {
    int M;
    int K;
    RadialFunction f0;
    SolidHarmonic Y;
};

struct CatalogEntry {
    std::string id;
    ScalarField field;
    std::optional<int> natural_level;  // level where the function lives or is probed
    std::optional<HeckeSpec> hecke;
    std::optional<double> support_radius;
};

/// Throws CatalogError for unknown or malformed ids and ids that do not fit n.
CatalogEntry make_catalog_entry(std::string const& id, int n);

/// Grid file: CSV with header x1,...,xn,value on a full rectilinear grid.
/// The field interpolates multilinearly inside the grid and is 0 outside.
/// Throws CatalogError on schema violations.
ScalarField load_grid_field(std::istream& in, int n);

}  // namespace oscspectra
