#pragma once

#include <vector>

#include "nptlab/constructions.hpp"
#include "nptlab/types.hpp"

// Hilbert-Schmidt geometry of the construction families: shell radii around
// the maximally mixed state and the separable-ball comparison.
namespace nptlab::geometry {

// sqrt(m / (D (D - m))): distance of I/D from a normalized (D-m)-dim projector.
double shell_radius(int D, int m);

// 1 / sqrt(D (D - 1)): radius of the largest separable ball around I/D.
double gurvits_radius(int D);

struct ShellRow {
    int m = 0;
    double r_m = 0.0;
};

struct MeasuredRow {
    int m = 0;               // blocks in the construction
    double measured = 0.0;   // HS distance of rho(0) from I/D
    double predicted = 0.0;  // shell_radius(D, m)
};

struct TrendRow {
    int d = 0;
    int D = 0;
    int m = 0;  // floor(d/3)
    double r_m = 0.0;
    double gurvits = 0.0;
    // (r_m / gurvits) / D^(1/4); the growth of the maximal shell relative to
    // the separable ball, flat across d when the growth law holds
    double scaled_ratio = 0.0;
};

struct GeometryReport {
    int d = 0, k = 0, D = 0;
    std::vector<ShellRow> radii;  // m = 1 .. floor(d/k)
    double gurvits = 0.0;
    std::vector<MeasuredRow> measured;
    std::vector<TrendRow> trend;  // d in {3, 6, 9}, k = 3
};

// Builds the family endpoint(s) rho(0), measures HS distances to I/D, checks
// them against the closed form within 1e-10, and tabulates the trend rows.
GeometryReport distance_report(const constructions::ConstructionSpec& spec);

}  // namespace nptlab::geometry
