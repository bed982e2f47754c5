#include "nptlab/geometry.hpp"

#include <cmath>

#include "nptlab/qcore.hpp"

namespace nptlab::geometry {

double shell_radius(int D, int m) {
    if (D < 2) throw PreconditionError("shell_radius: D must be >= 2");
    if (m < 1 || m >= D) throw PreconditionError("shell_radius: need 1 <= m < D");
    return std::sqrt(double(m) / (double(D) * double(D - m)));
}

double gurvits_radius(int D) {
    if (D < 4) throw PreconditionError("gurvits_radius: D must be >= 4");
    return 1.0 / std::sqrt(double(D) * double(D - 1));
}

namespace {

ComplexOperator maximally_mixed(int dA, int dB) {
    ComplexOperator op = ComplexOperator::zero(dA, dB);
    const double f = 1.0 / op.dim();
    for (int i = 0; i < op.dim(); ++i) op.m(i, i) = f;
    return op;
}

// uniform-coefficient generalized spec with m blocks of rank k in d (x) d
constructions::ConstructionSpec uniform_blocks_spec(int d, int k, int m) {
    constructions::ConstructionSpec s;
    s.method = constructions::Method::Generalized;
    s.d1 = s.d2 = d;
    s.block_count = m;
    s.schmidt_coeffs.assign(m, std::vector<double>(k, 1.0 / std::sqrt(double(k))));
    return s;
}

}  // namespace

GeometryReport distance_report(const constructions::ConstructionSpec& spec) {
    spec.validate();
    GeometryReport rep;
    rep.d = spec.d1;
    const int D = spec.d1 * spec.d2;
    rep.D = D;

    int k = 0, blocks = 1;
    switch (spec.method) {
        case constructions::Method::MethodI:
        case constructions::Method::MethodII:
            k = spec.method == constructions::Method::MethodI
                    ? 3  // antisymmetric pair plus the product tail
                    : int(spec.schmidt_coeffs[0].size());
            break;
        case constructions::Method::Generalized:
            k = int(spec.schmidt_coeffs[0].size());
            blocks = spec.block_count;
            break;
        case constructions::Method::Dur:
            k = spec.d1;
            break;
    }
    rep.k = k;

    const int m_max = std::max(1, spec.d1 / k);
    for (int m = 1; m <= m_max; ++m) rep.radii.push_back({m, shell_radius(D, m)});
    rep.gurvits = gurvits_radius(D);

    // measured distance of the construction's own endpoint
    {
        ComplexOperator rho0 = constructions::build_state(spec, 0.0);
        MeasuredRow row;
        row.m = blocks;
        row.measured = qcore::hs_distance(rho0, maximally_mixed(spec.d1, spec.d2));
        row.predicted = shell_radius(D, blocks);
        if (std::abs(row.measured - row.predicted) > 1e-10)
            throw NumericError("distance_report: measured distance deviates from the closed form");
        rep.measured.push_back(row);
    }
    // remaining block counts for generalized families at this (d, k)
    if (spec.d1 == spec.d2 && k >= 3) {
        for (int m = 1; m <= spec.d1 / k; ++m) {
            if (m == blocks) continue;
            constructions::ConstructionSpec s = uniform_blocks_spec(spec.d1, k, m);
            ComplexOperator rho0 = constructions::build_state(s, 0.0);
            MeasuredRow row;
            row.m = m;
            row.measured = qcore::hs_distance(rho0, maximally_mixed(s.d1, s.d2));
            row.predicted = shell_radius(D, m);
            if (std::abs(row.measured - row.predicted) > 1e-10)
                throw NumericError(
                    "distance_report: measured distance deviates from the closed form");
            rep.measured.push_back(row);
        }
    }

    for (int d : {3, 6, 9}) {
        TrendRow tr;
        tr.d = d;
        tr.D = d * d;
        tr.m = d / 3;
        tr.r_m = shell_radius(tr.D, tr.m);
        tr.gurvits = gurvits_radius(tr.D);
        tr.scaled_ratio = (tr.r_m / tr.gurvits) / std::pow(double(tr.D), 0.25);
        rep.trend.push_back(tr);
    }
    return rep;
}

}  // namespace nptlab::geometry
