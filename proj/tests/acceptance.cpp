// Acceptance suite: every claim the library is expected to certify, one
// pass/fail line per criterion. Exit status is the number of failures.
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "nptlab/distill.hpp"
#include "nptlab/geometry.hpp"
#include "nptlab/io.hpp"
#include "nptlab/kernels.hpp"
#include "nptlab/nullspace.hpp"
#include "nptlab/qcore.hpp"
#include "nptlab/rng.hpp"

using namespace nptlab;
namespace fs = std::filesystem;

namespace {

struct Criterion {
    int id;
    std::string label;
    std::function<std::string()> run;  // empty string = pass, else failure detail
};

// ---------- shared helpers ----------

BipartitePureState diagonal_state(const std::vector<double>& lam, int d1, int d2) {
    std::vector<cplx> amp(size_t(d1) * d2, cplx(0, 0));
    for (size_t i = 0; i < lam.size(); ++i) amp[i * d2 + i] = lam[i];
    return BipartitePureState(std::move(amp), d1, d2);
}

std::vector<double> random_coeffs(int k, Rng& rng) {
    std::vector<double> v(k);
    double n2 = 0.0;
    for (double& x : v) {
        x = rng.uniform(0.25, 1.0);
        n2 += x * x;
    }
    for (double& x : v) x /= std::sqrt(n2);
    return v;
}

BipartitePureState rotate_state(const BipartitePureState& psi, Rng& rng) {
    Matrix ua = linalg::random_unitary(psi.dimA, rng);
    Matrix ub = linalg::random_unitary(psi.dimB, rng);
    std::vector<cplx> amp(psi.amp.size(), cplx(0, 0));
    for (int a = 0; a < psi.dimA; ++a)
        for (int b = 0; b < psi.dimB; ++b) {
            cplx acc(0, 0);
            for (int ap = 0; ap < psi.dimA; ++ap)
                for (int bp = 0; bp < psi.dimB; ++bp)
                    acc += ua(a, ap) * ub(b, bp) * psi.at(ap, bp);
            amp[size_t(a) * psi.dimB + b] = acc;
        }
    qcore::normalize(amp);
    return BipartitePureState(std::move(amp), psi.dimA, psi.dimB);
}

constructions::ConstructionSpec uniform_method_two(int d) {
    constructions::ConstructionSpec spec;
    spec.method = constructions::Method::MethodII;
    spec.d1 = spec.d2 = d;
    spec.schmidt_coeffs = {std::vector<double>(d, 1.0 / std::sqrt(double(d)))};
    return spec;
}

constructions::ConstructionSpec random_pair_spec(Rng& rng) {
    constructions::ConstructionSpec spec;
    const bool method_one = rng.u64() % 2 == 0;
    const int d = 3 + int(rng.u64() % 2);  // 3 or 4
    spec.d1 = spec.d2 = d;
    if (method_one) {
        spec.method = constructions::Method::MethodI;
        const int m = 2 + int(rng.u64() % (d - 2));  // 2 .. d-1
        spec.schmidt_coeffs = {random_coeffs(m, rng)};
        spec.pair_i = 0;
        spec.pair_j = 1 + int(rng.u64() % (m - 1));
        spec.alpha = rng.uniform(0.1, 0.9);
    } else {
        spec.method = constructions::Method::MethodII;
        const int k = 3 + int(rng.u64() % (d - 2));  // 3 .. d
        spec.schmidt_coeffs = {random_coeffs(k, rng)};
        std::vector<constructions::PairWeight> w;
        double total = 0.0;
        for (int i = 0; i < k; ++i)
            for (int j = i + 1; j < k; ++j) {
                const double x = rng.uniform(0.05, 1.0);
                w.push_back({i, j, x});
                total += x;
            }
        for (auto& pw : w) pw.w /= total;
        spec.mixing_weights = std::move(w);
    }
    return spec;
}

std::string cli_path() { return NPTLAB_CLI_PATH; }

int run_cli(const std::string& args) {
    const std::string cmd = cli_path() + " " + args + " 2>/dev/null >/dev/null";
    const int status = std::system(cmd.c_str());
    return status == -1 ? -1 : WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// ---------- criteria ----------

std::string criterion_pt_eigensystem_reconstruction() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(1001);
    for (int rep = 0; rep < 100; ++rep) {
        const int k = 2 + int(rng.u64() % 3);  // 2, 3, 4
        const int dA = k + int(rng.u64() % (5 - k));
        const int dB = k + int(rng.u64() % (5 - k));
        BipartitePureState phi = rotate_state(diagonal_state(random_coeffs(k, rng), dA, dB), rng);

        auto sys = constructions::pure_pt_eigensystem(phi);
        ComplexOperator rec = ComplexOperator::zero(dA, dB);
        for (const auto& p : sys) {
            if (p.value == 0.0) continue;
            for (int i = 0; i < rec.dim(); ++i)
                kern::axpy_conj(p.value * p.vector.amp[i], p.vector.amp.data(), rec.m.row(i),
                                rec.dim());
        }
        ComplexOperator direct = qcore::partial_transpose(qcore::projector(phi));
        double dev = 0.0;
        for (size_t i = 0; i < rec.m.size(); ++i)
            dev = std::max(dev, std::abs(rec.m.data()[i] - direct.m.data()[i]));
        if (dev > 1e-10)
            return "reconstruction deviation " + std::to_string(dev) + " at draw " +
                   std::to_string(rep);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 5.0) return "runtime " + std::to_string(secs) + " s exceeds 5 s";
    return "";
}

std::string criterion_witness_identity() {
    Rng rng(1002);
    for (int rep = 0; rep < 100; ++rep) {
        constructions::ConstructionSpec spec = random_pair_spec(rng);
        constructions::ConstructedPair pair = constructions::construct_pair(spec);
        for (double eps : {0.01, 0.1, 0.5, 1.0}) {
            ComplexOperator rho = constructions::build_rho(pair.sigma, pair.phi, eps);
            const double v = qcore::witness_value(pair.phi, rho);
            if (std::abs(v + eps * pair.lambda_abs) > 1e-10)
                return "identity off by " + std::to_string(std::abs(v + eps * pair.lambda_abs)) +
                       " at draw " + std::to_string(rep);
        }
    }
    return "";
}

std::string criterion_ppt_endpoint() {
    Rng rng(1003);
    // rho(0) for a random pair construction
    constructions::ConstructionSpec spec = random_pair_spec(rng);
    ComplexOperator rho0 = constructions::build_state(spec, 0.0);
    qcore::PptResult r1 = qcore::is_ppt(rho0);
    if (r1.min_eigenvalue < -1e-10)
        return "rho(0) min PT eigenvalue " + std::to_string(r1.min_eigenvalue);

    // rho_m(0) for d=6, k=3, m=2
    const double r3 = 1.0 / std::sqrt(3.0);
    std::vector<std::vector<double>> blocks = {{r3, r3, r3}, random_coeffs(3, rng)};
    ComplexOperator sigma = constructions::default_generalized_sigma(blocks, 6);
    ComplexOperator gm = constructions::generalized_rho(blocks, sigma, 0.0, 6);
    qcore::PptResult r2 = qcore::is_ppt(gm);
    if (r2.min_eigenvalue < -1e-10)
        return "rho_m(0) min PT eigenvalue " + std::to_string(r2.min_eigenvalue);
    return "";
}

std::string criterion_rank_property() {
    const auto t0 = std::chrono::steady_clock::now();
    Rng rng(1004);
    for (int trial = 0; trial < 100; ++trial) {
        nullspace::LambdaMatrix lm = nullspace::random_lambda_matrix(3, rng);
        nullspace::CoefficientMatrix cm = nullspace::coefficient_matrix(lm, 2);
        nullspace::RankCheckReport rep = nullspace::two_deleted_rank_check(cm.a);
        if (!rep.exhaustive || rep.pairs_tested != 36)
            return "(3,2) pair enumeration broke at trial " + std::to_string(trial);
        if (!(rep.min_singular_value > 1e-9))
            return "(3,2) min singular value " + std::to_string(rep.min_singular_value) +
                   " at trial " + std::to_string(trial);
    }
    for (int trial = 0; trial < 20; ++trial) {
        nullspace::LambdaMatrix lm = nullspace::random_lambda_matrix(3, rng);
        nullspace::CoefficientMatrix cm = nullspace::coefficient_matrix(lm, 3);
        nullspace::RankCheckReport rep = nullspace::two_deleted_rank_check(cm.a);
        if (!rep.exhaustive || rep.pairs_tested != 351)
            return "(3,3) pair enumeration broke at trial " + std::to_string(trial);
        if (!(rep.min_singular_value > 1e-9))
            return "(3,3) min singular value " + std::to_string(rep.min_singular_value) +
                   " at trial " + std::to_string(trial);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs >= 60.0) return "runtime " + std::to_string(secs) + " s exceeds 60 s";
    return "";
}

std::string criterion_count_identities() {
    Rng rng(1005);
    auto ipow = [](long b, int e) {
        long r = 1;
        while (e-- > 0) r *= b;
        return r;
    };
    for (int k : {3, 4, 5}) {
        nullspace::LambdaMatrix lm = nullspace::random_lambda_matrix(k, rng);
        for (int n : {1, 2, 3}) {
            nullspace::CoefficientMatrix cm = nullspace::coefficient_matrix(lm, n);
            const long rows = ipow(k, n), cols = ipow(k, n) - ipow(k - 1, n);
            if (cm.a.rows() != rows || cm.a.cols() != cols || !(rows > cols))
                return "count mismatch at k=" + std::to_string(k) + ", n=" + std::to_string(n);
        }
    }
    return "";
}

std::string criterion_nullspace_dimension() {
    Rng rng(1006);
    for (int n : {1, 2}) {
        BipartitePureState phi = diagonal_state(random_coeffs(3, rng), 3, 3);
        nullspace::NullspaceDimensions r = nullspace::nullspace_dimension_check(phi, n);
        if (r.measured != r.expected)
            return "d=3, n=" + std::to_string(n) + ": measured " + std::to_string(r.measured) +
                   " expected " + std::to_string(r.expected);
    }
    return "";
}

std::string criterion_seesaw_oracle() {
    Rng rng(1007);
    distill::SeesawOptions opts;
    opts.restarts = 64;
    for (int rep = 0; rep < 20; ++rep) {
        const int d = (rep % 2 == 0) ? 2 : 3;
        const double a = rng.uniform(0.35, 0.93);
        BipartitePureState psi =
            rotate_state(diagonal_state({a, std::sqrt(1.0 - a * a)}, d, d), rng);
        ComplexOperator m = qcore::partial_transpose(qcore::projector(psi));
        std::vector<double> ev = linalg::hermitian_eigenvalues(m.m);
        opts.seed = 40000 + rep;
        distill::SeesawResult r = distill::seesaw_min(m, opts);
        if (std::abs(r.value - ev.front()) > 1e-8)
            return "gap " + std::to_string(std::abs(r.value - ev.front())) + " at instance " +
                   std::to_string(rep);
        if (qcore::schmidt_rank(r.witness) > 2) return "witness rank exceeds 2";
    }
    return "";
}

std::string criterion_discussion_bound() {
    constructions::ConstructionSpec spec = uniform_method_two(3);
    distill::SeesawOptions opts;
    opts.seed = 777;
    for (int n : {1, 2, 3}) {
        distill::SeesawResult r = distill::f_estimate(spec, 0.0, n, opts);
        const double cap = std::pow(1.0 / 8.0, n) + 1e-9;
        if (r.value < -1e-10 || r.value > cap)
            return "n=" + std::to_string(n) + ": estimate " + std::to_string(r.value) +
                   " outside [-1e-10, " + std::to_string(cap) + "]";
    }
    return "";
}

std::string criterion_threshold() {
    constructions::ConstructionSpec spec = uniform_method_two(3);
    distill::SeesawOptions opts;
    opts.restarts = 64;
    opts.seed = 31337;
    distill::ThresholdReport rep = distill::epsilon_threshold(spec, 1, opts);
    if (!rep.bracket_found) return "no bracket found";
    if (!(rep.certificate_at_hi.value < -1e-10)) return "certificate at hi is not negative";
    distill::VerifyResult v = distill::certificate_verify(rep.certificate_at_hi, spec, rep.hi);
    if (!v.ok) return "certificate failed verification: " + v.reason;

    distill::SeesawResult at_lo = distill::f_estimate(spec, rep.lo, 1, opts);
    if (at_lo.value < -1e-10) return "witness found at lo";

    distill::SeesawOptions opts2 = opts;
    opts2.seed = 271828;
    distill::ThresholdReport rep2 = distill::epsilon_threshold(spec, 1, opts2);
    if (!rep2.bracket_found) return "no bracket with the second seed";
    if (std::abs(rep.hi - rep2.hi) >= 0.02)
        return "hi moved by " + std::to_string(std::abs(rep.hi - rep2.hi)) + " across seeds";
    return "";
}

std::string criterion_dur_equivalence() {
    for (int d : {3, 4}) {
        constructions::ConstructionSpec spec;
        spec.method = constructions::Method::Dur;
        spec.d1 = spec.d2 = d;
        constructions::ConstructedPair pair = constructions::construct_pair(spec);
        ComplexOperator pt =
            qcore::partial_transpose(constructions::build_rho(pair.sigma, pair.phi, 0.0));
        ComplexOperator ref = constructions::dur_pt_operator(d);
        double dev = 0.0;
        for (size_t i = 0; i < pt.m.size(); ++i)
            dev = std::max(dev, std::abs(pt.m.data()[i] - ref.m.data()[i]));
        if (dev > 1e-10) return "d=" + std::to_string(d) + ": deviation " + std::to_string(dev);
    }
    return "";
}

std::string criterion_geometry() {
    Rng rng(1011);
    for (int d : {3, 4}) {
        constructions::ConstructionSpec spec;
        spec.method = constructions::Method::MethodII;
        spec.d1 = spec.d2 = d;
        spec.schmidt_coeffs = {random_coeffs(3, rng)};
        ComplexOperator rho0 = constructions::build_state(spec, 0.0);
        ComplexOperator mixed = ComplexOperator::zero(d, d);
        for (int i = 0; i < d * d; ++i) mixed.m(i, i) = 1.0 / (d * d);
        const double dist = qcore::hs_distance(rho0, mixed);
        const double expect = geometry::gurvits_radius(d * d);
        if (std::abs(dist - expect) > 1e-12)
            return "d=" + std::to_string(d) + ": |measured - gurvits| = " +
                   std::to_string(std::abs(dist - expect));
    }
    // r_m table at d=6, k=3
    constructions::ConstructionSpec gen;
    gen.method = constructions::Method::Generalized;
    gen.d1 = gen.d2 = 6;
    gen.block_count = 2;
    const double r3 = 1.0 / std::sqrt(3.0);
    gen.schmidt_coeffs = {{r3, r3, r3}, {r3, r3, r3}};
    geometry::GeometryReport rep = geometry::distance_report(gen);
    const double want1 = std::sqrt(1.0 / (36.0 * 35.0));
    const double want2 = std::sqrt(2.0 / (36.0 * 34.0));
    if (rep.radii.size() != 2) return "radius table size";
    if (std::abs(rep.radii[0].r_m - want1) > 1e-12) return "r_1 closed form";
    if (std::abs(rep.radii[1].r_m - want2) > 1e-12) return "r_2 closed form";
    for (const auto& row : rep.measured)
        if (std::abs(row.measured - row.predicted) > 1e-10)
            return "measured distance deviates at m=" + std::to_string(row.m);
    return "";
}

std::string criterion_cli_determinism() {
    const fs::path tmp = fs::path(cli_path()).parent_path() / "acceptance_tmp";
    fs::create_directories(tmp);
    const fs::path spec = tmp / "spec.json";
    io::write_text_file(spec.string(),
                        R"({"method":"MethodII","d1":3,"d2":3,)"
                        R"("schmidt_coeffs":[[0.5773502691896258,0.5773502691896258,0.5773502691896257]]})"
                        "\n");
    const std::vector<std::pair<std::string, std::string>> runs = {
        {"seesaw --spec " + spec.string() + " --eps 0.3 --copies 2 --restarts 8 --seed 11",
         "ss.json"},
        {"threshold --spec " + spec.string() + " --copies 1 --restarts 8 --seed 11", "th.json"},
        {"lemma1 --k 3 --copies 2 --trials 5 --seed 11", "l1.json"},
        {"sweep --spec " + spec.string() + " --copies 1 --eps-grid 0:0.3:0.1 --restarts 4 --seed 11",
         "sw.csv"},
        {"geometry --d 6 --k 3", "geo.csv"},
    };
    for (const auto& [args, name] : runs) {
        const fs::path o1 = tmp / ("a_" + name), o2 = tmp / ("b_" + name);
        if (run_cli(args + " --out " + o1.string()) != 0) return "run failed: " + args;
        if (run_cli(args + " --out " + o2.string()) != 0) return "rerun failed: " + args;
        const std::string b1 = slurp(o1), b2 = slurp(o2);
        if (b1.empty()) return "empty artifact from: " + args;
        if (b1 != b2) return "byte mismatch for: " + args;
    }
    return "";
}

}  // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "analytic PT eigensystem reassembles PT(|phi><phi|) to 1e-10 (100 draws, <5s)",
         criterion_pt_eigensystem_reconstruction},
        {2, "witness identity <phi|rho^PT(eps)|phi> = -eps|Lambda| to 1e-10 (100 specs x 4 eps)",
         criterion_witness_identity},
        {3, "PPT endpoints: rho(0) and rho_m(0) (d=6,k=3,m=2) have min PT eigenvalue >= -1e-10",
         criterion_ppt_endpoint},
        {4, "two-row-deleted rank property: (3,2) x100 draws, (3,3) x20 exhaustive, <60s",
         criterion_rank_property},
        {5, "count identities rows=k^n, cols=k^n-(k-1)^n for k in {3,4,5}, n in {1,2,3}",
         criterion_count_identities},
        {6, "null-space dimension D^n-(D-1)^n for (d,n) in {(3,1),(3,2)}",
         criterion_nullspace_dimension},
        {7, "see-saw reaches the dense minimum on rank-2 PT operators (20 x 64 restarts, 1e-8)",
         criterion_seesaw_oracle},
        {8, "f(0,n) within [-1e-10, (1/(D-1))^n + 1e-9] for d=3, n in {1,2,3}",
         criterion_discussion_bound},
        {9, "threshold bracket with verified certificate at hi; hi stable to 0.02 across seeds",
         criterion_threshold},
        {10, "reference PT operator equals the family endpoint PT to 1e-10 for d in {3,4}",
         criterion_dur_equivalence},
        {11, "HS distance of rho(0) equals the separable-ball radius to 1e-12; r_m table d=6",
         criterion_geometry},
        {12, "CLI artifacts byte-identical across repeated runs with fixed config and seed",
         criterion_cli_determinism},
    };

    int failures = 0;
    for (const auto& c : criteria) {
        const auto t0 = std::chrono::steady_clock::now();
        std::string problem;
        try {
            problem = c.run();
        } catch (const std::exception& e) {
            problem = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        char timing[32];
        std::snprintf(timing, sizeof(timing), "%.2fs", secs);
        if (problem.empty()) {
            std::cout << "[PASS] criterion " << c.id << ": " << c.label << " (" << timing << ")\n";
        } else {
            ++failures;
            std::cout << "[FAIL] criterion " << c.id << ": " << c.label << " (" << timing
                      << ") -- " << problem << "\n";
        }
    }
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES: " + std::to_string(failures))
              << "\n";
    return failures;
}
