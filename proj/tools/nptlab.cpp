// nptlab: construct the candidate state families, certify NPT/PPT properties,
// search for Schmidt-rank-2 distillability witnesses, check the null-space
// rank property, and tabulate the Hilbert-Schmidt geometry.
#include <chrono>
#include <cmath>
#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "nptlab/io.hpp"
#include "nptlab/kernels.hpp"
#include "nptlab/parallel.hpp"

namespace {

using namespace nptlab;
using io::ojson;

struct CommonOut {
    std::string out_path;  // empty -> stdout
};

void emit(const CommonOut& where, const ojson& artifact) {
    std::string text = artifact.dump(2);
    text.push_back('\n');
    if (where.out_path.empty()) {
        std::cout << text;
    } else {
        io::write_text_file(where.out_path, text);
    }
}

void emit_csv(const CommonOut& where, const std::string& csv) {
    if (where.out_path.empty()) {
        std::cout << csv;
    } else {
        io::write_text_file(where.out_path, csv);
    }
}

ojson envelope(const std::string& command, ojson config, ojson result) {
    ojson j;
    j["tool"] = "nptlab";
    j["version"] = io::kToolVersion;
    j["schema"] = command + "-report/" + io::kSchemaVersion;
    config["command"] = command;
    if (!config.contains("seed")) config["seed"] = 0;  // reproducibility header contract
    j["config"] = std::move(config);
    j["result"] = std::move(result);
    return j;
}

constructions::ConstructionSpec load_spec(const std::string& path) {
    return io::spec_from_json(io::read_json_file(path));
}

std::string verdict_for(const distill::SeesawResult& res,
                        const constructions::ConstructionSpec& spec, double eps,
                        const qcore::PptResult& ppt, std::string* detail) {
    if (res.value < -1e-10) {
        distill::VerifyResult v = distill::certificate_verify(res, spec, eps);
        if (v.ok) return "NPT-distillable-certified";
        *detail = v.reason;
        return "no-witness-found";
    }
    if (ppt.ppt) return "PPT";
    return "no-witness-found";
}

int run_cli(int argc, char** argv) {
    CLI::App app{
        "numerical lab for NPT undistillable state families\n"
        "env: NPTLAB_THREADS caps internal parallelism; NPTLAB_SIMD=scalar|avx2 forces a kernel set"};
    app.set_version_flag("--version", std::string("nptlab ") + io::kToolVersion + " (schema " +
                                          io::kSchemaVersion + ")");
    app.require_subcommand(1);

    // ---- construct ----
    auto* c_construct = app.add_subcommand("construct", "build sigma, phi and rho(eps)");
    std::string construct_spec, construct_out;
    double construct_eps = -1.0;
    c_construct->add_option("--spec", construct_spec, "construction spec JSON")->required();
    c_construct->add_option("--eps", construct_eps, "epsilon override (default: spec epsilon)");
    c_construct->add_option("--out", construct_out, "output path (default stdout)");

    // ---- ppt-check ----
    auto* c_ppt = app.add_subcommand("ppt-check", "min PT eigenvalue of rho(eps) or a raw operator");
    std::string ppt_spec, ppt_in, ppt_out;
    double ppt_eps = -1.0, ppt_tol = tol::kPpt;
    c_ppt->add_option("--spec", ppt_spec, "construction spec JSON");
    c_ppt->add_option("--in", ppt_in, "operator JSON (alternative to --spec)");
    c_ppt->add_option("--eps", ppt_eps, "epsilon override");
    c_ppt->add_option("--tol", ppt_tol, "PPT tolerance");
    c_ppt->add_option("--out", ppt_out, "output path");

    // ---- witness ----
    auto* c_wit = app.add_subcommand("witness", "witness value of phi against rho(eps)");
    std::string wit_spec, wit_out;
    double wit_eps = -1.0;
    c_wit->add_option("--spec", wit_spec, "construction spec JSON")->required();
    c_wit->add_option("--eps", wit_eps, "epsilon override");
    c_wit->add_option("--out", wit_out, "output path");

    // ---- seesaw ----
    auto* c_ss = app.add_subcommand("seesaw", "minimize over Schmidt-rank-2 vectors");
    std::string ss_spec, ss_out;
    double ss_eps = -1.0;
    int ss_copies = 1;
    distill::SeesawOptions ss_opts;
    c_ss->add_option("--spec", ss_spec, "construction spec JSON")->required();
    c_ss->add_option("--eps", ss_eps, "epsilon override");
    c_ss->add_option("--copies", ss_copies, "number of copies n");
    c_ss->add_option("--restarts", ss_opts.restarts, "random restarts");
    c_ss->add_option("--max-iters", ss_opts.max_iters, "max see-saw iterations per restart");
    c_ss->add_option("--conv-tol", ss_opts.conv_tol, "objective convergence tolerance");
    c_ss->add_option("--seed", ss_opts.seed, "RNG seed");
    c_ss->add_option("--size-cap", ss_opts.size_cap, "max total dimension");
    c_ss->add_option("--out", ss_out, "output path");

    // ---- threshold ----
    auto* c_th = app.add_subcommand("threshold", "bisect for the undistillability threshold");
    std::string th_spec, th_out;
    int th_copies = 1, th_grid = 10;
    distill::SeesawOptions th_opts;
    c_th->add_option("--spec", th_spec, "construction spec JSON")->required();
    c_th->add_option("--copies", th_copies, "number of copies n");
    c_th->add_option("--grid", th_grid, "initial bracket resolution");
    c_th->add_option("--restarts", th_opts.restarts, "random restarts per estimate");
    c_th->add_option("--max-iters", th_opts.max_iters, "max see-saw iterations per restart");
    c_th->add_option("--seed", th_opts.seed, "RNG seed");
    c_th->add_option("--size-cap", th_opts.size_cap, "max total dimension");
    c_th->add_option("--out", th_out, "output path");

    // ---- lemma1 ----
    auto* c_l1 = app.add_subcommand("lemma1", "two-row-deleted rank checks of the coefficient system");
    int l1_k = 3, l1_copies = 2, l1_trials = 100;
    uint64_t l1_seed = 0;
    long l1_limit = 5000;
    double l1_tol = tol::kRank;
    std::string l1_out;
    c_l1->add_option("--k", l1_k, "Schmidt rank k");
    c_l1->add_option("--copies", l1_copies, "number of copies n");
    c_l1->add_option("--trials", l1_trials, "random unitary draws");
    c_l1->add_option("--seed", l1_seed, "RNG seed");
    c_l1->add_option("--exhaustive-limit", l1_limit, "max pairs before sampling");
    c_l1->add_option("--tol", l1_tol, "rank tolerance");
    c_l1->add_option("--out", l1_out, "output path");

    // ---- geometry ----
    auto* c_geo = app.add_subcommand("geometry", "shell radii and measured distances");
    int geo_d = 3, geo_k = 3;
    std::string geo_out, geo_format = "csv";
    c_geo->add_option("--d", geo_d, "local dimension d");
    c_geo->add_option("--k", geo_k, "block Schmidt rank k");
    c_geo->add_option("--format", geo_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    c_geo->add_option("--out", geo_out, "output path");

    // ---- compare-dur ----
    auto* c_dur = app.add_subcommand("compare-dur", "PT operator against the reference family");
    int dur_d = 3;
    std::string dur_out;
    c_dur->add_option("--d", dur_d, "local dimension d");
    c_dur->add_option("--out", dur_out, "output path");

    // ---- sweep ----
    auto* c_sw = app.add_subcommand("sweep", "f-estimates over an epsilon grid (CSV)");
    std::string sw_spec, sw_out, sw_grid = "0:1:0.1";
    int sw_copies = 1;
    distill::SeesawOptions sw_opts;
    c_sw->add_option("--spec", sw_spec, "construction spec JSON")->required();
    c_sw->add_option("--copies", sw_copies, "number of copies n");
    c_sw->add_option("--eps-grid", sw_grid, "grid as start:stop:step");
    c_sw->add_option("--restarts", sw_opts.restarts, "random restarts per estimate");
    c_sw->add_option("--seed", sw_opts.seed, "RNG seed");
    c_sw->add_option("--size-cap", sw_opts.size_cap, "max total dimension");
    c_sw->add_option("--out", sw_out, "output path");

    CLI11_PARSE(app, argc, argv);

    const auto t0 = std::chrono::steady_clock::now();
    std::string command;

    if (c_construct->parsed()) {
        command = "construct";
        constructions::ConstructionSpec spec = load_spec(construct_spec);
        const double eps = c_construct->count("--eps") ? construct_eps : spec.epsilon;
        ojson config;
        config["spec"] = io::to_json(spec);
        config["epsilon"] = eps;
        ojson result;
        ComplexOperator rho = constructions::build_state(spec, eps);
        if (spec.method != constructions::Method::Generalized) {
            constructions::ConstructedPair pair = constructions::construct_pair(spec);
            result["sigma"] = io::to_json(pair.sigma);
            result["phi"] = io::to_json(pair.phi);
            result["lambda_abs"] = pair.lambda_abs;
            result["ppt_sigma"] = io::to_json(qcore::is_ppt(pair.sigma), tol::kPpt);
        }
        result["rho"] = io::to_json(rho);
        result["ppt_rho"] = io::to_json(qcore::is_ppt(rho), tol::kPpt);
        emit({construct_out}, envelope(command, std::move(config), std::move(result)));
    } else if (c_ppt->parsed()) {
        command = "ppt-check";
        if (ppt_spec.empty() == ppt_in.empty())
            throw PreconditionError("ppt-check: provide exactly one of --spec or --in");
        ojson config;
        ComplexOperator op;
        double eps = 0.0;
        if (!ppt_spec.empty()) {
            constructions::ConstructionSpec spec = load_spec(ppt_spec);
            eps = c_ppt->count("--eps") ? ppt_eps : spec.epsilon;
            op = constructions::build_state(spec, eps);
            config["spec"] = io::to_json(spec);
            config["epsilon"] = eps;
        } else {
            op = io::operator_from_json(io::read_json_file(ppt_in));
            config["input"] = ppt_in;
        }
        config["tol"] = ppt_tol;
        emit({ppt_out},
             envelope(command, std::move(config), io::to_json(qcore::is_ppt(op, ppt_tol), ppt_tol)));
    } else if (c_wit->parsed()) {
        command = "witness";
        constructions::ConstructionSpec spec = load_spec(wit_spec);
        const double eps = c_wit->count("--eps") ? wit_eps : spec.epsilon;
        ojson config;
        config["spec"] = io::to_json(spec);
        config["epsilon"] = eps;
        ojson result;
        ComplexOperator rho = constructions::build_state(spec, eps);
        if (spec.method == constructions::Method::Generalized) {
            auto phis = constructions::generalized_block_states(spec.schmidt_coeffs, spec.d1);
            ojson values = ojson::array();
            for (const auto& phi : phis) values.push_back(qcore::witness_value(phi, rho));
            result["block_witness_values"] = std::move(values);
        } else {
            constructions::ConstructedPair pair = constructions::construct_pair(spec);
            const double v = qcore::witness_value(pair.phi, rho);
            result["lambda_abs"] = pair.lambda_abs;
            result["witness_value"] = v;
            result["expected"] = -eps * pair.lambda_abs;
            result["deviation"] = std::abs(v + eps * pair.lambda_abs);
        }
        emit({wit_out}, envelope(command, std::move(config), std::move(result)));
    } else if (c_ss->parsed()) {
        command = "seesaw";
        constructions::ConstructionSpec spec = load_spec(ss_spec);
        const double eps = c_ss->count("--eps") ? ss_eps : spec.epsilon;
        ojson config;
        config["spec"] = io::to_json(spec);
        config["epsilon"] = eps;
        config["copies"] = ss_copies;
        config["restarts"] = ss_opts.restarts;
        config["max_iters"] = ss_opts.max_iters;
        config["conv_tol"] = ss_opts.conv_tol;
        config["seed"] = ss_opts.seed;
        config["size_cap"] = ss_opts.size_cap;

        distill::SeesawResult res = distill::f_estimate(spec, eps, ss_copies, ss_opts);
        ComplexOperator rho = constructions::build_state(spec, eps);
        qcore::PptResult ppt = qcore::is_ppt(rho);
        std::string detail;
        const std::string verdict = verdict_for(res, spec, eps, ppt, &detail);

        ojson result;
        result["epsilon"] = eps;
        result["n"] = ss_copies;
        result["ppt_flags"]["rho_eps"] = io::to_json(ppt, tol::kPpt);
        result["seesaw"] = io::to_json(res);
        result["verdict"] = verdict;
        if (!detail.empty()) result["verdict_detail"] = detail;
        emit({ss_out}, envelope(command, std::move(config), std::move(result)));
    } else if (c_th->parsed()) {
        command = "threshold";
        constructions::ConstructionSpec spec = load_spec(th_spec);
        ojson config;
        config["spec"] = io::to_json(spec);
        config["copies"] = th_copies;
        config["grid"] = th_grid;
        config["restarts"] = th_opts.restarts;
        config["max_iters"] = th_opts.max_iters;
        config["conv_tol"] = th_opts.conv_tol;
        config["seed"] = th_opts.seed;
        config["size_cap"] = th_opts.size_cap;

        distill::ThresholdReport rep = distill::epsilon_threshold(spec, th_copies, th_opts, th_grid);
        ojson result = io::to_json(rep);
        if (rep.bracket_found) {
            distill::VerifyResult v =
                distill::certificate_verify(rep.certificate_at_hi, spec, rep.hi);
            result["certificate_verified"] = v.ok;
            if (!v.ok) result["certificate_problem"] = v.reason;
        }
        emit({th_out}, envelope(command, std::move(config), std::move(result)));
    } else if (c_l1->parsed()) {
        command = "lemma1";
        if (l1_trials < 1) throw PreconditionError("lemma1: trials must be >= 1");
        ojson config;
        config["k"] = l1_k;
        config["copies"] = l1_copies;
        config["trials"] = l1_trials;
        config["seed"] = l1_seed;
        config["exhaustive_limit"] = l1_limit;
        config["tol"] = l1_tol;

        ojson per_trial = ojson::array();
        double overall_min = -1.0;
        bool all_pass = true;
        long rows = 0, cols = 0;
        for (int t = 0; t < l1_trials; ++t) {
            Rng rng = Rng::substream(l1_seed, uint64_t(t));
            nullspace::LambdaMatrix lm = nullspace::random_lambda_matrix(l1_k, rng);
            nullspace::CoefficientMatrix cm = nullspace::coefficient_matrix(lm, l1_copies);
            nullspace::RankCheckReport rep =
                nullspace::two_deleted_rank_check(cm.a, l1_tol, l1_limit, l1_seed ^ uint64_t(t));
            rep.k = l1_k;
            rep.n = l1_copies;
            rows = rep.rows;
            cols = rep.cols;
            all_pass = all_pass && rep.pass;
            overall_min = overall_min < 0.0 ? rep.min_singular_value
                                            : std::min(overall_min, rep.min_singular_value);
            ojson row;
            row["trial"] = t;
            row["min_singular_value"] = rep.min_singular_value;
            row["pairs_tested"] = rep.pairs_tested;
            row["exhaustive"] = rep.exhaustive;
            row["pass"] = rep.pass;
            per_trial.push_back(std::move(row));
        }
        ojson result;
        result["k"] = l1_k;
        result["n"] = l1_copies;
        result["rows"] = rows;
        result["cols"] = cols;
        result["per_trial"] = std::move(per_trial);
        result["overall_min_singular_value"] = overall_min;
        result["all_pass"] = all_pass;
        emit({l1_out}, envelope(command, std::move(config), std::move(result)));
    } else if (c_geo->parsed()) {
        command = "geometry";
        if (geo_k < 3) throw PreconditionError("geometry: k must be >= 3");
        if (geo_d < geo_k) throw PreconditionError("geometry: need d >= k");
        constructions::ConstructionSpec spec;
        spec.method = constructions::Method::Generalized;
        spec.d1 = spec.d2 = geo_d;
        spec.block_count = geo_d / geo_k;
        spec.schmidt_coeffs.assign(spec.block_count,
                                   std::vector<double>(geo_k, 1.0 / std::sqrt(double(geo_k))));
        geometry::GeometryReport rep = geometry::distance_report(spec);
        if (geo_format == "json") {
            ojson config;
            config["d"] = geo_d;
            config["k"] = geo_k;
            emit({geo_out}, envelope(command, std::move(config), io::to_json(rep)));
        } else {
            std::ostringstream csv;
            csv << "d,k,m,D,r_m,gurvits,measured\n";
            for (const auto& row : rep.radii) {
                double measured = 0.0;
                for (const auto& mr : rep.measured)
                    if (mr.m == row.m) measured = mr.measured;
                csv << rep.d << ',' << rep.k << ',' << row.m << ',' << rep.D << ','
                    << io::format_double(row.r_m) << ',' << io::format_double(rep.gurvits) << ','
                    << io::format_double(measured) << '\n';
            }
            emit_csv({geo_out}, csv.str());
        }
    } else if (c_dur->parsed()) {
        command = "compare-dur";
        constructions::ConstructionSpec spec;
        spec.method = constructions::Method::Dur;
        spec.d1 = spec.d2 = dur_d;
        constructions::ConstructedPair pair = constructions::construct_pair(spec);
        ComplexOperator rho0 = constructions::build_rho(pair.sigma, pair.phi, 0.0);
        ComplexOperator pt = qcore::partial_transpose(rho0);
        ComplexOperator ref = constructions::dur_pt_operator(dur_d);
        double max_dev = 0.0;
        for (size_t i = 0; i < pt.m.size(); ++i)
            max_dev = std::max(max_dev, std::abs(pt.m.data()[i] - ref.m.data()[i]));
        ojson config;
        config["d"] = dur_d;
        ojson result;
        result["max_entrywise_deviation"] = max_dev;
        result["within_tol"] = max_dev <= 1e-10;
        emit({dur_out}, envelope(command, std::move(config), std::move(result)));
    } else if (c_sw->parsed()) {
        command = "sweep";
        constructions::ConstructionSpec spec = load_spec(sw_spec);
        double start = 0.0, stop = 0.0, step = 0.0;
        {
            std::istringstream in(sw_grid);
            char c1 = 0, c2 = 0;
            if (!(in >> start >> c1 >> stop >> c2 >> step) || c1 != ':' || c2 != ':' ||
                step <= 0.0 || stop < start)
                throw PreconditionError("sweep: --eps-grid must be start:stop:step");
        }
        const int count = int(std::llround((stop - start) / step)) + 1;
        std::ostringstream csv;
        csv << "epsilon,n,f_estimate,witness_found,seed\n";
        for (int i = 0; i < count; ++i) {
            const double eps = start + i * step;
            distill::SeesawResult res = distill::f_estimate(spec, eps, sw_copies, sw_opts);
            csv << io::format_double(eps) << ',' << sw_copies << ','
                << io::format_double(res.value) << ',' << (res.value < -1e-10 ? 1 : 0) << ','
                << sw_opts.seed << '\n';
        }
        emit_csv({sw_out}, csv.str());
    }

    const auto t1 = std::chrono::steady_clock::now();
    const auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    std::cerr << "[nptlab] " << command << " completed in " << ms << " ms\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run_cli(argc, argv);
    } catch (const nptlab::PreconditionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const nptlab::NumericError& e) {
        std::cerr << "numeric failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
