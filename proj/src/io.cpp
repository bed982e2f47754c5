#include "nptlab/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace nptlab::io {

namespace {

ojson complex_to_json(cplx z) { return ojson::array({z.real(), z.imag()}); }

cplx complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw PreconditionError("expected a complex entry as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

int require_positive_int(const json& j, const char* field) {
    if (!j.contains(field) || !j[field].is_number_integer() || j[field].get<int>() <= 0)
        throw PreconditionError(std::string("field '") + field + "' must be a positive integer");
    return j[field].get<int>();
}

}  // namespace

ojson to_json(const ComplexOperator& op) {
    ojson j;
    j["dimA"] = op.dimA;
    j["dimB"] = op.dimB;
    ojson rows = ojson::array();
    for (int i = 0; i < op.dim(); ++i) {
        ojson row = ojson::array();
        for (int c = 0; c < op.dim(); ++c) row.push_back(complex_to_json(op.m(i, c)));
        rows.push_back(std::move(row));
    }
    j["matrix"] = std::move(rows);
    return j;
}

ComplexOperator operator_from_json(const json& j) {
    const int dA = require_positive_int(j, "dimA");
    const int dB = require_positive_int(j, "dimB");
    const int D = dA * dB;
    if (!j.contains("matrix") || !j["matrix"].is_array() || int(j["matrix"].size()) != D)
        throw PreconditionError("field 'matrix' must be a dimA*dimB sided square array");
    Matrix m(D, D);
    for (int r = 0; r < D; ++r) {
        const json& row = j["matrix"][r];
        if (!row.is_array() || int(row.size()) != D)
            throw PreconditionError("matrix row has the wrong length");
        for (int c = 0; c < D; ++c) m(r, c) = complex_from_json(row[c]);
    }
    return ComplexOperator(std::move(m), dA, dB);
}

ojson to_json(const BipartitePureState& psi) {
    ojson j;
    j["dimA"] = psi.dimA;
    j["dimB"] = psi.dimB;
    ojson vec = ojson::array();
    for (const cplx& z : psi.amp) vec.push_back(complex_to_json(z));
    j["vector"] = std::move(vec);
    return j;
}

BipartitePureState state_from_json(const json& j) {
    const int dA = require_positive_int(j, "dimA");
    const int dB = require_positive_int(j, "dimB");
    if (!j.contains("vector") || !j["vector"].is_array() ||
        int(j["vector"].size()) != dA * dB)
        throw PreconditionError("field 'vector' must be an array of length dimA*dimB");
    std::vector<cplx> amp(size_t(dA) * dB);
    for (int i = 0; i < dA * dB; ++i) amp[i] = complex_from_json(j["vector"][i]);
    return BipartitePureState(std::move(amp), dA, dB);
}

ojson to_json(const constructions::ConstructionSpec& spec) {
    ojson j;
    j["method"] = constructions::method_name(spec.method);
    j["d1"] = spec.d1;
    j["d2"] = spec.d2;
    ojson coeffs = ojson::array();
    for (const auto& v : spec.schmidt_coeffs) coeffs.push_back(v);
    j["schmidt_coeffs"] = std::move(coeffs);
    ojson weights = ojson::array();
    for (const auto& w : spec.mixing_weights)
        weights.push_back(ojson::array({w.i, w.j, w.w}));
    j["mixing_weights"] = std::move(weights);
    j["alpha"] = spec.alpha;
    j["pair"] = ojson::array({spec.pair_i, spec.pair_j});
    j["block_count"] = spec.block_count;
    j["epsilon"] = spec.epsilon;
    return j;
}

constructions::ConstructionSpec spec_from_json(const json& j) {
    constructions::ConstructionSpec spec;
    if (!j.contains("method") || !j["method"].is_string())
        throw PreconditionError("spec: field 'method' must be a string");
    spec.method = constructions::method_from_name(j["method"].get<std::string>());
    spec.d1 = require_positive_int(j, "d1");
    spec.d2 = require_positive_int(j, "d2");
    spec.schmidt_coeffs.clear();
    if (j.contains("schmidt_coeffs")) {
        if (!j["schmidt_coeffs"].is_array())
            throw PreconditionError("spec: 'schmidt_coeffs' must be an array of vectors");
        for (const json& v : j["schmidt_coeffs"]) {
            if (!v.is_array()) throw PreconditionError("spec: coefficient vectors must be arrays");
            std::vector<double> vec;
            for (const json& x : v) {
                if (!x.is_number()) throw PreconditionError("spec: coefficients must be numbers");
                vec.push_back(x.get<double>());
            }
            spec.schmidt_coeffs.push_back(std::move(vec));
        }
    }
    if (j.contains("mixing_weights")) {
        if (!j["mixing_weights"].is_array())
            throw PreconditionError("spec: 'mixing_weights' must be an array of [i, j, w]");
        for (const json& t : j["mixing_weights"]) {
            if (!t.is_array() || t.size() != 3)
                throw PreconditionError("spec: each mixing weight must be [i, j, w]");
            constructions::PairWeight pw;
            pw.i = t[0].get<int>();
            pw.j = t[1].get<int>();
            pw.w = t[2].get<double>();
            spec.mixing_weights.push_back(pw);
        }
    }
    if (j.contains("alpha")) spec.alpha = j["alpha"].get<double>();
    if (j.contains("pair")) {
        if (!j["pair"].is_array() || j["pair"].size() != 2)
            throw PreconditionError("spec: 'pair' must be [i, j]");
        spec.pair_i = j["pair"][0].get<int>();
        spec.pair_j = j["pair"][1].get<int>();
    }
    if (j.contains("block_count")) spec.block_count = j["block_count"].get<int>();
    if (j.contains("epsilon")) spec.epsilon = j["epsilon"].get<double>();
    spec.validate();
    return spec;
}

ojson to_json(const distill::SeesawResult& res) {
    ojson j;
    j["value"] = res.value;
    j["certified_negative"] = res.value < -1e-10;
    j["witness"] = to_json(res.witness);
    j["n_copies"] = res.n_copies;
    if (res.epsilon) j["epsilon"] = *res.epsilon;
    j["best_restart"] = res.best_restart;
    j["iterations_per_restart"] = res.iterations_per_restart;
    ojson conv = ojson::array();
    for (bool b : res.converged) conv.push_back(b);
    j["converged"] = std::move(conv);
    ojson traces = ojson::array();
    for (const auto& t : res.traces) traces.push_back(t);
    j["traces"] = std::move(traces);
    return j;
}

ojson to_json(const distill::ThresholdReport& rep) {
    ojson j;
    j["n"] = rep.n;
    j["bracket_found"] = rep.bracket_found;
    if (rep.bracket_found) {
        j["lo"] = rep.lo;
        j["hi"] = rep.hi;
        j["certificate_at_hi"] = to_json(rep.certificate_at_hi);
    } else {
        j["note"] = "no distillability detected anywhere on the grid";
    }
    ojson trace = ojson::array();
    for (const auto& [eps, f] : rep.search_trace) trace.push_back(ojson::array({eps, f}));
    j["search_trace"] = std::move(trace);
    return j;
}

ojson to_json(const nullspace::RankCheckReport& rep) {
    ojson j;
    j["k"] = rep.k;
    j["n"] = rep.n;
    j["rows"] = rep.rows;
    j["cols"] = rep.cols;
    j["pairs_tested"] = rep.pairs_tested;
    j["exhaustive"] = rep.exhaustive;
    j["min_singular_value"] = rep.min_singular_value;
    j["max_singular_value"] = rep.max_singular_value;
    j["pass"] = rep.pass;
    return j;
}

ojson to_json(const geometry::GeometryReport& rep) {
    ojson j;
    j["d"] = rep.d;
    j["k"] = rep.k;
    j["D"] = rep.D;
    j["gurvits"] = rep.gurvits;
    ojson radii = ojson::array();
    for (const auto& r : rep.radii) {
        ojson row;
        row["m"] = r.m;
        row["r_m"] = r.r_m;
        radii.push_back(std::move(row));
    }
    j["radii"] = std::move(radii);
    ojson measured = ojson::array();
    for (const auto& r : rep.measured) {
        ojson row;
        row["m"] = r.m;
        row["measured"] = r.measured;
        row["predicted"] = r.predicted;
        measured.push_back(std::move(row));
    }
    j["measured"] = std::move(measured);
    ojson trend = ojson::array();
    for (const auto& t : rep.trend) {
        ojson row;
        row["d"] = t.d;
        row["D"] = t.D;
        row["m"] = t.m;
        row["r_m"] = t.r_m;
        row["gurvits"] = t.gurvits;
        row["scaled_ratio"] = t.scaled_ratio;
        trend.push_back(std::move(row));
    }
    j["trend"] = std::move(trend);
    return j;
}

ojson to_json(const qcore::PptResult& res, double tol) {
    ojson j;
    j["ppt"] = res.ppt;
    j["min_pt_eigenvalue"] = res.min_eigenvalue;
    j["tol"] = tol;
    return j;
}

namespace {

bool type_matches(const std::string& t, const json& doc) {
    if (t == "object") return doc.is_object();
    if (t == "array") return doc.is_array();
    if (t == "string") return doc.is_string();
    if (t == "number") return doc.is_number();
    if (t == "integer") return doc.is_number_integer();
    if (t == "boolean") return doc.is_boolean();
    if (t == "null") return doc.is_null();
    return false;
}

void validate_node(const json& schema, const json& doc, const std::string& path,
                   std::vector<std::string>& errs) {
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(t.get<std::string>(), doc);
        } else if (t.is_array()) {
            for (const json& alt : t)
                if (type_matches(alt.get<std::string>(), doc)) ok = true;
        }
        if (!ok) {
            errs.push_back(path + ": type mismatch (expected " + t.dump() + ")");
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const json& alt : schema["enum"])
            if (alt == doc) ok = true;
        if (!ok) errs.push_back(path + ": value not in enum");
    }
    if (doc.is_object()) {
        if (schema.contains("required"))
            for (const json& req : schema["required"])
                if (!doc.contains(req.get<std::string>()))
                    errs.push_back(path + ": missing required field '" + req.get<std::string>() +
                                   "'");
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (doc.contains(it.key()))
                    validate_node(it.value(), doc[it.key()], path + "/" + it.key(), errs);
    }
    if (doc.is_array() && schema.contains("items")) {
        for (size_t i = 0; i < doc.size(); ++i)
            validate_node(schema["items"], doc[i], path + "[" + std::to_string(i) + "]", errs);
    }
}

}  // namespace

std::vector<std::string> validate_schema(const json& schema, const json& doc) {
    std::vector<std::string> errs;
    validate_node(schema, doc, "$", errs);
    return errs;
}

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("cannot open file: " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw PreconditionError("malformed JSON in " + path + ": " + e.what());
    }
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw PreconditionError("cannot write file: " + path);
    out << content;
    if (!out) throw PreconditionError("write failed: " + path);
}

std::string format_double(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) return "0";
    return std::string(buf, p);
}

}  // namespace nptlab::io
