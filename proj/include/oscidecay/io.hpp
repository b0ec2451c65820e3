// Problem-file parsing and report serialisation. One JSON schema is shared by
// every subcommand; sections irrelevant to a given run are ignored.
//
//   {
//     "dimension": 2,
//     "polynomial": {"dimension": 2, "terms": [{"exponents": [1,1], "coeff": "1"}]},
//     "subspaces":  [{"basis": [["1", "0"]]}, {"basis": [["0", "1"]]}],
//     "cutoff":     {"center": [0, 0], "radius": 1.0, "order": 6},
//     "functions":  [{"kind": "constant_one"}, {"kind": "trig_polynomial", ...}],
//     "region":     {"lo": [0, 0], "hi": [1, 1]},
//     "epsilon":    0.01
//   }
//
// Coefficients are strings parsed as exact rationals ("p", "-p" or "p/q");
// plain JSON integers are accepted too.

#ifndef OSCIDECAY_IO_HPP
#define OSCIDECAY_IO_HPP

#include <fstream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "oscidecay/cutoff.hpp"
#include "oscidecay/degeneracy.hpp"
#include "oscidecay/sublevel.hpp"
#include "oscidecay/test_function.hpp"

namespace oscidecay {

using nlohmann::json;

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline Rational rational_from_json(const json& j) {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer()) return Rational((long)j.get<long long>());
    throw ParseError("coefficients must be rational strings or integers");
}

inline Polynomial polynomial_from_json(const json& j) {
    if (!j.is_object() || !j.contains("dimension") || !j.contains("terms"))
        throw ParseError("polynomial needs 'dimension' and 'terms'");
    const int dim = j.at("dimension").get<int>();
    if (dim < 1) throw ParseError("polynomial dimension must be positive");
    Polynomial p(dim);
    for (const auto& term : j.at("terms")) {
        auto exps = term.at("exponents").get<std::vector<int>>();
        if ((int)exps.size() != dim) throw ParseError("exponent vector length mismatch");
        for (int e : exps)
            if (e < 0) throw ParseError("negative exponent");
        p.add_term(Monomial(std::move(exps)), rational_from_json(term.at("coeff")));
    }
    return p;
}

inline json polynomial_to_json(const Polynomial& p) {
    json terms = json::array();
    for (const auto& [mono, c] : p.terms())
        terms.push_back({{"exponents", mono.exponents}, {"coeff", to_string(c)}});
    return {{"dimension", p.dimension()}, {"terms", terms}};
}

inline Subspace subspace_from_json(const json& j, int ambient) {
    if (!j.is_object() || !j.contains("basis")) throw ParseError("subspace needs 'basis'");
    std::vector<RatVector> basis;
    for (const auto& row : j.at("basis")) {
        RatVector v;
        for (const auto& entry : row) v.push_back(rational_from_json(entry));
        if ((int)v.size() != ambient) throw ParseError("basis vector has wrong length");
        basis.push_back(std::move(v));
    }
    try {
        return Subspace(ambient, std::move(basis));
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string("invalid subspace: ") + e.what());
    }
}

/// One function slot of the problem file; materialised per consumer.
struct FunctionSpec {
    std::string kind;        // constant_one | zero | trig_polynomial |
                             // modulated_exponential | smoothed_indicator
    int degree = 3;
    std::uint64_t seed = 0;
    Polynomial phase{1};
    double a = -1, b = 1, width = 0.1;

    TestFunction build(int dimension) const {
        if (kind == "constant_one") return TestFunction::constant_one(dimension);
        if (kind == "zero") return TestFunction::zero(dimension);
        if (kind == "trig_polynomial") return TestFunction::trig_polynomial(dimension, degree, seed);
        if (kind == "modulated_exponential") {
            if (phase.dimension() != dimension) throw ParseError("modulation phase dimension mismatch");
            return TestFunction::modulated_exponential(phase);
        }
        if (kind == "smoothed_indicator") {
            if (dimension != 1) throw ParseError("smoothed indicator is one-dimensional");
            return TestFunction::smoothed_indicator(a, b, width);
        }
        throw ParseError("unknown function kind: " + kind);
    }

    RealFunction build_real(int dimension) const {
        if (kind == "zero" || kind == "constant_one") {
            if (kind == "constant_one") {
                Polynomial one = Polynomial::constant(dimension, Rational(1));
                return RealFunction::polynomial(one);
            }
            return RealFunction::zero(dimension);
        }
        if (kind == "trig_polynomial") return RealFunction::trig_polynomial(dimension, degree, seed);
        if (kind == "modulated_exponential")
            throw ParseError("modulated exponentials are not real-valued");
        throw ParseError("unknown real function kind: " + kind);
    }
};

inline FunctionSpec function_spec_from_json(const json& j) {
    FunctionSpec spec;
    spec.kind = j.at("kind").get<std::string>();
    if (j.contains("degree")) spec.degree = j.at("degree").get<int>();
    if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("phase")) spec.phase = polynomial_from_json(j.at("phase"));
    if (j.contains("a")) spec.a = j.at("a").get<double>();
    if (j.contains("b")) spec.b = j.at("b").get<double>();
    if (j.contains("width")) spec.width = j.at("width").get<double>();
    return spec;
}

struct ProblemFile {
    int dimension = 0;
    Polynomial polynomial{1};
    std::optional<SubspaceFamily> family;
    std::optional<CutoffFunction> cutoff;
    std::vector<FunctionSpec> functions;
    std::optional<Box> region;
    std::optional<double> epsilon;
    std::string raw;  // original bytes, for the input digest

    const SubspaceFamily& require_family() const {
        if (!family) throw ParseError("problem file has no 'subspaces' section");
        return *family;
    }
    CutoffFunction cutoff_or_default() const {
        if (cutoff) return *cutoff;
        return CutoffFunction(std::vector<double>(dimension, 0.0), 1.0, 6);
    }
    Box region_or_default() const {
        if (region) return *region;
        Box b;
        b.lo.assign(dimension, 0.0);
        b.hi.assign(dimension, 1.0);
        return b;
    }
};

inline ProblemFile parse_problem(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ParseError(std::string("not valid JSON: ") + e.what());
    }
    try {
        ProblemFile file;
        file.raw = text;
        file.dimension = j.at("dimension").get<int>();
        if (file.dimension < 1) throw ParseError("dimension must be positive");
        file.polynomial = polynomial_from_json(j.at("polynomial"));
        if (file.polynomial.dimension() != file.dimension)
            throw ParseError("polynomial dimension disagrees with the problem dimension");
        if (j.contains("subspaces")) {
            std::vector<Subspace> subs;
            for (const auto& s : j.at("subspaces")) subs.push_back(subspace_from_json(s, file.dimension));
            try {
                file.family = SubspaceFamily(file.dimension, std::move(subs));
            } catch (const std::invalid_argument& e) {
                throw ParseError(std::string("invalid family: ") + e.what());
            }
        }
        if (j.contains("cutoff")) {
            const auto& c = j.at("cutoff");
            auto center = c.at("center").get<std::vector<double>>();
            if ((int)center.size() != file.dimension) throw ParseError("cutoff center dimension mismatch");
            file.cutoff = CutoffFunction(center, c.at("radius").get<double>(),
                                         c.value("order", 6));
        }
        if (j.contains("functions"))
            for (const auto& f : j.at("functions")) file.functions.push_back(function_spec_from_json(f));
        if (j.contains("region")) {
            Box box;
            box.lo = j.at("region").at("lo").get<std::vector<double>>();
            box.hi = j.at("region").at("hi").get<std::vector<double>>();
            if ((int)box.lo.size() != file.dimension || (int)box.hi.size() != file.dimension)
                throw ParseError("region dimension mismatch");
            for (size_t i = 0; i < box.lo.size(); ++i)
                if (!(box.lo[i] < box.hi[i])) throw ParseError("region must have positive extent");
            file.region = box;
        }
        if (j.contains("epsilon")) file.epsilon = j.at("epsilon").get<double>();
        return file;
    } catch (const json::exception& e) {
        throw ParseError(std::string("malformed problem file: ") + e.what());
    }
}

inline ProblemFile load_problem(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open problem file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_problem(buf.str());
}

/// Fixed-format double rendering for bit-identical text output.
inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace oscidecay

#endif
