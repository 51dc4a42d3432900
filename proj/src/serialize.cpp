#include <wplab/serialize.hpp>

#include <cstdio>

namespace wplab::serialize {

std::string format_double(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

json surface_to_json(const group::SurfaceSpec& spec) {
    if (const auto* pt = std::get_if<group::PuncturedTorus>(&spec))
        return json{{"kind", "punctured_torus"}, {"l", pt->l}, {"tau", pt->tau}};
    const auto& p = std::get<group::Pants>(spec);
    return json{{"kind", "pants"}, {"l", {p.l1, p.l2, p.l3}}};
}

group::SurfaceSpec surface_from_json(const json& j) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "punctured_torus")
        return group::PuncturedTorus{j.at("l").get<double>(), j.at("tau").get<double>()};
    if (kind == "pants") {
        const auto& l = j.at("l");
        if (!l.is_array() || l.size() != 3) throw DomainError("pants needs l = [l1,l2,l3]");
        return group::Pants{l[0].get<double>(), l[1].get<double>(), l[2].get<double>()};
    }
    throw DomainError("unknown surface kind: " + kind);
}

json fourier_to_json(const strip::FourierQD& phi) {
    json coeffs = json::array();
    for (const auto& [n, a] : phi.coeffs) coeffs.push_back({n, a.real(), a.imag()});
    return json{{"l", phi.l}, {"coeffs", coeffs}};
}

strip::FourierQD fourier_from_json(const json& j) {
    std::map<int, std::complex<double>> cs;
    for (const auto& row : j.at("coeffs")) {
        if (!row.is_array() || row.size() != 3)
            throw DomainError("coeff rows are [n, re, im]");
        cs[row[0].get<int>()] = {row[1].get<double>(), row[2].get<double>()};
    }
    return strip::FourierQD(j.at("l").get<double>(), std::move(cs));
}

json pairing_to_json(const pairing::PairingEstimate& e) {
    return json{{"value", e.value},
                {"kronecker_part", e.kronecker_part},
                {"coset_sum", e.coset_sum},
                {"terms", e.terms},
                {"max_depth", e.max_depth},
                {"last_shell", e.last_shell},
                {"tail_estimate", e.tail_estimate},
                {"crossing_count", e.crossing_count},
                {"crossing_cos", e.crossing_cos}};
}

json series_to_json(const pairing::SeriesReport& r) {
    return json{{"value", r.value},
                {"terms", r.terms},
                {"last_shell", r.last_shell},
                {"basepoint", {r.basepoint.real(), r.basepoint.imag()}},
                {"max_depth", r.max_depth}};
}

json variation_to_json(const strip::VariationReport& r) {
    return json{{"first", r.first},         {"first_rot", r.first_rot},
                {"second", r.second},       {"complex_hessian", r.complex_hessian},
                {"Q", r.Q},                 {"QS", r.QS}};
}

json fit_to_json(const cli::FitResult& r) {
    return json{{"slope", r.slope},
                {"intercept", r.intercept},
                {"r2", r.r2},
                {"window", {r.window_begin, r.window_end}}};
}

}  // namespace wplab::serialize
